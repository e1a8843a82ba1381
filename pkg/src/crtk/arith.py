"""Step operators on arbitrary-precision naturals.

Python ints are the arbitrary-precision representation. The fixed-width
fast path used for bulk range work lives in :mod:`crtk._kernels` and
promotes back to these functions when a value would overflow.
"""

import re

from .errors import EvenInput, NatSyntaxError, OddInput

__all__ = [
    "step_I", "step_O", "step_Iprime", "classic_step",
    "parse_nat", "INT64_ODD_LIMIT",
]

# Largest odd value v for which 3v + 1 still fits in a signed 64-bit word.
INT64_ODD_LIMIT = (2**63 - 2) // 3


def _check_nat(x):
    if not isinstance(x, int) or isinstance(x, bool):
        raise TypeError(f"expected int, got {type(x).__name__}")
    if x < 0:
        raise ValueError(f"negative value {x}")


def step_I(x):
    """(3x + 1) / 2 for odd x."""
    _check_nat(x)
    if not x & 1:
        raise EvenInput(f"I applied to even value {x}")
    return (3 * x + 1) >> 1


def step_O(x):
    """x / 2 for even x >= 2."""
    _check_nat(x)
    if x & 1:
        raise OddInput(f"O applied to odd value {x}")
    if x == 0:
        raise ValueError("O applied to 0")
    return x >> 1


def step_Iprime(x):
    """3x / 2, the linear part of I. Only defined here for even x."""
    _check_nat(x)
    if x & 1:
        raise OddInput(f"I' applied to odd value {x}")
    return 3 * (x >> 1)


def classic_step(x):
    """Textbook rule: 3x + 1 for odd x, x / 2 for even x."""
    _check_nat(x)
    if x < 1:
        raise ValueError("classic_step needs x >= 1")
    return 3 * x + 1 if x & 1 else x >> 1


_POW_RE = re.compile(r"^2\^(\d+)(?:([+-])(\d+))?$")


def parse_nat(text):
    """Parse a decimal literal or one of ``2^k``, ``2^k-c``, ``2^k+c``.

    Whitespace and ``_`` separators are ignored.
    """
    if isinstance(text, int) and not isinstance(text, bool):
        _check_nat(text)
        return text
    s = re.sub(r"[\s_]", "", str(text))
    if s.isdigit():
        return int(s)
    m = _POW_RE.match(s)
    if not m:
        raise NatSyntaxError(f"cannot parse {text!r} as a natural number")
    value = 1 << int(m.group(1))
    if m.group(2) == "+":
        value += int(m.group(3))
    elif m.group(2) == "-":
        value -= int(m.group(3))
    if value < 0:
        raise NatSyntaxError(f"{text!r} is negative")
    return value
