"""Dynamics strings over {I, O} and the trajectories they drive.

A dynamics string is held as a plain ``str`` of ``'I'`` and ``'O'``
characters; positions in the public API are 1-based to match
:func:`get_s`, everything else is ordinary Python indexing.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import groupby

from .errors import (
    BudgetExhausted, CycleAnomaly, DomainNote, DynSyntaxError,
    NonIntegral, OutOfBounds, ParityMismatch,
)

__all__ = [
    "DEFAULT_BUDGET", "RD_ONE_CONVENTION", "PRIMED_I",
    "Trajectory", "StepCoefficient",
    "is_matched", "get_s", "apply", "dynam", "reduced_dynamics",
    "reduced_length", "replace", "apply_primed", "cnt_i", "cnt_o",
    "coefficient", "parse_dynstring", "format_dynstring", "check_dynstring",
]

DEFAULT_BUDGET = 10**7

# RD[1] is IO by convention only: IO(1) = 1 is not below 1.
RD_ONE_CONVENTION = "IO"

PRIMED_I = "I'"


def check_dynstring(s, allow_empty=True):
    if not isinstance(s, str):
        raise TypeError(f"dynamics string must be str, got {type(s).__name__}")
    for k, c in enumerate(s):
        if c not in "IO":
            raise DynSyntaxError(f"unexpected symbol {c!r}", k)
    if not s and not allow_empty:
        raise DynSyntaxError("empty dynamics string", 0)
    return s


def is_matched(x, c):
    """True when symbol ``c`` is the transformation that parity of ``x`` calls for."""
    if x < 1:
        raise ValueError("is_matched needs x >= 1")
    if c == "I":
        return bool(x & 1)
    if c == "O":
        return not x & 1
    raise ValueError(f"unknown symbol {c!r}")


def get_s(s, i, j):
    """Segment of ``s`` starting at 1-based position ``i`` with length ``j``."""
    check_dynstring(s)
    if not 1 <= i <= len(s) or not 0 <= j <= len(s) - (i - 1):
        raise OutOfBounds(f"get_s({s!r}, {i}, {j}) out of bounds for length {len(s)}")
    return s[i - 1:i - 1 + j]


@dataclass(frozen=True)
class Trajectory:
    start: int
    values: tuple
    symbols: str

    @property
    def final(self):
        return self.values[-1]

    def to_json(self):
        return {
            "start": str(self.start),
            "symbols": self.symbols,
            "values": [str(v) for v in self.values],
        }

    @classmethod
    def from_json(cls, d):
        return cls(int(d["start"]), tuple(int(v) for v in d["values"]), d["symbols"])


def apply(s, x):
    """Run ``s`` on ``x`` step by step, refusing any step whose parity is wrong."""
    check_dynstring(s)
    if x < 1:
        raise ValueError("apply needs x >= 1")
    values = [x]
    v = x
    for k, c in enumerate(s):
        if (v & 1) != (c == "I"):
            raise ParityMismatch(k, v, c)
        v = (3 * v + 1) >> 1 if c == "I" else v >> 1
        values.append(v)
    return Trajectory(x, tuple(values), s)


def dynam(x, n):
    """The first ``n`` parity-driven symbols of the trajectory of ``x``."""
    if x < 1:
        raise ValueError("dynam needs x >= 1")
    if n < 0:
        raise ValueError("dynam needs n >= 0")
    out = []
    v = x
    for _ in range(n):
        if v & 1:
            out.append("I")
            v = (3 * v + 1) >> 1
        else:
            out.append("O")
            v >>= 1
    return "".join(out)


def _check_rd_domain(x):
    if x == 1:
        raise DomainNote(
            "1 never descends below itself; RD[1] = IO holds only by convention "
            "(see RD_ONE_CONVENTION)")
    if x < 1:
        raise ValueError("reduced dynamics needs x >= 2")


def reduced_dynamics(x, budget=DEFAULT_BUDGET):
    """Shortest s with s(x) < x whose proper prefixes all stay >= x.

    Raises BudgetExhausted after ``budget`` symbols without descent and
    CycleAnomaly if an intermediate value equals ``x``.
    """
    _check_rd_domain(x)
    out = []
    v = x
    for step in range(1, budget + 1):
        if v & 1:
            out.append("I")
            v = (3 * v + 1) >> 1
        else:
            out.append("O")
            v >>= 1
        if v < x:
            return "".join(out)
        if v == x:
            raise CycleAnomaly(x, step)
    raise BudgetExhausted(x, budget, v)


def reduced_length(x, budget=DEFAULT_BUDGET):
    """``(len(RD[x]), CntI(RD[x]))`` without building the string."""
    _check_rd_domain(x)
    v = x
    n_i = 0
    for step in range(1, budget + 1):
        if v & 1:
            v = (3 * v + 1) >> 1
            n_i += 1
        else:
            v >>= 1
        if v < x:
            return step, n_i
        if v == x:
            raise CycleAnomaly(x, step)
    raise BudgetExhausted(x, budget, v)


def cnt_i(s):
    return check_dynstring(s).count("I")


def cnt_o(s):
    return check_dynstring(s).count("O")


def replace(s):
    """Prime every I: ``IIOO`` -> ``I'I'OO``."""
    return check_dynstring(s).replace("I", PRIMED_I)


def apply_primed(s, P):
    """Apply the primed string of ``s`` (I' = 3x/2, O = x/2) to ``P`` exactly.

    Every intermediate must be even, otherwise NonIntegral is raised with
    the 0-based index of the offending step.
    """
    check_dynstring(s)
    if P < 1:
        raise ValueError("apply_primed needs P >= 1")
    v = P
    for k, c in enumerate(s):
        if v & 1:
            raise NonIntegral(k)
        v >>= 1
        if c == "I":
            v *= 3
    return v


@dataclass(frozen=True)
class StepCoefficient:
    """The exact rational 3^i_count / 2^length."""

    i_count: int
    length: int

    def __post_init__(self):
        if not 0 <= self.i_count <= self.length:
            raise ValueError("need 0 <= i_count <= length")

    @property
    def numerator(self):
        return 3**self.i_count

    @property
    def denominator(self):
        return 1 << self.length

    def as_fraction(self):
        return Fraction(self.numerator, self.denominator)

    def contracts(self):
        """True when the coefficient is below 1, i.e. 3^a < 2^j."""
        return self.numerator < self.denominator

    def __mul__(self, x):
        if not isinstance(x, int):
            return NotImplemented
        q, r = divmod(self.numerator * x, self.denominator)
        if r:
            raise NonIntegral(self.length)
        return q

    __rmul__ = __mul__

    def __str__(self):
        return f"3^{self.i_count}/2^{self.length}"


def coefficient(s, j=None):
    """Coefficient of the length-``j`` prefix of ``s`` (whole string by default)."""
    check_dynstring(s)
    if j is None:
        j = len(s)
    if not 1 <= j <= len(s):
        raise OutOfBounds(f"prefix length {j} out of bounds for length {len(s)}")
    return StepCoefficient(s[:j].count("I"), j)


def parse_dynstring(text):
    """Parse plain (``IIOO``) or run-length (``I^2O^2``) notation.

    Exponents must be decimal and at least 2; ``I^1`` is written ``I``.
    """
    if isinstance(text, bytes):
        text = text.decode("ascii")
    out = []
    k = 0
    n = len(text)
    if n == 0:
        raise DynSyntaxError("empty dynamics string", 0)
    while k < n:
        c = text[k]
        if c not in "IO":
            raise DynSyntaxError(f"unexpected character {c!r}", k)
        k += 1
        count = 1
        if k < n and text[k] == "^":
            start = k + 1
            k = start
            while k < n and text[k].isdigit() and text[k].isascii():
                k += 1
            if k == start:
                raise DynSyntaxError("missing exponent", start)
            count = int(text[start:k])
            if count < 2:
                raise DynSyntaxError("exponent must be >= 2", start)
        out.append(c * count)
    return "".join(out)


def format_dynstring(s, rle=False):
    check_dynstring(s)
    if not rle:
        return s
    parts = []
    for c, run in groupby(s):
        n = sum(1 for _ in run)
        parts.append(c if n == 1 else f"{c}^{n}")
    return "".join(parts)
