"""Dyadic residue classes and their correspondence with dynamics prefixes."""

import re
from dataclasses import dataclass
from typing import NamedTuple

from .dynamics import apply, check_dynstring, dynam
from .errors import AlreadyTerminal, InadmissibleString, NotOdd
from .form import FormStatus, is_reduced_form

__all__ = [
    "ResidueClass", "class_of", "d2r", "r2d", "partition_split",
    "forking_point", "Classification", "verify_subset_classification",
    "two_adic_valuation",
]


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The set of positive integers congruent to ``i`` mod ``2**t``.

    ``i`` is reduced to its canonical representative on construction.
    ``t = 0`` is the whole of N* and only appears as the graph root.
    """

    i: int
    t: int

    def __post_init__(self):
        if self.t < 0:
            raise ValueError("exponent must be >= 0")
        if self.i < 0:
            raise ValueError("representative must be >= 0")
        object.__setattr__(self, "i", self.i & ((1 << self.t) - 1))

    @property
    def modulus(self):
        return 1 << self.t

    def __contains__(self, x):
        return x >= 1 and (x - self.i) & (self.modulus - 1) == 0

    def smallest_member(self, minimum=1):
        """Least member that is >= ``minimum``."""
        m = self.modulus
        if self.i >= minimum:
            return self.i
        return self.i + ((minimum - self.i + m - 1) // m) * m

    def halves(self):
        """The two classes mod 2^(t+1) that partition this one."""
        return (ResidueClass(self.i, self.t + 1),
                ResidueClass(self.i + self.modulus, self.t + 1))

    def __str__(self):
        return f"{self.i} mod 2^{self.t}"

    def to_json(self):
        return {"i": str(self.i), "t": self.t}

    @classmethod
    def from_json(cls, d):
        return cls(int(d["i"]), int(d["t"]))

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*(\d+)\s*mod\s*2\^(\d+)\s*", text)
        if not m:
            raise ValueError(f"cannot parse residue class {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))


def class_of(s):
    """The unique class mod 2^|s| whose members all start with ``s``.

    Works for any string. Walks the prefixes once; when the next symbol does
    not match the running value, the representative gains 2^j, which shifts
    the length-j prefix value by 3^CntI(prefix) and so flips its parity.
    """
    check_dynstring(s)
    t = len(s)
    if t == 0:
        return ResidueClass(0, 0)
    i = 1 if s[0] == "I" else 0
    v = i
    a = 0
    pow3 = 1
    for j, c in enumerate(s):
        if j and (v & 1) != (c == "I"):
            i += 1 << j
            v += pow3
        if c == "I":
            v = (3 * v + 1) >> 1
            a += 1
            pow3 *= 3
        else:
            v >>= 1
    return ResidueClass(i, t)


def d2r(s):
    """Residue class of an admissible dynamics prefix (reduced or still above the line)."""
    check_dynstring(s, allow_empty=False)
    verdict = is_reduced_form(s)
    if verdict.status is FormStatus.INADMISSIBLE:
        raise InadmissibleString(
            f"{s} crosses the ratio line at prefix {verdict.first_violation}; "
            "no class has it as its dynamics")
    return class_of(s)


def r2d(c):
    """First ``c.t`` symbols shared by every member of ``c``."""
    if c.t == 0:
        return ""
    return dynam(c.i if c.i >= 1 else c.modulus, c.t)


def partition_split(c, s=None):
    """Split a live class into its two halves.

    Returns ``((class, s + "O"), (class, s + "I"))``: the O-continuing half
    first. Raises AlreadyTerminal when ``s`` already brings the class below
    its starting values.
    """
    if s is None:
        s = r2d(c)
    if not c.i & 1:
        raise NotOdd(f"partition_split needs an odd representative, got {c}")
    if len(s) != c.t:
        raise ValueError(f"dynamics {s!r} has length {len(s)}, class exponent is {c.t}")
    rep = c.i if c.i >= 2 else c.i + c.modulus
    if apply(s, rep).final < rep:
        raise AlreadyTerminal(f"{c} already descends with {s}")
    low, high = c.halves()
    if apply(s, c.i).final & 1:
        return (high, s + "O"), (low, s + "I")
    return (low, s + "O"), (high, s + "I")


def two_adic_valuation(n):
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    return (n & -n).bit_length() - 1


def forking_point(x1, x2, check=True):
    """Number of leading symbols two odd integers share; None if equal.

    Computed as the 2-adic valuation of the difference; with ``check`` the
    result is confirmed by simulating both trajectories.
    """
    if not (x1 & 1 and x2 & 1) or x1 < 1 or x2 < 1:
        raise NotOdd(f"forking_point needs odd positive inputs, got {x1}, {x2}")
    if x1 == x2:
        return None
    t = two_adic_valuation(x1 - x2)
    if check:
        a, b = dynam(x1, t + 1), dynam(x2, t + 1)
        if a[:t] != b[:t] or a[t] == b[t]:
            raise RuntimeError(f"forking check failed for {x1}, {x2} at {t}")
    return t


class Classification(NamedTuple):
    parity: str       # "odd" or "even"
    next_parity: str  # parity after one combined step
    mod4: int


def verify_subset_classification(x):
    """Which mod-4 cell of the subset partition ``x`` falls in."""
    if x < 1:
        raise ValueError("x must be >= 1")
    r = x & 3
    parity = "odd" if r & 1 else "even"
    next_parity = "odd" if r in (2, 3) else "even"
    return Classification(parity, next_parity, r)
