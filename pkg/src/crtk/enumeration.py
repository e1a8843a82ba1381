"""Enumeration of reduced-dynamics patterns and the coverage ratio R(n).

Patterns come out in length-then-lexicographic order (I < O). The DFS only
walks prefixes that stay strictly above the ratio line, and for each target
length it skips subtrees that cannot land on the line at exactly that length.
"""

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .dynamics import reduced_dynamics
from .errors import BudgetExhausted
from .form import descent_threshold
from .residue import ResidueClass, class_of

__all__ = [
    "MAX_LENGTH", "EnumRecord", "CoverageTable", "EnumerationReport",
    "enumerate_forms", "pattern_counts", "coverage", "verify_enumeration",
    "records_to_csv", "records_to_json",
]

MAX_LENGTH = 60
_SPLIT_DEPTH = 10


@dataclass(frozen=True)
class EnumRecord:
    pattern: str
    cls: ResidueClass

    @property
    def length(self):
        return len(self.pattern)

    @property
    def density(self):
        return Fraction(1, 1 << len(self.pattern))

    def to_json(self):
        return {
            "pattern": self.pattern,
            "i": str(self.cls.i),
            "t": self.cls.t,
            "density_num": 1,
            "density_log2_den": self.length,
        }


def _can_land(a, b, remaining):
    # Some mix of x I's then (remaining - x) O's must hit the line exactly at the end.
    for x in range(remaining + 1):
        if b + remaining - x == descent_threshold(a + x):
            return True
    return False


def _terminals(prefix, a, b, length):
    """Reduced patterns of exactly ``length`` below an above-the-line ``prefix``."""
    out = []
    stack = [(prefix, a, b)]
    while stack:
        s, a, b = stack.pop()
        d = len(s)
        if d == length:
            if b == descent_threshold(a):
                out.append(s)
            continue
        if b == descent_threshold(a) or not _can_land(a, b, length - d):
            continue
        # push O first so the I branch pops first: lexicographic order
        stack.append((s + "O", a, b + 1))
        stack.append((s + "I", a + 1, b))
    return out


def _frontier(length, depth):
    """Above-the-line prefixes of ``depth`` (or finished patterns) in lex order."""
    level = [("", 0, 0)]
    for _ in range(depth):
        nxt = []
        for s, a, b in level:
            if len(s) < length and b < descent_threshold(a):
                for c in "IO":
                    na, nb = (a + 1, b) if c == "I" else (a, b + 1)
                    nxt.append((s + c, na, nb))
            else:
                nxt.append((s, a, b))
        level = nxt
    return level


def _terminals_task(args):
    return _terminals(*args)


def enumerate_forms(L, workers=1):
    """Yield an EnumRecord for every reduced pattern with length <= L."""
    if not 1 <= L <= MAX_LENGTH:
        raise ValueError(f"L must be in [1, {MAX_LENGTH}]")
    pool = ProcessPoolExecutor(workers) if workers > 1 else None
    try:
        for length in range(1, L + 1):
            if pool is None or length <= _SPLIT_DEPTH:
                patterns = _terminals("", 0, 0, length)
            else:
                tasks = [(s, a, b, length) for s, a, b in _frontier(length, _SPLIT_DEPTH)]
                patterns = [p for chunk in pool.map(_terminals_task, tasks, chunksize=8)
                            for p in chunk]
            for p in patterns:
                yield EnumRecord(p, class_of(p))
    finally:
        if pool is not None:
            pool.shutdown()


def pattern_counts(n):
    """Number of reduced patterns of each length 1..n.

    Counts lattice paths in (CntI, CntO) that stay above the ratio line and
    touch it on their last step; no strings are built.
    """
    if not 1 <= n:
        raise ValueError("n must be >= 1")
    live = {0: 1}  # CntI -> number of above-the-line prefixes at current length
    counts = []
    for length in range(1, n + 1):
        nxt = {}
        hits = 0
        for a, ways in live.items():
            b = length - 1 - a
            # extend by I: threshold only grows, still above
            nxt[a + 1] = nxt.get(a + 1, 0) + ways
            # extend by O
            if b + 1 == descent_threshold(a):
                hits += ways
            else:
                nxt[a] = nxt.get(a, 0) + ways
        counts.append(hits)
        live = nxt
    return counts


@dataclass
class CoverageTable:
    counts: list  # counts[l - 1] = patterns of length l

    @property
    def n(self):
        return len(self.counts)

    def numerator(self, n):
        """R(n) * 2^n."""
        return sum(c << (n - ell) for ell, c in enumerate(self.counts[:n], 1))

    def ratio(self, n):
        return Fraction(self.numerator(n), 1 << n)

    def rows(self):
        for n in range(1, self.n + 1):
            num = self.numerator(n)
            yield {
                "n": n,
                "count_n": self.counts[n - 1],
                "R_num": num,
                "R_log2_den": n,
                "R_float": num / (1 << n),
            }

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count_n", "R_num", "R_log2_den", "R_float"])
        for r in self.rows():
            w.writerow([r["n"], r["count_n"], r["R_num"], r["R_log2_den"], repr(r["R_float"])])
        return buf.getvalue()

    def to_json(self):
        return [dict(r, R_num=str(r["R_num"])) for r in self.rows()]


def coverage(n):
    if not 1 <= n <= MAX_LENGTH:
        raise ValueError(f"n must be in [1, {MAX_LENGTH}]")
    return CoverageTable(pattern_counts(n))


def records_to_csv(records):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["length", "pattern", "i", "t", "density_num", "density_log2_den"])
    for r in records:
        w.writerow([r.length, r.pattern, r.cls.i, r.cls.t, 1, r.length])
    return buf.getvalue()


def records_to_json(records):
    return json.dumps([r.to_json() for r in records], indent=1)


@dataclass
class EnumerationReport:
    L: int
    n_patterns: int = 0
    missing: list = field(default_factory=list)      # enumerated but never observed
    unexpected: list = field(default_factory=list)   # observed but not enumerated
    wrong_class: list = field(default_factory=list)  # (pattern, enumerated, observed classes)

    @property
    def consistent(self):
        return not (self.missing or self.unexpected or self.wrong_class)


def _observe(bounds):
    lo, hi, L = bounds
    seen = {}
    for x in range(lo, hi):
        try:
            p = reduced_dynamics(x, budget=L)
        except BudgetExhausted:
            continue
        seen.setdefault(p, set()).add(ResidueClass(x, len(p)))
    return seen


def verify_enumeration(L, workers=1):
    """Cross-check enumerate_forms(L) against direct simulation.

    Every residue mod 2^L is simulated once through the representatives
    2 .. 2^L + 1, and the observed patterns and classes are compared with the
    enumeration.
    """
    if not 1 <= L <= 24:
        raise ValueError("L must be in [1, 24]")
    lo, hi = 2, (1 << L) + 2
    if workers > 1:
        step = -(-(hi - lo) // (workers * 4))
        chunks = [(a, min(a + step, hi), L) for a in range(lo, hi, step)]
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_observe, chunks))
    else:
        parts = [_observe((lo, hi, L))]
    observed = {}
    for part in parts:
        for p, classes in part.items():
            observed.setdefault(p, set()).update(classes)

    report = EnumerationReport(L)
    expected = {r.pattern: r.cls for r in enumerate_forms(L)}
    report.n_patterns = len(expected)
    for p, cls in expected.items():
        if p not in observed:
            report.missing.append(p)
        elif observed[p] != {cls}:
            report.wrong_class.append((p, cls, sorted(observed[p])))
    report.unexpected = sorted(p for p in observed if p not in expected)
    return report
