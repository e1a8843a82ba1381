"""Convergence verification for single large integers and for ranges."""

import os
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import _kernels
from .arith import classic_step
from .checkpoint import read_state, write_state
from .dynamics import DEFAULT_BUDGET, reduced_dynamics, reduced_length
from .errors import BudgetExhausted, CycleAnomaly, OracleMismatch

__all__ = [
    "RANGE_BUDGET", "VerifyReport", "RangeReport", "verify_to_one",
    "classic_counts", "descent_length", "verify_range",
]

RANGE_BUDGET = 10**4
CHUNK = 1 << 16


@dataclass
class VerifyReport:
    x: int
    reached_one: bool
    cnt_i: int
    cnt_o: int
    elapsed: float = 0.0
    checkpoint: str = None
    oracle_checked: bool = False

    @property
    def total_len(self):
        return self.cnt_i + self.cnt_o

    @property
    def classic_odd_steps(self):
        return self.cnt_i

    @property
    def classic_halvings(self):
        # every I = (3x+1)/2 hides one halving
        return self.cnt_i + self.cnt_o

    def to_json(self, timing=False):
        d = {
            "x": str(self.x),
            "reached_one": self.reached_one,
            "cnt_I": self.cnt_i,
            "cnt_O": self.cnt_o,
            "total_len": self.total_len,
            "classic_odd_steps": self.classic_odd_steps,
            "classic_halvings": self.classic_halvings,
            "oracle_checked": self.oracle_checked,
        }
        if timing:
            d["elapsed"] = self.elapsed
        return d


def classic_counts(x, budget=None):
    """``(odd steps, halvings)`` from x to 1 using only the textbook rule.

    Kept deliberately naive: it is the independent check on the combined
    step loop in :func:`verify_to_one`.
    """
    odd = halvings = 0
    v = x
    while True:
        if v & 1:
            odd += 1
        else:
            halvings += 1
        v = classic_step(v)
        if v == 1:
            return odd, halvings
        if budget is not None and odd + halvings >= budget:
            raise BudgetExhausted(x, budget, v)


def verify_to_one(x, budget=DEFAULT_BUDGET, oracle=False, checkpoint=None,
                  checkpoint_every=1 << 15):
    """Iterate combined steps from ``x`` until the value is 1.

    ``budget`` bounds the number of combined steps (I and O together).
    If ``checkpoint`` names an existing state file the run resumes from it;
    the file is refreshed every ``checkpoint_every`` loop iterations, on
    budget exhaustion, and at completion.
    """
    if x < 1:
        raise ValueError("x must be >= 1")
    t0 = time.perf_counter()
    v, cnt_i, cnt_o = x, 0, 0
    if checkpoint is not None and os.path.exists(checkpoint):
        v, cnt_i, cnt_o = read_state(checkpoint)

    it = 0
    while v != 1 or cnt_i + cnt_o == 0:
        steps = cnt_i + cnt_o
        if steps >= budget:
            if checkpoint is not None:
                write_state(checkpoint, v, cnt_i, cnt_o)
            raise BudgetExhausted(x, budget, v, cnt_i, cnt_o)
        if v & 1:
            v = (3 * v + 1) >> 1
            cnt_i += 1
        else:
            tz = min((v & -v).bit_length() - 1, budget - steps)
            v >>= tz
            cnt_o += tz
        it += 1
        if checkpoint is not None and it % checkpoint_every == 0:
            write_state(checkpoint, v, cnt_i, cnt_o)
    if checkpoint is not None:
        write_state(checkpoint, v, cnt_i, cnt_o)

    report = VerifyReport(x, True, cnt_i, cnt_o, checkpoint=checkpoint)
    if oracle:
        odd, halvings = classic_counts(x)
        if odd != report.classic_odd_steps or halvings != report.classic_halvings:
            raise OracleMismatch(
                f"classic rule gives {odd} odd steps / {halvings} halvings, "
                f"combined loop gives {report.classic_odd_steps} / {report.classic_halvings}")
        report.oracle_checked = True
    report.elapsed = time.perf_counter() - t0
    return report


def descent_length(x, budget):
    """``(combined steps, I count)`` from ``x`` down to 1."""
    v, steps, n_i = x, 0, 0
    while v != 1 or steps == 0:
        if steps >= budget:
            raise BudgetExhausted(x, budget, v)
        if v & 1:
            v = (3 * v + 1) >> 1
            n_i += 1
        else:
            v >>= 1
        steps += 1
    return steps, n_i


@dataclass
class RangeReport:
    a: int
    b: int
    full: bool = False
    histogram: Counter = field(default_factory=Counter)
    max_length: int = 0
    argmax: int = None
    exhausted: list = field(default_factory=list)
    anomalies: list = field(default_factory=list)
    patterns: dict = None
    elapsed: float = 0.0

    @property
    def count(self):
        return self.b - self.a + 1

    @property
    def all_found(self):
        return not self.exhausted and not self.anomalies

    def merge(self, other):
        self.histogram.update(other.histogram)
        if other.max_length > self.max_length or (
                other.max_length == self.max_length and other.argmax is not None
                and (self.argmax is None or other.argmax < self.argmax)):
            self.max_length, self.argmax = other.max_length, other.argmax
        self.exhausted.extend(other.exhausted)
        self.anomalies.extend(other.anomalies)

    def to_json(self, timing=False):
        d = {
            "a": str(self.a),
            "b": str(self.b),
            "full": self.full,
            "count": self.count,
            "all_found": self.all_found,
            "max_length": self.max_length,
            "argmax": None if self.argmax is None else str(self.argmax),
            "histogram": {str(k): self.histogram[k] for k in sorted(self.histogram)},
            "exhausted": [str(x) for x in self.exhausted],
            "anomalies": [str(x) for x in self.anomalies],
        }
        if self.patterns is not None:
            d["patterns"] = {str(k): v for k, v in self.patterns.items()}
        if timing:
            d["elapsed"] = self.elapsed
        return d


def _record(rep, x, length):
    rep.histogram[length] += 1
    if length > rep.max_length:
        rep.max_length, rep.argmax = length, x


def _slow_one(rep, x, budget, full):
    try:
        if full:
            length, _ = descent_length(x, budget)
        else:
            length, _ = reduced_length(x, budget)
    except BudgetExhausted:
        rep.exhausted.append(x)
    except CycleAnomaly:
        rep.anomalies.append(x)
    else:
        _record(rep, x, length)


def _verify_chunk(args):
    lo, hi, budget, full, backend = args
    rep = RangeReport(lo, hi, full)
    lengths, _, status = _kernels.stopping_lengths(lo, hi - lo + 1, budget, full, backend)
    for k in range(hi - lo + 1):
        st = status[k]
        x = lo + k
        if st == _kernels.OK:
            _record(rep, x, int(lengths[k]))
        elif st == _kernels.OVERFLOW:
            _slow_one(rep, x, budget, full)
        elif st == _kernels.BUDGET:
            rep.exhausted.append(x)
        else:
            rep.anomalies.append(x)
    return rep


def verify_range(a, b, budget=RANGE_BUDGET, full=False, workers=1, backend=None,
                 list_patterns=False):
    """Check that every x in [a, b] descends (below x, or to 1 with ``full``).

    The range is cut into fixed chunks independent of ``workers``, and chunk
    reports are merged in order, so the aggregate does not depend on how
    the work was split. ``list_patterns`` also records RD[x] per x (small
    ranges only).
    """
    if not 2 <= a <= b:
        raise ValueError("need 2 <= a <= b")
    t0 = time.perf_counter()
    chunks = [(lo, min(lo + CHUNK - 1, b), budget, full, backend)
              for lo in range(a, b + 1, CHUNK)]
    if workers > 1 and len(chunks) > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_verify_chunk, chunks))
    else:
        parts = [_verify_chunk(c) for c in chunks]
    report = RangeReport(a, b, full)
    for p in parts:
        report.merge(p)
    report.exhausted.sort()
    report.anomalies.sort()
    if list_patterns:
        report.patterns = {}
        for x in range(a, b + 1):
            try:
                report.patterns[x] = reduced_dynamics(x, budget)
            except (BudgetExhausted, CycleAnomaly):
                report.patterns[x] = None
    report.elapsed = time.perf_counter() - t0
    return report
