"""Exact test of whether an {I, O} string is a reduced-dynamics pattern.

A prefix with ``a`` I's and ``b`` O's has coefficient 3^a / 2^(a+b). It is
*terminal* when ``b`` first reaches the ratio line, i.e. ``b`` equals the
least ``m`` with 2^(a+m) > 3^a. Everything here compares integer powers;
log2(3/2) is never materialized as a float.
"""

import enum
import threading
from dataclasses import dataclass

from .dynamics import check_dynstring

__all__ = [
    "ceil_lambda", "descent_threshold", "PrefixStatus", "FormStatus",
    "FormVerdict", "classify_counts", "prefix_status", "is_reduced_form",
]

# _THRESHOLDS[a] = least m >= 0 with 2^(a+m) > 3^a.
_THRESHOLDS = [1]
_last_pow3 = 1
_lock = threading.Lock()


def _extend(a):
    global _last_pow3
    with _lock:
        k = len(_THRESHOLDS)
        p = _last_pow3
        while k <= a:
            p *= 3
            # 3^k is never a power of two for k >= 1, so 2^(bitlen-1) < 3^k < 2^bitlen
            _THRESHOLDS.append(p.bit_length() - k)
            k += 1
        _last_pow3 = p


def descent_threshold(a):
    """Least number of O's that brings ``a`` I's below the ratio line."""
    if a < 0:
        raise ValueError("negative I count")
    if a >= len(_THRESHOLDS):
        _extend(a)
    return _THRESHOLDS[a]


def ceil_lambda(k):
    """ceil(k * log2(3/2)), exactly."""
    if k < 0:
        raise ValueError("negative argument")
    if k == 0:
        return 0
    return descent_threshold(k)


class PrefixStatus(str, enum.Enum):
    ABOVE = "above"
    TERMINAL = "terminal"
    BELOW = "below"


class FormStatus(str, enum.Enum):
    REDUCED_FORM = "ReducedForm"
    PROPER_PREFIX = "ProperPrefix"
    INADMISSIBLE = "Inadmissible"


def classify_counts(a, b):
    thr = descent_threshold(a)
    if b < thr:
        return PrefixStatus.ABOVE
    if b == thr:
        return PrefixStatus.TERMINAL
    return PrefixStatus.BELOW


def prefix_status(s):
    """Status of every non-empty prefix of ``s``, in order."""
    check_dynstring(s, allow_empty=False)
    a = b = 0
    out = []
    for c in s:
        if c == "I":
            a += 1
        else:
            b += 1
        out.append(classify_counts(a, b))
    return out


@dataclass(frozen=True)
class FormVerdict:
    status: FormStatus
    first_violation: int = None

    @property
    def is_reduced(self):
        return self.status is FormStatus.REDUCED_FORM

    def __str__(self):
        if self.first_violation is None:
            return self.status.value
        return f"{self.status.value} at prefix {self.first_violation}"


def is_reduced_form(s):
    """Classify ``s`` against the ratio line.

    ReducedForm: the full string is terminal and every proper prefix is
    strictly above the line. ProperPrefix: every prefix, including the
    whole string, is above (a partial dynamics that has not descended yet).
    Inadmissible: some proper prefix touched or crossed the line, or the
    whole string overshot it; ``first_violation`` is that prefix length.
    """
    check_dynstring(s, allow_empty=False)
    a = b = 0
    last = len(s)
    for j, c in enumerate(s, 1):
        if c == "I":
            a += 1
        else:
            b += 1
        st = classify_counts(a, b)
        if j < last:
            if st is not PrefixStatus.ABOVE:
                return FormVerdict(FormStatus.INADMISSIBLE, j)
        elif st is PrefixStatus.TERMINAL:
            return FormVerdict(FormStatus.REDUCED_FORM)
        elif st is PrefixStatus.ABOVE:
            return FormVerdict(FormStatus.PROPER_PREFIX)
        else:
            return FormVerdict(FormStatus.INADMISSIBLE, j)
