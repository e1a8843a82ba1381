"""Fixed-width kernels for bulk stopping-length computation.

Two interchangeable backends compute the same arrays:

* ``numba``: a scalar loop compiled with ``@njit``.
* ``numpy``: a vectorized loop over the still-active starting values.

Set ``CRTK_DISABLE_NUMBA=1`` to force the numpy path (it is also used when
numba is not importable). Values are signed 64-bit; an odd value above
``INT64_ODD_LIMIT`` is reported as OVERFLOW so the caller can redo that
start with Python ints.
"""

import os

import numpy as np

from .arith import INT64_ODD_LIMIT

OK, OVERFLOW, BUDGET, CYCLE = 0, 1, 2, 3

_INT64_MAX = 2**63 - 1

NUMBA_DISABLED = os.environ.get("CRTK_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")

try:
    if NUMBA_DISABLED:
        raise ImportError("disabled by CRTK_DISABLE_NUMBA")
    from numba import njit
    HAVE_NUMBA = True
except ImportError:
    HAVE_NUMBA = False

DEFAULT_BACKEND = "numba" if HAVE_NUMBA else "numpy"


def _loop(start, count, budget, full, limit, lengths, n_i, status):
    for k in range(count):
        x = start + k
        v = x
        ni = 0
        st = 2
        steps = 0
        while steps < budget:
            if v & 1:
                if v > limit:
                    st = 1
                    break
                v = (3 * v + 1) >> 1
                ni += 1
            else:
                v >>= 1
            steps += 1
            if full:
                if v == 1:
                    st = 0
                    break
            elif v < x:
                st = 0
                break
            elif v == x:
                st = 3
                break
        lengths[k] = steps
        n_i[k] = ni
        status[k] = st


if HAVE_NUMBA:
    _loop_jit = njit(cache=True, nogil=True)(_loop)


def _run_numba(start, count, budget, full):
    lengths = np.zeros(count, dtype=np.int64)
    n_i = np.zeros(count, dtype=np.int64)
    status = np.zeros(count, dtype=np.uint8)
    _loop_jit(np.int64(start), count, np.int64(budget), bool(full),
              np.int64(INT64_ODD_LIMIT), lengths, n_i, status)
    return lengths, n_i, status


def _run_numpy(start, count, budget, full):
    lengths = np.zeros(count, dtype=np.int64)
    n_i = np.zeros(count, dtype=np.int64)
    status = np.full(count, BUDGET, dtype=np.uint8)
    x = np.arange(start, start + count, dtype=np.int64)
    v = x.copy()
    idx = np.arange(count)
    steps = 0
    while idx.size and steps < budget:
        odd = (v & 1).astype(bool)
        ovf = odd & (v > INT64_ODD_LIMIT)
        if ovf.any():
            status[idx[ovf]] = OVERFLOW
            lengths[idx[ovf]] = steps
            keep = ~ovf
            idx, x, v, odd = idx[keep], x[keep], v[keep], odd[keep]
        v = np.where(odd, (3 * v + 1) >> 1, v >> 1)
        n_i[idx] += odd
        steps += 1
        if full:
            done = v == 1
            cyc = np.zeros_like(done)
        else:
            done = v < x
            cyc = v == x
        stop = done | cyc
        if stop.any():
            lengths[idx[stop]] = steps
            status[idx[done]] = OK
            status[idx[cyc]] = CYCLE
            keep = ~stop
            idx, x, v = idx[keep], x[keep], v[keep]
    lengths[idx] = steps
    return lengths, n_i, status


def stopping_lengths(start, count, budget, full=False, backend=None):
    """Combined-step counts for ``start .. start + count - 1``.

    Returns ``(lengths, n_i, status)`` arrays. With ``full`` the count runs
    to 1, otherwise to the first value below the start. ``status`` holds
    OK, OVERFLOW, BUDGET or CYCLE per entry; ``lengths`` is only
    meaningful where it is OK.
    """
    backend = backend or DEFAULT_BACKEND
    if start < 1 or count < 0:
        raise ValueError("need start >= 1 and count >= 0")
    if count == 0 or start + count - 1 > _INT64_MAX:
        return (np.zeros(count, dtype=np.int64), np.zeros(count, dtype=np.int64),
                np.full(count, OVERFLOW, dtype=np.uint8))
    if backend == "numba":
        if not HAVE_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable or disabled")
        return _run_numba(start, count, budget, full)
    if backend == "numpy":
        return _run_numpy(start, count, budget, full)
    raise ValueError(f"unknown backend {backend!r}")
