"""Time the stopping-length kernels on a block of consecutive starts.

    python3 benchmarks/bench_kernels.py --start 2 --count 1000000 [--full]

Compares the numba kernel, the numpy fallback, and the plain Python loop
(on a smaller slice, since it is far slower), and checks that all three
return the same lengths.
"""

import argparse
import statistics
import time

import numpy as np

from crtk import _kernels
from crtk.dynamics import reduced_length
from crtk.verify import descent_length


def _time(fn, repeat):
    out, times = None, []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return out, statistics.median(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--start", type=int, default=2)
    ap.add_argument("--count", type=int, default=1_000_000)
    ap.add_argument("--python-count", type=int, default=100_000)
    ap.add_argument("--budget", type=int, default=10_000)
    ap.add_argument("--full", action="store_true", help="count steps down to 1")
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rows = []
    results = {}
    backends = ["numba", "numpy"] if _kernels.HAVE_NUMBA else ["numpy"]
    if _kernels.HAVE_NUMBA:
        _kernels.stopping_lengths(args.start, 16, args.budget, args.full, "numba")  # compile
    for b in backends:
        out, t = _time(lambda: _kernels.stopping_lengths(
            args.start, args.count, args.budget, args.full, b), args.repeat)
        results[b] = out[0]
        rows.append((b, args.count, t))

    n = min(args.python_count, args.count)
    step = descent_length if args.full else reduced_length
    py, t = _time(lambda: [step(x, args.budget)[0] for x in range(args.start, args.start + n)], 1)
    rows.append(("python", n, t))

    print(f"{'backend':<8} {'starts':>10} {'seconds':>10} {'starts/s':>12}")
    for name, cnt, t in rows:
        print(f"{name:<8} {cnt:>10} {t:>10.3f} {cnt / t:>12.0f}")

    ref = np.asarray(py)
    for b, lengths in results.items():
        assert np.array_equal(lengths[:n], ref), f"{b} disagrees with the Python loop"
    if len(results) == 2:
        assert np.array_equal(results["numba"], results["numpy"]), "backends disagree"
    print("all backends agree")


if __name__ == "__main__":
    main()
