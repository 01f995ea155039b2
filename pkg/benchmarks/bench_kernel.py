"""Compiled vs pure-Python multiplication kernel.

    python benchmarks/bench_kernel.py [--repeat 5] [--order 6]

Times raw truncated products and one realistic workload (building the
spinless realization and its relation residuals), under both backends, and
checks the results agree.
"""
import argparse
import statistics
import sys
import time

from poincare_deform.algebra import kernels
from poincare_deform.spinless import Realization


def _time(fn, repeat):
    samples = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples), result


def products(order):
    real = Realization(order)
    ring = real.ring
    base = sum((ring.gen(n) for n in ring.names), ring.zero()) + ring.lam
    a = base ** 4
    b = (base + ring.I) ** 4

    def run():
        return a.mul(b, order)
    return run


def realization(order):
    def run():
        real = Realization(order)
        # each run builds its own ring, so compare printed forms
        return str(real.bracket(real.ring.gen("x1"), real.p[0, 0] * real.f[0, 1]))
    return run


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--order", type=int, default=6)
    args = ap.parse_args(argv)
    if kernels._ckernel is None:
        print("compiled kernel not built; install with a C compiler and Cython", file=sys.stderr)
        return 1
    print(f"{'workload':<14}{'python s':>12}{'compiled s':>12}{'speedup':>10}")
    for name, make in (("products", products), ("realization", realization)):
        work = make(args.order)
        timings, results = {}, {}
        for backend in ("python", "compiled"):
            kernels.set_backend(backend)
            timings[backend], results[backend] = _time(work, args.repeat)
        kernels.set_backend("compiled")
        if results["python"] != results["compiled"]:
            print(f"{name}: backends disagree", file=sys.stderr)
            return 1
        py, c = timings["python"], timings["compiled"]
        print(f"{name:<14}{py:>12.4f}{c:>12.4f}{py / c:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
