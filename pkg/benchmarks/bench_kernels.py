"""Compare the compiled and pure arithmetic kernels.

Times the three kernel primitives on shapes the differential reduction
actually produces, then full L-series runs with each backend forced.  Run as

    python3 benchmarks/bench_kernels.py
"""

import random
import time

from zetafrob import _kernel, _pure
from zetafrob.gf import gf_make
from zetafrob.kedlaya import zeta_lpoly

try:
    from zetafrob import _speedups
except ImportError:
    _speedups = None


def bench(fn, args, seconds=0.2):
    # one warm call, then as many timed repeats as fit the budget
    fn(*args)
    reps = 0
    t0 = time.perf_counter()
    while True:
        fn(*args)
        reps += 1
        dt = time.perf_counter() - t0
        if dt >= seconds:
            return dt / reps


def kernel_rows(rng):
    shapes = [
        ("elt_mul  n=2 p^10", "elt_mul", 2, 3 ** 10, 1, 1),
        ("elt_mul  n=4 p^8", "elt_mul", 4, 5 ** 8, 1, 1),
        ("poly_mul n=1 deg 40", "poly_mul", 1, 3 ** 12, 41, 41),
        ("poly_mul n=2 deg 12", "poly_mul", 2, 7 ** 9, 13, 13),
        ("divmod   n=1 deg 80/11", "poly_divmod", 1, 3 ** 12, 81, 12),
        ("divmod   n=2 deg 30/7", "poly_divmod", 2, 5 ** 9, 31, 8),
    ]
    for label, name, n, pm, da, db in shapes:
        mt = [rng.randrange(pm) for _ in range(n)]
        a = [rng.randrange(pm) for _ in range(da * n)]
        if name == "poly_divmod":
            b = [rng.randrange(pm) for _ in range((db - 1) * n)]
            b += [1] + [0] * (n - 1)
        else:
            b = [rng.randrange(pm) for _ in range(db * n)]
        args = (a, b, n, pm, mt)
        t_pure = bench(getattr(_pure, name), args)
        t_fast = bench(getattr(_speedups, name), args) if _speedups else None
        yield label, t_pure, t_fast


def zeta_rows():
    F9 = gf_make(3, 2, [1, 0, 1])
    F25 = gf_make(5, 2, [2, 0, 1])
    z9, t9 = F9.zero(), F9.gen()
    z25, t25 = F25.zero(), F25.gen()
    cases = [
        ("g=2 q=3  dx/y^3", gf_make(3, 1), [2, 1, 0, 1, 0, 1]),
        ("g=3 q=9  dx/y", F9,
         [F9.one(), t9, z9, z9, z9, z9, z9, F9.one()]),
        ("g=2 q=25 dx/y", F25,
         [F25.one(), z25, t25, z25, z25, F25.one()]),
    ]
    for label, F, coeffs in cases:
        saved = _kernel.use_speedups
        try:
            _kernel.use_speedups = False
            t0 = time.perf_counter()
            want = zeta_lpoly(F, coeffs).L
            t_pure = time.perf_counter() - t0
            t_fast = None
            if _speedups is not None:
                _kernel.use_speedups = True
                t0 = time.perf_counter()
                got = zeta_lpoly(F, coeffs).L
                t_fast = time.perf_counter() - t0
                assert got == want, label
        finally:
            _kernel.use_speedups = saved
        yield "zeta " + label, t_pure, t_fast


def main():
    rng = random.Random(20260815)
    if _speedups is None:
        print("compiled kernels not built; timing pure kernels only")
    print(f"{'case':28s} {'pure':>10s} {'compiled':>10s} {'speedup':>8s}")
    for label, t_pure, t_fast in list(kernel_rows(rng)) + list(zeta_rows()):
        if t_fast is None:
            print(f"{label:28s} {t_pure * 1e6:9.1f}u {'-':>10s}")
        else:
            print(f"{label:28s} {t_pure * 1e6:9.1f}u {t_fast * 1e6:9.1f}u "
                  f"{t_pure / t_fast:7.1f}x")


if __name__ == "__main__":
    main()
