"""Time the numba and numpy kernels side by side on identical inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Each row reports the best wall time per implementation and checks that
both produced the same answer.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from fsignature import kernels
from fsignature.colength import pair_colength
from fsignature.poly import RingContext


def best_of(fn, repeat: int) -> tuple[float, object]:
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(rng: np.random.Generator):
    p = 29
    for n in (64, 200, 400):
        M = rng.integers(0, p, (n, n))
        yield f"rank {n}x{n} mod {p}", 0, (M, p)
    for alpha in (1000, 20000):
        P = rng.integers(0, 17, alpha)
        yield f"euclid alpha={alpha} mod 17", 1, (P, alpha, alpha, 2 * alpha, 17)
    for n in (2000, 50000):
        a, b = rng.integers(0, 17, n), rng.integers(0, 17, n)
        yield f"mul_trunc n={n} mod 17", 2, (a, b, n, 17)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    impls = sorted(kernels.IMPLEMENTATIONS)
    if "numba" not in impls:
        print("numba unavailable; timing the numpy kernels only")
    rng = np.random.default_rng(0)
    print(f"{'case':32s}" + "".join(f"{name:>12s}" for name in impls) + "   agree")
    for label, slot, argv in cases(rng):
        times, outs = [], []
        for name in impls:
            fn = kernels.IMPLEMENTATIONS[name][slot]
            fn(*argv)  # warm-up, includes JIT compilation
            t, out = best_of(lambda: fn(*argv), args.repeat)
            times.append(t)
            outs.append(out.tolist() if isinstance(out, np.ndarray) else out)
        agree = all(o == outs[0] for o in outs)
        print(f"{label:32s}" + "".join(f"{t * 1e3:10.2f}ms" for t in times) + f"   {agree}")

    # end to end: one colength through the active kernels
    f = RingContext.make(17).parse("y^2-x^3")
    t, value = best_of(lambda: pair_colength(f, 4045, 3, limit=None), 1)
    print(f"pair_colength cusp p=17 e=3 a=4045 [{kernels.ACTIVE}]: {value} in {t * 1e3:.1f}ms")


if __name__ == "__main__":
    main()
