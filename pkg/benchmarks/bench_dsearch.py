"""Time the Spin^c class search kernels on synthetic inputs.

    python benchmarks/bench_dsearch.py [--ranks 6 8 10 12] [--n 6] [--gens 8] [--repeat 3]

Pairing tensors are even so no candidate trips the integrality check, and the
last generator has a zero tensor with right-hand bit 1, so no candidate is
accepted and both kernels scan all 2^r masks.
"""

from __future__ import annotations

import argparse
import random
import time

from sacs import _dsearch_py, kernels


def instance(rng: random.Random, r: int, n: int, g: int):
    base = [rng.randint(-3, 3) for _ in range(n)]
    P = [[rng.randint(-3, 3) for _ in range(n)] for _ in range(r)]
    Q = [[None] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            Q[i][j] = Q[j][i] = [rng.randint(-3, 3) for _ in range(n)]
    R = [rng.randint(-3, 3) for _ in range(n)]
    G = []
    for _ in range(g):
        M = [[0] * n for _ in range(n)]
        for k in range(n):
            for l in range(k, n):
                M[k][l] = M[l][k] = 2 * rng.randint(-2, 2)
        G.append(M)
    G[-1] = [[0] * n for _ in range(n)]
    rhs = [rng.randint(0, 1) for _ in range(g - 1)] + [1]
    return r, n, base, P, Q, R, G, rhs


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ranks", type=int, nargs="+", default=[6, 8, 10, 12])
    ap.add_argument("--n", type=int, default=6, help="free rank of H^4")
    ap.add_argument("--gens", type=int, default=8, help="number of D(M) generators")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    have_compiled = "cython" in kernels.available_backends()
    print(f"compiled kernel: {'available' if have_compiled else 'not built'}")
    print(f"{'r':>3} {'candidates':>10} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    rng = random.Random(args.seed)
    for r in args.ranks:
        inst = instance(rng, r, args.n, args.gens)
        py_result = _dsearch_py.scan(*inst)
        t_py = best_of(lambda: _dsearch_py.scan(*inst), args.repeat)
        if have_compiled:
            assert kernels.fits_int64(*inst[:7])
            assert kernels.scan(*inst, backend="cython") == py_result
            t_cy = best_of(lambda: kernels.scan(*inst, backend="cython"), args.repeat)
            print(f"{r:>3} {1 << r:>10} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>7.1f}x")
        else:
            print(f"{r:>3} {1 << r:>10} {t_py:>10.4f} {'-':>10} {'-':>8}")


if __name__ == "__main__":
    main()
