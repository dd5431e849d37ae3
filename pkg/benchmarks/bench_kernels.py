"""Time the numba kernels against their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

The first numba call includes compilation (or cache load) and is reported
separately.  Results are checked for equality before timing.
"""
import argparse
import time

import numpy as np

from wcderived import _kernels
from wcderived.cohomology import FiniteGroup, GModule
from wcderived.elliptic_ff import fq_tables


def cases():
    p = 1009
    yield "weierstrass_affine_count p=1009", (p, 3, 7)
    yield "cubic_projective_points p=211", (211, np.array([1, 0, 0, 0, 0, 0, 2, 0, 0, 3]))
    add, mul = fq_tables(7, 3)
    quads = np.array([[3, 0, 0, 0, 0, 0], [0, 0, 0, 6, 0, 0], [0, 0, 0, 0, 0, 9 % 7]], dtype=np.int64)
    yield "fq_common_zero_count F_343", (add, mul, quads)
    M = GModule.cyclic(FiniteGroup.cyclic(4), 12, [1, 5, 1, 5])
    G = M.group
    yield "filter_cocycles C4 on Z/12", (M.act_table, M.add_table, np.asarray(G.table), G.identity)


def timed(fn, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if _kernels.numba_impl is None:
        print("numba unavailable; nothing to compare")
        return
    print(f"{'kernel':36s} {'numpy':>10s} {'numba':>10s} {'first numba':>12s} {'speedup':>8s}")
    for name, a in cases():
        np_fn = getattr(_kernels.numpy_impl, name.split()[0])
        nb_fn = getattr(_kernels.numba_impl, name.split()[0])
        t0 = time.perf_counter()
        out_nb = nb_fn(*a)
        first = time.perf_counter() - t0
        if not same(np_fn(*a), out_nb):
            raise SystemExit(f"{name}: backends disagree")
        t_np = timed(np_fn, a, args.repeat)
        t_nb = timed(nb_fn, a, args.repeat)
        print(f"{name:36s} {t_np * 1e3:9.2f}ms {t_nb * 1e3:9.2f}ms {first * 1e3:11.1f}ms {t_np / t_nb:7.1f}x")


if __name__ == "__main__":
    main()
