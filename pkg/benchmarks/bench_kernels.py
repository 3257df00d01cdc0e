"""Compare the numba loop kernels against the vectorised numpy routes.

    python3 benchmarks/bench_kernels.py [--n 1000000] [--degree 20] [--repeat 3]

Each kernel is run once to warm up (numba compiles on first call) and then
timed --repeat times; the best time is reported.  Results from both routes
are checked for equality before timing.
"""
import argparse
import time

import numpy as np

from powersym import kernels
from powersym._accel import HAVE_NUMBA
from powersym.generators import DegreeSequence, generate_configuration, powerlaw_degree_sequence
from powersym.influence import degree_ordering


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_graph(name, g, repeat):
    order = degree_ordering(g)
    indptr, indices = g.indptr, g.indices
    cases = {
        "csr": (
            lambda: kernels.build_csr(g.n, g.src, g.dst, backend="numba"),
            lambda: kernels.build_csr(g.n, g.src, g.dst, backend="numpy"),
        ),
        "shift sweep": (
            lambda: kernels.shift_sweep(g, order, backend="numba"),
            lambda: kernels.shift_sweep(g, order, backend="numpy"),
        ),
        "core peel": (
            lambda: kernels.core_peel_loop(indptr, indices),
            lambda: kernels.core_peel_numpy(indptr, indices),
        ),
    }
    a = kernels.shift_sweep(g, order, backend="numba")
    b = kernels.shift_sweep(g, order, backend="numpy")
    assert all(np.array_equal(x, y) for x, y in zip(a, b))
    assert np.array_equal(kernels.core_peel(g, backend="numba"), kernels.core_peel(g, backend="numpy"))

    print(f"{name}: n={g.n} m_total={g.m_total}")
    for kernel, (fast, slow) in cases.items():
        t_numba = best_of(fast, repeat)
        t_numpy = best_of(slow, repeat)
        print(f"  {kernel:12s} numba {t_numba:8.3f} s   numpy {t_numpy:8.3f} s   ratio {t_numpy / t_numba:6.2f}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1_000_000)
    ap.add_argument("--degree", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is unavailable or disabled; nothing to compare")

    regular = generate_configuration(DegreeSequence(np.full(args.n, args.degree)), seed=args.seed)
    bench_graph("regular configuration model", regular, args.repeat)
    heavy = powerlaw_degree_sequence(args.n // 10, exponent=2.2, seed=args.seed)
    bench_graph("heavy-tailed configuration model", generate_configuration(heavy, seed=args.seed), args.repeat)


if __name__ == "__main__":
    main()
