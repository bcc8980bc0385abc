"""Compare the numba and numpy kernel backends.

Run with ``python3 benchmarks/bench_kernels.py``.  Both backends are
imported from the same module, so the numba column is empty when numba is
missing or ``FLOERCERT_DISABLE_NUMBA=1`` is set.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from floercert import _kernels as K


def _best(fn, repeat: int) -> float:
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_rank(rng, sizes, repeat):
    for n in sizes:
        m = (rng.random((n, n)) < 0.5).astype(np.uint8)
        row = ["f2_rank", "%dx%d" % (n, n), _best(lambda: K.f2_rank_numpy(m), repeat)]
        if K.NUMBA_AVAILABLE:
            K.f2_rank_numba(m)  # compile outside the timing
            assert K.f2_rank_numba(m) == K.f2_rank_numpy(m)
            row.append(_best(lambda: K.f2_rank_numba(m), repeat))
        yield row


def bench_sweep(rng, sizes, repeat):
    for n in sizes:
        vecs = [rng.choice(np.array([0, 0, 1, 2], dtype=np.int8), n) for _ in range(4)]
        row = ["tensor_sweep", "%d^4" % n, _best(lambda: K.tensor_sweep_numpy(*vecs), repeat)]
        if K.NUMBA_AVAILABLE:
            K.tensor_sweep_numba(*vecs)
            assert K.tensor_sweep_numba(*vecs) == K.tensor_sweep_numpy(*vecs)
            row.append(_best(lambda: K.tensor_sweep_numba(*vecs), repeat))
        yield row


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)
    rng = np.random.default_rng(args.seed)
    print("active backend: %s" % K.BACKEND)
    print("%-13s %-10s %12s %12s %8s" % ("kernel", "size", "numpy (ms)", "numba (ms)", "speedup"))
    rows = list(bench_rank(rng, (31, 128, 512), args.repeat)) + list(bench_sweep(rng, (31, 64, 96), args.repeat))
    for name, size, t_np, *rest in rows:
        if rest:
            print("%-13s %-10s %12.3f %12.3f %7.1fx" % (name, size, t_np * 1e3, rest[0] * 1e3, t_np / rest[0]))
        else:
            print("%-13s %-10s %12.3f %12s %8s" % (name, size, t_np * 1e3, "-", "-"))


if __name__ == "__main__":
    main()
