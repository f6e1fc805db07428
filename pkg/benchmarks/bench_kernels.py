"""Compare the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Both backends are importable side by side (``*_nb`` and ``*_np``); the
environment switch only decides which one the package uses.  Results are
checked for agreement before timing.  The numba column excludes compilation,
which happens once in a warm-up call.
"""

import argparse
import time

import numpy as np

from ringelhall import _kernels as K


def cases(rng):
    p = 3
    yield "rank 24x24", "rank", (rng.integers(0, p, (24, 24)), p)
    yield "rank 60x80", "rank", (rng.integers(0, p, (60, 80)), p)
    yield "rank_batch 512 x 12x16", "rank_batch", (rng.integers(0, p, (512, 12, 16)), p)
    yield "inverse 16x16", "inverse", (np.eye(16, dtype=np.int64) + np.triu(rng.integers(0, p, (16, 16)), 1), p)
    # span of block-diagonal pairs: enumerates 2^8 combinations
    basis = rng.integers(0, 2, (8, 2, 4, 4))
    yield "count_units D=8", "count_units", (basis, [4, 3], 2)


def best_time(fn, args, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t)
    return min(times)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if K.numba is None:
        print("numba is not installed; only the numpy backend is available")
        return 1
    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<26}{'numpy (ms)':>12}{'numba (ms)':>12}{'speedup':>10}")
    for label, name, inputs in cases(rng):
        f_np, f_nb = getattr(K, f"{name}_np"), getattr(K, f"{name}_nb")
        ref, got = f_np(*inputs), f_nb(*inputs)
        if not np.array_equal(np.asarray(ref, dtype=object), np.asarray(got, dtype=object)):
            raise SystemExit(f"{label}: backends disagree ({ref!r} vs {got!r})")
        t_np = best_time(f_np, inputs, args.repeat)
        t_nb = best_time(f_nb, inputs, args.repeat)
        print(f"{label:<26}{t_np * 1e3:>12.3f}{t_nb * 1e3:>12.3f}{t_np / t_nb:>9.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
