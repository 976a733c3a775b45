"""Compare the compiled kernels against the pure-Python fallback.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import timeit

from derangement import _kernels_py as py

try:
    from derangement import _kernels as cy
except ImportError:  # pragma: no cover - depends on the build
    cy = None


def cases(rng: random.Random):
    small = ([rng.randint(-50, 50) for _ in range(10)], [rng.randint(-50, 50) for _ in range(10)])
    mid = ([rng.randint(-10**6, 10**6) for _ in range(60)], [rng.randint(-10**6, 10**6) for _ in range(60)])
    big = ([rng.randint(-10**30, 10**30) for _ in range(60)], [rng.randint(-10**30, 10**30) for _ in range(60)])
    mat = [[rng.randrange(7) for _ in range(12)] for _ in range(12)]
    g = [rng.randrange(3) for _ in range(9)]
    h = [rng.randrange(3) for _ in range(9)]
    ident = [1, 0, 0, 0, 1, 0, 0, 0, 1]
    return [
        ("poly_mul 10x10 small", lambda k: k.poly_mul(*small)),
        ("poly_mul 60x60 int64", lambda k: k.poly_mul(*mid)),
        ("poly_mul 60x60 bigint", lambda k: k.poly_mul(*big)),
        ("rank_mod_p 12x12 p=7", lambda k: k.rank_mod_p(mat, 7)),
        ("rank_of_difference 3x3 p=3", lambda k: k.rank_of_difference(g, h, 3, 3)),
        ("count_fixed n=3 k=3 p=2", lambda k: k.count_fixed(ident, 3, 3, 2, True)),
    ]


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    rng = random.Random(1)
    print(f"{'kernel':32} {'python (us)':>12} {'cython (us)':>12} {'speedup':>8}")
    for name, fn in cases(rng):
        if cy is not None:
            assert fn(cy) == fn(py), name
        number = 200
        t_py = min(timeit.repeat(lambda: fn(py), number=number, repeat=args.repeat)) / number * 1e6
        if cy is None:
            print(f"{name:32} {t_py:12.2f} {'n/a':>12} {'n/a':>8}")
            continue
        t_cy = min(timeit.repeat(lambda: fn(cy), number=number, repeat=args.repeat)) / number * 1e6
        print(f"{name:32} {t_py:12.2f} {t_cy:12.2f} {t_py / t_cy:7.1f}x")


if __name__ == "__main__":
    main()
