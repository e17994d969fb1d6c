"""Compare the compiled and pure-Python canonical-labelling kernels.

Usage: python benchmarks/bench_canonical.py [n] [repeats]
"""

import random
import sys
import timeit

from origami_tess import _kernels_py, _native


def random_origami(n, rng):
    while True:
        h = list(range(n))
        v = list(range(n))
        rng.shuffle(h)
        rng.shuffle(v)
        seen, stack = {0}, [0]
        while stack:
            x = stack.pop()
            for y in (h[x], v[x]):
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if len(seen) == n:
            return h, v, [rng.random() < 0.5 for _ in range(n)]


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 60
    repeats = int(sys.argv[2]) if len(sys.argv) > 2 else 20
    rng = random.Random(0)
    cases = [random_origami(n, rng) for _ in range(repeats)]
    for h, v, m in cases:
        assert _kernels_py.canonical_code(h, v, m) == _native.canonical_code(h, v, m)
    pure = timeit.timeit(lambda: [_kernels_py.canonical_code(*c) for c in cases], number=1)
    fast = timeit.timeit(lambda: [_native.canonical_code(*c) for c in cases], number=1)
    print(f"n={n} origamis={repeats} backend={_native.BACKEND}")
    print(f"python {pure * 1e3:.1f} ms, {_native.BACKEND} {fast * 1e3:.1f} ms, speedup {pure / fast:.1f}x")


if __name__ == "__main__":
    main()
