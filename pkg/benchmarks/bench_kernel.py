"""Compare the compiled and pure-Python product kernels.

    python3 benchmarks/bench_kernel.py [--repeat N]

Each case multiplies two random F_2-combinations of monomials; the two
kernels must agree before any timing is reported.
"""

import argparse
import random
import timeit

from motivic_steenrod import _packing as pk
from motivic_steenrod import kernel
from motivic_steenrod.algebra import monomials_up_to


def random_element(rng, mons, size, scalars):
    keys = rng.sample(mons, size)
    if scalars:
        keys = [k + pk.scalar_key(rng.randrange(3), rng.randrange(3)) for k in keys]
    return frozenset(keys)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    compiled = kernel.compiled_mul_terms()
    if compiled is None:
        print("compiled kernel not available; build with: pip install -e . --no-build-isolation")
    rng = random.Random(args.seed)
    mons = monomials_up_to(30)
    cases = [(10, False), (50, False), (150, False), (300, False), (150, True)]
    print(f"{'terms':>6} {'scalars':>8} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for size, scalars in cases:
        xs = random_element(rng, mons, size, scalars)
        ys = random_element(rng, mons, size, scalars)
        ref = kernel.python_mul_terms(xs, ys)
        t_py = min(timeit.repeat(lambda: kernel.python_mul_terms(xs, ys), number=1, repeat=args.repeat))
        if compiled is None:
            print(f"{size:>6} {str(scalars):>8} {t_py * 1e3:>10.2f} {'-':>10} {'-':>8}")
            continue
        assert compiled(xs, ys) == ref, "kernels disagree"
        t_c = min(timeit.repeat(lambda: compiled(xs, ys), number=1, repeat=args.repeat))
        print(f"{size:>6} {str(scalars):>8} {t_py * 1e3:>10.2f} {t_c * 1e3:>10.2f} {t_py / t_c:>7.1f}x")


if __name__ == "__main__":
    main()
