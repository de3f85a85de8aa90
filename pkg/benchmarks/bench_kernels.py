"""Compare the compiled kernels against the numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from drgalg import _fallback

try:
    from drgalg import _kernels
except ImportError:  # extension not built
    _kernels = None

P = 4194301


def cases(rng):
    for n in (16, 48, 96):
        a = rng.standard_normal((n, n))
        yield f"jacobi_eigh n={n}", "jacobi_eigh", ((a + a.T) / 2,)
    for rows, cols in ((60, 200), (200, 600)):
        m = rng.integers(0, P, size=(rows, cols))
        m[rows // 2:] = (m[:rows - rows // 2] * 7) % P  # rank deficient
        yield f"rref_mod_p {rows}x{cols}", "rref_mod_p", (m, P)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [("python", _fallback)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{'case':<24}" + "".join(f"{name:>12}" for name, _ in backends) + ("    speedup" if _kernels else ""))
    for label, fn, inputs in cases(np.random.default_rng(0)):
        times = [min(timeit.repeat(lambda: getattr(mod, fn)(*inputs), number=1, repeat=args.repeat))
                 for _, mod in backends]
        row = f"{label:<24}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if _kernels:
            row += f"{times[0] / times[1]:>10.1f}x"
        print(row)


if __name__ == "__main__":
    main()
