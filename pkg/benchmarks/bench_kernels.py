"""Time the compiled relation kernels against the pure-Python ones.

    python3 benchmarks/bench_kernels.py [--repeat N] [--max-size N]

Both backends run on the same tables, and their outputs are compared before
any timing is reported.
"""

import argparse
import timeit

import numpy as np

from steindual import kernels
from steindual import _kernels_py as python_backend
from steindual.fixtures import matrix_quasi_cartan, powerset_algebra, symmetric_inverse_monoid

CASES = [
    ("symmetric inverse monoid on 3 points", lambda: symmetric_inverse_monoid(3)),
    ("symmetric inverse monoid on 4 points", lambda: symmetric_inverse_monoid(4)),
    ("powerset algebra on 5 points", lambda: powerset_algebra(5)),
    ("2x2 matrices over F3", lambda: matrix_quasi_cartan(2, 3)),
]


def kernel_calls(backend, ctx):
    mult = ctx.carrier.mult
    calls = {
        "restriction": lambda: backend.restriction_matrix(mult, ctx.Z),
        "domination": lambda: backend.domination_witnesses(mult, ctx.S, ctx.Z_mask, ctx.D_mask),
    }
    if ctx.zero is not None:
        calls["orthogonality"] = lambda: backend.orthogonality_matrix(mult, ctx.Z, ctx.zero)
    return calls


def best_time(call, repeat):
    return min(timeit.repeat(call, number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--max-size", type=int, default=300,
                        help="skip carriers larger than this")
    args = parser.parse_args()

    compiled = kernels.compiled_backend
    if compiled is None:
        print("compiled kernels are not built; run `pip install -e . --no-build-isolation`")
        return
    print(f"{'case':40} {'kernel':14} {'n':>5} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for title, build in CASES:
        ctx = build()
        n = ctx.carrier.size
        if n > args.max_size:
            print(f"{title:40} skipped (n = {n})")
            continue
        slow = kernel_calls(python_backend, ctx)
        fast = kernel_calls(compiled, ctx)
        for name in slow:
            if not np.array_equal(np.asarray(slow[name]()), np.asarray(fast[name]())):
                raise SystemExit(f"backends disagree on {name} for {title}")
            t_py = best_time(slow[name], args.repeat)
            t_cy = best_time(fast[name], args.repeat)
            print(f"{title:40} {name:14} {n:5d} {t_py:10.4f} {t_cy:10.4f} {t_py / t_cy:8.1f}")


if __name__ == "__main__":
    main()
