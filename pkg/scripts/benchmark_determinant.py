#!/usr/bin/env python3
"""Benchmark the fraction-free Gram determinant against the product formula.

For each size the script times the Bareiss elimination on the full Gram
matrix and the closed-form product of Chebyshev quotients, checks they agree
exactly, and reports the determinant degree.  Size 5 is a 42 x 42 matrix
whose determinant has degree 210; size 6 (132 x 132, degree 792) is feasible
but takes minutes.

    python scripts/benchmark_determinant.py --max-n 5
"""

import argparse
import sys
import time

from tlmarkov.markov import gram
from tlmarkov.ortho import bareiss_det, det_product


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-n", type=int, default=5)
    args = parser.parse_args()

    for n in range(1, args.max_n + 1):
        start = time.perf_counter()
        matrix = gram(n)
        gram_time = time.perf_counter() - start

        start = time.perf_counter()
        direct = bareiss_det(matrix)
        bareiss_time = time.perf_counter() - start

        start = time.perf_counter()
        product = det_product(n)
        product_time = time.perf_counter() - start

        if not (product.is_polynomial and product.num == direct):
            print(f"n={n}: MISMATCH between elimination and product form")
            return 1
        print(
            f"n={n}  size={matrix.size:4d}  deg(det)={direct.degree:4d}  "
            f"gram={gram_time:6.2f}s  bareiss={bareiss_time:7.2f}s  "
            f"product={product_time:6.3f}s"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
