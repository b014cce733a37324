"""Demonstrate exact rational approximation of form-preserving matrices.

Draws a random B-unitary matrix via the Cayley parametrization, then asks
for exactly unitary approximants over Q(sqrt(-d)) at a ladder of
tolerances, printing the achieved error and the largest denominator used.
"""

import argparse
from fractions import Fraction

import numpy as np

from cuspforge.qfield_cayley import (
    ApproximationError,
    HermitianDiagForm,
    approximate_in_Ul,
    cayley,
    constraint_fill,
)


def random_unitary(rng, B, d):
    x_upper, y_upper = {}, {}
    for i in range(B.m):
        y_upper[(i, i)] = Fraction(int(rng.integers(-3, 4)), 7)
        for j in range(i + 1, B.m):
            x_upper[(i, j)] = Fraction(int(rng.integers(-3, 4)), 7)
            y_upper[(i, j)] = Fraction(int(rng.integers(-3, 4)), 7)
    M = cayley(constraint_fill(x_upper, y_upper, B, d)).to_complex()
    # scalar phase keeps B-unitarity but makes the target genuinely
    # irrational, so the approximation ladder is nontrivial
    return np.exp(0.337j) * M


def max_denominator(M) -> int:
    return max(
        max(e.a.denominator, e.b.denominator) for row in M.entries for e in row
    )


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=3)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    B = HermitianDiagForm(tuple([1] * args.m))
    M = random_unitary(rng, B, args.d)
    print(f"target: random U(B) matrix, m = {args.m}, field Q(sqrt(-{args.d}))")
    for eps in (1e-2, 1e-4, 1e-6, 1e-8, 1e-10):
        try:
            out = approximate_in_Ul(M, B, args.d, eps)
        except ApproximationError as exc:
            print(f"eps {eps:.0e}: unreachable ({exc})")
            continue
        err = float(np.max(np.abs(out.to_complex() - M)))
        print(
            f"eps {eps:.0e}: achieved {err:.3e}, exact unitarity, "
            f"max denominator {max_denominator(out)}"
        )


if __name__ == "__main__":
    main()
