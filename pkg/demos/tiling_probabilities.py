"""Exact and simulated tiling probabilities side by side.

Small orders admit exact polynomials in p; beyond that the Monte Carlo
estimator takes over. This script prints both on a common grid so the
crossover is visible, and checks the exact values against direct
enumeration over every configuration while it is cheap to do so.
"""

from fractions import Fraction as F

from dyadic_tilings.exact import brute_force_probability, exact_tiling_poly
from dyadic_tilings.simulate import estimate_tiling_probability


def main() -> None:
    print("Exact tiling polynomials")
    for n in range(3):
        print(f"  T_{n}(p) = {exact_tiling_poly(n)}")

    p0 = F(2, 3)
    direct = brute_force_probability(2, p0)
    print(f"\nenumeration over all 4096 order-2 configurations at p = {p0}:")
    print(f"  {direct} == T_2({p0}) = {exact_tiling_poly(2)(p0)}")

    trials = 20_000
    grid = [F(3, 5), F(3, 4), F(7, 8)]
    print(f"\nMonte Carlo, {trials} trials per cell, 99% intervals")
    header = "  n " + "".join(f"{str(p):>25}" for p in grid)
    print(header)
    for n in range(1, 7):
        cells = []
        for p in grid:
            est = estimate_tiling_probability(n, p, trials=trials, seed=20 + n)
            lo, hi = est.ci
            cells.append(f"{est.estimate:.4f} [{lo:.4f},{hi:.4f}]")
        print(f"  {n} " + "".join(f"{c:>25}" for c in cells))

    print("\nexact values where available:")
    for n in (1, 2):
        row = "  ".join(f"{float(exact_tiling_poly(n)(p)):.4f}" for p in grid)
        print(f"  n={n}: {row}")


if __name__ == "__main__":
    main()
