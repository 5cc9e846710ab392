"""First-moment bounds and one-dimensional comparison maps.

Two cheap upper bounds on the blocking probability come from counting
uncovered cells and bad cells (cells all of whose covering tiles lack an
available friend). Both are expectations with closed forms, so the
thresholds where they stop being useful are exact roots. A third family of
heuristics iterates one-dimensional maps that dominate or minorize the
blocking recursion; their verdicts bracket where the true transition can
live.
"""

from fractions import Fraction as F

from dyadic_tilings.bounds import (
    bad_square_prob,
    bad_square_threshold,
    expected_bad,
    expected_uncovered,
    iterate_map,
)


def main() -> None:
    p = F(9, 10)
    print(f"expected uncovered cells at p = {p}:")
    for n in (1, 4, 8, 16):
        print(f"  n = {n:2}: {float(expected_uncovered(n, p)):.3e}")

    print(f"\nbad-cell bound at p = {p}:")
    for n in (1, 4, 8, 16):
        print(f"  n = {n:2}: per-cell {float(bad_square_prob(n, p)):.3e}, "
              f"expected {float(expected_bad(n, p)):.3e}")

    thr = bad_square_threshold(F(1, 10**9))
    print(f"\nthe bad-cell expectation dies out above p = {float(thr):.9f}")

    print("\ncomparison maps (verdict, then the first trajectory values):")
    runs = [
        ("trivial", F(49, 100), None),
        ("trivial", F(51, 100), None),
        ("fkg", F(61, 100), None),
        ("fkg", F(62, 100), None),
        ("dim3", F(1, 4), F(1, 8)),
        ("dim3", F(3, 10), F(1, 8)),
    ]
    for name, start, pq in runs:
        r = iterate_map(name, start, p=pq) if pq is not None else \
            iterate_map(name, start)
        prefix = ", ".join(f"{float(v):.4f}" for v in r.trajectory[:5])
        tag = f" (p = {pq})" if pq is not None else ""
        print(f"  {name}{tag} from {start}: {r.verdict} [{prefix}, ...]")


if __name__ == "__main__":
    main()
