"""Closed-form obstruction bounds and one-dimensional map iterations.

Three elementary obstructions to tiling the unit square with order-n tiles,
each kept unavailable independently with probability 1-p:

  * the expected number of uncovered cells is 4^n * (1-p)^(n+1), since a cell
    lies in n+1 tiles;
  * a fixed cell is bad (every available tile over it has no available
    friend) with probability [1-p+p(1-p)]^2 * [1-p+p(1-p)^2]^(n-1), and bad
    cells rule out local tilings, so the second factor's base crossing 1/4
    marks where the expected bad-cell count 4^n * (that product) stops
    vanishing; the crossing sits near p = 0.785996;
  * writing L_n for a failure probability that one bisection step at most
    squares-and-doubles, iterating simple maps bounds how failure propagates
    across orders.

The map iterations certify their verdicts by exact sign tests, never by
watching floats shrink:

  trivial   x -> 2x^2           decays to 0 iff the start is below 1/2;
  fkg       x -> 2x^2 - x^4     decays to 0 iff s^2 + s - 1 < 0 at the start
                                (the one-step drop factors as x(1-x)(x^2+x-1),
                                and no rational sits on the golden boundary);
  dim3      x -> p + 2x^2       the decay verdict asserts convergence to the
                                map's floor, the smaller fixed point
                                (1 - sqrt(1-8p))/4; this requires 8p <= 1 and
                                a start at most the larger fixed point, and
                                the dichotomy flips exactly at p = 1/8.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

VERDICT_DECAYS = "decays-to-0"
VERDICT_STAYS = "stays-above"
VERDICT_INCONCLUSIVE = "inconclusive-at-cap"

MAP_NAMES = ("trivial", "fkg", "dim3")

# squaring doubles the digit count each step; cap the recorded trajectory
# before the exact values become unwieldy
_TRAJECTORY_BIT_CAP = 1 << 20


def _validate_p(p) -> Fraction:
    p = Fraction(p)
    if not (0 <= p <= 1):
        raise ValueError("p must lie in [0, 1]")
    return p


def expected_uncovered(n: int, p) -> Fraction:
    """Expected number of cells contained in no available tile."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    p = _validate_p(p)
    return Fraction(4) ** n * (1 - p) ** (n + 1)


def bad_square_prob(n: int, p) -> Fraction:
    """Probability that a fixed cell is bad, for order n >= 1."""
    if n < 1:
        raise ValueError("bad cells need order >= 1")
    p = _validate_p(p)
    q = 1 - p
    return (q + p * q) ** 2 * (q + p * q**2) ** (n - 1)


def expected_bad(n: int, p) -> Fraction:
    """Expected number of bad cells, 4^n * bad_square_prob(n, p)."""
    return Fraction(4) ** n * bad_square_prob(n, p)


def bad_square_threshold(tolerance) -> Fraction:
    """The p where 4 * [1-p+p(1-p)^2] = 1, bracketed to within tolerance.

    Below this p the expected bad-cell count grows with n; above it, the
    per-order factor drops under 1/4 and the expectation dies out. The root
    is near 0.785996. Exact-rational bisection on [3/4, 1].
    """
    tolerance = Fraction(tolerance)
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")

    def g(p: Fraction) -> Fraction:
        return (1 - p) + p * (1 - p) ** 2 - Fraction(1, 4)

    lo, hi = Fraction(3, 4), Fraction(1)
    assert g(lo) > 0 > g(hi)
    while hi - lo > tolerance:
        mid = (lo + hi) / 2
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


@dataclass(frozen=True)
class IterationReport:
    map_name: str
    start: Fraction
    p: Optional[Fraction]
    verdict: str
    steps: int
    trajectory: tuple[Fraction, ...]


def iterate_map(
    map_name: str, start, steps: int = 12, p=None
) -> IterationReport:
    """Iterate one of the obstruction maps and certify its fate exactly.

    The trajectory records exact values from the start, stopping early once
    the entries' bit sizes pass an internal cap (the verdict never depends on
    the trajectory). dim3 requires its additive parameter p.
    """
    if map_name not in MAP_NAMES:
        raise ValueError(f"map must be one of {MAP_NAMES}")
    if steps < 0:
        raise ValueError("steps must be nonnegative")
    start = Fraction(start)
    if start < 0:
        raise ValueError("these maps act on nonnegative starts")

    if map_name == "dim3":
        if p is None:
            raise ValueError("dim3 needs its parameter p")
        p = _validate_p(p)
        step = lambda x: p + 2 * x * x  # noqa: E731
        verdict = _dim3_verdict(start, p)
    else:
        if p is not None:
            raise ValueError(f"{map_name} takes no parameter")
        if map_name == "trivial":
            step = lambda x: 2 * x * x  # noqa: E731
            verdict = VERDICT_DECAYS if start < Fraction(1, 2) else VERDICT_STAYS
        else:
            if start > 1:
                raise ValueError("fkg acts on starts in [0, 1]")
            step = lambda x: 2 * x * x - x**4  # noqa: E731
            verdict = (
                VERDICT_DECAYS
                if start * start + start - 1 < 0
                else VERDICT_STAYS
            )

    traj = [start]
    x = start
    for _ in range(steps):
        if x.numerator.bit_length() + x.denominator.bit_length() > _TRAJECTORY_BIT_CAP:
            break
        x = step(x)
        traj.append(x)
    return IterationReport(
        map_name=map_name,
        start=start,
        p=p,
        verdict=verdict,
        steps=len(traj) - 1,
        trajectory=tuple(traj),
    )


def _dim3_verdict(s: Fraction, p: Fraction) -> str:
    # fixed points of p + 2x^2 exist iff 1 - 8p >= 0; the orbit is bounded
    # iff moreover the start does not exceed the larger fixed point
    if 8 * p > 1:
        return VERDICT_STAYS
    # g(s) <= s, i.e. 2s^2 - s + p <= 0: s is between the fixed points and
    # the orbit converges upward/downward to the smaller one
    if 2 * s * s - s + p <= 0:
        return VERDICT_DECAYS
    # otherwise s is outside [x-, x+]; the smaller root is at most 1/8 and
    # the larger at least 1/4, so s < 1/4 puts s below x- (monotone climb to
    # the fixed point) and anything else above x+ (divergence)
    return VERDICT_DECAYS if s < Fraction(1, 4) else VERDICT_STAYS
