"""Exact tiling probabilities and tiling counts.

The tiling probability T_n(p) is a polynomial in p: summing
p^(#available) * (1-p)^(#unavailable) over the availability configurations
that tile the unit square. Exhaustive enumeration of all 2^((n+1)*2^n)
configurations is feasible only for n <= 2 (4096 configurations); the first
three polynomials are

    T_0 = p,   T_1 = 2p^2 - p^4,
    T_2 = 7p^4 - 8p^6 - 4p^7 + p^8 + 8p^9 - 4p^11 + p^12.

Counting the tilings themselves reaches much further. Writing N(i, j) for
the number of tilings of a shape-(i, j) rectangle by order-n tiles, a
tiling either starts with a horizontal or a vertical cut, and only the
all-quarters refinement is counted by both:

    N(i, j) = N(i, j+1)^2 + N(i+1, j)^2 - N(i+1, j+1)^4,

with N = 1 at order n. The unit-square counts start 1, 2, 7, 82.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .polynomials import UniPoly, from_success_counts
from .tiles import DyadicTile, UNIT_SQUARE, children, enumerate_tiles, tile_count
from . import tileability

EXACT_T_MAX_ORDER = 2
COUNT_MAX_ORDER = 20
ENUMERATE_MAX_ORDER = 3


def exact_tiling_poly(n: int) -> UniPoly:
    """T_n as an exact integer-coefficient polynomial in p, for n <= 2."""
    if not (0 <= n <= EXACT_T_MAX_ORDER):
        raise ValueError(f"exhaustive enumeration supports n <= {EXACT_T_MAX_ORDER}")
    m = tile_count(n)
    counts: dict[int, int] = {}
    masks = [mask for _, mask in _tiling_masks(n)]
    for cfg in range(1 << m):
        if any(mask & cfg == mask for mask in masks):
            a = cfg.bit_count()
            counts[a] = counts.get(a, 0) + 1
    return from_success_counts(m, counts)


@lru_cache(maxsize=None)
def _recursive_success_counts(n: int) -> tuple[int, ...]:
    """Tileable-configuration counts by #available, via the recursive test."""
    m = tile_count(n)
    tiles = list(enumerate_tiles(n))
    counts = [0] * (m + 1)
    for cfg in range(1 << m):
        avail = [t for b, t in enumerate(tiles) if cfg >> b & 1]
        config = tileability.AvailabilityConfig.from_available(n, avail)
        if tileability.is_tileable(UNIT_SQUARE, config):
            counts[len(avail)] += 1
    return tuple(counts)


def brute_force_probability(n: int, p) -> Fraction:
    """T_n(p) summed configuration by configuration with exact rationals.

    Independent of exact_tiling_poly's counting: decides each configuration
    with the recursive tileability test and accumulates Fraction weights.
    """
    if not (0 <= n <= EXACT_T_MAX_ORDER):
        raise ValueError(f"exhaustive enumeration supports n <= {EXACT_T_MAX_ORDER}")
    p = Fraction(p)
    if not (0 <= p <= 1):
        raise ValueError("p must lie in [0, 1]")
    m = tile_count(n)
    total = Fraction(0)
    for a, cnt in enumerate(_recursive_success_counts(n)):
        if cnt:
            total += cnt * p**a * (1 - p) ** (m - a)
    return total


def count_tilings(n: int) -> int:
    """Number of tilings of the unit square by order-n tiles, n <= 20."""
    if not (0 <= n <= COUNT_MAX_ORDER):
        raise ValueError(f"tiling counts support n <= {COUNT_MAX_ORDER}")
    memo: dict[tuple[int, int], int] = {}

    def N(i: int, j: int) -> int:
        if i + j == n:
            return 1
        got = memo.get((i, j))
        if got is None:
            h = N(i, j + 1)
            v = N(i + 1, j)
            q = N(i + 1, j + 1) if i + j + 2 <= n else 0
            got = h * h + v * v - q**4
            memo[(i, j)] = got
        return got

    return N(0, 0)


def enumerate_unit_tilings(n: int) -> list[frozenset[DyadicTile]]:
    """Every tiling of the unit square by order-n tiles, n <= 3."""
    if not (0 <= n <= ENUMERATE_MAX_ORDER):
        raise ValueError(f"tiling enumeration supports n <= {ENUMERATE_MAX_ORDER}")
    memo: dict[DyadicTile, set[frozenset[DyadicTile]]] = {}

    def tilings(t: DyadicTile) -> set[frozenset[DyadicTile]]:
        if t.order == n:
            return {frozenset([t])}
        got = memo.get(t)
        if got is None:
            got = set()
            (h1, h2), (v1, v2) = children(t)
            for a in tilings(h1):
                for b in tilings(h2):
                    got.add(a | b)
            for a in tilings(v1):
                for b in tilings(v2):
                    got.add(a | b)
            memo[t] = got
        return got

    return sorted(tilings(UNIT_SQUARE), key=lambda s: sorted(s))


def _tiling_masks(n: int) -> list[tuple[frozenset[DyadicTile], int]]:
    """Each unit-square tiling with its availability bitmask."""
    from .tiles import tile_index

    out = []
    for tiling in enumerate_unit_tilings(n):
        mask = 0
        for t in tiling:
            mask |= 1 << tile_index(t).value
        out.append((tiling, mask))
    return out
