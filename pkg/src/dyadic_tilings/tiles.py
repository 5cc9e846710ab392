"""Dyadic tile geometry.

A dyadic tile of shape (i, j) is the axis-parallel rectangle

    [a/2^i, (a+1)/2^i] x [b/2^j, (b+1)/2^j],   0 <= a < 2^i,  0 <= b < 2^j,

with area 2^-(i+j). Its order is i + j. There are (n+1)*2^n tiles of order n
and they are indexed shape-major: tile (i, j, a, b) of order n gets the value
i*2^n + a*2^j + b, so positions within a shape vary fastest in b.

Cutting a tile in half horizontally (slicing its y-interval) yields its two
horizontal children of shape (i, j+1); cutting vertically yields the two
vertical children of shape (i+1, j). Dually, a tile of order >= 1 has up to
two parents: the horizontal parent (i-1, j, a//2, b) exists when i >= 1 and is
the tile whose vertical cut produced this one, and the vertical parent
(i, j-1, a, b//2) exists when j >= 1. The friends of a tile are its siblings
under each existing parent.

Two tiles of the same order are adjacent when their interiors intersect and
their shapes differ by a single cut. Interiors of dyadic tiles intersect iff
each coordinate interval of one contains the other's (dyadic intervals are
nested or interior-disjoint), so the closed intersection of two meeting tiles
is again a dyadic tile, with the finer shape in each axis.
"""

from __future__ import annotations

import os
from typing import Iterator, NamedTuple, Optional

MAX_ORDER = int(os.environ.get("DYADIC_MAX_ORDER", "30"))


class DyadicTile(NamedTuple):
    """A dyadic rectangle, stored as shape exponents and position indices."""

    i: int
    j: int
    a: int
    b: int

    @property
    def order(self) -> int:
        return self.i + self.j

    def __str__(self) -> str:
        return f"({self.i},{self.j},{self.a},{self.b})"


UNIT_SQUARE = DyadicTile(0, 0, 0, 0)


class Children(NamedTuple):
    horizontal: tuple[DyadicTile, DyadicTile]
    vertical: tuple[DyadicTile, DyadicTile]


class Parents(NamedTuple):
    horizontal: Optional[DyadicTile]
    vertical: Optional[DyadicTile]


class TileIndex(NamedTuple):
    order: int
    value: int


def validate_tile(t: DyadicTile) -> None:
    """Raise ValueError unless t is a well-formed tile within MAX_ORDER."""
    i, j, a, b = t
    if i < 0 or j < 0:
        raise ValueError(f"negative shape exponent in {t}")
    if i + j > MAX_ORDER:
        raise ValueError(f"order {i + j} exceeds MAX_ORDER={MAX_ORDER}")
    if not (0 <= a < (1 << i)) or not (0 <= b < (1 << j)):
        raise ValueError(f"position out of range in {t}")


def tile_count(n: int) -> int:
    """Number of order-n tiles, (n+1)*2^n."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    return (n + 1) << n


def tile_index(t: DyadicTile) -> TileIndex:
    """Shape-major index of t among tiles of its order."""
    n = t.i + t.j
    return TileIndex(n, (t.i << n) + (t.a << t.j) + t.b)


def tile_from_index(order: int, value: int) -> DyadicTile:
    """Inverse of tile_index."""
    if not (0 <= value < tile_count(order)):
        raise ValueError(f"index {value} out of range for order {order}")
    i, rest = divmod(value, 1 << order)
    j = order - i
    a, b = rest >> j, rest & ((1 << j) - 1)
    return DyadicTile(i, j, a, b)


def enumerate_tiles(n: int) -> Iterator[DyadicTile]:
    """All order-n tiles in ascending index order."""
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > MAX_ORDER:
        raise ValueError(f"order {n} exceeds MAX_ORDER={MAX_ORDER}")
    for i in range(n + 1):
        j = n - i
        for a in range(1 << i):
            for b in range(1 << j):
                yield DyadicTile(i, j, a, b)


def children(t: DyadicTile) -> Children:
    i, j, a, b = t
    if i + j >= MAX_ORDER:
        raise ValueError(f"children of {t} would exceed MAX_ORDER={MAX_ORDER}")
    return Children(
        horizontal=(DyadicTile(i, j + 1, a, 2 * b), DyadicTile(i, j + 1, a, 2 * b + 1)),
        vertical=(DyadicTile(i + 1, j, 2 * a, b), DyadicTile(i + 1, j, 2 * a + 1, b)),
    )


def parents(t: DyadicTile) -> Parents:
    i, j, a, b = t
    return Parents(
        horizontal=DyadicTile(i - 1, j, a >> 1, b) if i >= 1 else None,
        vertical=DyadicTile(i, j - 1, a, b >> 1) if j >= 1 else None,
    )


def friends(t: DyadicTile) -> set[DyadicTile]:
    """Siblings of t under each of its parents; error for the unit square."""
    i, j, a, b = t
    if i == 0 and j == 0:
        raise ValueError("the unit square has no friends")
    out: set[DyadicTile] = set()
    if i >= 1:
        out.add(DyadicTile(i, j, a ^ 1, b))
    if j >= 1:
        out.add(DyadicTile(i, j, a, b ^ 1))
    return out


def _axis_interiors_meet(i1: int, a1: int, i2: int, a2: int) -> bool:
    # Open intervals (a1/2^i1, (a1+1)/2^i1) and (a2/2^i2, ...): compare on the
    # common grid 2^-(max exponent).
    if i1 >= i2:
        lo, hi = a2 << (i1 - i2), (a2 + 1) << (i1 - i2)
        return lo <= a1 < hi
    lo, hi = a1 << (i2 - i1), (a1 + 1) << (i2 - i1)
    return lo <= a2 < hi


def interiors_intersect(s: DyadicTile, t: DyadicTile) -> bool:
    return _axis_interiors_meet(s.i, s.a, t.i, t.a) and _axis_interiors_meet(
        s.j, s.b, t.j, t.b
    )


def tile_intersection(s: DyadicTile, t: DyadicTile) -> Optional[DyadicTile]:
    """Closed intersection when interiors meet (the finer shape per axis)."""
    if not interiors_intersect(s, t):
        return None
    i, a = (s.i, s.a) if s.i >= t.i else (t.i, t.a)
    j, b = (s.j, s.b) if s.j >= t.j else (t.j, t.b)
    return DyadicTile(i, j, a, b)


def adjacent(s: DyadicTile, t: DyadicTile) -> bool:
    """Same-order tiles whose interiors meet and whose shapes differ by one cut."""
    if s.order != t.order:
        raise ValueError("adjacency is defined for tiles of equal order")
    return abs(s.i - t.i) == 1 and interiors_intersect(s, t)


def digit_flip_map(axis: str, k: int, t: DyadicTile) -> DyadicTile:
    """Flip the k-th binary digit of the given coordinate, where possible.

    Acts on the x-coordinate for axis 'x' (flips digit k of a when k <= i,
    counting from 1 at the most significant digit) and on y for axis 'y'.
    Tiles too coarse to carry digit k are fixed. Each map is an involution on
    order-n tiles, preserves shape, and preserves adjacency.
    """
    if k < 1:
        raise ValueError("digit position must be >= 1")
    i, j, a, b = t
    if axis == "x":
        return DyadicTile(i, j, a ^ (1 << (i - k)), b) if k <= i else t
    if axis == "y":
        return DyadicTile(i, j, a, b ^ (1 << (j - k))) if k <= j else t
    raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")


def tile_to_str(t: DyadicTile) -> str:
    return f"{t.i},{t.j},{t.a},{t.b}"


def tile_from_str(s: str) -> DyadicTile:
    parts = s.strip().strip("()").split(",")
    if len(parts) != 4:
        raise ValueError(f"expected 'i,j,a,b', got {s!r}")
    t = DyadicTile(*(int(p) for p in parts))
    validate_tile(t)
    return t
