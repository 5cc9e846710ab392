"""Availability configurations and exact tileability decisions.

An availability configuration fixes an order n and marks each order-n tile
available or unavailable. A tile t of order <= n is tileable when it can be
partitioned into available order-n tiles; equivalently (cutting t in half
either way and recursing):

    tileable(t) = (both horizontal children tileable)
               or (both vertical children tileable),

with availability itself as the base case at order n. A tile that is not
tileable is blocked.

Cells are the order-2n squares of side 2^-n aligned to the grid, recorded
here as DyadicTile(n, n, x, y). A cell is uncovered when no available tile
contains it, and bad when every available tile containing it has no available
friend. Bad cells obstruct tiling locally: a tile covering a bad cell can
never be completed to a tiling of a dyadic neighborhood around it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from . import engine
from .tiles import (
    DyadicTile,
    children,
    friends,
    interiors_intersect,
    tile_count,
    tile_from_index,
    tile_from_str,
    tile_index,
    tile_to_str,
)


class AvailabilityConfig:
    """Immutable availability marking of all order-n tiles."""

    __slots__ = ("order", "_bits")

    def __init__(self, order: int, bits: np.ndarray):
        if order < 0:
            raise ValueError("order must be nonnegative")
        bits = np.asarray(bits, dtype=bool)
        if bits.shape != (tile_count(order),):
            raise ValueError(
                f"expected {tile_count(order)} availability bits for order {order}"
            )
        bits = bits.copy()
        bits.setflags(write=False)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("AvailabilityConfig is immutable")

    # -- construction ------------------------------------------------------

    @classmethod
    def full(cls, order: int) -> "AvailabilityConfig":
        return cls(order, np.ones(tile_count(order), dtype=bool))

    @classmethod
    def empty(cls, order: int) -> "AvailabilityConfig":
        return cls(order, np.zeros(tile_count(order), dtype=bool))

    @classmethod
    def from_available(
        cls, order: int, tiles: Iterable[DyadicTile]
    ) -> "AvailabilityConfig":
        bits = np.zeros(tile_count(order), dtype=bool)
        for t in tiles:
            if t.order != order:
                raise ValueError(f"{t} does not have order {order}")
            bits[tile_index(t).value] = True
        return cls(order, bits)

    def without(self, tiles: Iterable[DyadicTile]) -> "AvailabilityConfig":
        """Copy with the given order-n tiles marked unavailable."""
        bits = self._bits.copy()
        for t in tiles:
            if t.order != self.order:
                raise ValueError(f"{t} does not have order {self.order}")
            bits[tile_index(t).value] = False
        return AvailabilityConfig(self.order, bits)

    # -- queries -----------------------------------------------------------

    def available(self, t: DyadicTile) -> bool:
        if t.order != self.order:
            raise ValueError(f"{t} does not have order {self.order}")
        return bool(self._bits[tile_index(t).value])

    def available_count(self) -> int:
        return int(self._bits.sum())

    def available_tiles(self) -> list[DyadicTile]:
        return [tile_from_index(self.order, int(v)) for v in np.nonzero(self._bits)[0]]

    def bits(self) -> np.ndarray:
        """Read-only availability array in tile-index order."""
        return self._bits

    def permuted(self, axis: str, k: int) -> "AvailabilityConfig":
        """Image under a coordinate digit flip of the tile grid."""
        perm = engine.digit_flip_permutation(self.order, axis, k)
        bits = np.zeros_like(self._bits)
        bits[perm] = self._bits
        return AvailabilityConfig(self.order, bits)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AvailabilityConfig):
            return NotImplemented
        return self.order == other.order and bool(np.all(self._bits == other._bits))

    def __hash__(self) -> int:
        return hash((self.order, np.packbits(self._bits).tobytes()))

    def __repr__(self) -> str:
        return (
            f"AvailabilityConfig(order={self.order}, "
            f"available={self.available_count()}/{tile_count(self.order)})"
        )

    # -- serialization -----------------------------------------------------

    def to_text(self) -> str:
        """Two lines: the order, then the bit array packed into hex."""
        return f"{self.order}\n{np.packbits(self._bits).tobytes().hex()}\n"

    @classmethod
    def from_text(cls, text: str) -> "AvailabilityConfig":
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if len(lines) != 2:
            raise ValueError("expected two lines: order, then hex bits")
        order = int(lines[0])
        raw = np.frombuffer(bytes.fromhex(lines[1].strip()), dtype=np.uint8)
        bits = np.unpackbits(raw)[: tile_count(order)].astype(bool)
        return cls(order, bits)

    def to_json(self) -> str:
        return json.dumps(
            {
                "order": self.order,
                "available": [tile_to_str(t) for t in self.available_tiles()],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "AvailabilityConfig":
        data = json.loads(text)
        if isinstance(data, list):
            tiles = [tile_from_str(s) for s in data]
            if not tiles:
                raise ValueError("cannot infer the order from an empty tile list")
            return cls.from_available(tiles[0].order, tiles)
        return cls.from_available(
            int(data["order"]), [tile_from_str(s) for s in data["available"]]
        )


@dataclass(frozen=True)
class Tiling:
    """A partition of `target` into available order-`order` tiles."""

    target: DyadicTile
    order: int
    tiles: frozenset[DyadicTile]

    def validate(self) -> None:
        n = self.order
        if self.target.order > n:
            raise ValueError("target is finer than the tiling order")
        for t in self.tiles:
            if t.order != n:
                raise ValueError(f"{t} does not have order {n}")
            if not tile_in(t, self.target):
                raise ValueError(f"{t} is not contained in {self.target}")
        tl = list(self.tiles)
        for x in range(len(tl)):
            for y in range(x + 1, len(tl)):
                if interiors_intersect(tl[x], tl[y]):
                    raise ValueError(f"{tl[x]} and {tl[y]} overlap")
        # interior-disjoint order-n tiles inside the target partition it
        # exactly when their total area matches: |tiles| * 2^-n = 2^-order.
        if len(self.tiles) != 1 << (n - self.target.order):
            raise ValueError("tiles do not cover the target's area")


def tile_in(inner: DyadicTile, outer: DyadicTile) -> bool:
    """Containment of dyadic tiles."""
    return (
        inner.i >= outer.i
        and inner.j >= outer.j
        and (inner.a >> (inner.i - outer.i)) == outer.a
        and (inner.b >> (inner.j - outer.j)) == outer.b
    )


def is_tileable(t: DyadicTile, cfg: AvailabilityConfig) -> bool:
    """Decide whether t can be partitioned into available order-n tiles."""
    n = cfg.order
    if t.order > n:
        raise ValueError(f"{t} is finer than the configuration order {n}")
    bits = cfg.bits()
    memo: dict[DyadicTile, bool] = {}

    def rec(u: DyadicTile) -> bool:
        if u.order == n:
            return bool(bits[tile_index(u).value])
        got = memo.get(u)
        if got is None:
            (h1, h2), (v1, v2) = children(u)
            got = (rec(h1) and rec(h2)) or (rec(v1) and rec(v2))
            memo[u] = got
        return got

    return rec(t)


def extract_tiling(t: DyadicTile, cfg: AvailabilityConfig) -> Optional[Tiling]:
    """A witness tiling of t, or None. Deterministic: horizontal cuts first."""
    n = cfg.order
    if t.order > n:
        raise ValueError(f"{t} is finer than the configuration order {n}")
    bits = cfg.bits()
    memo: dict[DyadicTile, bool] = {}

    def rec(u: DyadicTile) -> bool:
        if u.order == n:
            return bool(bits[tile_index(u).value])
        got = memo.get(u)
        if got is None:
            (h1, h2), (v1, v2) = children(u)
            got = (rec(h1) and rec(h2)) or (rec(v1) and rec(v2))
            memo[u] = got
        return got

    def build(u: DyadicTile) -> list[DyadicTile]:
        if u.order == n:
            return [u]
        (h1, h2), (v1, v2) = children(u)
        if rec(h1) and rec(h2):
            return build(h1) + build(h2)
        return build(v1) + build(v2)

    if not rec(t):
        return None
    return Tiling(target=t, order=n, tiles=frozenset(build(t)))


def tileable_table(cfg: AvailabilityConfig) -> list[np.ndarray]:
    """Tileability of every tile of every order <= n, as bool arrays."""
    return engine.tileable_levels(cfg.bits(), cfg.order)


def uncovered_cells(cfg: AvailabilityConfig) -> set[DyadicTile]:
    """Cells contained in no available tile, as DyadicTile(n, n, x, y)."""
    n = cfg.order
    covered = _any_per_cell(cfg, good=None)
    xs, ys = np.nonzero(~covered)
    return {DyadicTile(n, n, int(x), int(y)) for x, y in zip(xs, ys)}


def bad_cells(cfg: AvailabilityConfig) -> set[DyadicTile]:
    """Cells all of whose available covering tiles lack available friends."""
    n = cfg.order
    if n < 1:
        raise ValueError("bad cells need order >= 1")
    ok = _any_per_cell(cfg, good=True)
    xs, ys = np.nonzero(~ok)
    return {DyadicTile(n, n, int(x), int(y)) for x, y in zip(xs, ys)}


def _any_per_cell(cfg: AvailabilityConfig, good: Optional[bool]) -> np.ndarray:
    """Per cell: any available covering tile (good=None), or any available
    covering tile that also has an available friend (good=True)."""
    n = cfg.order
    bits = cfg.bits()
    side = 1 << n
    xs, ys = np.meshgrid(
        np.arange(side, dtype=np.int64), np.arange(side, dtype=np.int64), indexing="ij"
    )
    out = np.zeros((side, side), dtype=bool)
    for i in range(n + 1):
        j = n - i
        idx = (i << n) + ((xs >> j) << j) + (ys >> i)
        avail = bits[idx]
        if good:
            has_friend = np.zeros_like(avail)
            if i >= 1:
                # the sibling with flipped a toggles bit j of r = a*2^j + b
                has_friend |= bits[idx ^ (1 << j)]
            if j >= 1:
                has_friend |= bits[idx ^ 1]
            avail = avail & has_friend
        out |= avail
    return out


def cell_tiles(cell: DyadicTile) -> list[DyadicTile]:
    """The n+1 order-n tiles containing a cell (n, n, x, y), one per shape."""
    n, x, y = cell.i, cell.a, cell.b
    if cell.j != n:
        raise ValueError("a cell has shape (n, n)")
    return [DyadicTile(i, n - i, x >> (n - i), y >> i) for i in range(n + 1)]
