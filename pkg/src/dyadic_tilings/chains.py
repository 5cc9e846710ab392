"""Chains of dyadic tiles, successors, and chain trees.

A chain of order k is the set of all order-k tiles containing a common core
tile. Writing the core as (ci, cj, ca, cb), the chain is nonempty exactly
when ci <= k, cj <= k and ci + cj >= k; it then consists of the tiles

    (i, k-i, ca >> (ci-i), cb >> (cj-(k-i)))   for  k-cj <= i <= ci,

ordered from most horizontal (widest) to most vertical (tallest). The number
of bonds, b = ci + cj - k, counts consecutive pairs; consecutive tiles are
adjacent and any two chain tiles intersect in a tile containing the core.

A successor of a chain with tiles u_0 .. u_b picks one horizontal child of
u_0 (two ways), one vertical child of u_b (two ways), and a subset of bonds
to split (2^b ways), giving 4*2^b successors. Its tile set takes, for each
bond m between u_m and u_{m+1}: the bond's intersection tile when m is not
split; when m is split, the other vertical child of u_m and the other
horizontal child of u_{m+1} (the ones avoiding the intersection). Splitting
at r bonds cuts the successor into r+1 chains of order k+1 that are pairwise
separate (no shared and no adjacent tiles), carrying b+1 bonds in total.

A chain tree of depth n hangs such decompositions recursively below the unit
chain: every node at level l holds an order-l chain, and the children of each
internal node are exactly the chains of one successor decomposition. Leaf
statistics (chain count, tile count, bond count) are the quantities tracked
by the generating function in `genfun`.

Against an availability configuration, the principal chain tree exists iff
the unit square is blocked; it splits exactly at bonds whose intersection
tile is tileable and picks the lowest-index blocked end children. All its
chains consist of blocked tiles, making the tree a compact blocking witness,
and its same-level chains never share a tile.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, Optional

from . import tileability
from .tiles import (
    DyadicTile,
    UNIT_SQUARE,
    adjacent,
    tile_from_str,
    tile_index,
    tile_intersection,
    tile_to_str,
    validate_tile,
)


@dataclass(frozen=True)
class Chain:
    """All order-`order` tiles containing `core`."""

    order: int
    core: DyadicTile

    def __post_init__(self):
        validate_tile(self.core)
        k, c = self.order, self.core
        if k < 0:
            raise ValueError("chain order must be nonnegative")
        if c.i > k or c.j > k or c.i + c.j < k:
            raise ValueError(f"core {c} defines no order-{k} chain")

    @property
    def bonds(self) -> int:
        return self.core.order - self.order

    def tiles(self) -> list[DyadicTile]:
        """Chain tiles from most horizontal to most vertical."""
        k, c = self.order, self.core
        return [
            DyadicTile(i, k - i, c.a >> (c.i - i), c.b >> (c.j - (k - i)))
            for i in range(k - c.j, c.i + 1)
        ]

    def tile_set(self) -> frozenset[DyadicTile]:
        return frozenset(self.tiles())

    def most_horizontal(self) -> DyadicTile:
        return self.tiles()[0]

    def most_vertical(self) -> DyadicTile:
        return self.tiles()[-1]


UNIT_CHAIN = Chain(0, UNIT_SQUARE)


def chain_from_ends(s: DyadicTile, t: DyadicTile) -> Chain:
    """The chain whose extreme tiles are s and t (their orders must match and
    their interiors must meet); the core is their intersection."""
    if s.order != t.order:
        raise ValueError("chain ends must have equal order")
    core = tile_intersection(s, t)
    if core is None:
        raise ValueError(f"{s} and {t} have disjoint interiors")
    return Chain(s.order, core)


def chains_separate(c: Chain, d: Chain) -> bool:
    """No tile of one chain equals or is adjacent to a tile of the other."""
    if c.order != d.order:
        raise ValueError("separateness compares chains of equal order")
    ct, dt = c.tile_set(), d.tile_set()
    if ct & dt:
        return False
    return not any(adjacent(x, y) for x in ct for y in dt)


@dataclass(frozen=True)
class Successor:
    """One of the 4*2^b successors of `chain`.

    splits: bond positions m (0-based, bond m joins tiles m and m+1) to cut.
    s_lowbit / t_lowbit: which horizontal child of the most horizontal tile
    and which vertical child of the most vertical tile to take.
    """

    chain: Chain
    splits: frozenset[int] = frozenset()
    s_lowbit: int = 0
    t_lowbit: int = 0

    def __post_init__(self):
        b = self.chain.bonds
        if any(not (0 <= m < b) for m in self.splits):
            raise ValueError("split positions must name bonds of the chain")
        if self.s_lowbit not in (0, 1) or self.t_lowbit not in (0, 1):
            raise ValueError("end choices are single bits")


def _h_child(t: DyadicTile, lowbit: int) -> DyadicTile:
    return DyadicTile(t.i, t.j + 1, t.a, 2 * t.b + lowbit)


def _v_child(t: DyadicTile, lowbit: int) -> DyadicTile:
    return DyadicTile(t.i + 1, t.j, 2 * t.a + lowbit, t.b)


def successor_tiles(sc: Successor) -> frozenset[DyadicTile]:
    """The successor's tile set: one horizontal and one vertical child per
    chain tile, where a non-split bond's intersection serves as both."""
    u = sc.chain.tiles()
    b = sc.chain.bonds
    out: set[DyadicTile] = set()
    for m in range(b + 1):
        if m == 0:
            out.add(_h_child(u[0], sc.s_lowbit))
        else:
            bit = u[m - 1].b & 1  # the intersection's digit within u_m's grid
            out.add(_h_child(u[m], bit ^ (1 if (m - 1) in sc.splits else 0)))
        if m == b:
            out.add(_v_child(u[b], sc.t_lowbit))
        else:
            bit = u[m + 1].a & 1
            out.add(_v_child(u[m], bit ^ (1 if m in sc.splits else 0)))
    return frozenset(out)


def decompose(sc: Successor) -> list[Chain]:
    """The successor's pairwise separate chains, most horizontal end first.

    Splitting at r bonds yields r+1 chains of order k+1 whose bond counts sum
    to b+1.
    """
    u = sc.chain.tiles()
    b = sc.chain.bonds
    cuts = sorted(sc.splits)
    segments = []
    lo = 0
    for m in cuts:
        segments.append((lo, m))
        lo = m + 1
    segments.append((lo, b))
    chains = []
    for lo, hi in segments:
        if lo == 0:
            left = _h_child(u[0], sc.s_lowbit)
        else:
            left = _h_child(u[lo], (u[lo - 1].b & 1) ^ 1)
        if hi == b:
            right = _v_child(u[b], sc.t_lowbit)
        else:
            right = _v_child(u[hi], (u[hi + 1].a & 1) ^ 1)
        chains.append(chain_from_ends(left, right))
    return chains


def enumerate_successors(c: Chain) -> Iterator[Successor]:
    """All 4*2^b successors, end bits outermost, split mask ascending."""
    b = c.bonds
    for s_bit, t_bit in product((0, 1), repeat=2):
        for mask in range(1 << b):
            splits = frozenset(m for m in range(b) if mask >> m & 1)
            yield Successor(c, splits, s_bit, t_bit)


# --------------------------------------------------------------------------
# chain trees


@dataclass(frozen=True)
class ChainTree:
    chain: Chain
    children: tuple["ChainTree", ...] = ()

    def depth(self) -> int:
        return 0 if not self.children else 1 + max(c.depth() for c in self.children)

    def nodes_by_level(self) -> list[list["ChainTree"]]:
        levels: list[list[ChainTree]] = []

        def walk(node: "ChainTree", level: int) -> None:
            while len(levels) <= level:
                levels.append([])
            levels[level].append(node)
            for ch in node.children:
                walk(ch, level + 1)

        walk(self, 0)
        return levels

    def leaf_chains(self) -> list[Chain]:
        if not self.children:
            return [self.chain]
        return [c for ch in self.children for c in ch.leaf_chains()]


def tree_stats(tree: ChainTree) -> tuple[int, int, int]:
    """(leaf chain count, leaf tile count, leaf bond count)."""
    leaves = tree.leaf_chains()
    chains = len(leaves)
    bonds = sum(c.bonds for c in leaves)
    return chains, bonds + chains, bonds


def enumerate_chain_trees(depth: int) -> Iterator[ChainTree]:
    """All chain trees of the given depth rooted at the unit chain.

    Counts grow like 1, 4, 32, 1280; enumeration is capped at depth 3.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth > 3:
        raise ValueError("chain-tree enumeration supports depth <= 3")

    def sub(chain: Chain, d: int) -> Iterator[ChainTree]:
        if d == 0:
            yield ChainTree(chain)
            return
        for sc in enumerate_successors(chain):
            parts = decompose(sc)
            for combo in product(*[list(sub(p, d - 1)) for p in parts]):
                yield ChainTree(chain, tuple(combo))

    return sub(UNIT_CHAIN, depth)


def build_principal_chain_tree(
    cfg: tileability.AvailabilityConfig,
) -> Optional[ChainTree]:
    """The canonical blocking witness, or None when the unit square tiles.

    Splits exactly at bonds whose intersection tile is tileable; at the chain
    ends, takes the blocked child with the smaller tile index. Every chain in
    the result consists of blocked tiles.
    """
    table = tileability.tileable_table(cfg)

    def tileable(t: DyadicTile) -> bool:
        return bool(table[t.order][tile_index(t).value])

    return principal_tree_from_oracle(cfg.order, tileable)


def principal_tree_from_oracle(n: int, tileable) -> Optional[ChainTree]:
    """Principal-tree builder over any tileability oracle for orders <= n."""
    if tileable(UNIT_SQUARE):
        return None

    def grow(chain: Chain, level: int) -> ChainTree:
        if level == n:
            return ChainTree(chain)
        u = chain.tiles()
        splits = frozenset(
            m
            for m in range(chain.bonds)
            if tileable(tile_intersection(u[m], u[m + 1]))
        )
        s_bit = _blocked_end_bit(u[0], _h_child, tileable)
        t_bit = _blocked_end_bit(u[-1], _v_child, tileable)
        sc = Successor(chain, splits, s_bit, t_bit)
        return ChainTree(
            chain, tuple(grow(part, level + 1) for part in decompose(sc))
        )

    return grow(UNIT_CHAIN, 0)


def _blocked_end_bit(t: DyadicTile, child, tileable) -> int:
    if not tileable(child(t, 0)):
        return 0
    if not tileable(child(t, 1)):
        return 1
    raise RuntimeError(f"blocked tile {t} with both {child.__name__} children tileable")


@dataclass
class ChainTreeReport:
    ok: bool
    conditions: dict[str, bool]
    violations: list[str] = field(default_factory=list)


def verify_chain_tree(
    tree: ChainTree, cfg: Optional[tileability.AvailabilityConfig] = None
) -> ChainTreeReport:
    """Check the chain-tree conditions, and the blocking conditions when a
    configuration is supplied.

    Always checked: the root is the unit chain, leaves share one depth, each
    level-l node holds an order-l chain (reported as 'structure'); each
    internal node's children are the decomposition of one successor of its
    chain, pairwise separate ('successor'); no two same-level chains share a
    tile ('disjoint'). With cfg: every chain tile is blocked ('blocked'), and
    no bond with a blocked intersection tile is split ('no-blocked-splits').
    """
    violations: list[str] = []
    structure = True
    if tree.chain != UNIT_CHAIN:
        structure = False
        violations.append(f"root chain is {tree.chain}, not the unit chain")
    levels = tree.nodes_by_level()
    depth = len(levels) - 1
    for level, nodes in enumerate(levels):
        for node in nodes:
            if node.chain.order != level:
                structure = False
                violations.append(
                    f"level-{level} node holds an order-{node.chain.order} chain"
                )
            if not node.children and level != depth:
                structure = False
                violations.append(f"leaf at level {level}, but depth is {depth}")

    table = None
    if cfg is not None:
        table = tileability.tileable_table(cfg)
        if depth != cfg.order:
            structure = False
            violations.append(
                f"tree depth {depth} differs from configuration order {cfg.order}"
            )

    def tileable(t: DyadicTile) -> bool:
        assert table is not None
        return bool(table[t.order][tile_index(t).value])

    successor_ok = True
    no_blocked_splits = True
    for nodes in levels[:-1]:
        for node in nodes:
            ok, msg, splits, inter = _match_successor(node)
            if not ok:
                successor_ok = False
                violations.append(msg)
                continue
            if table is not None:
                for m in splits:
                    if not tileable(inter[m]):
                        no_blocked_splits = False
                        violations.append(
                            f"split at bond {m} of {node.chain} despite a "
                            f"blocked intersection {inter[m]}"
                        )

    disjoint = True
    for level, nodes in enumerate(levels):
        seen: dict[DyadicTile, int] = {}
        for idx, node in enumerate(nodes):
            for t in node.chain.tiles():
                if t in seen and seen[t] != idx:
                    disjoint = False
                    violations.append(f"tile {t} shared by two level-{level} chains")
                seen[t] = idx

    conditions = {
        "structure": structure,
        "successor": successor_ok,
        "disjoint": disjoint,
    }
    if table is not None:
        blocked = True
        for nodes in levels:
            for node in nodes:
                for t in node.chain.tiles():
                    if tileable(t):
                        blocked = False
                        violations.append(f"chain tile {t} is tileable")
        conditions["blocked"] = blocked
        conditions["no-blocked-splits"] = no_blocked_splits
    return ChainTreeReport(all(conditions.values()), conditions, violations)


def _match_successor(node: ChainTree):
    """Reconstruct the successor an internal node's children decompose, if any.

    Returns (ok, message, splits, bond intersections).
    """
    chain = node.chain
    u = chain.tiles()
    b = chain.bonds
    inter = [tile_intersection(u[m], u[m + 1]) for m in range(b)]
    child_chains = [c.chain for c in node.children]
    child_sets = [c.tile_set() for c in child_chains]
    for x in range(len(child_chains)):
        for y in range(x + 1, len(child_chains)):
            if not chains_separate(child_chains[x], child_chains[y]):
                return (
                    False,
                    f"children of {chain} are not pairwise separate",
                    None,
                    None,
                )
    s_union: set[DyadicTile] = set()
    for cs in child_sets:
        s_union |= cs

    s_bits = [bit for bit in (0, 1) if _h_child(u[0], bit) in s_union]
    t_bits = [bit for bit in (0, 1) if _v_child(u[-1], bit) in s_union]
    if len(s_bits) != 1 or len(t_bits) != 1:
        return (False, f"children of {chain} do not fix its end children", None, None)
    splits = frozenset(m for m in range(b) if inter[m] not in s_union)
    sc = Successor(chain, splits, s_bits[0], t_bits[0])
    if successor_tiles(sc) != frozenset(s_union):
        return (
            False,
            f"children of {chain} do not assemble one of its successors",
            None,
            None,
        )
    if sorted(map(sorted, (d.tile_set() for d in decompose(sc)))) != sorted(
        map(sorted, child_sets)
    ):
        return (
            False,
            f"children of {chain} regroup successor tiles across chains",
            None,
            None,
        )
    return True, "", splits, inter


# --------------------------------------------------------------------------
# serialization


def chain_to_json_obj(c: Chain) -> dict:
    return {"order": c.order, "core": tile_to_str(c.core)}


def chain_from_json_obj(obj: dict) -> Chain:
    return Chain(int(obj["order"]), tile_from_str(obj["core"]))


def chain_tree_to_json(tree: ChainTree) -> str:
    def enc(node: ChainTree) -> dict:
        return {
            "chain": chain_to_json_obj(node.chain),
            "children": [enc(c) for c in node.children],
        }

    return json.dumps(enc(tree))


def chain_tree_from_json(text: str) -> ChainTree:
    def dec(obj: dict) -> ChainTree:
        return ChainTree(
            chain_from_json_obj(obj["chain"]),
            tuple(dec(c) for c in obj["children"]),
        )

    return dec(json.loads(text))
