"""Vectorized kernels: index tables, bulk tileability, and batch sampling.

Everything here works on flat shape-major index arrays (see tiles.tile_index).
For order k and shape i, the block of indices [i*2^k, (i+1)*2^k) holds the
positions r = a*2^j + b with j = k - i. Child indices then have closed forms:

    horizontal children (shape (i, j+1) at order k+1):  2r and 2r + 1
        since a*2^(j+1) + 2b = 2r,
    vertical children (shape (i+1, j) at order k+1):    r + (a << j) and + 2^j
        since 2a*2^j + b = r + (a << j), and the sibling adds 2^j.

The tileability sweep evaluates, level by level from order n down to 0,

    tileable[k] = (t[h1] & t[h2]) | (t[v1] & t[v2])   over t = tileable[k+1],

which is the recursive characterization of tileability. The same sweep runs
on uint64 lanes, deciding 64 independent configurations per word.

Sampling uses counter-based Philox streams keyed (seed, trial): one byte of
the stream per tile as an 8-bit prefix of a uint64 threshold test, refined
lazily by a further 56 bits only where the prefix ties the threshold's top
byte. For p with at most 8 significant mantissa bits (e.g. 7/8) no refinement
draws are made at all.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import numpy as np

# Full index tables take O(n * 2^n) memory per order; beyond this the gather
# arrays stop fitting in any reasonable RAM long before int32 overflows.
MAX_TABLE_ORDER = 24

_U56 = (1 << 56) - 1


@lru_cache(maxsize=None)
def child_index_tables(n: int) -> tuple:
    """Per order k < n: (h1, h2, v1, v2) int32 arrays of child indices at k+1."""
    if not (0 <= n <= MAX_TABLE_ORDER):
        raise ValueError(f"order must be in [0, {MAX_TABLE_ORDER}]")
    tables = []
    for k in range(n):
        size = (k + 1) << k
        h1 = np.empty(size, dtype=np.int32)
        v1 = np.empty(size, dtype=np.int32)
        for i in range(k + 1):
            j = k - i
            r = np.arange(1 << k, dtype=np.int32)
            blk = slice(i << k, (i + 1) << k)
            h1[blk] = (i << (k + 1)) + 2 * r
            v1[blk] = ((i + 1) << (k + 1)) + r + ((r >> j) << j)
        h2 = h1 + 1
        v2 = v1 + (np.repeat(1 << np.arange(k, -1, -1), 1 << k)).astype(np.int32)
        tables.append((h1, h2, v1, v2))
    return tuple(tables)


def tileable_levels(avail: np.ndarray, n: int) -> list[np.ndarray]:
    """Tileability of every tile of every order, given order-n availability.

    avail: bool array of length (n+1)*2^n, or uint64 array of the same length
    carrying 64 configurations in bit lanes. Returns one array per order
    0..n; entry v of level k decides tile_from_index(k, v).
    """
    if avail.shape[0] != (n + 1) << n:
        raise ValueError("availability array has wrong length for the order")
    levels: list[np.ndarray] = [None] * (n + 1)  # type: ignore[list-item]
    levels[n] = avail
    tables = child_index_tables(n)
    for k in range(n - 1, -1, -1):
        h1, h2, v1, v2 = tables[k]
        t = levels[k + 1]
        levels[k] = (t[h1] & t[h2]) | (t[v1] & t[v2])
    return levels


def pack_lanes(avail_bool: np.ndarray) -> np.ndarray:
    """Pack a (trials, count) bool array into (count,) uint64 bit lanes.

    Trial r occupies bit (63 - r); at most 64 rows, short batches land in the
    high lanes with zero padding below.
    """
    trials, count = avail_bool.shape
    if trials > 64:
        raise ValueError("at most 64 lanes per word")
    if trials < 64:
        pad = np.zeros((64 - trials, count), dtype=bool)
        avail_bool = np.vstack([avail_bool, pad])
    packed = np.packbits(avail_bool, axis=0)  # (8, count), row 0 -> MSB
    return np.ascontiguousarray(packed.T).view(">u8").reshape(count).astype(np.uint64)


def lane_mask(trials: int) -> int:
    """Mask of the high `trials` bit lanes."""
    if not (0 <= trials <= 64):
        raise ValueError("lane count must be in [0, 64]")
    return ((1 << trials) - 1) << (64 - trials) if trials else 0


def bernoulli_threshold(p: Fraction) -> int:
    """T in [0, 2^64] with P(u < T) for uniform u equal to p up to 2^-64.

    Exact whenever p has denominator dividing 2^64; otherwise T = ceil(p*2^64)
    errs by less than one part in 2^64.
    """
    if not (0 <= p <= 1):
        raise ValueError("p must be in [0, 1]")
    num, den = p.numerator, p.denominator
    return -((-num << 64) // den)


def sample_trial_bits(seed: int, trial: int, count: int, threshold: int) -> np.ndarray:
    """Availability bools for one trial's stream of `count` tiles.

    Tile m tests byte m of the trial's little-endian Philox byte stream
    against the top byte of the threshold; ties consume one further 64-bit
    word each, in ascending tile order, testing the low 56 threshold bits.
    """
    if threshold <= 0:
        return np.zeros(count, dtype=bool)
    if threshold >= 1 << 64:
        return np.ones(count, dtype=bool)
    bg = np.random.Philox(key=np.array([seed, trial], dtype=np.uint64))
    words = bg.random_raw((count + 7) // 8)
    u8 = words.astype("<u8").view(np.uint8)[:count]
    hi, lo = threshold >> 56, threshold & _U56
    out = u8 < hi
    if lo:
        ties = u8 == hi
        m = int(ties.sum())
        if m:
            refine = bg.random_raw(m) & _U56
            out[ties] |= refine < lo
    return out


def sample_lane_block(
    seed: int, trial0: int, trials: int, count: int, threshold: int
) -> np.ndarray:
    """Packed uint64 availability for trials [trial0, trial0+trials)."""
    rows = np.empty((trials, count), dtype=bool)
    for r in range(trials):
        rows[r] = sample_trial_bits(seed, trial0 + r, count, threshold)
    return pack_lanes(rows)


def count_tileable_roots(
    n: int, threshold: int, seed: int, trials: int, trial0: int = 0
) -> int:
    """Number of trials among [trial0, trial0+trials) whose sampled order-n
    configuration tiles the unit square."""
    count = (n + 1) << n
    successes = 0
    done = 0
    while done < trials:
        b = min(64, trials - done)
        packed = sample_lane_block(seed, trial0 + done, b, count, threshold)
        root = int(tileable_levels(packed, n)[0][0])
        successes += (root & lane_mask(b)).bit_count()
        done += b
    return successes


def digit_flip_permutation(n: int, axis: str, k: int) -> np.ndarray:
    """Index permutation of order-n tiles induced by a coordinate digit flip."""
    if axis not in ("x", "y"):
        raise ValueError(f"axis must be 'x' or 'y', got {axis!r}")
    if k < 1:
        raise ValueError("digit position must be >= 1")
    perm = np.arange((n + 1) << n, dtype=np.int64)
    for i in range(n + 1):
        j = n - i
        exp = i if axis == "x" else j
        if k > exp:
            continue
        r = np.arange(1 << n, dtype=np.int64)
        # flipping digit k of a toggles bit (i-k) of a, i.e. bit (i-k+j) of r;
        # for axis 'y' it toggles bit (j-k) of r directly.
        bit = (i - k + j) if axis == "x" else (j - k)
        perm[(i << n) + r] = (i << n) + (r ^ (1 << bit))
    return perm
