"""Random dyadic tilings.

Exact tileability decisions, Monte Carlo estimation of tiling probabilities,
chain and chain-tree combinatorics, rigorous decay-rate certificates in exact
rational and outward-rounded interval arithmetic, and closed-form obstruction
bounds.
"""

__version__ = "0.1.0"

from .tiles import (
    MAX_ORDER,
    UNIT_SQUARE,
    Children,
    DyadicTile,
    Parents,
    TileIndex,
    adjacent,
    children,
    digit_flip_map,
    enumerate_tiles,
    friends,
    interiors_intersect,
    parents,
    tile_count,
    tile_from_index,
    tile_from_str,
    tile_index,
    tile_intersection,
    tile_to_str,
    validate_tile,
)
from .tileability import (
    AvailabilityConfig,
    Tiling,
    bad_cells,
    cell_tiles,
    extract_tiling,
    is_tileable,
    tile_in,
    tileable_table,
    uncovered_cells,
)
from .chains import (
    Chain,
    ChainTree,
    ChainTreeReport,
    Successor,
    UNIT_CHAIN,
    build_principal_chain_tree,
    chain_from_ends,
    chain_tree_from_json,
    chain_tree_to_json,
    chains_separate,
    decompose,
    enumerate_chain_trees,
    enumerate_successors,
    successor_tiles,
    tree_stats,
    verify_chain_tree,
)
from .polynomials import BiPoly, UniPoly
from .intervals import DEFAULT_BITS, MAX_BITS, PrecisionError, RatInterval
from .genfun import (
    DecayCertificate,
    certify_decay,
    certify_optimal,
    dec_digits,
    decay_sequence,
    find_decay_certificate,
    genfun_eval,
    genfun_poly,
    optimal_rate,
    tiling_bound,
    transcript,
    verify_transcript,
)
from .bounds import (
    IterationReport,
    bad_square_prob,
    bad_square_threshold,
    expected_bad,
    expected_uncovered,
    iterate_map,
)
from .exact import (
    brute_force_probability,
    count_tilings,
    enumerate_unit_tilings,
    exact_tiling_poly,
)
from .simulate import (
    Estimate,
    estimate_tiling_probability,
    sample_config,
    sweep,
    to_csv,
    to_json,
    wilson_interval,
)

__all__ = [name for name in dir() if not name.startswith("_")]
