from fractions import Fraction
from itertools import combinations

import pytest

from dyadic_tilings.exact import (
    brute_force_probability,
    count_tilings,
    enumerate_unit_tilings,
    exact_tiling_poly,
)
from dyadic_tilings.tiles import UNIT_SQUARE, tile_count, interiors_intersect, tile_to_str
from dyadic_tilings.tileability import tile_in

F = Fraction

RATIONAL_GRID = [F(k, 21) for k in range(22)]


def test_polynomial_strings_frozen():
    assert str(exact_tiling_poly(0)) == "p"
    assert str(exact_tiling_poly(1)) == "2p^2-p^4"
    assert (
        str(exact_tiling_poly(2))
        == "7p^4-8p^6-4p^7+p^8+8p^9-4p^11+p^12"
    )


def test_polynomial_degree_and_boundary_values():
    for n in (0, 1, 2):
        poly = exact_tiling_poly(n)
        assert poly.degree == tile_count(n)
        assert poly(0) == 0
        assert poly(1) == 1


def test_lowest_term_counts_tilings():
    for n in (0, 1, 2):
        poly = exact_tiling_poly(n)
        low = 1 << n  # a tiling uses exactly 2^n tiles
        assert all(c == 0 for c in poly.coeffs[:low])
        assert poly.coeffs[low] == count_tilings(n)


def test_exact_poly_out_of_range():
    with pytest.raises(ValueError):
        exact_tiling_poly(3)
    with pytest.raises(ValueError):
        exact_tiling_poly(-1)


def test_brute_force_agreement():
    """Two independent routes to T_n: subset masks and recursive decision."""
    for n in (0, 1, 2):
        poly = exact_tiling_poly(n)
        for p in RATIONAL_GRID:
            assert brute_force_probability(n, p) == poly(p)


def test_probability_monotone_in_p():
    poly = exact_tiling_poly(2)
    vals = [poly(p) for p in RATIONAL_GRID]
    assert all(a <= b for a, b in zip(vals, vals[1:]))
    assert vals[0] == 0 and vals[-1] == 1


def test_count_tilings_sequence():
    assert [count_tilings(n) for n in range(4)] == [1, 2, 7, 82]


def test_count_tilings_matches_enumeration():
    for n in range(4):
        assert len(enumerate_unit_tilings(n)) == count_tilings(n)


def test_enumerated_tilings_are_valid_and_distinct():
    for n in (1, 2, 3):
        seen = set()
        for tiling in enumerate_unit_tilings(n):
            assert tiling not in seen
            seen.add(tiling)
            assert len(tiling) == 1 << n
            for t in tiling:
                assert t.order == n
                assert tile_in(t, UNIT_SQUARE)
            for a, b in combinations(tiling, 2):
                assert not interiors_intersect(a, b)


def test_enumeration_deterministic_order():
    once = enumerate_unit_tilings(2)
    again = enumerate_unit_tilings(2)
    assert once == again
    as_keys = [sorted(map(tile_to_str, tiling)) for tiling in once]
    assert as_keys == sorted(as_keys)


def test_count_tilings_large_order_and_caps():
    value = count_tilings(20)
    assert value > 10**100  # grows doubly exponentially
    with pytest.raises(ValueError):
        count_tilings(21)
    with pytest.raises(ValueError):
        enumerate_unit_tilings(4)


def test_brute_force_rejects_bad_input():
    with pytest.raises(ValueError):
        brute_force_probability(1, F(3, 2))
    with pytest.raises(ValueError):
        brute_force_probability(-1, F(1, 2))
