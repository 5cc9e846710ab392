from fractions import Fraction
from itertools import product

import numpy as np
import pytest

from dyadic_tilings.bounds import (
    MAP_NAMES,
    VERDICT_DECAYS,
    VERDICT_STAYS,
    bad_square_prob,
    bad_square_threshold,
    expected_bad,
    expected_uncovered,
    iterate_map,
)
from dyadic_tilings.tileability import (
    AvailabilityConfig,
    bad_cells,
    uncovered_cells,
)
from dyadic_tilings.tiles import tile_count

F = Fraction


def exact_expectation(n, p, cell_counter):
    """E[#cells] by enumerating every configuration with its probability."""
    m = tile_count(n)
    total = F(0)
    for mask in range(1 << m):
        bits = np.array([(mask >> b) & 1 for b in range(m)], dtype=bool)
        k = int(bits.sum())
        weight = p**k * (1 - p) ** (m - k)
        total += weight * len(cell_counter(AvailabilityConfig(n, bits)))
    return total


def test_expected_uncovered_formula():
    assert expected_uncovered(0, F(1, 3)) == F(2, 3)
    assert expected_uncovered(2, F(1, 2)) == 2
    for n in (1, 2):
        for p in (F(1, 2), F(2, 3)):
            assert exact_expectation(n, p, uncovered_cells) == expected_uncovered(n, p)


def test_expected_bad_formula():
    assert bad_square_prob(1, F(9, 10)) == F(361, 10000)
    for n in (1, 2):
        for p in (F(1, 2), F(3, 4)):
            assert exact_expectation(n, p, bad_cells) == expected_bad(n, p)


def test_bad_square_prob_validation():
    with pytest.raises(ValueError):
        bad_square_prob(0, F(1, 2))
    with pytest.raises(ValueError):
        bad_square_prob(1, F(3, 2))


def test_expected_uncovered_vanishes_only_above_three_quarters():
    # 4(1-p) crosses 1 at p = 3/4
    assert expected_uncovered(8, F(6, 10)) > expected_uncovered(4, F(6, 10)) > 1
    assert expected_uncovered(8, F(8, 10)) < expected_uncovered(4, F(8, 10)) < 1


def test_bad_square_threshold():
    t = bad_square_threshold(F(1, 10**9))
    assert abs(float(t) - 0.785996) < 1e-5

    def g(p):
        return (1 - p) + p * (1 - p) ** 2

    eps = F(1, 10**6)
    assert g(t - eps) > F(1, 4) > g(t + eps)
    # the expected bad count indeed flips direction across the threshold
    below, above = t - F(1, 100), t + F(1, 100)
    assert expected_bad(20, below) > expected_bad(10, below)
    assert expected_bad(20, above) < expected_bad(10, above)
    with pytest.raises(ValueError):
        bad_square_threshold(0)


def test_trivial_map():
    r = iterate_map("trivial", F(49, 100))
    assert r.verdict == VERDICT_DECAYS
    assert iterate_map("trivial", F(1, 2)).verdict == VERDICT_STAYS
    assert iterate_map("trivial", F(51, 100)).verdict == VERDICT_STAYS
    assert r.trajectory[:3] == (F(49, 100), F(2401, 5000), F(5764801, 12500000))
    # verdicts reflect the actual orbit
    assert r.trajectory[-1] < F(1, 1000)
    up = iterate_map("trivial", F(51, 100))
    assert up.trajectory[-1] > 1


def test_fkg_map():
    assert iterate_map("fkg", F(61, 100)).verdict == VERDICT_DECAYS
    assert iterate_map("fkg", F(62, 100)).verdict == VERDICT_STAYS
    assert iterate_map("fkg", 1).verdict == VERDICT_STAYS
    assert iterate_map("fkg", 1).trajectory[-1] == 1  # fixed point
    # the verdicts match float dynamics across the golden-ratio boundary
    for s, limit in ((0.61, 0.0), (0.62, 1.0)):
        x = s
        for _ in range(200):
            x = 2 * x * x - x**4
        assert abs(x - limit) < 1e-9
    with pytest.raises(ValueError):
        iterate_map("fkg", F(11, 10))


def test_dim3_map():
    assert iterate_map("dim3", F(1, 4), p=F(1, 8)).verdict == VERDICT_DECAYS
    assert iterate_map("dim3", F(3, 10), p=F(1, 8)).verdict == VERDICT_STAYS
    assert iterate_map("dim3", F(1, 5), p=F(1, 8)).verdict == VERDICT_DECAYS
    # p beyond 1/8: no fixed point at all
    assert iterate_map("dim3", F(1, 10), p=F(13, 100)).verdict == VERDICT_STAYS
    # p = 1/10: fixed points near 0.138 and 0.362
    assert iterate_map("dim3", F(3, 10), p=F(1, 10)).verdict == VERDICT_DECAYS
    assert iterate_map("dim3", F(1, 2), p=F(1, 10)).verdict == VERDICT_STAYS
    assert iterate_map("dim3", F(1, 20), p=F(1, 10)).verdict == VERDICT_DECAYS
    # orbit checks: decaying orbits stay bounded by the larger fixed point
    dec = iterate_map("dim3", F(3, 10), p=F(1, 10), steps=20)
    assert all(x <= F(1, 2) for x in dec.trajectory)
    stay = iterate_map("dim3", F(1, 2), p=F(1, 10), steps=10)
    assert stay.trajectory[-1] > 100


def test_map_argument_validation():
    with pytest.raises(ValueError):
        iterate_map("cubic", F(1, 2))
    with pytest.raises(ValueError):
        iterate_map("dim3", F(1, 4))  # missing p
    with pytest.raises(ValueError):
        iterate_map("trivial", F(1, 4), p=F(1, 8))
    with pytest.raises(ValueError):
        iterate_map("trivial", F(-1, 4))
    with pytest.raises(ValueError):
        iterate_map("trivial", F(1, 4), steps=-1)
    assert MAP_NAMES == ("trivial", "fkg", "dim3")


def test_trajectory_is_exact_orbit():
    r = iterate_map("dim3", F(2, 7), p=F(1, 9), steps=8)
    x = F(2, 7)
    for recorded in r.trajectory:
        assert recorded == x
        x = F(1, 9) + 2 * x * x
    assert r.steps == 8


def test_trajectory_bit_cap():
    # squaring doubles the representation size; the trajectory stops early
    # but the report still states the requested verdict
    r = iterate_map("trivial", F(1, 3), steps=40)
    assert r.verdict == VERDICT_DECAYS
    assert r.steps < 40
    assert len(r.trajectory) == r.steps + 1
    for a, b in zip(r.trajectory, r.trajectory[1:]):
        assert b == 2 * a * a
