import numpy as np
import pytest
from hypothesis import given, strategies as st

from stabtime.evolution import BitString, all_bitstrings, stabilization_time
from stabtime.walk import geometric_max_sf, stabilization_time_closed_form, stabilization_times, walk_profile

bit_lists = st.lists(st.integers(0, 1), max_size=120)


def max_tail_by_dp(p, m, length):
    """P(max_{k<=length} W_k >= m) by absorbing the walk at level m."""
    dist = np.zeros(m + length + 2)
    offset = length  # index = level + offset
    dist[offset] = 1.0
    hit = 0.0
    for _ in range(length):
        new = np.zeros_like(dist)
        new[:-1] += p * dist[1:]
        new[1:] += (1 - p) * dist[:-1]
        hit += new[offset + m]
        new[offset + m] = 0.0
        dist = new
    return hit


def test_worked_example_profile():
    prof = walk_profile("01101011")
    assert prof.values == (1, 0, -1, 0, -1, 0, -1, -2)
    assert prof.running_max == 1
    assert prof.ones == 5
    assert stabilization_time_closed_form("01101011") == 5


def test_empty_profile_rejected():
    with pytest.raises(ValueError):
        walk_profile("")


@given(bit_lists)
def test_closed_form_matches_simulation(b):
    s = BitString(tuple(b))
    assert stabilization_time_closed_form(s) == stabilization_time(s)


@given(st.lists(bit_lists.filter(lambda b: len(b) == 30).map(tuple), min_size=1, max_size=20))
def test_batch_matches_scalar(rows):
    got = stabilization_times(np.array(rows, dtype=np.uint8))
    assert got.tolist() == [stabilization_time_closed_form(r) for r in rows]


@pytest.mark.parametrize("n", [1, 5, 10])
def test_batch_exhaustive(n):
    strings = list(all_bitstrings(n))
    got = stabilization_times(np.array([s.bits for s in strings], dtype=np.uint8))
    assert got.tolist() == [stabilization_time(s) for s in strings]


@pytest.mark.parametrize("p", [0.6, 0.75, 0.9])
@pytest.mark.parametrize("m", [0, 1, 3, 6])
def test_geometric_tail_against_absorbing_dp(p, m):
    assert geometric_max_sf(p, m) == pytest.approx(max_tail_by_dp(p, m, 3000) if m else 1.0, abs=1e-10)


def test_geometric_tail_domain():
    with pytest.raises(ValueError):
        geometric_max_sf(0.5, 1)
    with pytest.raises(ValueError):
        geometric_max_sf(0.75, -1)
    assert geometric_max_sf(0.75, 2) == pytest.approx(1 / 9, rel=1e-15)
