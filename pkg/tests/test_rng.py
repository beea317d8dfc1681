import pytest

from partlat.rng import XorShift64Star, splitmix64, substream_seed

import oracles


def test_stream_matches_reference_arithmetic():
    g = XorShift64Star(7)
    state = g.state
    assert [g.next_u64() for _ in range(20)] == oracles.xorshift64star_reference(state, 20)


def test_seeding_is_deterministic_and_nonzero():
    assert XorShift64Star(1).state == XorShift64Star(1).state
    assert XorShift64Star(1).state != XorShift64Star(2).state
    for seed in (0, 2**64 - 1, 123):
        assert XorShift64Star(seed).state != 0


def test_below_range_and_big_bound():
    g = XorShift64Star(3)
    assert all(0 <= g.below(7) < 7 for _ in range(1000))
    big = 10**40 + 7
    assert all(0 <= g.below(big) < big for _ in range(200))
    assert g.below(1) == 0


def test_sample_indices_distinct():
    g = XorShift64Star(5)
    got = g.sample_indices(10**12, 50)
    assert len(set(got)) == 50
    assert sorted(XorShift64Star(5).sample_indices(6, 6)) == list(range(6))
    with pytest.raises(ValueError):
        g.sample_indices(3, 4)


def test_substreams_differ():
    seeds = {substream_seed(9, i) for i in range(1000)}
    assert len(seeds) == 1000
    assert splitmix64(0) != splitmix64(1)


def test_permutation_is_permutation():
    assert sorted(XorShift64Star(11).permutation(30)) == list(range(30))
