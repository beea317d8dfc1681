import pytest

from partlat import kernels
from partlat.combinatorics import bell
from partlat.errors import InvalidArgument, ShapeError
from partlat.genset import (closure, draw_subset, is_generating, sample_generating_fraction)
from partlat.partition import (PartitionTuple, bottom, from_canonical, make_atom, random_partition,
                               tuple_from_text)
from partlat.power import build_theorem1_generators
from partlat.rng import XorShift64Star
from partlat.zadori import build_config

import oracles


@pytest.mark.parametrize("n,size", [(5, 52), (6, 203), (7, 877)])
def test_full_closure_of_configuration(n, size):
    res = closure(build_config(n).quadruple, early_exit=False)
    assert res.closure_size == size == bell(n)
    assert res.generating and res.atoms_covered == n * (n - 1) // 2


def test_bottom_alone():
    res = closure([bottom(4)], early_exit=False)
    assert res.closure_size == 1 and not res.generating


def test_atoms_generate():
    atoms = [make_atom(4, u, v) for u in range(1, 5) for v in range(u + 1, 5)]
    assert is_generating(atoms)


def test_theorem1_n6_generates():
    quad, _ = build_theorem1_generators(6)
    assert is_generating(quad, "P6^1")


def test_shape_checks():
    with pytest.raises(ShapeError):
        closure([bottom(3), bottom(4)])
    with pytest.raises(InvalidArgument):
        closure([])
    with pytest.raises(ShapeError):
        is_generating([bottom(3)], "P4^1")


def test_limit_hit_reported():
    res = closure(build_config(7).quadruple, limit=100, early_exit=False)
    assert res.limit_hit and res.closure_size is None
    with pytest.raises(InvalidArgument):
        is_generating([make_atom(7, 1, 2), make_atom(7, 2, 3), make_atom(7, 4, 5)], limit=2)


def test_three_elements_never_generate_part5():
    rng = XorShift64Star(77)
    for _ in range(1000):
        gens = draw_subset(5, 3, rng.next_u64(), 0)
        assert not closure(gens).generating


def test_early_exit_agrees_with_full_closure():
    for s in range(500):
        gens = draw_subset(5, 4, 99, s)
        fast = closure(gens)
        full = closure(gens, early_exit=False)
        assert fast.generating == full.generating == (full.closure_size == 52)


def test_closure_agrees_with_brute_force():
    for s in range(30):
        gens = draw_subset(4, 3, 5, s)
        pairs = [oracles.blocks_to_pairs(g.blocks()) for g in gens]
        assert closure(gens, early_exit=False).closure_size == len(oracles.brute_closure(pairs, 4))


def test_closure_is_closed():
    gens = draw_subset(6, 3, 1, 0)
    elements = closure(gens, early_exit=False, keep=True).elements
    ids = {e.ids for e in elements}
    rng = XorShift64Star(4)
    for _ in range(1000):
        a = elements[rng.below(len(elements))].ids
        b = elements[rng.below(len(elements))].ids
        assert kernels.tuple_meet(a, b) in ids and kernels.tuple_join(a, b) in ids


def test_tuple_closure_atoms():
    two = [tuple_from_text(s) for s in ("1,2|3;1|2|3", "1|2,3;1|2|3", "1|2|3;1,2|3", "1|2|3;1|2,3")]
    res = closure(two, early_exit=False)
    # two atoms of Part(3) only give a four-element square per coordinate
    assert not res.generating and res.closure_size == 16
    six = two + [tuple_from_text("1,3|2;1|2|3"), tuple_from_text("1|2|3;1,3|2")]
    res = closure(six, early_exit=False)
    assert res.generating and res.closure_size == 25


def test_sample_reproducible_and_worker_independent():
    a = sample_generating_fraction(4, 8, 300, seed=3)
    b = sample_generating_fraction(4, 8, 300, seed=3)
    c = sample_generating_fraction(4, 8, 300, seed=3, workers=2)
    assert a.found == b.found == c.found
    assert 0 <= a.found <= 300


def test_draw_subset_distinct():
    for s in range(50):
        got = draw_subset(4, 15, 1, s)
        assert len(set(got)) == 15


def test_sample_errors():
    with pytest.raises(InvalidArgument):
        sample_generating_fraction(3, 6, 10, 0)
    with pytest.raises(InvalidArgument):
        sample_generating_fraction(4, 0, 10, 0)
