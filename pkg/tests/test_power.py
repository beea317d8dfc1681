import pytest

from partlat import combinatorics as comb
from partlat.errors import InvalidArgument
from partlat.partition import (Partition, PartitionTuple, block_count, bottom, leq, meet, to_canonical,
                               tuple_leq)
from partlat.power import (build_delta_hat, build_gterm, build_hterm, build_theorem1_generators,
                           build_theorem2_generators, certify, certify_theorem1, order_type,
                           theorem1_plan, theorem2_entries, verify_theorem1, verify_theorem2,
                           zigzag)
from partlat.terms import Evaluator
from partlat.zadori import build_config, build_fterm_table


def test_n7_plan():
    quad, plan = build_theorem1_generators(7)
    c = build_config(7)
    assert len(plan) == 3 == comb.m_of_n(7)
    assert plan.U == (c.a(1), c.a(2))
    assert plan.W == (c.b(0), c.b(1), c.b(2))
    assert len(plan.gamma_hat) == 1 and len(plan.eta_hat) == 3
    assert all(len(x) == 3 for x in quad)


def test_plan_invariants_n11():
    plan = theorem1_plan(build_config(11))
    assert len(plan) == 175 == len(set(plan.pairs))
    assert all(block_count(k) == plan.r_u for k, _ in plan.pairs)
    assert all(block_count(l) == plan.r_w for _, l in plan.pairs)
    for i, (k1, l1) in enumerate(plan.pairs[:40]):
        for k2, l2 in plan.pairs[i + 1:40]:
            assert not (leq(k1, k2) and leq(l1, l2))


def test_n9_and_n5_counts():
    assert len(build_theorem1_generators(9)[1]) == 21
    quad, plan = build_theorem1_generators(5)
    c = build_config(5)
    assert len(plan) == 1
    assert leq(c.delta, quad[3][0])


def test_t_bounds():
    with pytest.raises(InvalidArgument) as info:
        build_theorem1_generators(7, 4)
    assert "3" in str(info.value)
    with pytest.raises(InvalidArgument):
        build_theorem1_generators(4)
    assert len(build_theorem1_generators(9, 5)[1]) == 5


def test_large_n_prefix_default():
    quad, plan = build_theorem1_generators(15)
    assert len(plan) == 1000 < comb.m_of_n(15)


def test_delta_hat_trivial_and_overlap():
    c = build_config(9)
    plan = theorem1_plan(c)
    U, W = plan.U, plan.W
    d = build_delta_hat(c, bottom(len(U)), U, bottom(len(W)), W)
    assert d == c.delta
    with pytest.raises(InvalidArgument):
        build_delta_hat(c, bottom(2), (2, 3), bottom(2), (3, 4))


@pytest.mark.parametrize("n", [7, 9])
def test_alpha_delta_hat_restricted(n):
    c = build_config(n)
    plan = theorem1_plan(c)
    for kap, lam in plan.pairs:
        ad = meet(c.alpha, build_delta_hat(c, kap, plan.U, lam, plan.W))
        for S, part in ((plan.U, kap), (plan.W, lam)):
            for i, x in enumerate(S):
                for j, y in enumerate(S):
                    assert ad.related(x, y) == part.related(i + 1, j + 1)


def test_zigzag():
    c = build_config(8)
    assert zigzag(c) == [c.a(0), c.b(0), c.a(1), c.b(1), c.a(2), c.b(2), c.a(3), c.c]
    assert zigzag(build_config(7))[-1] == build_config(7).a(3)


def test_gterm_hterm_pattern_n7():
    c = build_config(7)
    quad, plan = build_theorem1_generators(7)
    table = build_fterm_table(c)
    ev = Evaluator(quad)
    d = zigzag(c)
    for j in range(3):
        ad = meet(quad[0][j], quad[3][j])
        g = build_gterm(c, table, ad)
        for p, term in g.items():
            assert ev.eval(term)[j] == Partition.from_blocks([[d[p], d[p + 1]]], 7)
        for q in range(7):
            val = ev.eval(build_hterm(c, table, g, q))
            for i in range(3):
                expect = [[d[q], d[(q + 1) % 7]]] if i == j else []
                assert val[i] == Partition.from_blocks(expect, 7)
    with pytest.raises(InvalidArgument):
        build_hterm(c, table, g, 7)


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9, 10])
def test_verify_theorem1_small(n):
    cert = verify_theorem1(n)
    assert cert.valid, cert.first_failure()
    t = comb.m_of_n(n)
    assert sum(c.name == "hterm" for c in cert.checks) == t * n


def test_verify_theorem1_mutation_detected():
    quad, _ = build_theorem1_generators(7)
    d = list(quad[3].coords)
    d[1] = d[0]
    mutated = list(quad[:3]) + [PartitionTuple(d)]
    cert = certify_theorem1(7, mutated)
    assert not cert.valid
    failed = {c.name for c in cert.checks if not c.passed}
    assert "separation" in failed and "incomparable" in failed


@pytest.mark.parametrize("n", range(7, 14))
def test_verify_theorem2(n):
    cert = verify_theorem2(n)
    assert cert.valid, cert.first_failure()
    assert len(cert.quadruple[0]) == comb.mhat_of_n(n)
    rel = [r for _, _, r in cert.order_type]
    assert rel.count("incomparable") == 5


def test_theorem2_shapes():
    quad, plan = build_theorem2_generators(7)
    c = build_config(7)
    assert plan.U == (c.a(1),) and plan.W == (c.b(1),)
    assert tuple_leq(quad[3], quad[0])
    assert len(build_theorem2_generators(11)[0][0]) == 2
    assert len(build_theorem2_generators(15)[0][0]) == 9
    with pytest.raises(InvalidArgument):
        build_theorem2_generators(6)
    with pytest.raises(InvalidArgument):
        verify_theorem2(6)


def test_even_theorem2_needs_guarded_entries():
    """Without the guard the n = 8 entry terms leave c attached to an atom."""
    from partlat.terms import variables
    c = build_config(8)
    quad, _ = build_theorem2_generators(8)
    al, be, ga, de = variables(4)
    plain = build_fterm_table(c, g0=be * (ga + de), H0=ga * (be + de), starred=False)
    assert not certify(c, quad, plain).valid
    g0, H0 = theorem2_entries(c)
    assert certify(c, quad, build_fterm_table(c, g0=g0, H0=H0, starred=False)).valid


def test_order_type_theorem1_all_incomparable():
    quad, _ = build_theorem1_generators(9)
    assert all(r == "incomparable" for _, _, r in order_type(quad))
