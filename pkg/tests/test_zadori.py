import pytest

from partlat.errors import InvalidArgument
from partlat.partition import bottom, from_canonical, join, make_atom, meet, to_canonical
from partlat.terms import Evaluator, evaluate, parse_term, variables
from partlat.zadori import (build_config, build_fterm_table, delta_entry_nodes, vertex_map,
                            verify_lemma)

import oracles


def test_vertex_map():
    vm = vertex_map(8)
    assert vm["a0"] == 1 and vm["a3"] == 4
    assert vm["b0"] == 5 and vm["b2"] == 7
    assert vm["c"] == 8


def test_n5_configuration():
    c = build_config(5)
    assert [to_canonical(x) for x in c.quadruple] == [
        "1,2,3|4,5", "1,4|2,5|3", "1|2,4|3,5", "1,4|2|3,5"]


def test_n8_configuration_gamma_edge_at_b1():
    c = build_config(8)
    assert to_canonical(c.gamma) == "1|2,5|3,6,8|4,7"
    assert c.gamma.related(c.c, c.b(1))


def test_precondition():
    with pytest.raises(InvalidArgument):
        build_config(4)


@pytest.mark.parametrize("n", range(5, 14))
def test_verify_lemma(n):
    cert = verify_lemma(n)
    assert cert.valid
    assert len(cert.checks) == n * (n - 1) // 2


def test_beta_delta_is_edge_atom():
    c = build_config(5)
    assert meet(c.beta, c.delta) == make_atom(5, c.a(0), c.b(0))
    assert to_canonical(evaluate(parse_term("(* x2 x4)"), c.quadruple)) == "1,4|2|3|5"


@pytest.mark.parametrize("n", [8, 10, 12])
def test_gamma_edge_at_b2_breaks_even_case(n):
    """Attaching c to b2 (instead of b1) makes the c-terms collapse."""
    c = build_config(n)
    gamma = from_canonical(to_canonical(c.gamma))
    k = c.k
    # move c from the b1-block to the b2-block
    blocks = [set(b) for b in gamma.blocks()]
    for b in blocks:
        b.discard(c.c)
    for b in blocks:
        if c.b(2) in b:
            b.add(c.c)
    blocks = [sorted(b) for b in blocks if b]
    from partlat.partition import Partition
    alt = c.__class__(c.n, k, c.vertex, c.alpha, c.beta, Partition.from_blocks(blocks, n), c.delta)
    assert not verify_lemma(n, config=alt).valid


@pytest.mark.parametrize("n", [5, 6, 7, 8, 9])
def test_delta_substitution_invariance(n):
    """Replacing delta by any partition with the same meets with beta and gamma keeps every atom."""
    c = build_config(n)
    table = build_fterm_table(c)
    extra = join(c.delta, make_atom(n, c.a(1), c.a(2))) if n >= 7 else c.delta
    for other in (c.delta, extra):
        if meet(c.beta, other) != meet(c.beta, c.delta) or meet(c.gamma, other) != meet(c.gamma, c.delta):
            continue
        ev = Evaluator([c.alpha, c.beta, c.gamma, other])
        for (u, v), t in table.items():
            assert ev.eval(t) == make_atom(n, u, v)


def test_delta_only_enters_through_entries():
    table = build_fterm_table(build_config(9))
    assert delta_entry_nodes(table)


def test_closure_oracle_n5():
    c = build_config(5)
    gens = [oracles.blocks_to_pairs(x.blocks()) for x in c.quadruple]
    assert len(oracles.brute_closure(gens, 5)) == 52
