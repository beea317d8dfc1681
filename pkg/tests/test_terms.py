import pytest

from partlat.errors import InvalidArgument, ParseError
from partlat.partition import from_canonical, join, make_atom, meet, tuple_from_text
from partlat.rng import XorShift64Star
from partlat.terms import (MEET, JOIN, Evaluator, Monitor, Term, absorption_sites, circle_term,
                           evaluate, join_all, max_variable, meet_all, node_count, occurrences,
                           operation_count, parse_term, random_term, serialize_term, var,
                           variables)


def test_serialize_parse_round_trip():
    for s in ["x1", "(* x4 (+ x5 x1))", "(+ (* x1 x2) (* x3 (+ x1 x4)))"]:
        assert serialize_term(parse_term(s)) == s


def test_nary_folds_left():
    assert serialize_term(parse_term("(+ x1 x2 x3)")) == "(+ (+ x1 x2) x3)"


@pytest.mark.parametrize("bad", ["(", "(* x1)", "(* x1 x2", "x1 x2", "(x1 x2)", "(* x1 y2)", "()", "", "x0"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        parse_term(bad)


def test_parse_arity_bound():
    with pytest.raises(ParseError) as info:
        parse_term("(* x1 x9)", p=8)
    assert info.value.token == "x9"


def test_eval_matches_direct_ops():
    a, b, c = (from_canonical(s) for s in ("1,2|3|4", "1|2,3|4", "1|2|3,4"))
    t = parse_term("(* (+ x1 x2) (+ x2 x3))")
    assert evaluate(t, [a, b, c]) == meet(join(a, b), join(b, c))


def test_eval_on_tuples():
    x = tuple_from_text("1,2|3;1|2|3")
    y = tuple_from_text("1|2,3;1,3|2")
    t = parse_term("(+ x1 x2)")
    assert str(evaluate(t, [x, y])) == "1,2,3;1,3|2"


def test_eval_arity_error():
    with pytest.raises(InvalidArgument):
        evaluate(parse_term("(* x1 x3)"), [from_canonical("1|2")] * 2)


def test_shared_subterms_counted_expanded():
    x1, x2 = variables(2)
    s = x1 * x2
    t = s + s
    assert node_count(t) == 4
    assert occurrences(t) == 4
    assert operation_count(t) == 3
    assert max_variable(t) == 2


def test_deep_terms_do_not_recurse():
    t = var(1)
    for i in range(20000):
        t = Term(MEET if i % 2 else JOIN, t, var(2))
    assert occurrences(t) == 20001
    x = from_canonical("1,2|3")
    y = from_canonical("1|2,3")
    assert evaluate(t, [x, y]) in (x, y, meet(x, y), join(x, y))
    assert len(serialize_term(t)) > 20000


def test_circle_principle_recovers_atoms():
    n = 6
    cycle = [3, 1, 6, 2, 5, 4]
    edges = [make_atom(n, cycle[i], cycle[(i + 1) % n]) for i in range(n)]
    e = variables(n)
    for u in range(n):
        for v in range(u + 1, n):
            t = circle_term(e, u, v)
            assert evaluate(t, edges) == make_atom(n, cycle[u], cycle[v])
    with pytest.raises(InvalidArgument):
        circle_term(e, 3, 3)


def test_meet_join_all():
    a, b, c = variables(3)
    assert serialize_term(meet_all([a, b, c])) == "(* (* x1 x2) x3)"
    assert serialize_term(join_all([a])) == "x1"
    with pytest.raises(InvalidArgument):
        meet_all([])


def test_random_term_size_and_determinism():
    t1 = random_term(8, 1000, XorShift64Star(1))
    t2 = random_term(8, 1000, XorShift64Star(1))
    assert serialize_term(t1) == serialize_term(t2)
    assert operation_count(t1) == 1000 and occurrences(t1) == 1001
    assert not absorption_sites(t1)
    assert serialize_term(random_term(8, 0, XorShift64Star(4))).startswith("x")


def test_random_term_depth_policy_and_log():
    log = []
    t = random_term(4, 200, XorShift64Star(3), policy="depth", construction_log=log)
    assert len(log) == 200 and operation_count(t) == 200
    assert all(e["vars"][0] != e["vars"][1] for e in log)
    with pytest.raises(InvalidArgument):
        random_term(4, 5, XorShift64Star(3), policy="weird")
    with pytest.raises(InvalidArgument):
        random_term(1, 5, XorShift64Star(3))


def test_absorption_scan_many_seeds():
    for seed in range(200):
        assert not absorption_sites(random_term(3, 60, XorShift64Star(seed)))


def test_absorption_detector_finds_pattern():
    assert absorption_sites(parse_term("(* x1 (+ x1 x2))"))
    assert absorption_sites(parse_term("(+ (* x2 x3) x3)"))
    assert not absorption_sites(parse_term("(* x1 (* x1 x2))"))


def test_monitor_keeps_value_away_from_extremes():
    rng = XorShift64Star(8)
    from partlat.partition import random_partition, PartitionTuple
    args = [PartitionTuple([random_partition(9, rng) for _ in range(3)]) for _ in range(6)]
    mon = Monitor(args, D=3)
    t = random_term(6, 300, XorShift64Star(2), monitor=mon)
    assert operation_count(t) == 300
    assert mon.accept(Evaluator(args).raw(t))


def test_evaluator_memo_reuse():
    x = from_canonical("1,2|3")
    ev = Evaluator([x, x])
    t = parse_term("(+ x1 x2)")
    assert ev.eval(t) == x
    assert ev.eval(t) is not None
