"""Four-element generating sets of direct powers ``Part(n)^t``.

Antichain construction: every coordinate carries the Zadori
``alpha, beta, gamma``; coordinate ``j`` carries ``delta_hat_j``, the
equivalence generated by ``delta`` and one member ``(kappa_j, lambda_j)`` of
an antichain of ``Equ(U) x Equ(W)``.  The certificate evaluates explicit
terms: per-coordinate edge terms (``gterm``) and atom-vector terms
(``hterm``) whose value is the atom ``equ(d_q, d_{q+1})`` in coordinate ``j``
and bottom elsewhere.

The (1+1+2) variant uses ``delta = equ(a0,ak) + equ(b0,b(k-1))`` and smaller
carrier sets, so that ``delta_hat <= alpha`` holds in every coordinate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from . import combinatorics as comb
from .errors import InvalidArgument
from .partition import (LatticeShape, Partition, PartitionTuple, bottom, join,
                        leq, lift, make_atom, meet, top,
                        enumerate_r_block_partitions, tuple_leq)
from .terms import Evaluator, Term, join_all, meet_all, variables
from .zadori import (GeneratorCertificate, build_config, build_fterm_table)

LARGE_N = 15
DEFAULT_PREFIX = 1000


@dataclass
class AntichainPlan:
    U: tuple
    W: tuple
    r_u: int
    r_w: int
    pairs: list = field(repr=False)

    def __len__(self):
        return len(self.pairs)

    @property
    def gamma_hat(self):
        return sorted({k for k, _ in self.pairs}, key=str)

    @property
    def eta_hat(self):
        return sorted({l for _, l in self.pairs}, key=str)


def zigzag(config):
    """Cycle ``d_0..d_{n-1}``: ``d_2i = a_i``, ``d_2i+1 = b_i``, ``d_2k = a_k``, then ``c``."""
    k = config.k
    d = []
    for i in range(k):
        d += [config.a(i), config.b(i)]
    d.append(config.a(k))
    if config.even:
        d.append(config.c)
    return d


def straight_edges(config):
    return range(2 * config.k)


def stirling_antichain(S, count=None):
    """All partitions of ``S`` with the smallest Stirling-maximal block count."""
    r = comb.best_block_count(len(S))
    return r, enumerate_r_block_partitions(S, r)


def theorem1_plan(config, t=None):
    k = config.k
    U = tuple(config.a(i) for i in range(1, k))
    W = tuple(config.b(i) for i in range(k))
    ru, gam = stirling_antichain(U)
    rw, eta = stirling_antichain(W)
    m = len(gam) * len(eta)
    if t is None:
        t = m
    if not 1 <= t <= m:
        raise InvalidArgument(f"t={t} outside 1..m(n)={m}")
    pairs = []
    for pair in product(gam, eta):
        pairs.append(pair)
        if len(pairs) == t:
            break
    return AntichainPlan(U, W, ru, rw, pairs)


def build_delta_hat(config, kappa, U, lam, W, delta=None):
    """Equivalence generated by ``delta``, ``kappa`` (on ``U``), ``lam`` (on ``W``)."""
    if set(U) & set(W):
        raise InvalidArgument("U and W overlap")
    n = config.n
    delta = config.delta if delta is None else delta
    return join(join(delta, lift(kappa, U, n)), lift(lam, W, n))


def _check_exponent(n, t, m, allow_large):
    if t is None:
        if n >= LARGE_N and not allow_large:
            return min(m, DEFAULT_PREFIX)
        return m
    if t > m:
        raise InvalidArgument(f"t={t} exceeds m(n)={m} for n={n}")
    if t < 1:
        raise InvalidArgument("t must be positive")
    return t


def build_theorem1_generators(n, t=None, allow_large=False):
    """``(quadruple, plan)`` generating ``Part(n)^t`` with ``t <= m(n)``.

    Without ``allow_large`` and for ``n >= 15`` the default exponent is the
    prefix ``min(m(n), 1000)``.
    """
    if n < 5:
        raise InvalidArgument(f"the single-antichain construction needs n >= 5, got {n}")
    t = _check_exponent(n, t, comb.m_of_n(n), allow_large)
    config = build_config(n)
    plan = theorem1_plan(config, t)
    return _quadruple(config, plan, config.delta), plan


def _quadruple(config, plan, delta):
    t = len(plan)
    deltas = [build_delta_hat(config, kap, plan.U, lam, plan.W, delta).ids
              for kap, lam in plan.pairs]
    al, be, ga = config.alpha.ids, config.beta.ids, config.gamma.ids
    return (PartitionTuple._from_ids((al,) * t), PartitionTuple._from_ids((be,) * t),
            PartitionTuple._from_ids((ga,) * t), PartitionTuple._from_ids(tuple(deltas)))


# -- proof terms --------------------------------------------------------------

def build_gterm(config, table, alpha_deltahat):
    """``{p: gterm}`` for the straight zigzag edges, given ``alpha * delta_hat_j``."""
    d = zigzag(config)
    ad = _alpha_delta_term()
    out = {}
    for p in straight_edges(config):
        u, v = d[p], d[p + 1]
        factors = [table(u, v)]
        for x in alpha_deltahat.block_of(u):
            if x != u:
                factors.append(ad + table(x, v))
        for y in alpha_deltahat.block_of(v):
            if y != v:
                factors.append(table(u, y) + ad)
        out[p] = meet_all(factors)
    return out


_AD = {}


def _alpha_delta_term():
    # one shared node so every gterm reuses its value
    if "t" not in _AD:
        x = variables(4)
        _AD["t"] = x[0] * x[3]
    return _AD["t"]


def build_hterm(config, table, gterms, q):
    """Term whose value is ``equ(d_q, d_q+1)`` in its own coordinate, bottom elsewhere."""
    n = config.n
    if not 0 <= q <= n - 1:
        raise InvalidArgument(f"cycle position {q} outside 0..{n - 1}")
    d = zigzag(config)
    dq, dq1 = d[q], d[(q + 1) % n]
    factors = [table(dq, dq1)]
    for p in straight_edges(config):
        factors.append(join_all([table(dq, d[p]), gterms[p], table(d[p + 1], dq1)]))
    for p in straight_edges(config):
        factors.append(join_all([table(dq, d[p + 1]), gterms[p], table(d[p], dq1)]))
    return meet_all(factors)


# -- certificates -------------------------------------------------------------

def _coordinate_alpha_delta(config, quadruple):
    al = quadruple[0]
    de = quadruple[3]
    return [meet(al[i], de[i]) for i in range(len(de))]


def certify(config, quadruple, table, extra_checks=None):
    """Run the term certificate for ``quadruple`` over ``Z(n)^t``.

    Checks, in order: pairwise incomparability of ``alpha * delta_hat_i``;
    every f-term gives its atom in every coordinate; gterms give their edge
    atom in their own coordinate; every other coordinate has a separating
    straight edge whose gterm vanishes there; the full hterm matrix; and the
    atom vectors of each coordinate recover all its atoms by the circle
    principle.  Failures are recorded, never raised.
    """
    n = config.n
    t = len(quadruple[0])
    shape = LatticeShape(n, t)
    cert = GeneratorCertificate(shape, quadruple)
    bot = tuple(range(n))
    d = zigzag(config)

    ads = _coordinate_alpha_delta(config, quadruple)
    for i in range(t):
        for j in range(i + 1, t):
            ok = not leq(ads[i], ads[j]) and not leq(ads[j], ads[i])
            cert.add("incomparable", (i + 1, j + 1), ok)

    base = Evaluator(quadruple)
    if extra_checks is not None:
        extra_checks(cert, base)
    for (u, v), term in table.items():
        atom = make_atom(n, u, v).ids
        got = base.raw(term)
        cert.add("fterm", (u, v), all(c == atom for c in got))

    for j in range(t):
        ev = _fork(base)
        gterms = build_gterm(config, table, ads[j])
        separated = [False] * t
        separated[j] = True
        for p, term in gterms.items():
            got = ev.raw(term)
            cert.add("gterm_diag", (j + 1, p), got[j] == make_atom(n, d[p], d[p + 1]).ids)
            for i in range(t):
                if got[i] == bot:
                    separated[i] = True
        for i in range(t):
            if i != j:
                cert.add("separation", (i + 1, j + 1), separated[i])
        diag = []
        for q in range(n):
            got = ev.raw(build_hterm(config, table, gterms, q))
            atom = make_atom(n, d[q], d[(q + 1) % n]).ids
            ok = got[j] == atom and all(got[i] == bot for i in range(t) if i != j)
            cert.add("hterm", (j + 1, q), ok)
            diag.append(Partition._from_ids(got[j]))
        cert.add("circle_cover", (j + 1,), _circle_cover(n, d, diag))
    return cert


def _fork(base):
    ev = Evaluator.__new__(Evaluator)
    ev.__dict__.update(base.__dict__)
    ev.memo = dict(base.memo)
    ev._keep = list(base._keep)
    return ev


def _circle_cover(n, d, edge_values):
    """Meets of opposite arc joins of the cycle values give every atom."""
    for u in range(n):
        for v in range(u + 1, n):
            first = edge_values[u]
            for x in edge_values[u + 1:v]:
                first = join(first, x)
            rest = edge_values[v:] + edge_values[:u]
            second = rest[0]
            for x in rest[1:]:
                second = join(second, x)
            if meet(first, second) != make_atom(n, d[u], d[v]):
                return False
    return True


def verify_theorem1(n, t=None, allow_large=False):
    quadruple, plan = build_theorem1_generators(n, t, allow_large)
    config = build_config(n)
    cert = certify(config, quadruple, build_fterm_table(config))
    cert.order_type = order_type(quadruple)
    return cert


def certify_theorem1(n, quadruple):
    """Certificate for an externally supplied antichain-construction quadruple."""
    config = build_config(n)
    cert = certify(config, quadruple, build_fterm_table(config))
    cert.order_type = order_type(quadruple)
    return cert


# -- (1+1+2) generation ---------------------------------------------------------

def theorem2_delta(config):
    k = config.k
    n = config.n
    return join(make_atom(n, config.a(0), config.a(k)), make_atom(n, config.b(0), config.b(k - 1)))


def theorem2_plan(config):
    k = config.k
    U = tuple(config.a(i) for i in range(1, k - 1) if i % 2 == 1)
    W = tuple(config.b(i) for i in range(1, k - 1) if i % 2 == 1)
    r = len(U)
    if r == 2:
        pairs = [(bottom(2), top(2)), (top(2), bottom(2))]
        return AntichainPlan(U, W, 0, 0, pairs)
    ru, gam = stirling_antichain(U)
    rw, eta = stirling_antichain(W)
    return AntichainPlan(U, W, ru, rw, list(product(gam, eta)))


def build_theorem2_generators(n):
    """``(quadruple, plan)`` of order type 1+1+2 generating ``Part(n)^mhat(n)``."""
    if n < 7:
        raise InvalidArgument(f"the (1+1+2) construction needs n >= 7, got {n}")
    config = build_config(n)
    plan = theorem2_plan(config)
    return _quadruple(config, plan, theorem2_delta(config)), plan


def theorem2_entries(config):
    """Entry terms replacing ``beta*delta`` and ``gamma*delta``.

    ``beta(gamma+delta)`` and ``gamma(beta+delta)``; for even ``n`` each is
    additionally met with ``alpha`` joined with the other one, which removes
    ``c`` from a block it may share (it does for ``n = 8``) and is inert
    otherwise.
    """
    al, be, ga, de = variables(4)
    g0 = be * (ga + de)
    H0 = ga * (be + de)
    if config.even:
        return g0 * (al + H0), H0 * (al + g0)
    return g0, H0


def theorem2_table(config):
    g0, H0 = theorem2_entries(config)
    return build_fterm_table(config, g0=g0, H0=H0, starred=False)


def verify_theorem2(n):
    if n < 7:
        raise InvalidArgument(f"the (1+1+2) construction needs n >= 7, got {n}")
    config = build_config(n)
    quadruple, plan = build_theorem2_generators(n)
    g0, H0 = theorem2_entries(config)
    k = config.k

    def entries(cert, ev):
        a0b0 = make_atom(n, config.a(0), config.b(0)).ids
        akbk = make_atom(n, config.a(k), config.b(k - 1)).ids
        got_g = ev.raw(g0)
        got_h = ev.raw(H0)
        for j in range(len(plan)):
            cert.add("entry_a0b0", (j + 1,), got_g[j] == a0b0)
            cert.add("entry_akbk1", (j + 1,), got_h[j] == akbk)
        # blocks of delta-bar = delta + U^2 + W^2, only meaningful for odd n
        if not config.even:
            dbar = join(join(theorem2_delta(config), _full(n, plan.U)), _full(n, plan.W))
            cert.add("dbar_a0b0", (), meet(config.beta, join(config.gamma, dbar)) == Partition._from_ids(a0b0))
            cert.add("dbar_akbk1", (), meet(config.gamma, join(config.beta, dbar)) == Partition._from_ids(akbk))

    cert = certify(config, quadruple, theorem2_table(config), extra_checks=entries)
    cert.order_type = order_type(quadruple)
    comparable = [(x, y) for x, y, rel in cert.order_type if rel != "incomparable"]
    ok = [(x, y, rel) for x, y, rel in cert.order_type if rel != "incomparable"] == [(3, 0, "<=")]
    cert.add("order_type_1+1+2", (), ok, f"comparable pairs: {comparable}")
    return cert


def _full(n, S):
    S = list(S)
    if len(S) < 2:
        return bottom(n)
    return Partition.from_blocks([S], n)


GEN_NAMES = ("alpha", "beta", "gamma", "delta_hat")


def order_type(quadruple):
    """``[(i, j, relation)]`` for the six unordered pairs of generators."""
    out = []
    for i in range(4):
        for j in range(i):
            x, y = quadruple[i], quadruple[j]
            le = tuple_leq(x, y)
            ge = tuple_leq(y, x)
            rel = "=" if le and ge else "<=" if le else ">=" if ge else "incomparable"
            out.append((i, j, rel))
    return out
