"""Zadori configurations and the term tables that certify they generate.

Vertices of ``Z(n)`` are named ``a0..ak``, ``b0..b(k-1)`` and, for even
``n``, ``c``; with ``k = (n - 1) // 2`` they map to integers by
``a_i -> i + 1``, ``b_i -> k + 2 + i``, ``c -> n``.

For every pair of vertices an *f-term* over the variables
``(alpha, beta, gamma, delta) = (x1, x2, x3, x4)`` evaluates to the atom of
that pair at the configuration, which proves generation because ``Equ(n)``
is atomistic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .errors import InvalidArgument
from .partition import Partition, bottom, join, make_atom, meet
from .terms import Evaluator, Term, circle_term, meet_all, postorder, variables


@dataclass(frozen=True)
class ZadoriConfig:
    n: int
    k: int
    vertex: dict = field(repr=False)
    alpha: Partition
    beta: Partition
    gamma: Partition
    delta: Partition

    @property
    def even(self):
        return self.n % 2 == 0

    def a(self, i):
        return self.vertex[f"a{i}"]

    def b(self, i):
        return self.vertex[f"b{i}"]

    @property
    def c(self):
        return self.vertex["c"] if self.even else None

    def name(self, v):
        for key, value in self.vertex.items():
            if value == v:
                return key
        raise KeyError(v)

    @property
    def quadruple(self):
        return (self.alpha, self.beta, self.gamma, self.delta)


def vertex_map(n):
    k = (n - 1) // 2
    vm = {f"a{i}": i + 1 for i in range(k + 1)}
    vm.update({f"b{i}": k + 2 + i for i in range(k)})
    if n % 2 == 0:
        vm["c"] = n
    return vm


def _from_edges(n, edges):
    part = bottom(n)
    for u, v in edges:
        part = join(part, make_atom(n, u, v))
    return part


def c_gamma_neighbor(k):
    """Index ``i`` of the b-vertex joined to ``c`` by the gamma edge.

    ``c`` must share a gamma block with ``a2`` for the two c-terms to produce
    ``equ(a0, c)`` and ``equ(a2, c)``; gamma joins ``a2`` to ``b1`` only, so
    the edge is ``(b1, c)`` for every ``k >= 2``.
    """
    return 1


def build_config(n):
    """The four colour classes of the configuration on ``Z(n)``."""
    if n < 5:
        raise InvalidArgument(f"Zadori configurations need n >= 5, got {n}")
    k = (n - 1) // 2
    vm = vertex_map(n)
    a = [vm[f"a{i}"] for i in range(k + 1)]
    b = [vm[f"b{i}"] for i in range(k)]
    alpha = _from_edges(n, [(a[i], a[i + 1]) for i in range(k)]
                        + [(b[i], b[i + 1]) for i in range(k - 1)])
    beta_edges = [(a[i], b[i]) for i in range(k)]
    gamma_edges = [(a[i + 1], b[i]) for i in range(k)]
    if n % 2 == 0:
        c = vm["c"]
        beta_edges.append((b[0], c))
        gamma_edges.append((b[c_gamma_neighbor(k)], c))
    beta = _from_edges(n, beta_edges)
    gamma = _from_edges(n, gamma_edges)
    delta = _from_edges(n, [(a[0], b[0]), (a[k], b[k - 1])])
    return ZadoriConfig(n, k, vm, alpha, beta, gamma, delta)


# -- term families ------------------------------------------------------------

@dataclass
class TermFamilies:
    g: list   # g[i], 0 <= i <= k-1
    h: list   # h[i], 1 <= i <= k (h[0] is None)
    G: list   # G[i], 1 <= i <= k (G[0] is None)
    H: list   # H[i], 0 <= i <= k-1


def build_gh_terms(k, mu=None, g0=None, H0=None):
    """The recursive families ``g_i, h_i, G_i, H_i`` over ``mu``.

    ``mu`` defaults to the four variables; ``g0``/``H0`` default to
    ``beta*delta`` and ``gamma*delta`` built from ``mu``.
    """
    if k < 2:
        raise InvalidArgument("term families need k >= 2")
    al, be, ga, de = mu if mu is not None else variables(4)
    g = [g0 if g0 is not None else be * de]
    h = [None]
    for i in range(k):
        h.append((((g[i] + ga) * al) + g[i]) * ga)
        if i + 1 <= k - 1:
            g.append((((h[i + 1] + be) * al) + h[i + 1]) * be)
    H = [H0 if H0 is not None else ga * de]
    G = [None]
    for i in range(k):
        G.append((((H[i] + be) * al) + H[i]) * be)
        if i + 1 <= k - 1:
            H.append((((G[i + 1] + ga) * al) + G[i + 1]) * ga)
    return TermFamilies(g, h, G, H)


def build_edge_terms(config, mu=None, g0=None, H0=None):
    """Direct terms for the drawn edges: ``{(u, v): term}`` with ``u < v``."""
    k = config.k
    fam = build_gh_terms(k, mu, g0, H0)
    al = (mu if mu is not None else variables(4))[0]
    a, b = config.a, config.b
    e = {}

    def put(u, v, t):
        e[(min(u, v), max(u, v))] = t

    for i in range(k):
        put(a(i), b(i), fam.g[i] * fam.G[k - i])
    for i in range(1, k + 1):
        put(a(i), b(i - 1), fam.h[i] * fam.H[k - i])
    for i in range(k):
        put(a(i), a(i + 1), al * (e[_key(a(i), b(i))] + e[_key(a(i + 1), b(i))]))
    for i in range(k - 1):
        put(b(i), b(i + 1), al * (e[_key(a(i + 1), b(i))] + e[_key(a(i + 1), b(i + 1))]))
    return e


def _key(u, v):
    return (min(u, v), max(u, v))


def odd_circle(config):
    """``a0, a1, ..., ak, b(k-1), ..., b0``."""
    k = config.k
    return [config.a(i) for i in range(k + 1)] + [config.b(i) for i in range(k - 1, -1, -1)]


def even_circle(config):
    """``a0, c, a2, ..., ak, b(k-1), ..., b1, a1, b0``."""
    k = config.k
    return ([config.a(0), config.c] + [config.a(i) for i in range(2, k + 1)]
            + [config.b(i) for i in range(k - 1, 0, -1)] + [config.a(1), config.b(0)])


class FTermTable:
    """f-terms for every pair of vertices of one configuration."""

    def __init__(self, config, direct, circle, bottom_term):
        self.config = config
        self.direct = direct
        self.circle = circle
        self._pos = {v: i for i, v in enumerate(circle)}
        self._edges = [direct[_key(circle[i], circle[(i + 1) % len(circle)])]
                       for i in range(len(circle))]
        self._cache = {}
        self.bottom_term = bottom_term

    def __call__(self, u, v):
        if u == v:
            return self.bottom_term
        key = _key(u, v)
        t = self._cache.get(key)
        if t is None:
            t = self.direct.get(key)
            if t is None:
                pu, pv = sorted((self._pos[u], self._pos[v]))
                t = circle_term(self._edges, pu, pv)
            self._cache[key] = t
        return t

    def pairs(self):
        return list(combinations(range(1, self.config.n + 1), 2))

    def items(self):
        return [((u, v), self(u, v)) for u, v in self.pairs()]


def starred_mu():
    """``(alpha, beta(alpha+delta), gamma(alpha+delta), delta)`` as terms."""
    al, be, ga, de = variables(4)
    ad = al + de
    return (al, be * ad, ga * ad, de)


def c_terms(config, beta, gamma, e_a0a2):
    """Terms for ``(a0, c)`` and ``(a2, c)`` given a term for ``equ(a0, a2)``."""
    return {
        _key(config.a(0), config.c): beta * (gamma + e_a0a2),
        _key(config.a(2), config.c): gamma * (beta + e_a0a2),
    }


def build_fterm_table(config, g0=None, H0=None, starred=None):
    """Term table whose every entry evaluates to the atom of its pair.

    Odd ``n``: the edge terms plus circle terms along :func:`odd_circle`.
    Even ``n``: by default every edge term is rebuilt over the starred
    variables (which isolate ``c``), two c-terms are added and the rest comes
    from circle terms along :func:`even_circle`.  ``g0``/``H0`` replace the
    two entry terms (always over plain variables); ``starred=False`` keeps
    plain variables in the even case, which is sound whenever the entries
    already leave ``c`` isolated.
    """
    n = config.n
    x = variables(4)
    bot = meet_all(x)
    if not config.even:
        direct = build_edge_terms(config, g0=g0, H0=H0)
        return FTermTable(config, direct, odd_circle(config), bot)
    if starred is None:
        starred = g0 is None and H0 is None
    mu = starred_mu() if starred else x
    direct = build_edge_terms(config, mu=mu, g0=g0, H0=H0)
    # equ(a0, a2) through the odd circle on Z(n) \ {c}
    odd = FTermTable(config, direct, odd_circle(config), bot)
    e_a0a2 = odd(config.a(0), config.a(2))
    direct = dict(direct)
    direct.update(c_terms(config, x[1], x[2], e_a0a2))
    return FTermTable(config, direct, even_circle(config), bot)


# -- certificates -----------------------------------------------------------

@dataclass
class CheckRecord:
    name: str
    indices: tuple
    passed: bool
    detail: str = ""

    def line(self):
        idx = ",".join(str(i) for i in self.indices) if self.indices else "-"
        return f"CHECK {self.name} {idx} {'PASS' if self.passed else 'FAIL'}"


@dataclass
class GeneratorCertificate:
    shape: object
    quadruple: tuple
    checks: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    order_type: list = field(default_factory=list)

    @property
    def valid(self):
        return bool(self.checks) and all(c.passed for c in self.checks)

    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)

    def add(self, name, indices, passed, detail=""):
        self.checks.append(CheckRecord(name, tuple(indices), bool(passed), detail))

    def lines(self):
        out = [c.line() for c in self.checks]
        out.append(f"RESULT {'VALID' if self.valid else 'INVALID'}")
        return out


def verify_lemma(n, config=None, table=None):
    """Evaluate every f-term at the configuration and check it is the atom."""
    if n < 5:
        raise InvalidArgument(f"verify_lemma needs n >= 5, got {n}")
    config = config or build_config(n)
    table = table or build_fterm_table(config)
    ev = Evaluator(config.quadruple)
    from .partition import LatticeShape
    cert = GeneratorCertificate(LatticeShape(n, 1), config.quadruple)
    for (u, v), t in table.items():
        got = ev.eval(t)
        ok = got == make_atom(n, u, v)
        cert.add("atom", (u, v), ok, "" if ok else f"got {got}")
        if ok:
            cert.witnesses[(u, v)] = t
    return cert


def delta_entry_nodes(table):
    """Nodes of the table that have the delta variable as a direct child."""
    hits = set()
    for _, t in table.items():
        for node in postorder(t):
            if node.op != 0 and (_is_delta(node.left) or _is_delta(node.right)):
                hits.add(id(node))
    return hits


def _is_delta(node):
    return node.op == 0 and node.index == 4
