"""Lattice terms as shared-subterm DAGs.

A :class:`Term` node is a variable ``x_i`` (1-based), a meet or a join.  Nodes
are immutable and compared by identity, so a subterm built once and reused
is evaluated once per evaluation pass.  Every traversal is iterative because
the recursive term families used by the generating-set certificates are deep.

Text format: S-expressions with ``*`` for meet and ``+`` for join, e.g.
``(* x4 (+ x5 x1))``.
"""

from __future__ import annotations

import logging
import re

from . import kernels
from .errors import InvalidArgument, ParseError, ShapeError
from .partition import Partition, PartitionTuple

log = logging.getLogger(__name__)

VAR, MEET, JOIN = 0, 1, 2
_OP_TEXT = {MEET: "*", JOIN: "+"}
DUAL = {MEET: JOIN, JOIN: MEET}


class Term:
    __slots__ = ("op", "left", "right", "index", "__weakref__")

    def __init__(self, op, left=None, right=None, index=0):
        self.op = op
        self.left = left
        self.right = right
        self.index = index

    def __and__(self, other):
        return Term(MEET, self, other)

    def __or__(self, other):
        return Term(JOIN, self, other)

    # ``+``/``*`` read like the usual lattice notation
    __add__ = __or__
    __mul__ = __and__

    @property
    def is_var(self):
        return self.op == VAR

    def __repr__(self):
        if self.op == VAR:
            return f"x{self.index}"
        return f"Term({_OP_TEXT[self.op]}, nodes={node_count(self)})"


def var(i):
    if i < 1:
        raise InvalidArgument("variables are numbered from 1")
    return Term(VAR, index=i)


def variables(p):
    return tuple(var(i) for i in range(1, p + 1))


def meet_all(terms):
    terms = list(terms)
    if not terms:
        raise InvalidArgument("empty meet")
    acc = terms[0]
    for t in terms[1:]:
        acc = Term(MEET, acc, t)
    return acc


def join_all(terms):
    terms = list(terms)
    if not terms:
        raise InvalidArgument("empty join")
    acc = terms[0]
    for t in terms[1:]:
        acc = Term(JOIN, acc, t)
    return acc


def postorder(root):
    """Distinct nodes of the DAG, children before parents."""
    order = []
    done = set()
    stack = [(root, False)]
    while stack:
        node, expanded = stack.pop()
        key = id(node)
        if key in done:
            continue
        if expanded or node.op == VAR:
            done.add(key)
            order.append(node)
            continue
        stack.append((node, True))
        if id(node.right) not in done:
            stack.append((node.right, False))
        if id(node.left) not in done:
            stack.append((node.left, False))
    return order


def node_count(t):
    return len(postorder(t))


def occurrences(t):
    """Leaf count of the fully expanded tree (exact, may be huge)."""
    count = {}
    for node in postorder(t):
        if node.op == VAR:
            count[id(node)] = 1
        else:
            count[id(node)] = count[id(node.left)] + count[id(node.right)]
    return count[id(t)]


def operation_count(t):
    """Number of meet/join nodes of the expanded tree."""
    return occurrences(t) - 1


def max_variable(t):
    return max((n.index for n in postorder(t) if n.op == VAR), default=0)


def uses_variable(t, i):
    return any(n.op == VAR and n.index == i for n in postorder(t))


class Evaluator:
    """Evaluates terms at fixed arguments, memoizing every node it visits.

    The memo persists across :meth:`eval` calls, so a family of terms sharing
    subterms (the certificate terms) costs one pass over their union.  An
    evaluator is not meant to be shared between threads.
    """

    def __init__(self, args):
        args = list(args)
        if not args:
            raise InvalidArgument("no arguments")
        if all(isinstance(a, Partition) for a in args):
            self._wrap = Partition._from_ids
            vals = [(a.ids,) for a in args]
            self._scalar = True
        elif all(isinstance(a, PartitionTuple) for a in args):
            self._wrap = PartitionTuple._from_ids
            vals = [a.ids for a in args]
            self._scalar = False
            shape = args[0].shape
            if any(a.shape != shape for a in args):
                raise ShapeError("arguments of different shapes")
        else:
            raise ShapeError("arguments must all be Partitions or all PartitionTuples")
        self.args = tuple(vals)
        self.memo = {}
        self._keep = []

    @property
    def p(self):
        return len(self.args)

    def raw(self, t):
        """Value of ``t`` as a raw tuple of coordinate id-tuples."""
        memo = self.memo
        hit = memo.get(id(t))
        if hit is not None:
            return hit
        args = self.args
        tmeet = kernels.tuple_meet
        tjoin = kernels.tuple_join
        stack = [t]
        while stack:
            node = stack[-1]
            key = id(node)
            if key in memo:
                stack.pop()
                continue
            if node.op == VAR:
                if not 1 <= node.index <= len(args):
                    raise InvalidArgument(
                        f"variable x{node.index} out of range for {len(args)} arguments")
                memo[key] = args[node.index - 1]
                self._keep.append(node)
                stack.pop()
                continue
            lv = memo.get(id(node.left))
            rv = memo.get(id(node.right))
            if lv is None:
                stack.append(node.left)
                continue
            if rv is None:
                stack.append(node.right)
                continue
            memo[key] = tmeet(lv, rv) if node.op == MEET else tjoin(lv, rv)
            # keep node alive so its id() is not recycled while memoized
            self._keep.append(node)
            stack.pop()
        return memo[id(t)]

    def eval(self, t):
        value = self.raw(t)
        return self._wrap(value[0]) if self._scalar else self._wrap(value)


def evaluate(t, args):
    """Value of ``t`` at ``args`` (all Partitions or all PartitionTuples)."""
    return Evaluator(args).eval(t)


# -- circle principle -------------------------------------------------------

def circle_term(edges, u, v):
    """``(e_u + ... + e_{v-1}) * (e_v + ... + e_{m-1} + e_0 + ... + e_{u-1})``.

    ``edges[i]`` stands for the edge ``(d_i, d_{i+1 mod m})`` of a cycle; when
    every edge term evaluates to the corresponding atom the result is the atom
    ``equ(d_u, d_v)``.
    """
    m = len(edges)
    if m == 0:
        raise InvalidArgument("empty cycle")
    if not (0 <= u < v <= m - 1):
        raise InvalidArgument(f"need 0 <= u < v <= {m - 1}, got u={u}, v={v}")
    first = join_all(edges[u:v])
    second = join_all(list(edges[v:]) + list(edges[:u]))
    return Term(MEET, first, second)


# -- text format ------------------------------------------------------------

def serialize_term(t):
    """S-expression text of the expanded tree."""
    out = []
    stack = [t]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            out.append(item)
            continue
        if item.op == VAR:
            out.append(f"x{item.index}")
            continue
        out.append(f"({_OP_TEXT[item.op]} ")
        stack.append(")")
        stack.append(item.right)
        stack.append(" ")
        stack.append(item.left)
    return "".join(out)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|([+*])|x(\d+)|(\S+))")


def _tokens(s):
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:  # only trailing whitespace left
            break
        pos = m.end()
        if m.group(1):
            yield "("
        elif m.group(2):
            yield ")"
        elif m.group(3):
            yield m.group(3)
        elif m.group(4) is not None:
            yield int(m.group(4))
        elif m.group(5):
            raise ParseError(f"unknown token {m.group(5)!r}", token=m.group(5))


def parse_term(s, p=None):
    """Parse S-expression text.  ``(op a b c ...)`` folds to the left."""
    stack = []
    result = None
    for tok in _tokens(s):
        if result is not None:
            raise ParseError(f"trailing input after term: {tok!r}", token=str(tok))
        if tok == "(":
            stack.append([])
        elif tok == ")":
            if not stack:
                raise ParseError("unbalanced ')'", token=")")
            frame = stack.pop()
            if not frame or frame[0] not in ("+", "*"):
                raise ParseError("expected operator after '('", token="(")
            if len(frame) < 3:
                raise ParseError("operator needs at least two operands", token=frame[0])
            op = JOIN if frame[0] == "+" else MEET
            node = frame[1]
            for operand in frame[2:]:
                node = Term(op, node, operand)
            if stack:
                stack[-1].append(node)
            else:
                result = node
        elif tok in ("+", "*"):
            if not stack or stack[-1]:
                raise ParseError(f"misplaced operator {tok!r}", token=tok)
            stack[-1].append(tok)
        else:
            if tok < 1 or (p is not None and tok > p):
                raise ParseError(f"variable x{tok} out of range 1..{p}", token=f"x{tok}")
            leaf = var(tok)
            if stack:
                if not stack[-1]:
                    raise ParseError("expected operator after '('", token=f"x{tok}")
                stack[-1].append(leaf)
            else:
                result = leaf
    if stack:
        raise ParseError("unbalanced '(': missing ')'", token="(")
    if result is None:
        raise ParseError("empty term", token="")
    return result


# -- random terms -----------------------------------------------------------

UNIFORM = "uniform"
DEPTH_WEIGHTED = "depth"


def random_term(p, steps, rng, policy=UNIFORM, construction_log=None, monitor=None):
    """Grow a random ``p``-ary term by ``steps`` leaf replacements.

    Starts from a uniform variable.  Each step picks a leaf (uniformly, or
    with weight ``2**-depth`` under ``policy="depth"``), an operation and two
    distinct variables, and replaces the leaf by their meet or join.  A choice
    is redrawn (same leaf) when it would cancel at once by absorption: the
    leaf's parent applies ``P`` with a variable sibling ``x`` and the new node
    applies the dual of ``P`` to a pair containing ``x``.

    Draw order per step: leaf, operation (0 = meet, 1 = join), first
    variable, second variable (from the remaining ``p - 1``).

    ``construction_log``, if a list, receives one dict per step.

    ``monitor`` (a :class:`Monitor`) steers the growth using the values of
    the term at a known argument vector: a step whose result would put the
    root value too close to bottom or top is redrawn from the leaf choice
    on, at most ``monitor.redraws`` times.
    """
    if p < 2:
        raise InvalidArgument("random terms need p >= 2")
    if steps < 0:
        raise InvalidArgument("steps must be nonnegative")
    if policy not in (UNIFORM, DEPTH_WEIGHTED):
        raise InvalidArgument(f"unknown leaf policy {policy!r}")
    # flat mutable tree: node k has op[k], var[k], kids[k], parent[k], depth[k]
    op = [VAR]
    varidx = [rng.below(p) + 1]
    kids = [None]
    parent = [-1]
    depth = [0]
    leaves = [0]
    rejections = 0
    vals = None
    if monitor is not None:
        if monitor.p != p:
            raise InvalidArgument(f"monitor has {monitor.p} arguments, term arity is {p}")
        vals = [monitor.args[varidx[0] - 1]]
    hopeless = 0
    for step in range(steps):
        steer = monitor is not None and hopeless < monitor.give_up
        for attempt in range(monitor.redraws + 1 if steer else 1):
            if policy == UNIFORM:
                slot = rng.below(len(leaves))
            else:
                weights = [2.0 ** -depth[k] for k in leaves]
                target = rng.random() * sum(weights)
                acc = 0.0
                slot = len(leaves) - 1
                for s, w in enumerate(weights):
                    acc += w
                    if target < acc:
                        slot = s
                        break
            leaf = leaves[slot]
            par = parent[leaf]
            sibling_var = None
            parent_op = None
            if par >= 0:
                parent_op = op[par]
                a, b = kids[par]
                sib = b if a == leaf else a
                if op[sib] == VAR:
                    sibling_var = varidx[sib]
            while True:
                new_op = MEET if rng.below(2) == 0 else JOIN
                xa = rng.below(p) + 1
                xb = rng.below(p - 1) + 1
                if xb >= xa:
                    xb += 1
                if (sibling_var is not None and new_op == DUAL[parent_op]
                        and sibling_var in (xa, xb)):
                    rejections += 1
                    continue
                break
            if vals is None:
                break
            path = _path_values(vals, op, parent, kids, leaf, new_op, xa, xb, monitor)
            if not steer or monitor.accept(path[-1][1]):
                break
            if attempt == monitor.redraws:
                hopeless += 1
                break
            rejections += 1
        if construction_log is not None:
            construction_log.append({
                "step": step, "leaf_var": varidx[leaf], "parent_op": parent_op,
                "sibling_var": sibling_var, "op": new_op, "vars": (xa, xb),
            })
        left = len(op)
        right = left + 1
        op.extend((VAR, VAR))
        varidx.extend((xa, xb))
        kids.extend((None, None))
        parent.extend((leaf, leaf))
        depth.extend((depth[leaf] + 1, depth[leaf] + 1))
        op[leaf] = new_op
        kids[leaf] = (left, right)
        if vals is not None:
            vals.extend((monitor.args[xa - 1], monitor.args[xb - 1]))
            for node, value in path:
                vals[node] = value
        leaves[slot] = left
        leaves.append(right)
    if rejections:
        log.debug("random_term: %d absorption rejections in %d steps", rejections, steps)
    # freeze bottom-up; children always have larger indices than parents
    built = [None] * len(op)
    for k in range(len(op) - 1, -1, -1):
        if op[k] == VAR:
            built[k] = Term(VAR, index=varidx[k])
        else:
            a, b = kids[k]
            built[k] = Term(op[k], built[a], built[b])
    return built[0]


class Monitor:
    """Argument vector and acceptance rule for steered term growth.

    ``accept(value)`` gets the prospective root value (a tuple of id tuples)
    and rejects anything within ``D`` of bottom, top, an argument or a point
    in ``avoid`` (callers append earlier results there).
    """

    def __init__(self, args, D=3, redraws=64, give_up=4):
        self.args = [a.ids if isinstance(a, PartitionTuple) else (a.ids,) for a in args]
        self.p = len(args)
        self.D = D
        self.redraws = redraws
        # steering stops for the rest of a term after this many hopeless steps
        self.give_up = give_up
        self.avoid = []

    def accept(self, value):
        blocks = kernels.tuple_block_count(value)
        below = len(value) * len(value[0]) - blocks
        above = blocks - len(value)
        if below < self.D or above < self.D:
            return False
        dist = kernels.tuple_distance
        D = self.D
        for x in self.args:
            if dist(value, x) < D:
                return False
        for x in self.avoid:
            if dist(value, x) < D:
                return False
        return True

    def value(self, t):
        """Value of a finished term (tuple of id tuples)."""
        return Evaluator([PartitionTuple._from_ids(a) for a in self.args]).raw(t)


def _path_values(vals, op, parent, kids, leaf, new_op, xa, xb, monitor):
    """Values along the path from ``leaf`` (after the candidate step) to the root."""
    meet_, join_ = kernels.tuple_meet, kernels.tuple_join
    args = monitor.args
    value = (meet_ if new_op == MEET else join_)(args[xa - 1], args[xb - 1])
    path = [(leaf, value)]
    node = leaf
    while parent[node] >= 0:
        par = parent[node]
        a, b = kids[par]
        f = meet_ if op[par] == MEET else join_
        value = f(value, vals[b]) if a == node else f(vals[a], value)
        path.append((par, value))
        node = par
    return path


def absorption_sites(t):
    """Nodes ``P(x, Q(x_a, x_b))`` with ``Q`` dual to ``P`` and ``x`` in the pair.

    These are exactly the patterns the random growth procedure refuses to
    create; a nonempty result on a random term means a violation.
    """
    hits = []
    for node in postorder(t):
        if node.op == VAR:
            continue
        for sib, child in ((node.left, node.right), (node.right, node.left)):
            if (sib.op == VAR and child.op == DUAL[node.op]
                    and child.left.op == VAR and child.right.op == VAR
                    and sib.index in (child.left.index, child.right.index)):
                hits.append(node)
    return hits
