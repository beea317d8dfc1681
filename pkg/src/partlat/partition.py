"""Partitions of ``{1..n}``, their lattice operations and direct powers.

A :class:`Partition` stores a canonical block-id tuple, so equal partitions
hash equal and compare in O(n).  The text format lists blocks ordered by
their least element, elements ascending, e.g. ``"1,3|2,4|5"``.  Points of
``Part(n)^t`` are :class:`PartitionTuple` values written as coordinate
partitions joined by ``';'``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from . import kernels
from .errors import InvalidArgument, ParseError, ShapeError


class Partition:
    """A partition of ``{1..n}`` (equivalently an equivalence relation)."""

    __slots__ = ("ids",)

    def __init__(self, labels):
        ids = kernels.canonical(labels)
        if not ids:
            raise InvalidArgument("a partition needs n >= 1")
        object.__setattr__(self, "ids", ids)

    @classmethod
    def _from_ids(cls, ids):
        obj = object.__new__(cls)
        object.__setattr__(obj, "ids", ids)
        return obj

    @classmethod
    def from_blocks(cls, blocks, n=None):
        """Build from an iterable of blocks of 1-based elements."""
        blocks = [list(b) for b in blocks]
        size = n if n is not None else sum(len(b) for b in blocks)
        labels = [None] * size
        for bi, block in enumerate(blocks):
            for x in block:
                if not 1 <= x <= size:
                    raise InvalidArgument(f"element {x} outside 1..{size}")
                if labels[x - 1] is not None:
                    raise InvalidArgument(f"element {x} listed twice")
                labels[x - 1] = bi
        missing = [i + 1 for i, lab in enumerate(labels) if lab is None]
        if missing:
            if n is None:
                raise InvalidArgument(f"elements {missing} not covered")
            # blocks not mentioned are singletons
            for x in missing:
                labels[x - 1] = ("s", x)
        return cls(labels)

    def __setattr__(self, name, value):
        raise AttributeError("Partition is immutable")

    @property
    def n(self):
        return len(self.ids)

    def blocks(self):
        """Blocks as tuples of 1-based elements, ordered by least element."""
        out = [[] for _ in range(max(self.ids) + 1)]
        for i, b in enumerate(self.ids):
            out[b].append(i + 1)
        return [tuple(b) for b in out]

    def block_of(self, x):
        """The block containing element ``x`` (1-based)."""
        b = self.ids[x - 1]
        return tuple(i + 1 for i, c in enumerate(self.ids) if c == b)

    def related(self, x, y):
        return self.ids[x - 1] == self.ids[y - 1]

    def pairs(self):
        """All pairs ``(x, y)`` with ``x < y`` in a common block."""
        for block in self.blocks():
            yield from combinations(block, 2)

    def is_atom(self):
        return block_count(self) == self.n - 1

    def __eq__(self, other):
        return isinstance(other, Partition) and self.ids == other.ids

    def __hash__(self):
        return hash(self.ids)

    def __and__(self, other):
        return meet(self, other)

    def __or__(self, other):
        return join(self, other)

    def __le__(self, other):
        return leq(self, other)

    def __ge__(self, other):
        return leq(other, self)

    def __lt__(self, other):
        return self != other and leq(self, other)

    def __gt__(self, other):
        return self != other and leq(other, self)

    def __str__(self):
        return to_canonical(self)

    def __repr__(self):
        return f"Partition({to_canonical(self)!r})"

    def __reduce__(self):
        return (Partition, (self.ids,))


def _check_same(x, y):
    if x.n != y.n:
        raise ShapeError(f"partitions of different sizes: {x.n} and {y.n}")


def bottom(n):
    if n < 1:
        raise InvalidArgument("n must be positive")
    return Partition._from_ids(tuple(range(n)))


def top(n):
    if n < 1:
        raise InvalidArgument("n must be positive")
    return Partition._from_ids((0,) * n)


def make_atom(n, u, v):
    """The partition whose only non-singleton block is ``{u, v}``."""
    if not (1 <= u <= n and 1 <= v <= n):
        raise InvalidArgument(f"atom endpoints {u},{v} outside 1..{n}")
    if u == v:
        raise InvalidArgument("atom endpoints must differ")
    u, v = min(u, v), max(u, v)
    labels = list(range(n))
    labels[v - 1] = u - 1
    return Partition(labels)


def equ(n, *elements):
    """Partition with one block ``elements`` and singletons elsewhere."""
    if len(set(elements)) != len(elements):
        raise InvalidArgument("equ() elements must be distinct")
    if not elements:
        return bottom(n)
    return Partition.from_blocks([elements], n)


def meet(x, y):
    _check_same(x, y)
    return Partition._from_ids(kernels.meet(x.ids, y.ids))


def join(x, y):
    _check_same(x, y)
    return Partition._from_ids(kernels.join(x.ids, y.ids))


def leq(x, y):
    _check_same(x, y)
    return kernels.leq(x.ids, y.ids)


def block_count(x):
    return max(x.ids) + 1


def distance(x, y):
    """Hasse-diagram distance via block counts; sums coordinates for tuples."""
    if isinstance(x, PartitionTuple) or isinstance(y, PartitionTuple):
        return tuple_distance(x, y)
    _check_same(x, y)
    j = kernels.block_count(kernels.join(x.ids, y.ids))
    return (block_count(x) - j) + (block_count(y) - j)


# -- text format ------------------------------------------------------------

def to_canonical(x):
    return "|".join(",".join(str(e) for e in block) for block in x.blocks())


_BLOCK_TOKEN = re.compile(r"\s*(\d+)\s*$")


def from_canonical(s, n=None):
    """Parse ``"1,3|2,4|5"``.  ``n`` defaults to the number of elements seen."""
    if not isinstance(s, str) or not s.strip():
        raise ParseError("empty partition text", token=s)
    seen = {}
    blocks = []
    for bi, block_text in enumerate(s.strip().split("|")):
        block = []
        for tok in block_text.split(","):
            m = _BLOCK_TOKEN.match(tok)
            if not m:
                raise ParseError(f"malformed element token {tok!r}", token=tok)
            x = int(m.group(1))
            if x in seen:
                raise ParseError(f"duplicate element {x}", token=tok.strip())
            seen[x] = bi
            block.append(x)
        blocks.append(block)
    size = len(seen) if n is None else n
    for x in seen:
        if not 1 <= x <= size:
            raise ParseError(f"element {x} out of range 1..{size}", token=str(x))
    missing = [x for x in range(1, size + 1) if x not in seen]
    if missing:
        raise ParseError(f"missing element {missing[0]}", token=str(missing[0]))
    return Partition([seen[x] for x in range(1, size + 1)])


# -- enumeration and sampling -----------------------------------------------

def _rgs_with_blocks(m, r):
    """Restricted growth strings of length ``m`` using exactly ``r`` values."""
    if m == 0:
        if r == 0:
            yield ()
        return
    out = [0] * m

    def rec(i, used):
        if m - i < r - used:
            return
        if i == m:
            if used == r:
                yield tuple(out)
            return
        for v in range(min(used + 1, r)):
            out[i] = v
            yield from rec(i + 1, max(used, v + 1))

    yield from rec(1, 1)


def enumerate_r_block_partitions(S, r):
    """All partitions of the ordered set ``S`` with exactly ``r`` blocks.

    Partitions are returned on positions ``1..|S|`` (position ``i`` stands for
    ``S[i-1]``), sorted by their canonical text.
    """
    S = list(S)
    if len(set(S)) != len(S):
        raise InvalidArgument("S has repeated elements")
    if not 1 <= r <= len(S):
        raise InvalidArgument(f"block count {r} outside 1..{len(S)}")
    parts = [Partition._from_ids(ids) for ids in _rgs_with_blocks(len(S), r)]
    parts.sort(key=to_canonical)
    return parts


def lift(part, S, n):
    """Embed a partition on positions ``1..|S|`` into ``{1..n}`` along ``S``.

    Elements outside ``S`` become singletons.
    """
    S = list(S)
    if part.n != len(S):
        raise ShapeError("partition size does not match S")
    return Partition.from_blocks([[S[i - 1] for i in b] for b in part.blocks()], n)


@lru_cache(maxsize=None)
def _completions(n):
    """``table[r][m]`` = number of RGS completions with ``r`` positions left
    and ``m`` blocks already opened."""
    table = [[1] * (n + 2)]
    for r in range(1, n + 1):
        prev = table[-1]
        row = [0] * (n + 2)
        for m in range(0, n + 1):
            row[m] = m * prev[m] + prev[m + 1]
        table.append(row)
    return table


def unrank_partition(n, index):
    """The ``index``-th partition of ``{1..n}`` in RGS lexicographic order."""
    table = _completions(n)
    total = table[n - 1][1]
    if not 0 <= index < total:
        raise InvalidArgument(f"rank {index} outside 0..{total - 1}")
    ids = [0]
    m = 1
    for pos in range(1, n):
        left = n - pos - 1
        for v in range(m + 1):
            opened = m + 1 if v == m else m
            cnt = table[left][opened]
            if index < cnt:
                ids.append(v)
                m = opened
                break
            index -= cnt
    return Partition._from_ids(tuple(ids))


def rank_partition(x):
    """Inverse of :func:`unrank_partition`."""
    n = x.n
    table = _completions(n)
    index = 0
    m = 1
    for pos in range(1, n):
        left = n - pos - 1
        v = x.ids[pos]
        for w in range(v):
            index += table[left][m]
        m = max(m, v + 1)
    return index


def partition_count(n):
    return _completions(n)[n - 1][1]


def random_partition(n, rng):
    """Uniform partition of ``{1..n}`` (one ``rng.below`` draw)."""
    if n < 1:
        raise InvalidArgument("n must be positive")
    return unrank_partition(n, rng.below(partition_count(n)))


def random_permutation_apply(x, perm):
    """Image of ``x`` under the base-set map ``i -> perm[i-1]`` (1-based)."""
    labels = [0] * x.n
    for i, b in enumerate(x.ids):
        labels[perm[i] - 1] = b
    return Partition(labels)


# -- direct powers ----------------------------------------------------------

@dataclass(frozen=True)
class LatticeShape:
    """Identifies ``Part(n)^t``."""

    n: int
    t: int = 1

    def __post_init__(self):
        if self.n < 1 or self.t < 1:
            raise InvalidArgument(f"shape needs n >= 1 and t >= 1, got P{self.n}^{self.t}")

    def __str__(self):
        return f"P{self.n}^{self.t}"

    @property
    def height(self):
        """Length of a maximal chain of ``Part(n)^t``."""
        return (self.n - 1) * self.t

    @classmethod
    def parse(cls, text):
        m = re.fullmatch(r"\s*P(\d+)\^(\d+)\s*", text or "")
        if not m:
            raise ParseError(f"bad shape spec {text!r}; expected P<n>^<t>", token=text)
        return cls(int(m.group(1)), int(m.group(2)))


class PartitionTuple:
    """A point of ``Part(n)^t``; operations act componentwise."""

    __slots__ = ("shape", "ids")

    def __init__(self, coords):
        coords = list(coords)
        if not coords:
            raise InvalidArgument("a tuple needs at least one coordinate")
        n = coords[0].n
        for c in coords:
            if c.n != n:
                raise ShapeError("coordinates of different sizes")
        object.__setattr__(self, "shape", LatticeShape(n, len(coords)))
        object.__setattr__(self, "ids", tuple(c.ids for c in coords))

    @classmethod
    def _from_ids(cls, ids):
        obj = object.__new__(cls)
        object.__setattr__(obj, "shape", LatticeShape(len(ids[0]), len(ids)))
        object.__setattr__(obj, "ids", ids)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("PartitionTuple is immutable")

    @property
    def coords(self):
        return tuple(Partition._from_ids(c) for c in self.ids)

    def __getitem__(self, i):
        return Partition._from_ids(self.ids[i])

    def __len__(self):
        return len(self.ids)

    def __eq__(self, other):
        return isinstance(other, PartitionTuple) and self.ids == other.ids

    def __hash__(self):
        return hash(self.ids)

    def __and__(self, other):
        return tuple_meet(self, other)

    def __or__(self, other):
        return tuple_join(self, other)

    def __le__(self, other):
        return tuple_leq(self, other)

    def __str__(self):
        return tuple_to_text(self)

    def __repr__(self):
        return f"PartitionTuple({tuple_to_text(self)!r})"

    def __reduce__(self):
        return (PartitionTuple._from_ids, (self.ids,))


def _check_shapes(x, y):
    if x.shape != y.shape:
        raise ShapeError(f"shape mismatch: {x.shape} vs {y.shape}")


def tuple_meet(x, y):
    _check_shapes(x, y)
    return PartitionTuple._from_ids(kernels.tuple_meet(x.ids, y.ids))


def tuple_join(x, y):
    _check_shapes(x, y)
    return PartitionTuple._from_ids(kernels.tuple_join(x.ids, y.ids))


def tuple_leq(x, y):
    _check_shapes(x, y)
    return kernels.tuple_leq(x.ids, y.ids)


def tuple_distance(x, y):
    _check_shapes(x, y)
    return kernels.tuple_distance(x.ids, y.ids)


def tuple_bottom(shape):
    return PartitionTuple._from_ids((tuple(range(shape.n)),) * shape.t)


def tuple_top(shape):
    return PartitionTuple._from_ids(((0,) * shape.n,) * shape.t)


def constant_tuple(x, t):
    return PartitionTuple._from_ids((x.ids,) * t)


def tuple_to_text(x):
    return ";".join(to_canonical(c) for c in x.coords)


def tuple_from_text(s, shape=None):
    if not isinstance(s, str) or not s.strip():
        raise ParseError("empty tuple text", token=s)
    n = shape.n if shape is not None else None
    coords = [from_canonical(part, n) for part in s.strip().split(";")]
    result = PartitionTuple(coords)
    if shape is not None and result.shape != shape:
        raise ShapeError(f"tuple has shape {result.shape}, expected {shape}")
    return result


def atom_vector(shape, j, u, v):
    """Atom ``equ(u, v)`` at coordinate ``j`` (0-based), bottom elsewhere."""
    bot = tuple(range(shape.n))
    atom = make_atom(shape.n, u, v).ids
    return PartitionTuple._from_ids(tuple(atom if i == j else bot for i in range(shape.t)))


def as_tuple(x):
    """Promote a :class:`Partition` to a one-coordinate tuple."""
    if isinstance(x, Partition):
        return PartitionTuple._from_ids((x.ids,))
    return x
