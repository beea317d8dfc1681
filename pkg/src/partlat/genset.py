"""Sublattice closure, generation tests and random-subset experiments."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from . import kernels
from .combinatorics import bell
from .errors import InvalidArgument, ShapeError
from .partition import (LatticeShape, PartitionTuple, as_tuple, atom_vector,
                        unrank_partition)
from .rng import XorShift64Star, substream_seed

DEFAULT_LIMIT = 5_000_000


@dataclass
class ClosureResult:
    generating: bool
    closure_size: int | None
    atoms_covered: int
    steps: int
    limit_hit: bool
    elements: list | None = None

    def __repr__(self):
        return (f"ClosureResult(generating={self.generating}, closure_size={self.closure_size}, "
                f"atoms_covered={self.atoms_covered}, steps={self.steps}, limit_hit={self.limit_hit})")


def _normalize(generators):
    gens = [as_tuple(g) for g in generators]
    if not gens:
        raise InvalidArgument("empty generator set")
    shape = gens[0].shape
    for g in gens[1:]:
        if g.shape != shape:
            raise ShapeError(f"generator shapes differ: {shape} vs {g.shape}")
    return shape, gens


def atom_targets(shape):
    n, t = shape.n, shape.t
    return {atom_vector(shape, j, u, v).ids
            for j in range(t) for u in range(1, n + 1) for v in range(u + 1, n + 1)}


def closure(generators, limit=DEFAULT_LIMIT, early_exit=True, keep=False):
    """Close ``generators`` under componentwise meet and join.

    With ``early_exit`` the loop stops once every atom vector is present;
    since the partition lattice is atomistic these already generate the whole
    power.  ``closure_size`` is ``None`` unless the fixpoint was reached.
    """
    shape, gens = _normalize(generators)
    targets = atom_targets(shape)
    elements, steps, limit_hit, found = kernels.closure(
        [g.ids for g in gens], limit, targets if early_exit else None)
    if not early_exit:
        found = sum(1 for z in targets if z in set(elements)) if targets else 0
    complete = not limit_hit and (not early_exit or found < len(targets) or not targets)
    generating = found == len(targets)
    if complete and not early_exit:
        generating = found == len(targets)
    out = [PartitionTuple._from_ids(z) for z in elements] if keep else None
    return ClosureResult(generating, len(elements) if complete else None,
                         found, steps, limit_hit, out)


def is_generating(generators, shape=None, limit=DEFAULT_LIMIT):
    gens = list(generators)
    if shape is not None:
        shape = LatticeShape.parse(shape) if isinstance(shape, str) else shape
        for g in gens:
            if as_tuple(g).shape != shape:
                raise ShapeError(f"generator of shape {as_tuple(g).shape}, expected {shape}")
    res = closure(gens, limit=limit)
    if res.limit_hit and not res.generating:
        raise InvalidArgument(f"closure exceeded limit {limit} before deciding")
    return res.generating


@dataclass
class ExperimentReport:
    n: int
    subset_size: int
    samples: int
    found: int
    seed: int

    @property
    def fraction(self):
        return self.found / self.samples

    def csv_row(self):
        return f"{self.n},{self.subset_size},{self.samples},{self.found},{self.fraction:.4f},{self.seed}"


CSV_HEADER = "n,subset_size,samples,found,fraction,seed"


def draw_subset(n, subset_size, seed, index):
    """The ``index``-th random subset of the experiment with ``seed``."""
    rng = XorShift64Star(substream_seed(seed, index))
    ranks = rng.sample_indices(bell(n), subset_size)
    return [unrank_partition(n, r) for r in ranks]


def _count(args):
    n, subset_size, seed, lo, hi = args
    found = 0
    for s in range(lo, hi):
        if closure(draw_subset(n, subset_size, seed, s)).generating:
            found += 1
    return found


def sample_generating_fraction(n, subset_size, samples, seed, workers=1):
    """Fraction of random ``subset_size``-subsets of ``Part(n)`` that generate it.

    Sample ``s`` uses the substream ``(seed, s)``, so the count does not
    depend on ``workers``.
    """
    if subset_size < 1 or samples < 1:
        raise InvalidArgument("subset_size and samples must be positive")
    if subset_size > bell(n):
        raise InvalidArgument(f"subset_size {subset_size} exceeds Bell({n}) = {bell(n)}")
    if workers <= 1:
        found = _count((n, subset_size, seed, 0, samples))
    else:
        step = -(-samples // workers)
        jobs = [(n, subset_size, seed, lo, min(lo + step, samples))
                for lo in range(0, samples, step)]
        with ProcessPoolExecutor(workers) as pool:
            found = sum(pool.map(_count, jobs))
    return ExperimentReport(n, subset_size, samples, found, seed)
