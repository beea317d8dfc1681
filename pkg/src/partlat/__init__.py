"""Partition lattices, their direct powers and small generating sets."""

from .errors import InvalidArgument, ParseError, PartlatError, ProtocolError, ShapeError
from .kernels import BACKEND
from .partition import (LatticeShape, Partition, PartitionTuple, bottom, distance, equ,
                        from_canonical, join, leq, make_atom, meet, to_canonical, top,
                        tuple_from_text, tuple_to_text)
from .combinatorics import bell, best_block_count, m_of_n, max_stirling, mhat_of_n, stirling2
from .terms import Term, evaluate, parse_term, random_term, serialize_term, var, variables
from .zadori import build_config, verify_lemma
from .power import (build_theorem1_generators, build_theorem2_generators, verify_theorem1,
                    verify_theorem2)
from .genset import closure, is_generating, sample_generating_fraction

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "InvalidArgument", "LatticeShape", "ParseError", "Partition", "PartitionTuple",
    "PartlatError", "ProtocolError", "ShapeError", "Term", "bell", "best_block_count", "bottom",
    "build_config", "build_theorem1_generators", "build_theorem2_generators", "closure",
    "distance", "equ", "evaluate", "from_canonical", "is_generating", "join", "leq",
    "m_of_n", "make_atom", "max_stirling", "meet", "mhat_of_n", "parse_term", "random_term",
    "sample_generating_fraction", "serialize_term", "stirling2", "to_canonical", "top",
    "tuple_from_text", "tuple_to_text", "var", "variables", "verify_lemma", "verify_theorem1",
    "verify_theorem2",
]
