"""Backend selection for the lattice kernels.

The compiled extension is used when it imports; setting the environment
variable ``PARTLAT_PURE_PYTHON=1`` forces the pure-Python fallback.
"""

import os

if os.environ.get("PARTLAT_PURE_PYTHON", "") not in ("", "0"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

BACKEND = _impl.BACKEND
canonical = _impl.canonical
block_count = _impl.block_count
meet = _impl.meet
join = _impl.join
leq = _impl.leq
tuple_meet = _impl.tuple_meet
tuple_join = _impl.tuple_join
tuple_leq = _impl.tuple_leq
tuple_block_count = _impl.tuple_block_count
tuple_distance = _impl.tuple_distance
closure = _impl.closure

__all__ = [
    "BACKEND", "canonical", "block_count", "meet", "join", "leq",
    "tuple_meet", "tuple_join", "tuple_leq", "tuple_block_count", "tuple_distance",
    "closure",
]
