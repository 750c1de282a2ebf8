"""Backend selection for the graph kernels.

The compiled extension is used when it imports; set ``POLYFORGE_PURE=1`` to
force the pure-Python fallback (useful for debugging and for the benchmark).
"""

import os

if os.environ.get("POLYFORGE_PURE", "") not in ("", "0"):
    from polyforge import _purepy as _impl
else:
    try:
        from polyforge import _fastgraph as _impl
    except ImportError:  # extension not built
        from polyforge import _purepy as _impl

BACKEND = _impl.BACKEND
bfs = _impl.bfs
components = _impl.components
pairs_at_distance = _impl.pairs_at_distance
exists_pair_at_distance = _impl.exists_pair_at_distance
count_pairs_at_distance = _impl.count_pairs_at_distance
girth = _impl.girth
max_eccentricity = _impl.max_eccentricity
find_embeddings = _impl.find_embeddings

__all__ = [
    "BACKEND",
    "bfs",
    "components",
    "pairs_at_distance",
    "exists_pair_at_distance",
    "count_pairs_at_distance",
    "girth",
    "max_eccentricity",
    "find_embeddings",
]
