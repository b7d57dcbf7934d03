"""Hot loops, compiled with numba unless ``CLATDA_DISABLE_NUMBA`` is set.

The environment variable is read once at import. Any value other than
``""``, ``"0"`` or ``"false"`` selects the numpy fallback. The fallback is
also used when numba cannot be imported.
"""

import os

from . import _numpy

_flag = os.environ.get("CLATDA_DISABLE_NUMBA", "").strip().lower()

if _flag in ("", "0", "false"):
    try:
        from . import _numba as backend
    except ImportError:  # pragma: no cover - numba missing
        backend = _numpy
else:
    backend = _numpy

BACKEND = "numba" if backend is not _numpy else "numpy"

pairwise_distances = backend.pairwise_distances
directed_hausdorff = backend.directed_hausdorff
count_cofaces = backend.count_cofaces
expand_cofaces = backend.expand_cofaces
reduce_columns = backend.reduce_columns
merge_deaths = backend.merge_deaths
maximum_matching = backend.maximum_matching

__all__ = [
    "BACKEND",
    "pairwise_distances",
    "directed_hausdorff",
    "count_cofaces",
    "expand_cofaces",
    "reduce_columns",
    "merge_deaths",
    "maximum_matching",
]
