"""Kernel backend selection.

The compiled extension is used when it was built; otherwise the numpy
fallback takes over.  ``CUBEFREE_BACKEND=pure`` forces the fallback, which the
benchmark and the parity tests rely on.  The compiled cube search only covers
universes up to 63 bits, so ``cube_search_any`` dispatches per call.
"""

import os

from . import pure

BACKEND = "pure"
impl = pure
if os.environ.get("CUBEFREE_BACKEND", "").lower() != "pure":
    try:
        from . import _ext

        impl = _ext
        BACKEND = "ext"
    except ImportError:
        pass

subset_scan_max = impl.subset_scan_max
dfs_bnb_max = impl.dfs_bnb_max
alternating_walk = impl.alternating_walk

_EXT_MASK_BITS = 63


def cube_search_any(n: int, d: int, amask: int, cyclic: bool):
    if BACKEND == "ext" and n <= _EXT_MASK_BITS:
        return impl.cube_search(n, d, amask, cyclic)
    return pure.cube_search(n, d, amask, cyclic)
