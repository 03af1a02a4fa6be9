"""Pick the compiled kernels when available, else the pure-Python ones.

Set ``SPARSEBNSL_PURE_PYTHON=1`` to force the fallback.  The compiled
kernels use 64-bit arithmetic, so inputs whose magnitudes could overflow are
always routed to the Python kernels (which use arbitrary precision).
"""

from __future__ import annotations

import os

from . import _pykernels

# headroom for dual updates and DP sums in signed 64-bit
SAFE_LIMIT = 2**60

_compiled = None
if not os.environ.get("SPARSEBNSL_PURE_PYTHON"):
    try:
        from . import _ckernels as _compiled
    except ImportError:
        _compiled = None

BACKEND = "cython" if _compiled is not None else "python"


def mwm_mates(n, edges, *, force_python: bool = False):
    if _compiled is None or force_python:
        return _pykernels.mwm_mates(n, edges)
    if edges and max(w for _, _, w in edges) >= SAFE_LIMIT:
        return _pykernels.mwm_mates(n, edges)
    return _compiled.mwm_mates(n, edges)


def colored_dp(ncolors, k, colors, cand_vertex, cand_score, cand_size, cand_start,
               members, empty, *, score_bound: int = 0, force_python: bool = False):
    """``score_bound`` must upper-bound every partial DP sum (callers pass the
    sum of per-vertex maxima plus the empty-set total)."""
    args = (ncolors, k, colors, cand_vertex, cand_score, cand_size, cand_start, members, empty)
    if _compiled is None or force_python or score_bound >= SAFE_LIMIT:
        return _pykernels.colored_dp(*args)
    return _compiled.colored_dp(*args)
