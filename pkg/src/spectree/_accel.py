# Use numba when present and not disabled via SPECTREE_DISABLE_NUMBA=1;
# otherwise callers take the pure-numpy paths.

from __future__ import annotations

import logging
import os
import warnings

logger = logging.getLogger(__name__)

_disabled = os.environ.get("SPECTREE_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

# old TBB builds trigger a harmless warning when numba picks a threading layer
warnings.filterwarnings("ignore", message=".*TBB.*")

try:
    if _disabled:
        raise ImportError("disabled by SPECTREE_DISABLE_NUMBA")
    import numba

    njit = numba.njit
    prange = numba.prange
    HAVE_NUMBA = True
except ImportError as exc:  # pragma: no cover - depends on environment
    logger.debug("numba unavailable (%s); using numpy kernels", exc)
    numba = None
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        def wrap(func):
            return func

        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return wrap

    prange = range


def set_threads(k: int | None) -> int:
    """Clamp and apply the numba thread count; returns the count in effect."""
    if not HAVE_NUMBA:
        return 1
    limit = numba.config.NUMBA_NUM_THREADS
    k = limit if k is None or k <= 0 else min(k, limit)
    numba.set_num_threads(k)
    return k
