"""Pair-sweep kernels: classify every unordered pair ``i <= j``.

Per tree ``i`` and invariant ``k`` (0 = F2, 1 = q1, 2 = lambda1) the kernels
receive an outward-rounded enclosure ``[lo[k, i], hi[k, i]]`` and a class id
``cls[k, i]``; equal ids mean the values are certified equal. For F2 the
enclosure is the exact integer and the class id is the value itself.

Each conjecture is a pair ``(x, y)`` of invariant indices; a pair of trees
is a counterexample when ``gap_x < gap_y`` with certainty. Outcomes:
0 holds, 1 counterexample, 2 undecided at this precision (handed back to
exact arithmetic). ``tol`` absorbs float rounding in the subtractions.
"""

from __future__ import annotations

import numpy as np

from ._accel import HAVE_NUMBA, njit, prange

EXACT = np.array([True, False, False])


@njit(cache=True, inline="always")
def _gap(lo, hi, cls, k, i, j):
    if cls[k, i] == cls[k, j]:
        return 0.0, 0.0, True
    a = lo[k, i] - hi[k, j]
    b = lo[k, j] - hi[k, i]
    g_lo = max(a, b, 0.0)
    g_hi = max(hi[k, i] - lo[k, j], hi[k, j] - lo[k, i])
    return g_lo, g_hi, k == 0


@njit(cache=True)
def _classify(lo, hi, cls, x, y, i, j, tol):
    xl, xh, xe = _gap(lo, hi, cls, x, i, j)
    yl, yh, ye = _gap(lo, hi, cls, y, i, j)
    if xe and ye:
        return 1 if xl < yl else 0
    if xh + tol < yl:
        return 1
    if xl >= yh + tol:
        return 0
    return 2


@njit(cache=True, parallel=True)
def _sweep_numba(lo, hi, cls, conj, tol):
    t = lo.shape[1]
    nc = conj.shape[0]
    cex = np.zeros((t, nc), dtype=np.int64)
    amb = np.zeros((t, nc), dtype=np.int64)
    for i in prange(t):
        for j in range(i + 1, t):
            for c in range(nc):
                r = _classify(lo, hi, cls, conj[c, 0], conj[c, 1], i, j, tol)
                if r == 1:
                    cex[i, c] += 1
                elif r == 2:
                    amb[i, c] += 1
    return cex, amb


@njit(cache=True)
def _row_ambiguous_numba(lo, hi, cls, conj, tol, i, c):
    t = lo.shape[1]
    out = np.empty(t, dtype=np.int64)
    m = 0
    for j in range(i + 1, t):
        if _classify(lo, hi, cls, conj[c, 0], conj[c, 1], i, j, tol) == 2:
            out[m] = j
            m += 1
    return out[:m]


def _row_numpy(lo, hi, cls, x, y, i, tol):
    """Outcome codes for pairs ``(i, j)``, ``j > i``, vectorised over ``j``."""

    def gap(k):
        same = cls[k, i + 1 :] == cls[k, i]
        a = lo[k, i] - hi[k, i + 1 :]
        b = lo[k, i + 1 :] - hi[k, i]
        g_lo = np.maximum(np.maximum(a, b), 0.0)
        g_hi = np.maximum(hi[k, i] - lo[k, i + 1 :], hi[k, i + 1 :] - lo[k, i])
        g_lo[same] = 0.0
        g_hi[same] = 0.0
        exact = same | EXACT[k]
        return g_lo, g_hi, exact

    xl, xh, xe = gap(x)
    yl, yh, ye = gap(y)
    out = np.full(xl.shape, 2, dtype=np.int8)
    out[xl >= yh + tol] = 0
    out[xh + tol < yl] = 1
    both = xe & ye
    out[both] = (xl[both] < yl[both]).astype(np.int8)
    return out


def _sweep_numpy(lo, hi, cls, conj, tol):
    t = lo.shape[1]
    nc = conj.shape[0]
    cex = np.zeros((t, nc), dtype=np.int64)
    amb = np.zeros((t, nc), dtype=np.int64)
    for i in range(t - 1):
        for c in range(nc):
            r = _row_numpy(lo, hi, cls, int(conj[c, 0]), int(conj[c, 1]), i, tol)
            cex[i, c] = np.count_nonzero(r == 1)
            amb[i, c] = np.count_nonzero(r == 2)
    return cex, amb


def sweep(lo, hi, cls, conj, tol, use_numba: bool | None = None):
    """Per-row counterexample and undecided counts, shape ``(t, len(conj))``.

    Self-pairs ``(i, i)`` are never counterexamples and are not visited.
    """
    lo = np.ascontiguousarray(lo, dtype=np.float64)
    hi = np.ascontiguousarray(hi, dtype=np.float64)
    cls = np.ascontiguousarray(cls, dtype=np.int64)
    conj = np.ascontiguousarray(conj, dtype=np.int64)
    if use_numba is None:
        use_numba = HAVE_NUMBA
    if use_numba:
        return _sweep_numba(lo, hi, cls, conj, float(tol))
    return _sweep_numpy(lo, hi, cls, conj, float(tol))


def ambiguous_pairs(lo, hi, cls, conj, tol, amb, use_numba: bool | None = None):
    """``(i, j, c)`` triples the sweep left undecided, in row-major order."""
    lo = np.ascontiguousarray(lo, dtype=np.float64)
    hi = np.ascontiguousarray(hi, dtype=np.float64)
    cls = np.ascontiguousarray(cls, dtype=np.int64)
    conj = np.ascontiguousarray(conj, dtype=np.int64)
    if use_numba is None:
        use_numba = HAVE_NUMBA
    out = []
    for i, c in zip(*np.nonzero(amb)):
        if use_numba:
            js = _row_ambiguous_numba(lo, hi, cls, conj, float(tol), int(i), int(c))
        else:
            r = _row_numpy(lo, hi, cls, int(conj[c, 0]), int(conj[c, 1]), int(i), tol)
            js = np.nonzero(r == 2)[0] + i + 1
        out.extend((int(i), int(j), int(c)) for j in js)
    return out
