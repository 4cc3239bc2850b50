"""Exact characteristic polynomials of tree matrices and certified spectral radii.

Matrices: adjacency ``A``, Laplacian ``L = D - A`` and signless Laplacian
``Q = D + A``. Characteristic polynomials are exact Python integers. The
largest root is enclosed in a dyadic interval certified by Sturm counting, so
strict comparisons of spectral radii never depend on floating-point luck.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Sequence

import numpy as np

from . import poly as P
from .graph import RootedTree, TreeGraph, _orient

DEFAULT_WIDTH = Fraction(1, 10**12)


class SizeMismatch(ValueError):
    pass


class MatrixKind(enum.Enum):
    ADJACENCY = "adjacency"
    LAPLACIAN = "laplacian"
    SIGNLESS_LAPLACIAN = "signless"

    @classmethod
    def parse(cls, text: str | MatrixKind) -> MatrixKind:
        if isinstance(text, cls):
            return text
        key = text.strip().lower().replace("-", "_")
        aliases = {
            "a": cls.ADJACENCY,
            "adjacency": cls.ADJACENCY,
            "l": cls.LAPLACIAN,
            "laplacian": cls.LAPLACIAN,
            "q": cls.SIGNLESS_LAPLACIAN,
            "signless": cls.SIGNLESS_LAPLACIAN,
            "signless_laplacian": cls.SIGNLESS_LAPLACIAN,
        }
        try:
            return aliases[key]
        except KeyError:
            raise ValueError(f"unknown matrix kind {text!r}") from None


@dataclass(frozen=True)
class CharPoly:
    """Monic integer polynomial; ``coefficients[k]`` multiplies ``x**k``."""

    coefficients: tuple[int, ...]
    kind: MatrixKind

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __str__(self) -> str:
        return P.to_string(self.coefficients)


@dataclass(frozen=True)
class RootEnclosure:
    """Closed interval ``[lo, hi]`` holding the largest real root."""

    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def contains(self, x: float | Fraction, tol: float = 0.0) -> bool:
        return float(self.lo) - tol <= x <= float(self.hi) + tol

    def __float__(self) -> float:
        return float(self.mid)


def matrix(t: TreeGraph, kind: MatrixKind) -> np.ndarray:
    """Dense integer matrix of the requested kind."""
    kind = MatrixKind.parse(kind)
    n = t.n
    m = np.zeros((n, n), dtype=np.int64)
    off = -1 if kind is MatrixKind.LAPLACIAN else 1
    for u, v in t.edges():
        m[u, v] = m[v, u] = off
    if kind is not MatrixKind.ADJACENCY:
        for v in range(n):
            m[v, v] = len(t.adjacency[v])
    return m


def _diagonal(t: TreeGraph, kind: MatrixKind) -> list[int]:
    if kind is MatrixKind.ADJACENCY:
        return [0] * t.n
    return [len(nb) for nb in t.adjacency]


def _branch_polys(t: TreeGraph, diag: Sequence[int], root: int) -> tuple[P.Poly, P.Poly]:
    """``det(xI - M)`` for the whole tree and for the tree minus ``root``.

    Eliminates leaves towards ``root``. Only the products ``M[u,v] M[v,u]``
    of tree-patterned symmetric matrices enter the determinant and those are
    all 1 here, so A, L and Q differ only through the diagonal.
    """
    order, parent = _orient(t.adjacency, root)
    full: list[P.Poly] = [[1]] * t.n
    rest: list[P.Poly] = [[1]] * t.n
    for u in reversed(order):
        kids = [w for w in t.adjacency[u] if w != parent[u]]
        k = len(kids)
        # prefix[i] = prod full[kids[:i]], suffix[i] = prod full[kids[i:]]
        prefix = [[1]]
        for c in kids:
            prefix.append(P.mul(prefix[-1], full[c]))
        suffix = [[1]] * (k + 1)
        for i in range(k - 1, -1, -1):
            suffix[i] = P.mul(suffix[i + 1], full[kids[i]])
        acc = P.mul([-diag[u], 1], prefix[k])
        for i, c in enumerate(kids):
            acc = P.sub(acc, P.mul(rest[c], P.mul(prefix[i], suffix[i + 1])))
        full[u] = acc
        rest[u] = prefix[k]
    return full[root], rest[root]


def char_poly(t: TreeGraph, kind: MatrixKind | str) -> CharPoly:
    """Exact ``det(xI - M)`` for ``M`` of the given kind."""
    kind = MatrixKind.parse(kind)
    whole, _ = _branch_polys(t, _diagonal(t, kind), 0)
    return CharPoly(tuple(whole), kind)


def root_deleted_char_poly(rt: RootedTree, kind: MatrixKind | str) -> CharPoly:
    """Char poly of ``M`` with the root row and column removed.

    The remaining diagonal keeps the degrees of the full tree, which is not
    the Laplacian of the vertex-deleted forest.
    """
    kind = MatrixKind.parse(kind)
    _, rest = _branch_polys(rt.tree, _diagonal(rt.tree, kind), rt.root)
    return CharPoly(tuple(rest), kind)


def root_deleted_char_polys(t: TreeGraph, kind: MatrixKind | str) -> list[tuple[int, ...]]:
    """:func:`root_deleted_char_poly` coefficients for every root at once.

    Rerooting: ``branch[(w, v)]`` is the determinant of the branch holding
    ``w`` once ``v`` is removed, memoised over the ``2(n-1)`` directed edges.
    """
    kind = MatrixKind.parse(kind)
    adj = t.adjacency
    diag = _diagonal(t, kind)
    branch: dict[tuple[int, int], P.Poly] = {}
    inner: dict[tuple[int, int], P.Poly] = {}

    # postorder over directed edges, iterative to stay clear of recursion limits
    for v0 in range(t.n):
        for w0 in adj[v0]:
            if (w0, v0) in branch:
                continue
            stack = [(w0, v0, False)]
            while stack:
                w, v, ready = stack.pop()
                if (w, v) in branch:
                    continue
                kids = [c for c in adj[w] if c != v]
                if not ready:
                    stack.append((w, v, True))
                    stack.extend((c, w, False) for c in kids if (c, w) not in branch)
                    continue
                prefix = [[1]]
                for c in kids:
                    prefix.append(P.mul(prefix[-1], branch[(c, w)]))
                suffix = [[1]] * (len(kids) + 1)
                for i in range(len(kids) - 1, -1, -1):
                    suffix[i] = P.mul(suffix[i + 1], branch[(kids[i], w)])
                acc = P.mul([-diag[w], 1], prefix[-1])
                for i, c in enumerate(kids):
                    acc = P.sub(acc, P.mul(inner[(c, w)], P.mul(prefix[i], suffix[i + 1])))
                branch[(w, v)] = acc
                inner[(w, v)] = prefix[-1]
    out = []
    for v in range(t.n):
        acc: P.Poly = [1]
        for w in adj[v]:
            acc = P.mul(acc, branch[(w, v)])
        out.append(tuple(acc))
    return out


def charpoly_of_matrix(m: np.ndarray | Sequence[Sequence[int]]) -> list[int]:
    """Faddeev-LeVerrier over Python integers for any square integer matrix.

    Every division by ``k`` is exact for integer matrices. Used for matrices
    that are not tree-patterned and as an independent check on
    :func:`char_poly`.
    """
    a = [[int(v) for v in row] for row in m]
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- a @ mk + c_{n-k+1} I
        prod = [[sum(a[i][l] * mk[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += coeffs[n - k + 1]
        mk = prod
        tr = sum(a[i][l] * mk[l][i] for i in range(n) for l in range(n))
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact for integer input"
        coeffs[n - k] = q
    return coeffs


def _width_exponent(width: Fraction | float) -> int:
    w = Fraction(width)
    if w <= 0:
        raise ValueError("enclosure width must be positive")
    k = 0
    while Fraction(1, 1 << k) > w:
        k += 1
    return k


def _float_guess(coeffs: Sequence[int]) -> float:
    roots = np.roots([float(c) for c in reversed(coeffs)])
    real = roots.real[np.abs(roots.imag) <= 1e-6 * (1 + np.abs(roots.real))]
    if real.size == 0:
        real = roots.real
    return float(real.max())


def largest_root(
    p: CharPoly | Sequence[int],
    width: Fraction | float = DEFAULT_WIDTH,
    guess: float | None = None,
    chain: list[P.Poly] | None = None,
) -> RootEnclosure:
    """Certified enclosure ``[lo, hi]`` of the largest real root of ``p``.

    Endpoints are multiples of ``2**-k`` with ``2**-k <= width``. The Sturm
    chain certifies that no root exceeds ``hi`` and at least one root exceeds
    ``lo``. A floating-point guess only picks the starting window; the window
    widens geometrically until the certificate holds, then bisects.
    """
    coeffs = P.trim(p.coefficients if isinstance(p, CharPoly) else p)
    if len(coeffs) < 2:
        raise ValueError("constant polynomial has no roots")
    k = _width_exponent(width)
    if chain is None:
        chain = P.sturm_chain(coeffs)
    if guess is None:
        guess = _float_guess(coeffs)
    bound = P.cauchy_bound(coeffs) << k
    if not np.isfinite(guess) or abs(guess) * (1 << k) >= bound:
        guess = 0.0
    center = floor(guess * (1 << k))
    span = 0
    while True:
        lo, hi = center - span, center + 1 + span
        if lo <= -bound and hi >= bound:
            lo, hi = -bound, bound
            break
        if P.roots_above(chain, hi, k) == 0 and P.roots_above(chain, lo, k) >= 1:
            break
        span = 2 * span + 1
    if P.roots_above(chain, lo, k) < 1:
        raise ValueError("polynomial has no real roots")
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if P.roots_above(chain, mid, k) >= 1:
            lo = mid
        else:
            hi = mid
    den = 1 << k
    if P.dyadic_value(coeffs, hi, k) == 0:
        return RootEnclosure(Fraction(hi, den), Fraction(hi, den))
    return RootEnclosure(Fraction(lo, den), Fraction(hi, den))


def lambda1(t: TreeGraph, width: Fraction | float = DEFAULT_WIDTH) -> RootEnclosure:
    """Adjacency spectral radius."""
    return largest_root(char_poly(t, MatrixKind.ADJACENCY), width)


def q1(t: TreeGraph, width: Fraction | float = DEFAULT_WIDTH) -> RootEnclosure:
    """Largest Laplacian eigenvalue."""
    return largest_root(char_poly(t, MatrixKind.LAPLACIAN), width)


def cospectral(t1: TreeGraph, t2: TreeGraph, kind: MatrixKind | str) -> bool:
    if t1.n != t2.n:
        raise SizeMismatch(f"trees have {t1.n} and {t2.n} vertices")
    return char_poly(t1, kind).coefficients == char_poly(t2, kind).coefficients


def _as_dyadic(x: Fraction) -> tuple[int, int]:
    den = x.denominator
    e = den.bit_length() - 1
    if den != 1 << e:
        raise ValueError(f"{x} is not dyadic")
    return x.numerator, e


def _below(x: Fraction, e: int) -> tuple[int, int]:
    num, ex = _as_dyadic(x)
    e = max(e, ex)
    return (num << (e - ex)) - 1, e


def roots_equal(
    p1: Sequence[int],
    e1: RootEnclosure,
    p2: Sequence[int],
    e2: RootEnclosure,
    offset: int = 0,
) -> bool:
    """Certify that ``maxroot(p1) == maxroot(p2) + offset`` exactly.

    Let ``g = gcd(p1(x), p2(x - offset))``. If ``p1`` has a single root above
    ``lo1``, ``p2`` a single root above ``lo2`` and ``g`` has a root above
    ``max(lo1, lo2 + offset)``, that root is both maximal roots. ``False``
    means "not certified", not "different".
    """
    p1, p2 = P.trim(p1), P.trim(p2)
    if offset == 0 and p1 == p2:
        return True
    if e1.hi < e2.lo + offset or e2.hi + offset < e1.lo:
        return False
    e = max(_as_dyadic(e1.lo)[1], _as_dyadic(e2.lo)[1]) + 1
    a1 = _below(e1.lo, e)
    a2 = _below(e2.lo, e)
    if P.roots_above(P.sturm_chain(p1), *a1) != 1:
        return False
    if P.roots_above(P.sturm_chain(p2), *a2) != 1:
        return False
    g = P.poly_gcd(p1, P.shift(p2, offset))
    if P.degree(g) < 1:
        return False
    m = max(Fraction(a1[0], 1 << a1[1]), Fraction(a2[0], 1 << a2[1]) + offset)
    mn, me = _as_dyadic(m)
    return P.roots_above(P.sturm_chain(g), mn, me) >= 1
