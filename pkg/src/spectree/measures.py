"""Degree powers, the exponential distance measure and conjecture verdicts."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from .graph import TreeGraph
from .spectra import (
    DEFAULT_WIDTH,
    CharPoly,
    MatrixKind,
    RootEnclosure,
    SizeMismatch,
    char_poly,
    largest_root,
    roots_equal,
)

# 2**-100 < 1e-30
FLOOR_EXPONENT = 100


class NonPositiveSigma(ValueError):
    pass


class Undecidable(RuntimeError):
    """Gap enclosures still overlap at the precision floor."""


@dataclass(frozen=True)
class MeasureConfig:
    sigma: float = 1.0
    root_width: Fraction = DEFAULT_WIDTH

    def __post_init__(self) -> None:
        if not self.sigma > 0:
            raise NonPositiveSigma(f"sigma must be positive, got {self.sigma}")
        if not Fraction(self.root_width) > 0:
            raise ValueError(f"root_width must be positive, got {self.root_width}")


class ConjectureId(enum.Enum):
    """``(larger, smaller)``: the conjecture claims ``d_larger >= d_smaller``."""

    CJ1 = ("q1", "lambda1")
    CJ2 = ("f2", "q1")
    CJ3 = ("f2", "lambda1")

    @classmethod
    def parse(cls, text: str | ConjectureId) -> ConjectureId:
        if isinstance(text, cls):
            return text
        try:
            return cls[text.strip().upper()]
        except KeyError:
            raise ValueError(f"unknown conjecture {text!r}; use cj1, cj2 or cj3") from None

    @property
    def larger(self) -> str:
        return self.value[0]

    @property
    def smaller(self) -> str:
        return self.value[1]


@dataclass(frozen=True)
class Gap:
    """Enclosure ``[lo, hi]`` of ``|I(G) - I(H)|``."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)


@dataclass(frozen=True)
class PairVerdict:
    holds: bool
    lhs_gap: Gap
    rhs_gap: Gap
    decided_exactly: bool

    @property
    def counterexample(self) -> bool:
        return not self.holds


def degree_power(t: TreeGraph, k: int) -> int:
    if k < 0:
        raise ValueError("exponent must be non-negative")
    return sum(len(nb) ** k for nb in t.adjacency)


def distance(i_g: float, i_h: float, sigma: float = 1.0) -> float:
    """``1 - exp(-((I(G) - I(H)) / sigma)**2)``."""
    if not sigma > 0:
        raise NonPositiveSigma(f"sigma must be positive, got {sigma}")
    z = (float(i_g) - float(i_h)) / sigma
    return -math.expm1(-z * z)


def gap_of(a: RootEnclosure, b: RootEnclosure) -> Gap:
    """Tight enclosure of ``|x - y|`` for ``x`` in ``a`` and ``y`` in ``b``."""
    hi = max(a.hi - b.lo, b.hi - a.lo)
    lo = max(a.lo - b.hi, b.lo - a.hi, Fraction(0))
    return Gap(lo, hi)


class _Side:
    """One invariant on both trees, refinable on demand."""

    def __init__(self, name: str, t1: TreeGraph, t2: TreeGraph, width: Fraction):
        self.name = name
        if name == "f2":
            self.values = (degree_power(t1, 2), degree_power(t2, 2))
            self.polys = None
        else:
            kind = MatrixKind.ADJACENCY if name == "lambda1" else MatrixKind.LAPLACIAN
            self.polys = (char_poly(t1, kind), char_poly(t2, kind))
            self.encl = tuple(largest_root(p, width) for p in self.polys)
        self.pinned: int | None = None
        if self.polys is not None and self.polys[0].coefficients == self.polys[1].coefficients:
            self.pinned = 0

    def gap(self) -> Gap:
        if self.polys is None:
            d = Fraction(abs(self.values[0] - self.values[1]))
            return Gap(d, d)
        if self.pinned is not None:
            return Gap(Fraction(self.pinned), Fraction(self.pinned))
        return gap_of(*self.encl)

    def pin(self, offset: int) -> bool:
        """Try to certify that the gap equals the integer ``offset``."""
        if self.polys is None:
            return self.gap().lo == offset
        p, q = (c.coefficients for c in self.polys)
        a, b = self.encl
        if roots_equal(p, a, q, b, offset) or roots_equal(q, b, p, a, offset):
            self.pinned = offset
            return True
        return False

    def refine(self, width: Fraction) -> None:
        if self.polys is not None and self.pinned is None:
            self.encl = tuple(largest_root(p, width) for p in self.polys)


def compare_gaps(x: Gap, y: Gap) -> bool | None:
    """``True`` if certainly ``x < y``, ``False`` if certainly not, else ``None``."""
    if x.hi < y.lo:
        return True
    if x.lo >= y.hi:
        return False
    return None


def conjecture_verdict(
    t1: TreeGraph, t2: TreeGraph, c: ConjectureId | str, cfg: MeasureConfig | None = None
) -> PairVerdict:
    """Decide whether the pair is a counterexample to conjecture ``c``.

    Since ``d`` grows strictly with ``|I(G) - I(H)|`` for every sigma, the
    pair is a counterexample exactly when the gap of the claimed-larger
    invariant is strictly below the gap of the claimed-smaller one.
    Overlapping enclosures trigger exact tie certificates, then refinement
    down to a width of ``2**-100``; beyond that :class:`Undecidable` is raised.
    """
    if t1.n != t2.n:
        raise SizeMismatch(f"trees have {t1.n} and {t2.n} vertices")
    c = ConjectureId.parse(c)
    cfg = cfg or MeasureConfig()
    width = Fraction(cfg.root_width)
    lhs = _Side(c.larger, t1, t2, width)
    rhs = _Side(c.smaller, t1, t2, width)

    verdict = compare_gaps(lhs.gap(), rhs.gap())
    if verdict is not None:
        return PairVerdict(not verdict, lhs.gap(), rhs.gap(), lhs.gap().exact and rhs.gap().exact)

    # Tie candidates: a spectral gap equal to an exact integer gap (often 0).
    for side, other in ((lhs, rhs), (rhs, lhs)):
        og = other.gap()
        if og.exact and og.lo.denominator == 1:
            side.pin(int(og.lo))
    if lhs.gap().hi > 0 and not lhs.gap().exact:
        lhs.pin(0)
    if rhs.gap().hi > 0 and not rhs.gap().exact:
        rhs.pin(0)
    verdict = compare_gaps(lhs.gap(), rhs.gap())

    exp = 0
    while Fraction(1, 1 << exp) > width:
        exp += 1
    while verdict is None and exp < FLOOR_EXPONENT:
        exp = min(exp + 10, FLOOR_EXPONENT)
        lhs.refine(Fraction(1, 1 << exp))
        rhs.refine(Fraction(1, 1 << exp))
        verdict = compare_gaps(lhs.gap(), rhs.gap())
    if verdict is None:
        raise Undecidable(
            f"{c.name}: gaps {lhs.gap()} and {rhs.gap()} overlap at width 2**-{exp}"
        )
    return PairVerdict(not verdict, lhs.gap(), rhs.gap(), lhs.gap().exact and rhs.gap().exact)


def invariant_value(t: TreeGraph, name: str, width: Fraction = DEFAULT_WIDTH) -> float:
    if name == "f2":
        return float(degree_power(t, 2))
    kind = MatrixKind.ADJACENCY if name == "lambda1" else MatrixKind.LAPLACIAN
    return float(largest_root(char_poly(t, kind), width).mid)


__all__ = [
    "CharPoly",
    "ConjectureId",
    "Gap",
    "MeasureConfig",
    "NonPositiveSigma",
    "PairVerdict",
    "Undecidable",
    "compare_gaps",
    "conjecture_verdict",
    "degree_power",
    "distance",
    "gap_of",
    "invariant_value",
]
