import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectree.generate import enumerate_free_trees
from spectree.measures import (
    ConjectureId,
    Gap,
    MeasureConfig,
    NonPositiveSigma,
    compare_gaps,
    conjecture_verdict,
    degree_power,
    distance,
)
from spectree.spectra import SizeMismatch, cospectral, q1

from conftest import path, random_tree, star


def f2_pair_n6():
    """The two 6-vertex trees with F2 = 20, found by exhaustive search."""
    hits = [t for t in enumerate_free_trees(6) if degree_power(t, 2) == 20]
    assert len(hits) == 2
    return hits


def test_degree_power(rng):
    for _ in range(30):
        t = random_tree(rng.randint(1, 15), rng)
        assert degree_power(t, 1) == 2 * (t.n - 1)
        assert degree_power(t, 0) == t.n
    assert degree_power(star(6), 2) == 30
    assert [degree_power(t, 2) for t in f2_pair_n6()] == [20, 20]


def test_distance_values():
    assert distance(3.0, 3.0) == 0.0
    assert distance(1.0, 3.0, 2.0) == pytest.approx(1 - math.exp(-1), abs=1e-12)
    assert distance(0.0, 2.0, 1.0) == pytest.approx(0.9816844, abs=1e-7)
    with pytest.raises(NonPositiveSigma):
        distance(1.0, 2.0, 0.0)
    with pytest.raises(NonPositiveSigma):
        MeasureConfig(sigma=-1.0)


@given(
    st.floats(-50, 50), st.floats(-50, 50), st.floats(0.01, 100)
)
def test_distance_properties(a, b, s):
    d = distance(a, b, s)
    assert d == distance(b, a, s)
    assert 0.0 <= d < 1.0 or (d == 1.0 and abs(a - b) / s > 5)
    if a == b:
        assert d == 0.0


@given(st.floats(0, 5), st.floats(0, 5), st.floats(0.1, 10))
def test_distance_monotone_in_gap(g1, g2, s):
    if g1 < g2:
        assert distance(0, g1, s) <= distance(0, g2, s)


def test_compare_gaps():
    assert compare_gaps(Gap(Fraction(0), Fraction(0)), Gap(Fraction(1), Fraction(2))) is True
    assert compare_gaps(Gap(Fraction(0), Fraction(0)), Gap(Fraction(0), Fraction(0))) is False
    assert compare_gaps(Gap(Fraction(1), Fraction(3)), Gap(Fraction(2), Fraction(4))) is None


@pytest.mark.parametrize("c", list(ConjectureId))
def test_self_pair_holds(c):
    t = path(7)
    v = conjecture_verdict(t, t, c)
    assert v.holds and v.decided_exactly


def test_figure2_pair_cj2():
    a, b = f2_pair_n6()
    v = conjecture_verdict(a, b, "cj2")
    assert v.counterexample
    assert v.lhs_gap.lo == v.lhs_gap.hi == 0
    qs = sorted(float(q1(t).mid) for t in (a, b))
    assert qs[0] == pytest.approx(4.214320, abs=1e-5)
    assert qs[1] == pytest.approx(4.302776, abs=1e-5)
    assert v.rhs_gap.mid == pytest.approx(4.302776 - 4.214320, abs=2e-5)


def test_cj1_on_laplacian_cospectral_pairs():
    groups = {}
    from spectree.spectra import char_poly

    for t in enumerate_free_trees(11):
        groups.setdefault(char_poly(t, "laplacian").coefficients, []).append(t)
    pairs = [(g[0], g[1]) for g in groups.values() if len(g) > 1]
    assert pairs
    for a, b in pairs:
        v = conjecture_verdict(a, b, ConjectureId.CJ1)
        assert v.lhs_gap.hi == 0  # pinned by exact certificate
        assert v.counterexample == (not cospectral(a, b, "adjacency"))


def test_counterexample_sets_n6():
    ts = list(enumerate_free_trees(6))
    pairs = [(i, j) for i in range(len(ts)) for j in range(i, len(ts))]
    cj1 = [p for p in pairs if conjecture_verdict(ts[p[0]], ts[p[1]], "cj1").counterexample]
    cj2 = [p for p in pairs if conjecture_verdict(ts[p[0]], ts[p[1]], "cj2").counterexample]
    assert cj1 == []
    assert len(cj2) == 1
    assert {degree_power(ts[k], 2) for k in cj2[0]} == {20}


@pytest.mark.parametrize("n", [7, 8])
def test_verdicts_independent_of_sigma(n):
    ts = list(enumerate_free_trees(n))
    for c in ConjectureId:
        for i in range(len(ts)):
            for j in range(i, len(ts)):
                got = {conjecture_verdict(ts[i], ts[j], c, MeasureConfig(sigma=s)).holds for s in (0.5, 1.0, 10.0)}
                assert len(got) == 1


def test_integer_tie_is_not_a_counterexample():
    # q1 of stars is exact: |q1(K_{1,4}) - q1(K_{1,4})| = 0 ties with |dF2| = 0
    s = star(5)
    assert conjecture_verdict(s, s, "cj2").holds


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        conjecture_verdict(path(4), path(5), "cj1")


def test_conjecture_parse():
    assert ConjectureId.parse("cj3") is ConjectureId.CJ3
    assert ConjectureId.CJ3.larger == "f2" and ConjectureId.CJ3.smaller == "lambda1"
    with pytest.raises(ValueError):
        ConjectureId.parse("cj4")
