import random

import pytest

from spectree.coalescence import (
    CertificationFailure,
    NotCospectrallyRooted,
    all_rootings,
    coalesce,
    cospectrally_rooted,
    find_cospectrally_rooted_pairs,
    generate_family,
    rooted_trees_up_to,
    single_vertex,
)
from spectree.generate import enumerate_free_trees
from spectree.graph import RootedTree, canonical_code, decode_graph6, degree_sequence, from_edges
from spectree.spectra import MatrixKind, SizeMismatch, cospectral

from conftest import path, random_tree, star

# Smallest Laplacian cospectrally rooted pairs with non-isomorphic trees, from
# an exhaustive search at n = 17 (none exist for n <= 15; n = 16 only has one
# tree with two equivalent-spectrum roots).
LAPLACIAN_SEEDS_17 = [
    ("PhCG_E??G?_@?A?GO???@??C", 8, "PhCG_C__??_@?@?@O???@??C", 2),
    ("PhCG_C__??_@?@?@O???@??C", 9, "PhCG_E??G?_@?A?GO???@??C", 2),
    ("PhCG_E??G?_@?A?GO???@??C", 13, "PhCG_C__??_@?@?@O???@??C", 8),
]


def seed(a, u, b, v):
    return RootedTree(decode_graph6(a), u), RootedTree(decode_graph6(b), v)


def test_coalesce_identity_and_p3():
    g = RootedTree(random_tree(7, random.Random(3)), 2)
    assert coalesce(g, single_vertex()) == g.tree
    end = RootedTree(path(2), 0)
    assert canonical_code(coalesce(end, end)) == canonical_code(path(3))


def test_coalesce_star_with_path():
    t = coalesce(RootedTree(star(4), 0), RootedTree(path(3), 0))
    assert t.n == 6
    assert len(t.adjacency[0]) == 4
    assert degree_sequence(t) == [4, 2, 1, 1, 1, 1]


def test_coalesce_bookkeeping(rng):
    for _ in range(200):
        g = RootedTree(random_tree(rng.randint(1, 8), rng), 0)
        g = RootedTree(g.tree, rng.randrange(g.tree.n))
        k = RootedTree(random_tree(rng.randint(1, 8), rng), 0)
        k = RootedTree(k.tree, rng.randrange(k.tree.n))
        t = coalesce(g, k)
        assert t.n == g.tree.n + k.tree.n - 1
        assert len(t.edges()) == t.n - 1
        assert len(t.adjacency[g.root]) == len(g.tree.adjacency[g.root]) + len(k.tree.adjacency[k.root])


def test_cospectrally_rooted_basic():
    g = RootedTree(path(5), 1)
    assert cospectrally_rooted(g, g, "laplacian")
    assert not cospectrally_rooted(RootedTree(path(4), 0), RootedTree(path(4), 1), "adjacency")
    with pytest.raises(SizeMismatch):
        cospectrally_rooted(RootedTree(path(4), 0), RootedTree(path(5), 0), "adjacency")


@pytest.mark.parametrize("n", range(2, 11))
def test_no_small_laplacian_pairs(n):
    assert find_cospectrally_rooted_pairs(n, "laplacian") == []


def test_adjacency_pairs_start_at_nine():
    assert find_cospectrally_rooted_pairs(8, "adjacency") == []
    (g, h), = find_cospectrally_rooted_pairs(9, "adjacency")
    assert cospectrally_rooted(g, h, MatrixKind.ADJACENCY)
    assert len(find_cospectrally_rooted_pairs(10, "adjacency")) == 3


def test_search_matches_brute_force_over_rootings():
    n = 10
    rts = all_rootings(list(enumerate_free_trees(n)))
    brute = sum(
        cospectrally_rooted(rts[i], rts[j], "adjacency")
        for i in range(len(rts))
        for j in range(i + 1, len(rts))
    )
    assert brute == len(find_cospectrally_rooted_pairs(n, "adjacency"))


@pytest.mark.parametrize("s", LAPLACIAN_SEEDS_17)
def test_frozen_laplacian_seeds(s):
    g, h = seed(*s)
    assert g.tree.n == 17
    assert cospectrally_rooted(g, h, "laplacian")
    assert canonical_code(g.tree) != canonical_code(h.tree)


def test_theorem_adjacency_small():
    attachments = rooted_trees_up_to(5)
    for n in (9, 10):
        for g, h in find_cospectrally_rooted_pairs(n, "adjacency"):
            for k in attachments:
                assert cospectral(coalesce(g, k), coalesce(h, k), "adjacency")


@pytest.mark.parametrize("kind", [MatrixKind.LAPLACIAN, MatrixKind.SIGNLESS_LAPLACIAN])
def test_theorem_laplacian_frozen_seeds(kind):
    for s in LAPLACIAN_SEEDS_17:
        g, h = seed(*s)
        fam = generate_family(g, h, kind, rooted_trees_up_to(5))
        assert len(fam) > 0
        for m in fam:
            assert cospectral(m.first, m.second, kind)


def test_family_seed_only():
    g, h = seed(*LAPLACIAN_SEEDS_17[0])
    (m,) = generate_family(g, h, "laplacian", [single_vertex()])
    assert m.first == g.tree and m.second == h.tree


def test_family_rejects_non_seed():
    with pytest.raises(NotCospectrallyRooted):
        generate_family(RootedTree(path(4), 0), RootedTree(star(4), 0), "laplacian", [single_vertex()])


def test_certification_failure_is_raised(monkeypatch):
    import spectree.coalescence as co

    g, h = seed(*LAPLACIAN_SEEDS_17[0])
    monkeypatch.setattr(co, "cospectral", lambda a, b, kind: False)
    with pytest.raises(CertificationFailure):
        generate_family(g, h, "laplacian", [RootedTree(path(2), 0)])
