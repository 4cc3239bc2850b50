import networkx as nx
import pytest

from spectree.generate import (
    count_free_trees,
    enumerate_free_trees,
    enumerate_rooted_trees,
    free_tree_codes,
    pair_count,
)
from spectree.graph import canonical_code

from conftest import ahu, prufer_trees, to_nx

# column "tree pairs" of both published tables, n = 4..16
PAPER_PAIRS = {
    4: 3, 5: 6, 6: 21, 7: 66, 8: 276, 9: 1128, 10: 5671, 11: 27730, 12: 152076,
    13: 846951, 14: 4991220, 15: 29965411, 16: 186640860,
}


def test_small_counts():
    assert [count_free_trees(n) for n in (1, 2, 3, 4, 8)] == [1, 1, 1, 2, 23]
    assert count_free_trees(16) == 19320


@pytest.mark.parametrize("n, pairs", sorted(PAPER_PAIRS.items()))
def test_pair_count_matches_tables(n, pairs):
    assert pair_count(n) == pairs
    t = count_free_trees(n)
    assert t * (t + 1) // 2 == pairs


@pytest.mark.parametrize("n", range(2, 9))
def test_free_trees_match_prufer_oracle(n):
    oracle = {canonical_code(t) for t in prufer_trees(n)}
    got = [canonical_code(t) for t in enumerate_free_trees(n)]
    assert len(got) == len(set(got))
    assert set(got) == oracle


@pytest.mark.parametrize("n", range(4, 9))
def test_free_trees_pairwise_non_isomorphic(n):
    gs = [to_nx(t) for t in enumerate_free_trees(n)]
    for i in range(len(gs)):
        for j in range(i + 1, len(gs)):
            assert not nx.is_isomorphic(gs[i], gs[j])


def test_stream_order_is_ascending_and_stable():
    codes = free_tree_codes(10)
    assert codes == sorted(codes)
    assert [canonical_code(t) for t in enumerate_free_trees(10)] == codes


def test_prefix_partition_is_disjoint_cover():
    n = 11
    whole = list(enumerate_free_trees(n))
    prefixes = sorted({c[:3] for c in free_tree_codes(n)})
    parts = [t for p in prefixes for t in enumerate_free_trees(n, prefix=p)]
    assert parts == whole


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 1), (3, 2), (4, 4)])
def test_rooted_counts_small(n, expected):
    assert sum(1 for _ in enumerate_rooted_trees(n)) == expected


@pytest.mark.parametrize("n", range(2, 8))
def test_rooted_trees_match_brute_force(n):
    oracle = {ahu(t, r) for t in prufer_trees(n) for r in range(n)}
    got = [ahu(rt.tree, rt.root) for rt in enumerate_rooted_trees(n)]
    assert len(got) == len(set(got))
    assert set(got) == oracle


def test_bad_n():
    with pytest.raises(ValueError):
        list(enumerate_free_trees(0))
