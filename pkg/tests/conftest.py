from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from spectree.graph import TreeGraph, from_edges

# filled by test_acceptance.report, echoed once the session ends
CRITERIA_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA_LINES, key=lambda s: int(s.split()[1].rstrip("]"))):
            terminalreporter.write_line(line)


def prufer_trees(n: int):
    """Every labeled tree on n >= 2 vertices, decoded from Prüfer sequences."""
    if n == 2:
        yield from_edges(2, [(0, 1)])
        return
    for seq in itertools.product(range(n), repeat=n - 2):
        degree = [1] * n
        for v in seq:
            degree[v] += 1
        edges = []
        for v in seq:
            leaf = min(u for u in range(n) if degree[u] == 1)
            edges.append((leaf, v))
            degree[leaf] -= 1
            degree[v] -= 1
        u, w = [x for x in range(n) if degree[x] == 1]
        edges.append((u, w))
        yield from_edges(n, edges)


def to_nx(t: TreeGraph) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(t.n))
    g.add_edges_from(t.edges())
    return g


def ahu(t: TreeGraph, root: int) -> str:
    """Rooted-tree isomorphism string (Aho-Hopcroft-Ullman), written separately from the library."""

    def enc(v, parent):
        return "(" + "".join(sorted(enc(w, v) for w in t.adjacency[v] if w != parent)) + ")"

    return enc(root, -1)


def random_tree(n: int, rng: random.Random) -> TreeGraph:
    return from_edges(n, [(v, rng.randrange(v)) for v in range(1, n)])


def star(n: int) -> TreeGraph:
    return from_edges(n, [(0, v) for v in range(1, n)])


def path(n: int) -> TreeGraph:
    return from_edges(n, [(v, v + 1) for v in range(n - 1)])


@pytest.fixture
def rng():
    return random.Random(20191)
