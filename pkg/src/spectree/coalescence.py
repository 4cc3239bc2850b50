"""Rooted coalescence and cospectral tree families built from it.

If ``(G, u)`` and ``(H, v)`` are cospectral and stay cospectral after deleting
the root row and column, then ``G.K`` and ``H.K`` are cospectral for every
rooted ``(K, w)``. A Laplacian-cospectrally rooted seed pair whose adjacency
spectra differ therefore yields an unbounded family of tree pairs with equal
``q1`` and different ``lambda1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .generate import enumerate_free_trees, enumerate_rooted_trees
from .graph import RootedTree, TreeGraph, canonical_code, from_edges, rooted_code
from .spectra import (
    MatrixKind,
    SizeMismatch,
    char_poly,
    cospectral,
    root_deleted_char_poly,
    root_deleted_char_polys,
)


class NotCospectrallyRooted(ValueError):
    pass


class CertificationFailure(RuntimeError):
    """A coalesced pair failed the exact cospectrality check."""


def coalesce(g: RootedTree, k: RootedTree) -> TreeGraph:
    """Identify ``g.root`` with ``k.root``.

    Vertices of ``g`` keep their labels; the non-root vertices of ``k``
    follow in increasing order from ``g.n``.
    """
    ng = g.tree.n
    label = {}
    nxt = ng
    for v in range(k.tree.n):
        if v == k.root:
            label[v] = g.root
        else:
            label[v] = nxt
            nxt += 1
    edges = g.tree.edges() + [(label[a], label[b]) for a, b in k.tree.edges()]
    return from_edges(ng + k.tree.n - 1, edges)


def _rooted_key(rt: RootedTree, kind: MatrixKind) -> tuple:
    return (char_poly(rt.tree, kind).coefficients, root_deleted_char_poly(rt, kind).coefficients)


def cospectrally_rooted(g: RootedTree, h: RootedTree, kind: MatrixKind | str) -> bool:
    kind = MatrixKind.parse(kind)
    if g.tree.n != h.tree.n:
        raise SizeMismatch(f"rooted trees have {g.tree.n} and {h.tree.n} vertices")
    return _rooted_key(g, kind) == _rooted_key(h, kind)


def find_cospectrally_rooted_pairs(
    n: int, kind: MatrixKind | str = MatrixKind.LAPLACIAN
) -> list[tuple[RootedTree, RootedTree]]:
    """All unordered pairs of distinct rooted trees on ``n`` vertices that are
    cospectrally rooted, ordered by the rooted level codes of their members.

    Every free tree is rooted at every vertex; candidates are bucketed by a
    hash of (char poly, root-deleted char poly) and confirmed exactly.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    kind = MatrixKind.parse(kind)
    trees = list(enumerate_free_trees(n))
    buckets: dict[int, list[tuple[int, int]]] = {}
    whole = []
    deleted = []
    for ti, t in enumerate(trees):
        whole.append(char_poly(t, kind).coefficients)
        deleted.append(root_deleted_char_polys(t, kind))
        for v in range(n):
            buckets.setdefault(hash((whole[ti], deleted[ti][v])), []).append((ti, v))
    found = []
    for members in buckets.values():
        if len(members) < 2:
            continue
        exact: dict[tuple, dict[tuple[int, ...], RootedTree]] = {}
        for ti, v in members:
            key = (whole[ti], deleted[ti][v])
            code = rooted_code(trees[ti], v)
            exact.setdefault(key, {}).setdefault(code, RootedTree(trees[ti], v))
        for classes in exact.values():
            items = sorted(classes.items())
            for a in range(len(items)):
                for b in range(a + 1, len(items)):
                    found.append((items[a][0], items[b][0], items[a][1], items[b][1]))
    found.sort(key=lambda p: (p[0], p[1]))
    return [(p[2], p[3]) for p in found]


@dataclass(frozen=True)
class FamilyMember:
    attachment: RootedTree
    first: TreeGraph
    second: TreeGraph


def generate_family(
    g: RootedTree,
    h: RootedTree,
    kind: MatrixKind | str,
    attachments: Iterable[RootedTree],
) -> list[FamilyMember]:
    """``(g.K, h.K)`` for each attachment ``K``, each pair certified cospectral.

    Pairs whose two members are isomorphic are skipped.
    """
    kind = MatrixKind.parse(kind)
    if not cospectrally_rooted(g, h, kind):
        raise NotCospectrallyRooted("seed trees are not cospectrally rooted for " + kind.value)
    out = []
    for k in attachments:
        a, b = coalesce(g, k), coalesce(h, k)
        if not cospectral(a, b, kind):
            raise CertificationFailure(
                f"{kind.value} spectra differ after attaching {k.tree!r} at {k.root}"
            )
        if canonical_code(a) != canonical_code(b):
            out.append(FamilyMember(k, a, b))
    return out


def single_vertex() -> RootedTree:
    return RootedTree(from_edges(1, []), 0)


def rooted_trees_up_to(m: int) -> list[RootedTree]:
    """Every rooted tree with at most ``m`` vertices (one per class)."""
    return [rt for size in range(1, m + 1) for rt in enumerate_rooted_trees(size)]


def all_rootings(ts: Sequence[TreeGraph]) -> list[RootedTree]:
    """Each tree rooted at every vertex, deduplicated up to rooted isomorphism."""
    seen = set()
    out = []
    for t in ts:
        for v in range(t.n):
            key = rooted_code(t, v)
            if key not in seen:
                seen.add(key)
                out.append(RootedTree(t, v))
    return out
