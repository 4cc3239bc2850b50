"""Tree representation, validation, canonical level codes and graph6 I/O."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class GraphError(ValueError):
    """Base class for invalid graph input."""


class NotATree(GraphError):
    pass


class BadIndex(GraphError):
    pass


class DuplicateEdge(GraphError):
    pass


class MalformedGraph6(GraphError):
    pass


@dataclass(frozen=True)
class TreeGraph:
    """A labeled tree on vertices ``0..n-1``.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``. Build
    instances through :func:`from_edges` so the tree invariants are checked.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adjacency]

    def __repr__(self) -> str:
        return f"TreeGraph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class RootedTree:
    tree: TreeGraph
    root: int

    def __post_init__(self) -> None:
        if not 0 <= self.root < self.tree.n:
            raise BadIndex(f"root {self.root} outside [0, {self.tree.n})")

    @property
    def n(self) -> int:
        return self.tree.n


CanonicalCode = tuple[int, ...]


def from_edges(n: int, edges: Iterable[Sequence[int]]) -> TreeGraph:
    """Validate an edge list and return the corresponding :class:`TreeGraph`."""
    if n < 1:
        raise NotATree(f"a tree needs at least one vertex, got n={n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    m = 0
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise BadIndex(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise NotATree(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            raise DuplicateEdge(f"edge ({u}, {v}) listed twice")
        nbrs[u].add(v)
        nbrs[v].add(u)
        m += 1
    if m != n - 1:
        raise NotATree(f"{m} edges on {n} vertices; a tree has {n - 1}")
    seen = [False] * n
    seen[0] = True
    stack = [0]
    while stack:
        u = stack.pop()
        for w in nbrs[u]:
            if not seen[w]:
                seen[w] = True
                stack.append(w)
    if not all(seen):
        # n - 1 edges and disconnected means there is a cycle somewhere
        raise NotATree("graph is disconnected (and therefore contains a cycle)")
    return TreeGraph(n, tuple(tuple(sorted(s)) for s in nbrs))


def from_levels(levels: Sequence[int]) -> TreeGraph:
    """Tree of a level sequence (preorder depths, root first at depth 0)."""
    if not levels or levels[0] != 0:
        raise NotATree("level sequence must start with the root at depth 0")
    edges = []
    last_at_depth: list[int] = [0]
    for v in range(1, len(levels)):
        d = levels[v]
        if d < 1 or d > len(last_at_depth):
            raise NotATree(f"invalid depth {d} at position {v}")
        edges.append((last_at_depth[d - 1], v))
        del last_at_depth[d:]
        last_at_depth.append(v)
    return from_edges(len(levels), edges)


def relabel(t: TreeGraph, perm: Sequence[int]) -> TreeGraph:
    """Return the tree with vertex ``v`` renamed to ``perm[v]``."""
    return from_edges(t.n, [(perm[u], perm[v]) for u, v in t.edges()])


def degree_sequence(t: TreeGraph) -> list[int]:
    return sorted(t.degrees(), reverse=True)


def _orient(adj: Sequence[Sequence[int]], root: int) -> tuple[list[int], list[int]]:
    """Preorder vertex list and parent array of the tree hung from ``root``."""
    n = len(adj)
    parent = [-1] * n
    order = [root]
    parent[root] = root
    i = 0
    while i < len(order):
        u = order[i]
        i += 1
        for w in adj[u]:
            if parent[w] == -1:
                parent[w] = u
                order.append(w)
    parent[root] = -1
    return order, parent


def centroids(t: TreeGraph) -> list[int]:
    """The one or two vertices minimising the largest remaining component."""
    n = t.n
    if n == 1:
        return [0]
    order, parent = _orient(t.adjacency, 0)
    size = [1] * n
    for u in reversed(order[1:]):
        size[parent[u]] += size[u]
    best: list[int] = []
    best_val = n + 1
    for u in range(n):
        worst = n - size[u]
        for w in t.adjacency[u]:
            if w != parent[u]:
                worst = max(worst, size[w])
        if worst < best_val:
            best, best_val = [u], worst
        elif worst == best_val:
            best.append(u)
    return best


def rooted_code(t: TreeGraph, root: int) -> CanonicalCode:
    """Lexicographically maximal level sequence of ``t`` hung from ``root``."""
    order, parent = _orient(t.adjacency, root)
    kids: list[list[tuple[int, ...]]] = [[] for _ in range(t.n)]
    code: tuple[int, ...] = ()
    for u in reversed(order):
        parts = sorted(kids[u], reverse=True)
        code = (0,) + tuple(d + 1 for part in parts for d in part)
        if parent[u] >= 0:
            kids[parent[u]].append(code)
    return code


def canonical_code(t: TreeGraph) -> CanonicalCode:
    """Isomorphism-invariant key: best level sequence over centroid rootings."""
    return max(rooted_code(t, c) for c in centroids(t))


# graph6 ---------------------------------------------------------------------


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def encode_graph6(t: TreeGraph) -> bytes:
    """graph6 bytes (no header, no trailing newline)."""
    n = t.n
    adj = [set(nb) for nb in t.adjacency]
    bits = [1 if i in adj[j] else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(
        63 + sum(b << (5 - k) for k, b in enumerate(bits[i : i + 6]))
        for i in range(0, len(bits), 6)
    )
    return _encode_n(n) + body


def decode_graph6(data: bytes | str) -> TreeGraph:
    """Inverse of :func:`encode_graph6`; rejects non-tree graphs."""
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise MalformedGraph6("empty graph6 string")
    if any(not 63 <= b <= 126 for b in data):
        raise MalformedGraph6("byte outside the printable graph6 range 63..126")
    vals = [b - 63 for b in data]
    if vals[0] < 63:
        n, pos = vals[0], 1
    elif len(vals) >= 4 and vals[1] < 63:
        n, pos = (vals[1] << 12) | (vals[2] << 6) | vals[3], 4
    elif len(vals) >= 8 and vals[1] == 63:
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    else:
        raise MalformedGraph6("truncated vertex-count header")
    nbits = n * (n - 1) // 2
    body = vals[pos:]
    if len(body) != (nbits + 5) // 6:
        raise MalformedGraph6(
            f"expected {(nbits + 5) // 6} data bytes for n={n}, got {len(body)}"
        )
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if (body[k // 6] >> (5 - k % 6)) & 1:
                edges.append((i, j))
            k += 1
    if n == 0:
        raise MalformedGraph6("graph with zero vertices")
    return from_edges(n, edges)
