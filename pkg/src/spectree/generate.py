"""Isomorphism-free generation of free and rooted trees.

Rooted trees come from the Beyer-Hedetniemi successor on canonical level
sequences. Free trees use the Wright-Richmond-Odlyzko-McKay refinement of the
same successor, which only visits level sequences rooted at a tree centre.
Free trees are re-keyed by :func:`canonical_code` and emitted in ascending
code order so that every consumer sees the same stream.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Sequence

from .graph import CanonicalCode, RootedTree, TreeGraph, canonical_code, from_levels


def _next_rooted(seq: list[int], p: int | None = None) -> list[int] | None:
    """Beyer-Hedetniemi successor; ``None`` after the star."""
    if p is None:
        p = len(seq) - 1
        while p > 0 and seq[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while seq[q] != seq[p] - 1:
        q -= 1
    out = list(seq)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(seq: Sequence[int]) -> tuple[list[int], list[int]]:
    """First subtree of the root (re-based to depth 0) and the remainder."""
    m = len(seq)
    for i in range(2, len(seq)):
        if seq[i] == 1:
            m = i
            break
    left = [d - 1 for d in seq[1:m]]
    rest = [0] + list(seq[m:])
    return left, rest


def _next_free(seq: list[int]) -> list[int]:
    """Smallest valid centre-rooted sequence at or after ``seq``."""
    left, rest = _split(seq)
    hl, hr = max(left), max(rest)
    ok = hr >= hl
    if ok and hr == hl:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            ok = False
    if ok:
        return seq
    p = len(left)
    nxt = _next_rooted(seq, p)
    assert nxt is not None
    if seq[p] > 2:
        new_left, _ = _split(nxt)
        tail = list(range(1, max(new_left) + 2))
        nxt[len(nxt) - len(tail) :] = tail
    return nxt


def _raw_free_sequences(n: int) -> Iterator[list[int]]:
    if n <= 3:
        yield list(range(n)) if n < 3 else [0, 1, 1]
        return
    seq: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while seq is not None:
        seq = _next_free(seq)
        yield seq
        seq = _next_rooted(seq)


@lru_cache(maxsize=64)
def _free_trees_sorted(n: int) -> tuple[tuple[CanonicalCode, TreeGraph], ...]:
    items = []
    for seq in _raw_free_sequences(n):
        t = from_levels(seq)
        code = canonical_code(t)
        # relabel in canonical preorder so equal codes give identical graphs
        items.append((code, from_levels(code)))
    items.sort(key=lambda it: it[0])
    return tuple(items)


def enumerate_free_trees(n: int, prefix: Sequence[int] | None = None) -> Iterator[TreeGraph]:
    """One tree per isomorphism class, ascending canonical code.

    Each tree is labeled by its canonical level sequence (vertex ``i`` is the
    ``i``-th vertex in preorder). ``prefix`` restricts the stream to codes
    starting with it, which is how the stream is split into disjoint ranges.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    pre = tuple(prefix) if prefix is not None else ()
    for code, t in _free_trees_sorted(n):
        if code[: len(pre)] == pre:
            yield t


def free_tree_codes(n: int) -> list[CanonicalCode]:
    return [code for code, _ in _free_trees_sorted(n)]


def count_free_trees(n: int) -> int:
    return len(_free_trees_sorted(n))


def enumerate_rooted_trees(n: int) -> Iterator[RootedTree]:
    """One rooted tree per rooted-isomorphism class, root at vertex 0.

    Emitted in the generator's natural order, which is descending level
    sequence starting from the path.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    seq: list[int] | None = list(range(n))
    while seq is not None:
        yield RootedTree(from_levels(seq), 0)
        seq = _next_rooted(seq)


def pair_count(n: int) -> int:
    """Unordered tree pairs on ``n`` vertices, self-pairs included."""
    t = count_free_trees(n)
    return t * (t + 1) // 2
