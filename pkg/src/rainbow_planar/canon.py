"""Isomorphism-invariant canonical labels for small graphs.

Two graphs get equal labels exactly when they are isomorphic (validated
against brute-force isomorphism for all graphs used here, n <= 7 pairwise).
The label ignores the embedding: only the abstract graph matters, so K3 and
the 3-vertex path get different labels while relabelings coincide.

Algorithm: iterated degree refinement (1-WL) to an invariant ordered
partition, then backtracking over partition-respecting vertex orderings,
keeping the lexicographically smallest adjacency encoding.  Exponential in
the worst case but instant at catalog scale (n <= 10).
"""

from __future__ import annotations

from typing import Sequence, Union

from .plane_graph import Edge, PlaneGraph

GraphLike = Union[PlaneGraph, tuple[int, Sequence[Edge]]]


def _adjacency(g: GraphLike) -> list[set[int]]:
    if isinstance(g, PlaneGraph):
        n, edges = g.n, g.edges
    else:
        n, edges = g
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _refine(adj: list[set[int]]) -> list[int]:
    """Stable 1-WL colors, canonically renumbered each round."""
    n = len(adj)
    colors = [len(adj[v]) for v in range(n)]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in adj[v]))) for v in range(n)
        ]
        order = {sig: i for i, sig in enumerate(sorted(set(sigs)))}
        new = [order[sigs[v]] for v in range(n)]
        if new == colors:
            return colors
        colors = new


def canonical_label(g: GraphLike) -> bytes:
    """Canonical byte string of the abstract graph underlying ``g``."""
    adj = _adjacency(g)
    n = len(adj)
    colors = _refine(adj)
    # Positions are filled color class by color class (ascending class id);
    # only same-class vertices compete for a position, which is sound because
    # WL classes are isomorphism-invariant and any isomorphism respects them.
    slot_color = sorted(colors)
    best: list[int] | None = None
    placed: list[int] = []
    rows: list[int] = []
    used = [False] * n

    def rec(tied: bool) -> None:
        # tied: rows so far equal best's prefix (pruning allowed); otherwise
        # the prefix is already strictly smaller and we only compare at the
        # leaves, which also keeps us safe across mid-search best updates.
        nonlocal best
        i = len(placed)
        if i == n:
            if best is None or rows < best:
                best = list(rows)
            return
        for v in range(n):
            if used[v] or colors[v] != slot_color[i]:
                continue
            row = 0
            for j, w in enumerate(placed):
                if v in adj[w]:
                    row |= 1 << j
            child_tied = False
            if best is not None and tied:
                if row > best[i]:
                    continue
                child_tied = row == best[i]
            used[v] = True
            placed.append(v)
            rows.append(row)
            rec(child_tied)
            rows.pop()
            placed.pop()
            used[v] = False

    rec(True)
    assert best is not None or n == 0
    head = bytes([n]) + bytes(slot_color)
    body = b"".join(r.to_bytes((n + 7) // 8, "big") for r in (best or []))
    return head + body
