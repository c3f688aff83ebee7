"""Exact subgraph search: rainbow copies, plain containment, longest paths.

Everything here is exhaustive backtracking over vertex bitmasks; exactness is
the contract.  Rainbow searches additionally carry a used-color set so a
partial copy is abandoned as soon as it repeats a color, which is what makes
the "no rainbow P_k" exhaustions cheap on the hosts built by this library
(inside a stellated face all edges share one color, so such a vertex can
never be interior to a rainbow path).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import PatternTooLargeError, TooLargeError
from .plane_graph import Edge, PlaneGraph

DEFAULT_PATH_BUDGET = 40
DEFAULT_GRAPH_BUDGET = 10


@dataclass(frozen=True)
class Pattern:
    """A search pattern: P_k, C_k, or an arbitrary small graph."""

    kind: str  # "path" | "cycle" | "graph"
    k: int = 0
    graph_n: int = 0
    graph_edges: tuple[Edge, ...] = ()

    @staticmethod
    def path(k: int) -> "Pattern":
        if k < 1:
            raise ValueError("paths need k >= 1 vertices")
        return Pattern(kind="path", k=k)

    @staticmethod
    def cycle(k: int) -> "Pattern":
        if k < 3:
            raise ValueError("cycles need k >= 3 vertices")
        return Pattern(kind="cycle", k=k)

    @staticmethod
    def subgraph(n: int, edges: Iterable[tuple[int, int]]) -> "Pattern":
        es = tuple(tuple(sorted(e)) for e in edges)
        return Pattern(kind="graph", k=n, graph_n=n, graph_edges=es)  # type: ignore[arg-type]

    @staticmethod
    def parse(text: str) -> "Pattern":
        m = re.fullmatch(r"([PC])[_ ]?(\d+)", text.strip(), re.IGNORECASE)
        if not m:
            raise ValueError(f"cannot parse pattern {text!r}; expected e.g. P8 or C6")
        k = int(m.group(2))
        return Pattern.path(k) if m.group(1).upper() == "P" else Pattern.cycle(k)

    @property
    def label(self) -> str:
        if self.kind == "path":
            return f"P{self.k}"
        if self.kind == "cycle":
            return f"C{self.k}"
        return f"G(n={self.graph_n},e={len(self.graph_edges)})"


@dataclass(frozen=True)
class Witness:
    """A concrete copy: vertices in traversal order plus the edge ids used."""

    vertices: tuple[int, ...]
    edge_ids: tuple[int, ...]


ColorsLike = Union[Sequence[int], None]


def _colors_of(coloring: object) -> ColorsLike:
    if coloring is None:
        return None
    inner = getattr(coloring, "colors", coloring)
    return list(inner)  # type: ignore[arg-type]


def _adjacency(g: PlaneGraph) -> list[list[tuple[int, int]]]:
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for eid, (u, v) in enumerate(g.edges):
        adj[u].append((v, eid))
        adj[v].append((u, eid))
    deg = [len(a) for a in adj]
    for a in adj:
        a.sort(key=lambda we: (deg[we[0]], we[0]))
    return adj


def find_rainbow(
    g: PlaneGraph,
    coloring: object,
    pattern: Pattern,
    path_budget: int = DEFAULT_PATH_BUDGET,
    graph_budget: int = DEFAULT_GRAPH_BUDGET,
) -> Optional[Witness]:
    """First rainbow copy of ``pattern`` under ``coloring``, or None.

    ``coloring`` may be an EdgeColoring or any sequence mapping edge id to
    color.  Exact: returns None only after exhausting the color-pruned
    search space.
    """
    colors = _colors_of(coloring)
    return _dispatch(g, colors, pattern, path_budget, graph_budget, collect=None)


def contains(
    g: PlaneGraph,
    pattern: Pattern,
    path_budget: int = DEFAULT_PATH_BUDGET,
    graph_budget: int = DEFAULT_GRAPH_BUDGET,
) -> Optional[Witness]:
    """Uncolored containment: first copy of ``pattern`` in ``g``, or None."""
    return _dispatch(g, None, pattern, path_budget, graph_budget, collect=None)


def enumerate_copies(
    g: PlaneGraph,
    pattern: Pattern,
    path_budget: int = DEFAULT_PATH_BUDGET,
    graph_budget: int = DEFAULT_GRAPH_BUDGET,
) -> list[Witness]:
    """All copies of ``pattern`` in ``g``, one witness per distinct edge set."""
    found: list[Witness] = []
    _dispatch(g, None, pattern, path_budget, graph_budget, collect=found)
    out: list[Witness] = []
    seen: set[frozenset[int]] = set()
    for w in found:
        key = frozenset(w.edge_ids)
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


def _dispatch(g, colors, pattern, path_budget, graph_budget, collect):
    if pattern.kind == "path":
        if pattern.k > path_budget:
            raise PatternTooLargeError(f"P{pattern.k} exceeds budget {path_budget}")
        return _search_path(g, colors, pattern.k, collect)
    if pattern.kind == "cycle":
        if pattern.k > path_budget:
            raise PatternTooLargeError(f"C{pattern.k} exceeds budget {path_budget}")
        return _search_cycle(g, colors, pattern.k, collect)
    if pattern.graph_n > graph_budget:
        raise PatternTooLargeError(
            f"graph pattern on {pattern.graph_n} vertices exceeds budget {graph_budget}"
        )
    return _search_graph(g, colors, pattern, collect)


def _search_path(g, colors, k, collect) -> Optional[Witness]:
    if k == 1:
        w = Witness((0,), ())
        if collect is None:
            return w
        collect.extend(Witness((v,), ()) for v in range(g.n))
        return None
    adj = _adjacency(g)
    path: list[int] = []
    eids: list[int] = []

    def dfs(v: int, vmask: int, cmask: int) -> Optional[Witness]:
        if len(path) == k:
            w = Witness(tuple(path), tuple(eids))
            if collect is None:
                return w
            collect.append(w)
            return None
        for u, eid in adj[v]:
            if vmask >> u & 1:
                continue
            if colors is not None:
                bit = 1 << colors[eid]
                if cmask & bit:
                    continue
                new_c = cmask | bit
            else:
                new_c = 0
            path.append(u)
            eids.append(eid)
            hit = dfs(u, vmask | 1 << u, new_c)
            path.pop()
            eids.pop()
            if hit is not None:
                return hit
        return None

    for s in range(g.n):
        path.append(s)
        hit = dfs(s, 1 << s, 0)
        path.pop()
        if hit is not None:
            return hit
    return None


def _search_cycle(g, colors, k, collect) -> Optional[Witness]:
    adj = _adjacency(g)
    path: list[int] = []
    eids: list[int] = []

    def dfs(anchor: int, v: int, vmask: int, cmask: int) -> Optional[Witness]:
        if len(path) == k:
            if not g.has_edge(v, anchor):
                return None
            if path[1] > path[-1]:  # one orientation per cycle
                return None
            back = g.edge_id(v, anchor)
            if colors is not None and cmask >> colors[back] & 1:
                return None
            w = Witness(tuple(path), tuple(eids) + (back,))
            if collect is None:
                return w
            collect.append(w)
            return None
        for u, eid in adj[v]:
            if u <= anchor or vmask >> u & 1:
                continue
            if colors is not None:
                bit = 1 << colors[eid]
                if cmask & bit:
                    continue
                new_c = cmask | bit
            else:
                new_c = 0
            path.append(u)
            eids.append(eid)
            hit = dfs(anchor, u, vmask | 1 << u, new_c)
            path.pop()
            eids.pop()
            if hit is not None:
                return hit
        return None

    for a in range(g.n):
        path.append(a)
        hit = dfs(a, a, 1 << a, 0)
        path.pop()
        if hit is not None:
            return hit
    return None


def _search_graph(g, colors, pattern, collect) -> Optional[Witness]:
    pn = pattern.graph_n
    pedges = pattern.graph_edges
    if pn > g.n or len(pedges) > g.edge_count:
        return None
    padj: list[set[int]] = [set() for _ in range(pn)]
    for a, b in pedges:
        padj[a].add(b)
        padj[b].add(a)
    # Place pattern vertices most-constrained first: maximize back-edges.
    order: list[int] = []
    pending = set(range(pn))
    while pending:
        nxt = max(
            pending,
            key=lambda v: (sum(1 for w in padj[v] if w in set(order)), len(padj[v]), -v),
        )
        order.append(nxt)
        pending.remove(nxt)
    back: list[list[int]] = []
    for i, v in enumerate(order):
        back.append([j for j in range(i) if order[j] in padj[v]])

    image = [-1] * pn
    gadj = [frozenset(g.neighbors(v)) for v in range(g.n)]
    gadj_sorted = [tuple(sorted(s)) for s in gadj]

    def dfs(i: int, used: int, cmask: int) -> Optional[Witness]:
        if i == pn:
            verts = tuple(image)
            es = tuple(g.edge_id(image[a], image[b]) for a, b in pedges)
            w = Witness(verts, es)
            if collect is None:
                return w
            collect.append(w)
            return None
        pv = order[i]
        if back[i]:
            cands: Iterable[int] = gadj_sorted[image[order[back[i][0]]]]
        else:
            cands = range(g.n)
        for cand in cands:
            if used >> cand & 1:
                continue
            if any(cand not in gadj[image[order[j]]] for j in back[i]):
                continue
            new_c = cmask
            if colors is not None:
                ok = True
                for j in back[i]:
                    bit = 1 << colors[g.edge_id(cand, image[order[j]])]
                    if new_c & bit:
                        ok = False
                        break
                    new_c |= bit
                if not ok:
                    continue
            image[pv] = cand
            hit = dfs(i + 1, used | 1 << cand, new_c)
            image[pv] = -1
            if hit is not None:
                return hit
        return None

    return dfs(0, 0, 0)


def longest_path(
    g: PlaneGraph,
    endpoint_filter: Optional[Iterable[int]] = None,
    budget: int = DEFAULT_PATH_BUDGET,
) -> tuple[int, Witness]:
    """Exact longest path, measured in vertices.

    With ``endpoint_filter`` both endpoints must lie in the given vertex set.
    Branch and bound: a branch dies when even absorbing every vertex still
    reachable from the head cannot beat the incumbent.
    """
    if g.n > budget:
        raise TooLargeError(f"longest_path budget is {budget} vertices, got {g.n}")
    filt_mask = 0
    if endpoint_filter is None:
        filt_mask = (1 << g.n) - 1
    else:
        for v in endpoint_filter:
            filt_mask |= 1 << v
        if not filt_mask:
            raise ValueError("endpoint filter is empty")

    nbr_mask = [0] * g.n
    adj = _adjacency(g)
    for v in range(g.n):
        for u, _ in adj[v]:
            nbr_mask[v] |= 1 << u

    full = (1 << g.n) - 1

    def reach(head: int, blocked: int) -> int:
        seen = 1 << head
        frontier = seen
        while frontier:
            nxt = 0
            m = frontier
            while m:
                b = m & -m
                nxt |= nbr_mask[b.bit_length() - 1]
                m ^= b
            frontier = nxt & ~seen & ~blocked
            seen |= frontier
        return seen

    best_len = 0
    best_w = Witness((), ())
    path: list[int] = []
    eids: list[int] = []

    def dfs(v: int, vmask: int) -> None:
        nonlocal best_len, best_w
        if len(path) > best_len and filt_mask >> v & 1:
            best_len = len(path)
            best_w = Witness(tuple(path), tuple(eids))
        r = reach(v, vmask & ~(1 << v))
        if len(path) - 1 + bin(r).count("1") <= best_len:
            return
        if not (r & filt_mask):
            return
        for u, eid in adj[v]:
            if vmask >> u & 1:
                continue
            path.append(u)
            eids.append(eid)
            dfs(u, vmask | 1 << u)
            path.pop()
            eids.pop()

    starts = [v for v in range(g.n) if filt_mask >> v & 1]
    starts.sort(key=lambda v: len(adj[v]))
    for s in starts:
        path.append(s)
        dfs(s, 1 << s)
        path.pop()
    assert best_len >= 1
    return best_len, best_w
