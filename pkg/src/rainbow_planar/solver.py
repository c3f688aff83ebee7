"""Exact anti-Ramsey values on small hosts, and the triangulation catalog.

The solver maximizes the number of classes over all set partitions of the
edge set (colorings up to renaming are exactly set partitions, and every
class being nonempty gives surjectivity for free), subject to: no copy of
the pattern has pairwise-distinct classes.  Branch and bound in restricted
growth form: a branch dies when even giving every remaining edge a fresh
class cannot beat the incumbent, or when a copy just became fully colored
and rainbow.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass
from typing import Optional, Sequence

from .canon import canonical_label
from .colorings import EdgeColoring, rainbow_coloring
from .errors import EmptyFamilyError, TooLargeError
from .plane_graph import PlaneGraph, build, stacked_triangulation
from .search import Pattern, enumerate_copies

DEFAULT_EDGE_BUDGET = 16


@dataclass(frozen=True)
class ArResult:
    """Outcome of one exact anti-Ramsey computation."""

    value: int
    witness: EdgeColoring
    host: PlaneGraph
    pattern: Pattern
    nodes: int
    elapsed: float
    degenerate: bool = False


@dataclass(frozen=True)
class TriangulationCatalog:
    """All plane triangulations on n vertices, up to isomorphism."""

    n: int
    members: tuple[PlaneGraph, ...]

    def __len__(self) -> int:
        return len(self.members)


def _copy_edge_sets(g: PlaneGraph, pattern: Pattern) -> list[frozenset[int]]:
    return [frozenset(w.edge_ids) for w in enumerate_copies(g, pattern)]


def _violates(colors: Sequence[int], copies: list[frozenset[int]]) -> bool:
    return any(len({colors[e] for e in c}) == len(c) for c in copies)


def exact_ar_fixed_host(
    g: PlaneGraph,
    pattern: Pattern,
    edge_budget: int = DEFAULT_EDGE_BUDGET,
    seeds: Sequence[EdgeColoring] = (),
) -> ArResult:
    """Maximum colors of a surjective coloring of ``g`` with no rainbow copy
    of ``pattern``, with a witness, certified by exhausted search.

    ``seeds`` may carry known feasible colorings (they are re-verified, then
    only strictly better colorings are searched for).  When ``g`` has no copy
    of the pattern at all the problem is void: every coloring qualifies and
    the result is the rainbow coloring, flagged degenerate.
    """
    num_edges = g.edge_count
    if num_edges > edge_budget:
        raise TooLargeError(f"host has {num_edges} edges, budget {edge_budget}")
    t0 = time.perf_counter()
    copies = _copy_edge_sets(g, pattern)
    if not copies:
        return ArResult(
            value=num_edges,
            witness=rainbow_coloring(g),
            host=g,
            pattern=pattern,
            nodes=0,
            elapsed=time.perf_counter() - t0,
            degenerate=True,
        )

    membership = [0] * num_edges
    for c in copies:
        for e in c:
            membership[e] += 1
    order = sorted(range(num_edges), key=lambda e: (-membership[e], e))
    pos_of_edge = {e: i for i, e in enumerate(order)}
    copies_at: list[list[int]] = [[] for _ in range(num_edges)]
    for ci, c in enumerate(copies):
        for e in c:
            copies_at[pos_of_edge[e]].append(ci)
    size = [len(c) for c in copies]

    # The monochromatic coloring is always feasible; the first DFS descent
    # (fresh class first, backtracking on violations) then acts as a greedy
    # incumbent, so no separate seeding heuristic is needed.
    best_colors = [1] * num_edges
    best = 1
    for seed in seeds:
        if len(seed.colors) != num_edges or not seed.is_surjective():
            raise ValueError("seed coloring does not fit the host")
        if _violates(seed.colors, copies):
            raise ValueError("seed coloring has a rainbow copy")
        if seed.m > best:
            best = seed.m
            best_colors = list(seed.colors)

    assign = [0] * num_edges  # class ids 1.. in restricted growth order
    copy_count: list[dict[int, int]] = [dict() for _ in copies]
    copy_assigned = [0] * len(copies)
    copy_repeats = [0] * len(copies)
    nodes = 0

    def place(i: int, cls: int) -> bool:
        e = order[i]
        assign[e] = cls
        ok = True
        for ci in copies_at[i]:
            d = copy_count[ci]
            prev = d.get(cls, 0)
            d[cls] = prev + 1
            if prev:
                copy_repeats[ci] += 1
            copy_assigned[ci] += 1
            if copy_assigned[ci] == size[ci] and copy_repeats[ci] == 0:
                ok = False
        return ok

    def unplace(i: int, cls: int) -> None:
        e = order[i]
        assign[e] = 0
        for ci in copies_at[i]:
            d = copy_count[ci]
            now = d[cls] - 1
            if now:
                d[cls] = now
                copy_repeats[ci] -= 1
            else:
                del d[cls]
            copy_assigned[ci] -= 1

    def dfs(i: int, classes: int) -> None:
        nonlocal nodes, best, best_colors
        nodes += 1
        if i == num_edges:
            if classes > best:
                best = classes
                best_colors = list(assign)
            return
        if classes + (num_edges - i) <= best:
            return
        for cls in range(classes + 1, 0, -1):  # fresh class first
            ok = place(i, cls)
            if ok:
                dfs(i + 1, max(classes, cls))
            unplace(i, cls)

    dfs(0, 0)
    m = max(best_colors)
    witness = EdgeColoring(tuple(best_colors), m)
    assert witness.is_surjective()
    assert not _violates(witness.colors, copies)
    return ArResult(
        value=best,
        witness=witness,
        host=g,
        pattern=pattern,
        nodes=nodes,
        elapsed=time.perf_counter() - t0,
    )


def exact_ar_brute(g: PlaneGraph, pattern: Pattern, edge_budget: int = 10) -> int:
    """Unpruned reference: enumerate every restricted-growth partition."""
    if g.edge_count > edge_budget:
        raise TooLargeError("brute-force reference is capped at 10 edges")
    copies = _copy_edge_sets(g, pattern)
    if not copies:
        return g.edge_count
    num_edges = g.edge_count
    best = 0
    assign = [0] * num_edges

    def rec(i: int, classes: int) -> None:
        nonlocal best
        if i == num_edges:
            if not _violates(assign, copies):
                best = max(best, classes)
            return
        for cls in range(1, classes + 2):
            assign[i] = cls
            rec(i + 1, max(classes, cls))
        assign[i] = 0

    rec(0, 0)
    return best


# ----------------------------------------------------------------------
# triangulation catalog
# ----------------------------------------------------------------------


def _flip_neighbors(g: PlaneGraph) -> list[PlaneGraph]:
    """All triangulations one diagonal flip away."""
    out = []
    for eid in range(g.edge_count):
        u, v = g.edges[eid]
        fa, fb = g.incident_faces(eid)
        a = next(w for w in g.faces[fa].vertices if w not in (u, v))
        b = next(w for w in g.faces[fb].vertices if w not in (u, v))
        if a == b or g.has_edge(a, b):
            continue
        edges = list(g.edges)
        edges[eid] = (min(a, b), max(a, b))
        flipped = build(g.n, edges)
        assert flipped.is_plane_triangulation()
        out.append(flipped)
    return out


def enumerate_triangulations(
    n: int, cache_dir: Optional[str] = None
) -> TriangulationCatalog:
    """Complete duplicate-free catalog of plane triangulations on n vertices.

    Diagonal-flip closure from the stacked triangulation; the flip graph of
    n-vertex triangulations is connected, so the closure is the whole
    catalog.  Completeness is cross-validated in the test suite against an
    edge-subset filter oracle (n <= 7) and a vertex-splitting expansion.
    Results are cached as concatenated graph text when a cache dir is given
    (see also the RAINBOW_PLANAR_CACHE environment variable).
    """
    if not 4 <= n <= 8:
        raise TooLargeError("catalog enumeration covers 4 <= n <= 8")
    if cache_dir is None:
        cache_dir = os.environ.get("RAINBOW_PLANAR_CACHE") or None
    if cache_dir:
        cached = _read_catalog_cache(cache_dir, n)
        if cached is not None:
            return cached

    seen: dict[bytes, PlaneGraph] = {}
    frontier = [stacked_triangulation(n)]
    seen[canonical_label(frontier[0])] = frontier[0]
    while frontier:
        g = frontier.pop()
        for h in _flip_neighbors(g):
            key = canonical_label(h)
            if key not in seen:
                seen[key] = h
                frontier.append(h)
    members = tuple(g for _, g in sorted(seen.items(), key=lambda kv: kv[0]))
    catalog = TriangulationCatalog(n=n, members=members)
    if cache_dir:
        _write_catalog_cache(cache_dir, catalog)
    return catalog


def _catalog_path(cache_dir: str, n: int) -> str:
    return os.path.join(cache_dir, f"triangulations-{n}.txt")


def _read_catalog_cache(cache_dir: str, n: int) -> Optional[TriangulationCatalog]:
    from .textio import graphs_from_text

    path = _catalog_path(cache_dir, n)
    if not os.path.exists(path):
        return None
    with open(path, encoding="utf-8") as fh:
        members = tuple(graphs_from_text(fh.read()))
    for g in members:
        if g.n != n or not g.is_plane_triangulation():
            raise ValueError(f"corrupt catalog cache {path}")
    return TriangulationCatalog(n=n, members=members)


def _write_catalog_cache(cache_dir: str, catalog: TriangulationCatalog) -> None:
    from .textio import graph_to_text

    os.makedirs(cache_dir, exist_ok=True)
    path = _catalog_path(cache_dir, catalog.n)
    text = "\n".join(graph_to_text(g) for g in catalog.members)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def exact_planar_ar(
    n: int,
    pattern: Pattern,
    edge_budget: int = DEFAULT_EDGE_BUDGET,
    cache_dir: Optional[str] = None,
    workers: int = 1,
) -> ArResult:
    """Exact planar anti-Ramsey value on n vertices: the maximum of the
    fixed-host values over all catalog triangulations containing the
    pattern.  Hosts without the pattern are excluded; if none contains it,
    the family is empty and ``EmptyFamilyError`` is raised.
    """
    from .search import contains

    catalog = enumerate_triangulations(n, cache_dir=cache_dir)
    hosts = [g for g in catalog.members if contains(g, pattern) is not None]
    if not hosts:
        raise EmptyFamilyError(f"no triangulation on {n} vertices contains {pattern.label}")
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(
                pool.map(_solve_host, [(g, pattern, edge_budget) for g in hosts])
            )
    else:
        results = [exact_ar_fixed_host(g, pattern, edge_budget) for g in hosts]
    return max(results, key=lambda r: r.value)


def _solve_host(args: tuple[PlaneGraph, Pattern, int]) -> ArResult:
    g, pattern, budget = args
    return exact_ar_fixed_host(g, pattern, budget)
