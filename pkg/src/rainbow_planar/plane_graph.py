"""Embedded planar graphs as combinatorial maps (rotation systems).

A :class:`PlaneGraph` stores a simple connected graph together with a cyclic
order of edges around every vertex.  Faces are recovered by tracing dart
orbits, and validity (genus 0) is asserted through Euler's formula after
every construction and mutation.  All mutating operations return new values;
instances are immutable and safe to share.

Vertex ids are ``0..n-1`` and edge ids are ``0..e-1``, both contiguous.
Mutations keep the ids of surviving vertices and edges stable and append new
ids at the end (subdividing an edge reuses its id for the first segment).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    InvalidAnchorError,
    InvalidRotationError,
    NonPlanarError,
    NotTriangulationError,
)

Edge = tuple[int, int]
Dart = tuple[int, int]  # (tail vertex, edge id)


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Face:
    """A face of the embedding.

    The boundary is a closed walk given as ``(vertex, edge)`` pairs, where
    the edge is the one leaving that vertex along the walk.  The walk starts
    at its lexicographically smallest dart, which makes face ids and boundary
    representations deterministic for a given rotation system.
    """

    id: int
    boundary: tuple[tuple[int, int], ...]

    @property
    def size(self) -> int:
        return len(self.boundary)

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.boundary)

    @property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.boundary)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(v for v, _ in self.boundary)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(e for _, e in self.boundary)

    def is_simple(self) -> bool:
        """True when the boundary visits every vertex at most once."""
        return len(self.vertex_set) == self.size


@dataclass(frozen=True)
class DualGraph:
    """Dual of a plane triangulation: one vertex per face.

    ``links`` holds one entry per primal edge as ``(face_a, face_b,
    primal_edge_id)``; parallel links are legitimate (the dual of K3 is a
    2-vertex multigraph with three parallel links).
    """

    face_count: int
    links: tuple[tuple[int, int, int], ...]

    def degree(self, face: int) -> int:
        return sum(1 for a, b, _ in self.links if face in (a, b))

    def is_cubic(self) -> bool:
        return all(self.degree(f) == 3 for f in range(self.face_count))

    def is_bridgeless(self) -> bool:
        """Edge-connectivity >= 2, checked by deleting one link at a time."""
        for skip in range(len(self.links)):
            seen = {0}
            frontier = [0]
            while frontier:
                f = frontier.pop()
                for i, (a, b, _) in enumerate(self.links):
                    if i == skip:
                        continue
                    if a == f and b not in seen:
                        seen.add(b)
                        frontier.append(b)
                    elif b == f and a not in seen:
                        seen.add(a)
                        frontier.append(a)
            if len(seen) != self.face_count:
                return False
        return True


def _trace_faces(
    n: int, edges: Sequence[Edge], rotation: Sequence[Sequence[int]]
) -> tuple[tuple[Face, ...], dict[Dart, int]]:
    """Trace all dart orbits of the rotation system.

    Returns the faces (in deterministic order) and a map from dart
    ``(tail, edge)`` to the id of the face whose boundary uses that dart.
    """
    pos: list[dict[int, int]] = [dict() for _ in range(n)]
    for v in range(n):
        for i, e in enumerate(rotation[v]):
            pos[v][e] = i

    def other(e: int, v: int) -> int:
        a, b = edges[e]
        return b if v == a else a

    all_darts = sorted((tail, e) for e, (u, v) in enumerate(edges) for tail in (u, v))
    face_of: dict[Dart, int] = {}
    faces: list[Face] = []
    for start in all_darts:
        if start in face_of:
            continue
        fid = len(faces)
        walk: list[tuple[int, int]] = []
        dart = start
        while True:
            face_of[dart] = fid
            walk.append(dart)
            tail, e = dart
            head = other(e, tail)
            i = pos[head][e]
            e2 = rotation[head][(i + 1) % len(rotation[head])]
            dart = (head, e2)
            if dart == start:
                break
        faces.append(Face(id=fid, boundary=tuple(walk)))
    return tuple(faces), face_of


@dataclass(frozen=True)
class PlaneGraph:
    """A simple connected plane graph with derived faces.

    Do not call the constructor directly: use :func:`build` or one of the
    mutation methods, which validate the rotation system and Euler formula.
    """

    n: int
    edges: tuple[Edge, ...]
    rotation: tuple[tuple[int, ...], ...]
    outer_face: int
    faces: tuple[Face, ...] = field(compare=False, repr=False)
    _face_of_dart: dict[Dart, int] = field(compare=False, repr=False)
    _edge_index: dict[Edge, int] = field(compare=False, repr=False)

    # ------------------------------------------------------------------
    # basic accessors
    # ------------------------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def face_count(self) -> int:
        return len(self.faces)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def endpoints(self, eid: int) -> Edge:
        return self.edges[eid]

    def other_end(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        return b if v == a else a

    def edge_id(self, u: int, v: int) -> int:
        return self._edge_index[_norm_edge(u, v)]

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self._edge_index

    def neighbors(self, v: int) -> tuple[int, ...]:
        """Neighbors of ``v`` in rotation order."""
        return tuple(self.other_end(e, v) for e in self.rotation[v])

    def incident_faces(self, eid: int) -> tuple[int, int]:
        u, v = self.edges[eid]
        return (self._face_of_dart[(u, eid)], self._face_of_dart[(v, eid)])

    def face_of_dart(self, tail: int, eid: int) -> int:
        return self._face_of_dart[(tail, eid)]

    def face_sizes(self) -> dict[int, int]:
        """Histogram ``size -> number of faces of that size``."""
        hist: dict[int, int] = {}
        for f in self.faces:
            hist[f.size] = hist.get(f.size, 0) + 1
        return hist

    def is_plane_triangulation(self) -> bool:
        return self.n >= 3 and all(f.size == 3 for f in self.faces)

    def find_face(self, vertices: Iterable[int], size: Optional[int] = None) -> Face:
        """The unique face whose vertex set equals ``vertices``.

        Raises ``KeyError`` when no face matches and ``ValueError`` when the
        match is ambiguous (as for the two faces of K3).
        """
        want = frozenset(vertices)
        hits = [
            f
            for f in self.faces
            if f.vertex_set == want and (size is None or f.size == size)
        ]
        if not hits:
            raise KeyError(f"no face with vertex set {sorted(want)}")
        if len(hits) > 1:
            raise ValueError(f"face witness {sorted(want)} is ambiguous")
        return hits[0]

    def abstract_edges(self) -> tuple[Edge, ...]:
        return self.edges

    # ------------------------------------------------------------------
    # outer face handling
    # ------------------------------------------------------------------

    def with_outer_face(self, face_id: int) -> "PlaneGraph":
        if not 0 <= face_id < len(self.faces):
            raise ValueError(f"no face {face_id}")
        if face_id == self.outer_face:
            return self
        return PlaneGraph(
            n=self.n,
            edges=self.edges,
            rotation=self.rotation,
            outer_face=face_id,
            faces=self.faces,
            _face_of_dart=self._face_of_dart,
            _edge_index=self._edge_index,
        )

    def with_outer_witness(self, a: int, b: int, c: int) -> "PlaneGraph":
        """Designate the outer face by three consecutive boundary vertices."""
        return self.with_outer_face(self._face_by_witness(a, b, c))

    def _face_by_witness(self, a: int, b: int, c: int) -> int:
        # (a, b, c) consecutive along a boundary walk pins down the dart b->c,
        # hence the face, uniquely.
        for f in self.faces:
            verts = f.vertices
            s = f.size
            for i in range(s):
                if (
                    verts[i] == a
                    and verts[(i + 1) % s] == b
                    and verts[(i + 2) % s] == c
                ):
                    return f.id
        raise KeyError(f"no face with consecutive boundary vertices {a},{b},{c}")

    def outer_witness(self) -> tuple[int, int, int]:
        v = self.faces[self.outer_face].vertices
        return (v[0], v[1], v[2 % len(v)])

    # ------------------------------------------------------------------
    # mutations (all return new graphs)
    # ------------------------------------------------------------------

    def stellate_face(self, face_id: int) -> "PlaneGraph":
        """Insert a new vertex inside a face, joined to every boundary vertex.

        The face of size s is replaced by s triangles; the new vertex gets id
        ``n`` and the new edges get ids ``e .. e+s-1`` following the boundary
        walk order.
        """
        face = self.faces[face_id]
        if not face.is_simple():
            raise InvalidRotationError(
                f"cannot stellate face {face_id}: boundary revisits a vertex"
            )
        return self._attach_vertex(face, list(range(face.size)))

    def add_vertex_in_face(self, face_id: int, attach: Sequence[int]) -> "PlaneGraph":
        """Insert a new vertex inside a face, joined to a subset of its boundary.

        ``attach`` lists boundary vertices (at least two); the face splits
        into ``len(attach)`` faces.  The new vertex gets id ``n``.
        """
        face = self.faces[face_id]
        if not face.is_simple():
            raise InvalidRotationError("face boundary revisits a vertex")
        index = {v: i for i, (v, _) in enumerate(face.boundary)}
        try:
            slots = sorted(index[v] for v in attach)
        except KeyError as exc:
            raise ValueError(f"attach vertex {exc} not on face {face_id}") from exc
        if len(slots) != len(set(attach)) or len(slots) < 2:
            raise ValueError("attach must list >= 2 distinct boundary vertices")
        return self._attach_vertex(face, slots)

    def _attach_vertex(self, face: Face, slots: Sequence[int]) -> "PlaneGraph":
        new_v = self.n
        e0 = len(self.edges)
        edges = list(self.edges)
        rot = [list(r) for r in self.rotation]
        new_edge_ids: list[int] = []
        for j, i in enumerate(slots):
            v = face.boundary[i][0]
            in_edge = face.boundary[i - 1][1]
            eid = e0 + j
            edges.append(_norm_edge(v, new_v))
            rot[v].insert(rot[v].index(in_edge) + 1, eid)
            new_edge_ids.append(eid)
        rot.append(list(reversed(new_edge_ids)))
        return _assemble(self.n + 1, edges, rot, self._carry_outer(avoid_face=face.id))

    def add_edge_in_face(self, face_id: int, u: int, v: int) -> "PlaneGraph":
        """Add the chord ``u``-``v`` inside a face; the face splits in two."""
        face = self.faces[face_id]
        if not face.is_simple():
            raise InvalidRotationError("face boundary revisits a vertex")
        if self.has_edge(u, v):
            raise ValueError(f"edge {u}-{v} already present")
        index = {w: i for i, (w, _) in enumerate(face.boundary)}
        if u not in index or v not in index:
            raise ValueError(f"{u} and {v} must both lie on face {face_id}")
        eid = len(self.edges)
        edges = list(self.edges) + [_norm_edge(u, v)]
        rot = [list(r) for r in self.rotation]
        for w in (u, v):
            in_edge = face.boundary[index[w] - 1][1]
            rot[w].insert(rot[w].index(in_edge) + 1, eid)
        return _assemble(self.n, edges, rot, self._carry_outer(avoid_face=face_id))

    def subdivide_edge(self, eid: int, times: int) -> "PlaneGraph":
        """Replace an edge by a path with ``times`` internal vertices.

        The original id is reused for the first segment (incident to the
        smaller original endpoint); the remaining segments get ids
        ``e .. e+times-1``.  Returns ``self`` unchanged when ``times`` is 0.
        """
        if times < 0:
            raise ValueError("times must be >= 0")
        if times == 0:
            return self
        u, v = self.edges[eid]
        mids = list(range(self.n, self.n + times))
        chain = [u] + mids + [v]
        seg_ids = [eid] + list(range(len(self.edges), len(self.edges) + times))
        edges = list(self.edges)
        edges[eid] = _norm_edge(chain[0], chain[1])
        for s in range(1, times + 1):
            edges.append(_norm_edge(chain[s], chain[s + 1]))
        rot = [list(r) for r in self.rotation]
        rot[v][rot[v].index(eid)] = seg_ids[-1]
        for s, mid in enumerate(mids):
            rot.append([seg_ids[s], seg_ids[s + 1]])

        outer = self._carry_outer(avoid_face=None)
        if outer is not None and outer[1] == eid and outer[0] == v:
            outer = (v, seg_ids[-1])
        return _assemble(self.n + times, edges, rot, outer)

    def segment_ids_after_subdivision(self, eid: int, times: int) -> list[int]:
        """Edge ids of the path replacing ``eid`` in ``subdivide_edge``."""
        if times == 0:
            return [eid]
        return [eid] + list(range(len(self.edges), len(self.edges) + times))

    def glue_on_edge(
        self,
        eid: int,
        patch: "PlaneGraph",
        anchor_eid: int,
        side: int = 0,
    ) -> "PlaneGraph":
        """Glue a triangulated patch onto an edge, inside one incident face.

        ``patch`` must be a plane triangulation whose designated anchor edge
        lies on its outer boundary.  The anchor is identified with ``eid``
        (the edge survives, keeping its id); everything else of the patch is
        drawn inside the chosen face.  ``side`` = 0 picks the incident face
        with the smaller id, 1 the other.  Adds ``|patch| - 2`` vertices and
        ``e(patch) - 1`` edges.
        """
        if not patch.is_plane_triangulation():
            raise NotTriangulationError("glue patch must be a plane triangulation")
        outer = patch.faces[patch.outer_face]
        if anchor_eid not in outer.edge_set:
            raise InvalidAnchorError(
                f"anchor edge {anchor_eid} is not on the patch outer boundary"
            )
        if side not in (0, 1):
            raise ValueError("side must be 0 or 1")
        f_lo, f_hi = sorted(self.incident_faces(eid))
        if f_lo == f_hi:
            raise InvalidRotationError("cannot glue onto a bridge")
        target = self.faces[f_lo if side == 0 else f_hi]

        u, v = self.edges[eid]
        g_tail = u if self._face_of_dart[(u, eid)] == target.id else v
        g_head = self.other_end(eid, g_tail)
        # Orientation: the target face traverses g_tail -> g_head, the patch
        # outer face traverses a_tail -> a_head along the anchor.  Identifying
        # a_head with g_tail and a_tail with g_head puts the patch interior on
        # the target side with both rotation systems aligned.
        a, b = patch.edges[anchor_eid]
        a_tail = a if patch._face_of_dart[(a, anchor_eid)] == patch.outer_face else b
        a_head = patch.other_end(anchor_eid, a_tail)

        vmap: dict[int, int] = {a_head: g_tail, a_tail: g_head}
        next_v = self.n
        for w in range(patch.n):
            if w not in vmap:
                vmap[w] = next_v
                next_v += 1
        emap: dict[int, int] = {anchor_eid: eid}
        next_e = len(self.edges)
        edges = list(self.edges)
        for pe, (x, y) in enumerate(patch.edges):
            if pe == anchor_eid:
                continue
            emap[pe] = next_e
            edges.append(_norm_edge(vmap[x], vmap[y]))
            next_e += 1

        def patch_fan(vertex: int) -> list[int]:
            r = patch.rotation[vertex]
            i = r.index(anchor_eid)
            return [emap[r[(i + j) % len(r)]] for j in range(1, len(r))]

        rot = [list(r) for r in self.rotation]
        i = rot[g_tail].index(eid)
        rot[g_tail] = rot[g_tail][:i] + patch_fan(a_head) + rot[g_tail][i:]
        j = rot[g_head].index(eid) + 1
        rot[g_head] = rot[g_head][:j] + patch_fan(a_tail) + rot[g_head][j:]
        for w in range(patch.n):
            if w in (a_tail, a_head):
                continue
            rot.append([emap[e] for e in patch.rotation[w]])

        outer_dart = self._carry_outer(avoid_face=None)
        if outer_dart == (g_tail, eid) and target.id == self.outer_face:
            # That dart now bounds a patch-interior face; re-anchor the outer
            # face on another of its boundary darts.
            for tail2, e2 in self.faces[self.outer_face].boundary:
                if (tail2, e2) != (g_tail, eid):
                    outer_dart = (tail2, e2)
                    break
        g = _assemble(self.n + patch.n - 2, edges, rot, outer_dart)
        assert g.n == self.n + patch.n - 2
        assert g.edge_count == self.edge_count + patch.edge_count - 1
        return g

    def dual(self) -> DualGraph:
        """Face-adjacency dual; 3-regular for a triangulation."""
        if not self.is_plane_triangulation():
            raise NotTriangulationError("dual is only defined for triangulations here")
        links = []
        for eid, (u, v) in enumerate(self.edges):
            fa = self._face_of_dart[(u, eid)]
            fb = self._face_of_dart[(v, eid)]
            links.append((min(fa, fb), max(fa, fb), eid))
        return DualGraph(face_count=len(self.faces), links=tuple(links))

    # ------------------------------------------------------------------
    # internals
    # ------------------------------------------------------------------

    def _carry_outer(self, avoid_face: Optional[int]) -> Optional[Dart]:
        """A dart identifying the current outer face, or None if it is the
        face being destroyed by the mutation."""
        if avoid_face is not None and avoid_face == self.outer_face:
            return None
        return self.faces[self.outer_face].boundary[0]


def build(
    n: int,
    edges: Iterable[tuple[int, int]],
    rotation: Optional[Sequence[Sequence[int]]] = None,
    outer: Optional[tuple[int, int, int]] = None,
) -> PlaneGraph:
    """Build and validate a plane graph.

    Args:
        n: vertex count (vertices are ``0..n-1``; n >= 3).
        edges: simple undirected edge list; ids follow the given order.
        rotation: cyclic edge-id order per vertex.  When omitted, a planar
            embedding is computed (``NonPlanarError`` if none exists).
        outer: optional witness for the outer face given as three
            consecutive boundary vertices; defaults to face 0.

    Raises:
        NonPlanarError: no embedding exists.
        InvalidRotationError: the rotation fails the Euler/face checks.
    """
    edge_list: list[Edge] = []
    seen: set[Edge] = set()
    for u, v in edges:
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u},{v}) out of vertex range")
        e = _norm_edge(u, v)
        if e in seen:
            raise ValueError(f"parallel edge ({u},{v})")
        seen.add(e)
        edge_list.append(e)
    if n < 3:
        raise ValueError("plane graphs here have at least 3 vertices")

    if rotation is None:
        rotation = _planar_rotation(n, edge_list)
    g = _assemble(n, edge_list, [list(r) for r in rotation], None)
    if outer is not None:
        g = g.with_outer_witness(*outer)
    return g


def _planar_rotation(n: int, edge_list: Sequence[Edge]) -> list[list[int]]:
    import networkx as nx

    gx = nx.Graph()
    gx.add_nodes_from(range(n))
    gx.add_edges_from(edge_list)
    if not nx.is_connected(gx):
        raise InvalidRotationError("graph must be connected")
    ok, emb = nx.check_planarity(gx, counterexample=False)
    if not ok:
        raise NonPlanarError(f"no planar embedding for {len(edge_list)} edges on {n} vertices")
    index = {e: i for i, e in enumerate(edge_list)}
    rotation = []
    for v in range(n):
        order = list(emb.neighbors_cw_order(v)) if gx.degree(v) else []
        rotation.append([index[_norm_edge(v, w)] for w in order])
    return rotation


def _assemble(
    n: int,
    edges: Sequence[Edge],
    rotation: Sequence[Sequence[int]],
    outer_dart: Optional[Dart],
) -> PlaneGraph:
    """Validate a rotation system and produce a PlaneGraph.

    Checks: rotation lists are exactly the incident edges of each vertex,
    the face trace satisfies Euler's formula (genus 0), every edge occurs on
    exactly two face-boundary darts, and no face is shorter than 3.
    """
    incident: list[set[int]] = [set() for _ in range(n)]
    for eid, (u, v) in enumerate(edges):
        incident[u].add(eid)
        incident[v].add(eid)
    for v in range(n):
        r = rotation[v]
        if len(r) != len(incident[v]) or set(r) != incident[v]:
            raise InvalidRotationError(f"rotation at vertex {v} does not match incidences")
        if not r:
            raise InvalidRotationError(f"isolated vertex {v}")

    faces, face_of = _trace_faces(n, edges, rotation)
    if n - len(edges) + len(faces) != 2:
        raise InvalidRotationError(
            f"face trace gives V-E+F = {n - len(edges) + len(faces)}, expected 2"
        )
    assert len(face_of) == 2 * len(edges)
    if any(f.size < 3 for f in faces):
        raise InvalidRotationError("embedding has a face of size < 3")

    if outer_dart is None:
        outer = 0
    else:
        outer = face_of[outer_dart]
    return PlaneGraph(
        n=n,
        edges=tuple(edges),
        rotation=tuple(tuple(r) for r in rotation),
        outer_face=outer,
        faces=faces,
        _face_of_dart=face_of,
        _edge_index={e: i for i, e in enumerate(edges)},
    )


def triangle() -> PlaneGraph:
    """K3 with face 1 designated outer."""
    g = build(3, [(0, 1), (0, 2), (1, 2)], rotation=[[0, 1], [0, 2], [1, 2]])
    return g.with_outer_face(1)


def stacked_triangulation(n: int) -> PlaneGraph:
    """Stacked (Apollonian) triangulation on ``n >= 3`` vertices.

    Starts from a triangle and repeatedly stellates the lowest-id inner
    face, so the outer face keeps boundary ``0, 1, 2`` and edge 0 = (0, 1)
    stays on the outer boundary throughout.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    g = triangle()
    while g.n < n:
        target = min(f.id for f in g.faces if f.id != g.outer_face)
        g = g.stellate_face(target)
    return g


def perfect_matching(dual: DualGraph) -> list[int]:
    """A perfect matching of the dual, as primal edge ids.

    Exhaustive search with first-fit branching; the duals handled here are
    cubic and bridgeless, so a matching always exists (Petersen), and failure
    indicates a caller bug.
    """
    if dual.face_count % 2:
        raise RuntimeError("dual has an odd number of vertices; no perfect matching")
    adj: list[list[tuple[int, int]]] = [[] for _ in range(dual.face_count)]
    for idx, (a, b, eid) in enumerate(dual.links):
        adj[a].append((b, idx))
        adj[b].append((a, idx))

    matched = [False] * dual.face_count
    chosen: list[int] = []

    def extend() -> bool:
        try:
            f = matched.index(False)
        except ValueError:
            return True
        matched[f] = True
        for g2, idx in adj[f]:
            if matched[g2]:
                continue
            matched[g2] = True
            chosen.append(idx)
            if extend():
                return True
            chosen.pop()
            matched[g2] = False
        matched[f] = False
        return False

    if not extend():
        raise RuntimeError("no perfect matching in dual; invalid triangulation dual")
    return sorted(dual.links[i][2] for i in chosen)
