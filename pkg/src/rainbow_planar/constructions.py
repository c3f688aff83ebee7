"""Deterministic builders for every host-graph family used by the library.

Each builder returns a :class:`BuildBundle` holding the scalar parameters,
the rainbow-colored base graph, the list of base faces that get a new vertex
(the stellation set), the finished triangulation, and a name -> vertex map
for the construction's landmark vertices.

All face choices that the underlying recipes leave open ("r of the
3-faces", "one edge among the new vertices", which face is outer) are pinned
to deterministic conventions documented on the builders, so rebuilding with
equal parameters is bit-identical.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from . import search
from .errors import (
    HostRejectedError,
    InvalidParamError,
    NotTriangulationError,
    RangeMismatchError,
)
from .plane_graph import (
    PlaneGraph,
    build,
    perfect_matching,
    stacked_triangulation,
)

KINDS = (
    "lemma_th",
    "p89",
    "pk_small",
    "pk_mid",
    "pk_large",
    "c5_star",
    "ck_subdiv",
    "wheel",
    "external",
)

_INT_FIELDS = ("n", "k", "p", "t", "q", "m", "r", "eps", "eps_star", "eps_prime")


@dataclass(frozen=True)
class ConstructionParams:
    """Scalar bookkeeping for one construction instance."""

    kind: str
    n: int = 0
    k: int = 0
    p: int = 0
    t: int = 0
    q: int = 0
    m: int = 0
    r: int = 0
    eps: int = 0
    eps_star: int = 0
    eps_prime: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise InvalidParamError(f"unknown construction kind {self.kind!r}")

    def validate(self) -> None:
        """Re-check the defining arithmetic relations of this kind."""
        k, n, t, r = self.k, self.n, self.t, self.r
        if self.kind == "lemma_th":
            _require(self.p >= 1 and n == 3 * self.p + 2, "lemma_th: n = 3p+2, p >= 1")
        elif self.kind == "p89":
            _require(k in (8, 9), "p89: k in {8, 9}")
            _require(self.eps == k % 2, "p89: eps = k mod 2")
            _require(self.eps_star == (n + 1 + self.eps) % 2, "p89: eps* parity")
            _require(2 * t - 3 - self.eps + self.eps_star == n, "p89: 2t-3-eps+eps* = n")
            _require(t >= k - 3, "p89: t >= k-3")
        elif self.kind == "pk_small":
            _require(k <= n < 3 * (k // 2) + k % 2 - 5, "pk_small: range")
        elif self.kind == "pk_mid":
            eps = k % 2
            _require(
                3 * (k // 2) + eps - 5 <= n <= 5 * (k // 2) + eps - 15, "pk_mid: range"
            )
            _require(self.eps_star == (n + (k + 1) // 2) % 2, "pk_mid: eps* parity")
        elif self.kind == "pk_large":
            eps = k % 2
            _require(n > 5 * (k // 2) + eps - 15, "pk_large: range")
            _require(self.r in (0, 1, 2), "pk_large: r in {0,1,2}")
            _require(n - k + 7 == 3 * self.m + self.r, "pk_large: n-k+7 = 3m+r")
            _require(t == k + 2 * self.m - 7 + self.r // 2, "pk_large: t relation")
        elif self.kind == "ck_subdiv":
            _require(k >= 5 and n >= k * k - k, "ck_subdiv: k >= 5, n >= k^2-k")
            mod = k * k - k - 2
            _require(r == (n - 2) % mod, "ck_subdiv: r = (n-2) mod (k^2-k-2)")
            _require(mod * (t - 2) + 2 + r == n, "ck_subdiv: order relation")
            _require(k == 3 * self.m + self.q and self.q in (0, 1, 2), "ck_subdiv: k = 3m+q")
        elif self.kind == "c5_star":
            _require(n >= 119, "c5_star: n >= 119")
            _require(r == (n + 7) % 18, "c5_star: r = (n+7) mod 18")
            _require(18 * t + 11 + r == n, "c5_star: 18t+11+r = n")
            _require(t >= 6, "c5_star: t >= 6")
        elif self.kind == "wheel":
            _require(self.q >= 3 and n == self.q + 1, "wheel: q >= 3")

    def as_dict(self) -> dict[str, int | str]:
        out: dict[str, int | str] = {"kind": self.kind}
        for name in _INT_FIELDS:
            out[name] = getattr(self, name)
        return out


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise InvalidParamError(what)


@dataclass(frozen=True, eq=False)
class BuildBundle:
    """One built construction, ready for coloring and verification."""

    params: ConstructionParams
    base: PlaneGraph
    stellation_set: tuple[int, ...]
    result: PlaneGraph
    landmarks: dict[str, int] = field(default_factory=dict)

    def stellator_vertex(self, index: int) -> int:
        """Vertex added for the index-th face of the stellation set."""
        return self.base.n + index


def stellate_faces(base: PlaneGraph, face_ids: Sequence[int]) -> PlaneGraph:
    """Stellate the given base faces, in order.

    Face ids refer to ``base``; faces are re-located by one of their boundary
    darts as earlier stellations renumber faces (a dart belongs to exactly
    one face, and stellating one face leaves the darts of all others alone).
    Every stellation appends one vertex and ``size`` edges, so the i-th
    face's new vertex is ``base.n + i`` and the base edges keep ids
    ``0..e(base)-1``.
    """
    if len(set(face_ids)) != len(face_ids):
        raise InvalidParamError("stellation set repeats a face")
    witnesses = [base.faces[fid].boundary[0] for fid in face_ids]
    g = base
    for tail, eid in witnesses:
        g = g.stellate_face(g.face_of_dart(tail, eid))
    return g


def _bundle(
    params: ConstructionParams,
    base: PlaneGraph,
    stellation: Sequence[int],
    landmarks: dict[str, int],
    expect_triangulation: bool = True,
) -> BuildBundle:
    result = stellate_faces(base, stellation)
    if params.kind != "wheel" and result.n != params.n:
        raise AssertionError(
            f"built {result.n} vertices for {params.kind}, expected {params.n}"
        )
    if expect_triangulation and not result.is_plane_triangulation():
        raise AssertionError(f"{params.kind} result is not a plane triangulation")
    params.validate()
    return BuildBundle(
        params=params,
        base=base,
        stellation_set=tuple(stellation),
        result=result,
        landmarks=dict(landmarks),
    )


# ----------------------------------------------------------------------
# apex fans (the shared skeleton of the path-host families)
# ----------------------------------------------------------------------


def apex_fan(middles: int, middle_edges: Iterable[int] = ()) -> PlaneGraph:
    """Two adjacent apexes joined to a row of middle vertices.

    Vertices: middles ``m_1..m_s`` are ids ``0..s-1``, apex ``x`` = s, apex
    ``y`` = s+1.  ``middle_edges`` lists gap indices i (1-based) for which the
    edge ``m_i m_{i+1}`` is present; a gap with that edge carries two
    triangles, a gap without it carries a 4-face.  The outer face is the
    triangle ``x, m_s, y``.
    """
    s = middles
    if s < 1:
        raise InvalidParamError("apex fan needs at least one middle vertex")
    gaps = set(middle_edges)
    if any(not 1 <= i < s for i in gaps):
        raise InvalidParamError("middle edge index out of range")
    x, y = s, s + 1
    edges: list[tuple[int, int]] = []
    mid_edge: dict[int, int] = {}
    for i in sorted(gaps):
        mid_edge[i] = len(edges)
        edges.append((i - 1, i))
    x_spoke = {}
    for i in range(s):
        x_spoke[i] = len(edges)
        edges.append((i, x))
    y_spoke = {}
    for i in range(s):
        y_spoke[i] = len(edges)
        edges.append((i, y))
    exy = len(edges)
    edges.append((x, y))

    rotation: list[list[int]] = []
    for i in range(s):
        r = []
        if i + 1 in gaps:
            r.append(mid_edge[i + 1])
        r.append(x_spoke[i])
        if i in gaps:
            r.append(mid_edge[i])
        r.append(y_spoke[i])
        rotation.append(r)
    rotation.append([exy] + [x_spoke[i] for i in range(s)])
    rotation.append([y_spoke[i] for i in reversed(range(s))] + [exy])

    g = build(s + 2, edges, rotation)
    outer_candidates = [
        f.id for f in g.faces if f.vertex_set == frozenset({x, y, s - 1}) and f.size == 3
    ]
    # For s == 1 without the gap edge both faces match; the later one is, by
    # convention, the outer face.
    return g.with_outer_face(outer_candidates[-1])


def build_lemma_th(p: int) -> BuildBundle:
    """Path of p vertices under two apexes, then every face stellated.

    The base H is the apex fan with all consecutive middle edges present
    (so H is a plane triangulation on p+2 vertices, hamiltonian); the result
    T_H on 3p+2 vertices stellates all 2p faces of H.  Landmarks: path
    vertices v1..vp, apexes x and y, u_i / w_i for the vertices placed in the
    faces x,v_i,v_{i+1} / y,v_i,v_{i+1}, z for the face x,y,v1 and w for the
    outer face x,y,vp.  The result's outer face is x,y,w.
    """
    if p < 1:
        raise InvalidParamError("need p >= 1")
    h = apex_fan(p, range(1, p))
    x, y = p, p + 1
    landmarks = {"x": x, "y": y}
    for i in range(1, p + 1):
        landmarks[f"v{i}"] = i - 1
    stellation = [f.id for f in h.faces]
    for idx, fid in enumerate(stellation):
        face = h.faces[fid]
        new_v = h.n + idx
        vs = face.vertex_set
        if fid == h.outer_face:
            landmarks["w"] = new_v
        elif vs == frozenset({x, y, 0}):
            landmarks["z"] = new_v
        else:
            for i in range(1, p):
                if vs == frozenset({x, i - 1, i}):
                    landmarks[f"u{i}"] = new_v
                elif vs == frozenset({y, i - 1, i}):
                    landmarks[f"w{i}"] = new_v
    params = ConstructionParams(kind="lemma_th", n=3 * p + 2, p=p)
    bundle = _bundle(params, h, stellation, landmarks)
    result = bundle.result.with_outer_face(
        bundle.result.find_face({x, y, landmarks["w"]}).id
    )
    return replace(bundle, result=result)


def build_p89_host(k: int, n: int) -> BuildBundle:
    """Join of an edge with an independent row (plus one adjacent pair when k
    is odd), then all 4-faces and eps* 3-faces stellated.

    Base: ``H = K_2 + (empty row of t-3-eps vertices u K_{eps+1})`` drawn as
    an apex fan, which has f_3 = 2+2eps, f_4 = t-3-eps and e = 2t-3+eps.
    H contains no path on k-2 vertices but does contain one on k-3.
    """
    if k not in (8, 9):
        raise InvalidParamError("this builder covers k in {8, 9}")
    if n < k:
        raise RangeMismatchError(f"need n >= k = {k}")
    eps = k % 2
    eps_star = (n + 1 + eps) % 2
    t2 = n + 3 + eps - eps_star
    assert t2 % 2 == 0
    t = t2 // 2
    s = t - 2
    h = apex_fan(s, [s - 1] if eps else [])
    landmarks = {"x": s, "y": s + 1}
    for i in range(1, s + 1):
        landmarks[f"m{i}"] = i - 1

    assert h.edge_count == 2 * t - 3 + eps
    sizes = h.face_sizes()
    assert sizes.get(3, 0) == 2 + 2 * eps and sizes.get(4, 0) == t - 3 - eps

    quads = [f.id for f in h.faces if f.size == 4]
    tris = [f.id for f in h.faces if f.size == 3]
    stellation = quads + tris[:eps_star]
    params = ConstructionParams(
        kind="p89", n=n, k=k, t=t, eps=eps, eps_star=eps_star
    )
    return _bundle(params, h, stellation, landmarks)


def _fan_into_face(
    g: PlaneGraph,
    x: int,
    y: int,
    start_face_id: int,
    marker: int,
    count: int,
    landmarks: dict[str, int],
    prefix: str = "a",
) -> tuple[PlaneGraph, list[int]]:
    """Add ``count`` vertices joined to x and y, starting inside the given
    face and re-splitting towards ``marker`` each time.

    Each insertion splits the current face in two; the piece containing the
    marker (and the just-added vertex) receives the next one, producing the
    ladder of 4-faces x,a_i,y,a_{i+1}.
    """
    face_id = start_face_id
    added = []
    for j in range(count):
        new_v = g.n
        g = g.add_vertex_in_face(face_id, [x, y])
        landmarks[f"{prefix}{j + 1}"] = new_v
        added.append(new_v)
        if j + 1 < count:
            face_id = next(
                f.id
                for f in g.faces
                if marker in f.vertex_set and new_v in f.vertex_set
            )
    return g, added


def build_pk_mid(k: int, n: int) -> BuildBundle:
    """Mid-range path host: T_H plus a fan of new vertices in its outer face.

    Base T: take T_H for p = floor(k/2) - 4, add t - 3*floor(k/2) + 10 new
    vertices inside the outer face x,y,w, each joined to x and y, plus one
    edge between the first two of them when k is odd.  Stellate all 4-faces,
    plus the face x,w,v_p when eps* = 1.
    """
    if k < 10:
        raise InvalidParamError("this builder covers k >= 10")
    eps = k % 2
    half = k // 2
    if not (3 * half + eps - 5 <= n <= 5 * half + eps - 15):
        raise RangeMismatchError(f"n = {n} outside the mid range for k = {k}")
    eps_star = (n + (k + 1) // 2) % 2
    t2 = n - eps_star - 10 + 3 * half + eps
    assert t2 % 2 == 0
    t = t2 // 2
    s = t - 3 * half + 10
    assert s >= 2 + eps

    lemma = build_lemma_th(half - 4)
    th = lemma.result
    landmarks = dict(lemma.landmarks)
    x, y, w = landmarks["x"], landmarks["y"], landmarks["w"]
    vp = landmarks[f"v{half - 4}"]

    g, added = _fan_into_face(th, x, y, th.outer_face, w, s, landmarks)
    if eps == 1:
        quad = next(
            f for f in g.faces if f.vertex_set == frozenset({x, y, added[0], added[1]})
        )
        g = g.add_edge_in_face(quad.id, added[0], added[1])

    assert g.n == t
    assert g.edge_count == 2 * t + 3 * half - 16 + eps
    assert g.face_sizes().get(4, 0) == s - eps

    stellation = [f.id for f in g.faces if f.size == 4]
    if eps_star == 1:
        stellation.append(g.find_face({x, w, vp}, size=3).id)
    params = ConstructionParams(
        kind="pk_mid", n=n, k=k, p=half - 4, t=t, eps=eps, eps_star=eps_star
    )
    return _bundle(params, g, stellation, landmarks)


def build_pk_small(k: int, n: int) -> BuildBundle:
    """Small-range path host: the lemma base H with n-k+3 faces stellated."""
    if k < 10:
        raise InvalidParamError("this builder covers k >= 10")
    eps = k % 2
    if not (k <= n < 3 * (k // 2) + eps - 5):
        raise RangeMismatchError(f"n = {n} outside the small range for k = {k}")
    lemma = build_lemma_th(k - 5)
    h = lemma.base
    landmarks = {
        name: v for name, v in lemma.landmarks.items() if name[0] in "xyv"
    }
    count = n - k + 3
    assert count < 2 * k - 10
    stellation = [f.id for f in h.faces][:count]
    params = ConstructionParams(kind="pk_small", n=n, k=k, p=k - 5, eps=eps)
    return _bundle(params, h, stellation, landmarks)


def build_pk_large(k: int, n: int) -> BuildBundle:
    """Large-range path host: lemma base plus an outer fan with a matching.

    Base T': take H for p = k-9, add t-k+7 >= 5 vertices in the outer face
    joined to x and y, and a matching between consecutive pairs of the new
    vertices.  Stellate all 4-faces, plus F_0 when r = 1 (F_0 = x,y,v_{k-9}
    for k = 10, else x,v_{k-10},v_{k-9}).
    """
    if k < 10:
        raise InvalidParamError("this builder covers k >= 10")
    eps = k % 2
    if n <= 5 * (k // 2) + eps - 15:
        raise RangeMismatchError(f"n = {n} outside the large range for k = {k}")
    r = (n - k + 7) % 3
    m = (n - k + 7 - r) // 3
    if not (m >= 3 or (m == 2 and r == 2)):
        raise RangeMismatchError(f"no admissible (m, r) split for k = {k}, n = {n}")
    eps_prime = 1 if r == 1 else 0
    t = k + 2 * m - 7 + r // 2
    s = t - k + 7
    assert s >= 5
    assert t + (s + 1) // 2 + eps_prime == n

    p = k - 9
    h = apex_fan(p, range(1, p))
    x, y = p, p + 1
    landmarks = {"x": x, "y": y}
    for i in range(1, p + 1):
        landmarks[f"v{i}"] = i - 1
    vp = p - 1

    g, added = _fan_into_face(h, x, y, h.outer_face, vp, s, landmarks, prefix="b")
    for j in range(0, 2 * (s // 2), 2):
        u, v = added[j], added[j + 1]
        quad = next(
            f for f in g.faces if f.vertex_set == frozenset({x, y, u, v})
        )
        g = g.add_edge_in_face(quad.id, u, v)

    assert g.n == t
    assert g.edge_count == 2 * t + k - 13 + s // 2
    sizes = g.face_sizes()
    assert sizes.get(4, 0) == (s + 1) // 2
    assert set(sizes) <= {3, 4}

    stellation = [f.id for f in g.faces if f.size == 4]
    if eps_prime == 1:
        if k == 10:
            f0 = g.find_face({x, y, landmarks["v1"]}, size=3)
        else:
            f0 = g.find_face({x, landmarks[f"v{k - 10}"], vp}, size=3)
        stellation.append(f0.id)
    params = ConstructionParams(
        kind="pk_large", n=n, k=k, p=p, t=t, m=m, r=r, eps=eps, eps_prime=eps_prime
    )
    return _bundle(params, g, stellation, landmarks)


# ----------------------------------------------------------------------
# cycle hosts
# ----------------------------------------------------------------------


def build_wheel(q: int) -> BuildBundle:
    """Wheel W_q: center 0, rim 1..q, rim as the outer face.

    Spoke to rim vertex i gets edge id i-1; rim edge (v_i, v_{i+1}) gets id
    q+i-1, indices wrapping so rim edge q joins v_q and v_1.
    """
    if q < 3:
        raise InvalidParamError("wheels need q >= 3")
    edges = [(0, i) for i in range(1, q + 1)]
    edges += [(i, i % q + 1) for i in range(1, q + 1)]
    rotation: list[list[int]] = [list(reversed(range(q)))]
    for i in range(1, q + 1):
        rim_prev = q + (i - 2) % q
        rim_next = q + i - 1
        rotation.append([rim_prev, i - 1, rim_next])
    g = build(q + 1, edges, rotation)
    rim_face = next(f for f in g.faces if f.size == q and 0 not in f.vertex_set)
    g = g.with_outer_face(rim_face.id)
    landmarks = {"v": 0}
    for i in range(1, q + 1):
        landmarks[f"v{i}"] = i
    params = ConstructionParams(kind="wheel", n=q + 1, q=q)
    params.validate()
    return BuildBundle(
        params=params, base=g, stellation_set=(), result=g, landmarks=landmarks
    )


@dataclass(frozen=True)
class C5HostReport:
    """Property report for a candidate C5-free host."""

    order: int
    t: int
    connected: bool
    c5_free: bool
    faces_3_6_only: bool
    no_adjacent_6_faces: bool
    order_ok: bool
    edge_count_ok: bool
    f6_ok: bool
    f3_ok: bool

    @property
    def all_ok(self) -> bool:
        return all(
            (
                self.connected,
                self.c5_free,
                self.faces_3_6_only,
                self.no_adjacent_6_faces,
                self.order_ok,
                self.edge_count_ok,
                self.f6_ok,
                self.f3_ok,
            )
        )

    def failures(self) -> list[str]:
        return [
            name
            for name in (
                "connected",
                "c5_free",
                "faces_3_6_only",
                "no_adjacent_6_faces",
                "order_ok",
                "edge_count_ok",
                "f6_ok",
                "f3_ok",
            )
            if not getattr(self, name)
        ]


def verify_c5_host(h: PlaneGraph) -> C5HostReport:
    """Check the shape required of a C5-free host for the stellation recipe:
    connected, C5-free, faces of sizes 3 and 6 only with no two 6-faces
    sharing an edge, order 15t+9, size (12|H|-33)/5, f6 = 3t+2, f3 = 18t+6.
    """
    sizes = h.face_sizes()
    faces_3_6_only = set(sizes) <= {3, 6}
    six_faces = [f for f in h.faces if f.size == 6]
    edge_use: dict[int, int] = {}
    for f in six_faces:
        for e in f.edge_ids:
            edge_use[e] = edge_use.get(e, 0) + 1
    no_adjacent = all(c <= 1 for c in edge_use.values())
    order_ok = h.n % 15 == 9 and h.n >= 24
    t = (h.n - 9) // 15
    edge_count_ok = 5 * h.edge_count == 12 * h.n - 33
    f6_ok = sizes.get(6, 0) == 3 * t + 2
    f3_ok = sizes.get(3, 0) == 18 * t + 6
    return C5HostReport(
        order=h.n,
        t=t,
        connected=True,  # valid PlaneGraphs are connected by construction
        c5_free=search.contains(h, search.Pattern.cycle(5)) is None,
        faces_3_6_only=faces_3_6_only,
        no_adjacent_6_faces=no_adjacent,
        order_ok=order_ok,
        edge_count_ok=edge_count_ok,
        f6_ok=f6_ok,
        f3_ok=f3_ok,
    )


def build_c5_star(h: PlaneGraph, r: int) -> BuildBundle:
    """Stellate every 6-face of a qualifying host, plus r of its 3-faces."""
    if not 0 <= r < 18:
        raise InvalidParamError("need 0 <= r < 18")
    report = verify_c5_host(h)
    if not report.all_ok:
        raise HostRejectedError(
            "host fails required properties: " + ", ".join(report.failures())
        )
    t = report.t
    if t < 6:
        raise HostRejectedError("host too small: need order 15t+9 with t >= 6")
    stellation = [f.id for f in h.faces if f.size == 6]
    stellation += [f.id for f in h.faces if f.size == 3][:r]
    params = ConstructionParams(kind="c5_star", n=18 * t + 11 + r, t=t, r=r, k=5)
    return _bundle(params, h, stellation, {})


def build_ck_subdiv(
    k: int,
    n: int,
    seed: Optional[PlaneGraph] = None,
    replacements: Optional[Sequence[PlaneGraph]] = None,
) -> BuildBundle:
    """Cycle-free host by subdividing a triangulation and patching segments.

    Start from a triangulation T on t vertices.  Writing k = 3m+q, subdivide
    every edge m times when q = 2; otherwise take a perfect matching of the
    dual (one primal edge per face) and subdivide matched edges m times and
    the rest m-1 times for q = 0, the other way round for q = 1.  Then glue a
    triangulation on k-1 vertices onto every segment (by default the stacked
    one; pass ``replacements`` to cycle through a catalog).  The intermediate
    graph T' has no k-cycle but keeps each original face as a (k+1)-cycle;
    stellating its 2t-4 large faces and r of its 3-faces yields the final
    triangulation on n vertices.
    """
    if k < 5:
        raise InvalidParamError("need k >= 5")
    if n < k * k - k:
        raise RangeMismatchError(f"need n >= k^2-k = {k * k - k}")
    mod = k * k - k - 2
    r = (n - 2) % mod
    t = (n - 2 - r) // mod + 2
    m, q = k // 3, k % 3

    base_t = seed if seed is not None else stacked_triangulation(t)
    if not base_t.is_plane_triangulation():
        raise NotTriangulationError("seed must be a plane triangulation")
    if base_t.n != t:
        raise InvalidParamError(f"seed has {base_t.n} vertices, need t = {t}")

    if q == 2:
        times = {eid: m for eid in range(base_t.edge_count)}
    else:
        matched = set(perfect_matching(base_t.dual()))
        assert len(matched) == t - 2
        if q == 0:
            times = {
                eid: (m if eid in matched else m - 1)
                for eid in range(base_t.edge_count)
            }
        else:
            times = {
                eid: (m - 1 if eid in matched else m)
                for eid in range(base_t.edge_count)
            }

    g = base_t
    segments: list[int] = []
    for eid in range(base_t.edge_count):
        segments.extend(g.segment_ids_after_subdivision(eid, times[eid]))
        g = g.subdivide_edge(eid, times[eid])

    if replacements is None:
        replacements = [stacked_triangulation(k - 1)]
    for patch in replacements:
        if patch.n != k - 1:
            raise InvalidParamError("replacement triangulations must have k-1 vertices")
    for i, seg in enumerate(segments):
        patch = replacements[i % len(replacements)]
        anchor = patch.faces[patch.outer_face].edge_ids[0]
        g = g.glue_on_edge(seg, patch, anchor, side=0)

    t_prime = g
    assert t_prime.n == t + (k * k - k - 5) * (t - 2)
    assert t_prime.edge_count == 3 * (k * k - 2 * k - 3) * (t - 2)
    sizes = t_prime.face_sizes()
    assert sizes.get(4, 0) == 0, "segment patching must not leave 4-faces"
    big = [f.id for f in t_prime.faces if f.size > 4]
    assert len(big) == 2 * t - 4
    tris = [f.id for f in t_prime.faces if f.size == 3]
    assert len(tris) >= r

    stellation = big + tris[:r]
    params = ConstructionParams(kind="ck_subdiv", n=n, k=k, t=t, q=q, m=m, r=r)
    return _bundle(params, t_prime, stellation, {})


def expected_colors(params: ConstructionParams) -> int:
    """Color count of the face-based scheme on this construction, via the
    closed-form bookkeeping of each family."""
    k, n, t, r = params.k, params.n, params.t, params.r
    if params.kind == "lemma_th":
        return 3 * params.p + 2 * params.p  # e(H) + f_3(H)
    if params.kind == "p89":
        value = 3 * t - 6 + params.eps_star
        assert 2 * value == 3 * n + 3 * params.eps - params.eps_star - 3
        return value
    if params.kind == "pk_small":
        return n + 2 * k - 12
    if params.kind == "pk_mid":
        value2 = 3 * n + 9 * (k // 2) + 3 * params.eps - 42 - params.eps_star
        assert value2 % 2 == 0
        return value2 // 2
    if params.kind == "pk_large":
        value = 3 * t - 6 + params.eps_prime
        assert value == 2 * n + k - 13 - params.eps_prime - r // 2
        return value
    if params.kind == "ck_subdiv":
        return (3 * k * k - 6 * k - 7) * (t - 2) + r
    if params.kind == "c5_star":
        value = 39 * t + 17 + r
        assert 18 * value == 39 * n - 123 - 21 * r
        return value
    if params.kind == "wheel":
        raise InvalidParamError("wheel colorings depend on the target cycle length")
    raise InvalidParamError(f"no color formula for kind {params.kind!r}")
