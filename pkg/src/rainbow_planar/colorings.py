"""Edge colorings, the two coloring schemes, and the counting audits.

Color ids are dense integers ``1..m``.  The face-based scheme gives the base
graph a rainbow prefix (colors ``1..e(base)``) and one fresh color per
stellated face, so "contains a rainbow copy of the base" is checkable by id
range and the color count is ``e(base) + |stellation set|`` by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, Mapping

from .errors import InvalidParamError
from .plane_graph import PlaneGraph

if TYPE_CHECKING:  # pragma: no cover
    from .constructions import BuildBundle


@dataclass(frozen=True)
class EdgeColoring:
    """Total map edge id -> color id in ``[1, m]``."""

    colors: tuple[int, ...]
    m: int

    def __post_init__(self) -> None:
        if any(not 1 <= c <= self.m for c in self.colors):
            raise ValueError("colors must lie in 1..m")

    @property
    def edge_count(self) -> int:
        return len(self.colors)

    def color(self, eid: int) -> int:
        return self.colors[eid]

    def used_colors(self) -> set[int]:
        return set(self.colors)

    def is_surjective(self) -> bool:
        return self.used_colors() == set(range(1, self.m + 1))

    def classes(self) -> dict[int, tuple[int, ...]]:
        by_color: dict[int, list[int]] = {}
        for eid, c in enumerate(self.colors):
            by_color.setdefault(c, []).append(eid)
        return {c: tuple(es) for c, es in sorted(by_color.items())}

    def recolored(self, eid: int, color: int) -> "EdgeColoring":
        """Copy with one edge recolored (used for tamper tests)."""
        cs = list(self.colors)
        cs[eid] = color
        return EdgeColoring(tuple(cs), max(self.m, color))


def rainbow_coloring(g: PlaneGraph) -> EdgeColoring:
    """Every edge its own color."""
    return EdgeColoring(tuple(range(1, g.edge_count + 1)), g.edge_count)


def rainbow_plus_faces(bundle: "BuildBundle") -> EdgeColoring:
    """The face-based scheme used by every triangulation construction here.

    Base edges get distinct colors ``1..e(base)``; all edges added inside the
    i-th stellated face share color ``e(base) + i``.  Surjective with exactly
    ``e(base) + |stellation|`` colors.
    """
    base, result = bundle.base, bundle.result
    eb = base.edge_count
    if result.edges[: eb] != base.edges:
        raise ValueError("bundle result does not extend its base edge list")
    colors = list(range(1, eb + 1))
    for i, fid in enumerate(bundle.stellation_set):
        size = base.faces[fid].size
        colors.extend([eb + i + 1] * size)
    if len(colors) != result.edge_count:
        raise ValueError("stellation set does not account for all added edges")
    return EdgeColoring(tuple(colors), eb + len(bundle.stellation_set))


def wheel_coloring(q: int, k: int) -> EdgeColoring:
    """The explicit wheel coloring with ``floor((2k-7)q/(k-3))`` colors.

    Expects the edge layout of ``build_wheel(q)``: spoke to rim vertex i has
    id ``i-1``, rim edge (v_i, v_{i+1}) has id ``q+i-1`` (indices in [1, q],
    wrapping).  Spokes get colors 1..q; rim colors follow a periodic pattern
    with period ``k-3`` that repeats each color on a pair of nearby edges, so
    no central k-cycle is rainbow while a rainbow C_{k-1} survives.
    """
    if k < 5:
        raise InvalidParamError("wheel coloring needs k >= 5")
    if q < k - 1:
        raise InvalidParamError(f"wheel coloring needs q >= k-1 = {k - 1}")
    period = k - 3
    colors = [0] * (2 * q)
    for i in range(1, q + 1):
        colors[i - 1] = i
    for i in range(1, q + 1):
        r = i % period
        if r == 0:
            c = _exact_mul(k - 4, i, period) + q
        elif r == 1:
            c = _exact_mul(k - 4, i - 1, period) + q + (0 if i == q else 1)
        elif r == 2:
            c = _exact_mul(k - 4, i - 2, period) + q + 1
        else:
            c = _exact_mul(k - 4, i - r, period) + q + r - 1
        colors[q + i - 1] = c
    m = (2 * k - 7) * q // (k - 3)
    coloring = EdgeColoring(tuple(colors), m)
    assert coloring.is_surjective(), "wheel coloring must hit every color"
    return coloring


def _exact_mul(factor: int, num: int, den: int) -> int:
    if num % den:
        raise AssertionError(f"{num} not divisible by {den}")
    return factor * (num // den)


@dataclass(frozen=True)
class VertexPalette:
    """Colors appearing on the wheel around one vertex of a triangulation."""

    vertex: int
    colors: frozenset[int]

    @property
    def size(self) -> int:
        return len(self.colors)


def vertex_palette(t: PlaneGraph, coloring: EdgeColoring, v: int) -> VertexPalette:
    """Palette of ``v``: colors on its spokes and on the rim around it.

    The rim consists of the edges between rotation-consecutive neighbors,
    which all exist in a plane triangulation on >= 4 vertices.
    """
    if t.n < 4:
        raise ValueError("vertex palettes need a triangulation on >= 4 vertices")
    seen: set[int] = set()
    for eid in t.rotation[v]:
        seen.add(coloring.color(eid))
    nbrs = t.neighbors(v)
    d = len(nbrs)
    for i in range(d):
        a, b = nbrs[i], nbrs[(i + 1) % d]
        if not t.has_edge(a, b):
            raise ValueError(
                f"neighbors {a},{b} of {v} not adjacent; host is not a triangulation"
            )
        seen.add(coloring.color(t.edge_id(a, b)))
    return VertexPalette(vertex=v, colors=frozenset(seen))


@dataclass(frozen=True)
class PaletteSumAudit:
    total: int
    lower: int
    passed: bool


def palette_sum_audit(t: PlaneGraph, coloring: EdgeColoring) -> PaletteSumAudit:
    """Check sum of palette sizes >= 4m for a surjective coloring.

    Holds for every surjective coloring of a plane triangulation; a failure
    signals an implementation bug, not an interesting input.
    """
    if not coloring.is_surjective():
        raise ValueError("palette sum audit requires a surjective coloring")
    total = sum(vertex_palette(t, coloring, v).size for v in range(t.n))
    lower = 4 * coloring.m
    return PaletteSumAudit(total=total, lower=lower, passed=total >= lower)


@dataclass(frozen=True)
class WheelAudit:
    """Per-color counters over the central k-cycles of a wheel.

    For each color a: ``multiplicity`` is how often a is used, ``beta`` its
    spoke count, ``beta_prime`` its rim count, ``eta_j[a][j]`` the number of
    central k-cycles carrying exactly j edges of color a, and ``eta[a]`` the
    number carrying at least two (the cycles a alone stops from being
    rainbow).
    """

    q: int
    k: int
    multiplicity: Mapping[int, int]
    beta: Mapping[int, int]
    beta_prime: Mapping[int, int]
    eta_j: Mapping[int, Mapping[int, int]]
    eta: Mapping[int, int]

    def colors_with_multiplicity(self, ell: int) -> set[int]:
        return {a for a, l in self.multiplicity.items() if l == ell}

    def class_size_histogram(self) -> dict[int, int]:
        hist: dict[int, int] = {}
        for l in self.multiplicity.values():
            hist[l] = hist.get(l, 0) + 1
        return hist


def central_k_cycles(q: int, k: int) -> list[list[int]]:
    """Edge-id lists of the q central k-cycles of ``build_wheel(q)``."""
    if q < k - 1:
        raise InvalidParamError("central k-cycles need q >= k-1")
    cycles = []
    for i in range(1, q + 1):
        spokes = [i - 1, (i + k - 3) % q]
        rims = [q + (i - 1 + j) % q for j in range(k - 2)]
        cycles.append(spokes + rims)
    return cycles


def wheel_audit(q: int, k: int, coloring: EdgeColoring) -> WheelAudit:
    """Count, per color, how central k-cycles interact with the coloring.

    Asserts the bookkeeping identities: the incidence count of a color equals
    2*beta + (k-2)*beta_prime (spokes sit on two central cycles, rim edges on
    k-2); eta(a) <= (k-2)*mult(a)/2; and for k = 6 a color used twice stops
    at most three central 6-cycles.
    """
    if coloring.edge_count != 2 * q:
        raise ValueError("coloring does not match a wheel on q rim vertices")
    cycles = central_k_cycles(q, k)
    mult: dict[int, int] = {}
    beta: dict[int, int] = {}
    beta_prime: dict[int, int] = {}
    for eid, c in enumerate(coloring.colors):
        mult[c] = mult.get(c, 0) + 1
        if eid < q:
            beta[c] = beta.get(c, 0) + 1
        else:
            beta_prime[c] = beta_prime.get(c, 0) + 1
    eta_j: dict[int, dict[int, int]] = {c: {} for c in mult}
    for cyc in cycles:
        per_color: dict[int, int] = {}
        for eid in cyc:
            c = coloring.colors[eid]
            per_color[c] = per_color.get(c, 0) + 1
        for c, j in per_color.items():
            eta_j[c][j] = eta_j[c].get(j, 0) + 1
    eta = {c: sum(cnt for j, cnt in js.items() if j >= 2) for c, js in eta_j.items()}

    for c, l in mult.items():
        b = beta.get(c, 0)
        bp = beta_prime.get(c, 0)
        assert b + bp == l
        incidences = sum(j * cnt for j, cnt in eta_j[c].items())
        assert incidences == 2 * b + (k - 2) * bp
        assert 2 * eta[c] <= (k - 2) * l
        if k == 6 and l == 2:
            assert eta[c] <= 3
    assert sum(l for l in mult.values()) == 2 * q
    return WheelAudit(
        q=q,
        k=k,
        multiplicity=mult,
        beta=beta,
        beta_prime=beta_prime,
        eta_j=eta_j,
        eta=eta,
    )
