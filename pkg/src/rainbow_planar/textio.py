"""Line-oriented text formats: graphs, colorings, certificates.

Formats are plain UTF-8 and human-auditable.  Writers are deterministic and
loaders re-validate everything they read, so save -> load -> save is
byte-identical and a loaded certificate re-verifies to the same summary.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator, Optional, Sequence

from .colorings import EdgeColoring
from .constructions import _INT_FIELDS, BuildBundle, ConstructionParams
from .errors import FormatError
from .plane_graph import PlaneGraph, build

CERT_HEADER = "rainbow-planar-certificate v1"


# ----------------------------------------------------------------------
# graphs
# ----------------------------------------------------------------------


def graph_to_text(g: PlaneGraph) -> str:
    """Serialize: ``n``, ``e id u v`` per edge, ``r v ids...`` per vertex,
    and an ``outer`` witness of three consecutive boundary vertices."""
    lines = [f"n {g.n}"]
    for eid, (u, v) in enumerate(g.edges):
        lines.append(f"e {eid} {u} {v}")
    for v in range(g.n):
        ids = " ".join(str(e) for e in g.rotation[v])
        lines.append(f"r {v} {ids}")
    a, b, c = g.outer_witness()
    lines.append(f"outer {a} {b} {c}")
    return "\n".join(lines)


def _parse_graph_lines(lines: list[str], start: int) -> tuple[PlaneGraph, int]:
    i = start
    if i >= len(lines) or not lines[i].startswith("n "):
        raise FormatError(f"expected 'n <count>' at line {i + 1}")
    try:
        n = int(lines[i].split()[1])
    except (IndexError, ValueError) as exc:
        raise FormatError(f"bad vertex count at line {i + 1}") from exc
    i += 1
    edges: list[tuple[int, int]] = []
    while i < len(lines) and lines[i].startswith("e "):
        parts = lines[i].split()
        if len(parts) != 4:
            raise FormatError(f"bad edge line {i + 1}")
        eid, u, v = int(parts[1]), int(parts[2]), int(parts[3])
        if eid != len(edges):
            raise FormatError(f"edge ids must be consecutive at line {i + 1}")
        edges.append((u, v))
        i += 1
    rotation: list[list[int]] = []
    while i < len(lines) and lines[i].startswith("r "):
        parts = lines[i].split()
        v = int(parts[1])
        if v != len(rotation):
            raise FormatError(f"rotation lines must be in vertex order at line {i + 1}")
        rotation.append([int(x) for x in parts[2:]])
        i += 1
    if len(rotation) != n:
        raise FormatError("missing rotation lines")
    outer: Optional[tuple[int, int, int]] = None
    if i < len(lines) and lines[i].startswith("outer "):
        parts = lines[i].split()
        if len(parts) != 4:
            raise FormatError(f"bad outer line {i + 1}")
        outer = (int(parts[1]), int(parts[2]), int(parts[3]))
        i += 1
    g = build(n, edges, rotation=rotation, outer=outer)
    return g, i


def graph_from_text(text: str) -> PlaneGraph:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    g, end = _parse_graph_lines(lines, 0)
    if end != len(lines):
        raise FormatError("trailing content after graph")
    return g


def graphs_from_text(text: str) -> Iterator[PlaneGraph]:
    """Parse a concatenation of graph blocks (catalog files)."""
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    i = 0
    while i < len(lines):
        g, i = _parse_graph_lines(lines, i)
        yield g


# ----------------------------------------------------------------------
# colorings
# ----------------------------------------------------------------------


def coloring_to_text(c: EdgeColoring) -> str:
    lines = [f"m {c.m}"]
    lines.extend(f"c {eid} {col}" for eid, col in enumerate(c.colors))
    return "\n".join(lines)


def coloring_from_text(text: str) -> EdgeColoring:
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    c, end = _parse_coloring_lines(lines, 0)
    if end != len(lines):
        raise FormatError("trailing content after coloring")
    return c


def _parse_coloring_lines(lines: list[str], start: int) -> tuple[EdgeColoring, int]:
    i = start
    if i >= len(lines) or not lines[i].startswith("m "):
        raise FormatError(f"expected 'm <count>' at line {i + 1}")
    m = int(lines[i].split()[1])
    i += 1
    colors: list[int] = []
    while i < len(lines) and lines[i].startswith("c "):
        parts = lines[i].split()
        if len(parts) != 3 or int(parts[1]) != len(colors):
            raise FormatError(f"bad color line {i + 1}")
        colors.append(int(parts[2]))
        i += 1
    try:
        return EdgeColoring(tuple(colors), m), i
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


# ----------------------------------------------------------------------
# certificates
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = "-"

    def to_line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"check {self.name} {status} {self.detail}"

    @staticmethod
    def from_line(line: str) -> "CheckResult":
        parts = line.split(" ", 3)
        if len(parts) < 3 or parts[0] != "check":
            raise FormatError(f"bad check line: {line!r}")
        detail = parts[3] if len(parts) == 4 else "-"
        return CheckResult(name=parts[1], passed=parts[2] == "pass", detail=detail)


@dataclass(frozen=True)
class Certificate:
    """The persisted artifact of one build: parameters, base, stellation
    set, result, optional coloring, and the verification summary."""

    params: ConstructionParams
    base: PlaneGraph
    stellation_set: tuple[int, ...]
    result: PlaneGraph
    landmarks: dict[str, int] = field(default_factory=dict)
    coloring: Optional[EdgeColoring] = None
    checks: tuple[CheckResult, ...] = ()

    @staticmethod
    def from_bundle(bundle: BuildBundle) -> "Certificate":
        return Certificate(
            params=bundle.params,
            base=bundle.base,
            stellation_set=bundle.stellation_set,
            result=bundle.result,
            landmarks=dict(bundle.landmarks),
        )

    def to_bundle(self) -> BuildBundle:
        return BuildBundle(
            params=self.params,
            base=self.base,
            stellation_set=self.stellation_set,
            result=self.result,
            landmarks=dict(self.landmarks),
        )

    def with_coloring(self, coloring: EdgeColoring) -> "Certificate":
        return replace(self, coloring=coloring)

    def with_checks(self, checks: Sequence[CheckResult]) -> "Certificate":
        return replace(self, checks=tuple(checks))

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)


def certificate_to_text(cert: Certificate) -> str:
    lines = [CERT_HEADER, "[params]", f"kind {cert.params.kind}"]
    for name in _INT_FIELDS:
        lines.append(f"{name} {getattr(cert.params, name)}")
    lines.append("[landmarks]")
    for name in sorted(cert.landmarks):
        lines.append(f"landmark {name} {cert.landmarks[name]}")
    lines.append("[stellation]")
    lines.append("faces " + " ".join(str(f) for f in cert.stellation_set))
    lines.append("[base]")
    lines.append(graph_to_text(cert.base))
    lines.append("[result]")
    lines.append(graph_to_text(cert.result))
    if cert.coloring is not None:
        lines.append("[coloring]")
        lines.append(coloring_to_text(cert.coloring))
    if cert.checks:
        lines.append("[checks]")
        lines.extend(c.to_line() for c in cert.checks)
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str) -> Certificate:
    lines = [ln.rstrip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != CERT_HEADER:
        raise FormatError("not a certificate file")
    sections: dict[str, list[str]] = {}
    current: Optional[str] = None
    for ln in lines[1:]:
        if ln.startswith("[") and ln.endswith("]"):
            current = ln[1:-1]
            if current in sections:
                raise FormatError(f"duplicate section [{current}]")
            sections[current] = []
        else:
            if current is None:
                raise FormatError(f"content before first section: {ln!r}")
            sections[current].append(ln)

    for required in ("params", "base", "result", "stellation"):
        if required not in sections:
            raise FormatError(f"missing section [{required}]")

    kv: dict[str, str] = {}
    for ln in sections["params"]:
        key, _, value = ln.partition(" ")
        kv[key] = value
    try:
        params = ConstructionParams(
            kind=kv["kind"], **{name: int(kv[name]) for name in _INT_FIELDS}
        )
    except KeyError as exc:
        raise FormatError(f"missing parameter {exc}") from exc
    params.validate()

    landmarks: dict[str, int] = {}
    for ln in sections.get("landmarks", []):
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "landmark":
            raise FormatError(f"bad landmark line: {ln!r}")
        landmarks[parts[1]] = int(parts[2])

    stell_lines = sections["stellation"]
    if len(stell_lines) != 1 or not stell_lines[0].startswith("faces"):
        raise FormatError("bad [stellation] section")
    stellation = tuple(int(x) for x in stell_lines[0].split()[1:])

    base, end = _parse_graph_lines(sections["base"], 0)
    if end != len(sections["base"]):
        raise FormatError("trailing content in [base]")
    result, end = _parse_graph_lines(sections["result"], 0)
    if end != len(sections["result"]):
        raise FormatError("trailing content in [result]")

    coloring = None
    if "coloring" in sections:
        coloring, end = _parse_coloring_lines(sections["coloring"], 0)
        if end != len(sections["coloring"]):
            raise FormatError("trailing content in [coloring]")
        if coloring.edge_count != result.edge_count:
            raise FormatError("coloring does not cover the result's edges")

    checks = tuple(CheckResult.from_line(ln) for ln in sections.get("checks", []))

    if any(not 0 <= f < len(base.faces) for f in stellation):
        raise FormatError("stellation face id out of range")
    return Certificate(
        params=params,
        base=base,
        stellation_set=stellation,
        result=result,
        landmarks=landmarks,
        coloring=coloring,
        checks=checks,
    )
