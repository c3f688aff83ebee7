"""Certificate verification: named checks with deterministic summaries.

Each check produces a :class:`CheckResult` whose detail string is stable
across runs, so re-verifying a loaded certificate reproduces its summary
byte for byte.
"""

from __future__ import annotations

import random
from typing import Callable, Optional, Sequence

from . import search
from .colorings import EdgeColoring, palette_sum_audit, wheel_coloring
from .constructions import expected_colors
from .errors import InvalidParamError
from .search import Pattern, Witness
from .textio import Certificate, CheckResult

PALETTE_SAMPLES = 100
DEFAULT_SEED = 20240601


def default_pattern(cert: Certificate) -> Optional[Pattern]:
    kind, k = cert.params.kind, cert.params.k
    if kind in ("p89", "pk_small", "pk_mid", "pk_large"):
        return Pattern.path(k)
    if kind in ("ck_subdiv", "c5_star"):
        return Pattern.cycle(k)
    return None


def _fmt_witness(w: Optional[Witness]) -> str:
    if w is None:
        return "-"
    vs = ",".join(str(v) for v in w.vertices)
    es = ",".join(str(e) for e in w.edge_ids)
    return f"v:{vs};e:{es}"


def _precursor(cert: Certificate, pattern: Pattern) -> Pattern:
    # The accompanying rainbow structure: one shorter for paths and wheels,
    # one longer for the cycle-free subdivision hosts.
    if pattern.kind == "path":
        return Pattern.path(pattern.k - 1)
    if cert.params.kind == "ck_subdiv":
        return Pattern.cycle(pattern.k + 1)
    return Pattern.cycle(pattern.k - 1)


def _check_structure(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    g = cert.result
    ok = g.n == cert.base.n + len(cert.stellation_set)
    detail = f"n={g.n};e={g.edge_count};f={len(g.faces)}"
    if cert.params.kind == "wheel":
        ok = ok and g.edge_count == 2 * cert.params.q
    else:
        ok = ok and g.is_plane_triangulation()
    return CheckResult("structure", ok, detail)


def _check_vertex_count(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    want = cert.params.n
    return CheckResult("vertex-count", cert.result.n == want, f"n={cert.result.n};want={want}")


def _check_color_count(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    if cert.coloring is None:
        return CheckResult("color-count", False, "uncolored")
    if cert.params.kind == "wheel":
        if pattern is None or pattern.kind != "cycle":
            raise InvalidParamError("wheel color count needs a cycle pattern")
        k, q = pattern.k, cert.params.q
        want = (2 * k - 7) * q // (k - 3)
    else:
        want = expected_colors(cert.params)
    ok = cert.coloring.m == want and cert.coloring.is_surjective()
    return CheckResult("color-count", ok, f"m={cert.coloring.m};want={want}")


def _check_contains(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    assert pattern is not None
    w = search.contains(cert.result, pattern)
    return CheckResult(f"contains-{pattern.label}", w is not None, _fmt_witness(w))


def _check_no_rainbow(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    assert pattern is not None
    if cert.coloring is None:
        return CheckResult(f"no-rainbow-{pattern.label}", False, "uncolored")
    w = search.find_rainbow(cert.result, cert.coloring, pattern)
    return CheckResult(f"no-rainbow-{pattern.label}", w is None, _fmt_witness(w))


def _check_rainbow_precursor(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    assert pattern is not None
    pre = _precursor(cert, pattern)
    if cert.coloring is None:
        return CheckResult(f"rainbow-{pre.label}", False, "uncolored")
    w = search.find_rainbow(cert.result, cert.coloring, pre)
    return CheckResult(f"rainbow-{pre.label}", w is not None, _fmt_witness(w))


def _check_base_free(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    assert pattern is not None
    if pattern.kind == "path":
        probe = Pattern.path(pattern.k - 2)
    else:
        probe = pattern
    w = search.contains(cert.base, probe)
    return CheckResult(f"base-{probe.label}-free", w is None, _fmt_witness(w))


def _check_base_rainbow(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    # Base edges occupy the color prefix 1..e(base), one color each, so the
    # result carries a rainbow copy of its base.
    if cert.coloring is None:
        return CheckResult("base-rainbow", False, "uncolored")
    eb = cert.base.edge_count
    prefix = cert.coloring.colors[:eb]
    ok = sorted(prefix) == list(range(1, eb + 1))
    return CheckResult("base-rainbow", ok, f"base-colors={eb}")


def _check_lemma_independent(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    g = cert.result
    added = range(cert.base.n, g.n)
    added_set = set(added)
    independent = all(
        not g.has_edge(u, v) for u in added for v in added if u < v
    )
    maximal = all(
        any(w in added_set for w in g.neighbors(v))
        for v in range(g.n)
        if v not in added_set
    )
    return CheckResult(
        "added-set-independent", independent and maximal,
        f"independent={independent};maximal={maximal}",
    )


def _check_lemma_longest(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    p = cert.params.p
    want = 2 * p + 5 - max(0, 3 - p)
    length, w = search.longest_path(cert.result)
    return CheckResult(
        "longest-path", length == want, f"len={length};want={want};{_fmt_witness(w)}"
    )


def _check_lemma_longest_constrained(
    cert: Certificate, pattern: Optional[Pattern]
) -> CheckResult:
    p = cert.params.p
    want = 2 * p + 3
    length, w = search.longest_path(cert.result, endpoint_filter=range(cert.base.n))
    return CheckResult(
        "longest-path-endpoints-in-base",
        length == want,
        f"len={length};want={want};{_fmt_witness(w)}",
    )


def random_surjective_coloring(
    rng: random.Random, num_edges: int, m: int
) -> EdgeColoring:
    """Uniform-ish random surjective coloring: one edge pinned per color,
    the rest uniform."""
    if not 1 <= m <= num_edges:
        raise ValueError("need 1 <= m <= edge count")
    colors = [rng.randrange(1, m + 1) for _ in range(num_edges)]
    pinned = rng.sample(range(num_edges), m)
    for c, eid in enumerate(pinned, start=1):
        colors[eid] = c
    return EdgeColoring(tuple(colors), m)


def _check_palette_audit(cert: Certificate, pattern: Optional[Pattern]) -> CheckResult:
    g = cert.result
    if not g.is_plane_triangulation() or g.n < 4:
        return CheckResult("palette-audit", False, "not-a-triangulation")
    rng = random.Random(DEFAULT_SEED)
    worst = None
    for _ in range(PALETTE_SAMPLES):
        m = rng.randrange(1, g.edge_count + 1)
        audit = palette_sum_audit(g, random_surjective_coloring(rng, g.edge_count, m))
        slack = audit.total - audit.lower
        if worst is None or slack < worst:
            worst = slack
        if not audit.passed:
            return CheckResult("palette-audit", False, f"slack={slack}")
    return CheckResult("palette-audit", True, f"samples={PALETTE_SAMPLES};min-slack={worst}")


_CHECKS: dict[str, Callable[[Certificate, Optional[Pattern]], CheckResult]] = {
    "structure": _check_structure,
    "vertex-count": _check_vertex_count,
    "color-count": _check_color_count,
    "contains": _check_contains,
    "no-rainbow": _check_no_rainbow,
    "rainbow-precursor": _check_rainbow_precursor,
    "base-free": _check_base_free,
    "base-rainbow": _check_base_rainbow,
    "independence": _check_lemma_independent,
    "longest-path": _check_lemma_longest,
    "longest-path-constrained": _check_lemma_longest_constrained,
    "palette-audit": _check_palette_audit,
}


def known_checks() -> list[str]:
    return sorted(_CHECKS)


def default_checks(cert: Certificate) -> list[str]:
    kind = cert.params.kind
    if kind == "lemma_th":
        names = ["structure", "vertex-count", "independence", "longest-path",
                 "longest-path-constrained"]
        if cert.coloring is not None:
            names += ["color-count", "base-rainbow"]
        return names
    if kind == "wheel":
        names = ["structure"]
        if cert.coloring is not None:
            names += ["color-count", "no-rainbow", "rainbow-precursor"]
        return names
    if kind == "external":
        names = ["contains"]
        if cert.coloring is not None:
            names += ["no-rainbow"]
        return names
    names = ["structure", "vertex-count", "contains"]
    if kind in ("p89", "pk_large", "ck_subdiv", "c5_star"):
        names.append("base-free")
    if cert.coloring is not None:
        names += ["color-count", "base-rainbow", "no-rainbow"]
        if kind != "c5_star":
            names.append("rainbow-precursor")
    return names


def run_checks(
    cert: Certificate,
    pattern: Optional[Pattern] = None,
    names: Optional[Sequence[str]] = None,
) -> list[CheckResult]:
    """Run the named checks (or the kind's defaults) against a certificate."""
    if pattern is None:
        pattern = default_pattern(cert)
    if names is None:
        names = default_checks(cert)
    results = []
    for name in names:
        try:
            fn = _CHECKS[name]
        except KeyError as exc:
            raise InvalidParamError(f"unknown check {name!r}") from exc
        results.append(fn(cert, pattern))
    return results
