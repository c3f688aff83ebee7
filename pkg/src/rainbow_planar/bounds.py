"""Closed-form bound evaluators and cross-source consistency checks.

All arithmetic is exact rational (``fractions.Fraction``); floors appear
only where the source formulas carry them.  Evaluating a formula outside
its stated range raises ``OutOfRangeError`` instead of extrapolating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import OutOfRangeError

F = Fraction


@dataclass(frozen=True)
class BoundRecord:
    """One evaluated bound: ``lower <= quantity(family at params) <= upper``.

    ``quantity`` is "ar" for (planar) anti-Ramsey values and "ex" for planar
    Turan numbers.  ``family`` is the forbidden pattern ("C5", "P10", ...);
    wheel-host records carry q and family "W:C6" style labels.
    """

    family: str
    quantity: str
    source: str
    n: Optional[int] = None
    k: Optional[int] = None
    q: Optional[int] = None
    lower: Optional[Fraction] = None
    upper: Optional[Fraction] = None

    def __post_init__(self) -> None:
        if self.lower is not None and self.upper is not None:
            if self.lower > self.upper:
                raise AssertionError(f"record {self.source}: lower > upper")

    def params_label(self) -> str:
        parts = []
        if self.n is not None:
            parts.append(f"n={self.n}")
        if self.k is not None:
            parts.append(f"k={self.k}")
        if self.q is not None:
            parts.append(f"q={self.q}")
        return ",".join(parts)


def _floor(x: Fraction) -> Fraction:
    return F(x.numerator // x.denominator)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise OutOfRangeError(msg)


def _hjss_c3(n: int) -> BoundRecord:
    _need(n >= 4, "needs n >= 4")
    v = _floor(F(3 * n - 6, 2))
    return BoundRecord("C3", "ar", "known-c3-exact", n=n, lower=v, upper=v)


def _hjss_c4(n: int) -> BoundRecord:
    _need(n >= 4, "needs n >= 4")
    lower = None
    if n >= 42:
        r = (n - 2) % 20
        lower = F(9 * (n - 2) - 4 * r, 5)
    return BoundRecord("C4", "ar", "known-c4", n=n, lower=lower, upper=F(2 * (n - 2)))


def _hjss_c5(n: int) -> BoundRecord:
    _need(n >= 5, "needs n >= 5")
    lower = None
    if n >= 20:
        r = (n - 2) % 18
        lower = F(19 * (n - 2) - 10 * r, 9)
    return BoundRecord("C5", "ar", "known-c5", n=n, lower=lower, upper=F(5 * (n - 2), 2))


def _hjss_ck(n: int, k: int) -> BoundRecord:
    _need(6 <= k <= n, "needs 6 <= k <= n")
    lower = F(3 * n - 6) * F(k - 3, k - 2) - F(2 * k - 7, k - 2)
    return BoundRecord(f"C{k}", "ar", "known-ck-lower", n=n, k=k, lower=lower)


def _turan_c3(n: int) -> BoundRecord:
    _need(n >= 3, "needs n >= 3")
    v = F(2 * n - 4)
    return BoundRecord("C3", "ex", "turan-c3-exact", n=n, lower=v, upper=v)


def _turan_c4(n: int) -> BoundRecord:
    _need(n >= 4, "needs n >= 4")
    return BoundRecord("C4", "ex", "turan-c4-upper", n=n, upper=F(15 * (n - 2), 7))


def _turan_c5(n: int) -> BoundRecord:
    _need(n >= 11, "needs n >= 11")
    return BoundRecord("C5", "ex", "turan-c5-upper", n=n, upper=F(12 * n - 33, 5))


def _turan_c6(n: int) -> BoundRecord:
    _need(n >= 6, "needs n >= 6")
    return BoundRecord("C6", "ex", "turan-c6-upper", n=n, upper=F(18 * (n - 2), 7))


def _paths_89(n: int, k: int) -> BoundRecord:
    _need(k in (8, 9), "needs k in {8, 9}")
    _need(n >= k, "needs n >= k")
    eps = k % 2
    eps_star = (n + 1 + eps) % 2
    lower = F(3 * n + 3 * eps - eps_star - 3, 2)
    return BoundRecord(f"P{k}", "ar", "paths-short-lower", n=n, k=k, lower=lower)


def _paths_long(n: int, k: int) -> BoundRecord:
    _need(k >= 10, "needs k >= 10")
    _need(n >= k, "needs n >= k")
    eps = k % 2
    half = k // 2
    if n < 3 * half + eps - 5:
        lower = F(n + 2 * k - 12)
        src = "paths-long-lower/small"
    elif n <= 5 * half + eps - 15:
        lower = F(3 * n + 9 * half + 3 * eps - 43, 2)
        src = "paths-long-lower/mid"
    else:
        lower = F(2 * n + k - 14)
        src = "paths-long-lower/large"
    return BoundRecord(f"P{k}", "ar", src, n=n, k=k, lower=lower)


def _c5_stellation(n: int) -> BoundRecord:
    _need(n >= 119, "needs n >= 119")
    r = (n + 7) % 18
    return BoundRecord("C5", "ar", "c5-stellation-lower", n=n, lower=F(39 * n - 123 - 21 * r, 18))


def _ck_subdivision(n: int, k: int) -> BoundRecord:
    _need(k >= 5, "needs k >= 5")
    _need(n >= k * k - k, "needs n >= k^2-k")
    mod = k * k - k - 2
    r = (n - 2) % mod
    lower = (F(k - 3, k - 2) + F(2, 3 * (k + 1) * (k - 2))) * (3 * n - 6) - F(
        (2 * k * k - 5 * k - 5) * r, mod
    )
    t = (n - 2 - r) // mod + 2
    integer_form = F((3 * k * k - 6 * k - 7) * (t - 2) + r)
    assert lower == integer_form, "rational and bookkeeping forms must agree"
    return BoundRecord(f"C{k}", "ar", "ck-subdivision-lower", n=n, k=k, lower=lower)


def _wheel_ck(q: int, k: int) -> BoundRecord:
    _need(k >= 5 and q >= k - 1, "needs k >= 5, q >= k-1")
    lo = _floor(F((2 * k - 7) * q, k - 3))
    hi = _floor(F((2 * k - 5) * q, k - 2))
    return BoundRecord(f"W:C{k}", "ar", "wheel-ck-bounds", q=q, k=k, lower=lo, upper=hi)


def _wheel_c6(q: int) -> BoundRecord:
    _need(q >= 5, "needs q >= 5")
    v = _floor(F(5 * q, 3))
    return BoundRecord("W:C6", "ar", "wheel-c6-exact", q=q, k=6, lower=v, upper=v)


def _c6_upper(n: int) -> BoundRecord:
    _need(n >= 8, "needs n >= 8")
    return BoundRecord("C6", "ar", "c6-palette-upper", n=n, upper=F(17 * (n - 2), 6))


def _c7_upper(n: int) -> BoundRecord:
    _need(n >= 13, "needs n >= 13")
    return BoundRecord("C7", "ar", "c7-palette-upper", n=n, upper=F(59 * n - 113, 20))


def _c6_sandwich(n: int) -> BoundRecord:
    _need(n >= 30, "needs n >= 30")
    r = (n - 2) % 28
    return BoundRecord(
        "C6",
        "ar",
        "c6-sandwich",
        n=n,
        lower=F(65 * (n - 2) - 37 * r, 28),
        upper=F(72 * (n - 2), 28),
    )


def _c5_sandwich(n: int) -> BoundRecord:
    _need(n >= 119, "needs n >= 119")
    r = (n + 7) % 18
    return BoundRecord(
        "C5",
        "ar",
        "c5-sandwich",
        n=n,
        lower=F(39 * n - 123 - 21 * r, 18),
        upper=F(12 * n - 33, 5),
    )


_TAGS: dict[str, Callable[..., BoundRecord]] = {
    "known-c3-exact": _hjss_c3,
    "known-c4": _hjss_c4,
    "known-c5": _hjss_c5,
    "known-ck-lower": _hjss_ck,
    "turan-c3-exact": _turan_c3,
    "turan-c4-upper": _turan_c4,
    "turan-c5-upper": _turan_c5,
    "turan-c6-upper": _turan_c6,
    "paths-short-lower": _paths_89,
    "paths-long-lower": _paths_long,
    "c5-stellation-lower": _c5_stellation,
    "ck-subdivision-lower": _ck_subdivision,
    "wheel-ck-bounds": _wheel_ck,
    "wheel-c6-exact": _wheel_c6,
    "c6-palette-upper": _c6_upper,
    "c7-palette-upper": _c7_upper,
    "c6-sandwich": _c6_sandwich,
    "c5-sandwich": _c5_sandwich,
}


def eval_bound(tag: str, **params: int) -> BoundRecord:
    """Evaluate one source formula at the given parameters.

    Raises ``OutOfRangeError`` outside the formula's stated range and
    ``KeyError`` for unknown tags.
    """
    return _TAGS[tag](**params)


def known_tags() -> list[str]:
    return sorted(_TAGS)


# cycle families and which tags speak about them, used for grid reports
_CYCLE_TAGS: dict[str, list[str]] = {
    "C3": ["known-c3-exact", "turan-c3-exact"],
    "C4": ["known-c4", "turan-c4-upper"],
    "C5": ["known-c5", "turan-c5-upper", "c5-stellation-lower", "c5-sandwich"],
    "C6": ["known-ck-lower", "turan-c6-upper", "ck-subdivision-lower", "c6-palette-upper", "c6-sandwich"],
    "C7": ["known-ck-lower", "ck-subdivision-lower", "c7-palette-upper"],
}


def records_for(family: str, n: int) -> list[BoundRecord]:
    """Every in-range bound this library knows for a cycle family at n."""
    out = []
    for tag in _CYCLE_TAGS.get(family, []):
        fn = _TAGS[tag]
        kwargs: dict[str, int] = {"n": n}
        if tag in ("known-ck-lower", "ck-subdivision-lower"):
            kwargs["k"] = int(family[1:])
        try:
            out.append(fn(**kwargs))
        except OutOfRangeError:
            continue
    return out


@dataclass(frozen=True)
class Violation:
    a: BoundRecord
    b: BoundRecord
    reason: str


def consistency_report(grid: Iterable[tuple[str, int]]) -> list[Violation]:
    """Cross-check every known bound over a (family, n) grid.

    Checks, per grid point: every anti-Ramsey lower bound sits below every
    anti-Ramsey upper bound; every anti-Ramsey lower bound sits below every
    Turan upper bound (a rainbow-free coloring yields a pattern-free
    representing subgraph, so ar <= ex); and all anti-Ramsey values stay
    strictly below 3n-6.  An empty report is the expected outcome; any entry
    is either an artifact bug or a genuine inconsistency in the sources and
    must be investigated, never patched over.
    """
    violations: list[Violation] = []
    for family, n in grid:
        records = records_for(family, n)
        ar = [r for r in records if r.quantity == "ar"]
        ex = [r for r in records if r.quantity == "ex"]
        for lo_rec in ar:
            if lo_rec.lower is None:
                continue
            for hi_rec in ar:
                if hi_rec.upper is not None and lo_rec.lower > hi_rec.upper:
                    violations.append(
                        Violation(lo_rec, hi_rec, f"ar lower > ar upper at n={n}")
                    )
            for hi_rec in ex:
                if hi_rec.upper is not None and lo_rec.lower > hi_rec.upper:
                    violations.append(
                        Violation(lo_rec, hi_rec, f"ar lower > ex upper at n={n}")
                    )
        cap = F(3 * n - 6)
        for rec in ar:
            for side in (rec.lower, rec.upper):
                if side is not None and side >= cap:
                    violations.append(
                        Violation(rec, rec, f"ar bound not below 3n-6 at n={n}")
                    )
    return violations
