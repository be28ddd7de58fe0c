"""Koszul-complex vanishing checks built on Bott-Borel-Weil.

Three layers:

* :func:`restriction_surjective` -- the termwise test that restriction of
  sections from the ambient Grassmannian to the zero locus of ``F`` is onto.
* :func:`scan` -- cohomology of a family ``K_u U^v (x) K_q Q^v (-N)`` over a
  rectangle of degrees and twists.
* :func:`vanishing_rows` / :func:`exception_rows` -- the per-family tables of
  required vanishings and of non-vanishing exceptions, derived from a
  :class:`CurveSetup`.

:func:`verify_closed_form` compares the closed-form (non)vanishing rule for
``K_i U^v(-d)`` and ``K_j Q^v(-d)`` against raw Bott computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bundles import (
    BundleSum,
    BundleSymbol,
    GrassmannianSpace,
    bundle,
    cohomology,
    exterior_algebra,
    line_bundle,
)
from .weights import Partition, decreasing_sequences

DEFAULT_TWIST_MAX = 12


@dataclass(frozen=True)
class KoszulWitness:
    """Where a termwise vanishing failed."""

    koszul_degree: int
    summand: BundleSymbol
    cohomological_degree: int
    dimension: int
    target: BundleSymbol | None = None

    def __str__(self) -> str:
        where = f" (target {self.target})" if self.target is not None else ""
        return (
            f"H^{self.cohomological_degree}({self.summand}) has dimension {self.dimension}"
            f" in Koszul degree {self.koszul_degree}{where}"
        )


@dataclass(frozen=True)
class KoszulCheck:
    holds: bool
    witness: KoszulWitness | None = None
    terms_checked: int = 0

    def __bool__(self) -> bool:
        return self.holds


def koszul_terms(E: BundleSum, twist_by: BundleSymbol) -> list[BundleSum]:
    """``[wedge^i E^v (x) T for i = 0..rank E]``."""
    return [layer.tensor(twist_by) for layer in exterior_algebra(E.dual())]


def restriction_surjective(F: BundleSum, L: BundleSymbol) -> KoszulCheck:
    """Check ``H^i(wedge^i F^v (x) L) = 0`` for ``1 <= i <= rank F``."""
    checked = 0
    for i, layer in enumerate(koszul_terms(F, L)):
        if i == 0:
            continue
        for summand, _ in layer:
            checked += 1
            h = cohomology(summand).h(i)
            if h:
                return KoszulCheck(False, KoszulWitness(i, summand, i, h), checked)
    return KoszulCheck(True, None, checked)


def curve_vanishing_check(
    E: BundleSum, targets: Sequence[BundleSymbol], include_previous_degree: bool = True
) -> KoszulCheck:
    """Termwise vanishing forcing ``H^0`` of each target on the zero locus of E to vanish.

    Every summand S of ``wedge^i E^v (x) T`` must have ``H^i(S) = 0``, and with
    ``include_previous_degree`` also ``H^{i-1}(S) = 0``, for all ``i >= 0``.
    """
    checked = 0
    for T in targets:
        for i, layer in enumerate(koszul_terms(E, T)):
            degrees = (i, i - 1) if include_previous_degree and i >= 1 else (i,)
            for summand, _ in layer:
                checked += 1
                result = cohomology(summand)
                for deg in degrees:
                    if result.h(deg):
                        return KoszulCheck(False, KoszulWitness(i, summand, deg, result.dimension, T), checked)
    return KoszulCheck(True, None, checked)


# -- scans -----------------------------------------------------------------


@dataclass(frozen=True)
class ScanRegion:
    i_max: int
    twist_min: int
    twist_max: int = DEFAULT_TWIST_MAX
    i_min: int = 0

    def __post_init__(self):
        if self.twist_min > self.twist_max:
            raise ValueError("twist_min must not exceed twist_max")
        if self.i_max < 0 or self.i_min < 0:
            raise ValueError("cohomological degrees are nonnegative")


@dataclass(frozen=True, order=True)
class Hit:
    N: int
    i: int
    dim: int

    def as_dict(self) -> dict:
        return {"i": self.i, "N": self.N, "dim": self.dim}


@dataclass(frozen=True)
class ScanReport:
    space: GrassmannianSpace
    u_weight: Partition
    q_weight: Partition
    region: ScanRegion
    hits: tuple[Hit, ...]

    def family(self, N: int) -> BundleSymbol:
        return bundle(self.space, self.u_weight.parts, self.q_weight.parts, -N)

    @property
    def label(self) -> str:
        return str(bundle(self.space, self.u_weight.parts, self.q_weight.parts, 0))

    def as_dict(self) -> dict:
        return {
            "space": {"k": self.space.k, "n": self.space.n},
            "u_weight": list(self.u_weight.parts),
            "q_weight": list(self.q_weight.parts),
            "region": {"i_max": self.region.i_max, "n_min": self.region.twist_min, "n_max": self.region.twist_max},
            "hits": [h.as_dict() for h in self.hits],
        }


def scan(u: Sequence[int], q: Sequence[int], space: GrassmannianSpace, region: ScanRegion) -> ScanReport:
    """Every nonzero ``H^i(K_u U^v (x) K_q Q^v (-N))`` inside ``region``, sorted by ``(N, i)``."""
    base = bundle(space, u, q, 0)
    hits = []
    for N in range(region.twist_min, region.twist_max + 1):
        result = cohomology(base.twisted(-N))
        if result.degree is not None and region.i_min <= result.degree <= region.i_max:
            hits.append(Hit(N, result.degree, result.dimension))
    return ScanReport(space, base.u_weight, base.q_weight, region, tuple(sorted(hits)))


# -- per-family tables -----------------------------------------------------


@dataclass(frozen=True)
class CurveSetup:
    """The data behind a vanishing table: ``E = F (+) O(a) (+) O(d)`` and the targets on the curve."""

    family_id: str
    space: GrassmannianSpace
    structural: BundleSum
    targets: tuple[BundleSymbol, ...]
    a_values: tuple[int, ...] = (2, 3, 4, 5, 6)
    d_values: tuple[int, ...] = (1, 2, 3, 4, 5, 6)

    def koszul_bundle(self, a: int, d: int) -> BundleSum:
        return self.structural + BundleSum.of(line_bundle(self.space, a), line_bundle(self.space, d))


def _sum(space, *pieces) -> BundleSum:
    return BundleSum(tuple((bundle(space, u, q, t), m) for u, q, t, m in pieces))


GR36, GR27, GR37 = GrassmannianSpace(3, 6), GrassmannianSpace(2, 7), GrassmannianSpace(3, 7)

CURVE_SETUPS: dict[str, CurveSetup] = {
    "1-8": CurveSetup(
        "1-8",
        GR36,
        _sum(GR36, ((1, 1), (), 0, 1), ((), (), 1, 3)),
        (bundle(GR36, (), (1,), 0), bundle(GR36, (), (2, 2), 1)),
    ),
    "1-9": CurveSetup(
        "1-9",
        GR27,
        _sum(GR27, ((), (1,), 1, 1), ((), (), 1, 2)),
        (bundle(GR27, (2,), (), -1),),
    ),
    "1-10": CurveSetup(
        "1-10",
        GR37,
        _sum(GR37, ((1, 1), (), 0, 3)),
        (bundle(GR37, (), (2, 2, 2), 1), bundle(GR37, (), (1, 1), 0)),
    ),
}


@dataclass(frozen=True)
class Requirement:
    """Minimal twist N at which vanishing of ``H^i`` is needed, per degree, for one family."""

    u_weight: Partition
    q_weight: Partition
    order: tuple
    min_twist_by_degree: dict = field(hash=False, compare=False, default_factory=dict)


def required_vanishings(setup: CurveSetup, include_previous_degree: bool = True) -> list[Requirement]:
    """Collect ``(family, i) -> min N`` over all Koszul terms and all sampled ``(a, d)``."""
    table: dict[tuple, dict[int, int]] = {}
    order: dict[tuple, tuple] = {}
    for a in setup.a_values:
        for d in setup.d_values:
            E = setup.koszul_bundle(a, d)
            for t_index, T in enumerate(setup.targets):
                for j, layer in enumerate(koszul_terms(E, T)):
                    degrees = (j, j - 1) if include_previous_degree and j >= 1 else (j,)
                    for S, _ in layer:
                        key = (S.u_weight, S.q_weight)
                        order[key] = min(order.get(key, (j, t_index)), (j, t_index))
                        per_degree = table.setdefault(key, {})
                        for deg in degrees:
                            per_degree[deg] = min(per_degree.get(deg, -S.twist), -S.twist)
    reqs = [Requirement(u, q, (u.parts,) + order[(u, q)], table[(u, q)]) for (u, q) in table]
    return sorted(reqs, key=lambda r: r.order)


@dataclass(frozen=True)
class VanishingRow:
    u_weight: Partition
    q_weight: Partition
    i_max: int
    n_min: int
    refinements: tuple[tuple[int, int | None], ...] = ()

    def label(self, space: GrassmannianSpace) -> str:
        return str(bundle(space, self.u_weight.parts, self.q_weight.parts, 0))

    def as_dict(self) -> dict:
        return {
            "u_weight": list(self.u_weight.parts),
            "q_weight": list(self.q_weight.parts),
            "i_max": self.i_max,
            "n_min": self.n_min,
            "refinements": [{"i": i, "n_min": n} for i, n in self.refinements],
        }


def vanishing_rows(setup: CurveSetup, twist_max: int = DEFAULT_TWIST_MAX, include_previous_degree: bool = True):
    """Rows ``i <= i_max, N >= n_min`` (plus per-degree refinements where the rectangle has a hit)."""
    rows = []
    for req in required_vanishings(setup, include_previous_degree):
        per = req.min_twist_by_degree
        i_max = max(d for d in per if d >= 0)
        n_min = min(per.values())
        report = scan(req.u_weight.parts, req.q_weight.parts, setup.space, ScanRegion(i_max, n_min, twist_max))
        refinements = []
        for i in range(i_max + 1):
            needed = per.get(i)
            if any(h.i == i and (needed is None or h.N < needed) for h in report.hits):
                refinements.append((i, needed))
        rows.append(VanishingRow(req.u_weight, req.q_weight, i_max, n_min, tuple(refinements)))
    return rows


def exception_rows(setup: CurveSetup, twist_min: int = 0, twist_max: int = DEFAULT_TWIST_MAX) -> list[ScanReport]:
    """Non-top cohomology scans for the families with both a U-part and a Q-part."""
    reports = []
    for req in required_vanishings(setup):
        if req.u_weight and req.q_weight:
            region = ScanRegion(setup.space.dim - 1, twist_min, twist_max)
            reports.append(scan(req.u_weight.parts, req.q_weight.parts, setup.space, region))
    return reports


def _twist_text(row: VanishingRow) -> list[str]:
    lines = [f"N ≥ {row.n_min}"]
    for i, n in row.refinements:
        lines.append(f"N ≥ {n} if i = {i}" if n is not None else f"none needed if i = {i}")
    return lines


def vanishing_markdown(setup: CurveSetup, rows: Iterable[VanishingRow]) -> str:
    out = ["| H^i | vector bundle | twist |", "|---|---|---|"]
    for row in rows:
        texts = _twist_text(row)
        out.append(f"| i ≤ {row.i_max} | {row.label(setup.space)} | {texts[0]} |")
        out.extend(f"| | | {t} |" for t in texts[1:])
    return "\n".join(out) + "\n"


def exception_markdown(reports: Iterable[ScanReport]) -> str:
    out = ["| vector bundle | (i, twist) | dimensions |", "|---|---|---|"]
    for rep in reports:
        if rep.hits:
            pairs = ", ".join(f"({h.i},{h.N})" for h in rep.hits)
            dims = ", ".join(str(h.dim) for h in rep.hits)
        else:
            pairs = dims = "-"
        out.append(f"| {rep.label} | {pairs} | {dims} |")
    return "\n".join(out) + "\n"


# -- closed form -----------------------------------------------------------


@dataclass(frozen=True)
class ClosedFormMismatch:
    side: str
    weight: tuple[int, ...]
    d: int
    i: int
    predicted: bool
    actual_dimension: int

    def __str__(self) -> str:
        return (
            f"{self.side}-side K_{self.weight}(-{self.d}) H^{self.i}: "
            f"predicted {'nonzero' if self.predicted else 'zero'}, Bott dimension {self.actual_dimension}"
        )


@dataclass(frozen=True)
class ClosedFormReport:
    k: int
    n: int
    d_max: int
    cases: int
    mismatches: tuple[ClosedFormMismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def __bool__(self) -> bool:
        return self.ok


def closed_form_nonzero(side: str, weight: Sequence[int], d: int, i: int, k: int, n: int, literal: bool = False):
    """Closed-form answer: ``None`` if zero, else the promised dimension (``1``) or ``0`` when unspecified.

    ``weight`` is the full-length sequence ending in 0.  With ``literal=True``
    the saturated U-side top branch uses ``d >= n``; the default uses
    ``d >= n + weight[0]``, which is what Bott's theorem gives.
    """
    top = k * (n - k)
    box = n - k if side == "U" else k
    ell = sum(1 for x in weight if x == box)
    saturated = all(x == 0 for x in weight[ell:])
    if side == "U":
        if saturated:
            if i == (n - k) * (k - ell) and d == n - ell:
                return 1
            top_bound = n if literal else n + weight[0]
            return 0 if (i == top and d >= top_bound) else None
        return 0 if (i == top and d >= n + weight[0]) else None
    if saturated and i == k * ell and d == ell:
        return 1
    return 0 if (i == top and d >= n) else None


def verify_closed_form(k: int, n: int, d_max: int | None = None, literal: bool = False) -> ClosedFormReport:
    if n < 2 or not 1 <= k <= n // 2:
        raise ValueError("need n >= 2 and 1 <= k <= n/2")
    space = GrassmannianSpace(k, n)
    d_max = n + (n - k) + 2 if d_max is None else d_max
    mismatches = []
    cases = 0
    for side, length, box, d_low in (("U", k, n - k, 1), ("Q", n - k, k, 0)):
        for weight in decreasing_sequences(length, box):
            for d in range(d_low, d_max + 1):
                V = bundle(space, weight, (), -d) if side == "U" else bundle(space, (), weight, -d)
                result = cohomology(V)
                for i in range(space.dim + 1):
                    cases += 1
                    promised = closed_form_nonzero(side, weight, d, i, k, n, literal)
                    actual = result.h(i)
                    if (promised is None) != (actual == 0) or (promised == 1 and actual != 1):
                        mismatches.append(ClosedFormMismatch(side, tuple(weight), d, i, promised is not None, actual))
    return ClosedFormReport(k, n, d_max, cases, tuple(mismatches))
