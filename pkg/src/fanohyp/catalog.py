"""The seventeen Picard-rank-one Fano threefold families and their hyperbolicity verdicts.

Surfaces ``S`` in ``|O_X(a)|`` are judged through lower bounds on
``(2g - 2) / deg_C O(1)``.  A bound is organised as

* components -- one per source of a generic surjection onto the normal sheaf;
* routes -- alternative arguments for one component, each with a range of
  ``a`` where it applies and a list of machine or asserted supports;
* branches -- the cases inside a route; the route guarantees the minimum.

The guaranteed constant is ``min over components of max over applicable
routes of min over branches``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable

from . import koszul
from .bundles import BundleSum, GrassmannianSpace, bundle, cohomology, dual, line_bundle, power
from .koszul import CURVE_SETUPS, curve_vanishing_check, restriction_surjective
from .wps import (
    WeightedSpace,
    ideal_generation_check,
    intermediate_cohomology_vanishes,
    multiplication_cokernel_dim,
    section_dominating_check,
    theorem_bound,
)


class Status(str, Enum):
    HYPERBOLIC = "Hyperbolic"
    NOT_HYPERBOLIC = "NotHyperbolic"
    UNKNOWN = "Unknown"


class InconsistencyError(RuntimeError):
    """Raised when two independent derivations of the same fact disagree."""


@dataclass(frozen=True)
class Check:
    name: str
    result: bool
    source: str  # "machine" or "asserted"
    detail: str = ""

    def as_dict(self) -> dict:
        out = {"name": self.name, "result": self.result, "source": self.source}
        if self.detail:
            out["detail"] = self.detail
        return out


def asserted(name: str, detail: str = "") -> Check:
    return Check(name, True, "asserted", detail)


def scroll_degree(q: Fraction, e: Fraction) -> Fraction:
    """Degree ``q + e`` of the scroll swept by lines through a rank-one quotient of degree q."""
    if e <= 0:
        raise ValueError("curve degree must be positive")
    return Fraction(q) + Fraction(e)


@dataclass(frozen=True)
class GenusBoundBranch:
    """One case of a genus bound, in units of ``deg_C O(1)``.

    ``mukai``: ``(a - r) - line_degree``.
    ``scroll``: ``(a - r) + h (1/k - 1)`` with ``k = k0 + k1 a`` the degree (in
    hyperplanes of the embedding by ``O(h)``) of a hypersurface containing the
    curve but not the scroll.
    ``half_twist``: ``(a - r) - 1/2``.
    """

    name: str
    kind: str
    line_degree: Fraction = Fraction(0)
    embedding_degree: Fraction = Fraction(1)
    containing_degree: tuple[Fraction, Fraction] = (Fraction(0), Fraction(0))

    def __post_init__(self):
        if self.kind not in ("mukai", "scroll", "half_twist"):
            raise ValueError(f"unknown branch kind {self.kind!r}")

    def containing_degree_at(self, a: int) -> Fraction:
        k0, k1 = self.containing_degree
        return Fraction(k0) + Fraction(k1) * a

    def coefficient(self, a: int, r: int) -> Fraction:
        base = Fraction(a - r)
        if self.kind == "mukai":
            return base - Fraction(self.line_degree)
        if self.kind == "half_twist":
            return base - Fraction(1, 2)
        k = self.containing_degree_at(a)
        if k <= 0:
            raise ValueError(f"branch {self.name} has nonpositive containing degree at a={a}")
        h = Fraction(self.embedding_degree)
        # k * scroll_degree(q, h) >= h bounds the quotient degree q from below
        q_min = h / k - h
        return base + q_min

    def describe(self) -> str:
        if self.kind == "mukai":
            return f"a - r - {self.line_degree}"
        if self.kind == "half_twist":
            return "a - r - 1/2"
        k0, k1 = self.containing_degree
        k1 = Fraction(k1)
        num = "a" if k1.numerator == 1 else f"{k1.numerator}a"
        slope = num if k1.denominator == 1 else f"{num}/{k1.denominator}"
        k = slope if k0 == 0 else (f"{k0}" if k1 == 0 else f"{k0} + {slope}")
        if not k.isalnum():
            k = f"({k})"
        h = self.embedding_degree
        if h == 1:
            return f"a - r + 1/{k} - 1"
        return f"a - r + {h}/{k} - {h}"


def mukai(name: str, L) -> GenusBoundBranch:
    return GenusBoundBranch(name, "mukai", line_degree=Fraction(L))


def scroll(name: str, h, k0=0, k1=0) -> GenusBoundBranch:
    return GenusBoundBranch(name, "scroll", embedding_degree=Fraction(h), containing_degree=(Fraction(k0), Fraction(k1)))


HALF_TWIST = GenusBoundBranch("nef half twist of the dominating bundle", "half_twist")


@dataclass(frozen=True)
class Route:
    name: str
    branches: tuple[GenusBoundBranch, ...]
    a_min: int = 1
    a_max: int | None = None
    supports: Callable[[int], list[Check]] | None = field(default=None, compare=False)

    def applies(self, a: int) -> bool:
        return a >= self.a_min and (self.a_max is None or a <= self.a_max)

    def bound(self, a: int, r: int) -> Fraction:
        return min(b.coefficient(a, r) for b in self.branches)


@dataclass(frozen=True)
class Component:
    name: str
    routes: tuple[Route, ...]


@dataclass(frozen=True)
class FanoModel:
    id: str
    description: str
    ambient: GrassmannianSpace | WeightedSpace
    index: int
    structural: BundleSum | tuple[int, ...]
    components: tuple[Component, ...]
    facts: Callable[[int], list[Check]] | None = field(default=None, compare=False)
    defined_by_quadrics: bool = True
    notes: tuple[str, ...] = ()

    @property
    def weighted(self) -> bool:
        return isinstance(self.ambient, WeightedSpace)


# -- supports ----------------------------------------------------------------


def vanishing_fact(V, degree: int) -> Check:
    h = cohomology(V).h(degree)
    return Check(f"H^{degree}({V}) = 0 on {V.space}", h == 0, "machine", f"dimension {h}")


def _dominating(space: WeightedSpace, d: int, a: int) -> Check:
    res = section_dominating_check(space, d, a)
    return Check(
        f"O({d}) section-dominating for O({a}) on {space}",
        res.surjective,
        "machine",
        f"rank {res.rank} of {res.target_dim}",
    )


def _quadric_generation(space: WeightedSpace, m: int) -> Check:
    res = ideal_generation_check(space, m, 3)
    dims = ", ".join(f"deg {j}: {res.generated_dims[j]}/{res.kernel_dims[j]}" for j in sorted(res.kernel_dims))
    return Check(f"{space} embedded by O({m}) is cut out by quadrics through degree 3", res.holds, "machine", dims)


def _surjective_restriction(space: WeightedSpace, m: int) -> Check:
    coker = multiplication_cokernel_dim(space, m, m)
    return Check(f"Sym^2 H^0(O({m})) -> H^0(O({2 * m})) is onto on {space}", coker == 0, "machine", f"cokernel {coker}")


def _curve_check(family_id: str) -> Callable[[int], list[Check]]:
    setup = CURVE_SETUPS[family_id]

    def run(a: int) -> list[Check]:
        checks = []
        for d in setup.d_values:
            res = curve_vanishing_check(setup.koszul_bundle(a, d), setup.targets)
            names = ", ".join(str(t) for t in setup.targets)
            checks.append(
                Check(
                    f"Koszul vanishing for H^0 of {names} on the curve (a={a}, d={d})",
                    res.holds,
                    "machine",
                    "" if res.holds else str(res.witness),
                )
            )
        return checks

    return run


def _static(*checks: Callable[[], Check]) -> Callable[[int], list[Check]]:
    return lambda a: [c() for c in checks]


# -- family builders -----------------------------------------------------------


def _plucker_line_component(
    space: GrassmannianSpace, cut_degrees: list[tuple[str, int]], name: str = "sections of F and O(a)"
) -> Component:
    genuine = space.k >= 2 and space.quotient_rank >= 2
    branches = []
    if genuine:
        branches.append(scroll("scroll outside a Plücker quadric", 1, 2))
    for label, k in cut_degrees:
        branches.append(scroll(f"scroll in the ambient, outside the zero locus of {label}", 1, k))
    branches.append(scroll("scroll in X, outside S", 1, 0, 1))
    support = _static(
        lambda: asserted("O(1) section-dominating for O(c), c >= 1", "projective normality of the embedding")
    )
    return Component(
        name,
        (
            Route("Mukai bundle of O(1)", (mukai("Mukai bound with O(1)", 1),), supports=support),
            Route("scroll argument for M_O(1)", tuple(branches), supports=support),
        ),
    )


def _projective(fid, n, degrees, r, description):
    space = GrassmannianSpace(1, n + 1)
    F = BundleSum(tuple((line_bundle(space, c), 1) for c in degrees))
    cuts = [(f"O({c})", c) for c in degrees]
    return FanoModel(fid, description, space, r, F, (_plucker_line_component(space, cuts),))


def _grassmannian_lines(fid, k, n, degrees, r, description):
    space = GrassmannianSpace(k, n)
    F = BundleSum(tuple((line_bundle(space, c), 1) for c in degrees))
    cuts = [(f"O({c})", c) for c in degrees]
    return FanoModel(
        fid,
        description,
        space,
        r,
        F,
        (_plucker_line_component(space, cuts),),
        facts=_static(lambda: asserted(f"{space} is cut out by quadrics in its Plücker embedding")),
    )



GR25 = GrassmannianSpace(2, 5)
GR26 = GrassmannianSpace(2, 6)
GR36, GR27, GR37 = koszul.GR36, koszul.GR27, koszul.GR37


def _model_1_1() -> FanoModel:
    A = WeightedSpace(4, (3,))
    d = theorem_bound(A).d

    def supports(a):
        return [_dominating(A, d, a), _dominating(A, d, 6)]

    def scroll_supports(a):
        return supports(a) + [_surjective_restriction(A, 3), _quadric_generation(A, 3)]

    route_mukai = Route("Mukai bundle of O(3)", (mukai("Mukai bound with O(3)", 3),), a_min=3, supports=supports)
    route_scroll = Route(
        "scroll argument in the embedding by O(3)",
        (
            scroll("scroll outside the quadric cutting X", 3, 2),
            scroll("scroll outside A (A is cut out by quadrics)", 3, 2),
            scroll("scroll in X, outside S", 3, 0, Fraction(1, 3)),
        ),
        a_min=3,
        supports=scroll_supports,
    )
    return FanoModel(
        "1-1",
        "O(6) ⊂ P(1^4,3)",
        A,
        1,
        (6,),
        (Component("sections of O(6) and O(a)", (route_mukai, route_scroll)),),
        notes=("a = 2: O(3) does not dominate O(2); the bound is open",),
    )


def _model_1_11() -> FanoModel:
    A = WeightedSpace(3, (2, 3))
    bound = theorem_bound(A)

    def dominating(a):
        return [_dominating(A, bound.d, a)]

    def chain(a):
        lo = a // 2
        hi = a - lo
        coker = multiplication_cokernel_dim(A, lo, hi)
        return [
            Check(
                f"cokernel of H^0(O({lo})) ⊗ H^0(O({hi})) -> H^0(O({a})) on {A}",
                True,
                "machine",
                f"dimension {coker}",
            ),
            asserted(f"H^0(O_A(j)) = H^0(O_S(j)) for j <= min(5, {a - 1})"),
            asserted("M_O(1)(1) restricted to S is globally generated"),
        ]

    route_mukai = Route(
        "Mukai bundle of O(6)", (mukai("Mukai bound with O(6)", 6),), a_min=bound.a_min, supports=dominating
    )
    route_chain = Route(
        "multiplication-cokernel chain down to M_O(1)",
        (
            mukai("torsion-free quotient of the cokernel bundle", 0),
            mukai("globally generated twisted Mukai bundle", 0),
            mukai("Mukai bundle of O(1), twisted to global generation", 1),
        ),
        a_min=4,
        a_max=8,
        supports=chain,
    )
    return FanoModel(
        "1-11",
        "O(6) ⊂ P(1^3,2,3)",
        A,
        2,
        (6,),
        (Component("sections of O(6) and O(a)", (route_mukai, route_chain)),),
        notes=("a = 3: the surface is a very general sextic in P(1^3,2); the bound is open",),
    )


def _model_1_12() -> FanoModel:
    A = WeightedSpace(4, (2,))
    d = theorem_bound(A).d

    def supports(a):
        return [_dominating(A, d, a), _dominating(A, d, 4)]

    def scroll_supports(a):
        return supports(a) + [_surjective_restriction(A, 2), _quadric_generation(A, 2)]

    route_mukai = Route("Mukai bundle of O(2)", (mukai("Mukai bound with O(2)", 2),), a_min=2, supports=supports)
    route_scroll = Route(
        "scroll argument in the embedding by O(2)",
        (
            scroll("scroll outside the quadric cutting X", 2, 2),
            scroll("scroll outside A (A is cut out by quadrics)", 2, 2),
            scroll("scroll in X, outside S", 2, 0, Fraction(1, 2)),
        ),
        a_min=2,
        supports=scroll_supports,
    )
    return FanoModel(
        "1-12",
        "O(4) ⊂ P(1^4,2)",
        A,
        2,
        (4,),
        (Component("sections of O(4) and O(a)", (route_mukai, route_scroll)),),
        notes=("a = 3: every branch bottoms out at 0; the bound is open",),
    )


def _model_1_6() -> FanoModel:
    space = GR25
    F = BundleSum.of(bundle(space, (1,), (), 1), line_bundle(space, 1))
    comp = _plucker_line_component(space, [("U∨(1)", 2), ("O(1)", 1)])
    facts = _static(
        lambda: asserted("O(1) section-dominating for U∨(1)", "snake lemma on 0 -> Q∨ -> O^5 -> U∨ -> 0"),
        lambda: asserted("Q∨(1) is globally generated"),
        lambda: vanishing_fact(bundle(space, (), (1,), 1), 1),
        lambda: asserted("zero loci of sections of U∨(1) are cut out by Plücker quadrics"),
    )
    return FanoModel("1-6", "U∨(1) ⊕ O(1) ⊂ Gr(2,5)", space, 1, F, (comp,), facts=facts)


def _half_twist_component(name: str, family_id: str, extra: Callable[[int], list[Check]]) -> Component:
    curve = _curve_check(family_id)
    return Component(
        name,
        (Route("half-twist nefness of the dominating bundle", (HALF_TWIST,), a_min=2, supports=lambda a: extra(a) + curve(a)),),
    )


def _model_1_8() -> FanoModel:
    space = GR36
    F = CURVE_SETUPS["1-8"].structural
    sym2q = power(bundle(space, (), (1,)), 2, "symmetric").terms[0][0]
    extra = _static(
        lambda: asserted("U∨ section-dominating for ⋀²U∨", "snake lemma on the dual Koszul complex"),
        lambda: vanishing_fact(line_bundle(space, 0), 1),
        lambda: vanishing_fact(sym2q, 2),
        lambda: asserted("Q∨ nef after a half twist follows from H^0 vanishing on the curve"),
    )
    comps = (
        _half_twist_component("sections of ⋀²U∨", "1-8", extra),
        _plucker_line_component(space, [("⋀²U∨", 1), ("O(1)", 1)], "sections of O(1)^3 and O(a)"),
    )
    return FanoModel("1-8", "⋀²U∨ ⊕ O(1)^3 ⊂ Gr(3,6)", space, 1, F, comps)


def _model_1_9() -> FanoModel:
    space = GR27
    F = CURVE_SETUPS["1-9"].structural
    Q = dual(bundle(space, (), (1,)))
    wedge2Q = dual(bundle(space, (), (1, 1)))
    sym4U = dual(bundle(space, (4,), ()))
    extra = _static(
        lambda: asserted("Q section-dominating for ⋀⁴Q", "snake lemma on the dual Koszul complex"),
        lambda: vanishing_fact(wedge2Q, 1),
        lambda: vanishing_fact(Q, 2),
        lambda: vanishing_fact(line_bundle(space, 0), 3),
        lambda: vanishing_fact(sym4U, 4),
    )
    comps = (
        _half_twist_component("sections of Q∨(1)", "1-9", extra),
        _plucker_line_component(space, [("Q∨(1)", 1), ("O(1)", 1)], "sections of O(1)^2 and O(a)"),
    )
    return FanoModel("1-9", "Q∨(1) ⊕ O(1)^2 ⊂ Gr(2,7)", space, 1, F, comps)


def _model_1_10() -> FanoModel:
    space = GR37
    F = CURVE_SETUPS["1-10"].structural
    extra = _static(
        lambda: asserted("U∨ section-dominating for ⋀²U∨", "as for Gr(3,6)"),
        lambda: vanishing_fact(line_bundle(space, 0), 1),
        lambda: vanishing_fact(power(bundle(space, (), (1,)), 2, "symmetric").terms[0][0], 2),
    )
    comps = (
        _half_twist_component("sections of (⋀²U∨)^3", "1-10", extra),
        _plucker_line_component(space, [("⋀²U∨", 1)], "sections of O(a)"),
    )
    return FanoModel("1-10", "(⋀²U∨)^3 ⊂ Gr(3,7)", space, 1, F, comps)


def _build_catalog() -> dict[str, FanoModel]:
    models = [
        _model_1_1(),
        _projective("1-2", 4, [4], 1, "O(4) ⊂ P^4"),
        _projective("1-3", 5, [2, 3], 1, "O(2) ⊕ O(3) ⊂ P^5"),
        _projective("1-4", 6, [2, 2, 2], 1, "O(2)^3 ⊂ P^6"),
        _grassmannian_lines("1-5", 2, 5, [2, 1, 1], 1, "O(2) ⊕ O(1)^2 ⊂ Gr(2,5)"),
        _model_1_6(),
        _grassmannian_lines("1-7", 2, 6, [1] * 5, 1, "O(1)^5 ⊂ Gr(2,6)"),
        _model_1_8(),
        _model_1_9(),
        _model_1_10(),
        _model_1_11(),
        _model_1_12(),
        _projective("1-13", 4, [3], 2, "O(3) ⊂ P^4"),
        _projective("1-14", 5, [2, 2], 2, "O(2)^2 ⊂ P^5"),
        _grassmannian_lines("1-15", 2, 5, [1, 1, 1], 2, "O(1)^3 ⊂ Gr(2,5)"),
        _projective("1-16", 4, [2], 3, "O(2) ⊂ P^4"),
        _projective("1-17", 3, [], 4, "P^3 (no cutting bundle)"),
    ]
    return {m.id: m for m in models}


CATALOG: dict[str, FanoModel] = _build_catalog()
WEIGHTED_IDS = frozenset(fid for fid, m in CATALOG.items() if m.weighted)


def get_model(fid: str) -> FanoModel:
    try:
        return CATALOG[fid]
    except KeyError:
        raise KeyError(f"unknown family id {fid!r}; expected one of 1-1 .. 1-17") from None


def branch_coefficient(branch: GenusBoundBranch, model: FanoModel, a: int) -> Fraction:
    if a < 1:
        raise ValueError("a must be positive")
    if not any(branch in route.branches for comp in model.components for route in comp.routes):
        raise ValueError(f"branch {branch.name!r} does not belong to family {model.id}")
    return branch.coefficient(a, model.index)


def find_branch(model: FanoModel, name: str) -> GenusBoundBranch:
    for comp in model.components:
        for route in comp.routes:
            for b in route.branches:
                if b.name == name:
                    return b
    raise KeyError(f"no branch named {name!r} in {model.id}")


def expected_status(fid: str, a: int) -> Status:
    """Verdict rule stated in closed form, used as an independent cross-check."""
    r = get_model(fid).index
    if a <= r:
        return Status.NOT_HYPERBOLIC
    if fid in WEIGHTED_IDS and a == r + 1:
        return Status.UNKNOWN
    return Status.HYPERBOLIC


@dataclass(frozen=True)
class BranchEvaluation:
    component: str
    route: str
    branch: str
    expression: str
    coefficient: Fraction

    def as_dict(self) -> dict:
        return {
            "component": self.component,
            "route": self.route,
            "branch": self.branch,
            "expression": self.expression,
            "coefficient": {"num": self.coefficient.numerator, "den": self.coefficient.denominator},
        }


@dataclass(frozen=True)
class Verdict:
    id: str
    a: int
    status: Status
    bound_coefficient: Fraction | None
    justification: tuple[BranchEvaluation, ...] = ()
    checks: tuple[Check, ...] = ()
    notes: tuple[str, ...] = ()

    def __post_init__(self):
        if self.status is Status.HYPERBOLIC and not (self.bound_coefficient and self.bound_coefficient > 0):
            raise InconsistencyError("hyperbolic verdict without a positive bound")
        if self.status is not Status.HYPERBOLIC and self.bound_coefficient is not None:
            raise InconsistencyError("only hyperbolic verdicts carry a bound")

    def as_dict(self) -> dict:
        coeff = None
        if self.bound_coefficient is not None:
            coeff = {"num": self.bound_coefficient.numerator, "den": self.bound_coefficient.denominator}
        return {
            "id": self.id,
            "a": self.a,
            "status": self.status.value,
            "coefficient": coeff,
            "checks": [c.as_dict() for c in self.checks],
        }


def _bound(model: FanoModel, a: int) -> tuple[Fraction | None, list[BranchEvaluation]]:
    evaluations = []
    component_bounds = []
    for comp in model.components:
        best = None
        for route in comp.routes:
            if not route.applies(a):
                continue
            for b in route.branches:
                evaluations.append(BranchEvaluation(comp.name, route.name, b.name, b.describe(), b.coefficient(a, model.index)))
            value = route.bound(a, model.index)
            best = value if best is None else max(best, value)
        component_bounds.append(best)
    if any(b is None for b in component_bounds):
        return None, evaluations
    return min(component_bounds), evaluations


def classify(fid: str, a: int) -> Verdict:
    """Status from the branch engine alone (no machine checks run)."""
    model = get_model(fid)
    if a < 1:
        raise ValueError("a must be positive")
    if a <= model.index:
        status, coeff, evals = Status.NOT_HYPERBOLIC, None, []
        notes = ("K_S is trivial or anti-effective: del Pezzo or K3 surface",)
    else:
        eps, evals = _bound(model, a)
        if eps is not None and eps > 0:
            status, coeff = Status.HYPERBOLIC, eps
        else:
            status, coeff = Status.UNKNOWN, None
        notes = model.notes if status is Status.UNKNOWN else ()
    expected = expected_status(fid, a)
    if status is not expected:
        raise InconsistencyError(f"{fid} at a={a}: branch engine gives {status.value}, closed rule gives {expected.value}")
    return Verdict(fid, a, status, coeff, tuple(evals), (), notes)


def restriction_checks(model: FanoModel, a: int) -> list[Check]:
    """Termwise surjectivity of restriction of O(a) sections from the ambient to X."""
    if model.weighted:
        degrees = model.structural
        rank = len(degrees)
        ok = all(intermediate_cohomology_vanishes(model.ambient, i) for i in range(1, rank + 1))
        return [
            asserted("H^i(O(j)) = 0 on weighted projective space for 0 < i < dim"),
            Check(
                f"restriction to X surjective in degree {a}: degrees 1..{rank} lie strictly inside 0..{model.ambient.dim}",
                ok,
                "machine",
            ),
        ]
    res = restriction_surjective(model.structural, line_bundle(model.ambient, a))
    return [
        Check(
            f"restriction to X surjective in degree {a} (termwise Koszul vanishing)",
            res.holds,
            "machine",
            f"{res.terms_checked} terms" if res.holds else str(res.witness),
        )
    ]


def audit(fid: str, a: int) -> Verdict:
    """:func:`classify` plus every supporting check behind the routes the verdict uses."""
    model = get_model(fid)
    verdict = classify(fid, a)
    checks = restriction_checks(model, a)
    if model.facts:
        checks.extend(model.facts(a))
    if verdict.status is Status.HYPERBOLIC:
        for comp in model.components:
            applicable = [r for r in comp.routes if r.applies(a)]
            best = max(applicable, key=lambda r: r.bound(a, model.index))
            if best.supports:
                checks.extend(best.supports(a))
    seen = set()
    unique = []
    for c in checks:
        if c.name not in seen:
            seen.add(c.name)
            unique.append(c)
    failed = [c for c in unique if c.source == "machine" and not c.result]
    if failed:
        raise InconsistencyError(f"{fid} at a={a}: machine check failed: {failed[0].name} ({failed[0].detail})")
    return Verdict(fid, a, verdict.status, verdict.bound_coefficient, verdict.justification, tuple(unique), verdict.notes)
