"""Monomial algebra on weighted projective spaces ``P(1^k, a_1, ..., a_l)``.

Graded pieces of the Cox ring are spanned by monomials, so every check here
reduces to exact integer rank computations on sparse vectors indexed by
exponent tuples.  Variables are ordered ``s_1, ..., s_k, t_1, ..., t_l``.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass
from functools import lru_cache
from math import gcd, lcm
from typing import Sequence

from .linalg import EchelonBasis


@dataclass(frozen=True)
class WeightedSpace:
    unit_count: int
    heavy_weights: tuple[int, ...] = ()

    def __post_init__(self):
        heavy = tuple(int(a) for a in self.heavy_weights)
        object.__setattr__(self, "heavy_weights", heavy)
        if self.unit_count < 1:
            raise ValueError("need at least one weight-1 variable")
        if any(a < 2 for a in heavy):
            raise ValueError("heavy weights must be at least 2")
        if any(heavy[i] > heavy[i + 1] for i in range(len(heavy) - 1)):
            raise ValueError("heavy weights must be weakly increasing")

    @property
    def weights(self) -> tuple[int, ...]:
        return (1,) * self.unit_count + self.heavy_weights

    @property
    def variable_count(self) -> int:
        return self.unit_count + len(self.heavy_weights)

    @property
    def dim(self) -> int:
        return self.variable_count - 1

    @property
    def canonical_degree(self) -> int:
        return -(self.unit_count + sum(self.heavy_weights))

    def variable_names(self) -> list[str]:
        return [f"s{i + 1}" for i in range(self.unit_count)] + [f"t{i + 1}" for i in range(len(self.heavy_weights))]

    def __str__(self) -> str:
        units = "1" if self.unit_count == 1 else f"1^{self.unit_count}"
        return "P(" + ",".join([units, *map(str, self.heavy_weights)]) + ")"


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]
    weighted_degree: int

    @classmethod
    def of(cls, space: WeightedSpace, exponents: Sequence[int]) -> Monomial:
        exps = tuple(int(e) for e in exponents)
        if len(exps) != space.variable_count or any(e < 0 for e in exps):
            raise ValueError(f"bad exponent vector {exps} for {space}")
        return cls(exps, sum(e * w for e, w in zip(exps, space.weights)))

    def times(self, other: Monomial) -> Monomial:
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)), self.weighted_degree + other.weighted_degree)

    def format(self, space: WeightedSpace) -> str:
        parts = [v if e == 1 else f"{v}^{e}" for v, e in zip(space.variable_names(), self.exponents) if e]
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class BasePoint:
    coordinates: tuple[int, ...]

    @classmethod
    def standard(cls, space: WeightedSpace) -> BasePoint:
        """``[1 : 0^{k-1} : 1^l]``."""
        return cls((1,) + (0,) * (space.unit_count - 1) + (1,) * len(space.heavy_weights))

    def value(self, exponents: Sequence[int]) -> int:
        v = 1
        for c, e in zip(self.coordinates, exponents):
            if e:
                v *= c**e
        return v


def random_point(space: WeightedSpace, rng: random.Random, bound: int = 5) -> BasePoint:
    """A point with all unit coordinates nonzero; such points lie in the open orbit."""
    units = [rng.choice([x for x in range(-bound, bound + 1) if x]) for _ in range(space.unit_count)]
    heavy = [rng.randint(-bound, bound) for _ in space.heavy_weights]
    return BasePoint(tuple(units + heavy))


def _order_key(exps: tuple[int, ...]):
    # graded order in which later variables dominate, so t_i beats anything of
    # its degree in s_1..s_k, t_1..t_{i-1}
    return tuple(reversed(exps))


@lru_cache(maxsize=None)
def _exponents_of_degree(weights: tuple[int, ...], m: int) -> tuple[tuple[int, ...], ...]:
    if m < 0:
        return ()
    out = []

    def rec(idx, remaining, acc):
        if idx == len(weights):
            if remaining == 0:
                out.append(tuple(acc))
            return
        w = weights[idx]
        for e in range(remaining // w + 1):
            acc.append(e)
            rec(idx + 1, remaining - e * w, acc)
            acc.pop()

    rec(0, m, [])
    return tuple(sorted(out, key=_order_key))


def h0_basis(space: WeightedSpace, m: int) -> list[Monomial]:
    """Monomials of weighted degree ``m`` in increasing monomial order."""
    return [Monomial(e, m) for e in _exponents_of_degree(space.weights, m)]


def h0(space: WeightedSpace, m: int) -> int:
    return len(_exponents_of_degree(space.weights, m))


def vanishing_subspace(space: WeightedSpace, m: int, point: BasePoint | None = None) -> list[dict]:
    """Basis of the degree-``m`` sections vanishing at ``point`` as sparse ``{exponents: coeff}`` rows."""
    if m <= 0:
        raise ValueError("vanishing subspace needs a positive degree")
    point = point or BasePoint.standard(space)
    exps = _exponents_of_degree(space.weights, m)
    values = [point.value(e) for e in exps]
    pivot = next((i for i, v in enumerate(values) if v), None)
    if pivot is None:
        return [{e: 1} for e in exps]
    v0 = values[pivot]
    basis = []
    for i, (e, v) in enumerate(zip(exps, values)):
        if i == pivot:
            continue
        basis.append({e: 1} if v == 0 else {e: v0, exps[pivot]: -v})
    return basis


def _sum_exps(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _multiply(row: dict, exps: tuple[int, ...]) -> dict:
    return {_sum_exps(e, exps): c for e, c in row.items()}


@dataclass(frozen=True)
class DominatingResult:
    space: WeightedSpace
    d: int
    a: int
    surjective: bool
    rank: int
    target_dim: int

    def __bool__(self) -> bool:
        return self.surjective

    def as_dict(self) -> dict:
        return {
            "space": {"units": self.space.unit_count, "heavy": list(self.space.heavy_weights)},
            "d": self.d,
            "a": self.a,
            "surjective": self.surjective,
            "rank": self.rank,
            "target_dim": self.target_dim,
        }


def image_basis(space: WeightedSpace, d: int, a: int, point: BasePoint | None = None) -> EchelonBasis:
    """Echelon basis of the image of ``I_p(d) (x) H^0(O(a-d)) -> I_p(a)``."""
    basis = EchelonBasis()
    cofactors = _exponents_of_degree(space.weights, a - d)
    for f in vanishing_subspace(space, d, point):
        for g in cofactors:
            basis.add(_multiply(f, g))
    return basis


def section_dominating_check(space: WeightedSpace, d: int, a: int, point: BasePoint | None = None) -> DominatingResult:
    """Is multiplication ``I_p(d) (x) H^0(O(a-d)) -> I_p(a)`` onto?"""
    if d < 1 or a < d:
        raise ValueError("need d >= 1 and a >= d")
    target = h0(space, a) - 1
    rank = image_basis(space, d, a, point).rank
    return DominatingResult(space, d, a, rank == target, rank, target)


@dataclass(frozen=True)
class TheoremBound:
    d: int
    a_min: int


@dataclass(frozen=True)
class NotApplicable:
    reason: str

    def __bool__(self) -> bool:
        return False


def theorem_bound(space: WeightedSpace) -> TheoremBound | NotApplicable:
    """``(d, a_min)`` with ``d = lcm`` of the heavy weights and ``a_min = max(d, l*d - sum + 1)``."""
    if space.unit_count < 2:
        return NotApplicable("needs at least two weight-1 variables")
    heavy = space.heavy_weights
    if not heavy:
        return TheoremBound(1, 1)
    d = lcm(*heavy)
    if len(heavy) >= 2 and d == heavy[-1]:
        return NotApplicable(f"lcm {d} equals the largest weight")
    return TheoremBound(d, max(d, len(heavy) * d - sum(heavy) + 1))


def coin_lemma(x: int, y: int) -> tuple[int, int]:
    """The unique ``0 < alpha < y``, ``0 < beta < x`` with ``alpha*x + beta*y = x*y - 1``."""
    if x < 2 or y < 2:
        raise ValueError("coin lemma needs x, y >= 2")
    if gcd(x, y) != 1:
        raise ValueError(f"{x} and {y} are not coprime")
    alpha = -pow(x, -1, y) % y
    beta = -pow(y, -1, x) % x
    assert alpha * x + beta * y == x * y - 1
    return alpha, beta


@dataclass(frozen=True)
class WitnessResult:
    space: WeightedSpace
    d: int
    degree: int
    section: dict
    vanishes_at_point: bool
    in_image: bool

    def format_section(self) -> str:
        terms = []
        for e, c in sorted(self.section.items(), key=lambda ec: _order_key(ec[0]), reverse=True):
            mono = Monomial.of(self.space, e).format(self.space)
            terms.append(("- " if c < 0 else "+ ") + (mono if abs(c) == 1 else f"{abs(c)}*{mono}"))
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def optimality_witness(space: WeightedSpace, d: int | None = None) -> WitnessResult:
    """Test ``t1^(a2-1) t2^(a1-1) - s1^(2 a1 a2 - a1 - a2)`` against the image of the multiplication map."""
    if len(space.heavy_weights) != 2:
        raise ValueError("witness needs exactly two heavy weights")
    a1, a2 = space.heavy_weights
    if gcd(a1, a2) != 1:
        raise ValueError("heavy weights must be coprime")
    d = a1 * a2 if d is None else d
    if d != a1 * a2:
        raise ValueError("witness is stated for d = a1*a2")
    degree = 2 * a1 * a2 - a1 - a2
    k = space.unit_count
    t_part = (0,) * k + (a2 - 1, a1 - 1)
    s_part = (degree,) + (0,) * (k - 1 + 2)
    section = {t_part: 1, s_part: -1}
    point = BasePoint.standard(space)
    vanishes = sum(c * point.value(e) for e, c in section.items()) == 0
    in_image = degree >= d and image_basis(space, d, degree).contains(section)
    return WitnessResult(space, d, degree, section, vanishes, in_image)


def multiplication_cokernel_dim(space: WeightedSpace, a1: int, a2: int) -> int:
    """``h0(a1 + a2)`` minus the rank of ``H^0(O(a1)) (x) H^0(O(a2)) -> H^0(O(a1 + a2))``."""
    if a1 < 0 or a2 < 0:
        raise ValueError("degrees must be nonnegative")
    # products of monomials are monomials, so the rank is the number of distinct products
    left = _exponents_of_degree(space.weights, a1)
    right = _exponents_of_degree(space.weights, a2)
    image = {_sum_exps(x, y) for x in left for y in right}
    return h0(space, a1 + a2) - len(image)


def intermediate_cohomology_vanishes(space: WeightedSpace, i: int) -> bool:
    """``H^i(O(j)) = 0`` for every j whenever ``0 < i < dim``."""
    return 0 < i < space.dim


# -- quadric generation ----------------------------------------------------


@dataclass(frozen=True)
class IdealGenerationResult:
    space: WeightedSpace
    embedding_degree: int
    test_degree: int
    holds: bool
    kernel_dims: dict
    generated_dims: dict

    def __bool__(self) -> bool:
        return self.holds


def _multisets(count: int, size: int):
    def rec(start, remaining, acc):
        if remaining == 0:
            yield tuple(acc)
            return
        for i in range(start, count):
            acc.append(i)
            yield from rec(i, remaining - 1, acc)
            acc.pop()

    yield from rec(0, size, [])


def _merge(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(a + b))


def veronese_fibers(space: WeightedSpace, m: int, j: int) -> dict:
    """Degree-``j`` monomials in the sections of ``O(m)``, grouped by their image in ``H^0(O(jm))``."""
    sections = _exponents_of_degree(space.weights, m)
    fibers = defaultdict(list)
    for ms in _multisets(len(sections), j):
        image = tuple(map(sum, zip(*(sections[i] for i in ms)))) if ms else (0,) * space.variable_count
        fibers[image].append(ms)
    return dict(fibers)


def ideal_generation_check(space: WeightedSpace, m: int, t: int) -> IdealGenerationResult:
    """Is the kernel of ``Sym H^0(O(m)) -> (+)_j H^0(O(jm))`` generated by quadrics through degree ``t``?

    The kernel is spanned by binomials within each fiber of the monomial map,
    so every span check splits into independent per-fiber blocks.
    """
    if t < 3:
        raise ValueError("test degree must be at least 3")
    count = h0(space, m)
    quadrics = []
    kernel_dims = {}
    for image, fiber in veronese_fibers(space, m, 2).items():
        quadrics.extend((fiber[0], other) for other in fiber[1:])
    kernel_dims[2] = len(quadrics)
    generated_dims = {2: len(quadrics)}
    holds = True
    for j in range(3, t + 1):
        fibers = veronese_fibers(space, m, j)
        kernel_dims[j] = sum(len(f) - 1 for f in fibers.values())
        index = {ms: image for image, fiber in fibers.items() for ms in fiber}
        blocks: dict = defaultdict(EchelonBasis)
        for g in _multisets(count, j - 2):
            for lead, other in quadrics:
                top = _merge(g, lead)
                blocks[index[top]].add({top: 1, _merge(g, other): -1})
        generated_dims[j] = sum(b.rank for b in blocks.values())
        holds = holds and generated_dims[j] == kernel_dims[j]
    return IdealGenerationResult(space, m, t, holds, kernel_dims, generated_dims)
