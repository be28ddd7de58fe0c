"""Irreducible homogeneous bundles on Gr(k, n) and their cohomology.

A symbol ``K_b U^v (x) K_c Q^v (x) O(t)`` is kept in normal form
``b_k = c_{n-k} = 0`` using ``det U^v = O(1)`` and ``det Q^v = O(-1)``.
Cohomology follows the Bott-Borel-Weil recipe on the concatenated weight
``(b_1, ..., b_k, c_1 - t, ..., c_{n-k} - t)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

from .weights import Partition, Weight, character, normalize, weyl_dim


@dataclass(frozen=True)
class GrassmannianSpace:
    k: int
    n: int

    def __post_init__(self):
        if not 1 <= self.k < self.n:
            raise ValueError(f"need 1 <= k < n, got Gr({self.k},{self.n})")

    @property
    def dim(self) -> int:
        return self.k * (self.n - self.k)

    @property
    def quotient_rank(self) -> int:
        return self.n - self.k

    @property
    def canonical_twist(self) -> int:
        return -self.n

    def __str__(self) -> str:
        return f"Gr({self.k},{self.n})"


def _pad(seq: Sequence[int], length: int, what: str) -> list[int]:
    seq = [int(x) for x in seq]
    if len(seq) > length:
        # trailing zeros beyond the rank are harmless
        if any(seq[length:]):
            raise ValueError(f"{what} weight {tuple(seq)} has more than {length} rows")
        seq = seq[:length]
    if any(seq[i] < seq[i + 1] for i in range(len(seq) - 1)):
        raise ValueError(f"{what} weight {tuple(seq)} is not weakly decreasing")
    if seq and len(seq) < length and seq[-1] < 0:
        raise ValueError(f"{what} weight {tuple(seq)} cannot be zero-padded")
    return seq + [0] * (length - len(seq))


@dataclass(frozen=True)
class BundleSymbol:
    """``K_u U^v (x) K_q Q^v (x) O(twist)`` in normal form.

    Use :func:`bundle` to build one from arbitrary weakly decreasing weights.
    """

    space: GrassmannianSpace
    u_weight: Partition
    q_weight: Partition
    twist: int = 0

    def __post_init__(self):
        if len(self.u_weight) >= self.space.k:
            raise ValueError("u_weight not in normal form (last row must be zero)")
        if len(self.q_weight) >= self.space.quotient_rank:
            raise ValueError("q_weight not in normal form (last row must be zero)")

    @property
    def rank(self) -> int:
        return weyl_dim(self.u_weight, self.space.k) * weyl_dim(self.q_weight, self.space.quotient_rank)

    @property
    def c1(self) -> int:
        """First Chern class in units of the Plücker class."""
        k, r = self.space.k, self.space.quotient_rank
        value = self.rank * (self.twist + Fraction(self.u_weight.size, k) - Fraction(self.q_weight.size, r))
        assert value.denominator == 1
        return int(value)

    def sort_key(self):
        return (self.u_weight.parts, self.q_weight.parts, self.twist)

    def alpha(self) -> Weight:
        return to_alpha(self)

    def cohomology(self) -> CohomologyResult:
        return cohomology(self)

    def twisted(self, d: int) -> BundleSymbol:
        return twist(self, d)

    def dual(self) -> BundleSymbol:
        return dual(self)

    def __str__(self) -> str:
        parts = []
        if self.u_weight:
            parts.append("U∨" if self.u_weight.parts == (1,) else f"K_{self.u_weight}U∨")
        if self.q_weight:
            parts.append("Q∨" if self.q_weight.parts == (1,) else f"K_{self.q_weight}Q∨")
        if not parts:
            return "O" if self.twist == 0 else f"O({self.twist})"
        text = " ⊗ ".join(parts)
        return text if self.twist == 0 else f"{text}({self.twist})"


def bundle(space: GrassmannianSpace, u: Sequence[int] = (), q: Sequence[int] = (), twist: int = 0) -> BundleSymbol:
    """Normal-form symbol of ``K_u U^v (x) K_q Q^v (x) O(twist)``.

    ``u`` and ``q`` may be any weakly decreasing integer sequences (negatives
    allowed when given at full length); the excess is moved into the twist.
    """
    b = _pad(u, space.k, "U")
    c = _pad(q, space.quotient_rank, "Q")
    shift_u, shift_q = b[-1], c[-1]
    b = [x - shift_u for x in b]
    c = [x - shift_q for x in c]
    return BundleSymbol(space, Partition(tuple(b)), Partition(tuple(c)), int(twist) + shift_u - shift_q)


def line_bundle(space: GrassmannianSpace, t: int) -> BundleSymbol:
    return BundleSymbol(space, Partition(()), Partition(()), t)


def from_alpha(space: GrassmannianSpace, alpha) -> BundleSymbol:
    """Inverse of :func:`to_alpha` (up to the overall shift it ignores)."""
    a = list(alpha)
    if len(a) != space.n:
        raise ValueError("weight length must equal n")
    return bundle(space, a[: space.k], a[space.k :], 0)


@dataclass(frozen=True)
class CohomologyResult:
    """Either all cohomology vanishes (``degree is None``) or exactly one degree survives."""

    degree: int | None = None
    dominant: Weight | None = None
    dimension: int = 0

    @property
    def vanishes(self) -> bool:
        return self.degree is None

    def h(self, i: int) -> int:
        return self.dimension if self.degree == i else 0

    @property
    def euler_characteristic(self) -> int:
        return 0 if self.degree is None else (-1) ** self.degree * self.dimension

    def __str__(self) -> str:
        if self.vanishes:
            return "all cohomology vanishes"
        return f"H^{self.degree} has dimension {self.dimension} (highest weight {self.dominant})"


ALL_ZERO = CohomologyResult()


def to_alpha(V: BundleSymbol) -> Weight:
    k, r = V.space.k, V.space.quotient_rank
    return Weight(V.u_weight.padded(k) + tuple(c - V.twist for c in V.q_weight.padded(r)))


@lru_cache(maxsize=None)
def cohomology(V: BundleSymbol) -> CohomologyResult:
    norm = normalize(to_alpha(V))
    if norm.singular:
        return ALL_ZERO
    return CohomologyResult(norm.length, norm.dominant, weyl_dim(norm.dominant, V.space.n))


def twist(V: BundleSymbol, d: int) -> BundleSymbol:
    return BundleSymbol(V.space, V.u_weight, V.q_weight, V.twist + int(d))


def dual(V: BundleSymbol) -> BundleSymbol:
    k, r = V.space.k, V.space.quotient_rank
    b = [-x for x in reversed(V.u_weight.padded(k))]
    c = [-x for x in reversed(V.q_weight.padded(r))]
    return bundle(V.space, b, c, -V.twist)


# -- Littlewood-Richardson -------------------------------------------------


def _horizontal_strips(shape: tuple[int, ...], m: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Shapes obtained from ``shape`` by adding a horizontal strip of ``m`` cells."""
    rows = list(shape) + ([0] if len(shape) < cap else [])

    def rec(r, remaining, acc):
        if r == len(rows):
            if remaining == 0:
                yield tuple(x for x in acc if x)
            return
        limit = remaining if r == 0 else min(remaining, rows[r - 1] - rows[r])
        for add in range(limit, -1, -1):
            acc.append(rows[r] + add)
            yield from rec(r + 1, remaining - add, acc)
            acc.pop()

    yield from rec(0, m, [])


def _is_lattice(word: Iterable[int]) -> bool:
    counts = Counter()
    for x in word:
        counts[x] += 1
        if x > 1 and counts[x] > counts[x - 1]:
            return False
    return True


@lru_cache(maxsize=None)
def _lr(lam: tuple[int, ...], mu: tuple[int, ...], cap: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    if len(lam) > cap or len(mu) > cap:
        return ()
    results: Counter = Counter()

    def rec(label, shape, cells):
        if label > len(mu):
            word = []
            for r in range(len(shape)):
                row = sorted((c for (rr, c) in cells if rr == r), reverse=True)
                word.extend(cells[(r, c)] for c in row)
            if _is_lattice(word):
                results[shape] += 1
            return
        for new in _horizontal_strips(shape, mu[label - 1], cap):
            added = {}
            ok = True
            for r, length in enumerate(new):
                old = shape[r] if r < len(shape) else 0
                if length > old and r + 1 < label:
                    # an LR filling never puts label i above row i
                    ok = False
                    break
                for c in range(old, length):
                    added[(r, c)] = label
            if ok:
                rec(label + 1, new, {**cells, **added})

    rec(1, lam, {})
    return tuple(sorted(results.items(), reverse=True))


def lr_tensor(lam, mu, cap: int) -> dict[Partition, int]:
    """Littlewood-Richardson coefficients ``c^nu_{lam,mu}`` for nu with at most ``cap`` rows."""
    lam = lam if isinstance(lam, Partition) else Partition(tuple(lam))
    mu = mu if isinstance(mu, Partition) else Partition(tuple(mu))
    return {Partition(nu): c for nu, c in _lr(lam.parts, mu.parts, cap)}


# -- formal sums -----------------------------------------------------------


@dataclass(frozen=True)
class BundleSum:
    """A finite direct sum of irreducible symbols with multiplicities, in canonical order."""

    terms: tuple[tuple[BundleSymbol, int], ...] = ()

    def __post_init__(self):
        merged: Counter = Counter()
        for sym, mult in self.terms:
            if mult < 0:
                raise ValueError("multiplicities must be nonnegative")
            merged[sym] += mult
        spaces = {sym.space for sym in merged}
        if len(spaces) > 1:
            raise ValueError("all summands must live on the same Grassmannian")
        ordered = tuple(sorted(((s, m) for s, m in merged.items() if m), key=lambda sm: sm[0].sort_key()))
        object.__setattr__(self, "terms", ordered)

    @classmethod
    def of(cls, *symbols: BundleSymbol | tuple[BundleSymbol, int]) -> BundleSum:
        terms = [s if isinstance(s, tuple) else (s, 1) for s in symbols]
        return cls(tuple(terms))

    def __iter__(self) -> Iterator[tuple[BundleSymbol, int]]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: BundleSum) -> BundleSum:
        return BundleSum(self.terms + other.terms)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def multiplicity(self, sym: BundleSymbol) -> int:
        return dict(self.terms).get(sym, 0)

    @property
    def rank(self) -> int:
        return sum(s.rank * m for s, m in self.terms)

    @property
    def c1(self) -> int:
        return sum(s.c1 * m for s, m in self.terms)

    def dual(self) -> BundleSum:
        return BundleSum(tuple((dual(s), m) for s, m in self.terms))

    def twisted(self, d: int) -> BundleSum:
        return BundleSum(tuple((twist(s, d), m) for s, m in self.terms))

    def tensor(self, other: BundleSum | BundleSymbol) -> BundleSum:
        if isinstance(other, BundleSymbol):
            other = BundleSum.of(other)
        out = []
        for s, m in self.terms:
            for s2, m2 in other.terms:
                out.extend((sym, c * m * m2) for sym, c in tensor(s, s2))
        return BundleSum(tuple(out))

    def euler_characteristic(self) -> int:
        return sum(m * cohomology(s).euler_characteristic for s, m in self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " ⊕ ".join(str(s) if m == 1 else f"({s})^{m}" for s, m in self.terms)


def tensor(V: BundleSymbol, W: BundleSymbol) -> BundleSum:
    if V.space != W.space:
        raise ValueError(f"space mismatch: {V.space} vs {W.space}")
    return _tensor(V, W)


@lru_cache(maxsize=None)
def _tensor(V: BundleSymbol, W: BundleSymbol) -> BundleSum:
    sp = V.space
    u_side = lr_tensor(V.u_weight, W.u_weight, sp.k)
    q_side = lr_tensor(V.q_weight, W.q_weight, sp.quotient_rank)
    t = V.twist + W.twist
    terms = []
    for nu, c in u_side.items():
        for kappa, c2 in q_side.items():
            terms.append((bundle(sp, nu.parts, kappa.parts, t), c * c2))
    return BundleSum(tuple(terms))


# -- characters and powers -------------------------------------------------


def symbol_character(V: BundleSymbol) -> Counter:
    """Weight multiset of V as concatenated ``(GL_k, GL_{n-k})`` weight vectors."""
    return _irreducible_character(V.space, V.u_weight.padded(V.space.k), V.q_weight.padded(V.space.quotient_rank), V.twist)


@lru_cache(maxsize=None)
def _irreducible_character(space: GrassmannianSpace, u: tuple[int, ...], q: tuple[int, ...], t: int) -> Counter:
    out: Counter = Counter()
    cu = character(u, space.k)
    cq = character(q, space.quotient_rank)
    for wu, mu in cu.items():
        wu_t = tuple(x + t for x in wu)
        for wq, mq in cq.items():
            out[wu_t + wq] += mu * mq
    return out


def _character_power(char: Counter, p: int, kind: str) -> Counter:
    # generating-function DP: layer[j] holds the character of degree j
    layers = [Counter({None: 1})] + [Counter() for _ in range(p)]
    for w, m in char.items():
        new = [Counter() for _ in range(p + 1)]
        for deg, layer in enumerate(layers):
            if not layer:
                continue
            top = min(m, p - deg) if kind == "exterior" else p - deg
            for j in range(top + 1):
                coeff = comb(m, j) if kind == "exterior" else comb(m + j - 1, j)
                if coeff == 0:
                    continue
                for key, c in layer.items():
                    if key is None:
                        nk = tuple(j * x for x in w)
                    else:
                        nk = tuple(a + j * x for a, x in zip(key, w))
                    new[deg + j][nk] += c * coeff
        layers = new
    result = layers[p]
    if None in result:
        # p == 0: the trivial character
        return Counter({tuple(0 for _ in next(iter(char), ())): 1}) if char else Counter()
    return result


def decompose_character(space: GrassmannianSpace, char: Counter) -> BundleSum:
    """Split a ``GL_k x GL_{n-k}`` character into irreducible symbols by peeling highest weights."""
    k = space.k
    remaining = Counter({w: c for w, c in char.items() if c})
    terms = []
    while remaining:
        top = max(remaining)
        mult = remaining[top]
        u, q = top[:k], top[k:]
        if mult < 0 or any(u[i] < u[i + 1] for i in range(len(u) - 1)) or any(
            q[i] < q[i + 1] for i in range(len(q) - 1)
        ):
            raise ArithmeticError(f"character is not a genuine representation near {top}")
        terms.append((bundle(space, u, q, 0), mult))
        for w, c in _irreducible_character(space, u, q, 0).items():
            remaining[w] -= mult * c
            if remaining[w] == 0:
                del remaining[w]
    return BundleSum(tuple(terms))


def power(V: BundleSymbol, p: int, kind: str = "exterior") -> BundleSum:
    """Decomposition of the exterior (``kind="exterior"``) or symmetric power of V."""
    if kind not in ("exterior", "symmetric"):
        raise ValueError(f"unknown power kind {kind!r}")
    if p < 0:
        raise ValueError("power must be nonnegative")
    return _power(V, p, kind)


@lru_cache(maxsize=None)
def _power(V: BundleSymbol, p: int, kind: str) -> BundleSum:
    if p == 0:
        return BundleSum.of(line_bundle(V.space, 0))
    if kind == "exterior" and p > V.rank:
        return BundleSum()
    if p == 1:
        return BundleSum.of(V)
    return decompose_character(V.space, _character_power(symbol_character(V), p, kind))


def exterior_powers_of_sum(E: BundleSum, p: int) -> BundleSum:
    """``wedge^p E`` distributed over the summands of E."""
    if p < 0:
        raise ValueError("power must be nonnegative")
    return exterior_algebra(E, p)[p]


def exterior_algebra(E: BundleSum, top: int | None = None) -> list[BundleSum]:
    """``[wedge^0 E, ..., wedge^top E]`` (``top`` defaults to the rank)."""
    top = E.rank if top is None else top
    if not E.terms:
        return [BundleSum()] * (top + 1) if top else [BundleSum()]
    space = E.terms[0][0].space
    acc = [BundleSum.of(line_bundle(space, 0))] + [BundleSum() for _ in range(top)]
    for sym, mult in E.terms:
        for _ in range(mult):
            pieces = [power(sym, j) for j in range(min(sym.rank, top) + 1)]
            new = [BundleSum() for _ in range(top + 1)]
            for deg, current in enumerate(acc):
                if not current:
                    continue
                for j, piece in enumerate(pieces):
                    if deg + j > top or not piece:
                        continue
                    new[deg + j] = new[deg + j] + current.tensor(piece)
            acc = new
    return acc


def euler_characteristic(V: BundleSymbol | BundleSum) -> int:
    if isinstance(V, BundleSum):
        return V.euler_characteristic()
    return cohomology(V).euler_characteristic


def parse_weight(text: str) -> tuple[int, ...]:
    """``"1,1"`` -> ``(1, 1)``; the empty string and ``"0"`` give ``()``-like weights."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ValueError(f"malformed weight {text!r}: expected comma-separated integers") from exc
