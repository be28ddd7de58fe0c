from collections import Counter
from itertools import permutations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanohyp.bundles import (
    BundleSum,
    GrassmannianSpace,
    bundle,
    cohomology,
    dual,
    euler_characteristic,
    exterior_algebra,
    exterior_powers_of_sum,
    line_bundle,
    lr_tensor,
    parse_weight,
    power,
    symbol_character,
    tensor,
)
from fanohyp.weights import Partition, character, rho, weyl_dim

GR36 = GrassmannianSpace(3, 6)
GR27 = GrassmannianSpace(2, 7)
GR37 = GrassmannianSpace(3, 7)


def test_space_invariants():
    assert GR36.dim == 9 and GR36.quotient_rank == 3 and GR36.canonical_twist == -6
    with pytest.raises(ValueError):
        GrassmannianSpace(3, 3)


def test_bundle_normal_form_moves_excess_into_twist():
    assert bundle(GR36, (2, 2, 1)) == bundle(GR36, (1, 1), (), 1)
    assert bundle(GR36, (), (1, 1, 1)) == line_bundle(GR36, -1)
    assert str(bundle(GR36, (1,), (2, 2), -5)) == "U∨ ⊗ K_(2,2)Q∨(-5)"
    assert str(line_bundle(GR36, 0)) == "O"
    with pytest.raises(ValueError):
        bundle(GR36, (0, 1))


def test_known_cohomology():
    assert cohomology(bundle(GR36, (1, 1), (), -1)).vanishes
    res = cohomology(bundle(GR27, (), (2,), -1))
    assert (res.degree, res.dimension) == (2, 1)
    res = cohomology(bundle(GR36, (1, 1), (1,), -1))
    assert (res.degree, res.dimension) == (1, 1)
    res = cohomology(bundle(GR36, (1,), (2, 2), -5))
    assert (res.degree, res.dimension) == (8, 15)
    assert cohomology(bundle(GR36, (1, 1, 1))).h(0) == 20
    assert str(cohomology(bundle(GR36, (1, 1), (), -1))) == "all cohomology vanishes"


def test_dual_examples():
    assert dual(bundle(GR36, (1, 1))) == bundle(GR36, (1,), (), -1)
    assert dual(bundle(GR27, (), (1,), 1)) == bundle(GR27, (), (1, 1, 1, 1))


def test_lr_examples():
    assert lr_tensor((1,), (1,), 3) == {Partition((2,)): 1, Partition((1, 1)): 1}
    assert lr_tensor((2, 1), (2, 1), 3)[Partition((3, 2, 1))] == 2
    assert Partition((1, 1, 1, 1)) not in lr_tensor((1, 1), (1, 1), 3)


def test_tensor_examples():
    w2 = bundle(GR36, (), (1, 1))
    assert tensor(w2, w2) == BundleSum.of(bundle(GR36, (), (1,), -1), bundle(GR36, (), (2, 2)))
    u = bundle(GR27, (1,), (), -1)
    assert tensor(u, u) == BundleSum.of(bundle(GR27, (1, 1), (), -2), bundle(GR27, (2,), (), -2))


def test_powers():
    assert power(bundle(GR27, (1,), (), -1), 2) == BundleSum.of(bundle(GR27, (1, 1), (), -2))
    assert power(bundle(GR36, (), (1, 1)), 2, "symmetric") == BundleSum.of(bundle(GR36, (), (2, 2)))
    assert power(bundle(GR36, (1,)), 4) == BundleSum()
    with pytest.raises(ValueError):
        power(bundle(GR36, (1,)), 2, "divided")


def test_exterior_algebra_of_a_sum():
    F = BundleSum.of(bundle(GR36, (1, 1)), (line_bundle(GR36, 1), 3))
    Fv = F.dual()
    assert exterior_powers_of_sum(Fv, 1) == BundleSum.of((line_bundle(GR36, -1), 3), bundle(GR36, (1,), (), -1))
    layers = exterior_algebra(Fv)
    assert [layer.rank for layer in layers] == [comb(6, j) for j in range(7)]
    assert layers[6] == BundleSum.of(line_bundle(GR36, -5))


def test_parse_weight():
    assert parse_weight("1,1") == (1, 1)
    assert parse_weight(" 2, -1 ") == (2, -1)
    assert parse_weight("") == ()
    for bad in ("1,,2", "a", "1.5"):
        with pytest.raises(ValueError):
            parse_weight(bad)


def _multiply(ch1: Counter, ch2: Counter) -> Counter:
    out = Counter()
    for w1, m1 in ch1.items():
        for w2, m2 in ch2.items():
            out[tuple(a + b for a, b in zip(w1, w2))] += m1 * m2
    return out


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 5), (3, 6), (2, 4)]), st.data())
def test_tensor_matches_character_product(kn, data):
    space = GrassmannianSpace(*kn)
    k, r = space.k, space.quotient_rank

    def symbol():
        u = data.draw(st.lists(st.integers(0, 2), min_size=k, max_size=k).map(lambda x: sorted(x, reverse=True)))
        q = data.draw(st.lists(st.integers(0, 2), min_size=r, max_size=r).map(lambda x: sorted(x, reverse=True)))
        return bundle(space, u, q, data.draw(st.integers(-2, 2)))

    def mod_det(ch):
        # characters of the full GL_n are trivial on the Grassmannian
        out = Counter()
        for w, c in ch.items():
            out[tuple(x - w[-1] for x in w)] += c
        return out

    V, W = symbol(), symbol()
    expected = _multiply(symbol_character(V), symbol_character(W))
    got = Counter()
    for sym, mult in tensor(V, W):
        for w, c in symbol_character(sym).items():
            got[w] += mult * c
    assert mod_det(got) == mod_det(expected)


def _random_symbol(draw_int, n):
    k = draw_int(1, n - 1)
    space = GrassmannianSpace(k, n)
    u = sorted((draw_int(0, 6) for _ in range(k - 1)), reverse=True)
    q = sorted((draw_int(0, 6) for _ in range(n - k - 1)), reverse=True)
    return bundle(space, u, q, draw_int(-6, 6))


@st.composite
def symbols(draw, n_max=8):
    n = draw(st.integers(2, n_max))
    return _random_symbol(lambda a, b: draw(st.integers(a, b)), n)


@settings(max_examples=400)
@given(symbols())
def test_serre_duality(V):
    space = V.space
    res = cohomology(V)
    res_dual = cohomology(dual(V).twisted(space.canonical_twist))
    if res.vanishes:
        assert res_dual.vanishes
    else:
        assert res_dual.degree == space.dim - res.degree
        assert res_dual.dimension == res.dimension


@settings(max_examples=300)
@given(symbols(n_max=6))
def test_bott_dichotomy_by_brute_force(V):
    """At most one permutation sends ``alpha + rho`` to a strictly decreasing vector."""
    alpha = list(V.alpha().entries)
    n = len(alpha)
    shifted = [a + r for a, r in zip(alpha, rho(n))]
    hits = [p for p in permutations(range(n)) if all(shifted[p[i]] > shifted[p[i + 1]] for i in range(n - 1))]
    res = cohomology(V)
    if res.vanishes:
        assert not hits
        return
    (perm,) = hits
    length = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
    assert res.degree == length
    dominant = tuple(shifted[perm[i]] - rho(n)[i] for i in range(n))
    assert res.dimension == weyl_dim(dominant, n)


@settings(max_examples=100)
@given(st.integers(1, 6), st.integers(-12, 12))
def test_projective_space_oracle(m, d):
    res = cohomology(line_bundle(GrassmannianSpace(1, m + 1), d))
    if d >= 0:
        assert (res.degree, res.dimension) == (0, comb(d + m, m))
    elif d <= -m - 1:
        assert (res.degree, res.dimension) == (m, comb(-d - 1, m))
    else:
        assert res.vanishes


@given(st.integers(-6, 6))
def test_euler_additivity_on_gr36(t):
    w2 = bundle(GR36, (), (1, 1))
    middle = tensor(w2, w2).twisted(t)
    assert euler_characteristic(middle) == euler_characteristic(bundle(GR36, (), (1,), t - 1)) + euler_characteristic(
        bundle(GR36, (), (2, 2), t)
    )


@given(st.integers(-6, 6))
def test_euler_additivity_on_gr37(t):
    w3 = bundle(GR37, (), (1, 1, 1))
    middle = tensor(w3, w3).twisted(t)
    assert euler_characteristic(middle) == euler_characteristic(bundle(GR37, (), (1, 1), t - 1)) + euler_characteristic(
        bundle(GR37, (), (2, 2, 2), t)
    )


@settings(max_examples=50, deadline=None)
@given(symbols(n_max=6))
def test_rank_matches_character(V):
    assert V.rank == sum(symbol_character(V).values())
    assert V.rank == weyl_dim(V.u_weight.padded(V.space.k), V.space.k) * sum(
        character(V.q_weight.padded(V.space.quotient_rank), V.space.quotient_rank).values()
    )
