from fractions import Fraction

import numpy as np
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from fanohyp.linalg import EchelonBasis, dense_rows, exact_rank


def test_rank_of_small_matrices():
    assert exact_rank(dense_rows([[1, 2], [2, 4]])) == 1
    assert exact_rank(dense_rows([[1, 0, 0], [0, 1, 0], [1, 1, 0]])) == 2
    assert exact_rank([]) == 0
    assert exact_rank(dense_rows([[0, 0]])) == 0


def test_fractions_are_accepted():
    assert exact_rank(dense_rows([[Fraction(1, 2), 1], [1, 2]])) == 1


def test_add_and_contains():
    basis = EchelonBasis()
    assert basis.add({"x": 1, "y": 1})
    assert not basis.add({"x": 2, "y": 2})
    assert basis.add({"y": 1})
    assert basis.contains({"x": 5})
    assert not basis.contains({"z": 1})
    assert basis.rank == 2


matrices = st.integers(1, 6).flatmap(
    lambda cols: st.lists(st.lists(st.integers(-4, 4), min_size=cols, max_size=cols), min_size=0, max_size=7)
)


@settings(max_examples=200)
@given(matrices)
def test_rank_matches_sympy(rows):
    expected = sympy.Matrix(rows).rank() if rows else 0
    assert exact_rank(dense_rows(rows)) == expected


@settings(max_examples=100)
@given(matrices)
def test_rank_matches_numpy_on_small_integers(rows):
    expected = int(np.linalg.matrix_rank(np.array(rows, dtype=float))) if rows else 0
    assert exact_rank(dense_rows(rows)) == expected


@settings(max_examples=100)
@given(matrices, st.lists(st.integers(-3, 3), min_size=7, max_size=7))
def test_combinations_are_contained(rows, coeffs):
    basis = EchelonBasis(dense_rows(rows))
    width = len(rows[0]) if rows else 0
    combo = {j: sum(c * r[j] for c, r in zip(coeffs, rows)) for j in range(width)}
    assert basis.contains({j: v for j, v in combo.items() if v})
