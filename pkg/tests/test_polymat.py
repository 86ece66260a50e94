from __future__ import annotations

import random

import pytest

from convlab.convcode import random_code
from convlab.gf import field_make
from convlab.matrix import Mat, rank
from convlab.polymat import (
    PolyMat,
    PolyMatError,
    code_degree,
    column_degrees,
    high_order_matrix,
    in_code,
    is_minimal,
    maximal_minors,
    minimalize,
    minors_gcd_is_unit,
    pdivmod,
    pgcd,
    pmul,
    polymat_mul,
    polymat_mul_vec,
    reverse,
    reverse_vec,
    solve_message,
    truncate,
    vec_from_coeffs,
)

F2, F3, F5 = field_make(2), field_make(3), field_make(5)


def P(F, grid):
    return PolyMat.from_entries(F, grid)


def test_column_degrees():
    assert column_degrees(PolyMat.constant(Mat.from_rows(F3, [[1, 0], [2, 1]]))) == [0, 0]
    assert column_degrees(P(F2, [[[1]], [[0, 1]]])) == [1]
    G = P(F2, [[[1, 1], [1]], [[0, 1], [0, 0, 1]]])
    assert column_degrees(G) == [1, 2]
    with pytest.raises(PolyMatError):
        column_degrees(P(F2, [[[0]], [[0]]]))


def test_high_order_matrix():
    C = Mat.from_rows(F3, [[1, 2], [0, 1]])
    assert high_order_matrix(PolyMat.constant(C)) == C
    G = P(F2, [[[1, 1], [1]], [[0, 1], [0, 0, 1]]])
    assert high_order_matrix(G) == Mat.from_rows(F2, [[1, 0], [1, 1]])
    assert high_order_matrix(P(F2, [[[0, 1]], [[1]]])).col(0) == [1, 0]


def test_minimalize_example():
    G = P(F2, [[[0, 1], [1, 1]], [[0, 1], [0, 1]]])
    assert rank(high_order_matrix(G)) == 1
    Gm = minimalize(G)
    assert rank(high_order_matrix(Gm)) == 2
    assert code_degree(Gm) == code_degree(G) == sum(column_degrees(Gm))


def test_minimalize_keeps_minimal_input():
    G = P(F2, [[[1]], [[0, 1]]])
    assert minimalize(G) == G


def test_code_degree():
    assert code_degree(PolyMat.constant(Mat.from_rows(F5, [[1, 0], [0, 1], [2, 3]]))) == 0
    assert code_degree(P(F2, [[[1]], [[0, 1]]])) == 1
    G = P(F3, [[[1], [0]], [[0, 1], [1]], [[0], [0, 1]]])
    assert sorted(len(m) - 1 for m in maximal_minors(G)) == [0, 1, 2]
    assert code_degree(G) == 2


def test_rank_deficient_rejected():
    G = P(F2, [[[1], [1]], [[0, 1], [0, 1]]])
    with pytest.raises(PolyMatError):
        code_degree(G)


def test_minors_gcd():
    assert minors_gcd_is_unit(P(F2, [[[1]], [[0, 1]]]))
    assert not minors_gcd_is_unit(P(F2, [[[0, 1]], [[0, 0, 1]]]))
    assert minors_gcd_is_unit(P(F2, [[[1, 1]], [[1]]]))


def test_reverse_examples():
    assert reverse(P(F2, [[[1]], [[0, 1]]])) == P(F2, [[[0, 1]], [[1]]])
    pal = P(F2, [[[1, 1, 1]], [[1, 0, 1]]])
    assert reverse(pal) == pal


def test_reverse_rejects_non_summand():
    # palindromic but gcd 1+s: outside the hypotheses
    with pytest.raises(PolyMatError):
        reverse(P(F2, [[[1, 1]], [[1, 1]]]))
    with pytest.raises(PolyMatError):
        reverse(P(F2, [[[0, 1], [1, 1]], [[0, 1], [0, 1]]]))


def test_reverse_properties():
    rng = random.Random(2)
    for F in (F2, F3, field_make(2, 2)):
        for degs in ([1], [2], [1, 1], [0, 2], [1, 2]):
            C = random_code(F, 3, len(degs), degs, rng)
            G = C.G
            R = reverse(G)
            assert reverse(R) == G
            assert column_degrees(R) == column_degrees(G)
            assert high_order_matrix(R) == G.coeff(0)
            assert R.coeff(0) == high_order_matrix(G)


def test_polynomial_helpers():
    a, b = [1, 2, 1], [1, 1]  # (1+s)^2 and 1+s over GF(3)
    q, r = pdivmod(F3, a, b)
    assert q == [1, 1] and r == []
    assert pgcd(F3, a, pmul(F3, b, [2, 1])) == [1, 1]


def test_products():
    G = P(F2, [[[1]], [[0, 1]]])
    one = P(F2, [[[1]]])
    assert polymat_mul_vec(G, one) == G.column(0)
    zero = P(F2, [[[0]]])
    assert polymat_mul_vec(G, zero).degree == -1
    v = polymat_mul_vec(G, P(F2, [[[1, 1]]]))
    assert v == P(F2, [[[1, 1]], [[0, 1, 1]]])
    assert [m.col(0) for m in truncate(v, 3)] == [[1, 0], [1, 1], [0, 1], [0, 0]]


def test_solve_message_and_membership():
    rng = random.Random(4)
    C = random_code(F3, 3, 2, [1, 1], rng)
    u = vec_from_coeffs(F3, [[1, 2], [0, 1], [2, 2]])
    v = polymat_mul_vec(C.G, u)
    assert solve_message(C.G, v) == u
    assert in_code(C.G, v)
    e = vec_from_coeffs(F3, [[1, 0, 0]])
    assert not in_code(C.G, e)


def test_unimodular_invariance():
    rng = random.Random(8)
    C = random_code(F2, 3, 2, [1, 1], rng)
    U = P(F2, [[[1], [0, 1, 1]], [[0], [1]]])  # det 1
    GU = polymat_mul(C.G, U)
    assert code_degree(GU) == code_degree(C.G)
    Gm = minimalize(GU)
    assert is_minimal(Gm) and sum(column_degrees(Gm)) == code_degree(C.G)
    for j in range(2):
        assert in_code(C.G, Gm.column(j))


def test_reverse_vec():
    v = vec_from_coeffs(F5, [[1, 0], [0, 0], [2, 3]])
    assert reverse_vec(v) == vec_from_coeffs(F5, [[2, 3], [0, 0], [1, 0]])
    assert reverse_vec(v, 3).coeff(0).is_zero()
