from __future__ import annotations

import random
from collections import Counter

import pytest

from convlab.gf import (
    FieldError,
    enumerate_elements,
    field_from_modulus,
    field_make,
    is_irreducible,
    order_factor,
    random_element,
)


def test_modulus_choice():
    assert field_make(2, 1).modulus == (0, 1)
    assert field_make(2, 2).modulus == (1, 1, 1)
    assert field_make(3, 2).modulus == (1, 0, 1)
    assert field_make(2, 3).modulus == (1, 0, 1, 1)


def test_modulus_scan_gf9():
    # every monic quadratic over GF(3) below x^2+1 in low-degree-first order is reducible
    for c1 in range(3):
        assert not is_irreducible((0, c1, 1), 3)
    assert is_irreducible((1, 0, 1), 3)


def test_small_arithmetic():
    F2, F3, F4 = field_make(2), field_make(3), field_make(2, 2)
    assert F2.add(1, 1) == 0
    assert F3.mul(2, 2) == 1
    x = F4.from_coeffs([0, 1])
    assert F4.mul(x, x) == F4.from_coeffs([1, 1])


def test_wrapped_elements():
    F = field_make(5)
    a, b = F(3), F(4)
    assert (a + b).value == 2
    assert (a * b).value == 2
    assert (a / b * b) == a
    assert (-a).value == 2
    assert (a ** 4).value == 1
    with pytest.raises(FieldError):
        _ = a + field_make(7)(1)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        field_make(2, 3).inv(0)


def test_field_axioms(small_field):
    F = small_field
    els = enumerate_elements(F)
    assert els[0] == 0 and len(set(els)) == F.q
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)


def test_tables_match_reference():
    for F in (field_make(2, 4), field_make(3, 3), field_make(2, 9)):
        rng = random.Random(1)
        for _ in range(300):
            a, b = rng.randrange(F.q), rng.randrange(F.q)
            assert F.mul(a, b) == F._poly_mul(a, b)
            assert F.add(a, b) == F._poly_add(a, b)
            if a:
                assert F.inv(a) == F._poly_inv(a)


def test_enumeration():
    assert enumerate_elements(field_make(2)) == [0, 1]
    assert enumerate_elements(field_make(3)) == [0, 1, 2]


def test_random_element_determinism_and_range():
    F = field_make(2)
    assert random_element(F, random.Random(7)) in (0, 1)
    assert random_element(field_make(2, 5), random.Random(9)) == random_element(field_make(2, 5), random.Random(9))


def test_random_element_uniform():
    F = field_make(5)
    rng = random.Random(3)
    counts = Counter(random_element(F, rng) for _ in range(10000))
    sigma = (10000 * 0.2 * 0.8) ** 0.5
    assert all(abs(counts[v] - 2000) < 5 * sigma for v in range(5))


def test_serialization_roundtrip():
    F = field_make(3, 2)
    assert F.header() == "field 3 2 1 0 1"
    for a in enumerate_elements(F):
        assert F.parse(F.format(a)) == a
    assert F.format(F.from_coeffs([2, 1])) == "2:1"
    with pytest.raises(FieldError):
        F.parse("3:0")


def test_from_modulus():
    assert field_from_modulus(2, [1, 1, 1]) == field_make(2, 2)
    with pytest.raises(FieldError):
        field_from_modulus(2, [1, 0, 1])  # x^2+1 = (x+1)^2
    F = field_from_modulus(2, [1, 1, 0, 1])  # the other cubic
    assert F != field_make(2, 3) and F.q == 8


def test_bad_parameters():
    with pytest.raises(FieldError):
        field_make(4)
    with pytest.raises(FieldError):
        field_make(2, 0)
    assert order_factor(243) == (3, 5)
