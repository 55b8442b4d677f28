import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from chowkit import classes
from chowkit.arith import GradedPoly
from chowkit.quotient import (
    QuotientRing,
    build,
    canonical_monomials,
    expected_total_rank,
    tower_module_dims,
    mod_2_dims,
    mod_p_dims,
    monomials_of_degree,
)

c1 = GradedPoly.c1()
c2 = GradedPoly.c2()


def _nonzero(d):
    return {k: v for k, v in d.items() if v}


def test_rejects_small_n():
    with pytest.raises(ValueError):
        QuotientRing(5)


def test_rank_and_top_degree_n9():
    R = build(9)
    assert R.total_rank == 24
    assert R.top_degree == 22
    assert R.dim(0) == 1


def test_rank_n6():
    assert build(6).total_rank == 12


@pytest.mark.parametrize("n", range(6, 26))
def test_dims_match_presentation(n):
    R = build(n)
    assert R.total_rank == expected_total_rank(n) == 2 * (n // 2) * (n // 2 - 1)
    assert _nonzero(R.dims()) == tower_module_dims(n)
    assert _nonzero(mod_p_dims(n, None)) == tower_module_dims(n)
    # top degree is twice the dimension of Y_n: 8m - 10 for odd n, 8m - 14 for even n
    m = n // 2
    assert R.top_degree == (8 * m - 14 if n % 2 == 0 else 8 * m - 10)


@pytest.mark.slow
@pytest.mark.parametrize("n", range(26, 41))
def test_dims_match_presentation_large(n):
    assert _nonzero(mod_p_dims(n, None)) == tower_module_dims(n)


@pytest.mark.parametrize("n", [8, 9, 12, 13])
def test_relations_vanish(n):
    R = build(n)
    m = n // 2
    for rel in R.relations:
        assert R.normal_form(rel).is_zero()
    assert R.d(m - 1).is_zero()
    if n % 2:
        assert (R.c2() ** 2 * R.d(m - 2)).is_zero()
    for i in range(0, m):
        assert (R.c2() ** (2 * i) * R.d(m - 1 - i)).is_zero()


def test_chi_relations_n8():
    R = build(8)
    chi = R.chi()
    assert (chi * R.c2()).is_zero()
    assert chi * chi == R.d(2)
    chi_poly = GradedPoly.chi(4)
    for a in range(0, 4):
        for b in range(1, 3):
            assert R.normal_form(chi_poly * GradedPoly.monomial(a, b, m=4)).is_zero()


def test_canonical_monomials_are_independent():
    for n in (8, 9, 10, 11):
        R = build(n)
        for mono in canonical_monomials(n):
            assert not R.normal_form(GradedPoly({mono: 1}, R.m if R.even else None)).is_zero()


def test_v_classes():
    R8 = build(8)
    (d4, v4), (d6, v6) = R8.v_class_polys()
    assert (d4, d6) == (4, 6)
    assert v6 * 2 == classes.b(3, 4)
    assert R8.normal_form(v4 * 2 + classes.b(2, 4)) == R8.chi()
    R9 = build(9)
    (_, w6), (d8, w8) = R9.v_class_polys()
    assert d8 == 8
    assert w8 * 2 == c2 * classes.b(2)
    assert w6 * 2 == classes.b(3)


def test_unit_and_one():
    R = build(10)
    x = R.normal_form(c1 ** 3 + c2 * c1 * 2)
    assert R.one() * x == x
    assert x * 1 == x


def _random_poly(rng, n, deg_max=12):
    m, even = n // 2, n % 2 == 0
    terms = {}
    for _ in range(4):
        a, b = rng.randint(0, deg_max // 2), rng.randint(0, deg_max // 4)
        e = rng.randint(0, 1) if even else 0
        terms[(a, b, e)] = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
    return GradedPoly(terms, m if even else None)


@given(st.integers(0, 10_000), st.sampled_from([8, 9, 10, 11]))
def test_normal_form_is_a_ring_map(seed, n):
    rng = random.Random(seed)
    R = build(n)
    p, q = _random_poly(rng, n), _random_poly(rng, n)
    assert R.normal_form(p * q) == R.normal_form(p) * R.normal_form(q)
    assert R.normal_form(p + q) == R.normal_form(p) + R.normal_form(q)
    assert R.normal_form(R.lift(R.normal_form(p))) == R.normal_form(p)


@pytest.mark.parametrize("n", [8, 9, 10, 11, 12, 13])
def test_mod_2_total(n):
    assert sum(mod_2_dims(n).values()) == expected_total_rank(n)


def test_mod_p_examples():
    assert mod_2_dims(8)[2] == 1
    assert sum(mod_2_dims(8).values()) == 24
    assert sum(mod_p_dims(9, 3).values()) == 24


def test_monomials_of_degree():
    assert sorted(monomials_of_degree(8, 4)) == sorted([(4, 0, 0), (2, 1, 0), (0, 2, 0), (2, 0, 1), (0, 1, 1), (0, 0, 2)])
    assert sorted(monomials_of_degree(6, None)) == [(1, 1, 0), (3, 0, 0)]
