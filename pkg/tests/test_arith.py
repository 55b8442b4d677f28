from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from chowkit.arith import (
    GradedPoly,
    SymPoly,
    UniPoly,
    binomial,
    c_to_sym,
    from_inhomogeneous,
    sym_to_c,
    to_inhomogeneous,
)

A, B = sympy.symbols("alpha beta")


def _expand_in_roots(p: GradedPoly):
    """Independent oracle: substitute c1 = a + b, c2 = a b with sympy."""
    out = 0
    for (i, j, _), c in p.items():
        out += sympy.Rational(c.numerator, c.denominator) * (A + B) ** i * (A * B) ** j
    return sympy.expand(out)


def _sym_to_sympy(s: SymPoly):
    return sympy.expand(sum(c * A ** i * B ** j for (i, j), c in s.terms.items()))


def test_binomial_examples():
    assert binomial(5, 2) == 10
    assert binomial(3, 0) == 1
    assert binomial(4, 5) == 0
    assert binomial(4, -1) == 0


@given(st.integers(-12, 12), st.integers(0, 12))
def test_binomial_pascal(n, k):
    assert binomial(n, k + 1) == binomial(n - 1, k) + binomial(n - 1, k + 1)


def test_sym_to_c_examples():
    assert sym_to_c(SymPoly({(1, 0): 1, (0, 1): 1})) == GradedPoly.c1()
    # alpha^2 + alpha beta + beta^2
    assert sym_to_c(SymPoly({(2, 0): 1, (1, 1): 1, (0, 2): 1})) == GradedPoly({(2, 0, 0): 1, (0, 1, 0): -1})
    cubic = SymPoly({(3, 0): 1, (2, 1): 1, (1, 2): 1, (0, 3): 1})
    assert sym_to_c(cubic) == GradedPoly({(3, 0, 0): 1, (1, 1, 0): -2})


def test_symmetry_is_enforced():
    with pytest.raises(ValueError):
        SymPoly({(2, 0): 1})


@st.composite
def sym_polys(draw):
    terms = {}
    for _ in range(draw(st.integers(0, 5))):
        i = draw(st.integers(0, 6))
        j = draw(st.integers(0, 6))
        c = draw(st.integers(-5, 5))
        terms[(i, j)] = terms.get((i, j), 0) + c
        if i != j:
            terms[(j, i)] = terms.get((j, i), 0) + c
    return SymPoly(terms)


@given(sym_polys())
def test_sym_to_c_matches_sympy(s):
    p = sym_to_c(s)
    assert _expand_in_roots(p) == _sym_to_sympy(s)
    assert c_to_sym(p) == s


@st.composite
def homogeneous(draw, deg=None):
    k = draw(st.integers(0, 8)) if deg is None else deg
    terms = {}
    for b in range(k // 2 + 1):
        c = draw(st.integers(-4, 4))
        if c:
            terms[(k - 2 * b, b, 0)] = c
    return 2 * k, GradedPoly(terms)


def test_inhomogeneous_examples():
    assert to_inhomogeneous(GradedPoly.c1(), 2) == UniPoly([1, 1])
    assert to_inhomogeneous(GradedPoly.c2(), 4) == UniPoly([0, 1])
    assert to_inhomogeneous(GradedPoly({(2, 0, 0): 1, (0, 1, 0): -1}), 4) == UniPoly([1, 1, 1])


@given(homogeneous())
def test_inhomogeneous_round_trip(pair):
    deg, p = pair
    assert from_inhomogeneous(to_inhomogeneous(p, deg), deg) == p


def test_inhomogeneous_rejects_bad_input():
    with pytest.raises(ValueError):
        to_inhomogeneous(GradedPoly.c1() + GradedPoly.c2(), 2)
    with pytest.raises(ValueError):
        to_inhomogeneous(GradedPoly.chi(5), 6)
    with pytest.raises(ValueError):
        # x^3 has no preimage of degree 4
        from_inhomogeneous(UniPoly.x(3), 4)


@given(homogeneous(), homogeneous())
def test_graded_ring_axioms(p, q):
    (dp, p), (dq, q) = p, q
    assert p * q == q * p
    assert (p + q) - q == p
    assert (p * q).is_homogeneous(dp + dq) or (p * q).is_zero()
    assert _expand_in_roots(p * q) == sympy.expand(_expand_in_roots(p) * _expand_in_roots(q))


def test_unipoly_division():
    num = UniPoly.x(6) - UniPoly.const(1)
    q, r = num.divmod(UniPoly.x(2) - UniPoly.const(1))
    assert r.is_zero() and q == UniPoly([1, 0, 1, 0, 1])
    with pytest.raises(ArithmeticError):
        UniPoly.x(3).exact_div(UniPoly([1, 1]))


def test_graded_poly_chi_needs_context():
    with pytest.raises(ValueError):
        GradedPoly({(0, 0, 1): 1})
    chi = GradedPoly.chi(5)
    assert chi.mono_degree((0, 0, 1)) == 6
    assert (chi * GradedPoly.c1(5)).degrees() == [8]


def test_graded_poly_exact_coefficients():
    p = GradedPoly.c1() / 2
    assert p.coefficient(1, 0) == Fraction(1, 2)
    assert not p.is_integral()
    with pytest.raises(TypeError):
        GradedPoly({(1, 0, 0): 0.5})
