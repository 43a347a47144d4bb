from math import gcd

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from sextic_alexander.alexander import (
    AlexanderPolynomial,
    alexander_generic,
    alexander_reduced,
    delta_factor,
    format_polynomial,
)

t = sympy.Symbol("t")


def _as_sympy(coeffs):
    return sum(c * t**i for i, c in enumerate(coeffs))


def test_delta_factor_examples():
    assert str(delta_factor(1, 6)) == "t^2 - t + 1"
    assert str(delta_factor(3, 6)) == "t^2 + 2*t + 1"
    assert str(delta_factor(2, 6)) == "t^2 + t + 1"
    assert delta_factor(5, 6).coefficients == [1, -1, 1]
    with pytest.raises(ValueError):
        delta_factor(6, 6)
    with pytest.raises(ValueError):
        delta_factor(0, 6)


def test_irrational_factor_is_symbolic():
    f = delta_factor(1, 5)
    assert not f.is_rational and f.coefficients is None
    assert str(f) == "Delta_1/5(t)"
    p = AlexanderPolynomial(5, (1, 0, 0, 0))
    assert not p.is_rational()
    with pytest.raises(ValueError):
        p.coefficients()


@pytest.mark.parametrize("d", [4, 5, 6, 7, 8, 12])
def test_delta_k_is_the_minimal_polynomial_pair(d):
    # (t - e^{2 pi i k/d})(t - e^{-2 pi i k/d}) = t^2 - 2 cos(2 pi k/d) t + 1
    for k in range(1, d):
        f = delta_factor(k, d)
        exact = t**2 - 2 * sympy.cos(2 * sympy.pi * sympy.Rational(k, d)) * t + 1
        assert f.is_rational == all(c.is_rational for c in sympy.Poly(exact, t).all_coeffs())
        if f.is_rational:
            assert sympy.expand(exact - _as_sympy(f.coefficients)) == 0
        assert str(delta_factor(d - k, d)) == str(f)


def test_reduced_examples():
    assert alexander_reduced((0, 0, 0, 0, 1)).render() == "(t^2 - t + 1)"
    assert alexander_reduced((0, 0, 0, 0, 1)).reduced_coefficients() == [1, -1, 1]
    assert alexander_reduced((0, 0, 0, 0, 3)).render() == "(t^2 - t + 1)^3"
    b66 = alexander_reduced((0, 1, 2, 3, 4))
    assert b66.render() == "(t^2 - t + 1)^4 (t^2 + t + 1)^4 (t + 1)^4"
    assert b66.reduced_degree == 20
    assert alexander_reduced((0, 0, 0, 0, 0)).render() == "1"


def test_generic_examples():
    red = alexander_reduced((0, 0, 0, 0, 1))
    assert alexander_generic(red, 1) == red
    six = alexander_generic(alexander_reduced((0, 1, 2, 3, 4)), 6)
    assert six.render() == "(t - 1)^5 (t^2 - t + 1)^4 (t^2 + t + 1)^4 (t + 1)^4"
    assert six.degree == 25
    lt = alexander_generic(alexander_reduced((0, 0, 0, 1, 1)), 2)
    assert lt.render() == "(t - 1) (t^2 - t + 1) (t^2 + t + 1)"
    assert lt.coefficients() == [-1, 1, -1, 1, -1, 1]


def test_six_lines_coefficients_match_sympy_expansion():
    six = alexander_generic(alexander_reduced((0, 1, 2, 3, 4)), 6)
    want = sympy.Poly((t - 1) ** 5 * (t**2 - t + 1) ** 4 * (t**2 + t + 1) ** 4 * (t + 1) ** 4, t)
    assert six.coefficients() == [int(c) for c in reversed(want.all_coeffs())]


def test_validation():
    with pytest.raises(ValueError):
        AlexanderPolynomial(6, (0, 0, 1))
    with pytest.raises(ValueError):
        AlexanderPolynomial(6, (0, 0, 0, 0, -1))
    with pytest.raises(ValueError):
        AlexanderPolynomial(6, (0, 0, 0, 0, 0), r=0)


def test_format_polynomial():
    assert format_polynomial([1, -1, 1]) == "t^2 - t + 1"
    assert format_polynomial([-3, 0, 2]) == "2*t^2 - 3"
    assert format_polynomial([0]) == "0"
    assert format_polynomial([1, 1], "a") == "a + 1"


ell_vectors = st.tuples(*[st.integers(0, 4)] * 5)


@settings(max_examples=200)
@given(ell_vectors, st.integers(1, 6))
def test_expansion_matches_sympy(ells, r):
    p = AlexanderPolynomial(6, ells, r)
    # Delta_k is Phi_6, Phi_3 or Phi_2^2 by the order of k in Z/6
    want = (t - 1) ** (r - 1)
    for k, e in enumerate(ells, start=1):
        n = 6 // gcd(k, 6)
        want *= (sympy.cyclotomic_poly(n, t) ** (2 if n == 2 else 1)) ** e
    got = _as_sympy(p.coefficients())
    assert sympy.expand(got - want) == 0
    assert len(p.coefficients()) == p.degree + 1
    assert len(p.reduced_coefficients()) == 2 * sum(ells) + 1


@settings(max_examples=200)
@given(ell_vectors)
def test_conjugate_pairing(ells):
    # Delta_k = Delta_{6-k}: mirroring the exponent vector changes nothing
    assert alexander_reduced(ells).reduced_coefficients() == alexander_reduced(ells[::-1]).reduced_coefficients()
    # only t^2 - t + 1, t^2 + t + 1 and t + 1 occur for d = 6
    names = {n for n, _ in alexander_reduced(ells).grouped_factors()}
    assert names <= {"t^2 - t + 1", "t^2 + t + 1", "t + 1"}
