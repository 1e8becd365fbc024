from fractions import Fraction

import pytest
import sympy

from cobordism.algebra import GradedPolynomial, identity_series, series_compose
from cobordism.algebra.polynomial import cp_generator
from cobordism.classvector import ClassVector
from cobordism.fgl import exp_series, fgl, integrality_report, misc_log

ONE = GradedPolynomial.constant(1)


def _trunc(expr, s, N):
    poly = sympy.Poly(sympy.expand(expr), s)
    return sum(c * s ** k for (k,), c in poly.terms() if k <= N)


def _compose(coeffs, inner, s, N):
    """``sum coeffs[k] inner^k`` truncated above ``s^N``."""
    total, power = sympy.Integer(0), sympy.Integer(1)
    for k in range(1, N + 1):
        power = _trunc(power * inner, s, N)
        total += coeffs.get(k, 0) * power
    return _trunc(total, s, N)


def _sympy_law(N: int):
    """Independent expansion of Exp(log u + log v) with sympy symbols for CP_n."""
    u, v, s = sympy.symbols("u v s")
    cps = [sympy.Integer(1)] + list(sympy.symbols(f"CP1:{N}"))
    log = {n + 1: cps[n] / (n + 1) for n in range(N)}
    # revert log by fixed-point iteration g = s - (log(g) - g)
    g = s
    for _ in range(N):
        g = _trunc(s - (_compose(log, g, s, N) - g), s, N)
    exp = {k: sympy.Poly(g, s).coeff_monomial(s ** k) for k in range(1, N + 1)}
    # s marks total degree in u and v
    total = _compose(log, s * u, s, N) + _compose(log, s * v, s, N)
    law = _compose(exp, total, s, N).subs(s, 1)
    law = sympy.expand(law)
    out = {}
    for i in range(N + 1):
        for j in range(N + 1 - i):
            c = law.coeff(u, i).coeff(v, j)
            if c != 0:
                out[(i, j)] = c
    return out, cps


def _to_sympy(poly: GradedPolynomial, cps):
    total = sympy.Integer(0)
    for mono, c in poly.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for g, e in mono:
            term *= cps[g.index] ** e
        total += term
    return sympy.expand(total)


def test_law_agrees_with_independent_sympy_expansion():
    N = 5
    expected, cps = _sympy_law(N)
    law = fgl(N)
    assert set(k for k, _ in law.items()) == set(expected)
    for key, poly in law.items():
        assert sympy.expand(_to_sympy(poly, cps) - expected[key]) == 0


def test_first_coefficients():
    law = fgl(4)
    cp1, cp2 = GradedPolynomial.cp(1), GradedPolynomial.cp(2)
    assert law.a(1, 1) == -cp1
    assert law.a(1, 2) == cp1 * cp1 - cp2
    assert law.a(2, 2) == cp1 ** 3 * Fraction(-5, 2) + cp1 * cp2 * 4 - GradedPolynomial.cp(3) * Fraction(3, 2)


def test_exp_inverts_log_at_degree_eight():
    u = identity_series(9, ONE)
    assert series_compose(exp_series(8), misc_log(8)) == u
    assert series_compose(misc_log(8), exp_series(8)) == u


def test_exp_leading_terms():
    e = exp_series(4)
    cp1, cp2 = GradedPolynomial.cp(1), GradedPolynomial.cp(2)
    assert e[2] == -cp1 / 2
    assert e[3] == cp1 * cp1 / 2 - cp2 / 3


@pytest.mark.parametrize("N", [2, 4, 8])
def test_law_axioms(N):
    law = fgl(N)
    assert law.is_unital()
    assert law.is_symmetric()
    assert law.is_associative()


def test_coefficient_grades():
    law = fgl(6)
    for (i, j), poly in law.items():
        if i and j:
            assert poly.grade == 2 * (i + j - 1)


def test_integrality_report_passes_at_degree_eight():
    report = integrality_report(8)
    assert report.passed
    assert len(report.entries) == sum(1 for i in range(1, 8) for j in range(1, 9 - i))


def test_integrality_report_degenerate_degree():
    report = integrality_report(2)
    assert [(ij, str(vec)) for ij, _, vec in report.entries] == [((1, 1), "-2 t1")]


def test_a11_maps_to_minus_two_t1():
    entries = {ij: vec for ij, _, vec in integrality_report(3).entries}
    assert entries[(1, 1)] == ClassVector.t(1) * -2


def test_degree_below_two_is_rejected():
    with pytest.raises(ValueError):
        fgl(1)


def test_cp_generator_names():
    assert cp_generator(3).name == "CP3"
