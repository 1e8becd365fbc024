from fractions import Fraction
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobordism.algebra import Partition, partitions
from cobordism.classvector import ClassVector
from cobordism.models import (CohomologyRing, ModelSum, chern_coordinates, classical_cp, cp,
                              cp_vector, point, product, product_of, scale, torus)


def _arrangements(lam: Partition, slots: int) -> int:
    """Distinct placements of the parts of ``lam`` among ``slots`` equal roots."""
    if lam.length > slots:
        return 0
    count = factorial(slots) // factorial(slots - lam.length)
    for m in lam.multiindex:
        count //= factorial(m)
    return count


def _cp_oracle(n: int, k: int = 1) -> ClassVector:
    # all n+1 Chern roots equal x, so m_I(T) = (#arrangements) x^|I| and x^n[CP_n] = 1
    return ClassVector({(lam, (n - w,)): _arrangements(lam, n + 1) * k ** (n - w)
                        for w in range(n + 1) for lam in partitions(w)})


# -- ClassVector ------------------------------------------------------------------

def test_divided_power_product_rule():
    for a in range(4):
        for b in range(4):
            assert ClassVector.w(a) * ClassVector.w(b) == ClassVector.w(a + b) * comb(a + b, a)


def test_classvector_printing_order():
    v = ClassVector.w(2) + ClassVector.t(1) * ClassVector.w(1) * 3 + ClassVector.t(2) * 3 \
        + ClassVector.t(1, 1) * 3
    assert str(v) == "3 t1^2 + 3 t2 + 3 t1 w1 + w2"
    assert str(ClassVector.zero()) == "0"
    assert str(ClassVector.t(1) * Fraction(-1, 2)) == "-1/2 t1"


def test_classvector_tensor_has_two_slots():
    v = ClassVector.w(1).tensor(ClassVector.t(1))
    assert v.slots == 2
    assert v[(Partition([1]), (1, 0))] == 1


def test_classvector_rejects_mismatched_slots():
    with pytest.raises(ValueError):
        ClassVector({(Partition(), (0, 0)): 1})


def test_scale_omega_multiplies_divided_powers():
    v = _cp_oracle(2)
    assert v.scale_omega(3) == _cp_oracle(2, 3)


# -- models --------------------------------------------------------------------------

@pytest.mark.parametrize("n", range(0, 7))
def test_cp_coordinates_match_closed_form(n):
    assert chern_coordinates(cp(n)) == _cp_oracle(n)


@pytest.mark.parametrize("n, k", [(1, 2), (2, 2), (3, 6), (4, 3)])
def test_cp_with_scaled_form(n, k):
    assert chern_coordinates(cp(n, k)) == _cp_oracle(n, k)


def test_published_low_dimensional_lines():
    assert str(chern_coordinates(cp(1))) == "2 t1 + w1"
    assert str(chern_coordinates(cp(2))) == "3 t1^2 + 3 t2 + 3 t1 w1 + w2"


def test_cp3_line_under_tangent_convention():
    v = chern_coordinates(cp(3))
    assert v[(Partition([3]), (0,))] == 4
    assert v[(Partition([2]), (1,))] == 4
    assert v[(Partition([1, 1, 1]), (0,))] == 4
    assert v[(Partition([2, 1]), (0,))] == 12


def test_alternative_conventions_break_the_cp1_line():
    assert str(chern_coordinates(cp(1), "normal")) == "-2 t1 + w1"
    assert chern_coordinates(cp(1), "chern") == chern_coordinates(cp(1))
    assert chern_coordinates(cp(2), "chern") != chern_coordinates(cp(2))
    with pytest.raises(ValueError):
        chern_coordinates(cp(1), "bogus")


def test_torus_and_point():
    assert chern_coordinates(torus()) == ClassVector.w(1)
    assert chern_coordinates(point()) == 1
    assert torus().volume() == 1
    assert cp(3, 2).volume() == 8


def test_torus_exterior_signs():
    ring = CohomologyRing((), 2)
    a, b = ring.odd_generator(0), ring.odd_generator(1)
    assert a * b == -(b * a)
    assert (a * a).is_zero()


def test_classical_cp_forgets_the_form():
    for n in range(1, 5):
        assert chern_coordinates(classical_cp(n)) == cp_vector(n)
        assert chern_coordinates(cp(n)).classical_part() == cp_vector(n)


def test_cp_rejects_bad_arguments():
    with pytest.raises(ValueError):
        cp(-1)
    with pytest.raises(ValueError):
        cp(2, 0)
    with pytest.raises(ValueError):
        scale(cp(1), 0)


def test_product_labels_collect_powers():
    assert product_of([classical_cp(1)] * 2).label == "CP1^2"
    assert product(cp(2), torus()).label == "(CP2,w) X"
    assert scale(cp(2), 3).label == "(CP2,3w)"


def test_model_sum_combines_equal_models():
    s = ModelSum.of(cp(1)) + ModelSum.of(cp(1), 2) - ModelSum.of(torus())
    assert str(s) == "3 (CP1,w) - X"
    assert (s - s) == ModelSum()


_atoms = st.sampled_from([cp(1), cp(2), torus(), classical_cp(1), classical_cp(2), cp(1, 2)])


@settings(max_examples=40, deadline=None)
@given(_atoms, _atoms)
def test_coordinates_are_multiplicative(a, b):
    assert chern_coordinates(product(a, b)) == chern_coordinates(a) * chern_coordinates(b)


@settings(max_examples=30, deadline=None)
@given(_atoms, st.integers(1, 5))
def test_adams_scaling_acts_on_divided_powers(a, n):
    assert chern_coordinates(scale(a, n)) == chern_coordinates(a).scale_omega(n)


@settings(max_examples=20, deadline=None)
@given(_atoms, _atoms)
def test_coordinates_are_integral(a, b):
    assert chern_coordinates(product(a, b)).is_integral()
