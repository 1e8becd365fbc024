from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cobordism.expr import (Atom, ExprSyntaxError, Num, Power, Product, Sum, evaluate,
                            format_expr, parse_class, parse_expr)
from cobordism.models import ModelSum, chern_coordinates, classical_cp, cp, cp_vector, point, torus


def test_decomposition_example_parses_to_expected_tree():
    tree = parse_expr("CP(2,2) - 3*CP(1)*X - 2*X*X")
    assert tree == Sum((
        (1, Atom("quantum", 2, 2)),
        (-1, Product((Num(Fraction(3)), Atom("quantum", 1), Atom("torus")))),
        (-1, Product((Num(Fraction(2)), Atom("torus"), Atom("torus")))),
    ))


def test_classical_right_side_evaluates_to_cp2():
    assert chern_coordinates(parse_class("CP(2,2) - 3*CP1*X - 2*X*X")) == cp_vector(2)
    assert chern_coordinates(parse_class("(CP2,2w) - 3 CP1 X - 2 X^2")) == cp_vector(2)


def test_atoms():
    assert parse_class("pt") == ModelSum.of(point())
    assert parse_class("X") == ModelSum.of(torus())
    assert parse_class("CP(3)") == ModelSum.of(cp(3))
    assert parse_class("(CP3,w)") == ModelSum.of(cp(3))
    assert parse_class("CP2") == ModelSum.of(classical_cp(2))
    assert parse_class(" CP ( 2 , 5 ) ") == ModelSum.of(cp(2, 5))


def test_rational_scalars_and_powers():
    assert chern_coordinates(parse_class("3/2 CP(1) - 1/2 CP(1)")) == chern_coordinates(cp(1))
    assert parse_class("X^0") == ModelSum.of(point())
    assert chern_coordinates(parse_class("(CP(1) + X)^2")) == \
        chern_coordinates(cp(1)) ** 2 + chern_coordinates(cp(1)) * chern_coordinates(torus()) * 2 \
        + chern_coordinates(torus()) ** 2


@pytest.mark.parametrize("text, position", [
    ("CP(1,0)", 5),
    ("Y", 0),
    ("CP(2", 4),
    ("CP(1,2,3)", 6),
    ("X +", 3),
    ("3/0 X", 2),
    ("X $ X", 2),
    ("(CP2,2v)", 6),
    ("CP()", 3),
    ("", 0),
])
def test_syntax_errors_report_positions(text, position):
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr(text)
    assert info.value.position == position


def test_error_caret_points_at_offender():
    with pytest.raises(ExprSyntaxError) as info:
        parse_expr("CP(1) * Q")
    assert info.value.caret().splitlines()[1] == " " * 8 + "^"


@pytest.mark.parametrize("text", [
    "(CP2,2w) - 3 CP1 X - 2 X^2",
    "(CP3,6w) - (4 CP2 - 6 CP1^2) X - 36 CP1 X^2 - 36 X^3",
    "-X + 3/2 CP1",
    "pt",
    "(CP1,w)^3",
    "2^3 (X + pt)",
])
def test_canonical_forms_print_back_unchanged(text):
    assert format_expr(parse_expr(text)) == text


_atom = st.one_of(
    st.builds(lambda n, k: Atom("quantum", n, k), st.integers(0, 4), st.integers(1, 3)),
    st.builds(lambda n: Atom("classical", n), st.integers(0, 4)),
    st.just(Atom("torus")),
    st.just(Atom("point")),
)
_num = st.builds(Num, st.fractions(min_value=0, max_value=20, max_denominator=5))


def _extend(children):
    factor = st.one_of(_atom, _num, st.builds(Power, _atom, st.integers(0, 3)),
                       children.filter(lambda c: isinstance(c, Sum)))
    product = st.builds(lambda fs: Product(tuple(fs)), st.lists(factor, min_size=2, max_size=3))
    term = st.one_of(_atom, _num, product)
    signs = st.sampled_from([1, -1])
    total = st.builds(lambda ts: Sum(tuple(ts)),
                      st.lists(st.tuples(signs, term), min_size=2, max_size=3))
    return st.one_of(product, total)


_trees = st.recursive(st.one_of(_atom, _num), _extend, max_leaves=8)


@settings(max_examples=150, deadline=None)
@given(_trees)
def test_print_parse_round_trip(tree):
    text = format_expr(tree)
    assert parse_expr(text) == tree
    assert format_expr(parse_expr(text)) == text


@settings(max_examples=40, deadline=None)
@given(_trees)
def test_juxtaposition_and_star_agree(tree):
    text = format_expr(tree)
    starred = text.replace(") (", ")*(")
    assert chern_coordinates(evaluate(parse_expr(starred))) == chern_coordinates(evaluate(tree))
