import pytest

from monofilt import (
    IdealSyntaxError,
    InfiniteLengthError,
    context,
    ideal,
    parse_ideal,
    parse_problem,
    unit_ideal,
    zero_ideal,
)
from monofilt.ring import grlex_key, minimal_generators

import oracles


@pytest.fixture
def kxy():
    return context("x", "y")


def test_parse_basic(kxy):
    I = parse_ideal("x^2*y, y^3", kxy)
    assert I.generators == ((2, 1), (0, 3))


def test_parse_prunes_divisible(kxy):
    assert parse_ideal("x, x^2", kxy) == ideal(kxy, [(1, 0)])


def test_parse_unknown_variable(kxy):
    with pytest.raises(IdealSyntaxError) as err:
        parse_ideal("x^2*z, zzz", kxy)
    assert "z" in str(err.value)
    assert err.value.position == 4


def test_parse_negative_exponent(kxy):
    with pytest.raises(IdealSyntaxError, match="negative"):
        parse_ideal("x^-2", kxy)


def test_parse_repeated_variable_accumulates(kxy):
    assert parse_ideal("x*x*y", kxy).generators == ((2, 1),)


def test_parse_problem_full_form():
    ctx, I = parse_problem("vars: x,y ; ideal: x^2*y, y^3")
    assert ctx.variable_names == ("x", "y")
    assert I.generator_strings() == ["x^2*y", "y^3"]


def test_parse_problem_duplicate_vars():
    with pytest.raises(IdealSyntaxError, match="duplicate"):
        parse_problem("vars: x,x ; ideal: x")


def test_grlex_order():
    # degree first, then earlier variables dominate: 1 < x < y < x^2 < x*y < y^2
    ordering = sorted([(0, 2), (1, 1), (2, 0), (1, 0), (0, 1), (0, 0)], key=grlex_key)
    assert ordering == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_minimalize_examples(kxy):
    assert minimal_generators(kxy, [(2, 0), (3, 0), (0, 1)]) == ((0, 1), (2, 0))
    assert minimal_generators(kxy, []) == ()
    assert minimal_generators(kxy, [(0, 0), (1, 0)]) == ((0, 0),)


def test_sum_product_power(kxy):
    m = parse_ideal("x, y", kxy)
    assert (m**2).generator_strings() == ["x^2", "x*y", "y^2"]
    I = parse_ideal("x^2, x*y", kxy)
    assert (I**2).generator_strings() == ["x^4", "x^3*y", "x^2*y^2"]
    assert I * (I**0) == I
    assert I**0 == unit_ideal(kxy)


def test_power_matches_oracle(kxy):
    I = parse_ideal("x^2, x*y", kxy)
    bounds = tuple(2 * b for b in I.box())
    assert oracles.agrees(I**2, oracles.power_predicate(I, 2), bounds)


def test_intersect_examples(kxy):
    x, y = parse_ideal("x", kxy), parse_ideal("y", kxy)
    assert x.intersect(y) == parse_ideal("x*y", kxy)
    A = parse_ideal("x^2, y", kxy)
    B = parse_ideal("x", kxy)
    got = A.intersect(B)
    assert got == parse_ideal("x^2, x*y", kxy)
    assert oracles.agrees(got, oracles.intersect_predicate(A, B), oracles.merge_bounds(A.box(), B.box()))
    assert A.intersect(unit_ideal(kxy)) == A


def test_colon_examples(kxy):
    A = parse_ideal("x^2, x*y", kxy)
    assert A.colon((1, 0)) == parse_ideal("x, y", kxy)
    assert A.colon(parse_ideal("x, y", kxy)) == parse_ideal("x", kxy)
    assert A.colon((0, 0)) == A
    assert oracles.agrees(A.colon((1, 0)), oracles.colon_monomial_predicate(A, (1, 0)), A.box())


def test_saturation_examples(kxy):
    m = parse_ideal("x, y", kxy)
    assert parse_ideal("x^2, x*y", kxy).saturation(m) == parse_ideal("x", kxy)
    assert parse_ideal("x", kxy).saturation(m) == parse_ideal("x", kxy)
    assert parse_ideal("x^2*y^3", kxy).saturation(parse_ideal("y", kxy)) == parse_ideal("x^2", kxy)
    with pytest.raises(ValueError):
        parse_ideal("x", kxy).saturation(zero_ideal(kxy))


def test_radical_examples(kxy):
    assert parse_ideal("x^2, y^3", kxy).radical() == parse_ideal("x, y", kxy)
    assert parse_ideal("x^2*y", kxy).radical() == parse_ideal("x*y", kxy)
    assert zero_ideal(kxy).radical() == zero_ideal(kxy)


def test_contains_and_equality(kxy):
    A = parse_ideal("x^2, x*y", kxy)
    assert A.contains((3, 1))
    assert not A.contains((1, 0))
    m = parse_ideal("x, y", kxy)
    assert m**2 == parse_ideal("x^2, x*y, y^2", kxy)


def test_colength(kxy):
    assert (parse_ideal("x, y", kxy) ** 2).colength() == 3
    assert parse_ideal("x^2, y^3", kxy).colength() == 6
    with pytest.raises(InfiniteLengthError, match="'y'"):
        parse_ideal("x", kxy).colength()


def test_degenerate_representations(kxy):
    assert zero_ideal(kxy).is_zero()
    assert unit_ideal(kxy).is_unit()
    assert zero_ideal(kxy) * parse_ideal("x", kxy) == zero_ideal(kxy)
    assert unit_ideal(kxy) * parse_ideal("x", kxy) == parse_ideal("x", kxy)
    assert zero_ideal(kxy) ** 0 == unit_ideal(kxy)


def test_values_are_immutable_and_hashable(kxy):
    A = parse_ideal("x^2, x*y", kxy)
    assert hash(A) == hash(parse_ideal("x*y, x^2", kxy))
    with pytest.raises(AttributeError):
        A.generators = ()
