import pytest

from monofilt import (
    DimensionLimitError,
    closure_powers_report,
    context,
    ideal,
    integral_closure_power,
    newton_polyhedron,
    noetherian_exponent,
    parse_ideal,
    powers_report,
    rees_cofinality_constant,
)

import oracles


@pytest.fixture
def kxy():
    return context("x", "y")


def test_polyhedron_two_pure_powers(kxy):
    poly = newton_polyhedron(parse_ideal("x^3, y^3", kxy))
    assert poly.vertices == ((0, 3), (3, 0))
    assert ((1, 1), 3) in poly.facets


def test_polyhedron_principal(kxy):
    poly = newton_polyhedron(parse_ideal("x", kxy))
    assert ((1, 0), 1) in poly.facets
    assert poly.contains_point((1, 5))
    assert not poly.contains_point((0, 9))


def test_polyhedron_skew_facet(kxy):
    poly = newton_polyhedron(parse_ideal("x^4, y^3", kxy))
    assert ((3, 4), 12) in poly.facets
    for v in ((4, 0), (0, 3)):
        assert sum(a * b for a, b in zip((3, 4), v)) == 12


def test_polyhedron_dimension_limit():
    ctx = context(*[f"t{i}" for i in range(7)])
    with pytest.raises(DimensionLimitError):
        newton_polyhedron(ideal(ctx, [ctx.variable(0)]))


def test_closure_examples(kxy):
    I = parse_ideal("x^3, y^3", kxy)
    m = parse_ideal("x, y", kxy)
    assert integral_closure_power(I, 1) == m**3
    assert integral_closure_power(m, 4) == m**4
    J = parse_ideal("x^2, x*y", kxy)
    assert integral_closure_power(J, 1) == J


def test_closure_contains_and_idempotent(kxy):
    for text in ("x^3, y^3", "x^2, x*y", "x^4, x*y, y^4"):
        I = parse_ideal(text, kxy)
        for n in (1, 2, 3):
            closed = integral_closure_power(I, n)
            assert closed.contains_ideal(I**n)
            assert integral_closure_power(closed, 1) == closed


def test_closure_submultiplicative(kxy):
    I = parse_ideal("x^4, y^3", kxy)
    for a in (1, 2):
        for b in (1, 2):
            prod = integral_closure_power(I, a) * integral_closure_power(I, b)
            assert integral_closure_power(I, a + b).contains_ideal(prod)


def test_dilation_on_vertices(kxy):
    I = parse_ideal("x^4, x*y, y^4", kxy)
    base = newton_polyhedron(I)
    for n in (2, 3):
        scaled = newton_polyhedron(I**n)
        assert scaled.vertices == tuple(
            sorted(tuple(n * v for v in vert) for vert in base.vertices)
        )


def test_valuation_witness_roundtrip(kxy):
    I = parse_ideal("x^3, y^3", kxy)
    closed = integral_closure_power(I, 1)
    for u in closed.generators:
        k = oracles.closure_witness(I.generators, 1, u)
        assert k is not None
        scaled = tuple(k * v for v in u)
        assert (I**k).contains(scaled)
    assert oracles.closure_witness(I.generators, 1, (2, 0)) is None


def test_noetherian_exponent(kxy):
    assert noetherian_exponent(parse_ideal("x^3, y^3", kxy), 4, 8).exponent == 1
    assert noetherian_exponent(parse_ideal("x, y", kxy), 2, 4).exponent == 1
    result = noetherian_exponent(parse_ideal("x^4, y^3", kxy), 3, 5)
    assert result.exponent is not None
    closed = integral_closure_power(parse_ideal("x^4, y^3", kxy), result.exponent)
    for n in range(1, 6):
        assert closed**n == integral_closure_power(parse_ideal("x^4, y^3", kxy), result.exponent * n)


def test_rees_constant(kxy):
    m = parse_ideal("x, y", kxy)
    assert rees_cofinality_constant(m**3, 8) == 0
    assert rees_cofinality_constant(parse_ideal("x^3, y^3", kxy), 12) == 1
    assert rees_cofinality_constant(parse_ideal("x^4, x*y, y^4", kxy), 12) <= 6


def test_closure_report_pure_cube(kxy):
    I = parse_ideal("x^3, y^3", kxy)
    rep = closure_powers_report(I, 6)
    assert [p.support for p in rep.primes_union] == [(0, 1)]
    assert not any(r.fallback for r in rep.records)


def test_closure_report_matches_powers_when_closed(kxy):
    I = parse_ideal("x", kxy)
    a = closure_powers_report(I, 5).to_document()
    b = powers_report(I, 5, "theorem").to_document()
    assert a == b


def test_closure_report_comparison(kxy):
    I = parse_ideal("x^2, x*y", kxy)
    closure_union = {p.support for p in closure_powers_report(I, 6).primes_union}
    powers_union = {p.support for p in powers_report(I, 6, "theorem").primes_union}
    assert closure_union == powers_union == {(0,), (0, 1)}
