import random
from fractions import Fraction

import pytest

from cdimkit.errors import BudgetExceeded, NotGroebner, NotHomogeneous, NonPolynomialRange, ZeroHilbert
from cdimkit.groebner import (
    IdealBasis,
    a_estimate,
    block_order,
    buchberger,
    dimension_after_elimination,
    eliminate_linear,
    hilbert_fn,
    hilbert_poly_check,
    hilbert_series_principal,
    homogenize,
    ideal_contains,
    is_groebner_basis,
    leading_term,
    reduce_poly,
    s_polynomial,
    standard_monomials,
    variety_dimension,
)
from cdimkit.monomials import count_atmost, count_exact
from cdimkit.polys import MultiPoly

XY = ("x", "y")


def P(text, names=XY):
    return MultiPoly.parse(text, names)


def test_leading_terms():
    assert leading_term(P("x^2 + x*y")) == ((1, 1), 1)
    assert leading_term(MultiPoly.constant(2, 5)) == ((0, 0), 5)
    assert leading_term(MultiPoly.parse("x0*x2 + x1^2"))[0] == (0, 2, 0)


def test_s_polynomials():
    assert not s_polynomial(P("x^2"), P("x*y"))
    p, q = P("x^2 - y"), P("x*y - 1")
    assert s_polynomial(p, q) in (P("-y^2 + x"), P("y^2 - x"))
    assert not s_polynomial(p, p)


def test_buchberger_example():
    gb = buchberger(IdealBasis.of([P("x^2 - y"), P("x*y - 1")]))
    assert set(gb.generators) == {P("x^2 - y"), P("x*y - 1"), P("y^2 - x")}
    assert sorted(gb.leading_exponents()) == [(0, 2), (1, 1), (2, 0)]
    assert is_groebner_basis(gb.generators)


def test_buchberger_trivial_cases():
    gb = buchberger(IdealBasis.of([P("2*x^2 + 4*y")]))
    assert gb.generators == (P("x^2 + 2*y"),)
    gb = buchberger(IdealBasis.of([P("x"), P("y")]))
    assert set(gb.generators) == {P("x"), P("y")}


def test_unit_ideal():
    gb = buchberger(IdealBasis.of([P("x*y - 1"), P("x")]))
    assert gb.is_unit()
    assert variety_dimension(gb) == -1


def test_canonical_under_shuffles():
    gens = [P("x^3 - y"), P("x*y^2 - x"), P("y^3 - x^2*y")]
    ref = buchberger(IdealBasis.of(gens)).generators
    rng = random.Random(3)
    for _ in range(5):
        rng.shuffle(gens)
        assert buchberger(IdealBasis.of(list(gens))).generators == ref


def test_membership():
    gb = buchberger(IdealBasis.of([P("x^2 - y"), P("x*y - 1")]))
    assert ideal_contains(gb, P("y^2 - x") * P("x + 3"))
    assert not ideal_contains(gb, P("x + y"))
    assert not reduce_poly(P("x^3 - 1"), gb)


def test_budget():
    gens = [P("x^3 - 2*x*y"), P("x^2*y - 2*y^2 + x")]
    with pytest.raises(BudgetExceeded):
        buchberger(IdealBasis.of(gens), budget=1)


def test_standard_monomials_examples():
    gb = buchberger(IdealBasis.of([MultiPoly.parse("x2^2")]))
    mons = list(standard_monomials(gb, 2))
    assert len(mons) == 5 and all(a[2] <= 1 for a in mons)
    unit = buchberger(IdealBasis.of([MultiPoly.constant(3, 1)]))
    assert len(standard_monomials(unit, 3)) == 0


def test_zero_ideal_standard_monomials():
    gb = buchberger(IdealBasis.of([]))
    for r in range(5):
        assert len(standard_monomials(gb, r, arity=3)) == count_exact(3, r)


def test_requires_groebner_basis():
    with pytest.raises(NotGroebner):
        standard_monomials(IdealBasis.of([P("x^2 - y")]), 2)


def test_hilbert_closed_forms():
    gb = buchberger(IdealBasis.of([MultiPoly.parse("x2^2")]))
    for r in range(1, 10):
        rec = hilbert_fn(gb, r)
        assert rec.H == 2 * r + 1
        assert rec.sigma == (r * r, r * r, r)
        assert rec.identity_holds()
        ratios = [a_estimate(gb, i, r) for i in range(3)]
        assert ratios == [Fraction(r, 2 * r + 1)] * 2 + [Fraction(1, 2 * r + 1)]
        assert sum(ratios) == 1


def test_hilbert_zero_ideal():
    gb = buchberger(IdealBasis.of([]))
    rec = hilbert_fn(gb, 1, arity=3)
    assert (rec.H, rec.sigma) == (3, (1, 1, 1))
    assert [a_estimate(gb, i, 4, arity=3) for i in range(3)] == [Fraction(1, 3)] * 3


def test_hilbert_conic():
    F = MultiPoly.parse("x0^2 + x1*x2 - x2^2")
    gb = buchberger(IdealBasis.of([F]))
    assert hilbert_fn(gb, 3).H == count_atmost(2, 3) - count_atmost(2, 1) == 7
    for r in range(13):
        assert hilbert_fn(gb, r).H == hilbert_series_principal(2, r)
    rep = hilbert_poly_check(gb, 1, 8)
    assert rep.leading_coefficient == 2 and rep.constant == 1 and rep.degree_matches
    assert sum(a_estimate(gb, i, 10) for i in range(3)) == 1


def test_hilbert_poly_line_and_cubic():
    line = buchberger(IdealBasis.of([MultiPoly.parse("x0 - x1 + 2*x2")]))
    rep = hilbert_poly_check(line, 0, 6)
    assert (rep.leading_coefficient, rep.constant) == (1, 1)
    cubic = buchberger(IdealBasis.of([MultiPoly.parse("x0^3 + x1^2*x2 - x2^3")]))
    rep = hilbert_poly_check(cubic, 1, 8)
    assert (rep.leading_coefficient, rep.constant) == (3, 0)
    with pytest.raises(NonPolynomialRange):
        hilbert_poly_check(cubic, 0, 4)


def test_hilbert_errors():
    gb = buchberger(IdealBasis.of([P("x^2 - y")]))
    with pytest.raises(NotHomogeneous):
        hilbert_fn(gb, 2)
    unit = buchberger(IdealBasis.of([MultiPoly.constant(3, 1)]))
    with pytest.raises(ZeroHilbert):
        a_estimate(unit, 0, 2)


def test_variety_dimension_examples():
    assert variety_dimension(IdealBasis.of([P("x^2 - y")])) == 1
    assert variety_dimension(IdealBasis.of([P("x"), P("y")])) == 0
    assert variety_dimension(IdealBasis.of([MultiPoly.constant(2, 1)])) == -1


def test_homogenize():
    F = P("y - x^2")
    H = homogenize(F)
    assert H == MultiPoly.parse("x0*x2 - x1^2")
    assert H.is_homogeneous()


def test_block_order_eliminates():
    # in the block order x is eliminated first: the basis contains y^3 - 1
    gens = [P("x - y^2"), P("x*y - 1")]
    gb = buchberger(IdealBasis.of(gens, block_order(1)))
    assert P("y^3 - 1") in gb.generators


def test_linear_elimination():
    gens = [MultiPoly.parse("x1 - x0^2", arity=3), MultiPoly.parse("x2 - x0*x1", arity=3)]
    rest, gone = eliminate_linear(gens)
    assert rest == []
    assert dict(gone) == {1: MultiPoly.parse("x0^2", arity=3), 2: MultiPoly.parse("x0^3", arity=3)}
    assert dimension_after_elimination(gens, 3) == 1
    # agrees with the plain computation
    assert variety_dimension(IdealBasis.of(gens)) == 1
