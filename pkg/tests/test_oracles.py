import random
from fractions import Fraction

from cdimkit import oracles
from cdimkit.acceptance import brute_combinator_checks
from cdimkit.groebner import IdealBasis, buchberger, standard_monomials
from cdimkit.monomials import grevlex_key
from cdimkit.polys import MultiPoly


def engine_standard(gens, n, r):
    gb = buchberger(IdealBasis.of(gens))
    return sorted(standard_monomials(gb, r, arity=n), key=grevlex_key)


def test_macaulay_matches_buchberger_homogeneous():
    gens = [MultiPoly.parse("x0^2 + x1*x2 - x2^2"), MultiPoly.parse("x0*x1 - 2*x2^2")]
    for r in range(5):
        assert oracles.macaulay_standard_monomials([g.terms for g in gens], 3, r) == \
            engine_standard(gens, 3, r)


def test_macaulay_matches_buchberger_affine():
    rng = random.Random(5)
    for _ in range(4):
        gens = [MultiPoly(2, {(rng.randint(0, 2), rng.randint(0, 2)): rng.randint(-3, 3)
                              for _ in range(3)}) for _ in range(2)]
        gens = [g for g in gens if g and g.total_degree() > 0]
        if not gens:
            continue
        for r in range(3):
            want = engine_standard(gens, 2, r)
            assert oracles.macaulay_standard_monomials([g.terms for g in gens], 2, r, slack=4) == want


def test_cofactor_det():
    assert oracles.cofactor_det([]) == 1
    assert oracles.cofactor_det([[2, 1], [3, 4]]) == 5
    m = [[Fraction(1, 2), 0, 1], [0, 3, 0], [1, 0, 2]]
    assert oracles.cofactor_det(m) == 0


def test_fp_helpers():
    assert oracles.fp_trim((1, 0, 0)) == (1,)
    assert oracles.fp_mul((1, 1), (1, 4), 5) == (1, 0, 4)
    assert len(oracles.fp_elements(2, 5)) == 25
    # y = x^2 over F_5 with height < 2: y is determined iff x is constant or x^2 has height < 2
    F = MultiPoly.parse("x1 - x0^2")
    pts = oracles.fp_curve_points(F.terms, 2, 5)
    assert len(pts) == 5
    assert oracles.fp_max_fiber(pts, [{(1, 0): 1}], 1, 5) == 1
    # x -> x^2 is 2-to-1 on F_5^*
    assert oracles.fp_max_fiber(pts, [{(0, 1): 1}], 1, 5) == 2


def test_combinators_match_brute_force():
    assert brute_combinator_checks() == []
