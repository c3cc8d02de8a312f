import random
from fractions import Fraction

import pytest

from cdimkit.curves import CurveSpec
from cdimkit.detmethod import (
    ExpMap,
    PolyMap,
    bezout_bound,
    build_matrix,
    certify_bounds,
    compose,
    degree_budget,
    det_fraction_free,
    determinant,
    graph_function,
    has_kernel,
    kernel_hypersurface,
    matrix_rank,
    power_substitution,
    resultant_y,
    sample_fiber,
    standard_exponents,
    tr_check,
    verify_vanishing,
)
from cdimkit.errors import (
    EmptyInput,
    FullRank,
    NegativeValuation,
    NotSquare,
    UnsupportedMap,
    ZeroScale,
)
from cdimkit.monomials import dm_parameters, enumerate_grevlex
from cdimkit.oracles import cofactor_det
from cdimkit.polys import MultiPoly
from cdimkit.series import ORD_INF, T, LaurentPoly, ord_t

XY = ("x", "y")
PARABOLA = graph_function(CurveSpec.algebraic("y - x^2"))


def test_build_matrix_examples():
    M = build_matrix([(1, 1)], enumerate_grevlex(2, 1))
    assert M.entries == ((1, 1, 1),)
    M = build_matrix([(T, T**2)], [(1, 1)])
    assert M.entries[0][0] == T**3


def test_parabola_columns_coincide():
    pts = [(x, x * x) for x in (T, 1 + T, 2 * T, T**2, 3 - T, T + T**2)]
    M = build_matrix(pts, enumerate_grevlex(2, 2))
    cols = list(M.exponents)
    i, j = cols.index((2, 0)), cols.index((0, 1))
    assert all(r[i] == r[j] for r in M.entries)
    assert matrix_rank(M.rows()) < 6
    assert not det_fraction_free(M).det


def test_build_matrix_errors():
    with pytest.raises(NegativeValuation):
        build_matrix([(LaurentPoly.parse("t^-1"), 1)], [(1, 0)])
    with pytest.raises(EmptyInput):
        build_matrix([], [(1, 0)])


def test_small_determinants():
    assert not determinant([[T, 1], [T**2, T]])
    rep = det_fraction_free(build_matrix([(1,), (2,)], [(0,), (1,)]))
    assert rep.det == 1 and rep.ord == 0 and rep.deg == 0
    with pytest.raises(NotSquare):
        det_fraction_free(build_matrix([(1, 1)], enumerate_grevlex(2, 1)))


def test_bareiss_matches_cofactor():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randint(1, 4)
        rows = [[LaurentPoly.from_coeffs([rng.randint(-2, 2) for _ in range(3)]) for _ in range(n)]
                for _ in range(n)]
        assert determinant(rows) == cofactor_det(rows)


def test_zero_det_report():
    rep = det_fraction_free(build_matrix([(T,), (T,)], [(0,), (1,)]))
    assert rep.ord == ORD_INF


def test_certify_forced_zero_example():
    pts = [(x, x * x) for x in (T, 1 + T, 2 * T, T**2, 3 - T, T + T**2)]
    rep = det_fraction_free(build_matrix(pts, enumerate_grevlex(2, 2)))
    v = certify_bounds(rep, 1, 15, degree_budget=8)
    assert v.verdict == "forced_zero"


def test_certify_consistent():
    # three points in one ball mod t: Vandermonde of ord 3 = rho*e
    pts = [(x, x * x) for x in (T, 2 * T, 3 * T)]
    M = build_matrix(pts, enumerate_grevlex(2, 1))
    rep = det_fraction_free(M, 1, 3, s=3)
    assert rep.ord == 3 and rep.lower_bound_ok and rep.upper_bound == 4
    assert certify_bounds(rep, 1, 3, degree_budget=degree_budget(pts, M.exponents)).verdict == "consistent"


def test_certify_violation_for_points_in_distinct_balls():
    # 0, 1, 2 are pairwise far apart: ord det = 0 < rho*e
    pts = [(LaurentPoly.constant(c), LaurentPoly.constant(c * c)) for c in (0, 1, 2)]
    rep = det_fraction_free(build_matrix(pts, enumerate_grevlex(2, 1)))
    v = certify_bounds(rep, 1, 3, s=1)
    assert v.verdict == "violation" and not v.lower_bound_ok


def test_kernel_on_parabola():
    pts = [(x, x * x) for x in (T, 1 + T, 2 * T, T**2, 3 - T, T + T**2)]
    H = kernel_hypersurface(build_matrix(pts, enumerate_grevlex(2, 2)))
    assert set(H.support()) == {(0, 1), (2, 0)}
    assert H.constant_coefficients() == MultiPoly.parse("y - x^2", XY)
    assert verify_vanishing(H, pts)


def test_kernel_collinear():
    pts = [(k * T, 2 * k * T + 1) for k in (1, 2, 3)]
    H = kernel_hypersurface(build_matrix(pts, enumerate_grevlex(2, 1)))
    assert H.constant_coefficients() == MultiPoly.parse("1 + 2*x - y", XY)


def test_kernel_single_point():
    x0 = 2 + T
    H = kernel_hypersurface(build_matrix([(x0,)], [(0,), (1,)]))
    assert verify_vanishing(H, [(x0,)])
    # proportional to x - x0
    ratio = H.coeffs[1] * (-x0)
    assert ratio == H.coeffs[0]


def test_kernel_full_rank():
    with pytest.raises(FullRank):
        kernel_hypersurface(build_matrix([(1,), (2,)], [(0,), (1,)]))


def test_kernel_is_content_free():
    pts = [(x, x * x) for x in (T, T**2, T**3)]
    H = kernel_hypersurface(build_matrix(pts, enumerate_grevlex(2, 2)))
    assert verify_vanishing(H, pts)
    assert any(c and c.ord() == 0 for c in H.coeffs)


def test_verify_vanishing_examples():
    H = kernel_hypersurface(build_matrix([(x, x * x) for x in (T, 2 * T, 3 * T, 5 * T)], [(2, 0), (0, 1)]))
    assert verify_vanishing(H, [(T, T**2)])
    assert not verify_vanishing(H, [(T, T**3)])


def test_enlarging_exponents_keeps_dependence():
    pts = [(x, x * x) for x in (T, 1 + T, 2 * T, 3 * T)]
    small = build_matrix(pts, [(0, 0), (1, 0), (0, 1), (2, 0)])
    big = build_matrix(pts, enumerate_grevlex(2, 2))
    assert has_kernel(small) and has_kernel(big)


def test_bezout():
    assert bezout_bound(3, 2) == 6
    assert bezout_bound(5, 4) == 20
    F = MultiPoly.parse("y - x^2", XY)
    G = MultiPoly.parse("x^2 + y^2 - 3*x*y + y - 1", XY)
    R = resultant_y(F, G)
    assert 0 < R.degree() <= bezout_bound(2, 2)


def test_standard_exponents_size():
    F = MultiPoly.parse("y - x^2", XY)
    # degree-3 standard monomials of a conic: H(3) = 7
    assert len(standard_exponents(F, 3)) == 7


def test_tr_check_polynomial_exact():
    rep = tr_check(PolyMap([0, 0, 1]), [(1 + T, 1), (T, T**2)], 3)
    assert rep.passed and rep.worst_margin == ORD_INF


def test_tr_check_exp():
    rep = tr_check(ExpMap(12), [(T + T**2, T), (2 * T + T**2, 2 * T)], 2)
    assert rep.passed and rep.worst_margin == 0


def test_tr_check_weakened_taylor_fails():
    rep = tr_check(PolyMap([0, 0, 1]), [(1 + T, 1)], 3, taylor_order=1)
    assert not rep.passed and rep.worst_margin == -1


def test_tr_check_rejects_non_maps():
    with pytest.raises(UnsupportedMap):
        tr_check(lambda x: x, [(T, 0)], 2)


def test_power_substitution_examples():
    assert power_substitution(1, 0, 0, 0, 2).value(1 + T) == (1 + T) ** 2
    assert power_substitution(1, 1, 0, 0, 3).value(LaurentPoly.constant(1)) == T
    with pytest.raises(ZeroScale):
        power_substitution(0, 0, 0, 0, 2)


def test_composed_power_substitution_passes():
    p = power_substitution(Fraction(1, 2), 1, 1, 3, 2)
    f = compose(PolyMap([0, 1]), p)
    assert tr_check(f, [(2 + T, 2), (5 + T**2, 5)], 2).passed
    g = compose(ExpMap(14), power_substitution(1, 1, 0, 0, 2))
    rep = tr_check(g, [(1 + T, 1), (2 + T**2, 2)], 3)
    assert rep.passed


def test_sampling_respects_fibre():
    rng = random.Random(4)
    for rho in (1, 2, 3):
        center, pts = sample_fiber(PARABOLA, 6, rho, rng, u_degree=1)
        for x, y in pts:
            assert ord_t(x - center) >= rho
            assert y == x * x


def test_lower_bound_on_random_fibres():
    rng = random.Random(9)
    for d in (1, 2):
        p = dm_parameters(2, 1, d)
        for rho in (1, 2):
            _, pts = sample_fiber(PARABOLA, p.mu, rho, rng, u_degree=1)
            rep = det_fraction_free(build_matrix(pts, enumerate_grevlex(2, d)), rho, p.e)
            assert rep.lower_bound_ok


def test_graph_function_rejects_non_graphs():
    with pytest.raises(UnsupportedMap):
        graph_function(CurveSpec.algebraic("x^2 + y^2 - 1"))
