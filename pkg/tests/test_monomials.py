import itertools
from fractions import Fraction

import pytest

from cdimkit.errors import ArityMismatch, InvalidArity
from cdimkit.monomials import (
    ExponentSet,
    count_atmost,
    count_exact,
    dm_parameters,
    enumerate_grevlex,
    first_d_below,
    grevlex_cmp,
    sort_grevlex,
    ve_ratio_table,
    ve_table_csv,
)


def brute(m, k, exact):
    return [a for a in itertools.product(range(k + 1), repeat=m) if (sum(a) == k if exact else sum(a) <= k)]


def test_counts():
    assert all(count_exact(1, k) == 1 for k in range(10))
    assert count_exact(2, 3) == 4
    assert count_exact(3, 2) == len(brute(3, 2, True)) == 6
    assert count_atmost(2, 2) == 6
    assert all(count_atmost(1, k) == k + 1 for k in range(10))
    assert count_atmost(3, 3) == len(brute(3, 3, False)) == 20
    assert count_atmost(2, -1) == 0


def test_count_errors():
    with pytest.raises(InvalidArity):
        count_exact(0, 2)


def test_atmost_is_cumulative():
    for m in range(1, 5):
        for k in range(8):
            assert count_atmost(m, k) == sum(count_exact(m, j) for j in range(k + 1))


def test_dm_parameters_examples():
    p = dm_parameters(2, 1, 2)
    assert (p.mu, p.r, p.V, p.e) == (6, 6, 8, 15)
    p = dm_parameters(2, 1, 1)
    assert (p.mu, p.r, p.V, p.e) == (3, 3, 2, 3)
    p = dm_parameters(2, 1, 10)
    assert (p.mu, p.V, p.e) == (66, 440, 2145)


def test_dm_parameters_bracketing():
    for n in range(2, 5):
        for m in range(1, n):
            for d in range(1, 8):
                p = dm_parameters(n, m, d)
                assert count_atmost(m, p.r - 1) <= p.mu < count_atmost(m, p.r)


def test_dm_parameters_needs_m_below_n():
    with pytest.raises(InvalidArity):
        dm_parameters(2, 2, 1)


def test_enumerate_small():
    # (1,0) precedes (0,1) under the order used throughout
    assert list(enumerate_grevlex(2, 1)) == [(0, 0), (1, 0), (0, 1)]
    assert list(enumerate_grevlex(1, 3)) == [(0,), (1,), (2,), (3,)]


@pytest.mark.parametrize("m,k", [(m, k) for m in range(1, 5) for k in range(0, 9, 2)])
def test_enumerate_cardinality_and_order(m, k):
    ex = enumerate_grevlex(m, k, "exact")
    assert len(ex) == count_exact(m, k)
    at = enumerate_grevlex(m, k)
    assert len(at) == count_atmost(m, k)
    assert all(grevlex_cmp(a, b) == -1 for a, b in zip(at, at[1:]))


def test_grevlex_cmp_examples():
    assert grevlex_cmp((1, 0), (0, 1)) == -1
    assert grevlex_cmp((0, 2), (1, 0)) == 1
    assert grevlex_cmp((1, 1), (1, 1)) == 0
    with pytest.raises(ArityMismatch):
        grevlex_cmp((1,), (1, 0))


def test_grevlex_is_a_total_order_on_delta3():
    D = list(enumerate_grevlex(3, 3))
    for a, b in itertools.product(D, D):
        assert grevlex_cmp(a, b) == -grevlex_cmp(b, a)
    for a, b, c in itertools.product(D[:12], D[:12], D[:12]):
        if grevlex_cmp(a, b) < 0 and grevlex_cmp(b, c) < 0:
            assert grevlex_cmp(a, c) < 0


def test_sort_grevlex_matches_enumeration():
    D = list(enumerate_grevlex(3, 2))
    assert sort_grevlex(reversed(D)) == D


def test_exponent_set_totals():
    E = ExponentSet.from_iterable(2, [(1, 0), (0, 1), (1, 0), (2, 3)])
    assert len(E) == 3
    assert E.totals() == (3, 4)
    with pytest.raises(ArityMismatch):
        ExponentSet(2, [(1, 2, 3)])


def test_ratio_table():
    rows = ve_ratio_table(2, 1, 30)
    assert rows[1][3] == Fraction(8, 15)
    assert rows[3][3] == Fraction(40, 105)
    ratios = [r[3] for r in rows]
    assert all(b < a for a, b in zip(ratios, ratios[1:]))
    assert all(dm_parameters(2, 1, d).e == dm_parameters(2, 1, d).mu * (dm_parameters(2, 1, d).mu - 1) // 2
               for d in range(1, 31))


def test_first_d_below_recorded_values():
    # independent closed form: V = d(d+1)(d+2)/3, e = mu(mu-1)/2, mu = (d+1)(d+2)/2
    assert first_d_below(2, 1, Fraction(1, 2)) == 3
    assert first_d_below(2, 1, Fraction(1, 5)) == 11
    assert first_d_below(2, 1, Fraction(1, 10)) == 24


def test_csv_output():
    text = ve_table_csv(ve_ratio_table(2, 1, 2))
    assert text.splitlines() == ["d,V,e,ratio_num,ratio_den", "1,2,3,2,3", "2,8,15,8,15"]
