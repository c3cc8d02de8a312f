from fractions import Fraction

import pytest

from cdimkit.errors import ArityMismatch, ParseError
from cdimkit.polys import MultiPoly
from cdimkit.textfmt import format_scalar, parse_scalar, parse_terms

XY = ("x", "y")


def test_scalars():
    assert parse_scalar("-1/2") == Fraction(-1, 2)
    assert parse_scalar("0.25") == Fraction(1, 4)
    assert format_scalar(Fraction(6, 4)) == "3/2"
    with pytest.raises(ParseError):
        parse_scalar("1/0")
    with pytest.raises(ParseError):
        parse_scalar("abc")


def test_parse_terms_sums_repeats():
    terms = parse_terms("x*x + 2*x^2 - y", XY)
    assert terms == [(1, (2, 0)), (2, (2, 0)), (-1, (0, 1))]
    assert MultiPoly.parse("x*x + 2*x^2 - y", XY) == MultiPoly.parse("3*x^2 - y", XY)


@pytest.mark.parametrize("text,pos", [
    ("x + * y", 4),
    ("x^2 + y^", 8),
    ("x + z", 4),
    ("", 0),
    ("x y", 2),
    ("x^-1", 2),
])
def test_parse_error_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        MultiPoly.parse(text, XY)
    assert exc.value.position == pos


def test_round_trip():
    for text in ["y - x^2", "1/2*x*y + 3", "-x^3 + x*y^2 - 7/3", "0"]:
        P = MultiPoly.parse(text, XY)
        assert MultiPoly.parse(P.to_str(XY), XY) == P


def test_default_names_and_arity():
    P = MultiPoly.parse("x0*x2 - x1^2")
    assert P.arity == 3
    assert MultiPoly.parse("x0 + 1", arity=4).arity == 4
    with pytest.raises(ArityMismatch):
        MultiPoly.parse("x3", arity=2)


def test_arithmetic():
    x, y = MultiPoly.gens(2)
    assert (x + y) ** 2 == x * x + 2 * x * y + y * y
    assert (x - y) * (x + y) == x**2 - y**2
    assert not (x - x)
    assert (3 - x).evaluate((Fraction(1, 2), 0)) == Fraction(5, 2)
    assert (x**2 * y).derivative(0) == 2 * x * y
    assert (x**3 + x * y).total_degree() == 3
    assert (x * y + y * y).is_homogeneous()
    assert not (x + 1).is_homogeneous()


def test_arity_mismatch_in_arithmetic():
    with pytest.raises(ArityMismatch):
        MultiPoly.gens(2)[0] + MultiPoly.gens(3)[0]


def test_hash_consistent_with_equality():
    a = MultiPoly.parse("x + y", XY)
    b = MultiPoly.parse("y + x", XY)
    assert a == b and hash(a) == hash(b)
    assert len({a, b}) == 1
