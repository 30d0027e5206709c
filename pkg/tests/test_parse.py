from fractions import Fraction

import pytest

from dualhs.field import QQ
from dualhs.parse import ParseError, parse_poly
from dualhs.poly import Poly, RingSignature

SIG = RingSignature(("x", "y"), QQ)


def test_quadric_parses_to_three_terms():
    f = parse_poly("x^2 + x*y + y^2", SIG)
    assert len(f.terms) == 3
    assert f.leading_term() == (Fraction(1), (2, 0))


def test_zero_literal():
    assert parse_poly("0", SIG).is_zero


def test_algebraic_identity():
    f = parse_poly("(x+y)^2 - x^2 - 2*x*y", SIG)
    assert f == parse_poly("y^2", SIG)


def test_unary_minus():
    assert parse_poly("-y", SIG) == parse_poly("0 - y", SIG)
    assert parse_poly("-(x + y)", SIG) == parse_poly("x + y", SIG).neg()


def test_rational_literal():
    f = parse_poly("1/2*x + 3/4", SIG)
    assert f.constant_coeff() == Fraction(3, 4)
    assert f.leading_coeff() == Fraction(1, 2)


def test_power_binds_tighter_than_mul():
    assert parse_poly("2*x^3", SIG) == Poly.monomial(SIG, (3, 0), Fraction(2))


def test_unknown_variable_reports_position():
    with pytest.raises(ParseError) as err:
        parse_poly("x + w", SIG)
    assert err.value.pos == 4


def test_syntax_error_reports_position():
    with pytest.raises(ParseError) as err:
        parse_poly("x + * y", SIG)
    assert err.value.pos == 4


def test_trailing_garbage_rejected():
    with pytest.raises(ParseError):
        parse_poly("x + y )", SIG)


def test_no_juxtaposition():
    with pytest.raises(ParseError):
        parse_poly("2 x", SIG)


def test_zero_denominator_rejected():
    with pytest.raises(ParseError):
        parse_poly("1/0", SIG)
