"""Coefficient sequences and the expression language."""
from fractions import Fraction

import pytest

from scfact.errors import ExpressionTypeError, ParseError
from scfact.expr import evaluate, parse_expression, to_text
from scfact.rings import IntegerRing, RationalField, RealField
from scfact.sequences import Constant, Formula, Periodic, seq_from_json


def test_periodic_wraps():
    Q = RationalField()
    a = Periodic([Q(-1), Q(-1), Q(2)], offset=1)
    assert [a.at(n) for n in (1, 2, 3, 4)] == [Q(-1), Q(-1), Q(2), Q(-1)]


def test_periodic_default_offset_starts_at_zero():
    Q = RationalField()
    assert Periodic([Q(-1), Q(-1), Q(2)]).at(3) == Q(-1)


def test_constant():
    Q = RationalField()
    assert Constant(Q(1)).at(97) == Q(1)


def test_formula_over_reals():
    R = RealField()
    assert Formula("2*cos(2*pi*n/3)", R).at(3).payload == pytest.approx(2.0)


def test_integer_formula():
    Z = IntegerRing()
    assert evaluate(parse_expression("2*n", Z), Z, 5) == Z(10)


def test_rational_formula():
    Q = RationalField()
    assert Formula("1/n", Q).at(4) == Q(Fraction(1, 4))


def test_unclosed_call_reports_offset():
    with pytest.raises(ParseError) as exc:
        parse_expression("cos(n")
    assert exc.value.offset == 5


def test_transcendental_rejected_in_exact_ring():
    with pytest.raises(ExpressionTypeError):
        parse_expression("cos(n)", RationalField())


@pytest.mark.parametrize("text", ["1 - (n - 2)", "2^n^2", "-n^2", "(1+n)/(2*n)", "2*cos(2*pi*n/3)"])
def test_print_parse_round_trip(text):
    ast = parse_expression(text)
    assert parse_expression(to_text(ast)) == ast


def test_seq_from_json_kinds():
    Q = RationalField()
    assert seq_from_json(3, Q).at(5) == Q(3)
    assert seq_from_json({"kind": "periodic", "values": [1, 2]}, Q).at(3) == Q(2)
    assert seq_from_json({"kind": "table", "values": [1, 2], "tail": 7}, Q).at(9) == Q(7)
    assert seq_from_json("n/2", Q).at(3) == Q(Fraction(3, 2))
