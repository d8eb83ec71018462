"""Relation-text parser: grammar, precedence, evaluation, printing."""

from fractions import Fraction

import pytest

from bosonalg.exprparse import (Binary, EvalError, Name, ParseError,
                                Power, Unary, UnknownName, parse,
                                parse_and_eval, to_text)
from bosonalg.scalars import GAMMA, I, W0, num
from bosonalg.weyl import OperatorExpr, commutator


def env2():
    n = 2
    a1 = OperatorExpr.annihilator(n, 1)
    a2 = OperatorExpr.annihilator(n, 2)
    return {"i": I, "g": GAMMA, "w0": W0,
            "a1": a1, "a2": a2, "A1": a1.dagger(), "A2": a2.dagger(),
            "N1": OperatorExpr.number(n, 1)}


def test_precedence_mul_over_add():
    node = parse("a1 + a2 * a1")
    assert isinstance(node, Binary) and node.op == "add"


def test_power_parses_negative_int():
    v = parse_and_eval("w0^-2 * w0^2", {"w0": W0})
    assert (ScalarLike(v) - num(1)).is_zero()


def ScalarLike(v):
    from bosonalg.scalars import ScalarExpr
    return ScalarExpr.of(v)


def test_commutator_bracket():
    v = parse_and_eval("[a1, A1]", env2())
    assert (v - OperatorExpr.one(2)).is_zero()


def test_anticommutator_brace():
    e = env2()
    v = parse_and_eval("{a1, A1}", e)
    ref = e["a1"] * e["A1"] + e["A1"] * e["a1"]
    assert (v - ref).is_zero()


def test_dagger_postfix():
    e = env2()
    assert (parse_and_eval("a1'", e) - e["A1"]).is_zero()
    assert (parse_and_eval("(i*a1)'", e) + e["A1"].scaled(I)).is_zero()


def test_integer_division_is_exact():
    v = parse_and_eval("1/3 + 2/3", {})
    assert (ScalarLike(v) - num(1)).is_zero()


def test_unary_minus_binds_tighter_than_sub():
    v = parse_and_eval("-2 - -3", {})
    assert (ScalarLike(v) - num(1)).is_zero()


def test_nested_brackets():
    e = env2()
    v = parse_and_eval("[[N1, A1], a1]", e)
    ref = commutator(commutator(e["N1"], e["A1"]), e["a1"])
    assert (v - ref).is_zero()


def test_unknown_name():
    with pytest.raises(UnknownName):
        parse_and_eval("nope + 1", {})


def test_parse_error_position():
    with pytest.raises(ParseError) as e:
        parse("a1 + * a2")
    assert "column" in str(e.value) or "position" in str(e.value)


def test_unbalanced_bracket():
    with pytest.raises(ParseError):
        parse("[a1, a2")


def test_division_by_operator_rejected():
    with pytest.raises(EvalError):
        parse_and_eval("1 / a1", env2())


def test_to_text_round_trip():
    texts = [
        "[H0, Hp] - w0*Hp",
        "[Hp, Hm] - 4*s^2*(G1*H0 + G2*H0^3)",
        "{T1, T2} + 2*i*w0^-1*T3",
        "a1' * a2 - a2 * a1'",
        "(lam/8 - U)*w0*H0",
    ]
    for t in texts:
        node = parse(t)
        again = parse(to_text(node))
        assert to_text(again) == to_text(node)


def test_to_text_evaluates_identically():
    e = env2()
    t = "[N1, A1] - A1 + (1/2)*i*g*a2"
    v1 = parse_and_eval(t, e)
    v2 = parse_and_eval(to_text(parse(t)), e)
    assert (v1 - v2).is_zero()
