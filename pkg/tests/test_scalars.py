"""Exact coefficient ring: Gaussian rationals, rewrite rules, and the
fraction-of-polynomials layer."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bosonalg.scalars import (GAMMA, I, MU, W0, W0M, GR, ScalarError,
                              ScalarExpr, num, rational_bindings,
                              standard_bindings, sym)


def test_gr_field_ops():
    a = GR(Fraction(1, 3), Fraction(2, 3))
    b = GR(Fraction(2, 5), Fraction(-1, 5))
    assert (a * b) / b == a
    assert a + (-a) == GR(0, 0)
    assert a.conj().conj() == a


def test_num_accepts_fractions_and_ints():
    assert (num(Fraction(1, 3)) * num(3) - num(1)).is_zero()
    assert (num(2) - num(2)).is_zero()


def test_rewrite_g_squared():
    # g^2 + w0^2 == 1 identically in the quotient ring
    expr = GAMMA * GAMMA + W0 * W0
    assert (expr - num(1)).is_zero()


def test_rewrite_mu_squared():
    assert (MU * MU + W0M * W0M - num(1)).is_zero()


def test_half_angle_chain():
    hc, hs = sym("hc"), sym("hs")
    assert (hc * hc - (num(1) + W0) / 2).is_zero()
    assert (hs * hs - (num(1) - W0) / 2).is_zero()
    assert (hc * hs - GAMMA / 2).is_zero()


def test_i_squared():
    assert (I * I + num(1)).is_zero()


def test_fraction_cancellation():
    x = sym("lam")
    e = (x * x - num(1)) / (x - num(1))
    assert (e - (x + num(1))).is_zero()


def test_division_by_zero_raises():
    with pytest.raises(ScalarError):
        num(1) / (GAMMA - GAMMA)


def test_subs_and_subs_square():
    s, lam0 = sym("s"), sym("lam0")
    e = s * s * lam0
    assert (e.subs_square("s", -lam0) + lam0 * lam0).is_zero()
    assert (e.subs("lam0", 2) - s * s * 2).is_zero()


def test_conjugate_flips_i_only():
    e = I * GAMMA + W0
    assert (e.conjugate() - (W0 - I * GAMMA)).is_zero()


def test_eval_matches_eval_exact():
    e = (GAMMA * W0 + I) / (num(2) + W0)
    b = rational_bindings(Fraction(3, 5), Fraction(4, 5))
    ex = e.eval_exact(b)
    fl = e.eval(standard_bindings(0.6))
    assert abs(complex(ex) - fl) < 1e-12


def test_standard_bindings_validates_gamma():
    with pytest.raises(ScalarError):
        standard_bindings(1.0)
    with pytest.raises(ScalarError):
        standard_bindings(-1.5)
    b = standard_bindings(0.6)
    assert math.isclose(b["w0"], 0.8)
    assert math.isclose(b["hc"] * b["hs"], 0.3)


small = st.integers(min_value=-4, max_value=4)


@st.composite
def scalar_exprs(draw):
    base = [num(draw(small)), GAMMA, W0, I * num(draw(small))]
    e = base[draw(st.integers(0, 3))]
    for _ in range(draw(st.integers(0, 3))):
        op = draw(st.integers(0, 2))
        o = base[draw(st.integers(0, 3))]
        e = e + o if op == 0 else e - o if op == 1 else e * o
    return e


@settings(max_examples=60, deadline=None)
@given(scalar_exprs(), scalar_exprs(), scalar_exprs())
def test_ring_axioms(a, b, c):
    assert ((a + b) * c - (a * c + b * c)).is_zero()
    assert (a * (b * c) - (a * b) * c).is_zero()
    assert (a + b - (b + a)).is_zero()


@settings(max_examples=60, deadline=None)
@given(scalar_exprs())
def test_eval_is_a_homomorphism(e):
    b = standard_bindings(0.3)
    v = complex(e.eval(b))
    w = complex((e * e).eval(b))
    assert abs(v * v - w) < 1e-9 * max(1.0, abs(w))
