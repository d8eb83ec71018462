"""Truncated Fock sectors, matrix representations, and the eigensolve
oracle."""

import numpy as np
import pytest

from bosonalg.fock import (InfiniteSector, MarginViolation, MatrixRep,
                           apply_operator, boundary_safe_compare,
                           build_box_sector, build_charge_sector,
                           oracle_eigensolve, represent, represent_exact)
from bosonalg.scalars import GAMMA, I, num, standard_bindings
from bosonalg.weyl import OperatorExpr

BIND = standard_bindings(0.6)


def test_box_sector_shape():
    s = build_box_sector(2, 3)
    assert s.dim == 16
    assert s.basis[0] == (0, 0)
    assert s.basis[-1] == (3, 3)


def test_charge_sector_enumeration():
    # a1'a1 + a2'a2 = m slices out the degree-m polynomial space
    s = build_charge_sector([(1, 1)], [4], 2)
    assert s.dim == 5
    assert all(sum(st) == 4 for st in s.basis)


def test_infinite_charge_sector_rejected():
    with pytest.raises(InfiniteSector):
        build_charge_sector([(1, -1)], [0], 2)


def test_number_operator_is_diagonal():
    s = build_charge_sector([(1, 1)], [3], 2)
    n1 = OperatorExpr.number(2, 1)
    m = represent(n1, s, BIND).matrix
    assert np.allclose(m, np.diag([st[0] for st in s.basis]))


def test_fock_vs_bargmann_similar():
    """The two weight schemes are similar matrices: same spectrum."""
    s = build_charge_sector([(1, 1)], [3], 2)
    op = OperatorExpr.creator(2, 1) * OperatorExpr.annihilator(2, 2)
    f = represent(op, s, BIND, scheme="fock").matrix
    b = represent(op, s, BIND, scheme="bargmann").matrix
    assert np.allclose(sorted(np.linalg.eigvals(f).real),
                       sorted(np.linalg.eigvals(b).real))


def test_represent_exact_integer_weights():
    s = build_charge_sector([(1, 1)], [2], 2)
    op = OperatorExpr.number(2, 2).scaled(num(3))
    rep = represent_exact(op, s, BIND)
    m = rep.to_numpy()
    assert np.allclose(m, np.diag([3 * st[1] for st in s.basis]))


def test_apply_operator_matches_represent():
    s = build_charge_sector([(1, 1)], [3], 2)
    op = OperatorExpr.creator(2, 1) * OperatorExpr.annihilator(2, 2) \
        + OperatorExpr.number(2, 1).scaled(I * GAMMA)
    m = represent(op, s, BIND).matrix
    for j, st in enumerate(s.basis):
        vec = apply_operator(op, {st: 1.0}, BIND)
        col = np.zeros(s.dim, dtype=complex)
        for tgt, amp in vec.items():
            col[s.basis.index(tgt)] = amp
        assert np.allclose(col, m[:, j])


def test_boundary_safe_compare_ccr():
    s = build_box_sector(1, 8, margin=2)
    a = OperatorExpr.annihilator(1, 1)
    ad = OperatorExpr.creator(1, 1)
    lhs = a * ad
    rhs = ad * a + OperatorExpr.one(1)
    assert boundary_safe_compare(lhs, rhs, s, BIND) < 1e-12


def test_margin_violation_raises():
    s = build_box_sector(1, 4, margin=1)
    ad = OperatorExpr.creator(1, 1)
    with pytest.raises(MarginViolation):
        boundary_safe_compare(ad * ad, ad * ad, s, BIND)


def test_oracle_eigensolve_residuals():
    s = build_charge_sector([(1, 1)], [5], 2)
    op = OperatorExpr.number(2, 1) - OperatorExpr.number(2, 2) \
        + (OperatorExpr.creator(2, 1)
           * OperatorExpr.annihilator(2, 2)).scaled(I * GAMMA)
    rep = represent(op, s, BIND)
    vals, vecs = oracle_eigensolve(rep)
    m = rep.to_numpy()
    for v, w in zip(vals, vecs.T):
        assert np.linalg.norm(m @ w - v * w) <= 1e-9 * max(
            1.0, np.linalg.norm(m))


def test_oracle_eigensolve_real_spectrum_here():
    # the deformed J0 on a charge sector is non-Hermitian yet real-spectral
    s = build_charge_sector([(1, 1)], [4], 2)
    j0 = (OperatorExpr.number(2, 1) - OperatorExpr.number(2, 2)).scaled(
        num(1) / 2) + (OperatorExpr.creator(2, 1)
                       * OperatorExpr.annihilator(2, 2)
                       + OperatorExpr.creator(2, 2)
                       * OperatorExpr.annihilator(2, 1)).scaled(I * GAMMA / 2)
    vals, _ = oracle_eigensolve(represent(j0, s, BIND))
    assert max(abs(v.imag) for v in vals) < 1e-9
