"""Algebra constructors: SGA ladders, Casimir towers, Killing form,
structure constants, undeformed limits."""

import pytest

from bosonalg.realizations import (fuse_boson_quadratic, fuse_two_su2,
                                   js_su2_deformed, js_su11_deformed,
                                   killing_metric, structure_constants,
                                   su2_ops, tower_casimirs)
from bosonalg.scalars import GAMMA, W0, num, sym
from bosonalg.weyl import OperatorExpr, commutator


def test_su2_ladder_relations_symbolic():
    for p in (0, 1, 2):
        ops = su2_ops(2, (1, 2), GAMMA, W0, p)
        j0, jp, jm = ops["J0"], ops["Jp"], ops["Jm"]
        assert (commutator(j0, jp) - jp.scaled(W0)).is_zero()
        assert (commutator(j0, jm) + jm.scaled(W0)).is_zero()
        assert (commutator(jp, jm)
                - j0.scaled(num(2) * W0 ** (1 - 2 * p))).is_zero()


def test_su2_casimir_central():
    ops = su2_ops(2, (1, 2), GAMMA, W0, 1)
    cj = ops["CJ"]
    for lab in ("J0", "Jp", "Jm"):
        assert commutator(cj, ops[lab]).is_zero()


def test_su2_casimir_sign_forms_agree():
    ops = su2_ops(2, (1, 2), GAMMA, W0, 1)
    assert (ops["CJ"] - ops["CJm"]).is_zero()


def test_su11_ladder_relations_symbolic():
    inst = js_su11_deformed(1)
    env = inst.env()
    z0, zp, zm = env["Z0"], env["Zp"], env["Zm"]
    w = env["w0m"]
    assert (commutator(z0, zp) - zp.scaled(w)).is_zero()
    # the pair closes with the opposite sign to su(2)
    assert (commutator(zp, zm) + z0.scaled(num(2) / w)).is_zero()


def test_su11_corrected_casimir_central():
    inst = js_su11_deformed(1)
    env = inst.env()
    for lab in ("Z0", "Zp", "Zm"):
        assert commutator(env["CZ"], env[lab]).is_zero()


def test_undeformed_limit_recovers_j0():
    inst = js_su2_deformed(1)
    j0 = inst.generators["J0"]
    plain = (OperatorExpr.number(2, 1)
             - OperatorExpr.number(2, 2)).scaled(num(1) / 2)
    lim = j0.map_coefficients(
        lambda c: c.subs("g", 0).subs("w0", 1).subs("hc", 1).subs("hs", 0))
    assert (lim - plain).is_zero()


def test_tower_casimir_two_forms_identical():
    ops = su2_ops(2, (1, 2), GAMMA, W0, 1)
    from bosonalg.realizations import OpPoly
    phi = OpPoly(2, [OperatorExpr.zero(2),
                     OperatorExpr.one(2).scaled(num(2) * W0 ** -1)])
    cp, cm = tower_casimirs(ops["J0"], ops["Jp"], ops["Jm"], W0, phi)
    assert (cp - cm).is_zero()
    assert commutator(cp, ops["Jp"]).is_zero()


def test_structure_constants_antisymmetry():
    ops = su2_ops(2, (1, 2), GAMMA, W0, 1)
    trip = [ops["J0"], ops["Jp"], ops["Jm"]]
    c = structure_constants(trip)
    n = 3
    for k in range(n):
        for i in range(n):
            for j in range(n):
                assert (c[k][i][j] + c[k][j][i]).is_zero()


def test_killing_metric_values():
    ops = su2_ops(2, (1, 2), GAMMA, W0, 1)
    g = killing_metric([ops["J0"], ops["Jp"], ops["Jm"]])
    assert (g[0][0] - num(2) * W0 * W0).is_zero()
    assert (g[1][2] - num(4)).is_zero()  # p = 1: 4 w0^(-2p+2) = 4
    assert g[0][1].is_zero() and g[1][1].is_zero()


def test_killing_metric_p_dependence():
    for p in (0, 2):
        ops = su2_ops(2, (1, 2), GAMMA, W0, p)
        g = killing_metric([ops["J0"], ops["Jp"], ops["Jm"]])
        assert (g[1][2] - num(4) * W0 ** (2 - 2 * p)).is_zero()


def test_quadratic_tower_ladder():
    inst = fuse_boson_quadratic(1)
    env = inst.env()
    r0, rp = env["R0"], env["Rp"]
    assert (commutator(r0, rp) - rp.scaled(env["w1"])).is_zero()


def test_two_su2_omega_scalars():
    inst = fuse_two_su2(1, 1, 0, higgs=True)
    env = inst.env()
    assert env["OMm"].is_zero()
    assert (env["OMp"] - num(2) * W0 ** (1 - 2 * (1 + 1))).is_zero()


def test_higgs_h_ladder():
    inst = fuse_two_su2(1, 1, 0, higgs=True)
    env = inst.env()
    assert (commutator(env["H0"], env["Hp"]) - env["Hp"].scaled(W0)).is_zero()


def test_env_contains_i_and_scalars():
    inst = js_su2_deformed(1)
    env = inst.env()
    assert "i" in env and "w0" in env and "J0" in env


def test_relation_ids_unique_per_instance():
    for inst in (js_su2_deformed(1), js_su11_deformed(1),
                 fuse_boson_quadratic(1)):
        ids = [r.id for r in inst.relations]
        assert len(ids) == len(set(ids))
