"""Constructors for the deformed su(2)/su(1,1) operator hierarchy.

Everything here is built twice over, in a sense: 2x2 matrix generators from
the biorthogonal system, and their boson bilinear (Jordan-Schwinger) images
as OperatorExprs.  Each constructor returns an AlgebraInstance bundling the
generators with the relations asserted about them; the verifier executes
those relations, it does not trust them.

Mode layout conventions: su(2) copies act on consecutive mode pairs
((1,2) for J, (3,4) for K or Z); fusion bosons are appended (a3, a4).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .scalars import (GAMMA, I, MU, ONE, W0, W0M, ZERO, ScalarExpr, num,
                      omega_chain, sym)
from .weyl import OperatorExpr, anticommutator, commutator

HALF = num(Fraction(1, 2))


class RealizationError(Exception):
    pass


# ---------------------------------------------------------------------------
# 2x2 matrices over the scalar ring


def mat(rows):
    return [[ScalarExpr.of(x) for x in row] for row in rows]


def mat_mul(a, b):
    return [[sum((a[i][k] * b[k][j] for k in range(2)), ZERO)
             for j in range(2)] for i in range(2)]


def mat_add(a, b):
    return [[a[i][j] + b[i][j] for j in range(2)] for i in range(2)]


def mat_sub(a, b):
    return [[a[i][j] - b[i][j] for j in range(2)] for i in range(2)]


def mat_scale(a, c):
    c = ScalarExpr.of(c)
    return [[a[i][j] * c for j in range(2)] for i in range(2)]


def mat_trace(a):
    return a[0][0] + a[1][1]


def mat_dagger(a):
    return [[a[j][i].conjugate() for j in range(2)] for i in range(2)]


def mat_commutator(a, b):
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def vec_dot(bra, ket):
    """<bra|ket> with conjugation on the bra."""
    return sum((b.conjugate() * k for b, k in zip(bra, ket)), ZERO)


def outer(v, w):
    """|v><w| as a 2x2 matrix."""
    return [[v[i] * w[j].conjugate() for j in range(2)] for i in range(2)]


@dataclass(frozen=True)
class MatrixGenerator:
    label: str
    m: list

    def trace(self):
        return mat_trace(self.m)

    def is_hermitian(self):
        return mat_is_zero(mat_sub(self.m, mat_dagger(self.m)))


# c-matrices of the dyadic expansion: c1 diagonal, c3 symmetric off-diagonal,
# c2 antisymmetric off-diagonal.
C1_MAT = mat([[-1, 0], [0, 1]])
C2_MAT = mat([[0, -1], [1, 0]])
C3_MAT = mat([[0, 1], [1, 0]])

RT2 = sym("rt2")
HC = sym("hc")
HS = sym("hs")


def pauli_standard():
    """Half-Pauli generators [s1,s2] = i s3 etc., built from the dyads of
    the orthonormal pair u_j = (1, (-1)^(j-1))/sqrt(2)."""
    u = [[ONE / RT2, ONE / RT2], [ONE / RT2, -(ONE / RT2)]]
    cs = {1: C1_MAT, 2: C2_MAT, 3: C3_MAT}
    out = []
    for m in (1, 2, 3):
        acc = mat([[0, 0], [0, 0]])
        for j in range(2):
            for k in range(2):
                if not cs[m][j][k].is_zero():
                    acc = mat_add(acc, mat_scale(outer(u[j], u[k]),
                                                 cs[m][j][k]))
        acc = mat_scale(acc, (I ** (m + 1)) * HALF)
        out.append(MatrixGenerator(f"s{m}", acc))
    return out, u


@dataclass(frozen=True)
class BiorthogonalSystem:
    t: list        # the Riesz transform T (phi = pi branch)
    u: list        # orthonormal pair
    chi: list      # chi_j = T u_j
    phi: list      # phi_j = w0 (T^-1)+ u_j

    def gram(self):
        return [[vec_dot(self.phi[j], self.chi[k]) for k in range(2)]
                for j in range(2)]


def biorthogonal_system() -> BiorthogonalSystem:
    _, u = pauli_standard()
    t = mat([[HC, I * HS], [-(I * HS), HC]])
    # w0 (T^-1)+ = hc 1 + hs sigma_y  (T is hermitian with det w0)
    minv = mat([[HC, -(I * HS)], [I * HS, HC]])
    chi = [[t[0][0] * u[j][0] + t[0][1] * u[j][1],
            t[1][0] * u[j][0] + t[1][1] * u[j][1]] for j in range(2)]
    phi = [[minv[0][0] * u[j][0] + minv[0][1] * u[j][1],
            minv[1][0] * u[j][0] + minv[1][1] * u[j][1]] for j in range(2)]
    return BiorthogonalSystem(t, u, chi, phi)


def pauli_deformed():
    """Deformed generators from the biorthogonal dyads, plus the system."""
    sys_ = biorthogonal_system()
    cs = {1: C1_MAT, 2: C2_MAT, 3: C3_MAT}
    out = []
    for m in (1, 2, 3):
        acc = mat([[0, 0], [0, 0]])
        for j in range(2):
            for k in range(2):
                if not cs[m][j][k].is_zero():
                    acc = mat_add(acc, mat_scale(outer(sys_.phi[j],
                                                       sys_.chi[k]),
                                                 cs[m][j][k]))
        scale = (I ** (m + 1)) * HALF
        if m == 2:
            scale = scale / W0
        acc = mat_scale(acc, scale)
        out.append(MatrixGenerator(f"sg{m}", acc))
    return out, sys_


# ---------------------------------------------------------------------------
# Relation bundles


@dataclass(frozen=True)
class RelationSpec:
    """One asserted identity.

    kind "zero": `text` parses to an operator that should vanish.
    kind "pt":   pt_transform(generators[label], mode) == generators[label].
    `subs` / `subs_square` are coefficient substitutions applied to the
    residual before the zero test (used where the source fixes a scalar,
    e.g. s^2 = -lam0 w0^r).  `expect` records what the source claims;
    the verifier reports what actually holds.
    """
    id: str
    anchor: str
    kind: str = "zero"
    text: str = ""
    label: str = ""
    mode: int | None = None   # None = global PT
    expect: str = "zero"      # "zero" | "nonzero"
    subs: tuple = ()          # ((name, ScalarExpr), ...)
    subs_square: tuple = ()


@dataclass
class AlgebraInstance:
    name: str
    n_modes: int
    generators: dict
    scalars: dict
    relations: list
    casimirs: list = field(default_factory=list)  # (casimir label, [gen labels])
    casimir_pairs: list = field(default_factory=list)  # (label+, label-)
    params: dict = field(default_factory=dict)

    def env(self) -> dict:
        e = {"i": I}
        e.update(self.scalars)
        e.update(self.generators)
        return e

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "n_modes": self.n_modes,
            "params": self.params,
            "generators": {k: v.canonical_text()
                           for k, v in sorted(self.generators.items())},
            "scalars": {k: str(v) for k, v in sorted(self.scalars.items())},
            "relations": [{"id": r.id, "anchor": r.anchor, "kind": r.kind,
                           "text": r.text, "label": r.label, "mode": r.mode,
                           "expect": r.expect}
                          for r in self.relations],
            "casimirs": [list(c) if isinstance(c, tuple) else c
                         for c in self.casimirs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# Bilinear families


def bilinear(matrix, n_modes, modes) -> OperatorExpr:
    """sum_jk M[j][k] a+_modes[j] a_modes[k]."""
    out = OperatorExpr.zero(n_modes)
    for j in range(2):
        for k in range(2):
            if not matrix[j][k].is_zero():
                t = OperatorExpr.creator(n_modes, modes[j]) \
                    * OperatorExpr.annihilator(n_modes, modes[k])
                out = out + t.scaled(matrix[j][k])
    return out


def su2_ops(n_modes, modes, gam, om, p):
    """Deformed su(2) J-family on a mode pair.

    J1 = (c3 + i gam c1)/2, J2 = i c2 / 2, J0 = -(c1 - i gam c3)/2 as
    bilinear matrices; ladder J± = om^-p J1 ± i om^(1-p) J2; Casimir in
    both sign forms.
    """
    m1 = mat_scale(mat_add(C3_MAT, mat_scale(C1_MAT, I * gam)), HALF)
    m2 = mat_scale(C2_MAT, I * HALF)
    m0 = mat_scale(mat_sub(mat_scale(C3_MAT, I * gam), C1_MAT), HALF)
    j1 = bilinear(m1, n_modes, modes)
    j2 = bilinear(m2, n_modes, modes)
    j0 = bilinear(m0, n_modes, modes)
    jp = j1.scaled(om ** (-p)) + j2.scaled(I * om ** (-p + 1))
    jm = j1.scaled(om ** (-p)) - j2.scaled(I * om ** (-p + 1))
    cj_p = (j0 * (j0 + om)).scaled(om ** -2) + (jm * jp).scaled(om ** (2 * p - 2))
    cj_m = (j0 * (j0 - om)).scaled(om ** -2) + (jp * jm).scaled(om ** (2 * p - 2))
    return {"J0": j0, "J1": j1, "J2": j2, "Jp": jp, "Jm": jm,
            "CJ": cj_p, "CJm": cj_m}


def su11_ops(n_modes, modes, mu_, omm, q):
    """Deformed su(1,1) Z-family: Z_m = W# tau_m W with W = (b1, b2+).

    The printed Casimir Z±Z∓ - Z0(Z0±w) is kept for the record; the form
    actually central (and the one the fusion formulas need) mirrors the
    su(2) normalization: w^(2q-2) Z±Z∓ - w^-2 Z0(Z0∓w).
    """
    m1, m2 = modes
    n1 = OperatorExpr.number(n_modes, m1)
    n2 = OperatorExpr.number(n_modes, m2)
    up = OperatorExpr.creator(n_modes, m1) * OperatorExpr.creator(n_modes, m2)
    dn = OperatorExpr.annihilator(n_modes, m1) * OperatorExpr.annihilator(n_modes, m2)
    z0 = (n1 + n2 + 1 + (up - dn).scaled(I * mu_)) * HALF
    z1 = ((n1 + n2 + 1).scaled(mu_) + (up - dn).scaled(I)) * HALF
    z2 = (up + dn) * HALF
    zp = z1.scaled(omm ** (-q)) + z2.scaled(I * omm ** (-q + 1))
    zm = z1.scaled(omm ** (-q)) - z2.scaled(I * omm ** (-q + 1))
    cz_p = (zp * zm).scaled(omm ** (2 * q - 2)) - (z0 * (z0 - omm)).scaled(omm ** -2)
    cz_m = (zm * zp).scaled(omm ** (2 * q - 2)) - (z0 * (z0 + omm)).scaled(omm ** -2)
    czprint_p = zp * zm - z0 * (z0 + omm)
    czprint_m = zm * zp - z0 * (z0 - omm)
    return {"Z0": z0, "Z1": z1, "Z2": z2, "Zp": zp, "Zm": zm,
            "CZ": cz_p, "CZm": cz_m,
            "CZprint": czprint_p, "CZprintm": czprint_m}


# ---------------------------------------------------------------------------
# Ladder towers
#
# Every family above the base pair has the shape [X0, X±] = ±w X± with
# [X+, X-] = Phi(X0), where the coefficients of Phi are invariants of the
# tower (they commute with X0 and are conjugation-invariant under X±).
# For such a tower the exact Casimir is
#
#     C = X- X+ + f(X0),   f(x + w) - f(x) = Phi(x + w),
#
# and the difference equation has a unique polynomial solution with
# f(0) = 0 once Phi is collected in X0 with invariant coefficients.
# OpPoly does the collecting; tower_casimir solves the triangular system.


class OpPoly:
    """Polynomial in the tower weight with OperatorExpr coefficients.

    Coefficients must commute with each other and with the weight (they
    are built from tower invariants), so the arithmetic is commutative.
    """

    __slots__ = ("n_modes", "coeffs")

    def __init__(self, n_modes, coeffs):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.n_modes = n_modes
        self.coeffs = cs

    @classmethod
    def const(cls, op) -> "OpPoly":
        return cls(op.n_modes, [op])

    @classmethod
    def variable(cls, n_modes) -> "OpPoly":
        return cls(n_modes, [OperatorExpr.zero(n_modes),
                             OperatorExpr.one(n_modes)])

    def _coerce(self, o):
        if isinstance(o, OpPoly):
            return o
        if isinstance(o, OperatorExpr):
            return OpPoly.const(o)
        return OpPoly.const(OperatorExpr.one(self.n_modes).scaled(o))

    def __add__(self, o):
        o = self._coerce(o)
        n = max(len(self.coeffs), len(o.coeffs))
        z = OperatorExpr.zero(self.n_modes)
        a = self.coeffs + [z] * (n - len(self.coeffs))
        b = o.coeffs + [z] * (n - len(o.coeffs))
        return OpPoly(self.n_modes, [x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return OpPoly(self.n_modes, [-c for c in self.coeffs])

    def __sub__(self, o):
        return self + (-self._coerce(o))

    def __mul__(self, o):
        o = self._coerce(o)
        if not self.coeffs or not o.coeffs:
            return OpPoly(self.n_modes, [])
        z = OperatorExpr.zero(self.n_modes)
        out = [z] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(o.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return OpPoly(self.n_modes, out)

    def __pow__(self, k: int):
        out = OpPoly.const(OperatorExpr.one(self.n_modes))
        for _ in range(k):
            out = out * self
        return out

    def scaled(self, c) -> "OpPoly":
        return OpPoly(self.n_modes, [op.scaled(c) for op in self.coeffs])

    def compose(self, inner: "OpPoly") -> "OpPoly":
        out = OpPoly(self.n_modes, [])
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                out = out + (inner ** k) * OpPoly.const(c)
        return out

    def evaluate(self, xop: OperatorExpr) -> OperatorExpr:
        out = OperatorExpr.zero(self.n_modes)
        pw = OperatorExpr.one(self.n_modes)
        for k, c in enumerate(self.coeffs):
            if not c.is_zero():
                out = out + c * pw
            if k + 1 < len(self.coeffs):
                pw = pw * xop
        return out

    def degree(self) -> int:
        return len(self.coeffs) - 1


def discrete_antiderivative(phi: OpPoly, w) -> OpPoly:
    """The polynomial f with f(x + w) - f(x) = phi(x + w), f(0) = 0.

    Matching the coefficient of x^m on both sides gives the triangular
    system  sum_{j>m} a_j C(j,m) w^(j-m) = sum_{k>=m} b_k C(k,m) w^(k-m),
    solved from the top degree down.
    """
    w = ScalarExpr.of(w)
    b = phi.coeffs
    n = phi.degree()
    z = OperatorExpr.zero(phi.n_modes)
    a = [z] * (n + 2)
    for m in range(n, -1, -1):
        rhs = z
        for k in range(m, n + 1):
            rhs = rhs + b[k].scaled(num(comb(k, m)) * w ** (k - m))
        for j in range(m + 2, n + 2):
            rhs = rhs - a[j].scaled(num(comb(j, m)) * w ** (j - m))
        a[m + 1] = rhs.scaled(ONE / (num(m + 1) * w))
    return OpPoly(phi.n_modes, a)


def tower_casimirs(x0: OperatorExpr, xp: OperatorExpr, xm: OperatorExpr,
                   w, phi: OpPoly) -> tuple:
    """Both sign forms of the exact tower Casimir; they agree identically
    because f - phi solves the mirrored difference equation."""
    f = discrete_antiderivative(phi, w)
    c_plus = xm * xp + f.evaluate(x0)
    c_minus = xp * xm + (f - phi).evaluate(x0)
    return c_plus, c_minus


# ---------------------------------------------------------------------------
# Instances


def js_su2_deformed(p: int = 1, gam=GAMMA, om=W0) -> AlgebraInstance:
    ops = su2_ops(2, (1, 2), gam, om, p)
    rel = [
        RelationSpec("eq7.ladder.plus", "deformed SGA, raising",
                     text="[J0, Jp] - w0*Jp"),
        RelationSpec("eq7.ladder.minus", "deformed SGA, lowering",
                     text="[J0, Jm] + w0*Jm"),
        RelationSpec("eq7.pair", "deformed SGA, ladder pair",
                     text=f"[Jp, Jm] - 2*w0^{1 - 2 * p}*J0"),
        RelationSpec("eq7.casimir.plus", "Casimir centrality vs J+",
                     text="[CJ, Jp]"),
        RelationSpec("eq7.casimir.minus", "Casimir centrality vs J-",
                     text="[CJ, Jm]"),
        RelationSpec("pt.J0.mode1", "partial PT of J0, mode 1",
                     kind="pt", label="J0", mode=1),
        RelationSpec("pt.J0.mode2", "partial PT of J0, mode 2",
                     kind="pt", label="J0", mode=2),
    ]
    return AlgebraInstance(
        "su2-gamma", 2, ops,
        {"w0": om, "g": gam},
        rel,
        casimirs=[("CJ", ["J0", "Jp", "Jm"])],
        casimir_pairs=[("CJ", "CJm")],
        params={"p": p, "gamma": "sym" if gam is GAMMA else str(gam)},
    )


def js_su11_deformed(q: int = 1, mu_=MU, omm=W0M) -> AlgebraInstance:
    ops = su11_ops(2, (1, 2), mu_, omm, q)
    rel = [
        RelationSpec("eq9.ladder.plus", "su(1,1) SGA, raising",
                     text="[Z0, Zp] - w0m*Zp"),
        RelationSpec("eq9.ladder.minus", "su(1,1) SGA, lowering",
                     text="[Z0, Zm] + w0m*Zm"),
        RelationSpec("eq9.pair", "su(1,1) SGA, ladder pair",
                     text=f"[Zp, Zm] + 2*w0m^{1 - 2 * q}*Z0"),
        RelationSpec("eq9.casimir.plus", "centrality of normalized Casimir",
                     text="[CZ, Zp]"),
        RelationSpec("eq9.casimir.minus", "centrality of normalized Casimir",
                     text="[CZ, Zm]"),
        RelationSpec("eq9.casimir.printed", "printed Casimir vs Z+",
                     text="[CZprint, Zp]", expect="nonzero"),
        RelationSpec("pt.Z0.mode1", "partial PT of Z0, mode 1",
                     kind="pt", label="Z0", mode=1),
        RelationSpec("pt.Z0.mode2", "partial PT of Z0, mode 2",
                     kind="pt", label="Z0", mode=2),
    ]
    return AlgebraInstance(
        "su11-mu", 2, ops,
        {"mu": mu_, "w0m": omm},
        rel,
        casimirs=[("CZ", ["Z0", "Zp", "Zm"])],
        casimir_pairs=[("CZ", "CZm")],
        params={"q": q, "mu": "sym" if mu_ is MU else str(mu_)},
    )


def _quadratic_ops(n_modes: int, p: int):
    j = su2_ops(n_modes, (1, 2), GAMMA, W0, p)
    s0 = sym("s0")
    w1 = omega_chain(W0, 1)
    m0 = OperatorExpr.number(n_modes, 3)
    r0 = (j["J0"] - m0) * HALF
    l0 = (j["J0"] + m0) * HALF
    rp = (j["Jp"] * OperatorExpr.annihilator(n_modes, 3)).scaled(s0)
    rm = (j["Jm"] * OperatorExpr.creator(n_modes, 3)).scaled(s0)
    a1 = -(ONE + num(2) * W0) * W0 ** (-2 * p)

    # Collect P2 in R0 with coefficients invariant under R± conjugation.
    # L0 itself is not such an invariant ([L0, R+] = ((w0-1)/2) R+); the
    # combination T = L0 - kappa R0 with kappa = (w1-1)/w1 is.
    kappa = (w1 - ONE) / w1
    t_inv = l0 - r0.scaled(kappa)
    x_ = OpPoly.variable(n_modes)
    l0_x = OpPoly.const(t_inv) + x_.scaled(kappa)
    wp_ = W0 ** (-2 * p)
    b1_x = -(l0_x.scaled(num(2)) - W0).scaled(wp_)
    c1_x = ((l0_x * l0_x).scaled(num(2) * W0 - ONE) + l0_x.scaled(W0)
            + OpPoly.const(j["CJ"].scaled(W0 ** 2))).scaled(wp_)
    p2_x = (x_ * x_).scaled(a1) + b1_x * x_ + c1_x
    b1 = b1_x.evaluate(r0)
    c1 = c1_x.evaluate(r0)
    p2 = p2_x.evaluate(r0)
    cr_p, cr_m = tower_casimirs(r0, rp, rm, w1, p2_x.scaled(s0 ** 2))

    # The printed Casimir interpolant: a cubic in R0 whose coefficients take
    # L0 at face value (frozen, although L0 shifts under R±) and carry a
    # bare C1 in the linear term where the difference equation needs 6 C1.
    # The 6 C1 reading (weight 6 below) is what the cubic-level coefficients
    # downstream are actually consistent with.
    def g3_frozen(c1_weight):
        return (r0 ** 3).scaled(a1 / (num(3) * w1 ** 2)) \
            + (b1 + a1 * w1).scaled(ONE / (num(2) * w1 ** 2)) * (r0 * r0) \
            + (b1.scaled(num(3) * w1) + a1 * w1 ** 2 + c1 * c1_weight) \
            .scaled(ONE / (num(6) * w1 ** 2)) * r0 \
            + c1.scaled(ONE / (num(2) * w1))

    cr_printed = rm * rp + g3_frozen(1).scaled(s0 ** 2 * w1)
    cr_frozen = rm * rp + g3_frozen(6).scaled(s0 ** 2 * w1)
    ops = dict(j)
    ops.update({"R0": r0, "Rp": rp, "Rm": rm, "L0": l0, "T": t_inv,
                "B1": b1, "C1": c1, "P2": p2, "CR": cr_p, "CRm": cr_m,
                "CRprint": cr_printed, "CR6": cr_frozen})
    return ops, {"s0": s0, "w1": w1, "A1": a1, "kap": kappa}, p2_x


def fuse_boson_quadratic(p: int = 1) -> AlgebraInstance:
    ops, scal, _ = _quadratic_ops(3, p)
    scal.update({"w0": W0, "g": GAMMA})
    rel = [
        RelationSpec("eq14.ladder.plus", "quadratic fusion, raising",
                     text="[R0, Rp] - w1*Rp"),
        RelationSpec("eq14.ladder.minus", "quadratic fusion, lowering",
                     text="[R0, Rm] + w1*Rm"),
        RelationSpec("eq14.pair", "quadratic fusion, ladder pair",
                     text="[Rp, Rm] - s0^2*P2"),
        RelationSpec("eq16.casimir.0", "quadratic Casimir vs R0",
                     text="[CR, R0]"),
        RelationSpec("eq16.casimir.plus", "quadratic Casimir vs R+",
                     text="[CR, Rp]"),
        RelationSpec("eq16.casimir.minus", "quadratic Casimir vs R-",
                     text="[CR, Rm]"),
        RelationSpec("eq17.casimir.printed", "Casimir with the printed "
                     "interpolant (bare C1 in the linear term, L0 frozen)",
                     text="[CRprint, Rp]", expect="nonzero"),
        RelationSpec("eq17.casimir.corrected", "even with the 6 C1 linear "
                     "term the frozen-L0 interpolant is not central, since "
                     "L0 shifts under R±",
                     text="[CR6, Rp]", expect="nonzero"),
        RelationSpec("pt.R0.mode1", "partial PT of R0", kind="pt",
                     label="R0", mode=1),
        RelationSpec("pt.R0.mode2", "partial PT of R0", kind="pt",
                     label="R0", mode=2),
        RelationSpec("pt.R0.mode3", "partial PT of R0 fails on the "
                     "ancilla mode: flipping mode 3 leaves the i*g cross "
                     "term of the embedded J0 conjugated only",
                     kind="pt", label="R0", mode=3, expect="nonzero"),
        RelationSpec("pt.CR.mode1", "partial PT of the quadratic Casimir",
                     kind="pt", label="CR", mode=1),
        RelationSpec("pt.CR.mode2", "partial PT of the quadratic Casimir",
                     kind="pt", label="CR", mode=2),
        RelationSpec("pt.CR.mode3", "partial PT of the quadratic Casimir "
                     "fails on the ancilla mode",
                     kind="pt", label="CR", mode=3, expect="nonzero"),
    ]
    return AlgebraInstance(
        "quadratic", 3, ops, scal, rel,
        casimirs=[("CR", ["R0", "Rp", "Rm"])],
        casimir_pairs=[("CR", "CRm")],
        params={"p": p, "gamma": "sym"},
    )


def fuse_boson_cubic(p: int = 1) -> AlgebraInstance:
    ops, scal, p2_x = _quadratic_ops(4, p)
    s0, s1 = scal["s0"], sym("s1")
    w1 = scal["w1"]
    a1 = scal["A1"]
    w2 = omega_chain(W0, 2)
    n0 = OperatorExpr.number(4, 4)
    q0 = (ops["R0"] - n0) * HALF
    d0 = (ops["R0"] + n0) * HALF
    qp = (ops["Rp"] * OperatorExpr.annihilator(4, 4)).scaled(s1)
    qm = (ops["Rm"] * OperatorExpr.creator(4, 4)).scaled(s1)
    b1, c1, cr6 = ops["B1"], ops["C1"], ops["CR6"]
    one = OperatorExpr.one(4)
    a2 = -(ONE + ONE / (num(3) * w1)) * a1
    b2 = (one * HALF - d0.scaled(ONE + w1 ** -1)).scaled(a1) \
        - b1.scaled(ONE + ONE / (num(2) * w1))
    c2 = ((d0 * d0).scaled(ONE - w1 ** -1) + d0 - one.scaled(w1 / 6)).scaled(a1) \
        + (one * HALF - d0.scaled(w1 ** -1)) * b1 \
        - c1.scaled(ONE + w1 ** -1)
    d2 = ((d0 ** 3).scaled(ONE - ONE / (num(3) * w1)) + (d0 * d0) * HALF
          - d0.scaled(w1 / 6)).scaled(a1) \
        + ((d0 * d0).scaled(ONE - ONE / (num(2) * w1)) + d0 * HALF) * b1 \
        + (d0.scaled(ONE - w1 ** -1) + one * HALF) * c1 \
        + cr6
    p3 = (q0 ** 3).scaled(a2) + b2 * (q0 * q0) + c2 * q0 + d2
    # the same polynomial with C_R taken literally (bare C1 interpolant)
    p3_lit = p3 - cr6 + ops["CRprint"]

    # Exact bracket, collected in Q0 with tower invariants.  From
    # Q± = s1 R± a4(+):  [Q+, Q-] = s1^2 (R+ R- + [R+, R-] n4), and both
    # R+ R- (through the exact quadratic Casimir) and [R+, R-] = s0^2 P2
    # are polynomials in R0 = t_d + (w1/w2) Q0 with invariant coefficients
    # (t_d = D0 - ((w1-1)/(2 w2)) Q0 is the Q±-invariant part of D0).
    x_ = OpPoly.variable(4)
    t_d = d0 - q0.scaled((w1 - ONE) / (num(2) * w2))
    r0_x = OpPoly.const(t_d) + x_.scaled(w1 / w2)
    n4_x = OpPoly.const(t_d) - x_.scaled(w2 ** -1)
    phi2 = p2_x.scaled(s0 ** 2)
    f2 = discrete_antiderivative(phi2, w1)
    phi2_q = phi2.compose(r0_x)
    phi3 = (OpPoly.const(ops["CR"]) - (f2 - phi2).compose(r0_x)
            + phi2_q * n4_x).scaled(s1 ** 2)
    cq_p, cq_m = tower_casimirs(q0, qp, qm, w2, phi3)

    # Printed quartic interpolant (frozen coefficients, 3 A2 w2^2 in the
    # cubic term where the difference equation wants 3 A2 w2, literal C_R
    # inside D2).
    d2_lit = d2 - cr6 + ops["CRprint"]
    g4p = (q0 ** 4).scaled(a2 / (num(4) * w2 ** 2)) \
        + (b2 * 2 + num(3) * a2 * w2 ** 2) \
        .scaled(ONE / (num(6) * w2 ** 2)) * (q0 ** 3) \
        + (c2 * 2 + a2 * w2 ** 2 + b2.scaled(num(2) * w2)) \
        .scaled(ONE / (num(4) * w2 ** 2)) * (q0 * q0) \
        + (d2_lit * 6 + b2.scaled(w2 ** 2) + c2.scaled(num(3) * w2)) \
        .scaled(ONE / (num(6) * w2 ** 2)) * q0 \
        + d2_lit.scaled(ONE / (num(2) * w2))
    cq_printed = qm * qp + g4p.scaled(s1 ** 2 * w2)
    ops.update({"Q0": q0, "Qp": qp, "Qm": qm, "D0": d0,
                "B2": b2, "C2": c2, "D2": d2, "P3": p3, "P3lit": p3_lit,
                "CQ": cq_p, "CQm": cq_m, "CQprint": cq_printed})
    scal.update({"w0": W0, "g": GAMMA, "s1": s1, "w2": w2, "A2": a2,
                 "lam1": sym("lam1")})
    rel = [
        RelationSpec("eq18.ladder.plus", "cubic fusion, raising",
                     text="[Q0, Qp] - w2*Qp"),
        RelationSpec("eq18.ladder.minus", "cubic fusion, lowering",
                     text="[Q0, Qm] + w2*Qm"),
        RelationSpec("eq18.pair", "cubic fusion, ladder pair; exact once "
                     "C_R inside D2 carries the 6 C1 interpolant and the "
                     "quadratic-level scale is fixed to s0 = 1 (the printed "
                     "coefficients drop s0)",
                     text="[Qp, Qm] - s1^2*P3",
                     subs_square=(("s0", 1),)),
        RelationSpec("eq18.pair.scale", "the same pair identity with s0 "
                     "kept symbolic does not close",
                     text="[Qp, Qm] - s1^2*P3", expect="nonzero"),
        RelationSpec("eq18.pair.literal", "the pair identity with the "
                     "literal bare-C1 reading of C_R inside D2",
                     text="[Qp, Qm] - s1^2*P3lit",
                     subs_square=(("s0", 1),), expect="nonzero"),
        RelationSpec("eq20.casimir.0", "cubic Casimir vs Q0",
                     text="[CQ, Q0]"),
        RelationSpec("eq20.casimir.plus", "cubic Casimir vs Q+",
                     text="[CQ, Qp]"),
        RelationSpec("eq20.casimir.minus", "cubic Casimir vs Q-",
                     text="[CQ, Qm]"),
        RelationSpec("eq21.casimir.printed", "Casimir with the printed "
                     "cubic coefficient (3 A2 w2^2 instead of 3 A2 w2)",
                     text="[CQprint, Qp]", expect="nonzero"),
        RelationSpec("eq35.higgs-cubic", "cubic Higgs reduction as printed "
                     "(cubic s1 power, B2 and D2 dropped)",
                     text="[Qp, Qm] - s1^3*(A2*Q0^3 + C2*Q0)",
                     expect="nonzero"),
    ] + [RelationSpec(f"pt.Q0.mode{j}",
                      "partial PT of Q0" if j <= 2 else
                      "partial PT of Q0 fails on the ancilla mode",
                      kind="pt", label="Q0", mode=j,
                      expect="zero" if j <= 2 else "nonzero")
         for j in (1, 2, 3, 4)] \
      + [RelationSpec("pt.CQ.mode1", "partial PT of the cubic Casimir",
                      kind="pt", label="CQ", mode=1),
         RelationSpec("pt.CQ.mode3", "partial PT of the cubic Casimir "
                      "fails on the ancilla mode",
                      kind="pt", label="CQ", mode=3, expect="nonzero")]
    return AlgebraInstance(
        "cubic", 4, ops, scal, rel,
        casimirs=[("CQ", ["Q0", "Qp", "Qm"])],
        casimir_pairs=[("CQ", "CQm")],
        params={"p": p, "gamma": "sym"},
    )


def fuse_two_su2(p: int = 1, q: int = 1, r: int = 0,
                 higgs: bool = False) -> AlgebraInstance:
    """J(gamma) on modes 1-2 fused with K(mu) on modes 3-4.

    higgs=True takes the gamma = mu branch (K built with the same gamma),
    where Omega- vanishes and the bracket closes on the cubic Higgs form.
    """
    kg, ko = (GAMMA, W0) if higgs else (MU, W0M)
    j = su2_ops(4, (1, 2), GAMMA, W0, p)
    k = su2_ops(4, (3, 4), kg, ko, q)
    s = sym("s")
    h0 = (j["J0"] - k["J0"]) * HALF
    l0 = (j["J0"] + k["J0"]) * HALF
    hp = (j["Jp"] * k["Jm"]).scaled(s)
    hm = (j["Jm"] * k["Jp"]).scaled(s)
    pq_ = W0 ** (1 - 2 * p) * ko ** (1 - 2 * q)
    om_p = pq_ * (W0 ** -1 + ko ** -1)
    om_m = pq_ * (W0 ** -1 - ko ** -1)
    cj, ck = j["CJ"], k["CJ"]
    al0 = (ck.scaled(ko) - cj.scaled(W0)).scaled(num(2) * pq_) * l0 \
        + (l0 ** 3).scaled(num(2) * om_m)
    al1 = (ck.scaled(ko) + cj.scaled(W0)).scaled(num(2) * pq_) \
        + (l0 * l0).scaled(num(2) * om_p)
    al2 = l0.scaled(num(-2) * om_m)
    al3 = num(-2) * om_p

    gens = {"J0": j["J0"], "Jp": j["Jp"], "Jm": j["Jm"], "CJ": cj,
            "K0": k["J0"], "Kp": k["Jp"], "Km": k["Jm"], "CK": ck,
            "H0": h0, "Hp": hp, "Hm": hm, "L0": l0,
            "AL0": al0, "AL1": al1, "AL2": al2}
    scal = {"w0": W0, "g": GAMMA, "s": s, "OMp": om_p, "OMm": om_m,
            "AL3": al3, "lam": sym("lam"), "lam0": sym("lam0")}
    if not higgs:
        scal.update({"mu": MU, "w0m": W0M})
        rel = [
            RelationSpec("eq23.ladder.plus", "two-su(2) fusion, raising",
                         text="[H0, Hp] - (1/2)*(w0 + w0m)*Hp"),
            RelationSpec("eq23.ladder.minus", "two-su(2) fusion, lowering",
                         text="[H0, Hm] + (1/2)*(w0 + w0m)*Hm"),
            RelationSpec("eq23.pair", "two-su(2) fusion, ladder pair",
                         text="[Hp, Hm] - s^2*(AL0 + AL1*H0 + AL2*H0^2 "
                              "+ AL3*H0^3)"),
        ]
        return AlgebraInstance(
            "two-su2", 4, gens, scal, rel,
            params={"p": p, "q": q, "r": r, "gamma": "sym", "mu": "sym"},
        )

    # gamma = mu branch: Higgs closure, Hamiltonian U, Casimir C_H
    lam, lam0 = scal["lam"], scal["lam0"]
    cc = (cj + ck) * HALF
    e3 = W0 ** (3 - 2 * (p + q))       # 1/w0^(2(p+q)-3)
    e1 = W0 ** (1 - 2 * (p + q))
    e3r = e3 * W0 ** r
    e1r = e1 * W0 ** r
    gam1 = cc.scaled(e3) + (l0 * l0).scaled(e1)
    gam2 = -e1
    u_op = (l0 * l0).scaled(lam * W0 ** -2) + cc.scaled(lam) + lam / 8
    gam1_r = cc.scaled(e3r) + (l0 * l0).scaled(e1r)
    ch_p = hm * hp \
        - gam1_r.scaled(num(2) * lam) * (h0 * (h0 + W0)) \
        + ((h0 * (h0 + W0)) ** 2).scaled(lam * e1r)
    ch_m = hp * hm \
        - gam1_r.scaled(num(2) * lam) * (h0 * (h0 - W0)) \
        + ((h0 * (h0 - W0)) ** 2).scaled(lam * e1r)
    # The pair bracket [H+, H-] = s^2 (AL0 + AL1 H0 + AL2 H0^2 + AL3 H0^3)
    # holds exactly and its coefficients are H±-invariants, so the tower
    # difference equation gives an exactly central Casimir -- unlike CH,
    # which averages CJ and CK and picks up a (CK - CJ) L0 obstruction.
    phi_h = OpPoly(4, [al0, al1, al2,
                       OperatorExpr.one(4).scaled(al3)]).scaled(s ** 2)
    chex_p, chex_m = tower_casimirs(h0, hp, hm, W0, phi_h)
    gens.update({"C": cc, "U": u_op, "G1": gam1, "G1r": gam1_r,
                 "CH": ch_p, "CHm": ch_m, "CHex": chex_p, "CHexm": chex_m})
    scal.update({"G2": gam2})
    lam_choice = lam0 * W0 ** (r + 2 - 2 * (p + q))
    s_square = -lam0 * W0 ** r
    rel = [
        RelationSpec("eq25.ladder.plus", "Higgs branch, raising",
                     text="[H0, Hp] - w0*Hp"),
        RelationSpec("eq25.ladder.minus", "Higgs branch, lowering",
                     text="[H0, Hm] + w0*Hm"),
        RelationSpec("eq25.pair", "Higgs branch, ladder pair with "
                     "C = (CJ + CK)/2 (central obstruction "
                     "(CK - CJ) L0 remains)",
                     text="[Hp, Hm] - 4*s^2*(G1*H0 + G2*H0^3)",
                     expect="nonzero"),
        RelationSpec("eq25.ideal", "eq25 residual is exactly "
                     "2 s^2 w0^(3-2(p+q)) (CK - CJ) L0",
                     text="[Hp, Hm] - 4*s^2*(G1*H0 + G2*H0^3) "
                          f"- 2*s^2*w0^{3 - 2 * (p + q)}*(CK - CJ)*L0"),
        RelationSpec("eq26.pair", "Higgs bracket after s^2 = -lam0 w0^r, "
                     "mixed lam/lam0 as printed",
                     text="[Hp, Hm] - 4*("
                          f"0 - lam0*(C*w0^{3 - 2 * (p + q) + r} "
                          f"+ L0^2*w0^{1 - 2 * (p + q) + r})*H0 "
                          f"+ lam*w0^{1 - 2 * (p + q) + r}*H0^3)",
                     subs_square=(("s", s_square),),
                     expect="nonzero"),
        RelationSpec("eq33.pair", "Higgs bracket in Hamiltonian form "
                     "(same (CK - CJ) L0 obstruction)",
                     text="[Hp, Hm] - 4*((lam/8 - U)*w0*H0 "
                          "+ (lam/w0)*H0^3)",
                     subs=(("lam", lam_choice),),
                     subs_square=(("s", s_square),),
                     expect="nonzero"),
        RelationSpec("eq33.ideal", "eq33 residual is exactly "
                     "-2 lam0 w0^(r+3-2(p+q)) (CK - CJ) L0",
                     text="[Hp, Hm] - 4*((lam/8 - U)*w0*H0 "
                          "+ (lam/w0)*H0^3) "
                          f"+ 2*lam0*w0^{r + 3 - 2 * (p + q)}*(CK - CJ)*L0",
                     subs=(("lam", lam_choice),),
                     subs_square=(("s", s_square),)),
        RelationSpec("eq34.central.0", "U is central vs H0",
                     text="[U, H0]"),
        RelationSpec("eq34.central.plus", "U is central vs H+",
                     text="[U, Hp]"),
        RelationSpec("eq34.central.minus", "U is central vs H-",
                     text="[U, Hm]"),
        RelationSpec("eq27.casimir.plus", "Higgs Casimir vs H+ with the "
                     "printed lam choice",
                     text="[CH, Hp]", subs=(("lam", lam_choice),),
                     subs_square=(("s", s_square),),
                     expect="nonzero"),
        RelationSpec("eq27.ideal", "Higgs Casimir is central up to the "
                     "(CK - CJ) L0 obstruction once lam = lam0/w0",
                     text="[CH, Hp] - 2*lam0"
                          f"*w0^{r + 3 - 2 * (p + q)}*(CK - CJ)*L0*Hp",
                     subs=(("lam", lam0 / W0),),
                     subs_square=(("s", s_square),)),
        RelationSpec("eq27.forms", "the two printed sign forms of the "
                     "Higgs Casimir differ as operators",
                     text="CH - CHm", expect="nonzero"),
        RelationSpec("eq27.exact.0", "tower Casimir vs H0",
                     text="[CHex, H0]"),
        RelationSpec("eq27.exact.plus", "tower Casimir vs H+",
                     text="[CHex, Hp]"),
        RelationSpec("eq27.exact.minus", "tower Casimir vs H-",
                     text="[CHex, Hm]"),
        RelationSpec("omega.minus", "Omega- vanishes at gamma = mu",
                     text="OMm"),
        RelationSpec("omega.plus", "Omega+ closed form at gamma = mu",
                     text=f"OMp - 2*w0^{1 - 2 * (p + q)}"),
    ] + [RelationSpec(f"pt.H0.mode{j_}", "single-mode partial PT of H0 "
                      "fails: the untouched su(2) copy is only "
                      "conjugated", kind="pt", label="H0", mode=j_,
                      expect="nonzero") for j_ in (1, 2, 3, 4)] \
      + [RelationSpec("pt.H0.modes13", "composite partial PT of H0 "
                      "(one flipped mode per su(2) copy) is exact",
                      kind="pt", label="H0", mode=(1, 3)),
         RelationSpec("pt.U.modes13", "composite partial PT of the "
                      "Hamiltonian U", kind="pt", label="U",
                      mode=(1, 3)),
         RelationSpec("pt.CH.modes13", "composite partial PT of the "
                      "Higgs Casimir", kind="pt", label="CH",
                      mode=(1, 3))] \
      + [RelationSpec(f"pt.U.mode{j_}", "single-mode partial PT of the "
                      "Hamiltonian U fails", kind="pt", label="U",
                      mode=j_, expect="nonzero") for j_ in (1, 2, 3, 4)] \
      + [RelationSpec("pt.CH.mode1", "single-mode partial PT of the "
                      "Higgs Casimir fails", kind="pt", label="CH",
                      mode=1, expect="nonzero")]
    return AlgebraInstance(
        "higgs-2su2", 4, gens, scal, rel,
        casimir_pairs=[("CHex", "CHexm")],
        params={"p": p, "q": q, "r": r, "gamma": "sym"},
    )


def fuse_su2_su11(p: int = 1, q: int = 1, r: int = 0,
                  higgs: bool = False) -> AlgebraInstance:
    """J(gamma) on modes 1-2 fused with Z(mu) on modes 3-4."""
    zg, zo = (GAMMA, W0) if higgs else (MU, W0M)
    j = su2_ops(4, (1, 2), GAMMA, W0, p)
    z = su11_ops(4, (3, 4), zg, zo, q)
    sp = sym("sp")
    y0 = (j["J0"] - z["Z0"]) * HALF
    x0 = (j["J0"] + z["Z0"]) * HALF
    yp = (j["Jp"] * z["Zm"]).scaled(sp)
    ym = (j["Jm"] * z["Zp"]).scaled(sp)
    pq_ = W0 ** (1 - 2 * p) * zo ** (1 - 2 * q)
    om_p = pq_ * (W0 ** -1 + zo ** -1)
    om_m = pq_ * (W0 ** -1 - zo ** -1)
    cj, cz = j["CJ"], z["CZ"]
    g0 = (cz.scaled(zo) + cj.scaled(W0)).scaled(num(2) * pq_) * x0 \
        - (x0 ** 3).scaled(num(2) * om_m)
    g1 = (cz.scaled(zo) - cj.scaled(W0)).scaled(num(2) * pq_) \
        - (x0 * x0).scaled(num(2) * om_p)
    g2 = x0.scaled(num(2) * om_m)
    g3_ = num(2) * om_p
    gens = {"J0": j["J0"], "Jp": j["Jp"], "Jm": j["Jm"], "CJ": cj,
            "Z0": z["Z0"], "Zp": z["Zp"], "Zm": z["Zm"], "CZ": cz,
            "Y0": y0, "Yp": yp, "Ym": ym, "X0": x0,
            "G0": g0, "G1": g1, "G2": g2}
    scal = {"w0": W0, "g": GAMMA, "sp": sp, "OMp": om_p, "OMm": om_m,
            "G3": g3_, "lamp": sym("lamp")}
    rel = [
        RelationSpec("eq39.ladder.plus", "su(2)*su(1,1) fusion, raising",
                     text="[Y0, Yp] - (1/2)*(w0 + w0m)*Yp"
                     if not higgs else "[Y0, Yp] - w0*Yp"),
        RelationSpec("eq39.ladder.minus", "su(2)*su(1,1) fusion, lowering",
                     text="[Y0, Ym] + (1/2)*(w0 + w0m)*Ym"
                     if not higgs else "[Y0, Ym] + w0*Ym"),
        RelationSpec("eq39.pair", "su(2)*su(1,1) fusion, ladder pair "
                     "(printed C_K read as C_Z)",
                     text="[Yp, Ym] - sp^2*(G0 + G1*Y0 + G2*Y0^2 "
                          "+ G3*Y0^3)"),
    ]
    if not higgs:
        scal.update({"mu": MU, "w0m": W0M})
        return AlgebraInstance(
            "su2-su11", 4, gens, scal, rel,
            params={"p": p, "q": q, "r": r, "gamma": "sym", "mu": "sym"},
        )
    # Higgs branch: needs C_Z + C_J = 0, which is not an operator identity;
    # the bracket misses the Higgs form by an exact multiple of (CJ + CZ).
    e3 = W0 ** (3 - 2 * (p + q))
    e1 = W0 ** (1 - 2 * (p + q))
    gp1 = cj.scaled(-e3) - (x0 * x0).scaled(e1)
    gens["GP1"] = gp1
    scal["GP2"] = e1
    rel += [
        RelationSpec("eq41.pair", "Higgs form with C' = CJ = -CZ imposed",
                     text="[Yp, Ym] - 4*sp^2*(GP1*Y0 + GP2*Y0^3)",
                     expect="nonzero"),
        RelationSpec("eq41.ideal", "eq41 residual is exactly "
                     "(2 sp^2 / w0^(2(p+q)-3)) (CJ + CZ) J0",
                     text="[Yp, Ym] - 4*sp^2*(GP1*Y0 + GP2*Y0^3) "
                          f"- 2*sp^2*w0^{3 - 2 * (p + q)}*(CJ + CZ)*J0"),
    ] + [RelationSpec(f"pt.Y0.mode{j_}", "single-mode partial PT of Y0 "
                      "fails: the untouched copy is only conjugated",
                      kind="pt", label="Y0", mode=j_, expect="nonzero")
         for j_ in (1, 2, 3, 4)] \
      + [RelationSpec("pt.Y0.modes13", "composite partial PT of Y0 "
                      "(one flipped mode per copy) is exact",
                      kind="pt", label="Y0", mode=(1, 3))]
    return AlgebraInstance(
        "higgs-su2su11", 4, gens, scal, rel,
        params={"p": p, "q": q, "r": r, "gamma": "sym"},
    )


def hahn_operators(p: int = 1, q: int = 1, r: int = 0) -> AlgebraInstance:
    """Hahn triple built on the gamma = mu Higgs instance."""
    base = fuse_two_su2(p, q, r, higgs=True)
    g = base.generators
    s = base.scalars["s"]
    lam0 = base.scalars["lam0"]
    h1 = (g["Hp"] + g["Hm"]) * HALF
    h2 = (g["Hp"] - g["Hm"]).scaled(-I * HALF)
    t1 = h1 + (g["H0"] * g["H0"]).scaled(s / W0)
    t2 = g["H0"]
    t3 = h2.scaled(-I)
    gens = dict(g)
    gens.update({"H1": h1, "H2": h2, "T1": t1, "T2": t2, "T3": t3})
    lam_choice = lam0 * W0 ** (r + 2 - 2 * (p + q))
    s_square = -lam0 * W0 ** r
    rel = [
        RelationSpec("eq43.first", "Hahn bracket [T1, T2]",
                     text="[T1, T2] - w0*T3"),
        RelationSpec("eq43.second", "Hahn bracket [T2, T3]",
                     text="[T2, T3] - s*T2^2 + w0*T1"),
        RelationSpec("eq43.third", "Hahn bracket [T3, T1] with cubic "
                     "deformation term ((CK - CJ) L0 obstruction "
                     "inherited from [H+, H-])",
                     text="[T3, T1] - 2*(s^2*(1/8)*w0^-2 + U)*w0*T2 "
                          "- s*{T1, T2} - 2*s^2*g^2*w0^-3*T2^3",
                     subs=(("lam", lam_choice),),
                     subs_square=(("s", s_square),),
                     expect="nonzero"),
        RelationSpec("eq43.third.ideal", "eq43 third bracket closes once "
                     "the central obstruction is subtracted",
                     text="[T3, T1] - 2*(s^2*(1/8)*w0^-2 + U)*w0*T2 "
                          "- s*{T1, T2} - 2*s^2*g^2*w0^-3*T2^3 "
                          f"- lam0*w0^{r + 3 - 2 * (p + q)}*(CK - CJ)*L0",
                     subs=(("lam", lam_choice),),
                     subs_square=(("s", s_square),)),
    ]
    return AlgebraInstance(
        "hahn", 4, gens, base.scalars, rel,
        params={"p": p, "q": q, "r": r, "gamma": "sym"},
    )


def higgs_hamiltonians(p: int = 1, q: int = 1, r: int = 0) -> AlgebraInstance:
    """The two multiboson Hamiltonians: U on the two-su(2) Higgs side and
    V (with its beta coefficients) on the cubic side."""
    higgs = fuse_two_su2(p, q, r, higgs=True)
    cubic = fuse_boson_cubic(p)
    lam1 = cubic.scalars["lam1"]
    l0 = cubic.generators["L0"]
    cj = cubic.generators["CJ"]
    one = OperatorExpr.one(4)
    den = (ONE + W0) * (ONE + num(2) * W0)
    b2s = num(-2) * (ONE + num(3) * W0) / den
    b1s = (num(3) * W0 ** 2 + num(9) * W0 + num(2)) / den
    b0 = (cj.scaled(num(12) * (num(3) + W0) * W0 ** 2)
          - one.scaled((ONE + W0) ** 2 * (ONE + num(2) * W0)
                       + num(6) * W0 * (ONE + W0))) \
        .scaled(ONE / (num(12) * den))
    v_op = one.scaled(lam1 / 8) \
        - ((l0 * l0).scaled(b2s) + l0.scaled(b1s) + b0).scaled(lam1 * W0 ** -2)
    gens = dict(cubic.generators)
    gens.update({"B0": b0, "V": v_op, "U": higgs.generators["U"],
                 "H0": higgs.generators["H0"],
                 "Hp": higgs.generators["Hp"],
                 "Hm": higgs.generators["Hm"]})
    scal = dict(cubic.scalars)
    scal.update({"b2": b2s, "b1": b1s,
                 "lam": higgs.scalars["lam"], "lam0": higgs.scalars["lam0"],
                 "s": higgs.scalars["s"]})
    s1_square = num(4) * lam1 / (scal["A2"] * W0)
    rel = [
        RelationSpec("eq36.central.0", "V commutes with Q0",
                     text="[V, Q0]"),
        RelationSpec("eq36.central.plus", "V vs Q+ (holds only on the "
                     "Higgs constraint surface)",
                     text="[Qp, Qm] - 4*((lam1/8 - V)*w0*Q0 "
                          "+ (lam1/w0)*Q0^3)",
                     subs_square=(("s1", s1_square),),
                     expect="nonzero"),
        RelationSpec("eq37.beta-match", "C2/A2 against the printed beta "
                     "polynomial in L0",
                     text="C2 - A2*(b2*L0^2 + b1*L0 + B0)",
                     expect="nonzero"),
        RelationSpec("eq34.central.plus", "U is central vs H+",
                     text="[U, Hp]"),
    ] + [RelationSpec(f"pt.V.mode{j_}",
                      "partial PT of the Hamiltonian V" if j_ <= 2 else
                      "partial PT of V fails on the ancilla mode",
                      kind="pt", label="V", mode=j_,
                      expect="zero" if j_ <= 2 else "nonzero")
         for j_ in (1, 2, 3, 4)] \
      + [RelationSpec(f"pt.U.mode{j_}", "single-mode partial PT of the "
                      "Hamiltonian U fails", kind="pt", label="U",
                      mode=j_, expect="nonzero") for j_ in (1, 2, 3, 4)] \
      + [RelationSpec("pt.V.modes13", "composite partial PT of V",
                      kind="pt", label="V", mode=(1, 3)),
         RelationSpec("pt.U.modes13", "composite partial PT of U",
                      kind="pt", label="U", mode=(1, 3))]
    return AlgebraInstance(
        "hamiltonians", 4, gens, scal, rel,
        params={"p": p, "q": q, "r": r, "gamma": "sym"},
    )


# ---------------------------------------------------------------------------
# Structure constants and the Killing form


def solve_in_span(target: OperatorExpr, basis):
    """Exact coefficients x with sum x_i basis_i = target, or None if the
    target does not lie in the span.  Returns (coeffs, residual)."""
    keys = set(target.terms)
    for b in basis:
        keys |= set(b.terms)
    keys = sorted(keys)
    rows = [[b.coefficient(k) for b in basis] + [target.coefficient(k)]
            for k in keys]
    n = len(basis)
    piv_rows = []
    rank_cols = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows))
                    if not rows[i][col].is_zero()), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = ONE / rows[r][col]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and not rows[i][col].is_zero():
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        rank_cols.append(col)
        r += 1
    coeffs = [ZERO] * n
    for i, col in enumerate(rank_cols):
        coeffs[col] = rows[i][n]
    combo = OperatorExpr.zero(target.n_modes)
    for c, b in zip(coeffs, basis):
        combo = combo + b.scaled(c)
    residual = target - combo
    return coeffs, residual


def structure_constants(ops):
    """c[k][i][j] with [ops_i, ops_j] = sum_k c^k_ij ops_k; raises if the
    span does not close (residual attached to the exception)."""
    n = len(ops)
    c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            coeffs, res = solve_in_span(commutator(ops[i], ops[j]), ops)
            if not res.is_zero():
                raise RealizationError(
                    f"bracket ({i},{j}) leaves the span: {res}")
            for k in range(n):
                c[k][i][j] = coeffs[k]
    return c


def killing_metric(ops):
    """Killing form g_ij = tr(ad_i ad_j) for a closing generator list."""
    c = structure_constants(ops)
    n = len(ops)
    g = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            acc = ZERO
            for k in range(n):
                for l in range(n):
                    acc = acc + c[k][i][l] * c[l][j][k]
            g[i][j] = acc
    return g
