"""Spectral pipeline on the degree-m polynomial sector.

On homogeneous polynomials of degree m in two variables, the basis
f_k = z1^(m-k) z2^k (k = 0..m) makes A = 2*J0 tridiagonal:

    diagonal     b_k = m - 2k
    superdiag.   d_k = i (k+1) gamma
    subdiag.     c_k = i gamma (m - k)

Everything downstream -- Gershgorin disks, the three-term-recursion
characteristic polynomial, closed-form spectrum, exact eigenvectors, and
the partial-PT classification of eigenfunctions -- lives here.  The
printed reference eigenfunctions for m = 2, 3 are diffed against, never
asserted: the recursion plus the exact residual (A - x)v = 0 is the
oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .fock import MatrixRep, build_charge_sector, oracle_eigensolve, represent
from .realizations import su2_ops
from .scalars import GAMMA, I, ONE, W0, ScalarExpr, num

HALF = num(Fraction(1, 2))


class SpectralError(Exception):
    pass


def _bindings(gamma: float) -> dict:
    if not 0.0 <= gamma < 1.0:
        raise SpectralError(f"gamma={gamma} outside [0, 1)")
    return {"g": gamma, "w0": math.sqrt(1.0 - gamma * gamma)}


@dataclass(frozen=True)
class TridiagonalSpec:
    """A = 2*J0 on the degree-m sector; entries as exact scalars."""

    m: int
    gamma: ScalarExpr

    def b(self, k: int) -> int:
        return self.m - 2 * k

    def d(self, k: int) -> ScalarExpr:
        return I * num(k + 1) * self.gamma

    def c(self, k: int) -> ScalarExpr:
        return I * self.gamma * num(self.m - k)

    def matrix(self):
        n = self.m + 1
        rows = [[ScalarExpr.of(0)] * n for _ in range(n)]
        for k in range(n):
            rows[k][k] = num(self.b(k))
            if k + 1 < n:
                rows[k][k + 1] = self.d(k)
                rows[k + 1][k] = self.c(k)
        return rows

    def numeric(self, gamma: float) -> np.ndarray:
        bind = _bindings(gamma)
        return np.array([[complex(x.eval(bind)) for x in row]
                         for row in self.matrix()])


def build_j0_matrix(m: int, gamma=GAMMA) -> TridiagonalSpec:
    if m < 1:
        raise SpectralError("m must be >= 1")
    return TridiagonalSpec(m, ScalarExpr.of(gamma))


def represent_j0(m: int, gamma: float) -> MatrixRep:
    """Fock-side J0 on the n1+n2 = m charge sector (the cross-check for
    the tridiagonal entries; note the sector basis is lexicographic, so
    it runs opposite to f_k)."""
    j0 = su2_ops(2, (1, 2), GAMMA, W0, 1)["J0"]
    sector = build_charge_sector([(1, 1)], [m], 2)
    return represent(j0, sector, _bindings(gamma), scheme="bargmann")


def matrix_vs_represent(m: int, gamma: float) -> float:
    """Max entrywise |A - 2*rep(J0)| after aligning the basis orders."""
    spec = build_j0_matrix(m)
    a = spec.numeric(gamma)
    rep = represent_j0(m, gamma).matrix
    n = m + 1
    worst = 0.0
    for i in range(n):
        for j in range(n):
            worst = max(worst, abs(a[i, j] - 2 * rep[n - 1 - i, n - 1 - j]))
    return worst


# ---------------------------------------------------------------------------
# Characteristic polynomial by three-term recursion
#
# Polynomials are coefficient lists in x (constant term first) over the
# exact scalar ring.


def _p_add(a, b):
    n = max(len(a), len(b))
    a = a + [ScalarExpr.of(0)] * (n - len(a))
    b = b + [ScalarExpr.of(0)] * (n - len(b))
    return [x + y for x, y in zip(a, b)]


def _p_scale(a, c):
    return [x * c for x in a]


def _p_shift(a):
    return [ScalarExpr.of(0)] + a


def p_eval(a, x):
    x = ScalarExpr.of(x)
    out = ScalarExpr.of(0)
    for c in reversed(a):
        out = out * x + c
    return out


def p_eval_numeric(a, x: complex, bind) -> complex:
    out = 0j
    for c in reversed(a):
        out = out * x + complex(c.eval(bind))
    return out


@dataclass(frozen=True)
class CharPolySequence:
    spec: TridiagonalSpec
    polys: tuple  # P_0 .. P_{m+1}, coefficient tuples

    @property
    def final(self):
        return list(self.polys[-1])


def char_poly(spec: TridiagonalSpec) -> CharPolySequence:
    """P_{n+1} = (1/d_n) [(x - b_n) P_n - c_{n-1} P_{n-1}], P_0 = 1.

    Requires d_n != 0, i.e. gamma nonzero (symbolic gamma qualifies);
    the gamma = 0 spectrum is read off the diagonal instead.
    """
    if spec.gamma.is_zero():
        raise SpectralError("gamma = 0: matrix is diagonal, use spectrum()")
    p_prev = []            # P_{-1} = 0
    p_cur = [ONE]          # P_0 = 1
    out = [tuple(p_cur)]
    for n_ in range(spec.m + 1):
        t = _p_add(_p_shift(p_cur), _p_scale(p_cur, num(-spec.b(n_))))
        if p_prev:
            t = _p_add(t, _p_scale(p_prev, -spec.c(n_ - 1)))
        inv = ONE / spec.d(n_)
        p_prev, p_cur = p_cur, _p_scale(t, inv)
        out.append(tuple(p_cur))
    return CharPolySequence(spec, tuple(out))


def closed_form_a_roots(m: int):
    """Roots of P_{m+1} for A: (m - 2k) w0, k = 0..m (Eq.-50 product)."""
    return [num(m - 2 * k) * W0 for k in range(m + 1)]


def verify_roots(seq: CharPolySequence):
    """Exact check that every closed-form root kills P_{m+1}; returns the
    (should-be-empty) list of failures."""
    bad = []
    for k, x in enumerate(closed_form_a_roots(seq.spec.m)):
        if not p_eval(seq.final, x).is_zero():
            bad.append(k)
    return bad


def spectrum(m: int, gamma: float):
    """Closed-form J0 eigenvalues (half the A roots), largest first."""
    w0 = math.sqrt(1.0 - gamma * gamma)
    return [(m - 2 * k) * w0 / 2.0 for k in range(m + 1)]


# ---------------------------------------------------------------------------
# Eigenvectors


def _gauge(components):
    """Scale so the last component is 1 (first nonzero from the bottom
    when the last vanishes)."""
    pivot = None
    for c in reversed(components):
        if not c.is_zero():
            pivot = c
            break
    if pivot is None:
        raise SpectralError("zero eigenvector")
    inv = ONE / pivot
    return [c * inv for c in components]


def eigenvector(seq: CharPolySequence, x) -> list:
    """Exact components (P_0(x), ..., P_m(x)), gauged to last = 1."""
    x = ScalarExpr.of(x)
    if not p_eval(seq.final, x).is_zero():
        raise SpectralError("x is not a root of P_{m+1}")
    return _gauge([p_eval(p, x) for p in seq.polys[:-1]])


def tridiagonal_residual(spec: TridiagonalSpec, x, v) -> list:
    """(A - x)v as exact scalars."""
    x = ScalarExpr.of(x)
    n = spec.m + 1
    out = []
    for i in range(n):
        acc = (num(spec.b(i)) - x) * v[i]
        if i > 0:
            acc = acc + spec.c(i - 1) * v[i - 1]
        if i + 1 < n:
            acc = acc + spec.d(i) * v[i + 1]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# Gershgorin


def gershgorin(m: int, gamma: float, eigenvalues=None) -> dict:
    """Column-sum disks (the normative convention here: every column
    radius is exactly m*gamma); row sums reported alongside."""
    spec = build_j0_matrix(m)
    a = spec.numeric(gamma)
    n = m + 1
    centers = [m - 2 * k for k in range(n)]
    col_radii = [float(sum(abs(a[i, j]) for i in range(n) if i != j))
                 for j in range(n)]
    row_radii = [float(sum(abs(a[i, j]) for j in range(n) if j != i))
                 for i in range(n)]
    radius = m * gamma
    disjoint = gamma < 1.0 / m
    if eigenvalues is None:
        vals, _ = oracle_eigensolve(MatrixRep(
            build_charge_sector([(1, 1)], [m], 2), a, "bargmann", False))
        eigenvalues = list(vals)
    containment = [sum(1 for ev in eigenvalues
                       if abs(ev - c) <= radius + 1e-9) for c in centers]
    in_union = all(n_ > 0 for n_ in
                   (sum(1 for c in centers if abs(ev - c) <= radius + 1e-9)
                    for ev in eigenvalues))
    return {
        "centers": centers,
        "radius": radius,
        "column_radii": col_radii,
        "row_radii": row_radii,
        "disjoint": disjoint,
        "containment": containment,
        "all_in_union": in_union,
    }


# ---------------------------------------------------------------------------
# Partial-PT classification of eigenfunctions


def pt_classify(vector, m: int, tol: float = 1e-9) -> dict:
    """Phases of Pi_T^1, Pi_T^2 on psi = sum v_k z1^(m-k) z2^k.

    Pi_T^j conjugates coefficients and flips z_j; on the coefficient list
    that is t_k = conj(v_k) * (-1)^(m-k) for j=1 and conj(v_k) * (-1)^k
    for j=2.  The individual phases are gauge-dependent; their ratio is
    not, and labels the state conforming (+1) or breaking (-1).
    """
    v = [complex(x) for x in vector]
    scale = max(abs(x) for x in v)
    if scale == 0:
        raise SpectralError("zero eigenvector")
    piv = max(range(len(v)), key=lambda k: abs(v[k]))
    phases = []
    for j in (1, 2):
        t = [x.conjugate() * (-1) ** ((m - k) if j == 1 else k)
             for k, x in enumerate(v)]
        lam = t[piv] / v[piv]
        if max(abs(a - lam * b) for a, b in zip(t, v)) > tol * scale:
            return {"lambda1": None, "lambda2": None, "ratio": None,
                    "label": "non-eigenstate-of-Pi"}
        phases.append(lam)
    ratio = phases[0] / phases[1]
    label = "conforming" if abs(ratio - 1) < tol else (
        "breaking" if abs(ratio + 1) < tol else "non-eigenstate-of-Pi")
    return {"lambda1": _c2pair(phases[0]), "lambda2": _c2pair(phases[1]),
            "ratio": round(ratio.real), "label": label}


def _c2pair(z: complex):
    return [z.real, z.imag]


def _alternating_pattern(v, tol=1e-9) -> bool:
    """Eq.-52 texture report: components purely real/imaginary in
    alternation (gauge last = 1)."""
    ok = True
    for k, x in enumerate(reversed(v)):
        if k % 2 == 0:
            ok = ok and abs(x.imag) <= tol * max(1.0, abs(x))
        else:
            ok = ok and abs(x.real) <= tol * max(1.0, abs(x))
    return ok


# ---------------------------------------------------------------------------
# Reference eigenfunctions (printed forms for m = 2, 3) and the diff report


def _printed_vectors(m: int, w0: float):
    g = math.sqrt(1.0 - w0 * w0)
    if m == 2:
        return {
            w0: [-(1 - w0) / (1 + w0),
                 -2j * math.sqrt((1 + w0) / (1 - w0)), 1.0],
            0.0: [-1.0, -2j / g, 1.0],
            -w0: [-(1 + w0) / (1 - w0),
                  -2j * math.sqrt((1 - w0) / (1 + w0)), 1.0],
        }
    if m == 3:
        up = (1 + w0) / (1 - w0)
        dn = (1 - w0) / (1 + w0)
        return {
            1.5 * w0: [up ** 1.5, 3j * up, -3 * math.sqrt(up), -1j],
            -1.5 * w0: [dn ** 1.5, 3j * dn, -3 * math.sqrt(dn), -1j],
            0.5 * w0: [math.sqrt(up), -1j * (1 + 2 / (1 + w0)),
                       -(3 + w0) / g, -1j],
            -0.5 * w0: [math.sqrt(dn), -1j * (1 - 2 / (1 - w0)),
                        -(3 - w0) / g, -1j],
        }
    raise SpectralError("printed reference vectors exist for m in {2, 3}")


def paper_diff(m: int, gamma: float, tol: float = 1e-10) -> list:
    """Componentwise diff of computed eigenvectors against the printed
    reference forms, both in the gauge last-component = 1."""
    if m not in (2, 3) or gamma == 0.0:
        return []
    bind = _bindings(gamma)
    w0 = bind["w0"]
    seq = char_poly(build_j0_matrix(m))
    refs = _printed_vectors(m, w0)
    out = []
    for j0_val, printed in sorted(refs.items(), reverse=True):
        x = ScalarExpr.of(Fraction(round(2 * j0_val / w0))) * W0
        v = [complex(c.eval(bind)) for c in eigenvector(seq, x)]
        pv = [complex(p) / complex(printed[-1]) for p in printed]
        flags = [abs(a - b) <= tol * max(1.0, abs(b))
                 for a, b in zip(v, pv)]
        out.append({
            "eigenvalue": j0_val,
            "computed": [_c2pair(z) for z in v],
            "printed": [_c2pair(z) for z in pv],
            "match": flags,
        })
    return out


# ---------------------------------------------------------------------------
# Full report


def spectral_report(m: int, gamma: float) -> dict:
    """The JSON document behind `spectrum`/`classify`: matrix, disks,
    eigensystem with PT labels, and the printed-form diff when one
    exists."""
    bind = _bindings(gamma)
    spec = build_j0_matrix(m)
    a = spec.numeric(gamma)
    eigen = []
    if gamma == 0.0:
        for k in range(m + 1):
            v = [0.0] * (m + 1)
            v[k] = 1.0
            eigen.append(((m - 2 * k) / 2.0, [complex(x) for x in v]))
    else:
        seq = char_poly(spec)
        for k in range(m + 1):
            x = closed_form_a_roots(m)[k]
            vec = [complex(c.eval(bind)) for c in eigenvector(seq, x)]
            eigen.append(((m - 2 * k) * bind["w0"] / 2.0, vec))
    a_vals = [2.0 * val for val, _ in eigen]
    return {
        "m": m,
        "gamma": gamma,
        "omega0": bind["w0"],
        "matrix": [[_c2pair(a[i, j]) for j in range(m + 1)]
                   for i in range(m + 1)],
        "gershgorin": gershgorin(m, gamma, eigenvalues=a_vals),
        "eigen": [{
            "value": val,
            "vector": [_c2pair(z) for z in vec],
            "alternating": _alternating_pattern(vec),
            "pt": pt_classify(vec, m),
        } for val, vec in eigen],
        "paper_diff": paper_diff(m, gamma) if m in (2, 3) else [],
    }


def sweep_rows(m: int, gammas):
    """Eigenvalue trajectories of J0 over a gamma grid (closed form)."""
    rows = []
    for g in gammas:
        for k, val in enumerate(spectrum(m, g)):
            rows.append((g, k, val))
    return rows
