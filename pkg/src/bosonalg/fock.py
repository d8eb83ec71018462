"""Finite matrix representations on Fock sectors; the numeric oracle.

Two bases are supported:

* ``fock``  -- orthonormal occupation states, sqrt ladder weights
               (double precision; the default eigensolve oracle).
* ``bargmann`` -- monomial basis of the polynomial representation
               a+ -> multiplication, a -> d/dz; ladder weights are
               integers, so matrices can be exact Gaussian rationals.

Both give similar matrices, so spectra agree; only the Bargmann basis is
used for exact entrywise checks.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .scalars import GR, GR_ZERO, ScalarExpr
from .weyl import OperatorExpr


class SectorError(Exception):
    pass


class InfiniteSector(SectorError):
    pass


class MarginViolation(SectorError):
    pass


@lru_cache(maxsize=256)
def _index_map_for(basis):
    return {s: i for i, s in enumerate(basis)}


@dataclass(frozen=True)
class FockSector:
    n_modes: int
    basis: tuple  # tuple of occupation tuples, lexicographically sorted
    kind: str  # "charge" or "box"
    charges: tuple = ()
    values: tuple = ()
    box: int | None = None
    margin: int = 0

    @property
    def dim(self) -> int:
        return len(self.basis)

    def index(self, state) -> int | None:
        try:
            return self._index_map()[tuple(state)]
        except KeyError:
            return None

    def _index_map(self):
        return _index_map_for(self.basis)

    def safe_states(self):
        """Indices of basis states whose images under any operator of
        degree <= margin stay inside a box sector."""
        if self.kind != "box":
            return list(range(self.dim))
        return [i for i, s in enumerate(self.basis)
                if all(n + self.margin <= self.box for n in s)]

    def metadata(self) -> dict:
        return {
            "n_modes": self.n_modes, "dim": self.dim, "kind": self.kind,
            "charges": [list(c) for c in self.charges],
            "values": list(self.values),
            "box": self.box, "margin": self.margin,
        }


def build_box_sector(n_modes: int, max_occ: int, margin: int = 0) -> FockSector:
    basis = []

    def rec(prefix):
        if len(prefix) == n_modes:
            basis.append(tuple(prefix))
            return
        for k in range(max_occ + 1):
            rec(prefix + [k])

    rec([])
    return FockSector(n_modes, tuple(sorted(basis)), "box",
                      box=max_occ, margin=margin)


def build_charge_sector(charges, values, n_modes: int,
                        fallback_cap: int = 40) -> FockSector:
    """Occupation vectors n >= 0 with charge . n = value for every charge."""
    charges = [tuple(c) for c in charges]
    values = tuple(values)
    if len(charges) != len(values):
        raise SectorError("one value per charge vector required")
    if _has_homogeneous_solution(charges, n_modes, fallback_cap):
        raise InfiniteSector(
            "charges admit a nonzero homogeneous solution; use a box sector")
    basis = sorted(_solve(charges, values, n_modes, fallback_cap))
    return FockSector(n_modes, tuple(basis), "charge",
                      charges=tuple(charges), values=values)


def _mode_caps(charges, values, n_modes, fallback_cap):
    caps = [fallback_cap] * n_modes
    for w, v in zip(charges, values):
        if all(x >= 0 for x in w):
            for j, x in enumerate(w):
                if x > 0:
                    caps[j] = min(caps[j], max(v, 0) // x) if v >= 0 else 0
        if all(x <= 0 for x in w):
            for j, x in enumerate(w):
                if x < 0:
                    caps[j] = min(caps[j], max(-v, 0) // (-x)) if v <= 0 else 0
    return caps


def _solve(charges, values, n_modes, fallback_cap):
    caps = _mode_caps(charges, values, n_modes, fallback_cap)
    out = []

    def rec(depth, partial):
        if depth == n_modes:
            if all(p == v for p, v in zip(partial, values)):
                out.append(tuple(rec.current))
            return
        for k in range(caps[depth] + 1):
            nxt = [p + k * w[depth] for p, w in zip(partial, charges)]
            feasible = True
            for row, (w, v) in enumerate(zip(charges, values)):
                lo = hi = nxt[row]
                for j in range(depth + 1, n_modes):
                    lo += min(0, w[j]) * caps[j]
                    hi += max(0, w[j]) * caps[j]
                if not lo <= v <= hi:
                    feasible = False
                    break
            if feasible:
                rec.current.append(k)
                rec(depth + 1, nxt)
                rec.current.pop()

    rec.current = []
    rec(0, [0] * len(charges))
    return out


def _has_homogeneous_solution(charges, n_modes, cap):
    sols = _solve(charges, [0] * len(charges), n_modes, cap)
    return any(any(s) for s in sols)


# ---------------------------------------------------------------------------
# Representation


@dataclass
class MatrixRep:
    sector: FockSector
    matrix: object  # np.ndarray (complex) or list of lists of GR
    scheme: str
    exact: bool

    def to_numpy(self) -> np.ndarray:
        if not self.exact:
            return self.matrix
        d = self.sector.dim
        m = np.zeros((d, d), dtype=complex)
        for i in range(d):
            for j in range(d):
                m[i, j] = complex(self.matrix[i][j])
        return m

    def export_csv(self, path):
        m = self.to_numpy()
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["row", "col", "re", "im"])
            for i in range(m.shape[0]):
                for j in range(m.shape[1]):
                    if m[i, j] != 0:
                        w.writerow([i, j, repr(m[i, j].real),
                                    repr(m[i, j].imag)])

    def export_json(self, path):
        m = self.to_numpy()
        doc = {
            "sector": self.sector.metadata(),
            "scheme": self.scheme,
            "exact": self.exact,
            "entries": [[i, j, m[i, j].real, m[i, j].imag]
                        for i in range(m.shape[0])
                        for j in range(m.shape[1]) if m[i, j] != 0],
        }
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)


def _falling(n, k):
    out = 1
    for t in range(k):
        out *= n - t
    return out


def _term_action(state, c, e, scheme):
    """Apply a+^c a^e to a basis state; returns (target, weight) or None.

    fock weight     : sqrt(n!/(n-e)!) * sqrt((n-e+c)!/(n-e)!)
    bargmann weight : n!/(n-e)!   (exact integer)
    """
    n_modes = len(state)
    target = []
    w_int = 1
    w_sq = 1
    for i in range(n_modes):
        n = state[i]
        if n < e[i]:
            return None
        f = _falling(n, e[i])
        t = n - e[i] + c[i]
        target.append(t)
        if scheme == "bargmann":
            w_int *= f
        else:
            w_sq *= f * _falling(t, c[i])
    if scheme == "bargmann":
        return tuple(target), w_int
    return tuple(target), float(np.sqrt(w_sq))


def represent(op: OperatorExpr, sector: FockSector, bindings,
              scheme: str = "fock") -> MatrixRep:
    """Double-precision matrix of an operator on a sector.

    Charge sectors must be invariant: an image outside the sector is an
    error there. Box sectors drop out-of-box images (margin accounting is
    the caller's job via boundary_safe_compare / safe_states).
    """
    if op.n_modes != sector.n_modes:
        raise SectorError("operator and sector mode counts differ")
    d = sector.dim
    m = np.zeros((d, d), dtype=complex)
    for (c, e), s in op.terms.items():
        coeff = s.eval(bindings)
        for j, state in enumerate(sector.basis):
            hit = _term_action(state, c, e, scheme)
            if hit is None:
                continue
            target, w = hit
            i = sector.index(target)
            if i is None:
                if sector.kind == "charge":
                    raise SectorError(
                        f"charge sector not invariant: {state} -> {target}")
                continue
            m[i, j] += coeff * w
    return MatrixRep(sector, m, scheme, exact=False)


def represent_exact(op: OperatorExpr, sector: FockSector,
                    bindings) -> MatrixRep:
    """Exact Gaussian-rational matrix in the Bargmann (monomial) basis."""
    if op.n_modes != sector.n_modes:
        raise SectorError("operator and sector mode counts differ")
    d = sector.dim
    m = [[GR_ZERO for _ in range(d)] for _ in range(d)]
    for (c, e), s in op.terms.items():
        coeff = s.eval_exact(bindings)
        for j, state in enumerate(sector.basis):
            hit = _term_action(state, c, e, "bargmann")
            if hit is None:
                continue
            target, w = hit
            i = sector.index(target)
            if i is None:
                if sector.kind == "charge":
                    raise SectorError(
                        f"charge sector not invariant: {state} -> {target}")
                continue
            m[i][j] = m[i][j] + coeff * w
    return MatrixRep(sector, m, "bargmann", exact=True)


def exact_matmul(a, b):
    d = len(a)
    out = [[GR_ZERO for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for k in range(d):
            if a[i][k].is_zero():
                continue
            aik = a[i][k]
            for j in range(d):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + aik * b[k][j]
    return out


def exact_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def exact_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def apply_operator(op: OperatorExpr, vec, bindings, scheme: str = "fock"):
    """Apply an operator to a weighted set of occupation states.

    `vec` maps occupation tuples to complex amplitudes.  There is no box:
    ladder actions on explicit states are exact, so chains of applications
    reproduce matrix products on arbitrarily large sectors without ever
    materializing a matrix.
    """
    out: dict = {}
    for (c, e), s in op.terms.items():
        coeff = complex(s.eval(bindings))
        if coeff == 0:
            continue
        for state, amp in vec.items():
            hit = _term_action(state, c, e, scheme)
            if hit is None:
                continue
            target, w = hit
            out[target] = out.get(target, 0j) + coeff * w * amp
    return {k: v for k, v in out.items() if v != 0}


# ---------------------------------------------------------------------------
# Eigensolve oracle


class ConvergenceFailure(Exception):
    pass


def oracle_eigensolve(rep: MatrixRep, residual_tol: float = 1e-9):
    """Dense complex eigensolve with a residual guarantee per pair."""
    m = rep.to_numpy()
    if m.shape[0] > 2048:
        raise SectorError("sector too large for the dense oracle")
    try:
        vals, vecs = np.linalg.eig(m)
    except np.linalg.LinAlgError as exc:  # pragma: no cover
        raise ConvergenceFailure(str(exc)) from exc
    scale = max(np.linalg.norm(m), 1.0)
    for k in range(len(vals)):
        r = np.linalg.norm(m @ vecs[:, k] - vals[k] * vecs[:, k])
        if r > residual_tol * scale:
            raise ConvergenceFailure(
                f"eigenpair residual {r} exceeds {residual_tol * scale}")
    order = np.lexsort((vals.imag, vals.real))
    return vals[order], vecs[:, order]


def boundary_safe_compare(lhs: OperatorExpr, rhs: OperatorExpr,
                          sector: FockSector, bindings,
                          scheme: str = "fock") -> float:
    """Max entry difference between two operators, restricted to columns of
    box states whose images stay inside the box."""
    deg = max(lhs.degree(), rhs.degree())
    if sector.kind == "box" and deg > sector.margin:
        raise MarginViolation(
            f"operator degree {deg} exceeds sector margin {sector.margin}")
    ml = represent(lhs, sector, bindings, scheme).matrix
    mr = represent(rhs, sector, bindings, scheme).matrix
    cols = sector.safe_states()
    if not cols:
        raise MarginViolation("no safe states in sector")
    diff = np.abs(ml[:, cols] - mr[:, cols])
    return float(diff.max())
