"""Normal-ordered multi-mode boson operator polynomials.

An operator is a finite sum of terms  coeff * a1^+^c1 ... aN^+^cN a1^e1 ... aN^eN
with ScalarExpr coefficients.  Products are normal-ordered with the exact
per-mode identity

    a^m a+^n = sum_k k! C(m,k) C(n,k) a+^(n-k) a^(m-k)

Modes are numbered 1..N in the public interface.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import comb, factorial

from .scalars import GR, GR_ONE, Fraction, ScalarExpr, num

# term key: (creations tuple, annihilations tuple), one entry per mode
TermKey = tuple


class ModeMismatch(Exception):
    pass


def _check_modes(a: "OperatorExpr", b: "OperatorExpr"):
    if a.n_modes != b.n_modes:
        raise ModeMismatch(f"mode counts differ: {a.n_modes} vs {b.n_modes}")


class OperatorExpr:
    __slots__ = ("n_modes", "terms")

    def __init__(self, n_modes: int, terms=None):
        self.n_modes = n_modes
        t = {}
        for k, c in (terms or {}).items():
            c = ScalarExpr.of(c)
            if not c.is_zero():
                t[k] = c
        self.terms = t

    # -- constructors
    @classmethod
    def zero(cls, n_modes: int) -> "OperatorExpr":
        return cls(n_modes)

    @classmethod
    def one(cls, n_modes: int) -> "OperatorExpr":
        z = (0,) * n_modes
        return cls(n_modes, {(z, z): num(1)})

    @classmethod
    def creator(cls, n_modes: int, mode: int) -> "OperatorExpr":
        c = [0] * n_modes
        c[mode - 1] = 1
        z = (0,) * n_modes
        return cls(n_modes, {(tuple(c), z): num(1)})

    @classmethod
    def annihilator(cls, n_modes: int, mode: int) -> "OperatorExpr":
        e = [0] * n_modes
        e[mode - 1] = 1
        z = (0,) * n_modes
        return cls(n_modes, {(z, tuple(e)): num(1)})

    @classmethod
    def number(cls, n_modes: int, mode: int) -> "OperatorExpr":
        v = [0] * n_modes
        v[mode - 1] = 1
        v = tuple(v)
        return cls(n_modes, {(v, v): num(1)})

    # -- linear structure
    def __add__(self, o):
        if isinstance(o, (int, Fraction, ScalarExpr)):
            o = OperatorExpr.one(self.n_modes) * o
        _check_modes(self, o)
        t = dict(self.terms)
        for k, c in o.terms.items():
            c2 = t.get(k)
            c2 = c if c2 is None else c2 + c
            if c2.is_zero():
                t.pop(k, None)
            else:
                t[k] = c2
        return OperatorExpr(self.n_modes, t)

    __radd__ = __add__

    def __neg__(self):
        return OperatorExpr(self.n_modes,
                            {k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        if isinstance(o, (int, Fraction, ScalarExpr)):
            o = OperatorExpr.one(self.n_modes) * o
        return self + (-o)

    def __rsub__(self, o):
        return (-self) + o

    def scaled(self, c) -> "OperatorExpr":
        c = ScalarExpr.of(c)
        return OperatorExpr(self.n_modes,
                            {k: cc * c for k, cc in self.terms.items()})

    # -- products
    def __mul__(self, o):
        if isinstance(o, OperatorExpr):
            return self._normal_product(o)
        return self.scaled(o)

    def __rmul__(self, o):
        return self.scaled(o)

    def _normal_product(self, o: "OperatorExpr") -> "OperatorExpr":
        _check_modes(self, o)
        n = self.n_modes
        out: dict[TermKey, ScalarExpr] = {}
        for (c1, e1), s1 in self.terms.items():
            for (c2, e2), s2 in o.terms.items():
                coeff = s1 * s2
                # per mode: a^e1 a+^c2 reordering choices
                ranges = [range(min(e1[i], c2[i]) + 1) for i in range(n)]
                for ks in product(*ranges):
                    w = 1
                    for i, k in enumerate(ks):
                        w *= factorial(k) * comb(e1[i], k) * comb(c2[i], k)
                    key = (tuple(c1[i] + c2[i] - ks[i] for i in range(n)),
                           tuple(e1[i] + e2[i] - ks[i] for i in range(n)))
                    c = coeff * w
                    prev = out.get(key)
                    c = c if prev is None else prev + c
                    if c.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = c
        return OperatorExpr(n, out)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("operator powers must be non-negative integers")
        out = OperatorExpr.one(self.n_modes)
        for _ in range(k):
            out = out * self
        return out

    # -- involutions and symmetry transforms
    def dagger(self) -> "OperatorExpr":
        # (a+^c a^e)+ = a+^e a^c, which is again normal-ordered as written
        return OperatorExpr(self.n_modes,
                            {(e, c): s.conjugate()
                             for (c, e), s in self.terms.items()})

    def pt(self, mode: int | tuple | None = None) -> "OperatorExpr":
        """Partial (or, with mode=None, global) PT transform.

        Coefficients are conjugated; each term picks up (-1)^(c_j + e_j)
        for every flipped mode j (a single mode, a tuple of modes, or
        all modes when global).
        """
        t = {}
        for (c, e), s in self.terms.items():
            if mode is None:
                parity = sum(c) + sum(e)
            elif isinstance(mode, tuple):
                parity = sum(c[j - 1] + e[j - 1] for j in mode)
            else:
                parity = c[mode - 1] + e[mode - 1]
            sc = s.conjugate()
            t[(c, e)] = -sc if parity % 2 else sc
        return OperatorExpr(self.n_modes, t)

    # -- queries
    def is_zero(self) -> bool:
        return not self.terms

    def equals(self, o) -> bool:
        return (self - o).is_zero()

    def degree(self) -> int:
        return max((sum(c) + sum(e) for (c, e) in self.terms), default=0)

    def coefficient(self, key: TermKey) -> ScalarExpr:
        return self.terms.get(key, num(0))

    def map_coefficients(self, f) -> "OperatorExpr":
        return OperatorExpr(self.n_modes,
                            {k: f(c) for k, c in self.terms.items()})

    def symbols(self) -> set:
        out = set()
        for c in self.terms.values():
            out |= c.symbols()
        return out

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def canonical_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (c, e), s in self.sorted_terms():
            factors = []
            for i, k in enumerate(c):
                if k:
                    factors.append(f"a{i + 1}+" + (f"^{k}" if k > 1 else ""))
            for i, k in enumerate(e):
                if k:
                    factors.append(f"a{i + 1}" + (f"^{k}" if k > 1 else ""))
            body = " ".join(factors) if factors else "1"
            parts.append(f"({s}) {body}")
        return " + ".join(parts)

    __str__ = canonical_text

    def __repr__(self):
        return f"OperatorExpr({self.n_modes}, {self.canonical_text()})"


def commutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return a * b - b * a


def anticommutator(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    return a * b + b * a


# ---------------------------------------------------------------------------
# Single-swap reordering oracle (slow, used in tests to cross-check the
# closed-form product)


def slow_product(a: OperatorExpr, b: OperatorExpr) -> OperatorExpr:
    _check_modes(a, b)
    n = a.n_modes
    out = OperatorExpr.zero(n)
    for (c1, e1), s1 in a.terms.items():
        for (c2, e2), s2 in b.terms.items():
            word = []
            for i in range(n):
                word += [("+", i)] * c1[i]
            for i in range(n):
                word += [("-", i)] * e1[i]
            for i in range(n):
                word += [("+", i)] * c2[i]
            for i in range(n):
                word += [("-", i)] * e2[i]
            for key, w in _normal_order_word(tuple(word)).items():
                out = out + OperatorExpr(n, {_pad_key(key, n): s1 * s2 * w})
    return out


def _normal_order_word(word, _cache={}):
    """Map a ladder-operator word to {term key: integer weight}."""
    if word in _cache:
        return _cache[word]
    for i in range(len(word) - 1):
        (k1, m1), (k2, m2) = word[i], word[i + 1]
        if k1 == "-" and k2 == "+":
            swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2:]
            res = dict(_normal_order_word(swapped))
            if m1 == m2:
                dropped = word[:i] + word[i + 2:]
                for k, w in _normal_order_word(dropped).items():
                    res[k] = res.get(k, 0) + w
            res = {k: w for k, w in res.items() if w}
            _cache[word] = res
            return res
    # already normal-ordered
    n = 1 + max((m for _, m in word), default=0)
    c = [0] * n
    e = [0] * n
    for k, m in word:
        if k == "+":
            c[m] += 1
        else:
            e[m] += 1
    res = {(tuple(c), tuple(e)): 1}
    _cache[word] = res
    return res


def _pad_key(key, n):
    c, e = key
    return (tuple(c) + (0,) * (n - len(c)), tuple(e) + (0,) * (n - len(e)))


# ---------------------------------------------------------------------------
# Conserved charges


def conserved_charges(generators) -> list[tuple[int, ...]]:
    """Integer basis of charge vectors w with w . (c - e) = 0 for every
    monomial of every generator."""
    gens = list(generators)
    if not gens:
        raise ValueError("generator list must be nonempty")
    n = gens[0].n_modes
    deltas = set()
    for g in gens:
        for (c, e) in g.terms:
            d = tuple(c[i] - e[i] for i in range(n))
            if any(d):
                deltas.add(d)
    rows = [list(map(Fraction, d)) for d in sorted(deltas)]
    # reduced row echelon form
    pivots = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [v / rows[r][col] for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fcol in free:
        v = [Fraction(0)] * n
        v[fcol] = Fraction(1)
        for i, pcol in enumerate(pivots):
            v[pcol] = -rows[i][fcol]
        den = 1
        for x in v:
            den = den * x.denominator // _gcd(den, x.denominator)
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = _gcd(g, abs(x))
        if g:
            ints = [x // g for x in ints]
        lead = next((x for x in ints if x), 1)
        if lead < 0:
            ints = [-x for x in ints]
        basis.append(tuple(ints))
    return basis


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
