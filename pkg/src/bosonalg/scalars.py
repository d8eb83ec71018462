"""Exact coefficient ring for all operator constructions.

Elements are fractions of multivariate polynomials over the Gaussian
rationals Q(i).  Deformation symbols carry algebraic relations
(g^2 = 1 - w0^2, mu^2 = 1 - w0m^2, ...) that are enforced by rewriting,
so every element has a normal form in which each ruled symbol appears
with degree <= 1.  Zero testing reduces the numerator to normal form
and checks that all coefficients vanish; no multivariate gcd is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping


class ScalarError(Exception):
    pass


class DivisionByZero(ScalarError):
    pass


class UnboundSymbol(ScalarError):
    pass


# ---------------------------------------------------------------------------
# Gaussian rationals


class GR:
    """A Gaussian rational (a + b*i)/d with integer parts.

    The shared denominator is reduced lazily (only when it grows large),
    which keeps the hot add/mul path free of gcd calls.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, re=0, im=0):
        if type(re) is int and type(im) is int:
            self.a, self.b, self.d = re, im, 1
            return
        fr, fi = Fraction(re), Fraction(im)
        d = fr.denominator * fi.denominator \
            // math.gcd(fr.denominator, fi.denominator)
        self.a = fr.numerator * (d // fr.denominator)
        self.b = fi.numerator * (d // fi.denominator)
        self.d = d

    @classmethod
    def _raw(cls, a, b, d):
        self = object.__new__(cls)
        if d < 0:
            a, b, d = -a, -b, -d
        if d != 1 and d.bit_length() > 64:
            g = math.gcd(math.gcd(a, b), d)
            if g > 1:
                a, b, d = a // g, b // g, d // g
        self.a, self.b, self.d = a, b, d
        return self

    @property
    def re(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def im(self) -> Fraction:
        return Fraction(self.b, self.d)

    @staticmethod
    def of(v) -> "GR":
        if isinstance(v, GR):
            return v
        if isinstance(v, complex):
            return GR(Fraction(v.real).limit_denominator(10**12),
                      Fraction(v.imag).limit_denominator(10**12))
        return GR(v)

    def __add__(self, o):
        o = GR.of(o)
        if self.d == o.d:
            return GR._raw(self.a + o.a, self.b + o.b, self.d)
        return GR._raw(self.a * o.d + o.a * self.d,
                       self.b * o.d + o.b * self.d, self.d * o.d)

    __radd__ = __add__

    def __neg__(self):
        return GR._raw(-self.a, -self.b, self.d)

    def __sub__(self, o):
        o = GR.of(o)
        if self.d == o.d:
            return GR._raw(self.a - o.a, self.b - o.b, self.d)
        return GR._raw(self.a * o.d - o.a * self.d,
                       self.b * o.d - o.b * self.d, self.d * o.d)

    def __rsub__(self, o):
        return GR.of(o) - self

    def __mul__(self, o):
        o = GR.of(o)
        return GR._raw(self.a * o.a - self.b * o.b,
                       self.a * o.b + self.b * o.a, self.d * o.d)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = GR.of(o)
        n = o.a * o.a + o.b * o.b
        if n == 0:
            raise DivisionByZero("division by zero Gaussian rational")
        a = (self.a * o.a + self.b * o.b) * o.d
        b = (self.b * o.a - self.a * o.b) * o.d
        d = self.d * n
        g = math.gcd(math.gcd(a, b), d)
        if g > 1:
            a, b, d = a // g, b // g, d // g
        return GR._raw(a, b, d)

    def conj(self):
        return GR._raw(self.a, -self.b, self.d)

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __eq__(self, o):
        o = GR.of(o)
        return (self.a * o.d == o.a * self.d
                and self.b * o.d == o.b * self.d)

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(self.re) + 1j * complex(self.im)

    def __repr__(self):
        return f"GR({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}*i)"


GR_ZERO = GR(0)
GR_ONE = GR(1)
GR_I = GR(0, 1)


# ---------------------------------------------------------------------------
# Symbols and rewrite rules

DEFORMATION = "deformation"
DERIVED = "derived"
FREE = "free"
INDETERMINATE = "indeterminate"
HALF_ANGLE = "half-angle"
AUX = "aux"


@dataclass(frozen=True)
class Symbol:
    name: str
    kind: str
    partner: str | None = None  # derived partner of a deformation symbol


SYMBOLS: dict[str, Symbol] = {}


def _register(name, kind, partner=None):
    SYMBOLS[name] = Symbol(name, kind, partner)


for _n, _k, _p in [
    ("g", DEFORMATION, "w0"), ("w0", DERIVED, "g"),
    ("mu", DEFORMATION, "w0m"), ("w0m", DERIVED, "mu"),
    ("hc", HALF_ANGLE, None), ("hs", HALF_ANGLE, None),
    ("rt2", AUX, None),
    ("x", INDETERMINATE, None),
]:
    _register(_n, _k, _p)

for _n in ("s", "s0", "s1", "sp", "lam", "lam0", "lam1", "lamp", "pc", "ps"):
    _register(_n, FREE)


def ensure_symbol(name: str, kind: str = FREE) -> Symbol:
    if name not in SYMBOLS:
        _register(name, kind)
    return SYMBOLS[name]


# Monomial: tuple of (symbol, exponent), sorted by symbol, exponents > 0.
Monomial = tuple

_EMPTY: Monomial = ()


def _mono(d: Mapping[str, int]) -> Monomial:
    return tuple(sorted((s, e) for s, e in d.items() if e))


_MONO_MUL_CACHE: dict = {}


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    key = (a, b)
    hit = _MONO_MUL_CACHE.get(key)
    if hit is None:
        d = dict(a)
        for s, e in b:
            d[s] = d.get(s, 0) + e
        hit = tuple(sorted(d.items()))
        _MONO_MUL_CACHE[key] = hit
    return hit


class Poly:
    """Multivariate polynomial over GR with ruled-symbol reduction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, GR] | None = None,
                 reduce: bool = True):
        t = {m: c for m, c in (terms or {}).items() if not c.is_zero()}
        self.terms = t
        if reduce:
            self._reduce()

    # -- construction helpers
    @staticmethod
    def const(c) -> "Poly":
        c = GR.of(c)
        return Poly({_EMPTY: c}, reduce=False)

    @staticmethod
    def var(name: str) -> "Poly":
        ensure_symbol(name)
        return Poly({((name, 1),): GR_ONE})

    # -- rewrite rules; replacements are built lazily to avoid import cycles
    _rules = None

    @classmethod
    def rules(cls):
        if cls._rules is None:
            half = GR(Fraction(1, 2))
            cls._rules = [
                # pair rule first so hc*hs monomials reduce deterministically
                ((("hc", 1), ("hs", 1)),
                 Poly({(("g", 1),): half}, reduce=False)),
                ((("g", 2),),
                 Poly({_EMPTY: GR_ONE, (("w0", 2),): GR(-1)}, reduce=False)),
                ((("mu", 2),),
                 Poly({_EMPTY: GR_ONE, (("w0m", 2),): GR(-1)}, reduce=False)),
                ((("hc", 2),),
                 Poly({_EMPTY: half, (("w0", 1),): half}, reduce=False)),
                ((("hs", 2),),
                 Poly({_EMPTY: half, (("w0", 1),): GR(Fraction(-1, 2))},
                      reduce=False)),
                ((("rt2", 2),), Poly({_EMPTY: GR(2)}, reduce=False)),
            ]
        return cls._rules

    @staticmethod
    def _reducible(mono: Monomial) -> bool:
        has_hc = has_hs = False
        for s, e in mono:
            if s == "hc":
                has_hc = True
                if e >= 2:
                    return True
            elif s == "hs":
                has_hs = True
                if e >= 2:
                    return True
            elif e >= 2 and (s == "g" or s == "mu" or s == "rt2"):
                return True
        return has_hc and has_hs

    def _reduce(self):
        if not any(Poly._reducible(m) for m in self.terms):
            return
        rules = Poly.rules()
        work = list(self.terms.items())
        out: dict[Monomial, GR] = {}
        while work:
            mono, coeff = work.pop()
            applied = False
            if Poly._reducible(mono):
                d = dict(mono)
                for pattern, repl in rules:
                    if all(d.get(s, 0) >= e for s, e in pattern):
                        for s, e in pattern:
                            d[s] -= e
                        rest = _mono(d)
                        for rm, rc in repl.terms.items():
                            work.append((_mono_mul(rest, rm), coeff * rc))
                        applied = True
                        break
            if not applied:
                prev = out.get(mono)
                c = coeff if prev is None else prev + coeff
                if c.is_zero():
                    out.pop(mono, None)
                else:
                    out[mono] = c
        self.terms = out

    # -- arithmetic
    def __add__(self, o: "Poly") -> "Poly":
        t = dict(self.terms)
        for m, c in o.terms.items():
            prev = t.get(m)
            c2 = c if prev is None else prev + c
            if c2.is_zero():
                t.pop(m, None)
            else:
                t[m] = c2
        return Poly(t, reduce=False)

    def __neg__(self):
        return Poly({m: -c for m, c in self.terms.items()}, reduce=False)

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o: "Poly") -> "Poly":
        t: dict[Monomial, GR] = {}
        get = t.get
        other = list(o.terms.items())
        for m1, c1 in self.terms.items():
            for m2, c2 in other:
                m = _mono_mul(m1, m2)
                prev = get(m)
                t[m] = c1 * c2 if prev is None else prev + c1 * c2
        return Poly(t)

    def scale(self, c: GR) -> "Poly":
        if c.is_zero():
            return Poly()
        return Poly({m: cc * c for m, cc in self.terms.items()}, reduce=False)

    def is_zero(self) -> bool:
        return not self.terms

    def conj(self) -> "Poly":
        return Poly({m: c.conj() for m, c in self.terms.items()}, reduce=False)

    def symbols(self) -> set:
        out = set()
        for m in self.terms:
            out.update(s for s, _ in m)
        return out

    # graded-lex order used for canonical output and leading terms
    @staticmethod
    def _key(mono: Monomial):
        return (sum(e for _, e in mono), mono)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: Poly._key(kv[0]))

    def leading(self):
        m = max(self.terms, key=Poly._key)
        return m, self.terms[m]

    def try_exact_div(self, d: "Poly", max_steps: int = 4000):
        """Return self/d when the division is exact, else None."""
        if d.is_zero():
            raise DivisionByZero("polynomial division by zero")
        rem = Poly(dict(self.terms), reduce=False)
        quo: dict[Monomial, GR] = {}
        dm, dc = d.leading()
        steps = 0
        while not rem.is_zero():
            steps += 1
            if steps > max_steps:
                return None
            rm, rc = rem.leading()
            rd = dict(rm)
            for s, e in dm:
                if rd.get(s, 0) < e:
                    return None
                rd[s] -= e
            qm = _mono(rd)
            qc = rc / dc
            quo[qm] = quo.get(qm, GR_ZERO) + qc
            rem = rem - Poly({qm: qc}, reduce=False) * d
        return Poly(quo, reduce=False)

    def eval(self, bindings: Mapping[str, complex]) -> complex:
        total = 0j
        for m, c in self.terms.items():
            v = complex(c)
            for s, e in m:
                if s not in bindings:
                    raise UnboundSymbol(f"symbol '{s}' has no numeric binding")
                v *= complex(bindings[s]) ** e
            total += v
        return total

    def eval_exact(self, bindings: Mapping[str, GR]) -> GR:
        total = GR_ZERO
        for m, c in self.terms.items():
            v = c
            for s, e in m:
                if s not in bindings:
                    raise UnboundSymbol(f"symbol '{s}' has no exact binding")
                b = GR.of(bindings[s])
                for _ in range(e):
                    v = v * b
            total = total + v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [f"{s}^{e}" if e > 1 else s for s, e in m]
            cs = str(c)
            if factors:
                if c == GR_ONE:
                    parts.append("*".join(factors))
                elif c == GR(-1):
                    parts.append("-" + "*".join(factors))
                else:
                    parts.append(cs + "*" + "*".join(factors))
            else:
                parts.append(cs)
        out = parts[0]
        for p in parts[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out


POLY_ONE = Poly.const(1)


# Univariate helpers over the Gaussian rationals, used to cancel common
# factors out of fractions whose denominator involves a single symbol
# (dicts {exponent: GR}, no zero coefficients).


def _uni_of(poly: Poly, s: str):
    """`poly` as a univariate dict in `s`, or None if other symbols appear."""
    out = {}
    for m, c in poly.terms.items():
        e = 0
        for name, k in m:
            if name != s:
                return None
            e = k
        out[e] = c
    return out


def _uni_divmod(a, b):
    a = dict(a)
    q = {}
    db = max(b)
    lb = b[db]
    while a:
        da = max(a)
        if da < db:
            break
        c = a[da] / lb
        q[da - db] = c
        for e, bc in b.items():
            ne = da - db + e
            v = a.get(ne, GR_ZERO) - c * bc
            if v.is_zero():
                a.pop(ne, None)
            else:
                a[ne] = v
    return q, a


def _uni_gcd(a, b):
    while b:
        _, r = _uni_divmod(a, b)
        a, b = b, r
    lc = a[max(a)]
    if lc != GR_ONE:
        inv = GR_ONE / lc
        a = {e: c * inv for e, c in a.items()}
    return a


# ---------------------------------------------------------------------------
# ScalarExpr: fraction of polynomials


class ScalarExpr:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, simplify=True):
        den = POLY_ONE if den is None else den
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        self.num = num
        self.den = den
        if simplify:
            self._simplify()

    def _simplify(self):
        if self.num.is_zero():
            self.den = POLY_ONE
            return
        # cancel common symbol powers present in every monomial of num and den
        common: dict[str, int] = {}
        first = True
        for poly in (self.num, self.den):
            for m in poly.terms:
                d = dict(m)
                if first:
                    common = d
                    first = False
                else:
                    common = {s: min(e, d.get(s, 0))
                              for s, e in common.items() if d.get(s, 0)}
                if not common:
                    break
        if common:
            strip = _mono(common)

            def unstrip(poly):
                t = {}
                for m, c in poly.terms.items():
                    d = dict(m)
                    for s, e in strip:
                        d[s] -= e
                    t[_mono(d)] = c
                return Poly(t, reduce=False)

            self.num = unstrip(self.num)
            self.den = unstrip(self.den)
        # cancel common factors (gcd when the denominator is univariate,
        # otherwise only a full exact-division attempt)
        if len(self.den.terms) > 1 or self.den.terms != {_EMPTY: GR_ONE}:
            den_syms = self.den.symbols()
            if len(den_syms) == 1:
                self._cancel_univariate(next(iter(den_syms)))
            elif den_syms:
                q = self.num.try_exact_div(self.den)
                if q is not None:
                    self.num, self.den = q, POLY_ONE
                    return
        # make the leading denominator coefficient exactly 1
        _, lc = self.den.leading()
        if lc != GR_ONE:
            inv = GR_ONE / lc
            self.num = self.num.scale(inv)
            self.den = self.den.scale(inv)

    def _cancel_univariate(self, s: str):
        den_u = _uni_of(self.den, s)
        if den_u is None or max(den_u) == 0:
            return
        groups: dict = {}
        for m, c in self.num.terms.items():
            d = dict(m)
            e = d.pop(s, 0)
            groups.setdefault(_mono(d), {})[e] = c
        g = den_u
        for u in groups.values():
            g = _uni_gcd(g, u)
            if max(g) == 0:
                return
        qd, _ = _uni_divmod(den_u, g)
        self.den = Poly({((s, e),) if e else _EMPTY: c
                         for e, c in qd.items()}, reduce=False)
        nt = {}
        for rest, u in groups.items():
            qn, _ = _uni_divmod(u, g)
            for e, c in qn.items():
                nt[_mono_mul(rest, ((s, e),) if e else _EMPTY)] = c
        self.num = Poly(nt, reduce=False)

    # -- constructors
    @staticmethod
    def of(v) -> "ScalarExpr":
        if isinstance(v, ScalarExpr):
            return v
        if isinstance(v, Poly):
            return ScalarExpr(v)
        if isinstance(v, str):
            return sym(v)
        return ScalarExpr(Poly.const(v))

    _COERCIBLE = (int, Fraction, complex, float, GR, Poly, str)

    # -- arithmetic
    def __add__(self, o):
        if not isinstance(o, (ScalarExpr,) + ScalarExpr._COERCIBLE):
            return NotImplemented
        o = ScalarExpr.of(o)
        return ScalarExpr(self.num * o.den + o.num * self.den,
                          self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return ScalarExpr(-self.num, self.den, simplify=False)

    def __sub__(self, o):
        if not isinstance(o, (ScalarExpr,) + ScalarExpr._COERCIBLE):
            return NotImplemented
        return self + (-ScalarExpr.of(o))

    def __rsub__(self, o):
        return ScalarExpr.of(o) - self

    def __mul__(self, o):
        if not isinstance(o, (ScalarExpr,) + ScalarExpr._COERCIBLE):
            return NotImplemented
        o = ScalarExpr.of(o)
        return ScalarExpr(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, o):
        if not isinstance(o, (ScalarExpr,) + ScalarExpr._COERCIBLE):
            return NotImplemented
        o = ScalarExpr.of(o)
        if o.is_zero():
            raise DivisionByZero("scalar division by zero")
        return ScalarExpr(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, o):
        return ScalarExpr.of(o) / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers are supported")
        if n < 0:
            return (ScalarExpr.of(1) / self) ** (-n)
        out = ScalarExpr.of(1)
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "ScalarExpr":
        return ScalarExpr(self.num.conj(), self.den.conj())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __eq__(self, o):
        try:
            o = ScalarExpr.of(o)
        except TypeError:
            return NotImplemented
        return (self - o).is_zero()

    __hash__ = None

    def equals(self, o) -> bool:
        return self == o

    def symbols(self) -> set:
        return self.num.symbols() | self.den.symbols()

    def subs(self, name: str, value) -> "ScalarExpr":
        """Substitute every power of `name` by `value`."""
        value = ScalarExpr.of(value)

        def sub_poly(poly: Poly) -> ScalarExpr:
            out = ScalarExpr.of(0)
            for m, c in poly.terms.items():
                term = ScalarExpr(Poly({_mono({s: e for s, e in m
                                               if s != name}): c}))
                for s, e in m:
                    if s == name:
                        term = term * value ** e
                out = out + term
            return out

        return sub_poly(self.num) / sub_poly(self.den)

    def subs_square(self, name: str, square_value) -> "ScalarExpr":
        """Rewrite name^2 -> square_value, keeping odd leftover powers."""
        square_value = ScalarExpr.of(square_value)

        def sub_poly(poly: Poly) -> ScalarExpr:
            out = ScalarExpr.of(0)
            for m, c in poly.terms.items():
                d = dict(m)
                e = d.pop(name, 0)
                if e % 2:
                    d[name] = 1
                term = ScalarExpr(Poly({_mono(d): c}))
                term = term * square_value ** (e // 2)
                out = out + term
            return out

        return sub_poly(self.num) / sub_poly(self.den)

    def eval(self, bindings: Mapping[str, complex],
             min_den: float = 1e-14) -> complex:
        d = self.den.eval(bindings)
        if abs(d) < min_den:
            raise DivisionByZero(f"denominator magnitude {abs(d)} < {min_den}")
        return self.num.eval(bindings) / d

    def eval_exact(self, bindings: Mapping[str, GR]) -> GR:
        d = self.den.eval_exact(bindings)
        if d.is_zero():
            raise DivisionByZero("exact denominator evaluates to zero")
        return self.num.eval_exact(bindings) / d

    def as_poly_in(self, name: str) -> dict[int, "ScalarExpr"]:
        """Coefficients by power of `name`; denominator must not contain it."""
        if name in self.den.symbols():
            raise ScalarError(f"denominator contains '{name}'")
        out: dict[int, dict] = {}
        for m, c in self.num.terms.items():
            d = dict(m)
            e = d.pop(name, 0)
            out.setdefault(e, {})[_mono(d)] = c
        return {e: ScalarExpr(Poly(t, reduce=False), self.den)
                for e, t in out.items()}

    def __str__(self):
        if self.den.terms == {_EMPTY: GR_ONE}:
            return str(self.num)
        ns = str(self.num)
        if len(self.num.terms) > 1:
            ns = f"({ns})"
        return f"{ns}/({self.den})"

    __repr__ = __str__


# ---------------------------------------------------------------------------
# Public helpers


def sym(name: str) -> ScalarExpr:
    return ScalarExpr(Poly.var(name))


def num(v) -> ScalarExpr:
    return ScalarExpr.of(v)


def imag_unit() -> ScalarExpr:
    return ScalarExpr(Poly.const(GR_I))


ZERO = num(0)
ONE = num(1)
I = imag_unit()
GAMMA = sym("g")
W0 = sym("w0")
MU = sym("mu")
W0M = sym("w0m")
X = sym("x")


def omega_chain(w0, n: int) -> ScalarExpr:
    """n-th member of the recursion w_n = (1 + w_{n-1})/2, closed form."""
    if n < 0:
        raise ValueError("n must be >= 0")
    w0 = ScalarExpr.of(w0)
    return ONE - (ONE - w0) / num(2 ** n)


# ---------------------------------------------------------------------------
# Numeric parameter bundles


@dataclass
class ParamConfig:
    """Concrete exponents plus optional numeric symbol bindings."""

    p: int = 1
    q: int = 1
    r: int = 0
    bindings: dict = field(default_factory=dict)

    RELATION_TOL = 1e-12

    def validate(self):
        for a, b in (("g", "w0"), ("mu", "w0m")):
            if a in self.bindings and b in self.bindings:
                res = self.bindings[a] ** 2 + self.bindings[b] ** 2 - 1.0
                if abs(res) > self.RELATION_TOL:
                    raise ScalarError(
                        f"bindings violate {a}^2 + {b}^2 = 1 by {res}")
        return self


def standard_bindings(gamma: float, mu: float | None = None,
                      **extra) -> dict[str, complex]:
    """Consistent numeric bindings derived from a gamma (and mu) value."""
    if not -1.0 < gamma < 1.0:
        raise ScalarError(f"gamma={gamma} outside (-1, 1)")
    if mu is None:
        mu = gamma
    if not -1.0 < mu < 1.0:
        raise ScalarError(f"mu={mu} outside (-1, 1)")
    w0 = math.sqrt(1.0 - gamma * gamma)
    w0m = math.sqrt(1.0 - mu * mu)
    theta = math.asin(gamma)
    b = {
        "g": gamma, "w0": w0, "mu": mu, "w0m": w0m,
        "hc": math.cos(theta / 2.0), "hs": math.sin(theta / 2.0),
        "rt2": math.sqrt(2.0),
        "s": 1.0, "s0": 1.0, "s1": 1.0, "sp": 1.0,
        "lam": 1.0, "lam0": 1.0, "lam1": 1.0, "lamp": 1.0,
    }
    b.update(extra)
    return b


def rational_bindings(gamma: Fraction, w0: Fraction,
                      **extra) -> dict[str, GR]:
    """Exact bindings from a rational Pythagorean pair g^2 + w0^2 = 1."""
    if gamma * gamma + w0 * w0 != 1:
        raise ScalarError("gamma, w0 must satisfy g^2 + w0^2 = 1 exactly")
    b = {"g": GR(gamma), "w0": GR(w0), "mu": GR(gamma), "w0m": GR(w0),
         "s": GR_ONE, "s0": GR_ONE, "s1": GR_ONE, "sp": GR_ONE,
         "lam": GR_ONE, "lam0": GR_ONE, "lam1": GR_ONE, "lamp": GR_ONE}
    for k, v in extra.items():
        b[k] = GR.of(v)
    return b
