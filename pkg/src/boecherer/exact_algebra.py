"""Exact arithmetic kernel.

Three value types live here:

* ``Fraction`` from the standard library plays the role of an exact rational.
* ``SymRat`` is an element of Q(r, alpha, beta, t)[gamma] / (gamma^2 - g), where
  ``r`` stands for q^(1/2) (so q = r^2) and ``g`` defaults to 1/(alpha*beta).
* ``Cyclo`` is an element of a cyclotomic field Q(zeta_n) in reduced form.

Rational functions are stored as ``scale * num * prod(atom**e)`` with ``num`` an
expanded Laurent polynomial and ``atom`` canonical primitive polynomials carrying
signed exponents. Sums use the least common multiple of the factored parts, so
no multivariate GCD is ever needed; equality is a zero test of a numerator.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Mapping, Tuple, Union

VARS = ("r", "alpha", "beta", "t")
NVARS = len(VARS)
_ZERO_EXP = (0,) * NVARS

Exp = Tuple[int, ...]
Poly = Dict[Exp, int]
AtomKey = Tuple[Tuple[Exp, int], ...]


class AlgebraError(ArithmeticError):
    pass


class PoleError(AlgebraError, ZeroDivisionError):
    """A denominator vanished (division by zero or a pole hit by substitution)."""


# --------------------------------------------------------------------------
# Laurent polynomials with integer coefficients, as plain dicts.


def _padd(a: Poly, b: Poly, cb: int = 1) -> Poly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + cb * c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pmul(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out: Poly = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = (ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3])
            out[e] = get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c}


def _pscale(a: Poly, c: int) -> Poly:
    if c == 1:
        return a
    return {e: v * c for e, v in a.items()}


def _pshift(a: Poly, m: Exp) -> Poly:
    return {tuple(x + y for x, y in zip(e, m)): c for e, c in a.items()}


def _content(a: Poly) -> int:
    g = 0
    for c in a.values():
        g = math.gcd(g, c)
        if g == 1:
            break
    return g


def _min_exp(a: Iterable[Exp]) -> Exp:
    it = iter(a)
    m = list(next(it))
    for e in it:
        for i in range(NVARS):
            if e[i] < m[i]:
                m[i] = e[i]
    return tuple(m)


@lru_cache(maxsize=None)
def _atom_pow(key: AtomKey, n: int) -> Poly:
    base = dict(key)
    out: Poly = {_ZERO_EXP: 1}
    for _ in range(n):
        out = _pmul(out, base)
    return out


def _expand(fac: Mapping[AtomKey, int]) -> Poly:
    out: Poly = {_ZERO_EXP: 1}
    for key, n in sorted(fac.items()):
        out = _pmul(out, _atom_pow(key, n))
    return out


def _exact_div(f: Poly, g: Poly) -> Poly | None:
    """Quotient f/g if g divides f in Z[x] (both with non-negative exponents)."""
    glead = max(g)
    gc = g[glead]
    f = dict(f)
    quot: Poly = {}
    while f:
        lead = max(f)
        e = tuple(a - b for a, b in zip(lead, glead))
        if min(e) < 0:
            return None
        c, rem = divmod(f[lead], gc)
        if rem:
            return None
        quot[e] = c
        for eg, cg in g.items():
            k = tuple(a + b for a, b in zip(e, eg))
            v = f.get(k, 0) - c * cg
            if v:
                f[k] = v
            else:
                f.pop(k, None)
    return quot


def _canonical(p: Poly) -> Tuple[Fraction, Exp, AtomKey | None]:
    """Split p = unit * x^m * atom with atom primitive, monomial-free, sign-fixed."""
    m = _min_exp(p)
    g = _content(p)
    lead = max(p)
    sign = 1 if p[lead] > 0 else -1
    unit = Fraction(sign * g)
    if len(p) == 1:
        return unit, m, None
    atom = {tuple(x - y for x, y in zip(e, m)): c // (sign * g) for e, c in p.items()}
    return unit, m, tuple(sorted(atom.items()))


def _fmt_poly(p: Poly) -> str:
    if not p:
        return "0"
    terms = []
    for e, c in sorted(p.items(), reverse=True):
        mono = []
        for name, k in zip(("q", "alpha", "beta", "t"), e):
            if k == 0:
                continue
            k = Fraction(k, 2) if name == "q" else Fraction(k)
            if k == 1:
                mono.append(name)
            elif k > 0 and k.denominator == 1:
                mono.append(f"{name}^{k}")
            else:
                mono.append(f"{name}^({k})")
        body = "*".join(mono)
        if not body:
            terms.append(str(c))
        elif c == 1:
            terms.append(body)
        elif c == -1:
            terms.append("-" + body)
        else:
            terms.append(f"{c}*{body}")
    return " + ".join(terms).replace("+ -", "- ")


# --------------------------------------------------------------------------


class RatFunc:
    """Element of Q(r, alpha, beta, t), stored as scale * num * prod(atom**e)."""

    __slots__ = ("scale", "num", "fac")

    def __init__(self, scale: Fraction, num: Poly, fac: Dict[AtomKey, int]):
        self.scale = scale
        self.num = num
        self.fac = fac

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        if c == 0:
            return cls(Fraction(0), {}, {})
        return cls(c, {_ZERO_EXP: 1}, {})

    @classmethod
    def from_poly(cls, p: Mapping[Exp, object]) -> "RatFunc":
        p = {e: Fraction(c) for e, c in p.items() if c}
        if not p:
            return cls.const(0)
        den = 1
        for c in p.values():
            den = den * c.denominator // math.gcd(den, c.denominator)
        ip = {e: int(c * den) for e, c in p.items()}
        return cls._normalized(Fraction(1, den), ip, {})

    @classmethod
    def _normalized(cls, scale: Fraction, num: Poly, fac: Dict[AtomKey, int]) -> "RatFunc":
        if not num or scale == 0:
            return cls(Fraction(0), {}, {})
        unit, m, atom = _canonical(num)
        scale = scale * unit
        fac = {k: v for k, v in fac.items() if v}
        if atom is not None and len(atom) <= 6:
            fac[atom] = fac.get(atom, 0) + 1
            if not fac[atom]:
                del fac[atom]
            num = {m: 1}
        else:
            num = {e: c // (unit.numerator) for e, c in num.items()}
        return cls(scale, num, fac)

    # predicates -----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def is_const(self) -> bool:
        return not self.fac and (not self.num or list(self.num) == [_ZERO_EXP])

    def const_value(self) -> Fraction:
        if not self.is_const():
            raise AlgebraError("value is not a rational constant")
        return self.scale if self.num else Fraction(0)

    # arithmetic -----------------------------------------------------------
    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.scale, self.num, self.fac)

    def __add__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        keys = set(self.fac) | set(other.fac)
        common = {k: min(self.fac.get(k, 0), other.fac.get(k, 0)) for k in keys}
        ra = {k: self.fac.get(k, 0) - common[k] for k in keys}
        rb = {k: other.fac.get(k, 0) - common[k] for k in keys}
        pa = _pmul(self.num, _expand({k: v for k, v in ra.items() if v}))
        pb = _pmul(other.num, _expand({k: v for k, v in rb.items() if v}))
        sa, sb = self.scale, other.scale
        den = sa.denominator * sb.denominator // math.gcd(sa.denominator, sb.denominator)
        ca = sa.numerator * (den // sa.denominator)
        cb = sb.numerator * (den // sb.denominator)
        g = math.gcd(ca, cb)
        total = _padd(_pscale(pa, ca // g), pb, cb // g)
        return RatFunc._normalized(Fraction(g, den), total, common)

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        return self + (-other)

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        if self.is_zero() or other.is_zero():
            return RatFunc.const(0)
        fac = dict(self.fac)
        for k, v in other.fac.items():
            fac[k] = fac.get(k, 0) + v
        return RatFunc._normalized(self.scale * other.scale, _pmul(self.num, other.num), fac)

    def inverse(self) -> "RatFunc":
        if self.is_zero():
            raise PoleError("division by zero")
        fac = {k: -v for k, v in self.fac.items()}
        if len(self.num) == 1:
            (e, c), = self.num.items()
            return RatFunc(1 / (self.scale * c), {tuple(-x for x in e): 1}, fac)
        unit, m, atom = _canonical(self.num)
        fac[atom] = fac.get(atom, 0) - 1
        fac = {k: v for k, v in fac.items() if v}
        return RatFunc(1 / (self.scale * unit), {tuple(-x for x in m): 1}, fac)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inverse()

    def __pow__(self, n: int) -> "RatFunc":
        if n < 0:
            return self.inverse() ** (-n)
        out = RatFunc.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # structure ------------------------------------------------------------
    def numerator_denominator(self) -> Tuple[Poly, Poly, Fraction]:
        """Return (N, D, s) with value = s * N / D and N, D ordinary Laurent polys."""
        pos = {k: v for k, v in self.fac.items() if v > 0}
        neg = {k: -v for k, v in self.fac.items() if v < 0}
        return _pmul(self.num, _expand(pos)), _expand(neg), self.scale

    def simplify(self) -> "RatFunc":
        """Cancel denominator atoms that divide the expanded numerator."""
        if self.is_zero():
            return self
        fac = {k: v for k, v in self.fac.items() if v < 0}
        num = _pmul(self.num, _expand({k: v for k, v in self.fac.items() if v > 0}))
        shift = _min_exp(num)
        base = _pshift(num, tuple(-x for x in shift))
        changed = True
        while changed and len(base) > 1:
            changed = False
            for k in [k for k, v in fac.items() if v < 0]:
                q = _exact_div(base, dict(k))
                if q is not None:
                    base = q
                    fac[k] += 1
                    if not fac[k]:
                        del fac[k]
                    changed = True
                    break
        return RatFunc._normalized(self.scale, _pshift(base, shift), fac)

    def __repr__(self) -> str:
        return f"RatFunc({self})"

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        num, den, s = self.simplify().numerator_denominator()
        ns = _fmt_poly(num)
        if s == 1:
            out = ns
        elif ns == "1":
            out = str(s)
        elif s == -1:
            out = f"-({ns})" if len(num) > 1 else f"-{ns}"
        else:
            out = f"({s})*({ns})" if len(num) > 1 else f"({s})*{ns}"
        if den != {_ZERO_EXP: 1}:
            out = f"({out})/({_fmt_poly(den)})"
        return out


def _mono(name: str, power: int = 1) -> RatFunc:
    e = [0] * NVARS
    if name == "q":
        e[0] = 2 * power
    else:
        e[VARS.index(name)] = power
    return RatFunc(Fraction(1), {tuple(e): 1}, {})


# --------------------------------------------------------------------------

Scalar = Union[int, Fraction]


def _as_ratfunc(x) -> RatFunc:
    if isinstance(x, RatFunc):
        return x
    return RatFunc.const(x)


class SymRat:
    """even + gamma*odd modulo gamma^2 = gsq (gsq = 1/(alpha*beta) by default).

    ``gsq`` is ``None`` for values in which gamma does not occur.
    """

    __slots__ = ("even", "odd", "gsq")

    def __init__(self, even, odd=None, gsq: RatFunc | None = None):
        self.even = _as_ratfunc(even)
        self.odd = _as_ratfunc(0 if odd is None else odd)
        self.gsq = gsq if not self.odd.is_zero() or gsq is not None else None

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "SymRat":
        return cls(RatFunc.const(c))

    @classmethod
    def var(cls, name: str) -> "SymRat":
        if name == "gamma":
            return cls(RatFunc.const(0), RatFunc.const(1), DEFAULT_GSQ)
        if name not in ("q",) + VARS:
            raise KeyError(f"unknown variable {name!r}")
        return cls(_mono(name))

    @classmethod
    def gamma_with(cls, gsq) -> "SymRat":
        """A square root of ``gsq`` adjoined formally."""
        return cls(RatFunc.const(0), RatFunc.const(1), _coerce(gsq).even)

    # helpers --------------------------------------------------------------
    def _relation(self, other: "SymRat") -> RatFunc | None:
        a, b = self.gsq, other.gsq
        if a is None:
            return b
        if b is None or a is b:
            return a
        if not (a - b).is_zero():
            raise AlgebraError("operands use different gamma^2 relations")
        return a

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()

    def has_gamma(self) -> bool:
        return not self.odd.is_zero()

    def is_const(self) -> bool:
        return self.odd.is_zero() and self.even.is_const()

    def to_fraction(self) -> Fraction:
        if self.has_gamma():
            raise AlgebraError("value involves gamma")
        return self.even.const_value()

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "SymRat":
        other = _coerce(other)
        g = self._relation(other)
        return SymRat(self.even + other.even, self.odd + other.odd, g)

    __radd__ = __add__

    def __neg__(self) -> "SymRat":
        return SymRat(-self.even, -self.odd, self.gsq)

    def __sub__(self, other) -> "SymRat":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "SymRat":
        return _coerce(other) - self

    def __mul__(self, other) -> "SymRat":
        other = _coerce(other)
        g = self._relation(other)
        a, b, c, d = self.even, self.odd, other.even, other.odd
        if b.is_zero() and d.is_zero():
            return SymRat(a * c, None, g)
        even = a * c
        if not b.is_zero() and not d.is_zero():
            even = even + b * d * g
        return SymRat(even, a * d + b * c, g)

    __rmul__ = __mul__

    def conjugate_gamma(self) -> "SymRat":
        return SymRat(self.even, -self.odd, self.gsq)

    def inverse(self) -> "SymRat":
        if self.is_zero():
            raise PoleError("division by zero")
        if not self.has_gamma():
            return SymRat(self.even.inverse(), None, self.gsq)
        g = self.gsq
        norm = self.even * self.even - self.odd * self.odd * g
        if norm.is_zero():
            raise PoleError("division by a zero divisor of the gamma extension")
        ninv = norm.inverse()
        return SymRat(self.even * ninv, -self.odd * ninv, g)

    def __truediv__(self, other) -> "SymRat":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "SymRat":
        return _coerce(other) * self.inverse()

    def __pow__(self, n: int) -> "SymRat":
        if n < 0:
            return self.inverse() ** (-n)
        if not self.has_gamma():
            return SymRat(self.even ** n, None, self.gsq)
        out = SymRat.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return (self - other).is_zero()

    def __ne__(self, other) -> bool:
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    __hash__ = None  # equality is semantic, not structural

    def simplify(self) -> "SymRat":
        return SymRat(self.even.simplify(), self.odd.simplify(), self.gsq)

    def __str__(self) -> str:
        if not self.has_gamma():
            return str(self.even)
        if self.even.is_zero():
            return f"gamma*({self.odd})"
        return f"{self.even} + gamma*({self.odd})"

    def __repr__(self) -> str:
        return f"SymRat({self})"

    def __complex__(self) -> complex:
        return complex(self.to_fraction())

    def __float__(self) -> float:
        return float(self.to_fraction())


DEFAULT_GSQ = _mono("alpha", -1) * _mono("beta", -1)


def _coerce(x) -> SymRat:
    if isinstance(x, SymRat):
        return x
    if isinstance(x, (int, Fraction)):
        return SymRat.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact value")


def symbols() -> Tuple[SymRat, SymRat, SymRat, SymRat, SymRat]:
    """(q, r, alpha, beta, gamma) with r^2 = q and gamma^2 = 1/(alpha*beta)."""
    return (SymRat.var("q"), SymRat.var("r"), SymRat.var("alpha"),
            SymRat.var("beta"), SymRat.var("gamma"))


def symrat_arith(a, op: str, b):
    """Dispatch helper: op in {add, sub, mul, div, eq}."""
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown operation {op!r}")


# --------------------------------------------------------------------------
# substitution


def _rational_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    n, d = math.isqrt(c.numerator), math.isqrt(c.denominator)
    if n * n == c.numerator and d * d == c.denominator:
        return Fraction(n, d)
    return None


class _Binder:
    def __init__(self, bindings: Mapping[str, object]):
        self.vals: Dict[int, RatFunc] = {}
        self.q_even: Fraction | None = None
        for name, v in bindings.items():
            if name == "gamma":
                continue
            if name not in ("q",) + VARS:
                raise KeyError(f"unknown variable {name!r}")
            sv = _coerce(v)
            if sv.has_gamma():
                raise AlgebraError(f"binding for {name} may not involve gamma")
            if name == "q":
                if "r" in bindings:
                    raise AlgebraError("bind q or r, not both")
                c = sv.even
                if c.is_const():
                    root = _rational_sqrt(c.const_value())
                    if root is not None:
                        self.vals[0] = RatFunc.const(root)
                    else:
                        self.q_even = c.const_value()
                    continue
                raise AlgebraError("q may only be bound to a rational; bind r for symbolic values")
            self.vals[VARS.index(name)] = sv.even
        self._powcache: Dict[Tuple[int, int], RatFunc] = {}

    def _power(self, i: int, k: int) -> RatFunc:
        key = (i, k)
        hit = self._powcache.get(key)
        if hit is None:
            hit = self.vals[i] ** k
            self._powcache[key] = hit
        return hit

    def poly(self, p: Poly) -> RatFunc:
        monomial_like = all(len(v.num) <= 1 and not v.fac for v in self.vals.values())
        if monomial_like:
            out: Dict[Exp, Fraction] = {}
            for e, c in p.items():
                coef = Fraction(c)
                ne = list(e)
                for i in range(NVARS):
                    if i == 0 and self.q_even is not None and e[0]:
                        if e[0] % 2:
                            raise AlgebraError(
                                "odd power of q^(1/2) with a non-square q; bind r instead")
                        coef *= self.q_even ** (e[0] // 2)
                        ne[0] = 0
                    elif i in self.vals and e[i]:
                        v = self.vals[i]
                        if v.is_zero():
                            if e[i] < 0:
                                raise PoleError(f"{VARS[i]} bound to 0 under a negative power")
                            coef = Fraction(0)
                            break
                        (ve, vc), = v.num.items()
                        coef *= (v.scale * vc) ** e[i]
                        ne[i] = 0
                        for j in range(NVARS):
                            ne[j] += ve[j] * e[i]
                if coef:
                    k = tuple(ne)
                    out[k] = out.get(k, 0) + coef
            return RatFunc.from_poly(out)
        total = RatFunc.const(0)
        for e, c in p.items():
            term = RatFunc.const(c)
            rest = list(e)
            for i in range(NVARS):
                if i in self.vals and e[i]:
                    term = term * self._power(i, e[i])
                    rest[i] = 0
            if self.q_even is not None and rest[0]:
                if rest[0] % 2:
                    raise AlgebraError("odd power of q^(1/2) with a non-square q; bind r instead")
                term = term * RatFunc.const(self.q_even ** (rest[0] // 2))
                rest[0] = 0
            term = term * RatFunc(Fraction(1), {tuple(rest): 1}, {})
            total = total + term
        return total

    def ratfunc(self, x: RatFunc) -> RatFunc:
        if x.is_zero():
            return x
        out = RatFunc.const(x.scale) * self.poly(x.num)
        for key, n in x.fac.items():
            v = self.poly(dict(key))
            if v.is_zero():
                if n < 0:
                    raise PoleError(f"denominator {_fmt_poly(dict(key))} vanishes under substitution")
                return RatFunc.const(0)
            out = out * v ** n
        return out


def substitute(x, bindings: Mapping[str, object]) -> SymRat:
    """Evaluate ``x`` after binding variables (q, r, alpha, beta, t, gamma).

    Binding ``q`` to a non-square rational is allowed only when every power of
    q^(1/2) that occurs is even. ``gamma`` may be bound only to a value whose
    square equals the substituted gamma^2 relation.
    """
    x = _coerce(x)
    b = _Binder(bindings)
    even = b.ratfunc(x.even)
    odd = b.ratfunc(x.odd)
    gsq = b.ratfunc(x.gsq) if x.gsq is not None else None
    if "gamma" in bindings:
        g = _coerce(bindings["gamma"])
        if g.has_gamma():
            raise AlgebraError("gamma binding must be gamma-free")
        if gsq is not None and not (g.even * g.even - gsq).is_zero():
            raise AlgebraError("gamma binding inconsistent with gamma^2 = 1/(alpha*beta)")
        return SymRat(even + g.even * odd)
    return SymRat(even, odd, gsq)


# --------------------------------------------------------------------------
# cyclotomic numbers


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> Tuple[int, ...]:
    """Integer coefficients (low degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    num = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            num = _int_poly_divexact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _int_poly_divexact(f, g):
    f = list(f)
    dg = len(g) - 1
    q = [0] * (len(f) - dg)
    for i in range(len(f) - 1, dg - 1, -1):
        c = f[i] // g[-1]
        q[i - dg] = c
        if c:
            for j, gj in enumerate(g):
                f[i - dg + j] -= c * gj
    assert not any(f[:dg]), "inexact cyclotomic division"
    return q


def _reduce_cyclo(n: int, coeffs) -> Tuple[Fraction, ...]:
    phi = cyclotomic_poly(n)
    deg = len(phi) - 1
    c = [Fraction(x) for x in coeffs]
    for i in range(len(c) - 1, deg - 1, -1):
        v = c[i]
        if v:
            for j in range(deg):
                c[i - deg + j] -= v * phi[j]
            c[i] = Fraction(0)
    c = c[:deg] + [Fraction(0)] * max(0, deg - len(c))
    return tuple(c)


class Cyclo:
    """Exact element sum(c_i * zeta_n^i) of Q(zeta_n), reduced mod Phi_n."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable = ()):
        self.order = order
        self.coeffs = _reduce_cyclo(order, list(coeffs))

    @classmethod
    def root(cls, n: int, k: int = 1) -> "Cyclo":
        c = [0] * n
        c[k % n] = 1
        return cls(n, c)

    @classmethod
    def rational(cls, x, n: int = 1) -> "Cyclo":
        return cls(n, [x])

    def lift(self, n: int) -> "Cyclo":
        if n % self.order:
            raise ValueError(f"cannot embed order {self.order} into order {n}")
        step = n // self.order
        c = [Fraction(0)] * n
        for i, v in enumerate(self.coeffs):
            c[i * step] += v
        return Cyclo(n, c)

    def _align(self, other) -> Tuple["Cyclo", "Cyclo"]:
        if not isinstance(other, Cyclo):
            other = Cyclo.rational(other)
        n = self.order * other.order // math.gcd(self.order, other.order)
        a = self if self.order == n else self.lift(n)
        b = other if other.order == n else other.lift(n)
        return a, b

    def __add__(self, other) -> "Cyclo":
        a, b = self._align(other)
        return Cyclo(a.order, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.order, [-x for x in self.coeffs])

    def __sub__(self, other) -> "Cyclo":
        return self + (-other if isinstance(other, Cyclo) else -Fraction(other))

    def __mul__(self, other) -> "Cyclo":
        a, b = self._align(other)
        prod = [Fraction(0)] * (2 * len(a.coeffs))
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] += x * y
        return Cyclo(a.order, prod)

    __rmul__ = __mul__

    def conjugate(self) -> "Cyclo":
        n = self.order
        c = [Fraction(0)] * n
        for i, v in enumerate(self.coeffs):
            c[(-i) % n] += v
        return Cyclo(n, c)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, (Cyclo, int, Fraction)):
            return NotImplemented
        a, b = self._align(other)
        return a.coeffs == b.coeffs

    def __hash__(self) -> int:
        # hash in the smallest field containing the value is awkward; use the embedding
        z = complex(self)
        return hash((round(z.real, 9), round(z.imag, 9)))

    def rational_value(self) -> Fraction:
        if any(self.coeffs[1:]):
            raise AlgebraError("cyclotomic value is not rational")
        return self.coeffs[0]

    def __complex__(self) -> complex:
        n = self.order
        return sum((complex(v) * cmath.exp(2j * math.pi * i / n)
                    for i, v in enumerate(self.coeffs) if v), 0j)

    def __repr__(self) -> str:
        terms = [f"{v}*z^{i}" if i else str(v) for i, v in enumerate(self.coeffs) if v]
        return f"Cyclo({self.order}: {' + '.join(terms) or '0'})"
