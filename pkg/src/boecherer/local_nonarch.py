"""Non-archimedean local factors for GSp(4).

Everything here is a plain function of Satake data. Values are ``SymRat`` in
symbolic or exact mode and Python ``complex`` in numeric mode; the Macdonald
formula is written once against the arithmetic operators and serves both.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .exact_algebra import SymRat, AlgebraError, PoleError, substitute, symbols

Value = Union[SymRat, complex]
SINGULAR_RADIUS = 1e-8


class LocalError(ValueError):
    pass


class InternalIdentityError(AssertionError):
    """A symbolic identity that must hold came out false (signals a regression)."""


# --------------------------------------------------------------------------
# representation data

@dataclass(frozen=True)
class ReprClass:
    tag: str
    generic: bool
    dim_P1: int
    dim_K: int


_TABLE = {
    "I": (True, 4, 1), "IIa": (True, 1, 0), "IIb": (False, 3, 1),
    "IIIa": (True, 2, 0), "IIIb": (False, 2, 1),
    "IVa": (True, 0, 0), "IVb": (False, 2, 0), "IVc": (False, 1, 0), "IVd": (False, 1, 1),
    "Va": (True, 0, 0), "Vb": (False, 1, 0), "Vc": (False, 1, 0), "Vd": (False, 2, 1),
    "VIa": (True, 1, 0), "VIb": (False, 1, 0), "VIc": (False, 0, 0), "VId": (False, 2, 1),
}

REPR_CLASSES: Dict[str, ReprClass] = {t: ReprClass(t, *v) for t, v in _TABLE.items()}


def repr_class(tag: Union[str, ReprClass]) -> ReprClass:
    if isinstance(tag, ReprClass):
        return tag
    try:
        return REPR_CLASSES[tag]
    except KeyError:
        raise LocalError(f"unknown representation type {tag!r}") from None


@dataclass(frozen=True)
class CosetIndex:
    ell: int
    m: int

    def __post_init__(self):
        if self.ell < 0 or self.m < 0:
            raise LocalError("coset index entries must be non-negative")


@dataclass(frozen=True)
class P1Vector:
    repr: ReprClass
    index: int = 1

    def __post_init__(self):
        limit = 4 if self.repr.tag == "I" else 2 if self.repr.tag == "IIIa" else 1
        if not 1 <= self.index <= limit:
            raise LocalError(f"no P1-vector {self.index} for type {self.repr.tag}")


def p1_vector(tag: str, index: int = 1) -> P1Vector:
    return P1Vector(repr_class(tag), index)


@dataclass
class LocalFactorResult:
    j0: SymRat
    j: SymRat
    repr: ReprClass
    vector: Optional[P1Vector]
    l: Optional[int]


# --------------------------------------------------------------------------
# Satake parameters

@dataclass
class SatakeParams:
    """(q, alpha, beta, gamma) with alpha*beta*gamma^2 = 1.

    ``r`` is q^(1/2). In exact mode with a non-square numeric q, ``q`` and ``r``
    stay symbolic and ``q_value`` is substituted at the end where possible.
    """

    q: Value
    r: Value
    alpha: Value
    beta: Value
    gamma: Value
    mode: str = "symbolic"
    q_value: Optional[Fraction] = None
    _cache: Dict[Tuple[int, int], Value] = field(default_factory=dict, repr=False, compare=False)

    @classmethod
    def symbolic(cls) -> "SatakeParams":
        q, r, a, b, g = symbols()
        return cls(q, r, a, b, g)

    @classmethod
    def from_symrat(cls, alpha, beta, gamma, r=None) -> "SatakeParams":
        r = SymRat.var("r") if r is None else SymRat.const(r) if not isinstance(r, SymRat) else r
        p = cls(r * r, r, _sym(alpha), _sym(beta), _sym(gamma))
        if p.alpha * p.beta * p.gamma * p.gamma != 1:
            raise LocalError("Satake parameters violate alpha*beta*gamma^2 = 1")
        return p

    @classmethod
    def exact(cls, q, alpha, beta, gamma=None) -> "SatakeParams":
        """Rational parameters; gamma defaults to a formal root of 1/(alpha*beta)."""
        q, alpha, beta = Fraction(q), Fraction(alpha), Fraction(beta)
        _check_singular_exact(alpha, beta)
        root = _rational_sqrt(q)
        if root is not None:
            qq, rr, qv = SymRat.const(q), SymRat.const(root), None
        else:
            rr = SymRat.var("r")
            qq, qv = rr * rr, q
        if gamma is None:
            g = SymRat.gamma_with(1 / (alpha * beta))
        else:
            gamma = Fraction(gamma)
            if gamma * gamma * alpha * beta != 1:
                raise LocalError("gamma^2 must equal 1/(alpha*beta)")
            g = SymRat.const(gamma)
        return cls(qq, rr, SymRat.const(alpha), SymRat.const(beta), g, "exact", qv)

    @classmethod
    def numeric(cls, q, alpha: complex, beta: complex, gamma: complex | None = None) -> "SatakeParams":
        alpha, beta = complex(alpha), complex(beta)
        if gamma is None:
            gamma = (alpha * beta) ** -0.5
        gamma = complex(gamma)
        if abs(alpha * beta * gamma * gamma - 1) > 1e-12:
            raise LocalError("Satake parameters violate alpha*beta*gamma^2 = 1")
        for lhs, rhs, name in ((alpha, beta, "alpha = beta"), (alpha, 1, "alpha = 1"),
                               (beta, 1, "beta = 1"), (alpha * beta, 1, "alpha*beta = 1")):
            if abs(lhs - rhs) < SINGULAR_RADIUS:
                raise PoleError(f"parameters within {SINGULAR_RADIUS} of the singular locus ({name})")
        q = float(q)
        return cls(complex(q), complex(math.sqrt(q)), alpha, beta, gamma, "numeric")

    def finish(self, x: Value) -> Value:
        """Substitute a pending non-square numeric q when only integral q-powers occur."""
        if self.q_value is None:
            return x
        try:
            return substitute(x, {"q": self.q_value})
        except AlgebraError:
            return x

    def weyl_swap(self) -> "SatakeParams":
        """alpha <-> beta."""
        return SatakeParams(self.q, self.r, self.beta, self.alpha, self.gamma, self.mode, self.q_value)

    def weyl_invert_beta(self) -> "SatakeParams":
        """(beta, gamma) -> (1/beta, beta*gamma)."""
        return SatakeParams(self.q, self.r, self.alpha, 1 / self.beta, self.beta * self.gamma,
                            self.mode, self.q_value)


def _sym(x) -> SymRat:
    return x if isinstance(x, SymRat) else SymRat.const(Fraction(x))


def _rational_sqrt(c: Fraction) -> Optional[Fraction]:
    if c <= 0:
        return None
    n, d = math.isqrt(c.numerator), math.isqrt(c.denominator)
    if n * n == c.numerator and d * d == c.denominator:
        return Fraction(n, d)
    return None


def _check_singular_exact(alpha: Fraction, beta: Fraction) -> None:
    for bad, name in ((alpha == beta, "alpha = beta"), (alpha == 1, "alpha = 1"),
                      (beta == 1, "beta = 1"), (alpha * beta == 1, "alpha*beta = 1"),
                      (alpha == 0 or beta == 0, "zero parameter")):
        if bad:
            raise PoleError(f"Satake parameters on the singular locus ({name})")


# --------------------------------------------------------------------------
# Macdonald's formula

def _macdonald(p: SatakeParams, ell: int, m: int) -> Value:
    key = (ell, m)
    hit = p._cache.get(key)
    if hit is not None:
        return hit
    q, a, b, g = p.q, p.alpha, p.beta, p.gamma
    ia, ib = 1 / a, 1 / b
    iq = 1 / q

    def F(x):
        return (1 - iq * x) / (1 - x)

    A = (
        F(ia * b) * F(ib) * F(ia * ib) * F(ia),
        F(a * ib) * F(ia) * F(ia * ib) * F(ib),
        F(ia * ib) * F(b) * F(ia * b) * F(ia),
        F(a * b) * F(ia) * F(ia * b) * F(b),
        F(ia * ib) * F(a) * F(a * ib) * F(ib),
        F(a * b) * F(ib) * F(a * ib) * F(a),
        F(ia * b) * F(a) * F(a * b) * F(b),
        F(a * ib) * F(b) * F(a * b) * F(a),
    )
    B = (
        a ** (2 * m + ell) * b ** (m + ell),
        a ** (m + ell) * b ** (2 * m + ell),
        a ** (2 * m + ell) * b ** m,
        a ** (m + ell),
        a ** m * b ** (2 * m + ell),
        b ** (m + ell),
        a ** m,
        b ** m,
    )
    total = A[0] * B[0]
    for Ai, Bi in zip(A[1:], B[1:]):
        total = total + Ai * Bi
    norm = 1 + 2 * iq + 2 * iq ** 2 + 2 * iq ** 3 + iq ** 4
    value = p.r ** (-(4 * m + 3 * ell)) / norm * g ** (2 * m + ell) * total
    p._cache[key] = value
    return value


def macdonald_phi0(p: SatakeParams, c: Union[CosetIndex, Tuple[int, int]]) -> Value:
    """Zonal spherical function at h(ell, m), normalized to 1 at the identity."""
    c = c if isinstance(c, CosetIndex) else CosetIndex(*c)
    return p.finish(_macdonald(p, c.ell, c.m))


# --------------------------------------------------------------------------
# double cosets

INF = math.inf


def valuation(x, p: int) -> float:
    """p-adic valuation of a rational; v(0) = +inf."""
    x = Fraction(x)
    if x == 0:
        return INF
    v = 0
    n, d = x.numerator, x.denominator
    while n % p == 0:
        n //= p
        v += 1
    while d % p == 0:
        d //= p
        v -= 1
    return v


def _as_rational(x, p: int) -> Fraction:
    if isinstance(x, tuple):
        unit, v = x
        if Fraction(unit) == 0:
            return Fraction(0)
        return Fraction(unit) * Fraction(p) ** v
    return Fraction(x)


def classify_double_coset(x, y, z, u, p: int) -> CosetIndex:
    """(ell, m) with n(X) diag(1,u,u,1) in Z G(o) h(ell,m) G(o).

    Scalars are rationals or (unit, valuation) pairs; v(u) must be 0 or 1.
    """
    x, y, z, u = (_as_rational(w, p) for w in (x, y, z, u))
    v = lambda w: valuation(w, p)  # noqa: E731
    vu = v(u)
    if vu not in (0, 1):
        raise LocalError("v(u) must be 0 or 1")
    n0 = min(0, v(u * x), v(y), v(z))
    big_m = min(0, vu + v(x * z - y * y), v(u * x), v(u * y), v(z))
    ell = vu + 2 * (n0 - big_m)
    m = big_m - 2 * n0
    return CosetIndex(int(ell), int(m))


# --------------------------------------------------------------------------
# spherical vector, ramified K

def j0_spherical_ramified(p: SatakeParams, which: str) -> Value:
    """J_0 of the spherical vector against the trivial torus rep or against t_K.

    The proof of these formulas splits on an auxiliary b' in {0, 2}; only the
    final b'-independent combinations are implemented.
    """
    q = p.q
    phi = lambda ell, m: _macdonald(p, ell, m)  # noqa: E731
    if which == "trivial_torus_rep":
        out = 1 - phi(0, 1) - q * q * phi(0, 2) + q * q * phi(2, 1)
    elif which == "t_K":
        out = q * phi(1, 0) - (q * q + q) * phi(1, 1) + q * q * phi(3, 0)
    else:
        raise LocalError(f"unknown torus element {which!r}")
    return p.finish(out)


def norm_const_ramified(p: SatakeParams, l: int) -> Value:
    if l not in (1, -1):
        raise LocalError("l must be +1 or -1")
    q, r, a, b, g = p.q, p.r, p.alpha, p.beta, p.gamma
    iq, ir = 1 / q, 1 / r
    num = (1 + iq) ** 2 * (1 + iq ** 2)
    den = ((1 + l * g * a * ir) * (1 + l * g * ir) * (1 + l * (1 / g) * ir) * (1 + l * g * b * ir)
           * (1 - a * iq) * (1 - iq / a) * (1 - b * iq) * (1 - iq / b))
    return p.finish(num / den)


def iib_params() -> SatakeParams:
    """alpha = t q^(-1/2), beta = t q^(1/2), gamma = 1/t."""
    r, t = SymRat.var("r"), SymRat.var("t")
    return SatakeParams.from_symrat(t / r, t * r, 1 / t)


def j_spherical_ramified(p: Optional[SatakeParams], repr: str, l: int = 1) -> Value:
    """C * (J_0(triv) + l J_0(t_K)) for type I, 2 C (J_0(triv) + J_0(t_K)) for IIb."""
    if repr == "I":
        if p is None:
            p = SatakeParams.symbolic()
        scale = 1
    elif repr == "IIb":
        if p is None:
            p = iib_params()
        if l != 1:
            raise LocalError("type IIb forces l = +1")
        scale = 2
    else:
        raise LocalError(f"spherical ramified factor not available for {repr!r}")
    c = norm_const_ramified(p, l)
    j0 = j0_spherical_ramified(p, "trivial_torus_rep") + l * j0_spherical_ramified(p, "t_K")
    return p.finish(scale * c * j0)


# --------------------------------------------------------------------------
# P1-fixed vectors, unramified K, trivial Lambda

def lambda_mu(v: P1Vector, q: Optional[Value] = None) -> Tuple[Value, Value]:
    if q is None:
        q = SymRat.var("q")
    tag, i = v.repr.tag, v.index
    if tag == "I":
        table = {
            1: ((q - 1) * q * q, (q - 1) * q * q),
            2: ((q - 1) * q * q / (q + 1), (q - 1) * q),
            3: ((q - 1) * q * q / (q + 1), 0 * q),
            4: (0 * q, 0 * q),
        }
        return table[i]
    if tag == "IIIa":
        return (-q * q / (q + 1), 0 * q)
    if tag == "VIb":
        return (-q * q, q)
    if tag in ("IIa", "Vb", "Vc", "VIa"):
        return ((q - 1) * q * q / (q + 1), -q)
    raise LocalError(f"no matrix-coefficient data for type {tag}")


def j0_p1(v: P1Vector, q: Optional[Value] = None) -> Value:
    if q is None:
        q = SymRat.var("q")
    lam, mu = lambda_mu(v, q)
    out = 1 - (q + 1) / q ** 3 * lam + mu / q ** 2
    return out.simplify() if isinstance(out, SymRat) else out


def _local_l(params, q, s: Fraction) -> Value:
    """q^(-s) for s in (1/2)Z, expressed via r = q^(1/2) when needed."""
    s = Fraction(s)
    if (2 * s).denominator != 1:
        raise LocalError("only s in (1/2)Z is supported")
    return params.r ** (-int(2 * s))


def spin_adjoint_factors(p: SatakeParams, s) -> Tuple[Value, Value, Value, Value]:
    """(spin, spin twisted by the unramified quadratic character, adjoint, standard)."""
    x = _local_l(p, p.q, s)
    a, b, g = p.alpha, p.beta, p.gamma
    ia, ib = 1 / a, 1 / b

    def euler(params):
        out = 1
        for y in params:
            out = out * (1 - y * x)
        return 1 / out

    spin_params = (g, a * g, b * g, a * b * g)
    spin = euler(spin_params)
    spin_tw = euler(tuple(-y for y in spin_params))
    adjoint = euler((a, ia, b, ib, a * b, ia * ib, a * ib, ia * b, 1, 1))
    standard = euler((1, a, ia, b, ib))
    return tuple(p.finish(v) for v in (spin, spin_tw, adjoint, standard))


def standard_l_one(p: SatakeParams) -> Value:
    return spin_adjoint_factors(p, 1)[3]


def m_pi_type_i(p: SatakeParams) -> Value:
    """L(1,Ad) L(1,chi_K/F) / (zeta(2) zeta(4) L(1/2, pi x AI(1))) for unramified K."""
    spin, spin_tw, _, _ = spin_adjoint_factors(p, Fraction(1, 2))
    _, _, adjoint, _ = spin_adjoint_factors(p, 1)
    iq = 1 / p.q
    l_chi = 1 / (1 + iq)
    zeta2 = 1 / (1 - iq ** 2)
    zeta4 = 1 / (1 - iq ** 4)
    return p.finish(adjoint * l_chi / (zeta2 * zeta4 * spin * spin_tw))


def j_p1(v: P1Vector, p: Optional[SatakeParams] = None) -> LocalFactorResult:
    if p is None:
        p = SatakeParams.symbolic()
    q = p.q
    tag = v.repr.tag
    j0 = p.finish(j0_p1(v, q))
    iq = 1 / q
    if tag == "I":
        target = standard_l_one(p) * (1 - iq ** 4)
        m_pi = m_pi_type_i(p)
        if m_pi != target:
            raise InternalIdentityError("M(pi) != L(1, pi, Std)(1 - q^-4) for type I")
        j = m_pi * j0
    elif tag in ("IIIa", "VIb"):
        # ratio J/J_0 read off the published table; not re-derived
        j = (1 + iq ** 2) * j0
    elif tag in ("IIa", "Vb", "Vc", "VIa"):
        j = 0 * j0
    else:
        raise LocalError(f"no P1 local factor for type {tag}")
    if isinstance(j, SymRat):
        j = j.simplify()
    return LocalFactorResult(j0=j0, j=p.finish(j), repr=v.repr, vector=v, l=None)


def expected_p1_table(q: Optional[Value] = None, p: Optional[SatakeParams] = None):
    """Reference (J_0, J) values per row, used by reports and tests."""
    if p is None:
        p = SatakeParams.symbolic()
    if q is None:
        q = p.q
    iq = 1 / q
    std = standard_l_one(p) * (1 - iq ** 4)
    return {
        ("I", 1): (iq, iq * std),
        ("I", 2): (1 + 0 * q, std),
        ("I", 3): (iq, iq * std),
        ("I", 4): (1 + 0 * q, std),
        ("IIIa", 1): (1 + iq, (1 + iq ** 2) * (1 + iq)),
        ("IIIa", 2): (1 + iq, (1 + iq ** 2) * (1 + iq)),
        ("VIb", 1): (2 * (1 + iq), 2 * (1 + iq ** 2) * (1 + iq)),
        ("IIa", 1): (0 * q, 0 * q),
        ("Vb", 1): (0 * q, 0 * q),
        ("Vc", 1): (0 * q, 0 * q),
        ("VIa", 1): (0 * q, 0 * q),
    }


def jp_global(repr: Union[str, ReprClass], p: int, *, oldform: Optional[str] = None,
              satake: Optional[SatakeParams] = None):
    """Local factor J_p at a prime p dividing the level.

    ``oldform`` in {"bd", "ac"} selects the type I branches for oldforms; this
    needs ``satake`` for pi_p.
    """
    rc = repr_class(repr)
    if p % 2 == 0:
        raise LocalError("p = 2 excluded (the level must be odd)")
    if p < 3 or any(p % k == 0 for k in range(3, math.isqrt(p) + 1, 2)):
        raise LocalError(f"{p} is not an odd prime")
    pinv = Fraction(1, p)
    if oldform is not None:
        if rc.tag != "I" or satake is None:
            raise LocalError("oldform branches need type I and Satake data")
        value = standard_l_one(satake) * (1 - satake.q ** -4)
        if oldform == "ac":
            value = value / satake.q
        elif oldform != "bd":
            raise LocalError("oldform must be 'bd' or 'ac'")
        value = satake.finish(value)
        if isinstance(value, SymRat) and value.is_const():
            return value.to_fraction()
        return value
    if rc.tag == "IIIa":
        return (1 + pinv ** 2) * (1 + pinv)
    if rc.tag == "VIb":
        return 2 * (1 + pinv ** 2) * (1 + pinv)
    return Fraction(0)
