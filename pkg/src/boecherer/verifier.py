"""Global assembly: Bessel sums, explicit constants, the SK ratio test and the check suite."""
from __future__ import annotations

import configparser
import itertools
import math
import random
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Union

import mpmath

from . import local_nonarch as ln
from .exact_algebra import Cyclo
from .local_arch import arch_quadrature_check, gamma_factors
from .lvalues import twisted_central_value
from .modforms import SiegelCoeffTable, SKLift, ingest_siegel_table
from .quadfields import (ClassCharacter, QuadForm, characters, class_group, compose, inverse_form,
                         dirichlet_l_one, fundamental_discriminants, kronecker, w_of)
from .report import VerificationReport, exact_report


class VerifierError(ValueError):
    pass


class MissingCoefficient(VerifierError):
    pass


class ConfigError(VerifierError):
    def __init__(self, msg: str, lineno: Optional[int] = None):
        loc = f"line {lineno}: " if lineno is not None else ""
        super().__init__(loc + msg)
        self.lineno = lineno


# --------------------------------------------------------------------------
# Bessel sums

@dataclass
class BesselSum:
    f: object
    disc: int
    character: ClassCharacter
    value: Cyclo

    @property
    def embedding(self) -> complex:
        return complex(self.value)


def _coefficient(f, form: QuadForm) -> Fraction:
    try:
        return Fraction(f(tuple(form)))
    except KeyError:
        raise MissingCoefficient(f"missing Fourier coefficient for reduced triple {tuple(form)}") from None


def bessel_sum(f: Union[SKLift, SiegelCoeffTable, Callable], d: int, char: Optional[ClassCharacter] = None) -> BesselSum:
    """R(f, K, Lambda) = sum over classes c of a(f, S_c) Lambda^{-1}(c), exactly."""
    G = class_group(d)
    if char is None:
        char = characters(G)[0]
    total = Cyclo.rational(0, G.exponent)
    for form in G.classes:
        a = _coefficient(f, form)
        if a:
            total = total + char(form).conjugate() * a
    return BesselSum(f, d, char, total)


def boecherer_constant(k: int) -> mpmath.mpf:
    """2^(4k-6) pi^(2k+1) / (2k-2)!."""
    if k < 3:
        raise VerifierError("k must be at least 3")
    with mpmath.workdps(50):
        return mpmath.mpf(2) ** (4 * k - 6) * mpmath.pi ** (2 * k + 1) / mpmath.factorial(2 * k - 2)


def boecherer_constant_str(k: int) -> str:
    return f"2^{4 * k - 6}*pi^{2 * k + 1}/{2 * k - 2}!"


def _prime_factors(n: int) -> List[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            n //= p
            if n % p == 0:
                raise VerifierError("level must be squarefree")
        p += 1
    if n > 1:
        out.append(n)
    return out


def tmain_rhs(k: int, N: int, repr_by_prime: Dict[int, str], d: int, lvalue_ratio,
              weak_yoshida: bool = False):
    """2^(2k-s) w(K)^2 |d|^(k-1) lvalue_ratio prod_{p | N} J_p, s = 7 for weak Yoshida lifts else 6."""
    if N < 1 or N % 2 == 0:
        raise VerifierError("N must be odd")
    primes = _prime_factors(N)
    if sorted(repr_by_prime) != primes:
        raise VerifierError(f"representation types needed exactly for the primes {primes}")
    for p in primes:
        if kronecker(d, p) != -1:
            raise VerifierError(f"hypothesis (d/p) = -1 fails at p = {p}")
    s = 7 if weak_yoshida else 6
    local = Fraction(1)
    for p in primes:
        local *= ln.jp_global(repr_by_prime[p], p)
    with mpmath.workdps(50):
        return (mpmath.mpf(2) ** (2 * k - s) * w_of(d) ** 2 * mpmath.mpf(abs(d)) ** (k - 1)
                * mpmath.mpf(lvalue_ratio) * mpmath.mpf(local.numerator) / local.denominator)


# --------------------------------------------------------------------------
# Saito-Kurokawa ratio test

@lru_cache(maxsize=8)
def sk_lift(k: int, dmax: int) -> SKLift:
    return SKLift.build(k, dmax, n_source=1500)


@lru_cache(maxsize=256)
def _central(k: int, d: int, afe_tol: float):
    return twisted_central_value(sk_lift(k, 0).source, d, afe_tol)


def _sk_side(k: int, d: int, afe_tol: float):
    cv = _central(k, d, afe_tol)
    l1 = dirichlet_l_one(d).numeric
    with mpmath.workdps(50):
        val = w_of(d) ** 2 * mpmath.mpf(-d) ** (k - mpmath.mpf(1) / 2) * cv.value * l1 ** 2
    return val, cv


def sk_ratio_check(k: int, d1: int, d2: int, tol: float = 1e-6, afe_tol: float = 1e-8) -> VerificationReport:
    """|R(f,K1,1)|^2 / |R(f,K2,1)|^2 against the matching ratio of L-value expressions."""
    if k not in (10, 12):
        raise VerifierError("SK ratio test supports k = 10 and k = 12")
    F = sk_lift(k, max(-d1, -d2))
    r1 = bessel_sum(F, d1).value.rational_value()
    r2 = bessel_sum(F, d2).value.rational_value()
    params = {"k": k, "d1": d1, "d2": d2, "afe_tol": afe_tol, "R1": str(r1), "R2": str(r2)}
    s1, cv1 = _sk_side(k, d1, afe_tol)
    s2, cv2 = _sk_side(k, d2, afe_tol)
    params.update(N1=cv1.coefficients_used, N2=cv2.coefficients_used)
    small = [d for d, cv in ((d1, cv1), (d2, cv2)) if abs(cv.value) < 10 * tol]
    if small or r2 == 0:
        params["degenerate"] = f"central value below 10*tol for d in {small}" if small else "R(d2) = 0"
        return VerificationReport("sk-ratio", str(r1), str(r2), 0.0, tol, True, params)
    lhs = (r1 / r2) ** 2
    with mpmath.workdps(50):
        rhs = s1 / s2
        lhs_mp = mpmath.mpf(lhs.numerator) / lhs.denominator
        rel = abs(lhs_mp - rhs) / abs(rhs)
    return VerificationReport("sk-ratio", f"{lhs} ~ {mpmath.nstr(lhs_mp, 30)}", mpmath.nstr(rhs, 30),
                              float(rel), tol, bool(rel < tol), params)


# --------------------------------------------------------------------------
# individual suite checks (one per acceptance criterion family)

def check_local_unram(opts=None) -> List[VerificationReport]:
    out = []
    for l in (1, -1):
        t = time.time()
        v = ln.j_spherical_ramified(None, "I", l)
        out.append(exact_report("local-unram", v, 1, {"type": "I", "l": l, "seconds": round(time.time() - t, 3)}))
    t = time.time()
    v = ln.j_spherical_ramified(None, "IIb", 1)
    out.append(exact_report("local-unram", v, 2, {"type": "IIb", "seconds": round(time.time() - t, 3)}))
    return out


def check_local_table(opts=None) -> List[VerificationReport]:
    out = []
    expected = ln.expected_p1_table()
    for (tag, idx), (j0_exp, j_exp) in expected.items():
        res = ln.j_p1(ln.p1_vector(tag, idx))
        ok = res.j0 == j0_exp and res.j == j_exp
        out.append(VerificationReport("local-table", f"J0={res.j0}; J={res.j}", f"J0={j0_exp}; J={j_exp}",
                                      0.0 if ok else 1.0, 0.0, ok, {"type": tag, "index": idx}))
    p = ln.SatakeParams.symbolic()
    m_pi = ln.m_pi_type_i(p)
    target = ln.standard_l_one(p) * (1 - p.q ** -4)
    out.append(exact_report("local-table", m_pi, target, {"identity": "M(pi) = L(1,pi,Std)(1-q^-4)"}))
    return out


def macdonald_oracle(r: Fraction, alpha: Fraction, beta: Fraction, gamma: Fraction, ell: int, m: int) -> Fraction:
    """Literal evaluation of the 8-term Macdonald sum over Fractions (q = r^2)."""
    q = r * r
    a, b = alpha, beta

    def F(x):
        return (1 - x / q) / (1 - x)

    terms = [
        (F(b / a) * F(1 / b) * F(1 / (a * b)) * F(1 / a), a ** (2 * m + ell) * b ** (m + ell)),
        (F(a / b) * F(1 / a) * F(1 / (a * b)) * F(1 / b), a ** (m + ell) * b ** (2 * m + ell)),
        (F(1 / (a * b)) * F(b) * F(b / a) * F(1 / a), a ** (2 * m + ell) * b ** m),
        (F(a * b) * F(1 / a) * F(b / a) * F(b), a ** (m + ell)),
        (F(1 / (a * b)) * F(a) * F(a / b) * F(1 / b), a ** m * b ** (2 * m + ell)),
        (F(a * b) * F(1 / b) * F(a / b) * F(a), b ** (m + ell)),
        (F(b / a) * F(a) * F(a * b) * F(b), a ** m),
        (F(a / b) * F(b) * F(a * b) * F(a), b ** m),
    ]
    s = sum(x * y for x, y in terms)
    norm = 1 + 2 / q + 2 / q ** 2 + 2 / q ** 3 + 1 / q ** 4
    return r ** (-(4 * m + 3 * ell)) * gamma ** (2 * m + ell) * s / norm


def _random_satake(rng: random.Random):
    while True:
        a = Fraction(rng.choice([-1, 1]) * rng.randint(1, 30), rng.randint(1, 30))
        g = Fraction(rng.choice([-1, 1]) * rng.randint(1, 12), rng.randint(1, 12))
        b = 1 / (a * g * g)
        if a not in (0, 1, b) and b != 1 and a * b != 1:
            return a, b, g


def check_macdonald(opts=None) -> List[VerificationReport]:
    opts = opts or {}
    draws = int(opts.get("draws", 1000))
    rng = random.Random(int(opts.get("seed", 20240601)))
    out = []
    p = ln.SatakeParams.symbolic()
    out.append(exact_report("macdonald", ln.macdonald_phi0(p, (0, 0)), 1, {"case": "identity coset"}))
    bad = []
    for ell, m in itertools.product(range(5), range(5)):
        v = ln.macdonald_phi0(p, (ell, m))
        if v != ln.macdonald_phi0(p.weyl_swap(), (ell, m)) or v != ln.macdonald_phi0(p.weyl_invert_beta(), (ell, m)):
            bad.append((ell, m))
    out.append(VerificationReport("macdonald", f"{25 - len(bad)} invariant", "25 invariant",
                                  0.0 if not bad else 1.0, 0.0, not bad,
                                  {"case": "Weyl invariance, (l, m) in 0..4 x 0..4", "failures": bad}))
    mismatches = []
    for i in range(draws):
        r = Fraction(rng.choice([3, 5, 7, 11, 2, 4]))
        a, b, g = _random_satake(rng)
        ell, m = rng.randint(0, 4), rng.randint(0, 4)
        got = ln.macdonald_phi0(ln.SatakeParams.exact(r * r, a, b, g), (ell, m)).to_fraction()
        want = macdonald_oracle(r, a, b, g, ell, m)
        if got != want:
            mismatches.append((str(r * r), str(a), str(b), str(g), ell, m))
    out.append(VerificationReport("macdonald", f"{draws - len(mismatches)} matches", f"{draws} matches",
                                  len(mismatches) / max(draws, 1), 0.0, not mismatches,
                                  {"case": "random rational draws vs 8-term oracle", "draws": draws,
                                   "mismatches": mismatches[:5]}))
    return out


def _det(M) -> Fraction:
    n = len(M)
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    return sum(((-1) ** j) * M[0][j] * _det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(n) if M[0][j])


def coset_oracle(x, y, z, u, p: int):
    """(ell, m) from the elementary divisors of n(X) diag(1, u, u, 1).

    The k-th determinantal divisor exponent d_k is the least valuation of the
    k x k minors; the divisors are p^(d_k - d_{k-1}). Up to the centre they are
    {0, m, ell + m, ell + 2m}.
    """
    x, y, z, u = (Fraction(w) for w in (x, y, z, u))
    # n(X) diag(1,u,u,1) with n(X) = [[1,0,x,y],[0,1,y,z],[0,0,1,0],[0,0,0,1]]
    M = [[Fraction(1), Fraction(0), x * u, y],
         [Fraction(0), u, y * u, z],
         [Fraction(0), Fraction(0), u, Fraction(0)],
         [Fraction(0), Fraction(0), Fraction(0), Fraction(1)]]
    dk = [0]
    for k in range(1, 5):
        best = math.inf
        for rows in itertools.combinations(range(4), k):
            for cols in itertools.combinations(range(4), k):
                det = _det([[M[i][j] for j in cols] for i in rows])
                if det:
                    best = min(best, ln.valuation(det, p))
        dk.append(best)
    e = sorted(dk[k] - dk[k - 1] for k in range(1, 5))
    e = [v - e[0] for v in e]
    m, ell = e[1], e[2] - e[1]
    if e[3] != ell + 2 * m:
        raise VerifierError(f"elementary divisors {e} are not of the form (0, m, l+m, l+2m)")
    return int(ell), int(m)


def check_coset(opts=None) -> List[VerificationReport]:
    opts = opts or {}
    primes = [int(x) for x in _as_list(opts.get("primes", "3, 5"))]
    per_cell = int(opts.get("units_per_cell", 3))
    rng = random.Random(int(opts.get("seed", 7)))
    vals = [None] + list(range(-3, 4))
    out = []
    for p in primes:
        units = [a for a in range(1, p * p) if a % p]
        n = bad = 0
        examples = []
        for vx, vy, vz in itertools.product(vals, repeat=3):
            for u in (1, p):
                for _ in range(per_cell):
                    def draw(v):
                        return Fraction(0) if v is None else Fraction(rng.choice(units)) * Fraction(p) ** v
                    x, y, z = draw(vx), draw(vy), draw(vz)
                    uu = u * rng.choice(units)
                    c = ln.classify_double_coset(x, y, z, uu, p)
                    o = coset_oracle(x, y, z, uu, p)
                    n += 1
                    if (c.ell, c.m) != o:
                        bad += 1
                        examples.append((str(x), str(y), str(z), uu, (c.ell, c.m), o))
        out.append(VerificationReport("coset", f"{n - bad}/{n} agree", f"{n}/{n} agree", bad / n, 0.0, bad == 0,
                                      {"p": p, "cases": n, "failures": examples[:5]}))
    return out


def check_arch(opts=None) -> List[VerificationReport]:
    opts = opts or {}
    tol = float(opts.get("tol", 1e-6))
    return [arch_quadrature_check(int(k), tol) for k in _as_list(opts.get("weights", "3, 4, 6, 10, 20"))]


def check_constants(opts=None) -> List[VerificationReport]:
    opts = opts or {}
    tol = float(opts.get("tol", 1e-12))
    lo, hi = int(opts.get("kmin", 3)), int(opts.get("kmax", 40))
    out = []
    with mpmath.workdps(50):
        for k in range(lo, hi + 1):
            lhs = mpmath.mpf(2) ** (2 * k - 6) * gamma_factors(k)[2]
            rhs = boecherer_constant(k)
            rel = abs(lhs - rhs) / rhs
            out.append(VerificationReport("constants", mpmath.nstr(lhs, 30), mpmath.nstr(rhs, 30), float(rel),
                                          tol, bool(rel < tol), {"k": k, "rhs": boecherer_constant_str(k)}))
    return out


def check_sk_ratio(opts=None) -> List[VerificationReport]:
    opts = opts or {}
    k = int(opts.get("k", 10))
    discs = [int(d) for d in _as_list(opts.get("discs", "-3, -4, -7, -8, -11, -19, -23, -24"))]
    tol = float(opts.get("tol", 1e-6))
    afe_tol = float(opts.get("afe_tol", 1e-8))
    return [sk_ratio_check(k, d1, d2, tol, afe_tol) for d1, d2 in itertools.combinations(discs, 2)]


def check_sk_vanishing(opts=None) -> List[VerificationReport]:
    opts = opts or {}
    k = int(opts.get("k", 10))
    dmin = int(opts.get("dmin", -100))
    F = sk_lift(k, -dmin)
    out = []
    for d in fundamental_discriminants(dmin, -3):
        G = class_group(d)
        if G.h == 1:
            continue
        nonzero = []
        for chi in characters(G)[1:]:
            if not bessel_sum(F, d, chi).value.is_zero():
                nonzero.append(chi.exponents)
        out.append(VerificationReport("sk-vanishing", f"{len(nonzero)} nonzero", "0 nonzero",
                                      0.0 if not nonzero else 1.0, 0.0, not nonzero,
                                      {"k": k, "d": d, "h": G.h, "nontrivial_characters": G.h - 1}))
    return out


def _test_table(G, seed: int) -> SiegelCoeffTable:
    rng = random.Random(seed * 1000003 + G.disc)
    table = SiegelCoeffTable(0, 1)
    for f in G.classes:
        try:
            table(tuple(f))
        except KeyError:  # the inverse class, already set, shares the value at even weight
            table.set(tuple(f), Fraction(rng.randint(-50, 50), rng.randint(1, 6)))
    return table


def class_group_report(d: int, seed: int = 11) -> VerificationReport:
    """Group axioms, character orthogonality and Parseval for one discriminant."""
    G = class_group(d)
    cls = G.classes
    e = G.identity()
    problems = []
    for f in cls:
        if compose(e, f) != f:
            problems.append(f"identity fails at {f}")
        if compose(f, inverse_form(f)) != e:
            problems.append(f"inverse fails at {f}")
        for g in cls:
            fg = compose(f, g)
            if fg != compose(g, f):
                problems.append(f"commutativity fails at {f},{g}")
            if fg not in G.coords:
                problems.append(f"closure fails at {f},{g}")
    for f, g, h in itertools.product(cls, repeat=3) if G.h <= 16 else _sample_triples(cls, d):
        if compose(compose(f, g), h) != compose(f, compose(g, h)):
            problems.append(f"associativity fails at {f},{g},{h}")
    if len(cls) != math.prod(G.invariant_factors):
        problems.append("class number differs from the product of invariant factors")
    chars = characters(G)
    values = {chi: [chi(f) for f in cls] for chi in chars}
    for c1, c2 in itertools.combinations_with_replacement(chars, 2):
        s = Cyclo.rational(0, G.exponent)
        for x, y in zip(values[c1], values[c2]):
            s = s + x * y.conjugate()
        if s != (G.h if c1 == c2 else 0):
            problems.append(f"orthogonality fails for {c1.exponents},{c2.exponents}")
    if len(set(chars)) != G.h or any(chi.conjugate() not in values for chi in chars):
        problems.append("character set not distinct or not closed under conjugation")
    table = _test_table(G, seed)
    lhs = Cyclo.rational(0, G.exponent)
    for chi in chars:
        R = bessel_sum(table, d, chi).value
        lhs = lhs + R * R.conjugate()
    rhs = G.h * sum(table(tuple(f)) ** 2 for f in cls)
    if lhs != rhs:
        problems.append("Parseval identity fails")
    return VerificationReport("class-group", "ok" if not problems else "; ".join(problems[:3]), "ok",
                              0.0 if not problems else 1.0, 0.0, not problems,
                              {"d": d, "h": G.h, "invariant_factors": G.invariant_factors})


def _sample_triples(cls, d):
    rng = random.Random(d)
    return [tuple(rng.choice(cls) for _ in range(3)) for _ in range(3000)]


def check_class_group(opts=None) -> List[VerificationReport]:
    opts = opts or {}
    dmin = int(opts.get("dmin", -200))
    return [class_group_report(d) for d in fundamental_discriminants(dmin, -3)]


def check_bessel_table(opts) -> List[VerificationReport]:
    """Bessel sums of an ingested Siegel table for the listed discriminants (reported, not judged)."""
    table = ingest_siegel_table(opts["siegel_table"])
    out = []
    for d in _as_list(opts.get("discs", "")):
        d = int(d)
        for chi in characters(class_group(d)):
            R = bessel_sum(table, d, chi)
            out.append(VerificationReport("bessel-table", str(R.value), str(R.embedding), 0.0, 0.0, True,
                                          {"d": d, "character": chi.exponents}))
    return out


CHECKS: Dict[str, Callable] = {
    "local-unram": check_local_unram,
    "local-table": check_local_table,
    "macdonald": check_macdonald,
    "coset": check_coset,
    "arch": check_arch,
    "constants": check_constants,
    "sk-ratio": check_sk_ratio,
    "sk-vanishing": check_sk_vanishing,
    "class-group": check_class_group,
    "bessel-table": check_bessel_table,
}

DEFAULT_CHECKS = ("local-unram", "local-table", "macdonald", "coset", "arch", "constants",
                  "sk-ratio", "sk-vanishing", "class-group")


# --------------------------------------------------------------------------
# configuration and suite

def _as_list(x) -> List[str]:
    if isinstance(x, (list, tuple)):
        return [str(v) for v in x]
    return [v.strip() for v in str(x).split(",") if v.strip()]


@dataclass
class SuiteConfig:
    checks: List[str]
    options: Dict[str, Dict[str, str]]
    json_path: Optional[str] = None
    jobs: int = 1

    @classmethod
    def default(cls) -> "SuiteConfig":
        return cls(list(DEFAULT_CHECKS), {})


def _line_of(text: str, section: str, key: Optional[str] = None) -> Optional[int]:
    current = None
    for i, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        m = re.match(r"\[(.+)\]$", s)
        if m:
            current = m.group(1).strip()
            if key is None and current == section:
                return i
            continue
        if current == section and key is not None and re.match(rf"{re.escape(key)}\s*[=:]", s):
            return i
    return None


def parse_config(text: str) -> SuiteConfig:
    """INI text: a [suite] section with ``checks``, ``json``, ``jobs``; one section per check for options."""
    cp = configparser.ConfigParser()
    try:
        cp.read_string(text)
    except configparser.ParsingError as exc:
        lineno = exc.errors[0][0] if exc.errors else None
        raise ConfigError(f"cannot parse line {exc.errors[0][1]!r}" if exc.errors else str(exc), lineno) from None
    except configparser.Error as exc:
        raise ConfigError(str(exc), getattr(exc, "lineno", None)) from None
    checks = list(DEFAULT_CHECKS)
    json_path, jobs = None, 1
    if cp.has_section("suite"):
        sec = cp["suite"]
        for key in sec:
            if key not in ("checks", "json", "jobs"):
                raise ConfigError(f"unknown key {key!r} in [suite]", _line_of(text, "suite", key))
        if "checks" in sec:
            checks = _as_list(sec["checks"])
            for name in checks:
                if name not in CHECKS:
                    raise ConfigError(f"unknown check {name!r}", _line_of(text, "suite", "checks"))
        json_path = sec.get("json")
        if "jobs" in sec:
            try:
                jobs = int(sec["jobs"])
            except ValueError:
                raise ConfigError("jobs must be an integer", _line_of(text, "suite", "jobs")) from None
    options = {}
    for name in cp.sections():
        if name == "suite":
            continue
        if name not in CHECKS:
            raise ConfigError(f"unknown section [{name}]", _line_of(text, name))
        options[name] = dict(cp[name])
    return SuiteConfig(checks, options, json_path, jobs)


def load_config(path) -> SuiteConfig:
    with open(path) as fh:
        return parse_config(fh.read())


def _run_one(name: str, opts: Dict[str, str]) -> List[VerificationReport]:
    try:
        return CHECKS[name](opts)
    except Exception as exc:  # a crashing check is reported as a failure, the suite goes on
        return [VerificationReport(name, "error", "", math.inf, 0.0, False, {"error": f"{type(exc).__name__}: {exc}"})]


def run_suite(config: Optional[SuiteConfig] = None) -> List[VerificationReport]:
    """Run the configured checks; independent checks run in worker processes when jobs > 1."""
    config = config or SuiteConfig.default()
    tasks = [(name, config.options.get(name, {})) for name in config.checks]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_one, *zip(*tasks)))
    else:
        results = [_run_one(name, opts) for name, opts in tasks]
    reports = [r for group in results for r in group]
    if config.json_path:
        from .report import dump_reports
        dump_reports(reports, config.json_path)
    return reports


def suite_passed(reports: Sequence[VerificationReport]) -> bool:
    return all(r.passed for r in reports)
