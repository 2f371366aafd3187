"""Level-1 modular forms, Cohen numbers, index-1 Jacobi forms and Saito-Kurokawa coefficients.

Everything here is exact. Coefficients are Python ints when integral and
Fractions otherwise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from .quadfields import is_fundamental, kronecker, reduce

try:
    import gmpy2
except ImportError:  # pragma: no cover
    gmpy2 = None


class ModFormError(ValueError):
    pass


class PrecisionError(ModFormError):
    pass


class IngestError(ModFormError):
    def __init__(self, path, lineno: int, msg: str):
        super().__init__(f"{path}:{lineno}: {msg}")
        self.lineno = lineno


# --------------------------------------------------------------------------
# series multiplication

def _pack(coeffs: Sequence[int], bits: int) -> int:
    nbytes = bits // 8
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_int_series(a: Sequence[int], b: Sequence[int], n: int) -> List[int]:
    """First n+1 coefficients of the product of two integer series."""
    a, b = list(a[: n + 1]), list(b[: n + 1])
    if not a or not b:
        return [0] * (n + 1)
    if min(len(a), len(b)) < 64:
        out = [0] * (n + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(min(len(b), n + 1 - i)):
                    out[i + j] += x * b[j]
        return out
    # Kronecker substitution: evaluate at 2^bits, multiply, read the digits back
    ma, mb = max(map(abs, a)), max(map(abs, b))
    bound = max(ma * mb * min(len(a), len(b)), ma, mb)
    bits = 8 * ((bound.bit_length() + 2) // 8 + 1)
    A, B = _pack(a, bits), _pack(b, bits)
    if gmpy2 is not None:
        C = int(gmpy2.mpz(A) * gmpy2.mpz(B))
    else:
        C = A * B
    m = len(a) + len(b) - 1
    half = 1 << (bits - 1)
    offset = int.from_bytes(half.to_bytes(bits // 8, "little") * m, "little")
    raw = (C + offset).to_bytes(m * bits // 8, "little")
    step = bits // 8
    out = [int.from_bytes(raw[i * step:(i + 1) * step], "little") - half
           for i in range(min(m, n + 1))]
    out += [0] * (n + 1 - len(out))
    return out


def _mul_series(a, b, n: int) -> list:
    da = math.lcm(*(Fraction(x).denominator for x in a)) if a else 1
    db = math.lcm(*(Fraction(x).denominator for x in b)) if b else 1
    ia = [int(Fraction(x) * da) for x in a]
    ib = [int(Fraction(x) * db) for x in b]
    out = _mul_int_series(ia, ib, n)
    if da * db == 1:
        return out
    return [_norm(Fraction(x, da * db)) for x in out]


def _norm(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


# --------------------------------------------------------------------------
# q-expansions

@dataclass(frozen=True)
class QExpansion:
    weight: int
    level: int
    coeffs: Tuple
    name: str = ""

    @property
    def precision(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int):
        if n > self.precision:
            raise PrecisionError(f"coefficient {n} beyond precision {self.precision}")
        return self.coeffs[n]

    def __mul__(self, other: "QExpansion") -> "QExpansion":
        n = min(self.precision, other.precision)
        return QExpansion(self.weight + other.weight, max(self.level, other.level),
                          tuple(_mul_series(self.coeffs, other.coeffs, n)))

    def __add__(self, other: "QExpansion") -> "QExpansion":
        if self.weight != other.weight:
            raise ModFormError("weights differ")
        n = min(self.precision, other.precision)
        return QExpansion(self.weight, self.level,
                          tuple(_norm(Fraction(x) + y) for x, y in zip(self.coeffs[: n + 1], other.coeffs)))

    def __neg__(self) -> "QExpansion":
        return QExpansion(self.weight, self.level, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "QExpansion":
        return QExpansion(self.weight, self.level, tuple(_norm(Fraction(c) * x) for x in self.coeffs))

    def truncate(self, n: int) -> "QExpansion":
        return QExpansion(self.weight, self.level, self.coeffs[: n + 1], self.name)

    def is_cusp(self) -> bool:
        return self.coeffs[0] == 0


def divisor_sigma_table(k: int, n: int) -> List[int]:
    """sigma_k(m) for 0 <= m <= n (entry 0 is unused and set to 0)."""
    out = [0] * (n + 1)
    for d in range(1, n + 1):
        dk = d ** k
        for m in range(d, n + 1, d):
            out[m] += dk
    return out


def eisenstein(k: int, N: int) -> QExpansion:
    consts = {4: 240, 6: -504}
    if k not in consts:
        raise ModFormError(f"eisenstein series of weight {k} not supported (use 4 or 6)")
    if N < 1:
        raise ModFormError("precision must be at least 1")
    s = divisor_sigma_table(k - 1, N)
    c = consts[k]
    return QExpansion(k, 1, (1,) + tuple(c * s[m] for m in range(1, N + 1)), f"E{k}")


def delta(N: int) -> QExpansion:
    """q * prod(1 - q^n)^24, via the eta^3 series sum (-1)^j (2j+1) q^(j(j+1)/2)."""
    if N < 1:
        raise ModFormError("precision must be at least 1")
    eta3 = [0] * N
    j = 0
    while j * (j + 1) // 2 < N:
        eta3[j * (j + 1) // 2] = (-1) ** j * (2 * j + 1)
        j += 1
    s = _mul_int_series(eta3, eta3, N - 1)
    s = _mul_int_series(s, s, N - 1)
    s = _mul_int_series(s, s, N - 1)
    return QExpansion(12, 1, (0,) + tuple(s), "Delta")


_EIGEN_RECIPES = {12: (0, 0), 16: (1, 0), 18: (0, 1), 20: (2, 0), 22: (1, 1), 26: (2, 1)}


@lru_cache(maxsize=32)
def level1_cusp_eigenform(weight: int, N: int) -> QExpansion:
    """The normalized eigenform spanning the one-dimensional cusp space of this weight."""
    if weight not in _EIGEN_RECIPES:
        raise ModFormError(f"weight {weight} is not a one-dimensional level-1 cusp space here")
    a, b = _EIGEN_RECIPES[weight]
    f = delta(N)
    for _ in range(a):
        f = f * eisenstein(4, N)
    for _ in range(b):
        f = f * eisenstein(6, N)
    return QExpansion(weight, 1, f.coeffs, f"f{weight}")


def hecke_eigenvalue(g: QExpansion, n: int):
    """Eigenvalue of T_n on a Hecke-normalized level-1 eigenform (its n-th coefficient)."""
    if g.level != 1 or g.coeffs[1] != 1:
        raise ModFormError("expected a Hecke-normalized level-1 form")
    return g[n]


# --------------------------------------------------------------------------
# Bernoulli numbers and Cohen's function

@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """B_n with B_1 = -1/2."""
    B = [Fraction(1)]
    for m in range(1, n + 1):
        B.append(-sum(math.comb(m + 1, j) * B[j] for j in range(m)) / (m + 1))
    return B[n]


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    return sum(math.comb(n, j) * bernoulli(j) * x ** (n - j) for j in range(n + 1))


@lru_cache(maxsize=None)
def generalized_bernoulli(n: int, D: int) -> Fraction:
    """B_{n, chi_D} = f^(n-1) sum_{a=1}^{f} chi_D(a) B_n(a/f), f = |D|."""
    f = abs(D)
    return Fraction(f) ** (n - 1) * sum(kronecker(D, a) * bernoulli_poly(n, Fraction(a, f))
                                         for a in range(1, f + 1))


def _split_disc(N: int) -> Tuple[int, int]:
    """-N = D f^2 with D a fundamental discriminant."""
    f = math.isqrt(N)
    while f >= 1:
        if N % (f * f) == 0 and is_fundamental(-N // (f * f)):
            return -N // (f * f), f
        f -= 1
    raise ModFormError(f"{-N} is not a discriminant")


def _mobius(n: int) -> int:
    out, p = 1, 2
    while p * p <= n:
        if n % p == 0:
            n //= p
            if n % p == 0:
                return 0
            out = -out
        p += 1
    return -out if n > 1 else out


@lru_cache(maxsize=None)
def cohen_number(r: int, N: int) -> Fraction:
    """Cohen's H(r, N).

    H(r, 0) = zeta(1 - 2r); for -N = D f^2 with D fundamental,
    H(r, N) = L(1 - r, chi_D) sum_{e | f} mu(e) chi_D(e) e^(r-1) sigma_{2r-1}(f/e)
    with L(1 - r, chi_D) = -B_{r, chi_D} / r.
    """
    if r < 1:
        raise ModFormError("r must be at least 1")
    if N == 0:
        return -bernoulli(2 * r) / (2 * r)
    if N < 0 or N % 4 in (1, 2):
        return Fraction(0)
    D, f = _split_disc(N)
    l_val = -generalized_bernoulli(r, D) / r
    total = Fraction(0)
    for e in range(1, f + 1):
        if f % e:
            continue
        g = f // e
        sigma = sum(t ** (2 * r - 1) for t in range(1, g + 1) if g % t == 0)
        total += _mobius(e) * kronecker(D, e) * Fraction(e) ** (r - 1) * sigma
    return l_val * total


# --------------------------------------------------------------------------
# index-1 Jacobi forms, keyed by D = 4n - r^2

def _jacobi_eisenstein(k: int, dmax: int) -> Dict[int, Fraction]:
    z = cohen_number(k - 1, 0)
    return {D: cohen_number(k - 1, D) / z for D in range(dmax + 1)}


def _times_modular(f: QExpansion, e: Dict[int, Fraction], dmax: int) -> Dict[int, Fraction]:
    """Coefficients of f * phi: c'(D) = sum_m f_m c(D - 4m)."""
    return {D: sum((Fraction(f[m]) * e[D - 4 * m] for m in range(D // 4 + 1)), Fraction(0))
            for D in range(dmax + 1)}


@lru_cache(maxsize=None)
def _jacobi_cached(k: int, dmax: int) -> Tuple[Tuple[int, Fraction], ...]:
    if k in (4, 6):
        out = _jacobi_eisenstein(k, dmax)
    elif k in (10, 12):
        n = dmax // 4 + 1
        e4, e6 = _jacobi_eisenstein(4, dmax), _jacobi_eisenstein(6, dmax)
        E4, E6 = eisenstein(4, n), eisenstein(6, n)
        if k == 10:
            a, b = _times_modular(E6, e4, dmax), _times_modular(E4, e6, dmax)
        else:
            a, b = _times_modular(E4 * E4, e4, dmax), _times_modular(E6, e6, dmax)
        out = {D: (a[D] - b[D]) / 144 for D in range(dmax + 1)}
        if out[0] != 0 or any(v.denominator != 1 for v in out.values()):
            raise ModFormError(f"Jacobi cusp form of weight {k} failed its integrality check")
    else:
        raise ModFormError(f"index-1 Jacobi forms of weight {k} not supported (4, 6, 10, 12)")
    return tuple(sorted(out.items()))


def jacobi_index1(k: int, dmax: int) -> Dict[int, Fraction]:
    """Coefficients e(D), D = 4n - r^2, of E_{4,1}, E_{6,1}, phi_{10,1} or phi_{12,1}.

    The cusp forms are (E6 E_{4,1} - E4 E_{6,1})/144 and
    (E4^2 E_{4,1} - E6 E_{6,1})/144.
    """
    if dmax < 0:
        raise ModFormError("dmax must be non-negative")
    return dict(_jacobi_cached(k, dmax))


def jacobi_coefficient(e: Dict[int, Fraction], n: int, r: int) -> Fraction:
    D = 4 * n - r * r
    if D < 0:
        return Fraction(0)
    return e[D]


# --------------------------------------------------------------------------
# Kohnen plus space and Saito-Kurokawa lifts

@dataclass
class KohnenForm:
    """Coefficients c(D) of a form of weight k - 1/2 in the plus space."""

    k: int
    c: Dict[int, Fraction]
    dmax: int

    def __post_init__(self):
        for D, v in self.c.items():
            if D % 4 in (1, 2) and v != 0:
                raise ModFormError(f"plus-space coefficient c({D}) must vanish")

    def __call__(self, D: int) -> Fraction:
        if D > self.dmax:
            raise PrecisionError(f"c({D}) requested beyond D_max = {self.dmax}")
        if D % 4 in (1, 2):
            return Fraction(0)
        return Fraction(self.c.get(D, 0))

    @classmethod
    def from_jacobi(cls, k: int, dmax: int) -> "KohnenForm":
        return cls(k, jacobi_index1(k, dmax), dmax)


@dataclass
class SKLift:
    k: int
    source: QExpansion
    kohnen: KohnenForm

    @classmethod
    def build(cls, k: int, dmax: int, n_source: int = 400) -> "SKLift":
        """SK lift of the level-1 eigenform of weight 2k - 2 (k = 10 or 12)."""
        return cls(k, level1_cusp_eigenform(2 * k - 2, n_source), KohnenForm.from_jacobi(k, dmax))

    def __call__(self, T) -> Fraction:
        return sk_coefficient(self, T)


def _check_triple(T) -> Tuple[int, int, int]:
    a, b, c = (int(x) for x in T)
    if a <= 0 or b * b - 4 * a * c >= 0:
        raise ModFormError(f"{(a, b, c)} is not positive definite")
    return a, b, c


def sk_coefficient(F: SKLift, T) -> Fraction:
    """a(F, T) = sum_{r | (a,b,c)} r^(k-1) c(|disc T| / r^2) for T = [[a, b/2], [b/2, c]]."""
    a, b, c = _check_triple(T)
    disc = 4 * a * c - b * b
    if disc > F.kohnen.dmax:
        raise PrecisionError(f"|disc T| = {disc} exceeds D_max = {F.kohnen.dmax}")
    g = math.gcd(math.gcd(a, b), c)
    return sum((Fraction(r) ** (F.k - 1) * F.kohnen(disc // (r * r))
                for r in range(1, g + 1) if g % r == 0), Fraction(0))


@dataclass
class SiegelCoeffTable:
    """Coefficients keyed by SL(2,Z)-reduced triples.

    For even weight a(U^t T U) = det(U)^k a(T) makes a(T) invariant under
    GL(2,Z) too, so a missing class falls back to its improper twin (a, -b, c).
    Weight 0 means unknown and is treated as even.
    """

    weight: int
    level: int
    entries: Dict[Tuple[int, int, int], Fraction] = field(default_factory=dict)

    def set(self, T, value) -> None:
        a, b, c = _check_triple(T)
        key = tuple(reduce((a, b, c)))
        value = Fraction(value)
        keys = [key]
        if self.weight % 2 == 0:
            keys.append(tuple(reduce((a, -b, c))))
        for k in keys:
            old = self.entries.get(k)
            if old is not None and old != value:
                raise ModFormError(f"conflicting values for class {k}: {old} vs {value}")
        self.entries[key] = value

    def __call__(self, T) -> Fraction:
        a, b, c = _check_triple(T)
        key = tuple(reduce((a, b, c)))
        if key in self.entries:
            return self.entries[key]
        if self.weight % 2 == 0:
            twin = tuple(reduce((a, -b, c)))
            if twin in self.entries:
                return self.entries[twin]
        raise KeyError(f"no coefficient for reduced triple {key}")


# --------------------------------------------------------------------------
# ingestion

def _lines(path):
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if line:
                yield lineno, line


def ingest_qexp(path) -> QExpansion:
    """File: optional '# weight W level N' header, then 'n a_n' lines with increasing n."""
    weight, level = 0, 1
    coeffs: Dict[int, int] = {}
    last = -1
    for lineno, line in _lines(path):
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 4 and parts[0] == "weight" and parts[2] == "level":
                try:
                    weight, level = int(parts[1]), int(parts[3])
                except ValueError:
                    raise IngestError(path, lineno, "bad header") from None
            continue
        parts = line.split()
        if len(parts) != 2:
            raise IngestError(path, lineno, f"expected 'n a_n', got {line!r}")
        try:
            n, a = int(parts[0]), int(parts[1])
        except ValueError:
            raise IngestError(path, lineno, f"non-integer entry {line!r}") from None
        if n <= last or n < 0:
            raise IngestError(path, lineno, f"index {n} is not increasing")
        coeffs[n] = a
        last = n
    if last < 0:
        raise IngestError(path, 0, "no coefficients")
    return QExpansion(weight, level, tuple(coeffs.get(n, 0) for n in range(last + 1)), str(path))


def ingest_kohnen(path, k: int) -> KohnenForm:
    """File: 'D c_D' lines with D = 0, 3 mod 4."""
    c: Dict[int, Fraction] = {}
    for lineno, line in _lines(path):
        if line.startswith("#"):
            continue
        parts = line.split()
        try:
            D, v = int(parts[0]), Fraction(parts[1])
        except (ValueError, IndexError, ZeroDivisionError):
            raise IngestError(path, lineno, f"expected 'D c_D', got {line!r}") from None
        if len(parts) != 2 or D < 0 or D % 4 in (1, 2):
            raise IngestError(path, lineno, f"D = {D} is not 0 or 3 mod 4")
        if D in c and c[D] != v:
            raise IngestError(path, lineno, f"conflicting value for D = {D}")
        c[D] = v
    return KohnenForm(k, c, max(c, default=0))


def ingest_siegel_table(path, weight: int = 0, level: int = 1) -> SiegelCoeffTable:
    """File: 'a b c value' lines, each meaning the matrix [[a, b/2], [b/2, c]]."""
    table = SiegelCoeffTable(weight, level)
    for lineno, line in _lines(path):
        if line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 4:
            raise IngestError(path, lineno, f"expected 'a b c value', got {line!r}")
        try:
            a, b, c = (int(x) for x in parts[:3])
            v = Fraction(parts[3])
        except (ValueError, ZeroDivisionError):
            raise IngestError(path, lineno, f"malformed entry {line!r}") from None
        try:
            table.set((a, b, c), v)
        except ValueError as exc:
            raise IngestError(path, lineno, str(exc)) from None
    return table
