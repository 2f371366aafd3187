"""Imaginary quadratic fields through binary quadratic forms."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Tuple

import mpmath

from .exact_algebra import Cyclo


class QuadFieldError(ValueError):
    pass


def _squarefree(n: int) -> bool:
    n = abs(n)
    if n == 0:
        return False
    k = 2
    while k * k <= n:
        if n % (k * k) == 0:
            return False
        k += 1
    return True


def is_fundamental(d: int) -> bool:
    if d == 1:
        return True
    if d % 4 == 1:
        return _squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and _squarefree(m)
    return False


def fundamental_discriminants(lo: int, hi: int) -> List[int]:
    """Negative fundamental discriminants d with lo <= d <= hi, descending from hi."""
    return [d for d in range(hi, lo - 1, -1) if d < 0 and is_fundamental(d)]


def _require_fundamental(d: int) -> None:
    if d >= 0 or not is_fundamental(d):
        raise QuadFieldError(f"{d} is not a negative fundamental discriminant")


# --------------------------------------------------------------------------
# forms

class QuadForm(NamedTuple):
    a: int
    b: int
    c: int

    @property
    def disc(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


def reduce(f) -> QuadForm:
    """Unique reduced form properly equivalent to a positive definite form."""
    a, b, c = f
    if b * b - 4 * a * c >= 0 or a <= 0:
        raise QuadFieldError(f"form {tuple(f)} is not positive definite")
    while True:
        # normalize: -a < b <= a
        if not (-a < b <= a):
            k = (a - b) // (2 * a)
            b, c = b + 2 * k * a, a * k * k + b * k + c
        if a > c:
            a, b, c = c, -b, a
            continue
        if a == c and b < 0:
            b = -b
        return QuadForm(a, b, c)


def compose(f, g) -> QuadForm:
    """Reduced representative of the Gauss composition of two primitive forms."""
    f, g = QuadForm(*f), QuadForm(*g)
    if f.disc != g.disc:
        raise QuadFieldError(f"discriminants differ: {f.disc} vs {g.disc}")
    a1, b1, c1 = f
    a2, b2, c2 = g
    if a1 > a2:
        a1, b1, c1, a2, b2, c2 = a2, b2, c2, a1, b1, c1
    s = (b1 + b2) // 2
    n = b2 - s
    if a2 % a1 == 0:
        y1, d = 0, a1
    else:
        d, u, _ = _xgcd(a2, a1)
        y1 = u
    if s % d == 0:
        y2, x2, d1 = -1, 0, d
    else:
        d1, x2, y2 = _xgcd(s, d)
        y2 = -y2
    v1, v2 = a1 // d1, a2 // d1
    r = (y1 * y2 * n - x2 * c2) % v1
    b3 = b2 + 2 * v2 * r
    a3 = v1 * v2
    c3 = (c2 * d1 + r * (b2 + v2 * r)) // v1
    return reduce((a3, b3, c3))


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with a x + b y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def principal_form(d: int) -> QuadForm:
    k = d % 2
    return QuadForm(1, k, (k - d) // 4)


def inverse_form(f) -> QuadForm:
    a, b, c = f
    return reduce((a, -b, c))


def reduced_forms(d: int) -> List[QuadForm]:
    """All reduced primitive forms of discriminant d < 0, principal form first."""
    out = []
    amax = math.isqrt(-d // 3)
    for a in range(1, amax + 1):
        for b in range(-a, a + 1):
            if (b - d) % 2:
                continue
            num = b * b - d
            if num % (4 * a):
                continue
            c = num // (4 * a)
            f = QuadForm(a, b, c)
            if c >= a and f.is_reduced() and math.gcd(math.gcd(a, b), c) == 1:
                out.append(f)
    return out


# --------------------------------------------------------------------------
# group structure

def smith_normal_form(A: List[List[int]]):
    """(D, U, V) with U A V = D diagonal, d_i | d_{i+1}, U and V unimodular."""
    m, n = len(A), len(A[0])
    D = [row[:] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):  # row_dst += k * row_src
        D[dst] = [x + k * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + k * y for x, y in zip(U[dst], U[src])]

    def add_col(src, dst, k):
        for M in (D, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            pivots = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not pivots:
                return D, U, V
            _, i, j = min(pivots)
            swap_rows(t, i)
            swap_cols(t, j)
            done = True
            for i in range(t + 1, m):
                q = D[i][t] // D[t][t]
                if q:
                    add_row(t, i, -q)
                if D[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = D[t][j] // D[t][t]
                if q:
                    add_col(t, j, -q)
                if D[t][j]:
                    done = False
            if not done:
                continue
            bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % D[t][t]]
            if bad:
                add_row(bad[0][0], t, 1)
                continue
            if D[t][t] < 0:
                D[t] = [-x for x in D[t]]
                U[t] = [-x for x in U[t]]
            break
    return D, U, V


def _inverse_unimodular(V: List[List[int]]) -> List[List[int]]:
    n = len(V)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(V)]
    for col in range(n):
        piv = next(r for r in range(col, n) if M[r][col] != 0)
        M[col], M[piv] = M[piv], M[col]
        pv = M[col][col]
        M[col] = [x / pv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col]:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [[int(x) for x in row[n:]] for row in M]


@dataclass
class QuadClassGroup:
    disc: int
    classes: List[QuadForm]
    invariant_factors: List[int]
    generators: List[QuadForm]
    coords: Dict[QuadForm, Tuple[int, ...]]

    @property
    def h(self) -> int:
        return len(self.classes)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def identity(self) -> QuadForm:
        return principal_form(self.disc)

    def mul(self, f, g) -> QuadForm:
        return compose(f, g)

    def element(self, coords) -> QuadForm:
        out = self.identity()
        for gen, e, n in zip(self.generators, coords, self.invariant_factors):
            for _ in range(e % n):
                out = compose(out, gen)
        return out


def _power(f: QuadForm, k: int) -> QuadForm:
    out = principal_form(f.disc)
    for _ in range(k):
        out = compose(out, f)
    return out


@lru_cache(maxsize=None)
def class_group(d: int) -> QuadClassGroup:
    _require_fundamental(d)
    classes = reduced_forms(d)
    h = len(classes)
    e = principal_form(d)
    # greedy generating set with the triangular relation lattice
    gens: List[QuadForm] = []
    span: Dict[QuadForm, Tuple[int, ...]] = {e: ()}
    relations: List[List[int]] = []
    for f in classes:
        if f in span:
            continue
        k, x = 1, f
        while x not in span:
            x = compose(x, f)
            k += 1
        rel = list(span[x]) + [0] * (len(gens) - len(span[x]))
        rel = [-v for v in rel] + [k]
        gens.append(f)
        new_span = {}
        for g, co in span.items():
            y = g
            for j in range(k):
                new_span[y] = tuple(list(co) + [0] * (len(gens) - 1 - len(co)) + [j])
                y = compose(y, f)
        span = new_span
        relations.append(rel)
    r = len(gens)
    if r == 0:
        return QuadClassGroup(d, classes, [], [], {e: ()})
    A = [row + [0] * (r - len(row)) for row in relations]
    D, U, V = smith_normal_form(A)
    Vinv = _inverse_unimodular(V)
    factors, new_gens = [], []
    for i in range(r):
        if D[i][i] == 1:
            continue
        g = e
        for j in range(r):
            ex = Vinv[i][j]
            base = gens[j] if ex >= 0 else inverse_form(gens[j])
            g = compose(g, _power(base, abs(ex)))
        factors.append(D[i][i])
        new_gens.append(g)
    coords: Dict[QuadForm, Tuple[int, ...]] = {}
    for co in itertools.product(*(range(n) for n in factors)):
        x = e
        for g, k in zip(new_gens, co):
            x = compose(x, _power(g, k))
        coords[x] = co
    if len(coords) != h or math.prod(factors) != h:
        raise QuadFieldError(f"class group structure inconsistent for d={d}")
    return QuadClassGroup(d, classes, factors, new_gens, coords)


# --------------------------------------------------------------------------
# characters

@dataclass(frozen=True)
class ClassCharacter:
    group: QuadClassGroup
    exponents: Tuple[int, ...]  # image of generator i is zeta_{n_i}^{exponents[i]}

    @property
    def images(self) -> Tuple[Cyclo, ...]:
        return tuple(Cyclo.root(n, a) for n, a in zip(self.group.invariant_factors, self.exponents))

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    def __call__(self, f) -> Cyclo:
        G = self.group
        co = G.coords[reduce(f)]
        n = G.exponent
        k = sum(a * c * (n // ni) for a, c, ni in zip(self.exponents, co, G.invariant_factors))
        return Cyclo.root(n, k)

    def conjugate(self) -> "ClassCharacter":
        return ClassCharacter(self.group, tuple((-a) % n for a, n in
                                                zip(self.exponents, self.group.invariant_factors)))

    def __hash__(self):
        return hash((self.group.disc, self.exponents))

    def __eq__(self, other):
        return (isinstance(other, ClassCharacter) and self.group.disc == other.group.disc
                and self.exponents == other.exponents)


def characters(G: QuadClassGroup) -> List[ClassCharacter]:
    return [ClassCharacter(G, ex) for ex in itertools.product(*(range(n) for n in G.invariant_factors))]


# --------------------------------------------------------------------------
# Kronecker symbol, units, S(d), L(1, chi_d)

def _jacobi(a: int, n: int) -> int:
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n).

    (d/-1) = -1 iff d < 0; (d/2) = 0 for d even, +1 for d = +-1 mod 8, -1 for
    d = +-3 mod 8; odd n through the Jacobi symbol.
    """
    if n == 0:
        return 1 if abs(d) == 1 else 0
    out = 1
    if n < 0:
        n = -n
        if d < 0:
            out = -out
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            out = -out
    if n == 1:
        return out
    return out * _jacobi(d, n)


def w_of(d: int) -> int:
    return {-3: 6, -4: 4}.get(d, 2)


def s_matrix(d: int) -> Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]:
    _require_fundamental(d)
    if d % 4 == 0:
        return ((Fraction(-d, 4), Fraction(0)), (Fraction(0), Fraction(1)))
    return ((Fraction(1 - d, 4), Fraction(1, 2)), (Fraction(1, 2), Fraction(1)))


@dataclass(frozen=True)
class LOne:
    d: int
    h: int
    w: int
    exact: mpmath.mpf
    numeric: mpmath.mpf

    def exact_str(self) -> str:
        g = Fraction(2 * self.h, self.w)
        coef = "" if g == 1 else f"{g}*"
        return f"{coef}pi/sqrt({-self.d})"


def l_one_series(d: int, dps: int = 30):
    """L(1, chi_d) from the character series, summed in blocks of one period.

    Block j is sum_a chi(a)/(a + j|d|); blocks decay like 1/j^2 and the block
    sequence is extrapolated by mpmath.nsum.
    """
    n = -d
    chi = [(a, kronecker(d, a)) for a in range(1, n + 1)]
    chi = [(a, c) for a, c in chi if c]
    with mpmath.workdps(dps):
        def block(j):
            base = j * n
            return mpmath.fsum(c / (base + a) for a, c in chi)
        return +mpmath.nsum(block, [0, mpmath.inf])


def dirichlet_l_one(d: int) -> LOne:
    _require_fundamental(d)
    G = class_group(d)
    w = w_of(d)
    with mpmath.workdps(30):
        exact = 2 * mpmath.pi * G.h / (w * mpmath.sqrt(-d))
        numeric = l_one_series(d)
    return LOne(d, G.h, w, exact, numeric)
