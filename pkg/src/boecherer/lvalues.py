"""Numerical L-values: smoothed approximate functional equations and Dirichlet series."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import mpmath

from .modforms import QExpansion
from .quadfields import is_fundamental, kronecker

DPS = 50
MIN_TOL = 1e-10


class LValueError(ValueError):
    pass


class InsufficientCoefficients(LValueError):
    def __init__(self, required: int, available: int):
        super().__init__(f"need {required} coefficients, only {available} available")
        self.required = required
        self.available = available


class CutoffDisagreement(LValueError):
    def __init__(self, v1, v2):
        super().__init__(f"AFE values at cutoffs X and 2X disagree: {mpmath.nstr(v1, 20)} vs {mpmath.nstr(v2, 20)}")
        self.values = (v1, v2)


@dataclass(frozen=True)
class CentralValue:
    value: mpmath.mpf
    error_bound: float
    coefficients_used: int
    cutoff: float
    other_value: mpmath.mpf = None
    root_number: int = 1


def _conductor_data(g: QExpansion, d: int):
    if g.level != 1 or g.coeffs[1] != 1:
        raise LValueError("expected a Hecke-normalized level-1 eigenform")
    if d != 1 and (d >= 0 or not is_fundamental(d)):
        raise LValueError(f"{d} is not a negative fundamental discriminant (or 1)")
    w = g.weight
    eps = kronecker(d, -1) * (-1) ** (w // 2)
    return w, eps


class _AFE:
    """Lambda(s) = Q^s Gamma(s + kappa) L(s), Lambda(s) = eps Lambda(1 - s).

    L(s) = sum b_n n^(-s), b_n = a_n chi_d(n) / n^kappa, kappa = (w - 1)/2,
    Q = |d| / (2 pi). For X > 0,
      Lambda(s) = sum_n b_n [(Q/n)^s Gamma(s+kappa, nX/Q) + eps (Q/n)^(1-s) Gamma(1-s+kappa, n/(XQ))].
    """

    def __init__(self, g: QExpansion, d: int):
        self.g = g
        self.d = d
        self.w, self.eps = _conductor_data(g, d)
        self.kappa = mpmath.mpf(self.w - 1) / 2
        self.Q = mpmath.mpf(abs(d)) / (2 * mpmath.pi)

    def _b(self, n):
        c = kronecker(self.d, n)
        if c == 0:
            return mpmath.mpf(0)
        return c * mpmath.mpf(self.g[n]) / mpmath.mpf(n) ** self.kappa

    def tail_terms(self, s, X, tol) -> int:
        """N such that the terms n > N of both sums are below tol in total.

        Uses |b_n| <= d(n) <= n, Gamma(a, x) <= 2 x^(a-1) e^(-x) for x >= 2(a-1),
        and a geometric majorant once the termwise ratio drops below 1.
        """
        s = mpmath.mpf(s)
        total_needed = mpmath.mpf(tol)
        N = 1
        while True:
            bound = mpmath.mpf(0)
            for (sig, y) in ((s, X / self.Q), (1 - s, 1 / (X * self.Q))):
                a = sig + self.kappa
                n = N + 1
                x = n * y
                if x < 2 * max(a - 1, 1) or x < 2 * a:
                    bound = mpmath.inf
                    break
                term = n * (self.Q / n) ** sig * 2 * x ** (a - 1) * mpmath.exp(-x)
                rho = mpmath.exp(-y) * (1 + mpmath.mpf(1) / n) ** (a + 1)
                if rho >= 1:
                    bound = mpmath.inf
                    break
                bound += term / (1 - rho)
            if bound < total_needed:
                return N
            N = int(N * 1.25) + 1

    def completed(self, s, X, tol):
        s = mpmath.mpf(s)
        N = self.tail_terms(s, X, tol)
        if N > self.g.precision:
            raise InsufficientCoefficients(N, self.g.precision)
        a1, a2 = s + self.kappa, 1 - s + self.kappa
        y1, y2 = mpmath.mpf(X) / self.Q, 1 / (mpmath.mpf(X) * self.Q)
        total = mpmath.mpf(0)
        for n in range(1, N + 1):
            b = self._b(n)
            if b == 0:
                continue
            r = self.Q / n
            total += b * (r ** s * mpmath.gammainc(a1, n * y1)
                          + self.eps * r ** (1 - s) * mpmath.gammainc(a2, n * y2))
        return total, N

    def value(self, s, X, tol):
        """L(s) from the completed value; returns (value, N)."""
        lam, N = self.completed(s, X, tol)
        s = mpmath.mpf(s)
        return lam / (self.Q ** s * mpmath.gamma(s + self.kappa)), N


def _gate(afe: _AFE, s, tol, X=1) -> CentralValue:
    if tol < MIN_TOL:
        raise LValueError(f"tolerance below {MIN_TOL} is not supported")
    with mpmath.workdps(DPS):
        inner = mpmath.mpf(tol) * 1e-3
        scale = afe.Q ** mpmath.mpf(s) * mpmath.gamma(mpmath.mpf(s) + afe.kappa)
        v1, n1 = afe.value(s, X, inner * scale)
        v2, n2 = afe.value(s, 2 * X, inner * scale)
        diff = abs(v1 - v2)
        if diff > tol * max(abs(v1), abs(v2)):
            raise CutoffDisagreement(v1, v2)
        return CentralValue(+v1, float(inner), max(n1, n2), float(X), +v2, afe.eps)


def twisted_central_value(g: QExpansion, d: int, tol: float = 1e-8) -> CentralValue:
    """L(1/2, g x chi_d) in the analytic normalization; d = 1 gives the untwisted value.

    When the root number is -1 the value vanishes identically and 0 is returned.
    """
    afe = _AFE(g, d)
    if afe.eps == -1:
        return CentralValue(mpmath.mpf(0), 0.0, 0, 0.0, mpmath.mpf(0), -1)
    return _gate(afe, mpmath.mpf(1) / 2, tol)


def l_value(g: QExpansion, s, d: int = 1, tol: float = 1e-10) -> CentralValue:
    """L(s, g x chi_d) for real s via the AFE at general s (e.g. s = 3/2)."""
    return _gate(_AFE(g, d), mpmath.mpf(s), tol)


# --------------------------------------------------------------------------
# absolutely convergent Dirichlet series

@dataclass(frozen=True)
class CoefficientSource:
    """Dirichlet coefficients with a growth certificate.

    growth "one": c_n = 1 (zeta); "divisor": |c_n| <= d(n) n^sigma0;
    "bounded": |c_n| <= bound n^sigma0.
    """

    coeff: Callable[[int], object]
    growth: str = "divisor"
    sigma0: float = 0.0
    bound: float = 1.0


ZETA = CoefficientSource(lambda n: 1, "one")


def hecke_source(g: QExpansion) -> CoefficientSource:
    """Analytically normalized coefficients a_n / n^((w-1)/2) of a level-1 eigenform."""
    kappa = mpmath.mpf(g.weight - 1) / 2
    return CoefficientSource(lambda n: mpmath.mpf(g[n]) / mpmath.mpf(n) ** kappa, "divisor")


def _zeta_tail(s, N: int, terms: int = 8):
    """Euler-Maclaurin tail sum_{n > N} n^(-s); remainder bounded by the next term."""
    s = mpmath.mpf(s)
    N = mpmath.mpf(N)
    t = N ** (1 - s) / (s - 1) - N ** (-s) / 2
    for j in range(1, terms + 1):
        t += mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * mpmath.rf(s, 2 * j - 1) * N ** (-s - 2 * j + 1)
    j = terms + 1
    err = abs(mpmath.bernoulli(2 * j) / mpmath.factorial(2 * j) * mpmath.rf(s, 2 * j - 1)
              * N ** (-s - 2 * j + 1))
    return t, err


def tail_bound(src: CoefficientSource, s, N: int):
    """Rigorous bound for |sum_{n > N} c_n n^(-s)| from the growth certificate."""
    sig = mpmath.mpf(s) - src.sigma0
    if sig <= 1:
        return mpmath.inf
    N = mpmath.mpf(N)
    if src.growth == "one":
        return _zeta_tail(s, int(N))[1]
    if src.growth == "bounded":
        return src.bound * N ** (1 - sig) / (sig - 1)
    # partial summation with sum_{n <= x} d(n) <= x (log x + 1)
    return sig * (N ** (1 - sig) * (mpmath.log(N) + 1) / (sig - 1) + N ** (1 - sig) / (sig - 1) ** 2)


def dirichlet_series_value(src: CoefficientSource, s, tol: float = 1e-10, max_terms: int = 10 ** 6):
    """sum c_n n^(-s) for s in the region of absolute convergence.

    Returns (value, tail_bound, N). Raises when s is too close to the abscissa
    for the requested tolerance within ``max_terms`` terms.
    """
    s = mpmath.mpf(s)
    margin = s - 1 - src.sigma0
    if margin <= 0:
        raise LValueError(f"s = {s} is not in the region of absolute convergence")
    with mpmath.workdps(DPS):
        N = 16
        while tail_bound(src, s, N) >= tol:
            N *= 2
            if N > max_terms:
                raise LValueError(f"s = {mpmath.nstr(s, 6)} too close to the abscissa (margin "
                                  f"{mpmath.nstr(margin, 3)}): more than {max_terms} terms needed")
        total = mpmath.fsum(src.coeff(n) * mpmath.mpf(n) ** (-s) for n in range(1, N + 1))
        bound = tail_bound(src, s, N)
        if src.growth == "one":
            total += _zeta_tail(s, N)[0]
    return total, bound, N


def completed_zeta(s) -> mpmath.mpf:
    """pi^(-s/2) Gamma(s/2) zeta(s) for real s > 1."""
    s = mpmath.mpf(s)
    if s <= 1:
        raise LValueError("completed_zeta is only provided for s > 1")
    with mpmath.workdps(DPS):
        return mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)
