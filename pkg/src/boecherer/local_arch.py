"""Archimedean local factor for holomorphic discrete series of weight k > 2."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .quadfields import is_fundamental
from .report import VerificationReport

DPS = 50


class ArchError(ValueError):
    pass


@dataclass(frozen=True)
class ArchResult:
    k: int
    d: int
    j_infty_over_vol: mpmath.mpf
    trace_S: Fraction


def trace_s(d: int) -> Fraction:
    if d % 4 == 0:
        return Fraction(-d, 4) + 1
    return Fraction(1 - d, 4) + 1


def j_infty(k: int, d: int) -> ArchResult:
    """J_infinity divided by the volume of R^x \\ T_S(R)."""
    if k <= 2:
        raise ArchError("weight must exceed 2")
    if d >= 0 or not is_fundamental(d):
        raise ArchError(f"{d} is not a negative fundamental discriminant")
    tr = trace_s(d)
    with mpmath.workdps(DPS):
        val = (mpmath.mpf(2) ** (4 * k - 4)
               * (mpmath.mpf(-d) / 4) ** (k - mpmath.mpf(3) / 2)
               * mpmath.exp(-4 * mpmath.pi * mpmath.mpf(tr.numerator) / tr.denominator))
    return ArchResult(k, d, val, tr)


def gamma_factors(k: int):
    """(L_inf(1/2, ...), L_inf(1, Ad), their ratio) for weight k."""
    if k < 3:
        raise ArchError("weight must be at least 3")
    with mpmath.workdps(DPS):
        two_pi = 2 * mpmath.pi
        g = mpmath.gamma(k - 1)
        linf_half = 16 * two_pi ** (-2 * k) * g ** 2
        linf_ad = 32 * two_pi ** (-4 * k - 1) * g ** 2 * mpmath.gamma(2 * k - 1)
        ratio = linf_half / linf_ad
    return linf_half, linf_ad, ratio


# --------------------------------------------------------------------------
# quadrature check of
#   int_R (2 - i x)^(-nu) e^(-2 pi i x) dx = (2 pi)^nu e^(-4 pi) / Gamma(nu),  nu = k - 1/2


def _tail(nu, T, n_terms: int):
    """Asymptotic expansion of int_T^inf (2 - ix)^(-nu) e^(-2 pi i x) dx.

    Repeated integration by parts; returns (value, bound on the remainder).
    With f(x) = (2 - ix)^(-nu), f^(j)(x) = (nu)_j i^j (2 - ix)^(-nu-j) and
    |remainder| <= (nu)_n / (2 pi)^n * int_T^inf |2 - ix|^(-nu-n) dx.
    """
    omega = 2 * mpmath.pi
    total = mpmath.mpc(0)
    phase = mpmath.exp(-1j * omega * T)
    for j in range(n_terms):
        fj = mpmath.rf(nu, j) * (1j) ** j * (2 - 1j * T) ** (-nu - j)
        total += phase * fj / (1j * omega) ** (j + 1)
    bound = mpmath.rf(nu, n_terms) / omega ** n_terms * T ** (1 - nu - n_terms) / (nu + n_terms - 1)
    return total, bound


def arch_quadrature_lhs(k: int, tol: float = 1e-6):
    """Numerical left side; returns (value, error_estimate, T)."""
    nu = mpmath.mpf(k) - mpmath.mpf(1) / 2
    with mpmath.workdps(30):
        nu = mpmath.mpf(k) - mpmath.mpf(1) / 2
        rhs = _rhs(k)
        target = mpmath.mpf(tol) * 1e-3 * abs(rhs)
        n_terms = 12
        T = 8
        while True:
            _, bound = _tail(nu, mpmath.mpf(T), n_terms)
            if 2 * bound < target:
                break
            T *= 2
            if T > 4096:
                raise ArchError(f"tail bound {2 * bound} not below {target} for k={k}")

        def f_re(x):
            return mpmath.re((2 - 1j * x) ** (-nu) * mpmath.expj(-2 * mpmath.pi * x))

        def f_im(x):
            return mpmath.im((2 - 1j * x) ** (-nu) * mpmath.expj(-2 * mpmath.pi * x))

        nodes = [mpmath.mpf(j) / 2 for j in range(-2 * T, 2 * T + 1)]
        re_part, err_re = mpmath.quad(f_re, nodes, error=True)
        im_part, err_im = mpmath.quad(f_im, nodes, error=True)
        right, rb = _tail(nu, mpmath.mpf(T), n_terms)
        # the left tail is the complex conjugate of the right one
        tails = right + mpmath.conj(right)
        value = mpmath.mpc(re_part, im_part) + tails
        err = err_re + err_im + 2 * rb
    return value, err, T


def _rhs(k: int):
    nu = mpmath.mpf(k) - mpmath.mpf(1) / 2
    return (2 * mpmath.pi) ** nu * mpmath.exp(-4 * mpmath.pi) / mpmath.gamma(nu)


def arch_quadrature_check(k: int, tol: float = 1e-6, rhs_scale=1) -> VerificationReport:
    """Compare the quadrature of the archimedean integral with its closed form.

    ``rhs_scale`` perturbs the right side (detector sanity checks).
    """
    if k < 3:
        raise ArchError("weight must be at least 3")
    with mpmath.workdps(30):
        value, err, T = arch_quadrature_lhs(k, tol)
        rhs = _rhs(k) * mpmath.mpf(rhs_scale)
        rel = abs(value - rhs) / abs(rhs)
        if err > tol * abs(rhs):
            raise ArchError(f"quadrature did not converge: achieved error {mpmath.nstr(err, 5)}")
    return VerificationReport(
        check="arch-quadrature",
        lhs=mpmath.nstr(value.real, 30),
        rhs=mpmath.nstr(rhs, 30),
        rel_err=float(rel),
        tolerance=tol,
        passed=bool(rel < tol),
        params={"k": k, "T": T, "error_estimate": float(err), "imag": float(value.imag),
                "rhs_scale": str(rhs_scale)},
    )
