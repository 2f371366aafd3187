from fractions import Fraction

import mpmath
import pytest

from boecherer.local_arch import ArchError, arch_quadrature_check, gamma_factors, j_infty, trace_s
from boecherer.quadfields import fundamental_discriminants


def close(x, y, tol=1e-40):
    return abs(x - y) <= tol * abs(y)


def test_j_infty_examples():
    with mpmath.workdps(50):
        e = mpmath.exp(-8 * mpmath.pi)
        assert close(j_infty(10, -4).j_infty_over_vol, mpmath.mpf(2) ** 36 * e)
        assert close(j_infty(10, -3).j_infty_over_vol, mpmath.mpf(2) ** 36 * (mpmath.mpf(3) / 4) ** 8.5 * e)
        assert close(j_infty(3, -4).j_infty_over_vol, mpmath.mpf(2) ** 8 * e)


def test_trace_s_branches():
    assert trace_s(-4) == 2 and trace_s(-3) == 2
    assert trace_s(-7) == Fraction(3)
    assert trace_s(-8) == 3


def test_j_infty_rejects():
    with pytest.raises(ArchError):
        j_infty(2, -4)
    with pytest.raises(ArchError):
        j_infty(10, -12)


@pytest.mark.parametrize("k", [3, 7, 10])
def test_polynomial_part_increases_with_disc(k):
    # the exponential factor e^(-4 pi Tr S) makes J_infty itself decrease in |d|;
    # the growing factor 2^(4k-4) (|d|/4)^(k-3/2) is what increases
    ds = fundamental_discriminants(-200, -3)
    vals = [j_infty(k, d).j_infty_over_vol * mpmath.exp(4 * mpmath.pi * float(trace_s(d))) for d in ds]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_gamma_factors_closed_forms():
    with mpmath.workdps(50):
        half, ad, ratio = gamma_factors(10)
        assert close(half, 16 * (2 * mpmath.pi) ** -20 * mpmath.factorial(8) ** 2)
        assert close(ad, 32 * (2 * mpmath.pi) ** -41 * mpmath.factorial(8) ** 2 * mpmath.factorial(18))
        assert close(ratio, (2 * mpmath.pi) ** 21 / (2 * mpmath.factorial(18)))


def test_constant_consistency_range():
    with mpmath.workdps(50):
        for k in range(3, 41):
            lhs = mpmath.mpf(2) ** (2 * k - 6) * gamma_factors(k)[2]
            rhs = mpmath.mpf(2) ** (4 * k - 6) * mpmath.pi ** (2 * k + 1) / mpmath.factorial(2 * k - 2)
            assert close(lhs, rhs, 1e-12)


@pytest.mark.parametrize("k", [3, 4, 6, 10, 20])
def test_quadrature_passes(k):
    rep = arch_quadrature_check(k, 1e-6)
    assert rep.passed and rep.rel_err < 1e-6
    assert abs(rep.params["imag"]) < 1e-20


def test_quadrature_detects_perturbation():
    rep = arch_quadrature_check(10, 1e-6, rhs_scale=1 + mpmath.mpf("1e-3"))
    assert not rep.passed
    assert 5e-4 < rep.rel_err < 2e-3


def test_quadrature_rejects_small_weight():
    with pytest.raises(ArchError):
        arch_quadrature_check(2)
