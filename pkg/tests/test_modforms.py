import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from boecherer.modforms import (IngestError, KohnenForm, ModFormError, PrecisionError, SKLift,
                                _mul_int_series, cohen_number, delta, eisenstein, hecke_eigenvalue,
                                ingest_kohnen, ingest_qexp, ingest_siegel_table, jacobi_coefficient,
                                jacobi_index1, level1_cusp_eigenform, sk_coefficient)
from boecherer.quadfields import class_group, fundamental_discriminants, reduced_forms


def sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


def naive_product(a, b, n):
    return [sum(a[i] * b[m - i] for i in range(m + 1)) for m in range(n + 1)]


def test_eisenstein_and_delta_examples():
    assert eisenstein(4, 10)[1] == 240 == 240 * sigma(3, 1)
    assert eisenstein(6, 10)[3] == -504 * sigma(5, 3)
    assert delta(10)[1] == 1
    assert level1_cusp_eigenform(18, 5)[2] == -528


def test_weight_18_coefficient_by_direct_product():
    D, E6 = delta(5), eisenstein(6, 5)
    assert naive_product(D.coeffs, E6.coeffs, 5)[2] == -528


def test_delta_identity_with_eisenstein():
    E4, E6, D = eisenstein(4, 60), eisenstein(6, 60), delta(60)
    assert ((E4 * E4 * E4 - E6 * E6).scale(Fraction(1, 1728))).coeffs == D.coeffs


@settings(max_examples=25)
@given(st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=64, max_size=90),
       st.lists(st.integers(-10 ** 30, 10 ** 30), min_size=64, max_size=90))
def test_kronecker_substitution_matches_schoolbook(a, b):
    n = min(len(a), len(b)) - 1
    assert _mul_int_series(a, b, n) == naive_product(a, b, n)


def test_kronecker_substitution_zero_factor():
    a = [10 ** 40 - k for k in range(80)]
    assert _mul_int_series(a, [0] * 80, 79) == [0] * 80
    assert _mul_int_series(a, [1] + [0] * 79, 79) == a


def test_ramanujan_congruence():
    tau = delta(500)
    for n in range(1, 501):
        assert (tau[n] - sigma(11, n)) % 691 == 0


@pytest.mark.parametrize("w", [12, 16, 18, 20, 22])
def test_hecke_multiplicativity(w):
    g = level1_cusp_eigenform(w, 40000)
    a = g.coeffs
    for m in range(1, 201):
        for n in range(1, 201):
            if math.gcd(m, n) == 1:
                assert a[m * n] == a[m] * a[n]
    for p in (2, 3, 5, 7):
        assert a[p * p] == a[p] ** 2 - p ** (w - 1)


def test_hecke_eigenvalue_examples():
    g = level1_cusp_eigenform(18, 20)
    assert hecke_eigenvalue(g, 1) == 1
    assert hecke_eigenvalue(g, 4) == g[2] ** 2 - 2 ** 17
    with pytest.raises(ModFormError):
        level1_cusp_eigenform(24, 10)
    with pytest.raises(ModFormError):
        eisenstein(8, 10)


def test_cohen_number_examples():
    assert cohen_number(2, 0) == Fraction(1, 120)
    assert cohen_number(1, 3) == Fraction(1, 3)
    assert cohen_number(1, 4) == Fraction(1, 2)
    assert cohen_number(2, 5) == 0


def _hurwitz_class_number(N):
    """Weighted count of reduced forms of discriminant -N (not necessarily primitive)."""
    total = Fraction(0)
    for a in range(1, math.isqrt(N // 3) + 1):
        for b in range(-a, a + 1):
            if (b * b + N) % (4 * a):
                continue
            c = (b * b + N) // (4 * a)
            if c < a or ((abs(b) == a or a == c) and b < 0):
                continue
            if (a, b, c) == (a, 0, a):
                total += Fraction(1, 2)
            elif a == b == c:
                total += Fraction(1, 3)
            else:
                total += 1
    return total


def test_cohen_weight_one_is_hurwitz_class_number():
    for N in range(3, 300):
        if N % 4 in (0, 3):
            assert cohen_number(1, N) == _hurwitz_class_number(N)


def test_jacobi_examples():
    e4 = jacobi_index1(4, 20)
    assert e4[0] == 1 and e4[3] == 56 and e4[4] == 126
    e6 = jacobi_index1(6, 20)
    assert e6[3] == -88 and e6[4] == -330
    assert jacobi_index1(10, 20)[0] == 0


def test_jacobi_cusp_forms_known_coefficients():
    # phi_10,1 = (y - 2 + 1/y) q + ..., phi_12,1 = (y + 10 + 1/y) q + ...
    e10, e12 = jacobi_index1(10, 40), jacobi_index1(12, 40)
    assert (e10[3], e10[4], e10[7], e10[8]) == (1, -2, -16, 36)
    assert (e12[3], e12[4], e12[7], e12[8]) == (1, 10, -88, -132)
    assert all(v.denominator == 1 for v in e10.values())


@pytest.mark.parametrize("k", [4, 6, 10, 12])
def test_theta_decomposition_consistency(k):
    e = jacobi_index1(k, 200)
    seen = {}
    for n in range(0, 51):
        for r in range(-2 * math.isqrt(n) - 1, 2 * math.isqrt(n) + 2):
            D = 4 * n - r * r
            if D < 0:
                continue
            key = (D, r % 2)
            v = jacobi_coefficient(e, n, r)
            assert seen.setdefault(key, v) == v
    assert all(e[D] == 0 for D in e if D % 4 in (1, 2))


def test_kohnen_plus_space_support():
    with pytest.raises(ModFormError):
        KohnenForm(10, {5: Fraction(1)}, 10)
    K = KohnenForm.from_jacobi(10, 20)
    assert K(5) == 0
    with pytest.raises(PrecisionError):
        K(21)


@pytest.fixture(scope="module")
def lift():
    return SKLift.build(10, 120, n_source=50)


def test_sk_coefficient_divisor_sum(lift):
    c = lift.kohnen
    assert sk_coefficient(lift, (1, 1, 1)) == c(3)
    assert sk_coefficient(lift, (2, 0, 2)) == c(16) + 2 ** 9 * c(4)
    assert sk_coefficient(lift, (3, 3, 3)) == c(27) + 3 ** 9 * c(3)
    with pytest.raises(PrecisionError):
        sk_coefficient(lift, (10, 0, 10))


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3),
       st.sampled_from([(1, 1, 6), (2, 1, 3), (2, 0, 2), (1, 0, 5), (3, 2, 3), (2, 2, 5)]))
def test_sk_coefficient_is_class_invariant(p, q, r, s, T):
    if p * s - q * r != 1:
        return
    a, b, c = T
    T2 = (a * p * p + b * p * r + c * r * r, 2 * a * p * q + b * (p * s + q * r) + 2 * c * r * s,
          a * q * q + b * q * s + c * s * s)
    from boecherer.verifier import sk_lift
    F = sk_lift(10, 120)
    assert sk_coefficient(F, T) == sk_coefficient(F, T2)


def test_sk_coefficient_constant_on_fundamental_classes(lift):
    for d in fundamental_discriminants(-100, -3):
        vals = {sk_coefficient(lift, f) for f in class_group(d).classes}
        assert vals == {lift.kohnen(-d)}


def test_ingest_qexp(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("# weight 12 level 1\n0 0\n1 1\n2 -24\n3 252\n")
    g = ingest_qexp(p)
    assert g.weight == 12 and g.coeffs == (0, 1, -24, 252)
    p.write_text("1 1\n1 2\n")
    with pytest.raises(IngestError, match=":2:"):
        ingest_qexp(p)
    p.write_text("1 1\n2 x\n")
    with pytest.raises(IngestError, match=":2:"):
        ingest_qexp(p)


def test_ingest_siegel_table(tmp_path):
    p = tmp_path / "t.txt"
    p.write_text("2 1 3 7\n1 1 1 -5\n")
    t = ingest_siegel_table(p)
    assert t((3, 1, 2)) == 7
    assert t((1, -1, 1)) == -5
    odd = ingest_siegel_table(p, weight=11)
    with pytest.raises(KeyError):
        odd((3, 1, 2))
    p.write_text("2 1 3 7\n3 -1 2 8\n")
    with pytest.raises(IngestError, match=":2:"):
        ingest_siegel_table(p)
    p.write_text("2 1 3 7\n3 1 2 8\n")
    with pytest.raises(IngestError, match=":2:"):
        ingest_siegel_table(p)
    assert ingest_siegel_table(p, weight=11)((3, 1, 2)) == 8
    p.write_text("2 1 3\n")
    with pytest.raises(IngestError, match=":1:"):
        ingest_siegel_table(p)


def test_ingest_kohnen(tmp_path):
    p = tmp_path / "k.txt"
    p.write_text("3 1\n4 -2\n")
    K = ingest_kohnen(p, 10)
    assert K(4) == -2 and K.dmax == 4
    p.write_text("3 1\n5 2\n")
    with pytest.raises(IngestError, match=":2:"):
        ingest_kohnen(p, 10)


def test_reduced_forms_used_as_keys_are_reduced():
    assert all(f.is_reduced() for f in reduced_forms(-56))
