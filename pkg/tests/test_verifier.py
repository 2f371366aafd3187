import json
from fractions import Fraction

import mpmath
import pytest

from boecherer.local_arch import gamma_factors
from boecherer.modforms import SiegelCoeffTable
from boecherer.quadfields import characters, class_group
from boecherer.verifier import (ConfigError, MissingCoefficient, SuiteConfig, VerifierError, bessel_sum,
                                boecherer_constant, check_sk_vanishing, class_group_report, parse_config,
                                run_suite, sk_lift, sk_ratio_check, suite_passed, tmain_rhs)


@pytest.fixture(scope="module")
def lift():
    return sk_lift(10, 100)


def test_bessel_sum_vanishes_for_nontrivial_characters(lift):
    G = class_group(-23)
    for chi in characters(G):
        R = bessel_sum(lift, -23, chi).value
        if chi.is_trivial():
            assert R == 3 * lift.kohnen(23)
        else:
            assert R.is_zero()


def test_bessel_sum_trivial_is_literal_sum(lift):
    for d in (-15, -20, -39, -56, -84):
        G = class_group(d)
        literal = sum(lift(tuple(f)) for f in G.classes)
        assert bessel_sum(lift, d).value == literal == G.h * lift.kohnen(-d)


def test_bessel_sum_conjugation_symmetry():
    G = class_group(-47)
    table = SiegelCoeffTable(1, 1)
    for i, f in enumerate(G.classes):
        table.set(tuple(f), Fraction(i * i - 3, i + 1))
    for chi in characters(G):
        assert bessel_sum(table, -47, chi.conjugate()).value == bessel_sum(table, -47, chi).value.conjugate()


def test_bessel_sum_missing_coefficient_named():
    table = SiegelCoeffTable(0, 1)
    table.set((1, 1, 6), 1)
    with pytest.raises(MissingCoefficient, match=r"\(2, -1, 3\)|\(2, 1, 3\)"):
        bessel_sum(table, -23)


def test_parseval_on_random_table():
    assert class_group_report(-260).passed
    assert class_group_report(-191).passed


def test_vanishing_for_all_small_discriminants():
    reports = check_sk_vanishing({"dmin": "-100"})
    assert reports and all(r.passed for r in reports)
    assert any(r.params["d"] == -23 for r in reports)


def test_boecherer_constant_examples():
    with mpmath.workdps(50):
        assert abs(boecherer_constant(10) - mpmath.mpf(2) ** 34 * mpmath.pi ** 21 / mpmath.factorial(18)) < 1e-30
        assert abs(boecherer_constant(3) - 2 ** 6 * mpmath.pi ** 7 / 24) < 1e-30
        for k in range(3, 41):
            lhs = mpmath.mpf(2) ** (2 * k - 6) * gamma_factors(k)[2]
            assert abs(lhs / boecherer_constant(k) - 1) < 1e-12
    with pytest.raises(VerifierError):
        boecherer_constant(2)


def test_tmain_rhs_empty_product():
    with mpmath.workdps(50):
        v = tmain_rhs(10, 1, {}, -7, 3)
        assert abs(v - mpmath.mpf(2) ** 14 * 4 * 7 ** 9 * 3) < 1e-20
        assert abs(tmain_rhs(10, 1, {}, -7, 3, weak_yoshida=True) - v / 2) < 1e-20


@pytest.mark.parametrize("tag", ["IIa", "Vb", "Vc", "VIa"])
def test_tmain_rhs_zero_types(tag):
    assert tmain_rhs(10, 3, {3: tag}, -4, 5) == 0


def test_tmain_rhs_hypothesis_check():
    # (-7/3) = -1 but (-8/3) = +1
    assert tmain_rhs(10, 3, {3: "IIIa"}, -7, 1) > 0
    with pytest.raises(VerifierError, match="p = 3"):
        tmain_rhs(10, 3, {3: "IIIa"}, -8, 1)
    with pytest.raises(VerifierError):
        tmain_rhs(10, 2, {2: "IIIa"}, -7, 1)


def test_tmain_rhs_monotone_in_ratio():
    vals = [tmain_rhs(10, 5, {5: "VIb"}, -3, x) for x in (0, 0.5, 1, 2)]
    assert vals[0] == 0 and all(a < b for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("d1,d2", [(-3, -4), (-7, -8)])
def test_sk_ratio_examples(d1, d2):
    rep = sk_ratio_check(10, d1, d2, 1e-6)
    assert rep.passed and rep.rel_err < 1e-6


def test_sk_ratio_same_disc():
    rep = sk_ratio_check(10, -11, -11, 1e-6)
    assert rep.passed and rep.rel_err < 1e-20


def test_sk_ratio_weight_12():
    assert sk_ratio_check(12, -3, -7, 1e-6).passed


def test_sk_ratio_flags_degenerate_pairs(monkeypatch):
    import boecherer.verifier as v
    from boecherer.lvalues import CentralValue
    monkeypatch.setattr(v, "_central", lambda k, d, t: CentralValue(mpmath.mpf("1e-9"), 0.0, 1, 1.0))
    rep = v.sk_ratio_check(10, -3, -4, 1e-6)
    assert rep.passed and "degenerate" in rep.params


def test_sk_ratio_rejects_weights():
    with pytest.raises(VerifierError):
        sk_ratio_check(8, -3, -4)


def test_config_selecting_one_check():
    cfg = parse_config("[suite]\nchecks = local-unram\n")
    reports = run_suite(cfg)
    assert {r.check for r in reports} == {"local-unram"}
    assert len(reports) == 3 and suite_passed(reports)


def test_config_errors_have_locations():
    with pytest.raises(ConfigError, match="line 2"):
        parse_config("[suite]\nchecks local-unram\n")
    with pytest.raises(ConfigError, match="line 3"):
        parse_config("[suite]\njobs = 1\nchecks = local-unram, nonsense\n")
    with pytest.raises(ConfigError, match="line 1"):
        parse_config("[bogus]\nx = 1\n")


def test_suite_json_output(tmp_path):
    out = tmp_path / "r.json"
    cfg = parse_config(f"[suite]\nchecks = constants, arch\njson = {out}\n[arch]\nweights = 10\n[constants]\nkmax = 5\n")
    reports = run_suite(cfg)
    data = json.loads(out.read_text())
    assert len(data) == len(reports) == 4
    assert set(data[0]) == {"check", "lhs", "rhs", "rel_err", "tolerance", "pass", "params"}
    assert all(isinstance(d["pass"], bool) for d in data)


def test_failing_check_is_collected():
    cfg = parse_config("[suite]\nchecks = arch\n[arch]\nweights = 2\n")
    reports = run_suite(cfg)
    assert len(reports) == 1 and not reports[0].passed and "error" in reports[0].params


def test_parallel_suite_matches_sequential():
    text = "[suite]\nchecks = local-unram, constants\njobs = 2\n[constants]\nkmax = 6\n"
    par = run_suite(parse_config(text))
    seq = run_suite(parse_config(text.replace("jobs = 2", "jobs = 1")))
    strip = lambda r: {k: v for k, v in r.to_json().items() if k != "params"}  # noqa: E731
    assert [strip(r) for r in par] == [strip(r) for r in seq]


def test_default_config_lists_all_checks():
    assert SuiteConfig.default().checks == ["local-unram", "local-table", "macdonald", "coset", "arch",
                                            "constants", "sk-ratio", "sk-vanishing", "class-group"]
