"""The ten acceptance criteria, each at its stated tolerance and time budget.

Every test prints a single PASS/FAIL line (visible in ``pytest -v`` output);
``python tests/test_acceptance.py`` prints the same lines without pytest.
"""
import time

import pytest

from boecherer import verifier as V

# (number, label, check function, options, time budget in seconds, tolerance)
CRITERIA = [
    (1, "spherical vector, type I, l = +1 and -1, equals 1", "local-unram", {}, 10, 0.0),
    (2, "spherical vector, type IIb, equals 2", "local-unram", {}, 10, 0.0),
    (3, "P1 table J0/J columns and M(pi) identity", "local-table", {}, 10, 0.0),
    (4, "Macdonald: identity, Weyl invariance, 1000 oracle draws", "macdonald", {"draws": 1000}, 60, 0.0),
    (5, "coset classifier vs elementary divisors, p = 3, 5", "coset", {"primes": "3, 5"}, 120, 0.0),
    (6, "archimedean integral, k in {3,4,6,10,20}", "arch", {"weights": "3, 4, 6, 10, 20", "tol": 1e-6}, 60, 1e-6),
    (7, "constant assembly, k = 3..40", "constants", {"kmin": 3, "kmax": 40, "tol": 1e-12}, 5, 1e-12),
    (8, "SK coefficient ratios vs L-value ratios, k = 10", "sk-ratio",
     {"k": 10, "discs": "-3, -4, -7, -8, -11, -19, -23, -24", "tol": 1e-6, "afe_tol": 1e-8}, 600, 1e-6),
    (9, "SK Bessel sums vanish for nontrivial characters, -3 >= d >= -100", "sk-vanishing",
     {"k": 10, "dmin": -100}, 60, 0.0),
    (10, "class group axioms, orthogonality, Parseval, -3 >= d >= -200", "class-group", {"dmin": -200}, 60, 0.0),
]


def _select(number, reports):
    """Criteria 1 and 2 share one check; split its reports by type."""
    if number == 1:
        return [r for r in reports if r.params.get("type") == "I"]
    if number == 2:
        return [r for r in reports if r.params.get("type") == "IIb"]
    return reports


def run_criterion(number):
    _, label, name, opts, budget, tol = CRITERIA[number - 1]
    t0 = time.time()
    reports = _select(number, V.CHECKS[name](opts))
    elapsed = time.time() - t0
    failed = [r for r in reports if not r.passed]
    worst = max((r.rel_err for r in reports), default=0.0)
    ok = bool(reports) and not failed and elapsed < budget
    line = (f"{'PASS' if ok else 'FAIL'} criterion {number:2d}: {label} "
            f"[{len(reports) - len(failed)}/{len(reports)} reports, max rel_err {worst:.2e}, "
            f"tol {tol:g}, {elapsed:.1f}s of {budget}s]")
    return ok, line, reports, elapsed


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    ok, line, reports, elapsed = run_criterion(number)
    with capsys.disabled():
        print("\n" + line)
    tol = CRITERIA[number - 1][5]
    for r in reports:
        assert r.passed, r.line()
        assert r.tolerance <= tol, r.line()
    assert elapsed < CRITERIA[number - 1][4]
    assert ok


def test_criterion_counts():
    # guard against a criterion silently shrinking its coverage
    assert len(_select(1, V.check_local_unram())) == 2
    table = V.check_local_table()
    assert {r.params["type"] for r in table if "type" in r.params} == {"I", "IIIa", "VIb", "IIa", "Vb", "Vc", "VIa"}
    assert any("identity" in r.params for r in table)
    assert len(V.check_sk_ratio({"discs": "-3, -4, -7, -8, -11, -19, -23, -24"})) == 28
    assert all("degenerate" not in r.params for r in V.check_sk_ratio())
    assert len(V.check_constants()) == 38
    assert len(V.check_arch()) == 5


if __name__ == "__main__":
    results = [run_criterion(c[0]) for c in CRITERIA]
    for _, line, _, _ in results:
        print(line)
    raise SystemExit(0 if all(r[0] for r in results) else 1)
