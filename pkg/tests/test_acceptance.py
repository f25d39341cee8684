"""Acceptance suite: one marked group of tests per criterion.

The terminal summary (see conftest.py) prints one PASS/FAIL line per criterion.
"""

from __future__ import annotations

import subprocess
import sys
import time

import numpy as np
import pytest
from scipy import integrate

from wgorder.baseline import BaselineModel, OddsFunction
from wgorder.copula import ArchimedeanGenerator, compose_phi_psi, log_convexity_check, super_additive_check
from wgorder.grid import REPRODUCTION_POINTS, Grid
from wgorder.majorization import majorizes, r_convexity_check
from wgorder.orderlab import Relation, Status, Trend, check_hr, check_lr, check_st
from wgorder.presets import ce_3_1, ce_3_2, evaluate_panels
from wgorder.systems import SystemSpec, empirical_survival, min_hazard, min_pdf, min_sample, min_survival
from wgorder.theorems import Theorem, hierarchy_violations, verify_theorem
from wgorder.weibull_g import WeibullGParams, wg_cdf, wg_hazard, wg_pdf, wg_quantile, wg_survival

SLACK = 1e-9


def criterion(key, label):
    return pytest.mark.criterion(key, label)


def timed(fn, *args, **kw):
    t0 = time.perf_counter()
    out = fn(*args, **kw)
    return out, time.perf_counter() - t0


# -- 1: first counterexample -----------------------------------------------------------------

C1A = "1(a)", "Burr(3, 0.35) odds panels increasing / decreasing / decreasing (< 5 s)"
C1B = "1(b)", "Burr(3, 0.35) outlier pair: density ratio increasing, lr holds (< 5 s)"
C1C = "1(c)", "Burr(3, 0.35) non-outlier pair: density ratio non-monotone with witness (< 5 s)"


@criterion(*C1A)
def test_c1a_odds_panels():
    res, elapsed = timed(evaluate_panels, ce_3_1(), Grid.uniform(REPRODUCTION_POINTS), SLACK)
    trends = {r.panel.name: r.report.trend for r in res}
    assert trends["fig1a"] is Trend.INCREASING
    assert trends["fig1b"] is Trend.DECREASING
    assert trends["fig1c"] is Trend.DECREASING
    assert elapsed < 5


@criterion(*C1B)
def test_c1b_outlier_ratio_increasing():
    a, b = ce_3_1().systems["outlier"]
    assert majorizes(a.alphas, b.alphas)
    grid = Grid.uniform(REPRODUCTION_POINTS)
    (verdict, elapsed) = timed(check_lr, a, b, grid)
    assert verdict.status is Status.HOLDS
    res = {r.panel.name: r for r in evaluate_panels(ce_3_1(), grid, SLACK)}
    assert res["fig2a"].report.trend is Trend.INCREASING
    assert elapsed < 5


@criterion(*C1C)
def test_c1c_non_outlier_ratio_non_monotone():
    # Expected to fail: gamma_2 = gamma_3, so both systems depend on alpha only through
    # alpha_1 and alpha_2 + alpha_3 = 0.4; the minima are equal in distribution and the
    # density ratio is identically 1.
    t0 = time.perf_counter()
    res = {r.panel.name: r for r in evaluate_panels(ce_3_1(), Grid.uniform(REPRODUCTION_POINTS), SLACK)}
    elapsed = time.perf_counter() - t0
    report = res["fig2b"].report
    assert elapsed < 5
    assert report.trend is Trend.NON_MONOTONE, f"observed {report.trend.value}"
    assert report.witness is not None


# -- 2: second counterexample ----------------------------------------------------------------

C2 = "2", "Weibull(0.02, 2) counterexample: convex odds, lr fails, hr holds (< 5 s)"


@criterion(*C2)
def test_c2_odds_convexity():
    grid = Grid.uniform(REPRODUCTION_POINTS)
    w = OddsFunction(BaselineModel.weibull(0.02, 2.0))
    a, _ = ce_3_2().systems["scale"]
    # the odds enter through w(gamma x); cover every scaled point
    z = np.unique(np.concatenate([g * grid.x for g in (3.0, 2.5, 2.0, 1.0)]))
    for r in (1, 2):
        assert r_convexity_check(w, r, z), r
    assert a.beta >= 2


@criterion(*C2)
def test_c2_orders():
    a, b = ce_3_2().systems["scale"]
    assert majorizes(a.gammas, b.gammas)
    grid = Grid.uniform(REPRODUCTION_POINTS)
    t0 = time.perf_counter()
    lr = check_lr(a, b, grid)
    hr = check_hr(a, b, grid)
    ratio = {r.panel.name: r for r in evaluate_panels(ce_3_2(), grid, SLACK)}["fig3c"].report
    elapsed = time.perf_counter() - t0
    assert lr.status is Status.FAILS and lr.witness is not None
    assert ratio.trend is Trend.NON_MONOTONE and ratio.witness is not None
    assert hr.status is Status.HOLDS
    assert check_st(a, b, grid).holds
    assert elapsed < 5


# -- 3 and 4: theorem suite and hierarchy ----------------------------------------------------

C3 = "3", "randomized theorem suite, seed 42, every trial certified (< 60 s)"
C4 = "4", "lr => hr => st across all theorem-suite trials"

SUITE = {
    Theorem.T3_1: 100,
    Theorem.T3_2: 100,
    Theorem.T3_3: 50,
    Theorem.T3_4: 100,
    Theorem.T3_5: 50,
    Theorem.T3_6: 50,
    Theorem.T3_7: 50,
}


@pytest.fixture(scope="module")
def suite():
    reports, times = {}, {}
    for thm, trials in SUITE.items():
        reports[thm], times[thm] = timed(verify_theorem, thm, 42, trials)
    return reports, times


@criterion(*C3)
@pytest.mark.parametrize("thm", list(SUITE), ids=lambda t: t.value)
def test_c3_theorem(suite, thm):
    report = suite[0][thm]
    assert len(report.records) == SUITE[thm]
    assert report.failures == [], [r.to_dict() for r in report.failures[:3]]
    assert report.inconclusive == []
    assert report.passes == SUITE[thm]
    for rec in report.records:
        concl = rec.verdicts[thm.conclusion]
        assert concl.status is Status.HOLDS


@criterion(*C3)
@pytest.mark.parametrize("thm", [Theorem.T3_6, Theorem.T3_7], ids=lambda t: t.value)
def test_c3_generator_pairs(suite, thm):
    for rec in suite[0][thm].records:
        ga, gb = rec.a.generator, rec.b.generator
        assert super_additive_check(compose_phi_psi(gb, ga))
        assert log_convexity_check(gb)


@criterion(*C3)
def test_c3_shock_step_at_zero(suite):
    for rec in suite[0][Theorem.T3_4].records:
        assert np.prod(rec.a.shock_probs) <= np.prod(rec.b.shock_probs)


@criterion(*C3)
def test_c3_total_time(suite):
    assert sum(suite[1].values()) < 60


@criterion(*C4)
def test_c4_hierarchy(suite):
    total = 0
    for report in suite[0].values():
        assert hierarchy_violations(report.records) == []
        for rec in report.records:
            v = rec.verdicts
            if Relation.LR in v and v[Relation.LR].holds:
                assert v[Relation.HR].holds
            if Relation.HR in v and v[Relation.HR].holds:
                assert v[Relation.ST].holds
            total += 1
    assert total == sum(SUITE.values())


# -- 5: Monte Carlo oracle -------------------------------------------------------------------

C5 = "5", "empirical survival of 1e5 seeded draws within 0.01 of the analytic survival (< 60 s)"

BURR = BaselineModel.burr(3.0, 0.35)


def _mc_system(**kw):
    return SystemSpec.from_vectors([1.0, 0.6], [1.0, 1.5], 2.0, BURR, **kw)


MC_SYSTEMS = {
    "independent": _mc_system(),
    "shocked": _mc_system(shock_probs=[0.9, 0.8]),
    "clayton-0.5": _mc_system(generator=ArchimedeanGenerator.clayton(0.5)),
    "clayton-2": _mc_system(generator=ArchimedeanGenerator.clayton(2.0)),
    "independence-generator": _mc_system(generator=ArchimedeanGenerator.independence()),
}
MC_TIMES: dict[str, float] = {}


@criterion(*C5)
@pytest.mark.parametrize("name", list(MC_SYSTEMS))
def test_c5_monte_carlo(name):
    s = MC_SYSTEMS[name]
    t0 = time.perf_counter()
    draws = min_sample(s, 2024, 100_000)
    x = np.quantile(draws.values[~draws.atom], np.linspace(0.05, 0.95, 10))
    err = np.max(np.abs(empirical_survival(draws, x) - np.asarray(min_survival(s, x))))
    MC_TIMES[name] = time.perf_counter() - t0
    assert err < 0.01
    if s.shock_probs is not None:
        assert abs(draws.atom.mean() - (1 - 0.9 * 0.8)) < 0.01
        assert np.all(draws.values[draws.atom] == 0.0)


@criterion(*C5)
def test_c5_total_time():
    assert len(MC_TIMES) == len(MC_SYSTEMS)
    assert sum(MC_TIMES.values()) < 60


# -- 6: self-consistency ------------------------------------------------------------------------

C6 = "6", "cdf(quantile(u)) = u, pdf integrates to 1, hazard * survival = pdf"

BASELINES = [
    BaselineModel.exponential(1.0),
    BaselineModel.weibull(0.02, 2.0),
    BaselineModel.burr(3.0, 0.35),
    BaselineModel.lomax(2.0),
]
COMBOS = [WeibullGParams(1.3, beta, 0.8, base) for base in BASELINES for beta in (0.5, 1.0, 3.4)]
COMBO_IDS = [f"{p.baseline.family.value}-beta{p.beta}" for p in COMBOS]


@criterion(*C6)
@pytest.mark.parametrize("p", COMBOS, ids=COMBO_IDS)
def test_c6_round_trip(p):
    u = np.round(np.arange(0.05, 0.951, 0.05), 2)
    np.testing.assert_allclose(wg_cdf(p, wg_quantile(p, u)), u, atol=1e-8, rtol=0)


@criterion(*C6)
@pytest.mark.parametrize("p", COMBOS, ids=COMBO_IDS)
def test_c6_pdf_integrates_to_one(p):
    # integrate between quantiles so quad sees the mass; beyond the 1 - 1e-12 quantile the tail is negligible
    knots = wg_quantile(p, np.array([1e-12, 0.25, 0.5, 0.75, 0.99, 0.999999, 1 - 1e-12]))
    edges = np.concatenate([[0.0], knots])
    total = sum(integrate.quad(lambda x: wg_pdf(p, x), lo, hi, limit=200)[0] for lo, hi in zip(edges[:-1], edges[1:]))
    assert total == pytest.approx(1.0, abs=1e-5)


@criterion(*C6)
@pytest.mark.parametrize("p", COMBOS, ids=COMBO_IDS)
def test_c6_hazard_times_survival(p):
    x = wg_quantile(p, np.linspace(0.01, 0.99, 99))
    f = np.asarray(wg_pdf(p, x))
    np.testing.assert_allclose(np.asarray(wg_hazard(p, x)) * np.asarray(wg_survival(p, x)), f, rtol=1e-12, atol=0)


@criterion(*C6)
@pytest.mark.parametrize("name", ["independent", "shocked"])
def test_c6_system_consistency(name):
    s = MC_SYSTEMS[name]
    mass = 1.0 if s.shock_probs is None else 0.72
    total, _ = integrate.quad(lambda x: min_pdf(s, x), 0, np.inf, limit=200)
    assert total == pytest.approx(mass, abs=1e-5)
    x = np.linspace(0.05, 3.0, 60)
    np.testing.assert_allclose(
        np.asarray(min_hazard(s, x)) * np.asarray(min_survival(s, x)), min_pdf(s, x), rtol=1e-12, atol=1e-300
    )


# -- 7: CLI determinism -------------------------------------------------------------------------

C7 = "7", "every CLI command rerun with identical flags writes byte-identical output"


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "wgorder", *map(str, args)], capture_output=True, check=False)


def _snapshot(path):
    if path.is_dir():
        return {p.name: p.read_bytes() for p in sorted(path.iterdir())}
    return path.read_bytes()


@pytest.fixture(scope="module")
def configs(tmp_path_factory):
    from wgorder.config import dump_system

    root = tmp_path_factory.mktemp("configs")
    a, b = ce_3_2().systems["scale"]
    (root / "a.json").write_text(dump_system(a))
    (root / "b.json").write_text(dump_system(b))
    (root / "shock.json").write_text(dump_system(MC_SYSTEMS["shocked"]))
    return root


COMMANDS = {
    "check-st": ("check", "st", "{a}", "{b}", "--out", "{out}"),
    "check-hr": ("check", "hr", "{a}", "{b}", "--out", "{out}"),
    "check-lr": ("check", "lr", "{a}", "{b}", "--out", "{out}"),
    "reproduce-ce-3.1": ("reproduce", "ce-3.1", "--out", "{out}"),
    "reproduce-ce-3.2": ("reproduce", "ce-3.2", "--out", "{out}"),
    "verify": ("verify", "T3.5", "--trials", "20", "--seed", "42", "--out", "{out}"),
    "sample": ("sample", "{shock}", "--count", "5000", "--seed", "3", "--out", "{out}"),
    "check-majorize": ("check-majorize", "4", "1", "1", "--", "3", "1.5", "1.5"),
}


@criterion(*C7)
@pytest.mark.parametrize("name", list(COMMANDS))
def test_c7_cli_determinism(name, configs, tmp_path):
    outputs = []
    for run in range(2):
        out = tmp_path / f"run{run}"
        args = [
            a.format(a=configs / "a.json", b=configs / "b.json", shock=configs / "shock.json", out=out)
            for a in COMMANDS[name]
        ]
        proc = _cli(*args)
        assert proc.returncode in (0, 1), proc.stderr.decode()
        outputs.append((proc.returncode, proc.stdout.replace(str(out).encode(), b"<out>"), _snapshot(out) if out.exists() else None))
    assert outputs[0] == outputs[1]
    if name != "check-majorize":
        assert outputs[0][2]
