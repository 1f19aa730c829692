"""End-to-end acceptance checks.

One test per criterion; each prints a single PASS/FAIL line (visible with
`pytest -s`). Two table cells that are internally inconsistent in the
reference tables are tracked as strict xfails next to the criteria they
belong to; the recomputed values are asserted in the main tests.
"""

import math
import time

import numpy as np
import pytest
from scipy.integrate import quad

from gels import datasets
from gels.competitors import fit_all, reference_table
from gels.distribution import (
    GelSParams,
    cdf,
    mode,
    pdf,
    quantile,
    sample,
    summary,
)
from gels.estimation import (
    Dataset,
    fit,
    information_criteria,
    log_likelihood,
    observed_information,
    score,
)
from gels.optimize import numerical_hessian
from gels.simulation import STUDY_PARAMS, StudyConfig, run_study
from gels.special_math import log_series_sum

SEED = 20260814

# reference summary tables: (alpha, k, gamma) -> tabulated statistics
SUMMARY_TABLE = [
    # (alpha, k, gamma,  mean, variance, skewness, kurtosis)
    (0.5, 1, 0.5, 2.26, 0.92, 1.78, 9.08),
    (1.0, 1, 0.5, 2.70, 0.87, 1.80, 9.23),
    (1.5, 1, 0.5, 3.16, 0.84, 1.81, 9.33),
    (0.5, 0, 0.5, 1.95, 0.60, 1.75, 8.90),
    (0.5, 2, 0.5, 2.67, 1.46, 1.80, 9.21),
    (0.5, 1, 0.4, 1.93, 0.37, 1.34, 6.33),
    (0.5, 1, 0.6, 2.79, 2.41, 2.31, 13.68),
]

MODE_TABLE = [
    (0.5, 1, 0.5, 1.69),
    (1.0, 1, 0.5, 2.14),
    (1.5, 1, 0.5, 2.61),
    (0.5, 0, 0.5, 1.50),
    (0.5, 2, 0.5, 1.95),
    (0.5, 1, 0.4, 1.62),
    (0.5, 1, 0.6, 1.80),
]

# (alpha, k, gamma) -> quantiles at p = 0.01, 0.05, 0.5, 0.95, 0.99
QUANTILE_TABLE = [
    (0.5, 1, 0.5, 0.97, 1.17, 2.05, 4.08, 5.56),
    (1.0, 1, 0.5, 1.45, 1.64, 2.49, 4.47, 5.92),
    (1.5, 1, 0.5, 1.94, 2.12, 2.95, 4.89, 6.31),
    (0.5, 0, 0.5, 0.90, 1.06, 1.78, 3.42, 4.61),
    (0.5, 2, 0.5, 1.06, 1.30, 2.40, 4.96, 6.83),
    (0.5, 1, 0.4, 1.01, 1.17, 1.87, 3.07, 3.88),
    (0.5, 1, 0.6, 0.95, 1.18, 2.40, 5.72, 8.42),
]

# the tabulated median for this row contradicts the row's own cdf:
# F(1.87) = 0.5388, and every other cell matches a median of 1.8168
MISPRINT_ROW = (0.5, 1, 0.4)
MISPRINT_TRUE_MEDIAN = 1.8168


def report(criterion, ok, detail):
    print(f"\n[criterion {criterion:>2}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"criterion {criterion}: {detail}"


@pytest.fixture(scope="module")
def bearings_trace():
    return fit(datasets.load("ball_bearings"), 0, 30)


@pytest.fixture(scope="module")
def leukaemia_trace():
    return fit(datasets.load("leukaemia"), 0, 10)


@pytest.fixture(scope="module")
def strength_trace():
    return fit(datasets.load("strength_10mm"), 0, 30)


def test_criterion_01_summary_statistics_table():
    t0 = time.perf_counter()
    worst = 0.0
    for alpha, k, gamma, mean, var, skew, kurt in SUMMARY_TABLE:
        s = summary(GelSParams(alpha, k, gamma))
        for got, want in ((s.mean, mean), (s.variance, var),
                          (s.skewness, skew), (s.kurtosis, kurt)):
            worst = max(worst, abs(got - want))
    elapsed = time.perf_counter() - t0
    ok = worst <= 0.005 and elapsed < 1.0
    report(1, ok, f"7 triples x 4 statistics within +-0.005 "
                  f"(worst |err| = {worst:.4f}), {elapsed:.2f}s < 1s")


def test_criterion_02_mode_table():
    worst = 0.0
    for alpha, k, gamma, want in MODE_TABLE:
        worst = max(worst, abs(mode(GelSParams(alpha, k, gamma)) - want))
    exact_k0 = mode(GelSParams(0.5, 0, 0.5)) == 1.5
    above = all(mode(GelSParams(a, k, g)) > 1.0 + a
                for a, k, g, _ in MODE_TABLE if k > 0)
    ok = worst <= 0.005 and exact_k0 and above
    report(2, ok, f"7 modes within +-0.005 (worst |err| = {worst:.4f}); "
                  f"k=0 mode exactly 1+alpha; k>0 modes exceed 1+alpha")


def test_criterion_03_quantile_table():
    ps = (0.01, 0.05, 0.5, 0.95, 0.99)
    worst, cells = 0.0, 0
    for alpha, k, gamma, *row in QUANTILE_TABLE:
        params = GelSParams(alpha, k, gamma)
        for p, want in zip(ps, row):
            if (alpha, k, gamma) == MISPRINT_ROW and p == 0.5:
                continue  # tabulated cell is internally inconsistent, see below
            worst = max(worst, abs(quantile(params, p) - want))
            cells += 1
    recomputed = quantile(GelSParams(*MISPRINT_ROW), 0.5)
    median_ok = abs(recomputed - MISPRINT_TRUE_MEDIAN) <= 0.005
    consistent = abs(cdf(GelSParams(*MISPRINT_ROW), recomputed) - 0.5) <= 1e-10
    ok = worst <= 0.005 and cells == 34 and median_ok and consistent
    report(3, ok, f"34/35 tabulated quantiles within +-0.005 (worst |err| = "
                  f"{worst:.4f}); the (0.5,1,0.4) median cell prints 1.87 but "
                  f"its own cdf gives F(1.87)=0.539, recomputed median "
                  f"{recomputed:.4f} (strict xfail tracks the printed cell)")


@pytest.mark.xfail(strict=True,
                   reason="tabulated median 1.87 for (0.5, 1, 0.4) is "
                          "inconsistent with the same row's cdf "
                          "(F(1.87)=0.5388); the true median is 1.8168")
def test_criterion_03_misprinted_median_cell_as_printed():
    assert abs(quantile(GelSParams(*MISPRINT_ROW), 0.5) - 1.87) <= 0.005


def test_criterion_04_normalization_and_moment_quadrature():
    t0 = time.perf_counter()
    grid = []
    for k in (0, 1, 2, 5, 10, 27):
        for gamma in (0.3, 0.6, 1.0):
            alpha = {0: 0.0, 1: 0.5, 2: 1.0, 5: 0.5, 10: 2.0, 27: 2.8}[k]
            grid.append(GelSParams(alpha, k, gamma))
    for gamma in (0.4, 0.8):
        grid.append(GelSParams(0.0, 3, gamma))
        grid.append(GelSParams(1.5, 4, gamma))
    assert len(grid) >= 20

    worst_norm, worst_mom = 0.0, 0.0
    for params in grid:
        a, g, k = params.alpha, params.gamma, params.k
        for n in range(0, 5):
            y_hi = (k + 1) * g * g + n * g * g + 14 * g

            def integrand(y):
                x = a + math.exp(y)
                return x ** n * pdf(params, x) * math.exp(y)

            num, _ = quad(integrand, -60.0, y_hi, limit=400,
                          epsabs=0.0, epsrel=1e-11)
            if n == 0:
                worst_norm = max(worst_norm, abs(num - 1.0))
            else:
                closed = math.exp(log_series_sum(a, g, n + k).value
                                  - log_series_sum(a, g, k).value)
                worst_mom = max(worst_mom, abs(num - closed) / closed)
    elapsed = time.perf_counter() - t0
    ok = worst_norm <= 1e-8 and worst_mom <= 1e-7 and elapsed < 30.0
    report(4, ok, f"{len(grid)} triples (k up to 27): quadrature mass within "
                  f"{worst_norm:.1e} of 1, moments n=1..4 within "
                  f"{worst_mom:.1e} relative of the closed form, "
                  f"{elapsed:.1f}s < 30s")


def test_criterion_05_lognormal_reduction():
    worst = 0.0
    for k in (0, 1, 3):
        for gamma in (0.3, 0.7, 1.2):
            params = GelSParams(0.0, k, gamma)
            mu = gamma ** 2 * (k + 1)
            for x in (0.4, 1.0, 2.5, 6.0):
                f_ln = (math.exp(-((math.log(x) - mu) ** 2)
                                 / (2 * gamma ** 2))
                        / (x * gamma * math.sqrt(2 * math.pi)))
                F_ln = 0.5 * math.erfc(-(math.log(x) - mu)
                                       / (gamma * math.sqrt(2.0)))
                worst = max(worst, abs(pdf(params, x) - f_ln) / f_ln)
                if F_ln > 0:
                    worst = max(worst, abs(cdf(params, x) - F_ln) / F_ln)
            for p in (0.05, 0.5, 0.95):
                from scipy.special import ndtri

                q_ln = math.exp(mu + gamma * float(ndtri(p)))
                worst = max(worst, abs(quantile(params, p) - q_ln) / q_ln)
    ok = worst <= 1e-10
    report(5, ok, f"alpha=0 reduction to log-normal(gamma^2 (k+1), gamma): "
                  f"pdf/cdf/quantile agree within {worst:.1e} relative "
                  f"(tolerance 1e-10) over k in {{0,1,3}}, gamma in "
                  f"{{0.3,0.7,1.2}}")


def test_criterion_06_score_and_hessian_checks():
    rng = np.random.default_rng(SEED)
    worst_score = 0.0
    for _ in range(100):
        k = int(rng.integers(0, 5))
        truth = GelSParams(float(rng.uniform(0, 2)), k,
                           float(rng.uniform(0.3, 1.5)))
        data = Dataset(values=sample(truth, 50, seed=int(rng.integers(1e9))))
        alpha = float(rng.uniform(0.05, 0.9)) * float(data.values.min())
        gamma = float(rng.uniform(0.3, 1.8))
        params = GelSParams(alpha, k, gamma)
        d_alpha, d_gamma = score(params, data)
        h_a = min(1e-6 * max(1.0, alpha), alpha / 2)
        h_g = 1e-6 * max(1.0, gamma)
        fd_a = (log_likelihood(GelSParams(alpha + h_a, k, gamma), data)
                - log_likelihood(GelSParams(alpha - h_a, k, gamma), data)
                ) / (2 * h_a)
        fd_g = (log_likelihood(GelSParams(alpha, k, gamma + h_g), data)
                - log_likelihood(GelSParams(alpha, k, gamma - h_g), data)
                ) / (2 * h_g)
        worst_score = max(worst_score,
                          abs(d_alpha - fd_a) / max(1.0, abs(fd_a)),
                          abs(d_gamma - fd_g) / max(1.0, abs(fd_g)))

    worst_hess = 0.0
    for seed, triple in ((3, (1.0, 2, 1.0)), (4, (0.5, 1, 0.6))):
        truth = GelSParams(*triple)
        data = Dataset(values=sample(truth, 400, seed=seed))
        params = GelSParams(truth.alpha * 0.9, truth.k, truth.gamma * 1.05)
        J = observed_information(params, data)

        def loglik_of(v, k=truth.k, d=data):
            return log_likelihood(GelSParams(v[0], k, v[1]), d)

        H = numerical_hessian(loglik_of,
                              np.array([params.alpha, params.gamma]))
        scale = float(np.abs(H).max())
        worst_hess = max(worst_hess, float(np.abs(J + H).max()) / scale)

    ok = worst_score <= 1e-5 and worst_hess <= 1e-4
    report(6, ok, f"analytic score vs central differences on 100 random "
                  f"feasible cases: worst {worst_score:.1e} (tol 1e-5); two "
                  f"independent Hessian schemes agree to {worst_hess:.1e} "
                  f"relative (tol 1e-4)")


def test_criterion_07_simulation_recovery():
    t0 = time.perf_counter()
    rep1 = run_study(StudyConfig(true_params=STUDY_PARAMS["I"], n=10000,
                                 k_grid=(0, 6), seed=SEED))
    rep2 = run_study(StudyConfig(true_params=STUDY_PARAMS["II"], n=10000,
                                 k_grid=(0, 6), seed=SEED))
    elapsed = time.perf_counter() - t0
    first1 = rep1.replications[0]
    first2 = rep2.replications[0]
    ok = (rep1.selected_k == 2 and 0.85 <= first1.alpha_hat <= 1.15
          and 0.97 <= first1.gamma_hat <= 1.03
          and rep2.selected_k == 4 and 0.48 <= first2.gamma_hat <= 0.52
          and elapsed < 120.0)
    report(7, ok, f"study I (n=10,000, grid 0..6): k={rep1.selected_k}, "
                  f"alpha={first1.alpha_hat:.4f}, gamma={first1.gamma_hat:.4f}; "
                  f"study II: k={rep2.selected_k}, "
                  f"gamma={first2.gamma_hat:.4f}; {elapsed:.1f}s < 120s")


def test_criterion_08_gamma_interval_coverage():
    t0 = time.perf_counter()
    config = StudyConfig(true_params=STUDY_PARAMS["I"], n=2000,
                         k_grid=(2, 2), seed=SEED, replications=200)
    rep = run_study(config)
    elapsed = time.perf_counter() - t0
    n_ci = sum(1 for o in rep.replications if o.gamma_ci is not None)
    ok = (n_ci >= 200 * 0.95 and 0.90 <= rep.coverage_gamma <= 1.00
          and elapsed < 600.0)
    report(8, ok, f"200 replications (n=2,000, k fixed at 2): 95% gamma CI "
                  f"coverage {rep.coverage_gamma:.3f} in [0.90, 1.00] "
                  f"({n_ci} intervals), {elapsed:.0f}s < 600s")


def test_criterion_09_ball_bearings_application(bearings_trace):
    data = datasets.load("ball_bearings")
    sel = bearings_trace.selected
    checks = [sel.k == 27,
              abs(-sel.loglik - 112.99) <= 0.05,
              abs(sel.aic - 229.98) <= 0.1,
              abs(sel.sic - 232.25) <= 0.1]

    beaten = []
    for comp in fit_all(data):
        n_p = 3 if comp.family in ("Gamma", "Weibull", "GE") else 2
        aic, sic = information_criteria(n_p, comp.loglik, data.n)
        beaten.append(sel.aic < aic and sel.sic < sic)
    row = {r["model"]: r for r in reference_table("ball_bearings")}
    ln_row = row["Log-normal"]
    beats_row = sel.aic < ln_row["aic"] and sel.sic < ln_row["sic"]

    ok = all(checks) and all(beaten) and beats_row
    report(9, ok, f"grid 0..30 selects k={sel.k}, -l={-sel.loglik:.4f} "
                  f"(target 112.99+-0.05), AIC={sel.aic:.3f}, SIC={sel.sic:.3f}; "
                  f"beats all four implemented competitors (shifted-variant "
                  f"parameter counts) and the bundled Log-normal row "
                  f"({ln_row['aic']:.2f}/{ln_row['sic']:.2f}) on both criteria")


def test_criterion_10_leukaemia_application(leukaemia_trace):
    sel = leukaemia_trace.selected
    ok = (sel.k == 0
          and abs(-sel.loglik - 153.24) <= 0.05
          and abs(sel.gamma_hat - 1.650) <= 0.01
          and abs(sel.aic - 310.49) <= 0.1
          and abs(sel.sic - 313.48) <= 0.1)
    report(10, ok, f"grid 0..10 selects k={sel.k}, -l={-sel.loglik:.4f} "
                   f"(target 153.24+-0.05), gamma={sel.gamma_hat:.4f} "
                   f"(target 1.650+-0.01), AIC={sel.aic:.3f}, SIC={sel.sic:.3f}")


def test_criterion_11_strength_application(strength_trace):
    sel = strength_trace.selected
    row17 = next(r for r in strength_trace.per_k if r.k == 17)
    numeric = (abs(-sel.loglik - 56.20) <= 0.05
               and abs(sel.aic - 116.41) <= 0.1
               and abs(sel.sic - 120.70) <= 0.1)
    # the tabulated k=17 optimum is reproduced digit-for-digit, but k=15
    # attains a strictly higher likelihood, so selection lands there
    row_match = (abs(-row17.loglik - 56.2082) <= 0.005
                 and abs(row17.raw_a_hat - 0.8868) <= 0.005
                 and abs(row17.gamma_hat - 0.2415) <= 0.005)
    coherent = sel.loglik >= row17.loglik
    ok = numeric and row_match and coherent
    report(11, ok, f"grid 0..30: selected k={sel.k} with -l={-sel.loglik:.4f} "
                   f"(target 56.20+-0.05), AIC={sel.aic:.3f}, SIC={sel.sic:.3f}; "
                   f"tabulated k=17 row reproduced (-l={-row17.loglik:.4f}); "
                   f"literal 'selected k = 17' clause tracked as strict xfail "
                   f"(k=15 attains a deeper optimum)")


@pytest.mark.xfail(strict=True,
                   reason="the likelihood profile bottoms at k=15 "
                          "(-l=56.19795 vs 56.20822 at k=17, multistart-"
                          "verified); the tabulated selection of 17 is not "
                          "the grid optimum, though its row is reproduced "
                          "exactly")
def test_criterion_11_tabulated_selected_k(strength_trace):
    assert strength_trace.selected.k == 17


def test_criterion_12_sampling_correctness():
    triples = (GelSParams(0.5, 1, 0.5), GelSParams(1.0, 2, 1.0),
               GelSParams(2.0, 4, 0.5))
    n = 10000
    crit = 1.63 / math.sqrt(n)
    worst = 0.0
    for i, params in enumerate(triples):
        x = np.sort(sample(params, n, seed=SEED + i))
        again = np.sort(sample(params, n, seed=SEED + i))
        assert np.array_equal(np.sort(x), np.sort(again))
        F = np.array([cdf(params, v) for v in x])
        grid = np.arange(1, n + 1) / n
        ks = max(float(np.max(np.abs(grid - F))),
                 float(np.max(np.abs(grid - 1.0 / n - F))))
        worst = max(worst, ks)
    ok = worst < crit
    report(12, ok, f"KS statistic for 3 triples at n=10,000: worst "
                   f"{worst:.5f} < 1% critical value {crit:.5f}; identical "
                   f"seeds reproduce identical samples")
