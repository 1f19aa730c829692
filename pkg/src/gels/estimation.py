"""Maximum likelihood estimation for the GEL-S family.

k enters the density as an integer, so the fit is a profile over a fixed
k grid: for each k maximize the likelihood in (alpha, gamma), then pick
the k with the highest maximized log-likelihood (ties break toward the
smaller k). The continuous optimization runs in (a, gamma) with
alpha = a^2, which keeps alpha nonnegative without explicit constraints;
the support condition alpha < min(x) is enforced as a hard +inf barrier.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.special import ndtri

from .distribution import GelSParams, log_norm_const
from .optimize import minimize
from .special_math import log_series_sum_partials


class DegenerateDataError(ValueError):
    """Data without enough spread to identify the parameters."""


class FitError(RuntimeError):
    """No k in the requested grid produced a converged fit."""


class UncertaintyUnavailableError(RuntimeError):
    """Observed information was singular or otherwise unusable."""


@dataclass(frozen=True)
class Dataset:
    """Positive observations plus bookkeeping for reports."""

    values: np.ndarray
    name: str = ""
    source: str = ""

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("dataset must be a non-empty 1-d array")
        if not np.isfinite(v).all():
            raise ValueError("dataset contains non-finite values")
        if (v <= 0.0).any():
            raise ValueError("dataset contains non-positive values")
        v = v.copy()
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @property
    def n(self):
        return int(self.values.size)


@dataclass(frozen=True)
class FitResult:
    k: int
    alpha_hat: float
    gamma_hat: float
    raw_a_hat: float
    loglik: float
    cov: Optional[np.ndarray]
    se_alpha: float
    se_gamma: float
    aic: float
    sic: float
    converged: bool


@dataclass(frozen=True)
class KGridTrace:
    """Per-k fit results in grid order plus the index of the winner."""

    per_k: list
    selected_index: int

    @property
    def selected(self):
        return self.per_k[self.selected_index]


def log_likelihood(params, data):
    """Full-sample log-likelihood; -inf when any point is off the support."""
    x = data.values
    if x.min() <= params.alpha:
        return -math.inf
    t = np.log(x - params.alpha)
    val = data.n * log_norm_const(params) - float(t @ t) / (2.0 * params.gamma**2)
    if params.k > 0:
        val += params.k * float(np.log(x).sum())
    return val


def score(params, data):
    """Analytic gradient of the log-likelihood in (alpha, gamma).

    d l / d alpha = -n d logS / d alpha + gamma^-2 sum ln(x-alpha)/(x-alpha)
    d l / d gamma = n (-1/gamma - d logS / d gamma) + gamma^-3 sum ln(x-alpha)^2
    """
    x = data.values
    if x.min() <= params.alpha:
        raise ValueError("score undefined: data off the support")
    d_alpha_s, d_gamma_s = log_series_sum_partials(params.alpha, params.gamma, params.k)
    w = x - params.alpha
    t = np.log(w)
    g = params.gamma
    d_alpha = -data.n * d_alpha_s + float((t / w).sum()) / g**2
    d_gamma = data.n * (-1.0 / g - d_gamma_s) + float(t @ t) / g**3
    return d_alpha, d_gamma


def observed_information(params, data, h_rel=1e-5):
    """Negative Jacobian of the analytic score, by central differences.

    Steps shrink near the alpha >= 0 boundary so stencils stay feasible.
    The result is symmetrized; at an interior MLE it is the realized
    observed information matrix.
    """
    theta = np.array([params.alpha, params.gamma])
    steps = np.array([h_rel * max(1.0, abs(theta[0])), h_rel * max(1.0, abs(theta[1]))])
    if theta[0] - steps[0] < 0.0:
        steps[0] = theta[0] / 2.0 if theta[0] > 0.0 else 0.0
    J = np.empty((2, 2))
    for j in range(2):
        h = steps[j]
        if h == 0.0:
            # one-sided at the alpha = 0 boundary
            h = h_rel
            tp = theta.copy()
            tp[j] += h
            sp = score(GelSParams(tp[0], params.k, tp[1]), data)
            s0 = score(params, data)
            J[:, j] = (np.array(sp) - np.array(s0)) / h
            continue
        tp, tm = theta.copy(), theta.copy()
        tp[j] += h
        tm[j] -= h
        sp = score(GelSParams(tp[0], params.k, tp[1]), data)
        sm = score(GelSParams(tm[0], params.k, tm[1]), data)
        J[:, j] = (np.array(sp) - np.array(sm)) / (2.0 * h)
    info = -0.5 * (J + J.T)
    return info


def information_criteria(n_params, loglik, n):
    """(AIC, SIC) = (2 n_p - 2 l, n_p ln(n) - 2 l); lower is better."""
    if n_params < 1 or n < 1:
        raise ValueError("n_params and n must be >= 1")
    return 2.0 * n_params - 2.0 * loglik, n_params * math.log(n) - 2.0 * loglik


def _check_spread(data):
    if data.values.max() == data.values.min():
        raise DegenerateDataError("all observations identical; fit is degenerate")


def _default_inits(data, k):
    """Starting points (a0, gamma0); alpha0 = a0^2 at several fractions of min(x)."""
    xmin = float(data.values.min())
    inits = []
    for frac in (0.5, 0.1, 0.9):
        a0 = math.sqrt(frac * xmin)
        t = np.log(data.values - a0 * a0)
        g0 = max(float(t.std()), 1e-2)
        inits.append((a0, g0))
    return inits


def fit_given_k(data, k, init=None):
    """Maximize the likelihood over (alpha, gamma) for one fixed k.

    `init` is an optional (a0, gamma0) warm start, used alongside the
    default starts; the best converged candidate wins. Covariance comes
    from the observed information in (alpha, gamma); if alpha sits too
    close to 0 for central differences, the optimizer's (a, gamma)
    Hessian is transformed instead with the Jacobian diag(2a, 1).
    """
    _check_spread(data)
    xmin = float(data.values.min())
    barrier = xmin * (1.0 - 1e-12)

    def neg_loglik(v):
        a, g = float(v[0]), float(v[1])
        alpha = a * a
        if alpha >= barrier or g <= 0.0:
            return math.inf
        return -log_likelihood(GelSParams(alpha, k, g), data)

    candidates = list(_default_inits(data, k))
    if init is not None:
        candidates.insert(0, tuple(init))

    best = None
    for a0, g0 in candidates:
        if a0 * a0 >= barrier:
            continue
        try:
            res = minimize(neg_loglik, [a0, g0])
        except ValueError:
            continue
        if best is None or (res.converged and not best.converged) \
                or (res.converged == best.converged and res.f_min < best.f_min):
            best = res

    if best is None:
        raise FitError(f"no feasible starting point for k={k}")

    a_hat = abs(float(best.x_min[0]))
    alpha_hat = a_hat * a_hat
    gamma_hat = float(best.x_min[1])
    loglik = -best.f_min
    params = GelSParams(alpha_hat, k, gamma_hat)

    cov = None
    se_alpha = se_gamma = math.nan
    try:
        if alpha_hat > 1e-4:
            info = observed_information(params, data)
            cov = np.linalg.inv(info)
        else:
            jac = np.diag([2.0 * a_hat, 1.0])
            cov = jac @ np.linalg.inv(best.hessian) @ jac
        if np.isfinite(cov).all() and cov[0, 0] > 0.0 and cov[1, 1] > 0.0:
            se_alpha = math.sqrt(cov[0, 0])
            se_gamma = math.sqrt(cov[1, 1])
        else:
            cov = None
    except np.linalg.LinAlgError:
        cov = None

    aic, sic = information_criteria(2, loglik, data.n)
    return FitResult(
        k=int(k), alpha_hat=alpha_hat, gamma_hat=gamma_hat, raw_a_hat=a_hat,
        loglik=loglik, cov=cov, se_alpha=se_alpha, se_gamma=se_gamma,
        aic=aic, sic=sic, converged=bool(best.converged),
    )


def fit(data, k_min=0, k_max=10):
    """Profile the likelihood over the integer grid k_min..k_max.

    Each k warm-starts from the previous solution. Selection is by
    maximal log-likelihood among converged fits, ties toward smaller k.
    """
    if k_min < 0 or k_max < k_min:
        raise ValueError(f"bad k grid [{k_min}, {k_max}]")
    per_k = []
    warm = None
    for k in range(k_min, k_max + 1):
        try:
            res = fit_given_k(data, k, init=warm)
        except FitError:
            res = FitResult(k=k, alpha_hat=math.nan, gamma_hat=math.nan,
                            raw_a_hat=math.nan, loglik=-math.inf, cov=None,
                            se_alpha=math.nan, se_gamma=math.nan, aic=math.inf,
                            sic=math.inf, converged=False)
        per_k.append(res)
        if res.converged:
            warm = (res.raw_a_hat, res.gamma_hat)
    converged = [r for r in per_k if r.converged]
    if not converged:
        raise FitError(f"no converged fit for any k in [{k_min}, {k_max}]")
    best = max(converged, key=lambda r: r.loglik)
    return KGridTrace(per_k=per_k, selected_index=per_k.index(best))


@dataclass(frozen=True)
class ConfidenceIntervals:
    alpha_ci: tuple
    gamma_ci: tuple
    level: float


def confidence_intervals(fit_result, level=0.95):
    """Wald intervals estimate +- z * se from the observed information."""
    if not 0.0 < level < 1.0:
        raise ValueError(f"level must be in (0,1), got {level}")
    if fit_result.cov is None or not (math.isfinite(fit_result.se_alpha)
                                      and math.isfinite(fit_result.se_gamma)):
        raise UncertaintyUnavailableError(
            "observed information unavailable or singular for this fit")
    z = ndtri(1.0 - (1.0 - level) / 2.0)
    a, g = fit_result.alpha_hat, fit_result.gamma_hat
    return ConfidenceIntervals(
        alpha_ci=(a - z * fit_result.se_alpha, a + z * fit_result.se_alpha),
        gamma_ci=(g - z * fit_result.se_gamma, g + z * fit_result.se_gamma),
        level=level,
    )
