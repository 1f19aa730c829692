"""Small dense unconstrained minimizer with numerical derivatives.

Newton iteration on a finite-difference Hessian with backtracking line
search. Objectives may return +inf to mark infeasible points: such steps
are simply rejected by the line search, so the accepted iterates always
carry finite, strictly decreasing function values. This is all the
likelihood fits need (2 parameters, smooth interior, hard barrier at the
support boundary).
"""

import math
from dataclasses import dataclass

import numpy as np


class StencilError(RuntimeError):
    """A finite-difference stencil point produced a non-finite value."""

    def __init__(self, message, point):
        super().__init__(message)
        self.point = point


@dataclass(frozen=True)
class MinimizeResult:
    x_min: np.ndarray
    f_min: float
    gradient_norm: float
    hessian: np.ndarray
    iterations: int
    converged: bool


def numerical_gradient(f, x, h_rel=1e-5):
    """Central-difference gradient with per-coordinate step h_rel*max(1,|x_j|)."""
    x = np.asarray(x, dtype=float)
    g = np.empty_like(x)
    for j in range(x.size):
        h = h_rel * max(1.0, abs(x[j]))
        xp, xm = x.copy(), x.copy()
        xp[j] += h
        xm[j] -= h
        fp, fm = f(xp), f(xm)
        if not (math.isfinite(fp) and math.isfinite(fm)):
            raise StencilError("non-finite objective in gradient stencil",
                               xp if not math.isfinite(fp) else xm)
        g[j] = (fp - fm) / (2.0 * h)
    return g


def numerical_hessian(f, x, h_rel=1e-4):
    """Symmetrized central-difference Hessian, step h_rel*max(1,|x_j|)."""
    x = np.asarray(x, dtype=float)
    d = x.size
    h = np.array([h_rel * max(1.0, abs(x[j])) for j in range(d)])
    f0 = f(x)
    if not math.isfinite(f0):
        raise StencilError("non-finite objective at expansion point", x)
    H = np.empty((d, d))
    for j in range(d):
        xp, xm = x.copy(), x.copy()
        xp[j] += h[j]
        xm[j] -= h[j]
        fp, fm = f(xp), f(xm)
        if not (math.isfinite(fp) and math.isfinite(fm)):
            raise StencilError("non-finite objective in Hessian stencil",
                               xp if not math.isfinite(fp) else xm)
        H[j, j] = (fp - 2.0 * f0 + fm) / h[j] ** 2
        for l in range(j + 1, d):
            vals = []
            for sj, sl in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                xx = x.copy()
                xx[j] += sj * h[j]
                xx[l] += sl * h[l]
                v = f(xx)
                if not math.isfinite(v):
                    raise StencilError("non-finite objective in Hessian stencil", xx)
                vals.append(v)
            H[j, l] = H[l, j] = (vals[0] - vals[1] - vals[2] + vals[3]) / (4.0 * h[j] * h[l])
    return 0.5 * (H + H.T)


def _descent_direction(H, g):
    """Solve H p = -g, loading the diagonal until H is positive definite."""
    d = g.size
    scale = max(np.abs(np.diag(H)).max(), 1e-12)
    tau = 0.0
    for _ in range(40):
        try:
            L = np.linalg.cholesky(H + tau * np.eye(d))
            p = np.linalg.solve(L.T, np.linalg.solve(L, -g))
            if np.dot(p, g) < 0.0:
                return p
        except np.linalg.LinAlgError:
            pass
        tau = max(2.0 * tau, 1e-8 * scale)
    return -g  # steepest descent as last resort


def minimize(objective, x0, gtol=None, step_tol=1e-12, max_iter=500,
             grad_h_rel=1e-5, hess_h_rel=1e-4):
    """Minimize a smooth function of a few variables from a feasible start.

    gtol defaults to 1e-8 * max(1, |f(x0)|), which scales sensibly for
    log-likelihoods of any sample size. Gradient stencils that poke into
    the infeasible region are retried with a 10x smaller step before
    giving up on that iteration.
    """
    x = np.asarray(x0, dtype=float).copy()
    fx = objective(x)
    if not math.isfinite(fx):
        raise ValueError(f"objective not finite at starting point {x0}")
    if gtol is None:
        gtol = 1e-8 * max(1.0, abs(fx))

    g = None
    iterations = 0
    for iterations in range(1, max_iter + 1):
        g = _gradient_with_retry(objective, x, grad_h_rel)
        if g is None:
            break
        gnorm = float(np.linalg.norm(g))
        if gnorm <= gtol:
            break
        try:
            H = numerical_hessian(objective, x, hess_h_rel)
        except StencilError:
            H = np.eye(x.size)
        p = _descent_direction(H, g)

        # Backtracking Armijo search; +inf trial values just keep shrinking.
        slope = float(np.dot(g, p))
        t = 1.0
        accepted = False
        while t >= 1e-14:
            x_new = x + t * p
            f_new = objective(x_new)
            if math.isfinite(f_new) and f_new <= fx + 1e-4 * t * slope:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        step = float(np.linalg.norm(t * p))
        x, fx = x_new, f_new
        if step <= step_tol * max(1.0, float(np.linalg.norm(x))):
            break

    g = _gradient_with_retry(objective, x, grad_h_rel)
    gnorm = math.inf if g is None else float(np.linalg.norm(g))
    try:
        H_final = numerical_hessian(objective, x, hess_h_rel)
    except StencilError:
        H_final = np.full((x.size, x.size), np.nan)
    return MinimizeResult(
        x_min=x,
        f_min=fx,
        gradient_norm=gnorm,
        hessian=H_final,
        iterations=iterations,
        converged=bool(gnorm <= gtol),
    )


def _gradient_with_retry(f, x, h_rel):
    for attempt in range(3):
        try:
            return numerical_gradient(f, x, h_rel * 10.0**-attempt)
        except StencilError:
            continue
    return None
