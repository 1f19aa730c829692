"""Bracketed scalar root finding.

A small Brent-style solver with a guaranteed-progress bisection fallback,
plus geometric bracket expansion. Used for modes and quantiles, where we
always know a sign-changing interval (or can grow one from a seed).
"""

import math
from dataclasses import dataclass


class BracketError(RuntimeError):
    """No sign change found while expanding the candidate interval."""


class ConvergenceError(RuntimeError):
    """Iteration budget exhausted; carries the best bracket seen."""

    def __init__(self, message, lo, hi):
        super().__init__(message)
        self.lo = lo
        self.hi = hi


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float
    f_lo: float
    f_hi: float


def expand_bracket(f, lo, hi0, max_doublings=60):
    """Grow [lo, hi] upward until f changes sign.

    The upper end follows hi = lo + 2^j (hi0 - lo) for j = 0, 1, ...,
    keeping the lower end fixed. Raises BracketError if no sign change
    appears within `max_doublings` doublings.
    """
    if not hi0 > lo:
        raise ValueError(f"need hi0 > lo, got [{lo}, {hi0}]")
    f_lo = f(lo)
    if f_lo == 0.0:
        return Bracket(lo, lo, 0.0, 0.0)
    width = hi0 - lo
    for j in range(max_doublings + 1):
        hi = lo + (2.0 ** j) * width
        f_hi = f(hi)
        if f_hi == 0.0 or (f_lo < 0.0) != (f_hi < 0.0):
            return Bracket(lo, hi, f_lo, f_hi)
    raise BracketError(
        f"no sign change in [{lo}, {lo + 2.0 ** max_doublings * width}] "
        f"after {max_doublings} doublings"
    )


def solve_bracketed(f, bracket, xtol=1e-12, ftol=1e-12, max_iter=100):
    """Find a root of f inside a sign-changing bracket.

    Inverse-quadratic / secant steps with bisection whenever the fast step
    misbehaves (classic Brent bookkeeping). Stops when |f| <= ftol or the
    bracket has shrunk to xtol * max(1, |x|). The returned point always
    lies inside the original bracket.
    """
    a, b = bracket.lo, bracket.hi
    fa, fb = bracket.f_lo, bracket.f_hi
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if (fa < 0.0) == (fb < 0.0):
        raise ValueError(f"not a sign-changing bracket: f({a})={fa}, f({b})={fb}")

    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol = xtol * max(1.0, abs(b))
        m = 0.5 * (c - b)
        if abs(fb) <= ftol or abs(m) <= tol:
            return b
        if abs(e) < tol or abs(fa) <= abs(fb):
            d = e = m
        else:
            s = fb / fa
            if a == c:
                # secant
                p = 2.0 * m * s
                q = 1.0 - s
            else:
                # inverse quadratic
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * m * q - abs(tol * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = e = m
        a, fa = b, fb
        b += d if abs(d) > tol else math.copysign(tol, m)
        fb = f(b)
        if fb == 0.0:
            return b
        if (fb < 0.0) == (fc < 0.0):
            c, fc = a, fa
            d = e = b - a
    raise ConvergenceError(
        f"no convergence in {max_iter} iterations", min(b, c), max(b, c)
    )
