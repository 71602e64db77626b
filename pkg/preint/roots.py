import logging
from dataclasses import dataclass

import numpy as np

from utils.errors import ContractViolationError

logger = logging.getLogger(__name__)

STAGES = (12.0, 24.0, 40.0)
TOL_X = 1e-12
TOL_F = 1e-13
MAX_ITER = 100


@dataclass(frozen=True)
class Root:
    gamma: float


@dataclass(frozen=True)
class AllAbove:
    """ g > 0 on the whole bracket; gamma = -inf. """
    gamma: float = -np.inf


@dataclass(frozen=True)
class AllBelow:
    gamma: float = np.inf


def _bracket(func, n):
    lo = np.full(n, -STAGES[-1])
    hi = np.full(n, STAGES[-1])
    gamma = np.full(n, np.nan)
    open_ = np.ones(n, dtype=bool)
    for L in STAGES:
        flo, _ = func(np.full(n, -L))
        fhi, _ = func(np.full(n, L))
        bad = open_ & (np.isnan(flo) | np.isnan(fhi) | ((flo > 0) & (fhi < 0)))
        if bad.any():
            raise ContractViolationError(
                "function is not nondecreasing on [-%g, %g] (g(-L)=%r, g(L)=%r)"
                % (L, L, flo[bad][0], fhi[bad][0]))
        found = open_ & (flo <= 0) & (fhi >= 0)
        lo[found], hi[found] = -L, L
        open_ &= ~found
        if not open_.any():
            break
    gamma[open_ & (flo > 0)] = -np.inf
    gamma[open_ & (fhi < 0)] = np.inf
    return lo, hi, gamma


def find_roots_monotone(func, n, tol_x=TOL_X, tol_f=TOL_F, guess=None, max_iter=MAX_ITER):
    """Roots of n nondecreasing functions at once.

    ``func(x)`` takes an (n,) array and returns the values and derivatives of
    all n functions. Newton steps are taken inside a bracket and replaced by
    bisection whenever they leave it or stop contracting. Entries with no
    sign change on [-40, 40] come back as -inf (all above) or +inf (all below).
    """
    lo, hi, gamma = _bracket(func, n)
    active = np.isnan(gamma)
    if not active.any():
        return gamma
    x = 0.5 * (lo + hi)
    if guess is not None:
        g = np.broadcast_to(np.asarray(guess, dtype=np.float64), (n,))
        ok = np.isfinite(g) & (g > lo) & (g < hi)
        x = np.where(ok, g, x)
    dx_old = hi - lo
    for it in range(max_iter):
        f, df = func(x)
        done = active & ((np.abs(f) <= tol_f) | (hi - lo <= tol_x))
        gamma[done] = x[done]
        active &= ~done
        if not active.any():
            break
        lo = np.where(active & (f < 0), x, lo)
        hi = np.where(active & (f > 0), x, hi)
        with np.errstate(divide='ignore', invalid='ignore'):
            newton = x - f / df
        use_newton = np.isfinite(newton) & (newton > lo) & (newton < hi) & (np.abs(2.0 * f) <= np.abs(dx_old * df))
        x_new = np.where(use_newton, newton, 0.5 * (lo + hi))
        dx = np.abs(x_new - x)
        dx_old = np.where(active, dx, dx_old)
        converged = active & (dx <= tol_x)
        x = np.where(active, x_new, x)
        gamma[converged] = x[converged]
        active &= ~converged
        if not active.any():
            break
    if active.any():
        logger.debug("%d roots hit the iteration limit", int(active.sum()))
        gamma[active] = x[active]
    return gamma


def find_root_monotone(g, tol_x=TOL_X, tol_f=TOL_F, guess=None):
    """Root of one nondecreasing scalar function as Root, AllAbove or AllBelow.

    ``g`` returns either its value or a (value, derivative) pair; without a
    derivative every step is a bisection.
    """
    def func(x):
        out = g(float(x[0]))
        if isinstance(out, tuple):
            return np.array([out[0]], dtype=np.float64), np.array([out[1]], dtype=np.float64)
        return np.array([out], dtype=np.float64), np.array([np.nan])

    gamma = find_roots_monotone(func, 1, tol_x=tol_x, tol_f=tol_f, guess=guess)[0]
    if gamma == -np.inf:
        return AllAbove()
    if gamma == np.inf:
        return AllBelow()
    return Root(gamma)
