"""Small 1-d search utilities: golden-section extremum refinement and bisection."""

from __future__ import annotations

import numpy as np
from scipy.optimize import brentq

from .errors import Unreachable

INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = (3.0 - np.sqrt(5.0)) / 2.0


def golden_max(f, lo, hi, iters: int = 48):
    """Vectorized golden-section maximization on per-element brackets.

    f maps a parameter array to a value array of the same shape; lo and hi
    are arrays (or scalars) giving each element's bracket.  48 iterations
    shrink a bracket of ~2e-2 below 1e-10.  Returns (argmax, max).
    """
    a = np.atleast_1d(np.asarray(lo, dtype=float)).copy()
    b = np.atleast_1d(np.asarray(hi, dtype=float)).copy()
    c = a + INV_PHI2 * (b - a)
    d = a + INV_PHI * (b - a)
    fc = f(c)
    fd = f(d)
    for _ in range(iters):
        keep_low = fc > fd
        b = np.where(keep_low, d, b)
        a = np.where(keep_low, a, c)
        c = a + INV_PHI2 * (b - a)
        d = a + INV_PHI * (b - a)
        fc = f(c)
        fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def golden_min(f, lo, hi, iters: int = 48):
    """Golden-section minimization built on golden_max."""
    x, v = golden_max(lambda t: -f(t), lo, hi, iters=iters)
    return x, -v


def bisect_increasing(f, lo: float, hi: float, target: float, tol: float,
                      max_iter: int = 200) -> float:
    """Solve f(x) = target for f nondecreasing on [lo, hi].

    Raises Unreachable when the bracket does not straddle the target.
    """
    flo = f(lo)
    fhi = f(hi)
    if not (flo - tol <= target <= fhi + tol):
        raise Unreachable(
            f"target {target:.6g} outside bracket values [{flo:.6g}, {fhi:.6g}]")
    if target <= flo:
        return lo
    if target >= fhi:
        return hi
    return float(brentq(lambda x: f(x) - target, lo, hi,
                        xtol=1e-12, maxiter=max_iter))
