"""Small numerical helpers shared across modules (quadrature, roots, derivatives)."""

import math
import warnings

from scipy import integrate

from .errors import ConvergenceError, QuadratureError


def quad(f, a, b, *, epsrel=1e-10, epsabs=0.0, points=None, limit=200):
    """Adaptive Gauss-Kronrod quadrature returning ``(value, error_estimate)``.

    Thin wrapper over QUADPACK that turns a failed accuracy target into a
    :class:`QuadratureError` instead of a warning.  Roundoff-limited results
    are accepted when the reported error is within 100x of the target.
    """
    kwargs = dict(epsrel=epsrel, epsabs=epsabs, limit=limit, full_output=1)
    if points is not None:
        pts = sorted(p for p in points if a < p < b)
        if pts:
            kwargs["points"] = pts
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(f, a, b, **kwargs)
    value, err = out[0], out[1]
    if not math.isfinite(value):
        raise QuadratureError(f"non-finite integral on [{a}, {b}]")
    target = max(epsabs, epsrel * abs(value))
    if err > 100.0 * target and err > 1e-300:
        msg = out[3] if len(out) > 3 else ""
        raise QuadratureError(
            f"quadrature on [{a}, {b}] reached error {err:.3g} "
            f"(target {target:.3g}); {msg}".strip()
        )
    return value, err


def bisect_increasing(f, lo, hi, *, rtol=4e-16, max_iter=400):
    """Root of an increasing function on ``[lo, hi]`` by plain bisection.

    Stops once the bracket is narrower than ``rtol`` times its midpoint
    (or reaches adjacent floats).  ``f(lo) <= 0 <= f(hi)`` is required.
    """
    flo, fhi = f(lo), f(hi)
    if flo > 0 or fhi < 0:
        raise ConvergenceError(
            f"root not bracketed: f({lo})={flo}, f({hi})={fhi}"
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= rtol * abs(mid):
            return mid
        fm = f(mid)
        if fm == 0.0:
            return mid
        if fm < 0.0:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(f"bisection did not converge in {max_iter} steps")


def _richardson(estimate, h, levels):
    # estimate(h) has an even-power error series in h
    row = [estimate(h / 2**i) for i in range(levels + 1)]
    for j in range(1, levels + 1):
        fac = 4.0**j
        row = [row[i] + (row[i] - row[i - 1]) / (fac - 1.0) for i in range(1, len(row))]
    return row[-1]


def richardson_derivative(f, x, h, levels=2):
    """First derivative by Richardson-extrapolated central differences."""
    return _richardson(lambda s: (f(x + s) - f(x - s)) / (2.0 * s), h, levels)


def richardson_second_derivative(f, x, h, levels=2, fx=None):
    """Second derivative by Richardson-extrapolated central differences."""
    f0 = f(x) if fx is None else fx
    return _richardson(lambda s: (f(x + s) - 2.0 * f0 + f(x - s)) / (s * s), h, levels)
