"""Singular-value machinery for the p = q = 2 case.

The squared singular values of the family member with exponent alpha are
``alpha / ((1+alpha)^2 h_n)`` where h_0 < h_1 < ... are the positive zeros
of the entire function

    H_alpha(z) = sum_k (-z)^k / (k! prod_{j=1..k} (j - 1/(1+alpha)))

and the corresponding eigenfunctions of the Gram operator are
``H_alpha(h_n * x^((1+alpha)/alpha))``.  At alpha = 1 the series collapses
to cos(2 sqrt(z)), which anchors the whole module against the classical
Volterra operator; alpha = +inf is accepted as a parameter and gives the
series with plain (k!)^2 denominators.

Series are summed termwise in double-double arithmetic so that even the
badly cancelling regime z ~ 100 (terms of size 1e7) comes out to ~1e-15
absolute.  Zero finding brackets sign changes on a sqrt(z)-grid, where
consecutive zeros are uniformly separated, then polishes with safeguarded
Newton steps.
"""

import math
from dataclasses import dataclass

import numpy as np

from .compensated import dd_div_dd, dd_mul_d, fsum_pairs, two_prod, two_sum
from .errors import ConvergenceError, DomainError, IterationLimitError, SearchHorizonError

_TAIL_TARGET = 1e-15
_MAX_TERMS = 10_000


def _eps_of(alpha):
    if alpha == math.inf:
        return 0.0
    if not alpha > 0:
        raise DomainError(f"alpha must be positive or inf, got {alpha}")
    return 1.0 / (1.0 + alpha)


def _series_sum(eps, z, derivative=False):
    """Double-double sum of the entire series or its termwise derivative.

    The term recursion multiplies by -z and divides by the exact
    double-double product (k+1)((k+1) - eps), so each term is accurate to
    O(u^2) relative; math.fsum then adds all (hi, lo) parts exactly.
    """
    if derivative:
        hi, lo = dd_div_dd(-1.0, 0.0, 1.0 - eps, 0.0)
        shift = 1.0  # denominator of step k is (k+1)(k+2-eps)
    else:
        hi, lo = 1.0, 0.0
        shift = 0.0
    pairs = [(hi, lo)]
    for k in range(_MAX_TERMS):
        d1 = float(k + 1)
        d2_hi, d2_lo = two_sum(k + 1 + shift, -eps)
        den_hi, den_lo = two_prod(d1, d2_hi)
        den_lo += d1 * d2_lo
        hi, lo = dd_mul_d(hi, lo, -z)
        hi, lo = dd_div_dd(hi, lo, den_hi, den_lo)
        pairs.append((hi, lo))
        ratio = abs(z) / ((k + 2) * (k + 2 + shift - eps))
        if abs(hi) < _TAIL_TARGET and ratio < 0.5:
            # remaining tail is below |t| * ratio/(1-ratio) < 1e-15
            return fsum_pairs(pairs)
    raise ConvergenceError(f"series at z={z} did not converge in {_MAX_TERMS} terms")


def eval_H(alpha, z):
    """The entire function whose positive zeros give the Gram spectrum.

    ``alpha = math.inf`` selects the limiting series sum (-z)^k/(k!)^2.
    At alpha = 1 this is cos(2 sqrt(z)) to ~1e-13 for z up to 100.
    """
    return _series_sum(_eps_of(alpha), z)


def eval_H_derivative(alpha, z):
    """d/dz of eval_H, by termwise differentiation with the same tail policy."""
    return _series_sum(_eps_of(alpha), z, derivative=True)


# first zero of cos(2 sqrt(z)); sets the scan scale in t = sqrt(z)
_UNIT_FIRST_ZERO = math.pi**2 / 16.0
_SCAN_STEP = math.pi / 16.0


def _refine_zero(alpha, za, zb, fa, fb):
    """Polish a bracketed sign change by bisection plus guarded Newton."""
    z = 0.5 * (za + zb)
    for _ in range(200):
        f = eval_H(alpha, z)
        df = eval_H_derivative(alpha, z)
        if abs(f) <= 1e-12 * max(1.0, abs(df) * z) or (zb - za) <= 4e-16 * zb:
            return z
        if (f > 0) == (fa > 0):
            za, fa = z, f
        else:
            zb, fb = z, f
        step = z - f / df if df != 0 else math.nan
        if not (za < step < zb):
            step = 0.5 * (za + zb)  # Newton left the bracket: bisect
        z = step
    raise IterationLimitError("zero refinement stalled", estimate=z)


def find_zeros(alpha, count):
    """First ``count`` positive zeros of eval_H, strictly increasing.

    Scans sqrt(z) in steps of pi/16 (consecutive zeros are at least ~pi/2
    apart in that variable for every alpha), brackets sign changes, and
    verifies against a 10x finer recount before refining each bracket.
    """
    if count < 1 or int(count) != count:
        raise DomainError(f"count must be a positive integer, got {count}")
    count = int(count)
    _eps_of(alpha)  # validates alpha
    horizon = (
        2.0
        * _UNIT_FIRST_ZERO
        * (1 + 2 * count) ** 2
        * max(1.0, 1.0 / min(alpha, 1.0))
    )
    brackets = _scan_brackets(alpha, count, horizon, _SCAN_STEP)
    changes = _count_sign_changes(alpha, brackets[-1][1], _SCAN_STEP / 10.0)
    if changes != count:
        raise SearchHorizonError(
            f"10x finer recount saw {changes} sign changes where the scan saw {count}",
            partial=[0.5 * (a + b) for a, b, *_ in brackets],
        )
    return [_refine_zero(alpha, *bracket) for bracket in brackets]


def _scan_brackets(alpha, count, horizon, step):
    brackets = []
    t = 0.0
    f_prev = eval_H(alpha, 0.0)  # = 1
    z_prev = 0.0
    while len(brackets) < count:
        t += step
        z = t * t
        if z > horizon:
            raise SearchHorizonError(
                f"only {len(brackets)} of {count} zeros within z <= {horizon:.3g}",
                partial=[0.5 * (a + b) for a, b, *_ in brackets],
            )
        f = eval_H(alpha, z)
        if f == 0.0:  # exact hit: nudge the endpoint into a true bracket
            z += 1e-12 * max(z, 1.0)
            f = eval_H(alpha, z)
        if (f > 0) != (f_prev > 0):
            brackets.append((z_prev, z, f_prev, f))
        z_prev, f_prev = z, f
    return brackets


def _count_sign_changes(alpha, z_stop, step):
    """Sign changes of eval_H on [0, z_stop], scanned in sqrt(z) steps."""
    t_stop = math.sqrt(z_stop)
    grid = np.arange(1, int(t_stop / step) + 1) * step
    zs = list(grid * grid)
    if not zs or zs[-1] < z_stop:
        zs.append(z_stop)
    changes = 0
    f_prev = eval_H(alpha, 0.0)
    for z in zs:
        f = eval_H(alpha, z)
        if f == 0.0:
            z_nudged = z + 1e-12 * max(z, 1.0)
            f = eval_H(alpha, z_nudged)
        if (f > 0) != (f_prev > 0):
            changes += 1
        f_prev = f
    return changes


@dataclass(frozen=True)
class TruncatedSeries:
    """Truncated power series in x^power_step with a certified tail bound."""

    alpha: float
    argument: float
    power_step: float
    coeffs: np.ndarray
    tail_bound: float

    @property
    def trunc_K(self):
        return self.coeffs.size - 1

    def __call__(self, x):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.array(
            [eval_H(self.alpha, self.argument * v**self.power_step) for v in arr]
        )
        return out if np.ndim(x) else float(out[0])


def _series_coefficients(alpha, z):
    """Term values (-z)^k / (k! prod (j - eps)) up to a ~1e-16 tail."""
    eps = _eps_of(alpha)
    coeffs = [1.0]
    t = 1.0
    for k in range(_MAX_TERMS):
        t *= -z / ((k + 1) * (k + 1 - eps))
        coeffs.append(t)
        ratio = abs(z) / ((k + 2) * (k + 2 - eps))
        if abs(t) < 1e-16 and ratio < 0.5:
            tail = abs(t) * ratio / (1.0 - ratio)
            return np.array(coeffs), tail
    raise ConvergenceError(f"coefficient stream at z={z} did not terminate")


@dataclass(frozen=True)
class GramEigenpair:
    """One eigenpair of the Gram operator (adjoint composed with forward)."""

    index: int
    zero_h: float
    eigenvalue: float
    eigenfunction: TruncatedSeries


def gram_eigenpair(alpha, n):
    """n-th Gram eigenpair: eigenvalue alpha/((1+alpha)^2 h_n) and the
    series eigenfunction, which vanishes at x = 1 by construction."""
    if not (0.0 < alpha < math.inf):
        raise DomainError(f"Gram eigenpairs need finite positive alpha, got {alpha}")
    if n < 0 or int(n) != n:
        raise DomainError(f"eigenpair index must be a nonnegative integer, got {n}")
    n = int(n)
    h = find_zeros(alpha, n + 1)[n]
    lam = alpha / ((1.0 + alpha) ** 2 * h)
    coeffs, tail = _series_coefficients(alpha, h)
    fn = TruncatedSeries(
        alpha=alpha,
        argument=h,
        power_step=(1.0 + alpha) / alpha,
        coeffs=coeffs,
        tail_bound=tail,
    )
    return GramEigenpair(index=n, zero_h=h, eigenvalue=lam, eigenfunction=fn)


def norm_22(alpha):
    """Exact L^2 -> L^2 operator norm, (1/(1+alpha)) sqrt(alpha / h_0)."""
    if not (0.0 < alpha < math.inf):
        raise DomainError(f"norm_22 needs finite positive alpha, got {alpha}")
    h0 = find_zeros(alpha, 1)[0]
    return math.sqrt(alpha / h0) / (1.0 + alpha)


def small_alpha_expansion(alpha):
    """First-order norm prediction 1 - (3/4) alpha, valid for alpha <= 0.1."""
    if not 0.0 < alpha <= 0.1:
        raise DomainError(f"expansion window is 0 < alpha <= 0.1, got {alpha}")
    return 1.0 - 0.75 * alpha


def small_alpha_diagnostic(alpha):
    """|norm_22 - (1 - 0.75 alpha)| / alpha^2; bounded as alpha -> 0."""
    return abs(norm_22(alpha) - small_alpha_expansion(alpha)) / alpha**2


def deformation_gap(eps, z):
    """Distance from the eps-deformed series to its limit, with its bound.

    Returns ``(gap, bound)`` where gap = |H(eps, z) - H(0, z)| in the
    eps = 1/(1+alpha) parameterization and bound = 5 eps e^|z|; the
    inequality gap <= bound holds for eps <= 1/8.
    """
    if not 0.0 < eps <= 0.125:
        raise DomainError(f"the bound is stated for 0 < eps <= 1/8, got {eps}")
    alpha = 1.0 / eps - 1.0
    gap = abs(eval_H(alpha, z) - eval_H(math.inf, z))
    return gap, 5.0 * eps * math.exp(abs(z))
