"""Spectrum, point spectrum and eigenfunctions of the family on L^p.

For exponent alpha >= 1 the operator is quasi-nilpotent (spectrum {0}, no
eigenvalues).  For alpha < 1 the point spectrum is the geometric sequence
``alpha^n (1 - alpha)`` and the n-th eigenfunction is
``x^(alpha/(1-alpha)) P_n(log x)`` with P_n a degree-n polynomial whose
coefficients satisfy a one-term recursion; we normalize P_n(0) = 1.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special import UNIT_TOLERANCE
from .transform import GridFunction, apply_T, lp_norm, midpoints


@dataclass(frozen=True)
class PowerLogFunction:
    """A function x^gamma * P(log x) with P given by ``coeffs`` (ascending)."""

    gamma: float
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))

    @property
    def degree(self):
        return self.coeffs.size - 1

    def __call__(self, x):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros_like(arr)
        pos = arr > 0
        logs = np.log(arr[pos])
        poly = np.polynomial.polynomial.polyval(logs, self.coeffs)
        out[pos] = np.exp(self.gamma * logs) * poly
        # x = 0: gamma > 0 kills every power-log term
        return out if np.ndim(x) else float(out[0])


@dataclass(frozen=True)
class SpectrumDescription:
    """Spectral data of one family member on L^p (p-independent)."""

    alpha: float
    spectral_radius: float
    has_point_spectrum: bool

    def eigenvalues(self, count):
        if not self.has_point_spectrum:
            return []
        return [eigenvalue(self.alpha, n) for n in range(count)]


def spectrum_description(alpha):
    """Spectrum report: {0} alone for alpha >= 1, plus the geometric
    eigenvalue sequence for alpha < 1."""
    if not alpha > 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    if alpha >= 1.0 - UNIT_TOLERANCE:
        return SpectrumDescription(alpha, 0.0, False)
    return SpectrumDescription(alpha, 1.0 - alpha, True)


def eigenvalue(alpha, n):
    """n-th eigenvalue alpha^n (1 - alpha), for alpha < 1."""
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"point spectrum is empty unless 0 < alpha < 1, got {alpha}")
    if n < 0 or int(n) != n:
        raise DomainError(f"eigenvalue index must be a nonnegative integer, got {n}")
    return math.exp(n * math.log(alpha)) * (1.0 - alpha)


def eigenfunction(alpha, n):
    """Eigenfunction for the n-th eigenvalue, normalized so P(0) = 1.

    Coefficient k of the log-polynomial is
    ``(1/k!) prod_{j<k} (1 - alpha^(j-n)) / (1 - alpha^(-1))``; the product
    terminates, so the polynomial has degree exactly n.
    """
    if not 0.0 < alpha < 1.0:
        raise DomainError(f"eigenfunctions exist only for 0 < alpha < 1, got {alpha}")
    if n < 0 or int(n) != n:
        raise DomainError(f"eigenfunction index must be a nonnegative integer, got {n}")
    n = int(n)
    la = math.log(alpha)
    denom = -math.expm1(-la)  # 1 - alpha^(-1), negative
    coeffs = np.zeros(n + 1)
    coeffs[0] = 1.0
    for k in range(n):
        factor = -math.expm1((k - n) * la)  # 1 - alpha^(k-n)
        coeffs[k + 1] = coeffs[k] * factor / (denom * (k + 1))
    return PowerLogFunction(gamma=alpha / (1.0 - alpha), coeffs=coeffs)


def eigen_residual(alpha, n, grid, p):
    """Relative L^p residual of the eigenpair on an N-point midpoint grid.

    The grid starts at 1/(2N), which sidesteps the log singularity at 0.
    """
    fn = eigenfunction(alpha, n)
    lam = eigenvalue(alpha, n)
    f = GridFunction(fn(midpoints(grid)))
    tf = apply_T(alpha, f)
    resid = GridFunction(tf.values - lam * f.values, f.weights)
    return lp_norm(resid, p) / lp_norm(f, p)


def projection_residuals(alpha, m_max, target, grid):
    """Weighted least-squares distance from ``target`` to span{f_0..f_m}.

    Weaker stand-in for density of the eigenfunction family: the returned
    sequence (m = 0 .. m_max) must be nonincreasing.  No convergence rate
    is asserted.
    """
    x = midpoints(grid)
    w = np.sqrt(np.full(grid, 1.0 / grid))
    t = np.asarray(target(x), dtype=float) * w
    residuals = []
    columns = []
    for m in range(m_max + 1):
        columns.append(eigenfunction(alpha, m)(x) * w)
        basis = np.column_stack(columns)
        coeff, *_ = np.linalg.lstsq(basis, t, rcond=None)
        residuals.append(float(np.linalg.norm(t - basis @ coeff)))
    return residuals
