"""Matrix ground truth for every analytic claim in the library.

The forward operator is discretized on the midpoint grid by exact
row-wise integration of the indicator kernel, which reproduces apply_T
bit-for-bit.  Singular values, eigenvalues, spectral radii and (p, q)
norms of the matrix then approximate the operator quantities to O(1/N),
independently of any closed form.

The machine inner product is the quadrature one, <f, g> = sum w_i f_i g_i,
so matrix singular values approximate L^2 singular values with no
N-dependent scale factor; the matrix adjoint is the weighted transpose.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import ComplexPairError, DomainError, IterationLimitError
from .transform import midpoints


@dataclass(frozen=True)
class OperatorMatrix:
    """Quadrature discretization of one family member."""

    alpha: float
    entries: np.ndarray
    weights: np.ndarray

    @property
    def n_points(self):
        return self.entries.shape[0]


def discretize(alpha, n_points):
    """Exact-overlap discretization: entry (i, j) is the length of cell j
    covered by [0, x_i^alpha].  alpha = 0 yields the projector onto
    constants (all entries 1/N)."""
    if alpha < 0:
        raise DomainError(f"alpha must be nonnegative, got {alpha}")
    if n_points < 16 or int(n_points) != n_points:
        raise DomainError(f"n_points must be an integer >= 16, got {n_points}")
    n = int(n_points)
    x = midpoints(n)
    t = n * x**alpha
    entries = np.clip(t[:, None] - np.arange(n)[None, :], 0.0, 1.0) / n
    return OperatorMatrix(alpha=float(alpha), entries=entries, weights=np.full(n, 1.0 / n))


def adjoint_entries(m):
    """Matrix of the weighted-transpose adjoint, W^-1 M^T W."""
    w = m.weights
    return (m.entries * w[:, None]).T / w[None, :]


def _wnorm(v, w, p):
    return float(np.dot(w, np.abs(v) ** p) ** (1.0 / p))


def largest_singular_value(m, tol=1e-10, max_iter=100_000):
    """Power iteration on the Gram operator (adjoint of forward), in the
    weighted inner product; returns the square root of its top eigenvalue."""
    mat = m.entries
    w = m.weights
    v = np.ones(m.n_points)
    lam_prev = math.inf
    for _ in range(max_iter):
        g = mat @ v
        gv = (mat.T @ (w * g)) / w
        lam = float(np.dot(w * v, gv) / np.dot(w * v, v))
        norm = math.sqrt(float(np.dot(w * gv, gv)))
        if norm == 0.0:
            return 0.0
        v = gv / norm
        if abs(lam - lam_prev) <= tol * max(abs(lam), 1e-300):
            return math.sqrt(max(lam, 0.0))
        lam_prev = lam
    raise IterationLimitError(
        "singular-value power iteration did not converge",
        estimate=math.sqrt(max(lam, 0.0)),
    )


def matrix_norm_22(entries, weights, tol=1e-10, max_iter=100_000):
    """Weighted 2,2 norm of an arbitrary (possibly signed) matrix."""
    n = entries.shape[0]
    w = weights
    # deterministic start with no special symmetry
    v = 1.0 + 0.001 * np.sin(np.arange(n))
    lam_prev = math.inf
    for _ in range(max_iter):
        g = entries @ v
        gv = (entries.T @ (w * g)) / w
        lam = float(np.dot(w * v, gv) / np.dot(w * v, v))
        norm = math.sqrt(float(np.dot(w * gv, gv)))
        if norm == 0.0:
            return 0.0
        v = gv / norm
        if abs(lam - lam_prev) <= tol * max(abs(lam), 1e-300):
            return math.sqrt(max(lam, 0.0))
        lam_prev = lam
    raise IterationLimitError("matrix norm iteration did not converge", estimate=math.sqrt(max(lam, 0.0)))


def _power_dominant(apply_fn, n, tol, max_iter):
    """Dominant eigenpair of a positivity-preserving linear map."""
    v = np.ones(n) / math.sqrt(n)
    lam_prev = math.inf
    history = []
    for _ in range(max_iter):
        g = apply_fn(v)
        lam = float(np.dot(v, g) / np.dot(v, v))
        norm = float(np.linalg.norm(g))
        if norm == 0.0:
            return 0.0, v
        v = g / norm
        history.append(lam)
        if abs(lam - lam_prev) <= tol * max(abs(lam), 1e-300):
            return lam, v
        lam_prev = lam
    # stagnant two-cycles in the Rayleigh estimate signal a complex pair
    if len(history) > 4 and abs(history[-1] - history[-3]) < 1e-3 * abs(
        history[-1] - history[-2]
    ):
        raise ComplexPairError(
            f"dominant eigenvalue estimate oscillates between {history[-2]:.3e} "
            f"and {history[-1]:.3e}"
        )
    raise IterationLimitError("eigen power iteration did not converge", estimate=lam)


def top_eigenvalues(m, count, tol=1e-10, max_iter=100_000, dense_cutoff=600):
    """The ``count`` largest-magnitude real eigenvalues of the matrix.

    Dense solve below ``dense_cutoff``; deflated power iteration (with
    left eigenvectors, since the matrix is not symmetric) above it.
    Raises ComplexPairError when a dominant complex pair blocks either
    route.
    """
    if count < 1 or count > 8:
        raise DomainError(f"count must be in 1..8, got {count}")
    mat = m.entries
    n = m.n_points
    if n <= dense_cutoff:
        eigs = np.linalg.eigvals(mat)
        order = np.argsort(-np.abs(eigs))
        top = eigs[order[:count]]
        scale = np.abs(top[0]) + 1e-300
        if np.any(np.abs(top.imag) > 1e-8 * scale):
            raise ComplexPairError("dominant eigenvalues form complex pairs")
        return [float(v) for v in top.real]
    deflation = []

    def apply_right(v):
        g = mat @ v
        for lam, rv, lv, denom in deflation:
            g = g - lam * rv * (np.dot(lv, v) / denom)
        return g

    def apply_left(v):
        g = mat.T @ v
        for lam, rv, lv, denom in deflation:
            g = g - lam * lv * (np.dot(rv, v) / denom)
        return g

    out = []
    for _ in range(count):
        lam, rv = _power_dominant(apply_right, n, tol, max_iter)
        _, lv = _power_dominant(apply_left, n, tol, max_iter)
        out.append(lam)
        deflation.append((lam, rv, lv, float(np.dot(lv, rv))))
    return out


def top_gram_eigenvalues(m, count, tol=1e-12, max_iter=100_000):
    """Largest eigenvalues of the Gram operator (squared singular values),
    by power iteration with orthogonal deflation on the symmetrized matrix."""
    if count < 1 or count > 8:
        raise DomainError(f"count must be in 1..8, got {count}")
    w = m.weights
    # similarity W^(1/2) M W^(-1/2) makes the Gram operator symmetric
    sw = np.sqrt(w)
    sym = (sw[:, None] * m.entries) / sw[None, :]
    gram = sym.T @ sym
    n = m.n_points
    basis = []
    out = []
    for _ in range(count):
        v = np.ones(n) / math.sqrt(n)
        for b in basis:
            v -= np.dot(b, v) * b
        lam_prev = math.inf
        for _ in range(max_iter):
            g = gram @ v
            for b in basis:
                g -= np.dot(b, g) * b
            lam = float(np.dot(v, g))
            nrm = float(np.linalg.norm(g))
            if nrm == 0.0:
                break
            v = g / nrm
            if abs(lam - lam_prev) <= tol * max(abs(lam), 1e-300):
                break
            lam_prev = lam
        else:
            raise IterationLimitError("gram eigen iteration did not converge", estimate=lam)
        basis.append(v)
        out.append(lam)
    return out


def spectral_radius_estimate(m, power=1024):
    """Certified upper estimate of the spectral radius via Gelfand:
    ||M^k||_F^(1/k) >= rho for every k, so the minimum over the doubling
    sequence k = 2, 4, ..., power is itself an upper bound.

    Powers of a strongly non-normal matrix collapse fast; each squaring
    is pre-scaled up so the product stays representable, and the scan
    stops early if the next power underflows anyway (the bound so far
    then stands).
    """
    boost = 1e150
    mat = m.entries.copy()
    frob = float(np.linalg.norm(mat))
    if frob == 0.0:
        return 0.0
    log_scale = math.log(frob)
    mat /= frob
    k = 1
    best = math.exp(log_scale)  # k = 1 bound: the Frobenius norm itself
    while k < power:
        prod = mat @ mat
        frob = float(np.linalg.norm(prod))
        log_extra = 0.0
        if frob == 0.0:
            # the square of a frob-1 matrix underflowed: rescale and retry
            prod = (mat * boost) @ (mat * boost)
            frob = float(np.linalg.norm(prod))
            if frob == 0.0:
                break  # true power below 1e-600 * previous; bound so far stands
            log_extra = -2.0 * math.log(boost)
        k *= 2
        log_scale = 2.0 * log_scale + math.log(frob) + log_extra
        mat = prod / frob
        best = min(best, math.exp(log_scale / k))
    return best


def pq_norm_estimate(m, ctx, tol=1e-8, max_iter=100_000):
    """Nonlinear power method for the weighted (p, q) matrix norm.

    For a nonnegative kernel the iteration of duality maps converges to
    the norm; we stop when the Rayleigh-type ratio ||Mf||_q settles.
    """
    return _pq_power(m.entries, m.weights, ctx, tol, max_iter, repeats=1)


def _pq_power(mat, w, ctx, tol, max_iter, repeats):
    p, q = ctx.p, ctx.q
    f = np.ones(mat.shape[0])
    f /= _wnorm(f, w, p)

    def forward(v):
        for _ in range(repeats):
            v = mat @ v
        return v

    def adjoint(v):
        for _ in range(repeats):
            v = mat.T @ v
        return v

    r_prev = -math.inf
    recent = []
    for _ in range(max_iter):
        g = forward(f)
        r = _wnorm(g, w, q)
        if abs(r - r_prev) <= tol * max(r, 1e-300):
            return r
        recent.append(r)
        if len(recent) > 50:
            recent.pop(0)
        h = adjoint(w * g ** (q - 1.0)) / w
        f = h ** (1.0 / (p - 1.0))
        norm_f = _wnorm(f, w, p)
        if norm_f == 0.0:
            return 0.0
        f /= norm_f
        r_prev = r
    raise IterationLimitError(
        f"(p,q) power method did not settle; recent ratio bracket "
        f"[{min(recent):.6e}, {max(recent):.6e}]",
        estimate=max(recent),
    )


def iterate_matrix_norm(m, n, ctx, tol=1e-8, max_iter=100_000):
    """(p, p)-norm estimate of the n-fold composition, applied matrix-free
    (the dense n-th power is never formed)."""
    if n < 1 or int(n) != n:
        raise DomainError(f"iterate order must be a positive integer, got {n}")
    return _pq_power(m.entries, m.weights, ctx, tol, max_iter, repeats=int(n))
