"""Correlated Brownian grid paths and ordered-time max functionals.

Paths live on a uniform grid ``t_j = j/N`` and all maxima range over grid
nodes, so every functional here is the exact maximum of the discretized
problem (the continuum value is approached from below at rate ``O(N^{-1/2})``
per coordinate; distribution-level tolerances absorb that bias).

The functionals share one primitive: a chain of running maxima.  Writing
``X_1, ..., X_d`` for the coordinate rows,

* :func:`chain_max_pinned` computes ``max sum_i [X_i(t_i) - X_i(t_{i-1})]``
  over ``0 = t_0 <= t_1 <= ... <= t_d = 1`` (directed last-passage form);
* :func:`chain_max_free` computes ``max sum_i X_i(t_i)`` over
  ``0 <= t_1 <= ... <= t_d <= 1``.

Both accept leading batch dimensions, so replica blocks evaluate in single
vectorized passes.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .alphabet import ProbVector

logger = logging.getLogger(__name__)

__all__ = [
    "NotPSDError",
    "DimensionMismatchError",
    "InvalidParamsError",
    "CovarianceSpec",
    "GridPathEnsemble",
    "build_covariance",
    "cov_independent",
    "cov_uniform_tridiagonal",
    "cov_equicorrelated",
    "cov_zero_sum_projected",
    "cov_nonuniform",
    "cholesky_psd",
    "sample_paths",
    "standard_path_block",
    "pair_difference_paths",
    "zero_sum_project",
    "terminal_mean",
    "chain_max_pinned",
    "chain_max_free",
    "last_passage_time",
    "last_passage_times",
    "uniform_limit_tridiagonal",
    "uniform_limit_tridiagonal_values",
    "zero_sum_last_passage",
    "uniform_limit_symmetric",
    "uniform_limit_symmetric_values",
    "nonuniform_limit",
    "nonuniform_limit_values",
    "sample_lis_limit",
    "sample_lis_limits",
]

PSD_TOL = 1e-10
ZERO_SUM_TOL = 1e-12


class NotPSDError(ValueError):
    """Matrix has an eigenvalue below the PSD tolerance."""


class DimensionMismatchError(ValueError):
    """Path ensemble dimensions do not match the functional's needs."""


class InvalidParamsError(ValueError):
    """Parameters outside the valid range (e.g. k * p_max > 1)."""


@dataclass(frozen=True)
class CovarianceSpec:
    """A per-unit-time covariance matrix plus provenance for scaling.

    ``sigma`` and ``mu`` are populated only for the ``nonuniform`` kind:
    ``sigma[r-1]`` scales coordinate ``r`` inside the limit functional and
    ``mu[r-1]`` records the drift that was removed when centering.
    """

    kind: str
    matrix: np.ndarray
    sigma: np.ndarray | None = None
    mu: np.ndarray | None = None

    def __post_init__(self) -> None:
        mat = np.array(self.matrix, dtype=np.float64)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError("covariance matrix must be square")
        if not np.allclose(mat, mat.T, atol=1e-12):
            raise ValueError("covariance matrix must be symmetric")
        if np.linalg.eigvalsh(mat).min() < -PSD_TOL:
            raise NotPSDError("covariance matrix is not PSD within tolerance")
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def dims(self) -> int:
        return self.matrix.shape[0]


def cov_independent(m: int) -> CovarianceSpec:
    """Identity covariance: ``m`` independent standard coordinates."""
    if m < 1:
        raise InvalidParamsError("m must be >= 1")
    return CovarianceSpec(kind="independent_standard", matrix=np.eye(m))


def cov_uniform_tridiagonal(m: int) -> CovarianceSpec:
    """(m-1)-dim covariance with unit diagonal and -1/2 on the first band."""
    if m < 2:
        raise InvalidParamsError("m must be >= 2")
    d = m - 1
    mat = np.eye(d)
    idx = np.arange(d - 1)
    mat[idx, idx + 1] = -0.5
    mat[idx + 1, idx] = -0.5
    return CovarianceSpec(kind="uniform_tridiagonal", matrix=mat)


def cov_equicorrelated(
    k: int, rho: float | None = None, p_max: float | None = None
) -> CovarianceSpec:
    """k-dim equicorrelated covariance.

    Either pass ``rho`` directly or pass ``p_max`` to use the tied-maximum
    correlation ``rho = -p_max / (1 - p_max)``.
    """
    if k < 1:
        raise InvalidParamsError("k must be >= 1")
    if (rho is None) == (p_max is None):
        raise InvalidParamsError("pass exactly one of rho, p_max")
    if p_max is not None:
        if not (0.0 < p_max < 1.0):
            raise InvalidParamsError("p_max must lie in (0, 1)")
        rho = -p_max / (1.0 - p_max)
    if k > 1 and not (-1.0 / (k - 1) - 1e-15 <= rho <= 1.0):
        raise InvalidParamsError(f"rho {rho} outside [-1/(k-1), 1]")
    mat = np.full((k, k), float(rho))
    np.fill_diagonal(mat, 1.0)
    return CovarianceSpec(kind="equicorrelated", matrix=mat)


def cov_zero_sum_projected(m: int) -> CovarianceSpec:
    """Covariance of m standard coordinates minus their cross-coordinate mean.

    Variance ``(1 - 1/m)`` per coordinate, covariance ``-1/m`` across; the
    coordinates sum to zero identically.
    """
    if m < 2:
        raise InvalidParamsError("m must be >= 2")
    mat = np.full((m, m), -1.0 / m)
    np.fill_diagonal(mat, 1.0 - 1.0 / m)
    return CovarianceSpec(kind="zero_sum_projected", matrix=mat)


def nonuniform_sigma_mu(p: ProbVector) -> tuple[np.ndarray, np.ndarray]:
    """Per-coordinate scale and removed drift for a general letter law.

    ``mu_r = p_r - p_{r+1}`` and ``sigma_r^2 = p_r + p_{r+1} - mu_r^2`` are
    the mean and variance of the +/-1 letter-indicator difference for
    adjacent letters ``r, r+1``.
    """
    pr = np.asarray(p.probs)
    mu = pr[:-1] - pr[1:]
    var = pr[:-1] + pr[1:] - mu**2
    return np.sqrt(var), mu


def cov_nonuniform(p: ProbVector) -> CovarianceSpec:
    """Unit-diagonal correlation matrix of the adjacent-letter walk limits.

    Adjacent coordinates see the shared letter ``r+1`` with opposite signs,
    contributing ``-p_{r+1}``; every pair also carries the centering term
    ``-mu_r mu_s``; the whole covariance is normalized by ``sigma_r sigma_s``.
    In the uniform case this reduces to the -1/2 tridiagonal matrix.
    """
    m = p.m
    if m < 2:
        raise InvalidParamsError("nonuniform covariance needs m >= 2")
    sigma, mu = nonuniform_sigma_mu(p)
    pr = np.asarray(p.probs)
    d = m - 1
    mat = np.empty((d, d))
    for r in range(d):
        for s in range(d):
            if r == s:
                mat[r, s] = 1.0
                continue
            cov = -mu[r] * mu[s]
            if abs(r - s) == 1:
                cov -= pr[max(r, s)]  # shared letter max(r,s)+1, 0-based
            mat[r, s] = cov / (sigma[r] * sigma[s])
    return CovarianceSpec(kind="nonuniform", matrix=mat, sigma=sigma, mu=mu)


_COV_BUILDERS = {
    "independent_standard": cov_independent,
    "uniform_tridiagonal": cov_uniform_tridiagonal,
    "equicorrelated": cov_equicorrelated,
    "zero_sum_projected": cov_zero_sum_projected,
    "nonuniform": cov_nonuniform,
}


def build_covariance(kind: str, **params) -> CovarianceSpec:
    """Dispatch to the named covariance constructor."""
    try:
        builder = _COV_BUILDERS[kind]
    except KeyError:
        raise InvalidParamsError(f"unknown covariance kind {kind!r}") from None
    return builder(**params)


def cholesky_psd(matrix: np.ndarray, tol: float = PSD_TOL) -> np.ndarray:
    """Lower-triangular factor ``L`` with ``L L^T`` equal to ``matrix``.

    Strictly positive definite inputs go through the plain Cholesky; merely
    semidefinite ones are eigen-decomposed, tiny negative eigenvalues are
    clipped at zero (clip magnitude logged), and a QR step restores lower
    triangularity.  Eigenvalues below ``-tol`` raise :class:`NotPSDError`.
    """
    mat = np.asarray(matrix, dtype=np.float64)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError("matrix must be square")
    if not np.allclose(mat, mat.T, atol=1e-12):
        raise ValueError("matrix must be symmetric")
    try:
        return np.linalg.cholesky(mat)
    except np.linalg.LinAlgError:
        pass
    w, v = np.linalg.eigh(mat)
    if w.min() < -tol:
        raise NotPSDError(f"eigenvalue {w.min():.3e} below -{tol:.1e}")
    if w.min() < 0.0:
        logger.debug("clipping negative eigenvalues at 0 (min %.3e)", w.min())
        w = np.clip(w, 0.0, None)
    a = v * np.sqrt(w)
    r = np.linalg.qr(a.T, mode="r")
    sign = np.sign(np.diag(r))
    sign[sign == 0.0] = 1.0
    return r.T * sign


@dataclass(frozen=True)
class GridPathEnsemble:
    """One realization of a multi-coordinate path on the uniform grid.

    ``values[i, j]`` is coordinate ``i`` at time ``j / n_steps``; every
    coordinate starts at zero.
    """

    values: np.ndarray  # (dims, n_steps + 1)
    spec: CovarianceSpec

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] < 2:
            raise ValueError("values must be (dims, n_steps + 1) with n_steps >= 1")
        if np.any(v[:, 0] != 0.0):
            raise ValueError("all coordinates must start at 0")
        if self.spec.kind == "zero_sum_projected":
            worst = float(np.max(np.abs(v.sum(axis=0))))
            if worst > ZERO_SUM_TOL:
                raise ValueError(
                    f"zero-sum violation {worst:.2e} exceeds {ZERO_SUM_TOL:.0e}"
                )
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def dims(self) -> int:
        return self.values.shape[0]

    @property
    def n_steps(self) -> int:
        return self.values.shape[1] - 1

    @property
    def dt(self) -> float:
        return 1.0 / self.n_steps


def _cumulate(increments: np.ndarray) -> np.ndarray:
    """Prepend the zero column and cumulative-sum the increments."""
    *lead, dims, n = increments.shape
    out = np.zeros((*lead, dims, n + 1))
    np.cumsum(increments, axis=-1, out=out[..., 1:])
    return out


def sample_paths(
    spec: CovarianceSpec, n_steps: int, rng: np.random.Generator
) -> GridPathEnsemble:
    """Sample one path ensemble with iid Gaussian increments per grid step.

    Increments over each ``dt`` have covariance ``dt * spec.matrix``.  The
    zero-sum kind is realized by projecting independent standard coordinates
    (subtracting the cross-coordinate mean), which enforces the zero-sum
    constraint identically rather than just in distribution.
    """
    if n_steps < 1:
        raise ValueError("n_steps must be >= 1")
    scale = math.sqrt(1.0 / n_steps)
    if spec.kind == "zero_sum_projected":
        g = rng.standard_normal((spec.dims, n_steps))
        values = zero_sum_project(_cumulate(scale * g))
        return GridPathEnsemble(values=values, spec=spec)
    g = rng.standard_normal((spec.dims, n_steps))
    if spec.kind == "independent_standard":
        inc = scale * g
    else:
        inc = scale * (cholesky_psd(spec.matrix) @ g)
    return GridPathEnsemble(values=_cumulate(inc), spec=spec)


def standard_path_block(
    dims: int, n_steps: int, rngs
) -> np.ndarray:
    """Stack independent standard path values for a block of replicas.

    Returns ``(len(rngs), dims, n_steps + 1)``; replica ``r`` consumes only
    ``rngs[r]``, so the block decomposition never affects the streams.
    """
    scale = math.sqrt(1.0 / n_steps)
    inc = np.empty((len(rngs), dims, n_steps))
    for r, rng in enumerate(rngs):
        inc[r] = rng.standard_normal((dims, n_steps))
    inc *= scale
    return _cumulate(inc)


def pair_difference_paths(values: np.ndarray) -> np.ndarray:
    """Adjacent-coordinate differences ``(X_i - X_{i+1}) / sqrt(2)``.

    Maps ``m`` standard coordinates to the ``m - 1`` tridiagonally
    correlated ones.
    """
    return (values[..., :-1, :] - values[..., 1:, :]) / math.sqrt(2.0)


def zero_sum_project(values: np.ndarray) -> np.ndarray:
    """Subtract the cross-coordinate mean at every grid node."""
    return values - values.mean(axis=-2, keepdims=True)


def terminal_mean(values: np.ndarray) -> np.ndarray | float:
    """Average of the coordinate terminal values (the ``Z`` normal)."""
    out = values[..., :, -1].mean(axis=-1)
    return float(out) if out.ndim == 0 else out


def chain_max_pinned(values: np.ndarray) -> np.ndarray | float:
    """``max sum_i [X_i(t_i) - X_i(t_{i-1})]`` over ``0 = t_0 <= ... <= t_d = 1``.

    Running-max recursion ``f_i = X_i + accmax(f_{i-1} - X_i)``; ties in the
    running max resolve toward earlier grid times, which never changes the
    value.  Accepts leading batch dimensions.
    """
    v = np.asarray(values, dtype=np.float64)
    d = v.shape[-2]
    f = v[..., 0, :]
    for i in range(1, d):
        xi = v[..., i, :]
        f = xi + np.maximum.accumulate(f - xi, axis=-1)
    out = f[..., -1].copy()  # copy: do not pin the whole DP array in memory
    return float(out) if out.ndim == 0 else out


def chain_max_free(values: np.ndarray) -> np.ndarray | float:
    """``max sum_i X_i(t_i)`` over ``0 <= t_1 <= ... <= t_d <= 1`` on the grid."""
    v = np.asarray(values, dtype=np.float64)
    d = v.shape[-2]
    g = np.maximum.accumulate(v[..., 0, :], axis=-1)
    for i in range(1, d):
        g = np.maximum.accumulate(g + v[..., i, :], axis=-1)
    out = g[..., -1].copy()  # copy: do not pin the whole DP array in memory
    return float(out) if out.ndim == 0 else out


def last_passage_times(values: np.ndarray) -> np.ndarray | float:
    """Directed last-passage value over independent standard coordinates."""
    return chain_max_pinned(values)


def last_passage_time(paths: GridPathEnsemble, m: int | None = None) -> float:
    """Last-passage functional of one ensemble (all ``dims`` coordinates)."""
    if m is not None and paths.dims != m:
        raise DimensionMismatchError(f"expected {m} coordinates, got {paths.dims}")
    return float(chain_max_pinned(paths.values))


def uniform_limit_tridiagonal_values(values: np.ndarray) -> np.ndarray | float:
    """Uniform-alphabet limit functional on tridiagonal coordinates.

    ``sqrt(2) * (-(1/m) sum_i i X_i(1) + max sum_i X_i(t_i))`` with
    ``m = dims + 1``; identically zero when there are no coordinates.
    """
    v = np.asarray(values, dtype=np.float64)
    d = v.shape[-2]
    if d == 0:
        return np.zeros(v.shape[:-2]) if v.ndim > 2 else 0.0
    m = d + 1
    weights = np.arange(1, d + 1, dtype=np.float64)
    drift = -(weights * v[..., :, -1]).sum(axis=-1) / m
    out = math.sqrt(2.0) * (drift + chain_max_free(v))
    return float(out) if np.ndim(out) == 0 else out


def uniform_limit_tridiagonal(
    paths: GridPathEnsemble | None, m: int
) -> float:
    """Uniform-alphabet limit from an ``(m-1)``-coordinate ensemble.

    For ``m = 1`` the functional is identically zero and no paths are needed.
    """
    if m < 1:
        raise InvalidParamsError("m must be >= 1")
    if m == 1:
        return 0.0
    if paths is None or paths.dims != m - 1:
        raise DimensionMismatchError(f"need {m - 1} coordinates for m={m}")
    return float(uniform_limit_tridiagonal_values(paths.values))


def zero_sum_last_passage(paths: GridPathEnsemble, m: int | None = None) -> float:
    """Last-passage functional of a zero-sum ensemble (nonnegative a.s.)."""
    if m is not None and paths.dims != m:
        raise DimensionMismatchError(f"expected {m} coordinates, got {paths.dims}")
    worst = float(np.max(np.abs(paths.values.sum(axis=0))))
    if worst > ZERO_SUM_TOL:
        raise DimensionMismatchError(
            f"paths are not zero-sum (violation {worst:.2e})"
        )
    return float(chain_max_pinned(paths.values))


def uniform_limit_symmetric_values(values: np.ndarray) -> np.ndarray | float:
    """Symmetric form of the uniform-alphabet limit on standard coordinates.

    ``max sum_i [beta_i X_i(t_{i+1}) - eta_i X_i(t_i)]`` with
    ``beta_i = sqrt(i/(i+1))``, ``eta_i = sqrt((i+1)/i)``, ``t_m = 1`` pinned
    and ``m = dims + 1``.  Regrouped by time variable this is a plain chain:
    time ``t_j`` sees ``beta_{j-1} X_{j-1} - eta_j X_j`` and the pinned
    ``t_m`` contributes ``beta_{m-1} X_{m-1}(1)``.  The caller applies any
    overall ``1/sqrt(m)`` scaling.
    """
    v = np.asarray(values, dtype=np.float64)
    d = v.shape[-2]
    if d == 0:
        return np.zeros(v.shape[:-2]) if v.ndim > 2 else 0.0
    i = np.arange(1, d + 1, dtype=np.float64)
    beta = np.sqrt(i / (i + 1.0))
    eta = np.sqrt((i + 1.0) / i)
    rows = np.empty_like(v)
    rows[..., 0, :] = -eta[0] * v[..., 0, :]
    for j in range(1, d):
        rows[..., j, :] = beta[j - 1] * v[..., j - 1, :] - eta[j] * v[..., j, :]
    const = beta[d - 1] * v[..., d - 1, -1]
    out = const + chain_max_free(rows)
    return float(out) if np.ndim(out) == 0 else out


def uniform_limit_symmetric(paths: GridPathEnsemble, m: int) -> float:
    """Symmetric uniform-limit functional from ``m - 1`` standard coordinates."""
    if m < 2:
        raise InvalidParamsError("m must be >= 2")
    if paths.dims != m - 1:
        raise DimensionMismatchError(f"need {m - 1} coordinates for m={m}")
    return float(uniform_limit_symmetric_values(paths.values))


def _time_blocks(m: int, i_star) -> list[list[int]]:
    """Partition time indices ``0..m`` into runs tied by ``t_i = t_{i-1}``."""
    blocks: list[list[int]] = []
    cur = [0]
    for i in range(1, m + 1):
        if i in i_star:
            cur.append(i)
        else:
            blocks.append(cur)
            cur = [i]
    blocks.append(cur)
    return blocks


def nonuniform_limit_values(
    values: np.ndarray, p: ProbVector
) -> np.ndarray | float:
    """General-p limit functional with collapsed time arguments.

    ``-(1/m) sum_i i sigma_i X_i(1) + max sum_i sigma_i X_i(t_i)`` where the
    max runs over ``0 = t_0 <= ... <= t_m = 1`` subject to ``t_i = t_{i-1}``
    for every non-maximal letter ``i``.  Each maximal run of tied indices
    collapses to a single block time; blocks containing the endpoints are
    pinned at 0 and 1, the rest form a chain of running maxima over the
    summed block rows.
    """
    m = p.m
    v = np.asarray(values, dtype=np.float64)
    if v.shape[-2] != m - 1:
        raise DimensionMismatchError(
            f"need {m - 1} coordinates for {m}-letter law, got {v.shape[-2]}"
        )
    sigma, _ = nonuniform_sigma_mu(p)
    scaled = sigma.reshape((m - 1, 1)) * v
    weights = np.arange(1, m, dtype=np.float64)
    drift = -(weights * scaled[..., :, -1]).sum(axis=-1) / m

    blocks = _time_blocks(m, p.i_star)
    const = np.zeros(v.shape[:-2])
    free_rows = []
    for b, block in enumerate(blocks):
        coords = [i for i in block if 1 <= i <= m - 1]
        if not coords:
            continue
        row = scaled[..., [c - 1 for c in coords], :].sum(axis=-2)
        if b == 0:
            continue  # pinned at t=0: contributes nothing
        if b == len(blocks) - 1:
            const = const + row[..., -1]  # pinned at t=1
        else:
            free_rows.append(row)
    out = drift + const
    if free_rows:
        out = out + chain_max_free(np.stack(free_rows, axis=-2))
    return float(out) if np.ndim(out) == 0 else out


def nonuniform_limit(paths: GridPathEnsemble, p: ProbVector) -> float:
    """General-p limit functional of one correlated ensemble."""
    return float(nonuniform_limit_values(paths.values, p))


def sample_lis_limits(
    p_max: float, k: int, n_steps: int, rngs
) -> np.ndarray:
    """Draw the limiting LIS law for maximal probability ``p_max`` tied ``k`` ways.

    Each draw is ``sqrt(p_max) * (sqrt(1 - k p_max) Z + H)`` where, from one
    shared block of ``k`` standard coordinates, ``D`` is the last-passage
    value, ``Z`` the mean of the terminal values, and ``H = D - Z``.  Taking
    ``Z`` pathwise from the same block reproduces the exact decomposition of
    the last-passage value; independence of ``H`` and ``Z`` is a consequence.
    """
    if k < 1:
        raise InvalidParamsError("k must be >= 1")
    if not (0.0 < p_max <= 1.0 / k + 1e-15):
        raise InvalidParamsError(f"need 0 < p_max <= 1/k, got p_max={p_max}, k={k}")
    values = standard_path_block(k, n_steps, rngs)
    d = chain_max_pinned(values)
    z = terminal_mean(values)
    h = d - z
    coeff = math.sqrt(max(0.0, 1.0 - k * p_max))
    return np.asarray(math.sqrt(p_max) * (coeff * z + h))


def sample_lis_limit(
    p_max: float, k: int, n_steps: int, rng: np.random.Generator
) -> float:
    """One draw of the limiting LIS law (see :func:`sample_lis_limits`)."""
    return float(sample_lis_limits(p_max, k, n_steps, [rng])[0])
