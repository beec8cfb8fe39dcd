"""GUE and traceless-GUE sampling with a self-contained eigensolver.

Scaling convention: diagonal entries have variance 1 and off-diagonal
entries have ``E|X_ij|^2 = 1`` (real and imaginary parts each N(0, 1/2)).
Under this normalization the largest eigenvalue of the m x m ensemble matches
the directed last-passage functional over m standard Brownian coordinates,
and the traceless projection matches its zero-sum counterpart.

The eigensolver embeds the complex Hermitian matrix into a real symmetric one
of twice the size (eigenvalues doubled), Householder-tridiagonalizes, and
runs implicit-shift QL sweeps; no external numerical libraries are involved.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "NoConvergenceError",
    "HermitianMatrix",
    "Spectrum",
    "sample_gue",
    "make_traceless",
    "eigenvalues_hermitian",
    "largest_eigenvalue",
    "traceless_2x2_max_eig_density",
    "chi3_scaled_cdf",
]

DEFAULT_TOL = 1e-12


class NoConvergenceError(RuntimeError):
    """QL iteration failed to converge within the sweep cap."""


@dataclass(frozen=True)
class HermitianMatrix:
    """A complex Hermitian matrix with validated symmetry."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        h = np.asarray(self.entries, dtype=np.complex128)
        if h.ndim != 2 or h.shape[0] != h.shape[1]:
            raise ValueError("matrix must be square")
        if not np.allclose(h, h.conj().T, atol=1e-12 * max(1.0, float(np.abs(h).max(initial=0.0)))):
            raise ValueError("matrix must be Hermitian")
        h.setflags(write=False)
        object.__setattr__(self, "entries", h)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]

    @property
    def trace_real(self) -> float:
        return float(np.trace(self.entries).real)


@dataclass(frozen=True)
class Spectrum:
    """All eigenvalues of a Hermitian matrix, sorted descending."""

    eigenvalues: np.ndarray
    source_trace: float

    def __post_init__(self) -> None:
        w = np.asarray(self.eigenvalues, dtype=np.float64)
        if np.any(np.diff(w) > 0):
            raise ValueError("eigenvalues must be sorted descending")
        scale = max(1.0, float(np.abs(w).max(initial=0.0)))
        if abs(w.sum() - self.source_trace) > 1e-9 * w.size * scale:
            raise ValueError("eigenvalue sum inconsistent with trace")
        w.setflags(write=False)
        object.__setattr__(self, "eigenvalues", w)

    @property
    def largest(self) -> float:
        return float(self.eigenvalues[0])


def sample_gue(m: int, rng: np.random.Generator) -> HermitianMatrix:
    """Sample an m x m GUE matrix (unit diagonal variance, ``E|X_ij|^2 = 1``).

    Draw order is fixed (diagonal, then upper-triangle real parts row-major,
    then imaginary parts), so a seeded generator reproduces the matrix.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    diag = rng.standard_normal(m)
    n_off = m * (m - 1) // 2
    re = rng.standard_normal(n_off) * math.sqrt(0.5)
    im = rng.standard_normal(n_off) * math.sqrt(0.5)
    h = np.zeros((m, m), dtype=np.complex128)
    iu = np.triu_indices(m, k=1)
    h[iu] = re + 1j * im
    h += h.conj().T
    h[np.diag_indices(m)] = diag
    return HermitianMatrix(h)


def make_traceless(h: HermitianMatrix) -> HermitianMatrix:
    """Project onto the zero-trace subspace: ``H - (tr H / m) I``."""
    m = h.dimension
    shifted = h.entries - (np.trace(h.entries) / m) * np.eye(m)
    return HermitianMatrix(shifted)


def _real_embedding(h: np.ndarray) -> np.ndarray:
    """Embed complex Hermitian H = A + iB as the real symmetric [[A, -B], [B, A]].

    The embedding carries each eigenvalue of H twice.
    """
    a, b = h.real, h.imag
    return np.block([[a, -b], [b, a]])


def _householder_tridiag(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Reduce a real symmetric matrix to tridiagonal (d, e) in place."""
    a = a.copy()
    n = a.shape[0]
    e = np.zeros(n)
    for k in range(n - 2):
        x = a[k + 1 :, k]
        alpha = math.sqrt(float(x @ x))
        if alpha == 0.0:
            continue
        if x[0] > 0.0:
            alpha = -alpha
        v = x.copy()
        v[0] -= alpha
        vnorm = math.sqrt(float(v @ v))
        if vnorm == 0.0:
            continue
        v /= vnorm
        sub = a[k + 1 :, k + 1 :]
        w = sub @ v
        u = w - (v @ w) * v
        sub -= 2.0 * np.outer(v, u)
        sub -= 2.0 * np.outer(u, v)
        a[k + 1 :, k] = 0.0
        a[k, k + 1 :] = 0.0
        a[k + 1, k] = alpha
        a[k, k + 1] = alpha
    d = np.diag(a).copy()
    e[: n - 1] = np.diag(a, -1)
    return d, e


def _ql_implicit(d: np.ndarray, e: np.ndarray, tol: float, max_sweeps: int) -> np.ndarray:
    """Implicit-shift QL on a symmetric tridiagonal (d, e); eigenvalues only.

    ``e[i]`` couples ``d[i]`` and ``d[i+1]``; ``e[n-1]`` is scratch.
    """
    n = d.size
    d = d.copy()
    e = e.copy()
    sweeps = 0
    for l in range(n):
        while True:
            m_ = n - 1
            for i in range(l, n - 1):
                dd = abs(d[i]) + abs(d[i + 1])
                if abs(e[i]) <= tol * dd:
                    m_ = i
                    break
            if m_ == l:
                break
            sweeps += 1
            if sweeps > max_sweeps:
                raise NoConvergenceError(f"QL exceeded {max_sweeps} sweeps")
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            g = d[m_] - d[l] + e[l] / (g + math.copysign(r, g))
            s = c = 1.0
            p = 0.0
            broke = False
            for i in range(m_ - 1, l - 1, -1):
                f = s * e[i]
                b = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m_] = 0.0
                    broke = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
            if broke:
                continue
            d[l] -= p
            e[l] = g
            e[m_] = 0.0
    return d


def eigenvalues_hermitian(h: HermitianMatrix, tol: float = DEFAULT_TOL) -> Spectrum:
    """All real eigenvalues of a Hermitian matrix, sorted descending.

    The matrix is scaled by its max-abs entry before iteration so the QL
    convergence test is relative; backward error stays at ``tol * ||H||``.
    """
    m = h.dimension
    trace = h.trace_real
    scale = float(np.abs(h.entries).max())
    if scale == 0.0:
        return Spectrum(np.zeros(m), 0.0)
    if m == 1:
        return Spectrum(np.array([trace]), trace)
    s = _real_embedding(h.entries / scale)
    d, e = _householder_tridiag(s)
    w = _ql_implicit(d, e, tol, max_sweeps=50 * s.shape[0])
    w = np.sort(w)[::-1] * scale
    # the real embedding doubles every eigenvalue; keep one of each pair
    return Spectrum(w[::2].copy(), trace)


def largest_eigenvalue(h: HermitianMatrix, tol: float = DEFAULT_TOL) -> float:
    return eigenvalues_hermitian(h, tol).largest


def traceless_2x2_max_eig_density(x):
    """Density of the top eigenvalue of the unit-scale 2x2 traceless ensemble.

    This is the half-chi(3) law ``(16 / sqrt(2 pi)) x^2 exp(-2 x^2)`` on
    ``x > 0``: with all three independent real components at variance 1/4,
    four times the squared eigenvalue is chi-squared with 3 degrees of
    freedom.  (The projected GUE at the package's unit scaling carries an
    extra ``sqrt(2)``: its top eigenvalue is distributed as chi(3)/sqrt(2).)
    """
    xa = np.asarray(x, dtype=np.float64)
    out = np.where(
        xa > 0.0,
        (16.0 / math.sqrt(2.0 * math.pi)) * xa**2 * np.exp(-2.0 * xa**2),
        0.0,
    )
    return float(out) if np.isscalar(x) else out


def chi3_scaled_cdf(x, scale: float = 1.0):
    """CDF of ``scale * chi(3)``: ``erf(u/sqrt2) - sqrt(2/pi) u exp(-u^2/2)``.

    ``u = x / scale``; zero for ``x <= 0``.
    """
    if scale <= 0.0:
        raise ValueError("scale must be positive")
    u = np.asarray(x, dtype=np.float64) / scale
    erf = np.vectorize(math.erf)
    out = np.where(
        u > 0.0,
        erf(u / math.sqrt(2.0)) - math.sqrt(2.0 / math.pi) * u * np.exp(-(u**2) / 2.0),
        0.0,
    )
    return float(out) if np.isscalar(x) else out
