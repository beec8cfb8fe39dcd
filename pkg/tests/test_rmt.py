import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.linalg import eigvalsh

from lislab.rmt import (
    HermitianMatrix,
    Spectrum,
    chi3_scaled_cdf,
    eigenvalues_hermitian,
    largest_eigenvalue,
    make_traceless,
    sample_gue,
    traceless_2x2_max_eig_density,
)
from lislab.seeding import rng_for_replica
from lislab.stats import ks_one_sample


class TestSampleGue:
    def test_hermitian_by_construction(self):
        rng = np.random.default_rng(0)
        for m in (1, 2, 5, 9):
            h = sample_gue(m, rng).entries
            assert np.array_equal(h, h.conj().T)
            assert np.all(h.diagonal().imag == 0.0)

    def test_deterministic(self):
        a = sample_gue(4, np.random.default_rng(5)).entries
        b = sample_gue(4, np.random.default_rng(5)).entries
        assert np.array_equal(a, b)

    def test_entry_moments(self):
        reps = 10_000
        diag = np.empty(reps)
        off = np.empty(reps, dtype=np.complex128)
        for i in range(reps):
            h = sample_gue(2, rng_for_replica(60, i)).entries
            diag[i] = h[0, 0].real
            off[i] = h[0, 1]
        # Var of a variance estimate of n gaussians ~ 2/n
        assert abs(diag.var() - 1.0) <= 4.0 * math.sqrt(2.0 / reps)
        assert abs(np.mean(np.abs(off) ** 2) - 1.0) <= 4.0 * math.sqrt(2.0 / reps)

    def test_spectrum_symmetric_about_zero(self):
        reps = 4000
        top = np.empty(reps)
        bottom = np.empty(reps)
        for i in range(reps):
            w = eigenvalues_hermitian(sample_gue(4, rng_for_replica(61, i))).eigenvalues
            top[i], bottom[i] = w[0], w[-1]
        joint_se = math.sqrt((top + bottom).var(ddof=1) / reps)
        assert abs(top.mean() + bottom.mean()) <= 4.0 * joint_se


class TestMakeTraceless:
    def test_projection(self):
        rng = np.random.default_rng(1)
        h = sample_gue(5, rng)
        h0 = make_traceless(h)
        assert abs(np.trace(h0.entries)) <= 1e-12 * 5
        # projecting twice changes nothing
        assert np.allclose(make_traceless(h0).entries, h0.entries, atol=1e-15)

    def test_identity_projects_to_zero(self):
        h = HermitianMatrix(np.eye(2, dtype=complex))
        assert np.allclose(make_traceless(h).entries, 0.0)

    def test_top_eigenvalue_nonnegative(self):
        rng = np.random.default_rng(2)
        for _ in range(50):
            h0 = make_traceless(sample_gue(3, rng))
            assert largest_eigenvalue(h0) >= 0.0


class TestEigenvaluesHermitian:
    def test_diagonal_matrix(self):
        h = HermitianMatrix(np.diag([3.0, 1.0, 2.0]).astype(complex))
        assert eigenvalues_hermitian(h).eigenvalues.tolist() == [3.0, 2.0, 1.0]

    def test_2x2_closed_form(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            a, b, y, z = rng.standard_normal(4)
            h = HermitianMatrix(np.array([[a, y + 1j * z], [y - 1j * z, b]]))
            w = eigenvalues_hermitian(h).eigenvalues
            mid = (a + b) / 2.0
            rad = math.sqrt(((a - b) / 2.0) ** 2 + y * y + z * z)
            assert w[0] == pytest.approx(mid + rad, abs=1e-12)
            assert w[1] == pytest.approx(mid - rad, abs=1e-12)

    def test_negation_reverses_spectrum(self):
        rng = np.random.default_rng(4)
        h = sample_gue(6, rng)
        w = eigenvalues_hermitian(h).eigenvalues
        w_neg = eigenvalues_hermitian(HermitianMatrix(-h.entries)).eigenvalues
        assert np.allclose(w_neg, -w[::-1], atol=1e-12)

    def test_matches_library_solver(self):
        rng = np.random.default_rng(5)
        for m in (1, 2, 3, 5, 8, 13, 40):
            h = sample_gue(m, rng)
            ours = eigenvalues_hermitian(h).eigenvalues
            ref = np.sort(eigvalsh(h.entries))[::-1]
            assert np.abs(ours - ref).max() <= 1e-11 * max(1.0, np.abs(h.entries).max())

    def test_trace_and_frobenius_identities(self):
        rng = np.random.default_rng(6)
        for _ in range(30):
            h = sample_gue(7, rng)
            w = eigenvalues_hermitian(h).eigenvalues
            assert np.sum(w) == pytest.approx(h.trace_real, rel=1e-9, abs=1e-9)
            assert np.sum(w**2) == pytest.approx(
                float(np.sum(np.abs(h.entries) ** 2)), rel=1e-9
            )

    def test_zero_matrix(self):
        h = HermitianMatrix(np.zeros((3, 3), dtype=complex))
        assert eigenvalues_hermitian(h).eigenvalues.tolist() == [0.0, 0.0, 0.0]

    def test_interleaving_with_principal_minor(self):
        rng = np.random.default_rng(7)
        for _ in range(40):
            h = sample_gue(5, rng)
            w = eigenvalues_hermitian(h).eigenvalues
            minor = HermitianMatrix(h.entries[:4, :4])
            mu = eigenvalues_hermitian(minor).eigenvalues
            assert w[1] - 1e-10 <= mu[0] <= w[0] + 1e-10

    def test_spectrum_invariants(self):
        with pytest.raises(ValueError):
            Spectrum(np.array([1.0, 2.0]), source_trace=3.0)  # ascending
        with pytest.raises(ValueError):
            Spectrum(np.array([2.0, 1.0]), source_trace=100.0)  # trace off


class TestClosedForms:
    def test_density_zero_left_of_origin(self):
        assert traceless_2x2_max_eig_density(-1.0) == 0.0
        assert traceless_2x2_max_eig_density(0.0) == 0.0

    def test_density_integrates_to_one(self):
        total, err = quad(traceless_2x2_max_eig_density, 0.0, np.inf)
        assert abs(total - 1.0) <= 1e-8
        assert err < 1e-8

    def test_density_argmax(self):
        # stationary point of x^2 exp(-2x^2) at 1/sqrt(2)
        xs = np.linspace(0.01, 3.0, 2000)
        peak = xs[np.argmax(traceless_2x2_max_eig_density(xs))]
        assert peak == pytest.approx(1.0 / math.sqrt(2.0), abs=2e-3)

    def test_chi3_cdf_limits(self):
        assert chi3_scaled_cdf(0.0, 1.0) == 0.0
        assert chi3_scaled_cdf(-1.0, 2.0) == 0.0
        assert chi3_scaled_cdf(60.0, 1.0) == pytest.approx(1.0, abs=1e-12)

    def test_chi3_cdf_quadrature_oracle(self):
        # frozen 18-digit values from direct quadrature of the chi(3) density
        oracle = {
            0.5: 0.0308595957837267295,
            1.0: 0.198748043098799198,
            2.0: 0.738535870050889378,
        }
        for x, ref in oracle.items():
            assert chi3_scaled_cdf(x, 1.0) == pytest.approx(ref, abs=1e-10)
        # scaled argument: P(s chi <= x) = P(chi <= x/s)
        assert chi3_scaled_cdf(1.0, 2.0) == pytest.approx(oracle[0.5], abs=1e-10)

    def test_chi3_cdf_matches_density_integral(self):
        dens = lambda t: math.sqrt(2.0 / math.pi) * t * t * math.exp(-t * t / 2.0)
        for x in (0.5, 1.0, 2.0):
            val, _ = quad(dens, 0.0, x)
            assert chi3_scaled_cdf(x, 1.0) == pytest.approx(val, abs=1e-10)

    def test_2x2_traceless_top_eigenvalue_law(self):
        # the projected ensemble's top eigenvalue carries an extra sqrt(2)
        # against the unit-scale half-chi(3) density; rescale and KS-test
        # against the CDF obtained by integrating the closed-form density
        reps = 10_000
        lam = np.empty(reps)
        for i in range(reps):
            h0 = make_traceless(sample_gue(2, rng_for_replica(62, i)))
            lam[i] = largest_eigenvalue(h0)
        grid = np.linspace(0.0, 4.0, 401)
        dens_cdf = np.concatenate(
            [[0.0], np.cumsum((traceless_2x2_max_eig_density(grid[1:]) +
                               traceless_2x2_max_eig_density(grid[:-1])) / 2 * np.diff(grid))]
        )

        def cdf(x):
            return np.interp(x, grid, dens_cdf, left=0.0, right=1.0)

        ks, _ = ks_one_sample(lam / math.sqrt(2.0), cdf)
        assert ks <= 0.02
        # same law, via the closed-form chi(3) CDF at scale 1/2
        ks2, _ = ks_one_sample(lam / math.sqrt(2.0), lambda x: chi3_scaled_cdf(x, 0.5))
        assert ks2 <= 0.02
