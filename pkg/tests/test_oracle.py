"""Discretization oracle: matrix construction and spectral estimation."""

import math

import numpy as np
import pytest

from volterra_alpha.errors import ComplexPairError, DomainError
from volterra_alpha.oracle import (
    adjoint_entries,
    discretize,
    iterate_matrix_norm,
    largest_singular_value,
    pq_norm_estimate,
    spectral_radius_estimate,
    top_eigenvalues,
    top_gram_eigenvalues,
)
from volterra_alpha.point_spectrum import eigenvalue
from volterra_alpha.transform import GridFunction, LpContext, apply_T, inner, lp_norm, midpoints

CTX22 = LpContext(2.0, 2.0)


class TestDiscretize:
    def test_unit_alpha_lower_triangular(self):
        m = discretize(1.0, 64)
        assert np.all(np.triu(m.entries, 1) == 0.0)
        assert np.allclose(np.diag(m.entries), 0.5 / 64)

    def test_row_sums_are_power_action(self):
        for alpha in (0.5, 1.0, 2.0):
            m = discretize(alpha, 256)
            x = midpoints(256)
            assert np.max(np.abs(m.entries.sum(axis=1) - x**alpha)) <= 1.0 / 512

    def test_support_column_cutoff(self):
        # at the midpoint 0.5 with alpha = 2 only cells below 0.25 contribute
        m = discretize(2.0, 32)
        i = 15  # x_i = 0.484...; x_i^2 = 0.2346
        cutoff = (midpoints(32)[i]) ** 2
        cols = np.nonzero(m.entries[i])[0]
        assert cols.max() == int(32 * cutoff)

    def test_nonnegative_entries(self):
        for alpha in (0.2, 1.0, 3.0):
            assert np.all(discretize(alpha, 128).entries >= 0.0)

    def test_matches_apply_T_exactly(self):
        rng = np.random.default_rng(5)
        for alpha in (0.4, 1.0, 2.5):
            m = discretize(alpha, 512)
            f = GridFunction(rng.standard_normal(512))
            assert np.max(np.abs(m.entries @ f.values - apply_T(alpha, f).values)) <= 1e-14

    def test_projector_member(self):
        m = discretize(0.0, 64)
        assert np.allclose(m.entries, 1.0 / 64)

    def test_domain(self):
        with pytest.raises(DomainError):
            discretize(-1.0, 64)
        with pytest.raises(DomainError):
            discretize(1.0, 8)


class TestAdjoint:
    def test_weighted_transpose_duality(self):
        # <Mf, g> = <f, M*g> holds to machine precision by construction
        rng = np.random.default_rng(9)
        m = discretize(0.7, 256)
        adj = adjoint_entries(m)
        f = GridFunction(rng.standard_normal(256))
        g = GridFunction(rng.standard_normal(256))
        lhs = inner(GridFunction(m.entries @ f.values), g)
        rhs = inner(f, GridFunction(adj @ g.values))
        assert abs(lhs - rhs) <= 1e-12

    def test_uniform_weights_reduce_to_transpose(self):
        m = discretize(1.3, 128)
        assert np.allclose(adjoint_entries(m), m.entries.T)


class TestLargestSingularValue:
    def test_halmos_value(self):
        est = largest_singular_value(discretize(1.0, 4096))
        assert abs(est - 2.0 / math.pi) <= 1e-3

    def test_mesh_convergence(self):
        for alpha in (0.1, 1.0, 10.0):
            coarse = largest_singular_value(discretize(alpha, 512))
            fine = largest_singular_value(discretize(alpha, 1024))
            assert abs(coarse - fine) <= 4.0 / 512


class TestTopEigenvalues:
    @pytest.mark.parametrize("alpha", [0.3, 0.5, 0.7])
    def test_matches_formula(self, alpha):
        eigs = top_eigenvalues(discretize(alpha, 2048), 5)
        expect = [eigenvalue(alpha, n) for n in range(5)]
        assert eigs == pytest.approx(expect, abs=2e-3)

    def test_dense_route_agrees_with_power_route(self):
        m = discretize(0.5, 512)
        dense = top_eigenvalues(m, 4)  # N <= dense cutoff
        power = top_eigenvalues(m, 4, dense_cutoff=16)
        assert dense == pytest.approx(power, abs=1e-8)

    def test_power_iterates_stay_nonnegative(self):
        # the dominant eigenvector of a positive matrix is positive
        m = discretize(0.4, 700)
        eigs = top_eigenvalues(m, 3)
        assert all(v > 0 for v in eigs)

    def test_domain(self):
        m = discretize(0.5, 64)
        with pytest.raises(DomainError):
            top_eigenvalues(m, 9)

    def test_complex_pair_detection(self):
        # a rotation block has a complex dominant pair
        entries = np.zeros((64, 64))
        entries[0, 1], entries[1, 0] = 1.0, -1.0
        entries[2:, 2:] = np.eye(62) * 1e-9
        fake = type(discretize(1.0, 64))(
            alpha=1.0, entries=entries, weights=np.full(64, 1.0 / 64)
        )
        with pytest.raises(ComplexPairError):
            top_eigenvalues(fake, 2)


class TestGramEigenvalues:
    def test_unit_alpha_squared_singular_values(self):
        eigs = top_gram_eigenvalues(discretize(1.0, 2048), 3)
        expect = [4.0 / (math.pi**2 * (1 + 2 * n) ** 2) for n in range(3)]
        assert eigs == pytest.approx(expect, abs=2e-3)

    def test_consistent_with_singular_value(self):
        m = discretize(0.6, 1024)
        top = top_gram_eigenvalues(m, 1)[0]
        assert math.sqrt(top) == pytest.approx(largest_singular_value(m), abs=1e-9)


class TestSpectralRadiusEstimate:
    @pytest.mark.parametrize("alpha", [1.0, 1.5, 2.0])
    def test_quasi_nilpotent_regime(self, alpha):
        rho = spectral_radius_estimate(discretize(alpha, 1024))
        assert rho <= 5e-3

    def test_upper_bounds_true_radius(self):
        # for alpha < 1 the estimate must sit above the known top eigenvalue
        m = discretize(0.5, 512)
        assert spectral_radius_estimate(m, power=64) >= 0.5 - 1e-3


class TestPqNormEstimate:
    def test_reduces_to_singular_value(self):
        m = discretize(0.8, 1024)
        assert pq_norm_estimate(m, CTX22) == pytest.approx(
            largest_singular_value(m), abs=1e-8
        )

    def test_halmos_value(self):
        m = discretize(1.0, 4096)
        assert pq_norm_estimate(m, CTX22) == pytest.approx(2.0 / math.pi, abs=1e-3)

    def test_asymmetric_exponents_inside_sandwich(self):
        from volterra_alpha.bounds import norm_sandwich

        ctx = LpContext(2.0, 4.0)
        m = discretize(1.0, 1024)
        est = pq_norm_estimate(m, ctx)
        sw = norm_sandwich(1.0, ctx)
        assert sw.lower - 2e-3 <= est <= sw.upper + 2e-3


class TestIterateMatrixNorm:
    def test_single_iterate_is_pq_norm(self):
        m = discretize(0.9, 512)
        assert iterate_matrix_norm(m, 1, CTX22) == pytest.approx(
            pq_norm_estimate(m, CTX22), rel=1e-10
        )

    def test_unit_alpha_second_iterate_magnitude(self):
        # only the bound sandwich is contractual for the second iterate
        from volterra_alpha.bounds import iterate_norm_lower, iterate_norm_upper

        m = discretize(1.0, 2048)
        est = iterate_matrix_norm(m, 2, CTX22)
        assert iterate_norm_lower(1.0, 2, 2.0) <= est <= iterate_norm_upper(1.0, 2, 2.0)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    def test_inside_iterate_sandwich(self, alpha):
        from volterra_alpha.bounds import iterate_norm_lower, iterate_norm_upper

        m = discretize(alpha, 1024)
        for n in range(2, 7):
            est = iterate_matrix_norm(m, n, CTX22)
            assert iterate_norm_lower(alpha, n, 2.0) <= est
            assert est <= iterate_norm_upper(alpha, n, 2.0) + 2e-3

    def test_domain(self):
        with pytest.raises(DomainError):
            iterate_matrix_norm(discretize(1.0, 64), 0, CTX22)
