"""Steady states, propagation, and quantum-regression correlations."""

import math

import numpy as np
import pytest

from tpcool.config import default_config
from tpcool.liouvillian import ReducedRates, build_filtered_me, build_reduced_me
from tpcool.observables import g2_zero, mean_occupation, number_distribution
from tpcool.operators import DensityMatrix
from tpcool.solvers import (
    DegenerateSteadyStateError,
    converge_in_n_max,
    default_tau_grid,
    propagate,
    steady_state,
    two_time_correlation,
)


def thermal_liouvillian(nbar, n_max, kappa=1e-7):
    rates = ReducedRates(0.0, 0.0, kappa * (1 + nbar), kappa * nbar, 0.0)
    return build_reduced_me(rates, n_max)


def geometric_pn(nbar, n_max):
    """Untruncated thermal distribution nbar^n / (1+nbar)^(n+1)."""
    n = np.arange(n_max + 1)
    return nbar**n / (1.0 + nbar) ** (n + 1)


class TestSteadyState:
    def test_thermal_distribution_against_geometric_oracle(self):
        # n_max = 70 keeps the truncation tail below the 1e-6 target
        nbar, n_max = 5.0, 70
        rho = steady_state(thermal_liouvillian(nbar, n_max))
        deviation = np.abs(number_distribution(rho) - geometric_pn(nbar, n_max)).max()
        assert deviation < 1e-6

    def test_thermal_occupation_high_accuracy(self):
        # (N+1) r^(N+1) < 1e-8 at nbar = 5 needs N ~ 140
        rho = steady_state(thermal_liouvillian(5.0, 140))
        assert abs(mean_occupation(rho) - 5.0) < 1e-8

    def test_pure_two_photon_generator_is_degenerate(self):
        # even and odd parity sectors each hold a stationary state
        liouv = build_reduced_me(ReducedRates(1e-3, 0.0, 0.0, 0.0, 0.0), 8)
        with pytest.raises(DegenerateSteadyStateError):
            steady_state(liouv)

    def test_cascade_with_weak_linear_decay_reaches_vacuum(self):
        liouv = build_reduced_me(ReducedRates(1e-3, 0.0, 1e-8, 0.0, 0.0), 10)
        rho = steady_state(liouv)
        p = number_distribution(rho)
        assert p[0] > 1.0 - 1e-9

    def test_filtered_model_concentrates_on_lowest_levels(self):
        cfg = default_config()
        liouv = build_filtered_me(cfg.model, cfg.baths, cfg.n_max)
        p = number_distribution(steady_state(liouv))
        assert p[0] + p[1] > 0.95

    def test_fixed_point_of_propagation(self):
        cfg = default_config()
        liouv = build_filtered_me(cfg.model, cfg.baths, 20)
        rho = steady_state(liouv)
        traj = propagate(liouv, rho, np.array([0.0, 1e5, 1e6]))
        drift = np.abs(
            number_distribution(traj.states[-1]) - number_distribution(rho)
        ).max()
        assert drift < 1e-7


class TestPropagate:
    def test_zero_generator_constant_trajectory(self):
        liouv = build_reduced_me(ReducedRates(0, 0, 0, 0, 0), 5)
        p0 = np.zeros(6)
        p0[2] = 1.0
        rho0 = DensityMatrix.from_data(liouv.sig, np.diag(p0))
        traj = propagate(liouv, rho0, np.linspace(0.0, 10.0, 4))
        for state in traj.states:
            assert np.abs(state.data - rho0.data).max() < 1e-12

    def test_single_mode_decay_closed_form(self):
        # oracle: P1(t) = exp(-kappa t) for linear damping at T = 0
        kappa = 2e-4
        liouv = build_reduced_me(ReducedRates(0.0, 0.0, kappa, 0.0, 0.0), 6)
        p0 = np.zeros(7)
        p0[1] = 1.0
        rho0 = DensityMatrix.from_data(liouv.sig, np.diag(p0))
        times = np.linspace(0.0, 2.0 / kappa, 9)
        traj = propagate(liouv, rho0, times)
        p1 = traj.populations()[:, 1]
        assert np.abs(p1 - np.exp(-kappa * times)).max() < 1e-6

    def test_trace_drift_bounded(self):
        cfg = default_config()
        liouv = build_filtered_me(cfg.model, cfg.baths, 20)
        p = geometric_pn(3.0, 20)
        p /= p.sum()
        rho0 = DensityMatrix.from_data(
            liouv.sig, np.kron(np.diag([0.0, 1.0]), np.diag(p))
        )
        traj = propagate(liouv, rho0, np.geomspace(1.0, 1e6, 12), rtol=1e-10, atol=1e-13)
        traces = np.array([np.trace(s.data).real for s in traj.states])
        assert np.abs(traces - 1.0).max() < 1e-8

    def test_positivity_along_trajectory(self):
        cfg = default_config()
        liouv = build_filtered_me(cfg.model, cfg.baths, 20)
        p = geometric_pn(3.0, 20)
        p /= p.sum()
        rho0 = DensityMatrix.from_data(
            liouv.sig, np.kron(np.diag([0.0, 1.0]), np.diag(p))
        )
        traj = propagate(liouv, rho0, np.geomspace(1.0, 1e6, 8))
        assert min(s.min_eigenvalue() for s in traj.states) > -1e-6

    def test_rejects_non_monotone_grid(self):
        liouv = build_reduced_me(ReducedRates(0, 0, 1e-4, 0, 0), 5)
        rho0 = DensityMatrix.from_data(liouv.sig, np.diag([1.0, 0, 0, 0, 0, 0]))
        with pytest.raises(ValueError, match="increasing"):
            propagate(liouv, rho0, np.array([0.0, 2.0, 1.0]))


class TestTwoTimeCorrelation:
    def test_thermal_state_bunching(self):
        # oracle: Fock-sum g2(0) = sum n(n-1)P_n / (sum n P_n)^2 -> 2
        nbar, n_max = 5.0, 70
        liouv = thermal_liouvillian(nbar, n_max)
        rho = steady_state(liouv)
        taus = np.array([0.0, 1e5])
        series = two_time_correlation(liouv, rho, taus)
        p = number_distribution(rho)
        n = np.arange(n_max + 1)
        oracle = float((n * (n - 1)) @ p) / float(n @ p) ** 2
        assert abs(series.values[0] - oracle) < 1e-10
        assert abs(series.values[0] - 2.0) < 5e-4

    def test_long_delay_factorizes(self):
        cfg = default_config()
        liouv = build_filtered_me(cfg.model, cfg.baths, 20)
        rho = steady_state(liouv)
        kappa_b = 1e-7
        taus = np.array([0.0, 1.0 / kappa_b, 100.0 / kappa_b])
        series = two_time_correlation(liouv, rho, taus)
        assert abs(series.values[-1] - 1.0) < 0.02

    def test_zero_delay_matches_single_time_moment(self):
        cfg = default_config()
        liouv = build_filtered_me(cfg.model, cfg.baths, 20)
        rho = steady_state(liouv)
        series = two_time_correlation(liouv, rho, np.array([0.0, 1e6]))
        assert abs(series.values[0] - g2_zero(rho)) < 1e-10

    def test_normalization_guard(self):
        liouv = build_reduced_me(ReducedRates(0.0, 0.0, 1e-4, 0.0, 0.0), 6)
        rho = steady_state(liouv)  # vacuum
        with pytest.raises(ValueError, match="normalization"):
            two_time_correlation(liouv, rho, np.array([0.0, 1.0]))

    def test_requires_zero_first_delay(self):
        cfg = default_config()
        liouv = build_filtered_me(cfg.model, cfg.baths, 12)
        rho = steady_state(liouv, check_unique=False)
        with pytest.raises(ValueError, match="tau"):
            two_time_correlation(liouv, rho, np.array([1.0, 2.0]))

    def test_default_tau_grid_span(self):
        taus = default_tau_grid(1e-7)
        assert taus[0] == 0.0
        assert math.isclose(taus[1], 1e6)
        assert math.isclose(taus[-1], 1e9)


class TestConvergenceHelper:
    def test_thermal_occupation_converges_by_doubling(self):
        def evaluate(n_max):
            rho = steady_state(thermal_liouvillian(1.0, n_max))
            return mean_occupation(rho)

        n_max, value = converge_in_n_max(evaluate, 30, tol=1e-4)
        assert abs(value - 1.0) < 1e-6
        assert n_max >= 60
