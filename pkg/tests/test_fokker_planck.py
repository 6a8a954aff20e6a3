"""Closed-form drift/diffusion and strong-cooling limit populations."""

import numpy as np
import pytest

from tpcool.fokker_planck import (
    PhasePoint,
    fp_drift_diffusion,
    fp_limit_populations,
)
from tpcool.liouvillian import ReducedRates, build_reduced_me
from tpcool.observables import number_distribution
from tpcool.solvers import steady_state


class TestDriftDiffusion:
    def test_origin(self):
        out = fp_drift_diffusion(PhasePoint(0.0), 2e-4, 5.0, 0.01)
        assert np.allclose(out.drift, 0.0)
        assert out.diffusion[0, 0] == 0.0
        assert out.diffusion[0, 1] == pytest.approx(-2e-4 * 5.0)

    def test_pure_linear_drift(self):
        mu = 0.3 + 0.4j
        out = fp_drift_diffusion(PhasePoint(mu), 2e-4, 5.0, 0.0)
        assert np.allclose(out.drift, [-1e-4 * mu, -1e-4 * mu.conjugate()])

    def test_arithmetic_point(self):
        # direct substitution at mu = 1: -kappa/2 - Gamma
        out = fp_drift_diffusion(PhasePoint(1.0), 2e-4, 5.0, 0.01)
        assert out.drift[0] == pytest.approx(-1e-4 - 0.01)
        assert out.diffusion[0, 0] == pytest.approx(-0.01)

    def test_diffusion_symmetric(self):
        out = fp_drift_diffusion(PhasePoint(0.7 - 0.2j), 1e-4, 3.0, 5e-3)
        assert out.diffusion[0, 1] == out.diffusion[1, 0]

    def test_rejects_negative_rates(self):
        with pytest.raises(ValueError):
            fp_drift_diffusion(PhasePoint(1.0), -1e-4, 5.0, 0.01)


class TestLimitPopulations:
    def test_vacuum_limit(self):
        assert fp_limit_populations(0.0) == (1.0, 0.0)

    def test_reference_occupation(self):
        p0, p1 = fp_limit_populations(5.0)
        assert p0 == pytest.approx(16.0 / 21.0)
        assert p1 == pytest.approx(5.0 / 21.0)

    def test_high_occupation_asymptote(self):
        p0, p1 = fp_limit_populations(1e9)
        assert p0 == pytest.approx(0.75, abs=1e-8)
        assert p1 == pytest.approx(0.25, abs=1e-8)

    def test_sum_is_one_and_monotone(self):
        grid = np.linspace(0.0, 50.0, 201)
        pairs = [fp_limit_populations(v) for v in grid]
        p0 = np.array([p[0] for p in pairs])
        p1 = np.array([p[1] for p in pairs])
        assert np.allclose(p0 + p1, 1.0, atol=1e-14)
        assert np.all(np.diff(p0) <= 0)
        assert np.all(np.diff(p1) >= 0)
        assert p0[0] == 1.0 and p0[-1] > 0.75

    @pytest.mark.parametrize("nbar", [1.0, 5.0, 10.0, 20.0])
    def test_reduced_master_equation_reproduces_limit(self, nbar):
        # two-photon cooling dominant: kappa_b nbar / Gamma_down = 0.005
        kappa_b = 1e-7
        gamma2 = kappa_b * nbar / 0.005
        rates = ReducedRates(gamma2, 0.0, kappa_b * (1 + nbar), kappa_b * nbar, 0.0)
        n_max = max(30, int(8 * nbar))
        rho = steady_state(build_reduced_me(rates, n_max))
        p = number_distribution(rho)
        p0, p1 = fp_limit_populations(nbar)
        assert abs(p[0] - p0) / p0 < 0.05
        assert abs(p[1] - p1) / p1 < 0.05
