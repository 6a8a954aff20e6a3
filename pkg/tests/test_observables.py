"""Photon statistics extraction: occupation, distributions, g2(0)."""

import math

import numpy as np
import pytest
from scipy.special import factorial

from tpcool.model import ModelParams
from tpcool.observables import (
    g2_zero,
    mean_occupation,
    number_distribution,
    photon_statistics,
    to_lab_frame,
)
from tpcool.operators import DensityMatrix, SpaceSignature


def fock_state(n, n_max):
    p = np.zeros(n_max + 1)
    p[n] = 1.0
    return DensityMatrix.from_data(SpaceSignature((n_max + 1,)), np.diag(p))


def thermal_state(nbar, n_max):
    ratio = nbar / (1.0 + nbar)
    p = ratio ** np.arange(n_max + 1)
    p /= p.sum()
    return DensityMatrix.from_data(SpaceSignature((n_max + 1,)), np.diag(p)), p


def coherent_state(alpha, n_max):
    n = np.arange(n_max + 1)
    amps = np.exp(-0.5 * abs(alpha) ** 2) * alpha**n / np.sqrt(factorial(n))
    amps /= np.linalg.norm(amps)
    rho = np.outer(amps, amps.conj())
    return DensityMatrix.from_data(SpaceSignature((n_max + 1,)), rho)


def binomial_thinning(p, transmission):
    """Beam-splitter-like attenuation of a diagonal photon distribution."""
    n_max = len(p) - 1
    out = np.zeros_like(p)
    for n in range(n_max + 1):
        for m in range(n + 1):
            out[m] += (
                p[n]
                * math.comb(n, m)
                * transmission**m
                * (1.0 - transmission) ** (n - m)
            )
    return out


class TestOccupation:
    def test_vacuum(self):
        assert mean_occupation(fock_state(0, 5)) == 0.0

    def test_fock_two(self):
        assert mean_occupation(fock_state(2, 5)) == pytest.approx(2.0)

    def test_thermal_five(self):
        # oracle: geometric series mean; n_max = 300 leaves no visible tail
        rho, _ = thermal_state(5.0, 300)
        assert abs(mean_occupation(rho) - 5.0) < 1e-6

    def test_composite_state(self):
        tls_ground = np.diag([0.0, 1.0])
        p = np.zeros(6)
        p[1] = 1.0
        sig = SpaceSignature((2, 6))
        rho = DensityMatrix.from_data(sig, np.kron(tls_ground, np.diag(p)))
        assert mean_occupation(rho) == pytest.approx(1.0)
        assert number_distribution(rho)[1] == pytest.approx(1.0)


class TestNumberDistribution:
    def test_thermal_matches_geometric(self):
        rho, _ = thermal_state(5.0, 200)
        p = number_distribution(rho)
        n = np.arange(8)
        expected = 5.0**n / 6.0 ** (n + 1)
        assert np.abs(p[:8] - expected).max() < 1e-10

    def test_composes_with_mean(self):
        rho, _ = thermal_state(2.0, 60)
        p = number_distribution(rho)
        assert abs(float(np.arange(len(p)) @ p) - mean_occupation(rho)) < 1e-10


class TestG2Zero:
    def test_coherent_state_poissonian(self):
        rho = coherent_state(1.5, 40)
        assert abs(g2_zero(rho) - 1.0) < 1e-9

    def test_thermal_state(self):
        # oracle: Fock sum over the geometric distribution
        rho, p = thermal_state(4.0, 300)
        n = np.arange(len(p))
        oracle = float((n * (n - 1)) @ p) / float(n @ p) ** 2
        assert abs(g2_zero(rho) - oracle) < 1e-12
        assert abs(g2_zero(rho) - 2.0) < 1e-6

    def test_single_fock_no_pairs(self):
        assert g2_zero(fock_state(1, 5)) == 0.0

    def test_two_level_support_exactly_zero(self):
        sig = SpaceSignature((6,))
        rho = DensityMatrix.from_data(sig, np.diag([0.6, 0.4, 0, 0, 0, 0]))
        assert g2_zero(rho) == 0.0

    def test_vanishing_occupation_rejected(self):
        with pytest.raises(ValueError, match="undefined"):
            g2_zero(fock_state(0, 5))

    def test_statistics_container(self):
        stats = photon_statistics(fock_state(0, 5))
        assert stats.g2_zero is None
        assert stats.mean_n == 0.0

    def test_attenuation_fixtures(self):
        # binomial thinning keeps thermal at 2 and Poissonian at 1
        _, p_th = thermal_state(5.0, 120)
        thinned = binomial_thinning(p_th, 0.4)
        sig = SpaceSignature((121,))
        rho_thin = DensityMatrix.from_data(sig, np.diag(thinned))
        assert abs(g2_zero(rho_thin) - 2.0) < 1e-6

        rho_coh = coherent_state(1.2, 60)
        p_coh = number_distribution(rho_coh)
        thinned = binomial_thinning(p_coh, 0.4)
        sig = SpaceSignature((61,))
        rho_thin = DensityMatrix.from_data(
            sig, np.diag(thinned / thinned.sum()), trace_tol=1e-8
        )
        assert abs(g2_zero(rho_thin) - 1.0) < 1e-8


class TestLabFrame:
    def test_round_trip_preserves_state_properties(self):
        params = ModelParams()
        sig = SpaceSignature((2, 21))
        p = np.zeros(21)
        p[0] = 0.7
        p[1] = 0.3
        rho = DensityMatrix.from_data(sig, np.kron(np.diag([0.0, 1.0]), np.diag(p)))
        lab = to_lab_frame(rho, params)
        assert abs(np.trace(lab.data) - 1.0) < 1e-10
        assert lab.min_eigenvalue() > -1e-10
        # the dressed-frame displacement shifts the bare occupation by ~eta^2
        assert abs(mean_occupation(lab) - mean_occupation(rho)) < 3 * params.eta**2

    def test_identity_at_zero_coupling(self):
        params = ModelParams(g=0.0)
        sig = SpaceSignature((2, 11))
        p = np.zeros(11)
        p[2] = 1.0
        rho = DensityMatrix.from_data(sig, np.kron(np.diag([1.0, 0.0]), np.diag(p)))
        lab = to_lab_frame(rho, params)
        assert np.abs(lab.data - rho.data).max() < 1e-12

    def test_requires_composite(self):
        with pytest.raises(ValueError, match="composite"):
            to_lab_frame(fock_state(1, 5), ModelParams())
