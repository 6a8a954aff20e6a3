"""Closed-form phase-space results of the strong two-photon-cooling limit.

Pointwise drift and diffusion of the equivalent Fokker-Planck equation,
and the limiting ground/first-excited populations.  These are oracles for
the numerical solvers, not ingredients of them: the closed forms hold only
when two-photon cooling dominates both two-photon heating and the linear
thermal damping.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PhasePoint:
    """Coherent-amplitude phase-space point (mu, mu*)."""

    mu: complex

    def __post_init__(self):
        if not np.isfinite(self.mu):
            raise ValueError("phase-space amplitude must be finite")


@dataclass(frozen=True)
class DriftDiffusion:
    """Drift vector F and symmetric 2x2 diffusion matrix H at one phase point."""

    drift: np.ndarray
    diffusion: np.ndarray


def fp_drift_diffusion(
    zeta: PhasePoint, kappa_b: float, nbar_b: float, gamma2_down: float
) -> DriftDiffusion:
    """Pointwise drift and diffusion of the two-photon-damped resonator.

    F = (-kappa_b mu / 2 - G2 mu^2 mu*,  conj.);
    H = [[-G2 mu^2, -kappa_b nbar], [-kappa_b nbar, -G2 mu*^2]].
    """
    if kappa_b < 0 or gamma2_down < 0:
        raise ValueError("rates must be non-negative")
    mu = complex(zeta.mu)
    mus = mu.conjugate()
    drift = np.array(
        [
            -0.5 * kappa_b * mu - gamma2_down * mu * mu * mus,
            -0.5 * kappa_b * mus - gamma2_down * mu * mus * mus,
        ]
    )
    off = -kappa_b * nbar_b
    diffusion = np.array(
        [
            [-gamma2_down * mu * mu, off],
            [off, -gamma2_down * mus * mus],
        ]
    )
    return DriftDiffusion(drift=drift, diffusion=diffusion)


def fp_limit_populations(nbar_b: float) -> tuple[float, float]:
    """Ground and first-excited populations in the strong two-photon limit.

    P0 = (3 nbar + 1) / (4 nbar + 1), P1 = nbar / (4 nbar + 1); their sum
    is identically 1 (all higher levels are emptied pairwise).
    """
    if nbar_b < 0:
        raise ValueError("nbar_b must be non-negative")
    denom = 4.0 * nbar_b + 1.0
    return (3.0 * nbar_b + 1.0) / denom, nbar_b / denom
