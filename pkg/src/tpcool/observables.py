"""Photon-field observables: occupation, number distribution, g2(0).

Statistics are taken in the dressed (polaron) frame the master equations
are written in, where the resonator number operator is the canonical
Fock-diagonal matrix on the last tensor factor.  ``to_lab_frame`` undoes
the polaron transform for bare-frame extraction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import ModelParams, polaron_unitary
from .operators import DensityMatrix

G2_OCCUPATION_FLOOR = 1e-6


@dataclass(frozen=True)
class PhotonStatistics:
    """Single-state photon statistics; g2_zero is None below the occupation floor."""

    mean_n: float
    p_n: np.ndarray
    g2_zero: float | None


def _reduced_fock(rho: DensityMatrix) -> np.ndarray:
    """Partial trace over everything but the (last) Fock factor."""
    nf = rho.sig.parts[-1]
    lead = rho.dim // nf
    m = rho.data.reshape(lead, nf, lead, nf)
    return np.einsum("anam->nm", m)


def number_distribution(rho: DensityMatrix) -> np.ndarray:
    """Fock-level probabilities of the resonator marginal."""
    return np.real(np.diag(_reduced_fock(rho)))


def mean_occupation(rho: DensityMatrix) -> float:
    """<b†b> of the resonator factor."""
    p = number_distribution(rho)
    return float(np.arange(len(p)) @ p)


def g2_zero(rho: DensityMatrix) -> float:
    """Equal-time second-order coherence <b†b†bb> / <b†b>^2.

    Requires mean occupation above 1e-6; below that the ratio amplifies
    numerical noise and is reported as undefined.
    """
    p = number_distribution(rho)
    n = np.arange(len(p))
    mean_n = float(n @ p)
    if mean_n <= G2_OCCUPATION_FLOOR:
        raise ValueError(
            f"mean occupation {mean_n:.3e} below {G2_OCCUPATION_FLOOR}: g2(0) undefined"
        )
    pairs = float((n * (n - 1)) @ p)
    return pairs / mean_n**2


def photon_statistics(rho: DensityMatrix) -> PhotonStatistics:
    """Occupation, distribution, and g2(0) (None when occupation is negligible)."""
    p = number_distribution(rho)
    n = np.arange(len(p))
    mean_n = float(n @ p)
    g2: float | None
    if mean_n > G2_OCCUPATION_FLOOR:
        g2 = float((n * (n - 1)) @ p) / mean_n**2
    else:
        g2 = None
    return PhotonStatistics(mean_n=mean_n, p_n=p, g2_zero=g2)


def to_lab_frame(rho: DensityMatrix, params: ModelParams) -> DensityMatrix:
    """Undo the polaron transform: rho_lab = U† rho_dressed U."""
    if len(rho.sig.parts) != 2 or rho.sig.parts[0] != 2:
        raise ValueError("lab-frame conversion needs a TLS (x) Fock composite state")
    n_max = rho.sig.parts[-1] - 1
    u = polaron_unitary(params, n_max).data
    return DensityMatrix.from_data(rho.sig, u.conj().T @ rho.data @ u, hermitize=True)
