"""Physical model: Hamiltonians, polaron transform, bath spectra and filters.

All frequencies, rates and temperatures are dimensionless, scaled by the
TLS frequency omega_a (so omega_a = 1.0 by convention) with k_B = 1.
"""

from __future__ import annotations

import enum
import math
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.integrate
import scipy.linalg

from .operators import (
    Operator,
    fock_annihilation,
    fock_number,
    identity,
    pauli_ops,
    tensor,
)


class Variant(enum.Enum):
    TLS_RESONATOR = "tls_resonator"
    RESONATOR_RESONATOR = "resonator_resonator"


class BathLabel(enum.Enum):
    HOT = "hot"
    COLD = "cold"
    RESONATOR = "resonator"


class LambShiftMode(enum.Enum):
    ZERO = "zero"
    NUMERICAL_PV = "numerical_pv"


@dataclass(frozen=True)
class ModelParams:
    """System frequencies and longitudinal coupling in omega_a-scaled units."""

    omega_a: float = 1.0
    omega_b: float = 0.05
    g: float = 0.01
    variant: Variant = Variant.TLS_RESONATOR

    def __post_init__(self):
        if self.omega_a <= 0 or self.omega_b <= 0:
            raise ValueError("subsystem frequencies must be positive")
        if self.g < 0:
            raise ValueError("coupling g must be non-negative")
        if self.eta >= 1.0:
            raise ValueError(
                f"eta = g/omega_b = {self.eta:.3g} >= 1: dressed expansion invalid"
            )
        if self.eta > 0.5:
            warnings.warn(
                f"eta = {self.eta:.3g} > 0.5: third-order sideband expansion degrades",
                stacklevel=2,
            )

    @property
    def eta(self) -> float:
        return self.g / self.omega_b

    @property
    def omega_minus(self) -> float:
        """Second lower sideband frequency omega_a - 2*omega_b."""
        return self.omega_a - 2.0 * self.omega_b


@dataclass(frozen=True)
class FilterSpec:
    """Lorentzian bath-spectrum filter: center frequency, coupling rate, Lamb mode."""

    center: float
    width: float
    lamb_shift: LambShiftMode = LambShiftMode.ZERO

    def __post_init__(self):
        if self.center <= 0:
            raise ValueError("filter center must be positive")
        if self.width <= 0:
            raise ValueError("filter width must be positive")


@dataclass(frozen=True)
class BathSpec:
    """One thermal bath: flat coupling rate, temperature, optional filter."""

    label: BathLabel
    kappa: float
    temperature: float
    filter: FilterSpec | None = None

    def __post_init__(self):
        if self.kappa < 0:
            raise ValueError("bath coupling kappa must be non-negative")
        if self.temperature < 0:
            raise ValueError("bath temperature must be non-negative")


def bose_occupation(omega: float, temperature: float) -> float:
    """Mean thermal quanta 1/(exp(omega/T) - 1); exactly 0 at T = 0."""
    if omega <= 0:
        raise ValueError(f"bose_occupation needs omega > 0, got {omega}")
    if temperature <= 0.0:
        return 0.0
    x = omega / temperature
    if x > 700.0:  # exp overflow guard; occupation is below 1e-300 anyway
        return 0.0
    return 1.0 / math.expm1(x)


def spectral_response(bath: BathSpec, omega: float) -> float:
    """One-sided thermal response of a flat (Ohmic-band) bath.

    Emission branch kappa*(1 + nbar) for omega > 0, absorption branch
    kappa*nbar(|omega|) for omega < 0, and exactly 0 at omega = 0.
    Satisfies detailed balance G(w)/G(-w) = exp(w/T).
    """
    if omega > 0:
        return bath.kappa * (1.0 + bose_occupation(omega, bath.temperature))
    if omega < 0:
        return bath.kappa * bose_occupation(-omega, bath.temperature)
    return 0.0


def lamb_shift(bath: BathSpec, omega: float, cutoff: float = 10.0) -> float:
    """Bath-induced frequency pull: principal value of int_0^cutoff G(w')/(omega-w') dw'.

    In ZERO mode (the default for every shipped configuration) this is 0;
    filter centers absorb the shift.  NUMERICAL_PV evaluates the principal
    value by symmetric excision around the pole.
    """
    if omega <= 0:
        raise ValueError("lamb_shift needs omega > 0")
    mode = bath.filter.lamb_shift if bath.filter is not None else LambShiftMode.ZERO
    if mode is LambShiftMode.ZERO:
        return 0.0

    def g(w):
        return spectral_response(bath, w)

    pieces = []
    errors = []
    if omega >= cutoff:
        val, err = scipy.integrate.quad(lambda w: g(w) / (omega - w), 0.0, cutoff, limit=200)
        pieces.append(val)
        errors.append(err)
    else:
        h = 0.5 * min(omega, cutoff - omega)
        for lo, hi in ((0.0, omega - h), (omega + h, cutoff)):
            if hi > lo:
                val, err = scipy.integrate.quad(
                    lambda w: g(w) / (omega - w), lo, hi, limit=200
                )
                pieces.append(val)
                errors.append(err)
        # symmetric window around the pole: the 1/u singularity cancels pairwise
        val, err = scipy.integrate.quad(
            lambda u: (g(omega - u) - g(omega + u)) / u, 1e-12, h, limit=200
        )
        pieces.append(val)
        errors.append(err)
    total = float(sum(pieces))
    residual = float(sum(errors))
    if residual > 1e-6 * (1.0 + abs(total)):
        raise RuntimeError(
            f"principal-value quadrature did not converge: residual {residual:.3e}"
        )
    return total


def filtered_spectrum(bath: BathSpec, omega: float) -> float:
    """Lorentzian-filtered bath response (finite-width filter model).

    The Lorentzian is evaluated at |omega| against the filter center (plus
    Lamb shift), while the thermal emission/absorption branch inside is
    picked by the sign of omega, mirroring the unfiltered branch rule.  The
    on-resonance peak is width/pi, independent of the bath response.
    """
    if bath.filter is None:
        raise ValueError(f"bath {bath.label.value!r} has no filter")
    g = spectral_response(bath, omega)
    if g == 0.0:
        return 0.0
    w = abs(omega)
    center = bath.filter.center + lamb_shift(bath, w)
    half_width = math.pi * g
    detune = w - center
    return (bath.filter.width / math.pi) * half_width**2 / (detune**2 + half_width**2)


def passes_filter(filt: FilterSpec, omega: float) -> bool:
    """Delta-selective (ideal) filter: pass |omega| within one width of center."""
    return abs(abs(omega) - filt.center) <= filt.width


def resonator_temperature_for_nbar(nbar: float, omega_b: float) -> float:
    """Temperature at which the resonator bath holds nbar quanta at omega_b."""
    if nbar < 0:
        raise ValueError("nbar must be non-negative")
    if nbar == 0.0:
        return 0.0
    return omega_b / math.log1p(1.0 / nbar)


# ---------------------------------------------------------------------------
# Hamiltonians and the polaron transform
# ---------------------------------------------------------------------------

def hamiltonian_tls_r(params: ModelParams, n_max: int) -> Operator:
    """Longitudinal TLS-resonator Hamiltonian on the 2*(n_max+1) space.

    H = (omega_a/2) sigma_z + omega_b b†b + g sigma_z (b + b†).
    """
    if params.variant is not Variant.TLS_RESONATOR:
        raise ValueError("hamiltonian_tls_r requires the TLS_RESONATOR variant")
    sz, _, _ = pauli_ops()
    b = fock_annihilation(n_max)
    nb = fock_number(n_max)
    i2 = identity(sz.sig)
    ib = identity(b.sig)
    x = b + b.dag()
    return (
        0.5 * params.omega_a * tensor(sz, ib)
        + params.omega_b * tensor(i2, nb)
        + params.g * tensor(sz, x)
    )


def hamiltonian_r_r(params: ModelParams, n_max_a: int, n_max_b: int) -> Operator:
    """Optomechanical-type resonator-resonator Hamiltonian.

    H = omega_a a†a + omega_b b†b - g a†a (b + b†).  Block-diagonal in the
    mode-A number; each block is a displaced oscillator with exact energies
    n_a*omega_a + n_b*omega_b - g^2 n_a^2 / omega_b.
    """
    if params.variant is not Variant.RESONATOR_RESONATOR:
        raise ValueError("hamiltonian_r_r requires the RESONATOR_RESONATOR variant")
    na = fock_number(n_max_a)
    nb = fock_number(n_max_b)
    b = fock_annihilation(n_max_b)
    ia = identity(na.sig)
    ib = identity(nb.sig)
    x = b + b.dag()
    return (
        params.omega_a * tensor(na, ib)
        + params.omega_b * tensor(ia, nb)
        - params.g * tensor(na, x)
    )


def polaron_unitary(params: ModelParams, n_max: int) -> Operator:
    """Displacement-type unitary U = exp(eta sigma_z (b† - b)).

    Conjugation U H U† diagonalizes the longitudinal Hamiltonian away from
    the Fock-space boundary, and U b U† = b - eta sigma_z on the interior
    block.  Computed by exponentiating the anti-Hermitian generator, so it
    is unitary to truncation accuracy only.
    """
    if params.variant is not Variant.TLS_RESONATOR:
        raise ValueError("polaron_unitary requires the TLS_RESONATOR variant")
    sz, _, _ = pauli_ops()
    b = fock_annihilation(n_max)
    gen = params.eta * tensor(sz, b.dag() - b)
    return Operator(gen.sig, scipy.linalg.expm(gen.data))


def polaron_diagonal_hamiltonian(params: ModelParams, n_max: int) -> Operator:
    """Diagonal form of the transformed Hamiltonian.

    omega_a sigma_+ sigma_- + omega_b b†b - g^2/omega_b - omega_a/2; the
    zero-point constant keeps it equal (not merely isospectral) to
    U H U† on the interior block.
    """
    if params.variant is not Variant.TLS_RESONATOR:
        raise ValueError("polaron_diagonal_hamiltonian requires the TLS_RESONATOR variant")
    sz, s_plus, s_minus = pauli_ops()
    nb = fock_number(n_max)
    i2 = identity(sz.sig)
    ib = identity(nb.sig)
    shift = params.g**2 / params.omega_b + 0.5 * params.omega_a
    return (
        params.omega_a * tensor(s_plus @ s_minus, ib)
        + params.omega_b * tensor(i2, nb)
        - shift * tensor(i2, ib)
    )


def interior_block(data: np.ndarray, n_max: int, pad: int = 5) -> np.ndarray:
    """Restrict a TLS (x) Fock matrix to Fock levels below n_max - pad.

    Displacement-type transforms corrupt the top of the truncated ladder;
    verification of polaron identities excludes the boundary levels.
    """
    keep = n_max + 1 - pad
    if keep < 1:
        raise ValueError("padding removes the whole Fock ladder")
    d = data.shape[0]
    nf = n_max + 1
    if d % nf != 0:
        raise ValueError("matrix dimension incompatible with n_max")
    lead = d // nf
    m = data.reshape(lead, nf, lead, nf)
    return m[:, :keep, :, :keep].reshape(lead * keep, lead * keep)
