"""Master-equation builders.

Three Lindblad generators for the longitudinally coupled TLS-resonator
system, all expressed in the polaron (tilde) frame where the system
Hamiltonian is diagonal and the jump operators take their canonical
matrix form (sigma ladder operators and Fock ladder operators):

* full        -- every secular dissipator up to third order in eta:
                 bare TLS flips, dressed-dephasing partners, and one- and
                 two-quantum sidebands at omega_a -+ n*omega_b, plus linear
                 resonator damping;
* filtered    -- the engineered-bath model: the cold bath keeps only the
                 +-omega_a transitions, the hot bath only the two-photon
                 sideband at +-(omega_a - 2*omega_b), resonator damping
                 unchanged.  This is the figure-generating model;
* reduced     -- resonator-only generator with two-photon cooling/heating,
                 linear damping, and number dephasing rates.

There is no coherent term by default: in the diagonal frame the secular
dissipators commute with the free evolution, and the commutator with a
diagonal Hamiltonian leaves every Fock-diagonal observable unchanged.  It
can be switched on with ``include_hamiltonian=True``.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .model import (
    BathLabel,
    BathSpec,
    ModelParams,
    Variant,
    filtered_spectrum,
    passes_filter,
    spectral_response,
)
from .operators import (
    SpaceSignature,
    dissipator_superop,
    fock_annihilation,
    hamiltonian_superop,
    identity,
    pauli_ops,
    tensor,
    trace_row,
)
from .model import polaron_diagonal_hamiltonian

logger = logging.getLogger(__name__)


class MEVariant(enum.Enum):
    FULL = "full"
    FILTERED = "filtered"
    REDUCED = "reduced"


class FilterMode(enum.Enum):
    """How a filtered bath enters the dissipator weights.

    IDEAL passes the bare branch response at transitions within one filter
    width of the center and blocks everything else (delta-selective filter).
    LORENTZIAN substitutes the finite-width filtered spectrum everywhere.
    """

    IDEAL = "ideal"
    LORENTZIAN = "lorentzian"


@dataclass(frozen=True)
class Liouvillian:
    """Vectorized Lindblad generator acting on column-major vec(rho)."""

    sig: SpaceSignature
    matrix: sp.csr_matrix
    variant: MEVariant

    def __post_init__(self):
        d2 = self.sig.total_dim ** 2
        if self.matrix.shape != (d2, d2):
            raise ValueError(
                f"superoperator shape {self.matrix.shape} does not match dim^2 {d2}"
            )

    @property
    def dim(self) -> int:
        return self.sig.total_dim

    def as_array(self) -> np.ndarray:
        return self.matrix.toarray()

    def trace_residual(self) -> float:
        """Max violation of trace preservation, |trace_row @ L|_max."""
        r = trace_row(self.dim) @ self.matrix
        return float(np.abs(r.toarray()).max()) if r.nnz else 0.0


@dataclass(frozen=True)
class ReducedRates:
    """Rates of the resonator-only master equation (clamped non-negative).

    gamma2_down / gamma2_up: two-photon cooling / heating;
    gamma1_down / gamma1_up: linear thermal damping / excitation;
    gamma_deph: number dephasing.
    """

    gamma2_down: float
    gamma2_up: float
    gamma1_down: float
    gamma1_up: float
    gamma_deph: float

    def __post_init__(self):
        for name in ("gamma2_down", "gamma2_up", "gamma1_down", "gamma1_up", "gamma_deph"):
            if getattr(self, name) < 0:
                raise ValueError(f"negative rate {name} = {getattr(self, name)}")


def baths_by_label(baths) -> dict[BathLabel, BathSpec]:
    """Index a bath triple by label; exactly one of each is required."""
    out: dict[BathLabel, BathSpec] = {}
    for bath in baths:
        if bath.label in out:
            raise ValueError(f"duplicate {bath.label.value!r} bath")
        out[bath.label] = bath
    missing = [lab.value for lab in (BathLabel.HOT, BathLabel.COLD, BathLabel.RESONATOR) if lab not in out]
    if missing:
        raise ValueError(f"missing bath(s): {', '.join(missing)}")
    return out


def bath_weight(bath: BathSpec, omega: float, filter_mode: FilterMode) -> float:
    """Dissipator weight of a bath at a signed transition frequency."""
    if bath.filter is None:
        return spectral_response(bath, omega)
    if filter_mode is FilterMode.IDEAL:
        if passes_filter(bath.filter, omega):
            return spectral_response(bath, omega)
        return 0.0
    return filtered_spectrum(bath, omega)


def _tls_resonator_ops(n_max: int):
    sz, s_plus, s_minus = pauli_ops()
    b1 = fock_annihilation(n_max)
    i2 = identity(sz.sig)
    ib = identity(b1.sig)
    sm = tensor(s_minus, ib)
    spl = tensor(s_plus, ib)
    b = tensor(i2, b1)
    bd = b.dag()
    return sm, spl, b, bd, bd @ b


def _assemble(sig: SpaceSignature, terms, variant: MEVariant,
              hamiltonian=None) -> Liouvillian:
    d2 = sig.total_dim ** 2
    mat = sp.csr_matrix((d2, d2), dtype=complex)
    for rate, op in terms:
        if rate < 0:
            raise ValueError(f"negative dissipator rate {rate}")
        if rate > 0:
            mat = mat + rate * dissipator_superop(op.data)
    if hamiltonian is not None:
        mat = mat + hamiltonian_superop(hamiltonian.data)
    return Liouvillian(sig, mat.tocsr(), variant)


def build_full_me(
    params: ModelParams,
    baths,
    n_max: int,
    *,
    filter_mode: FilterMode = FilterMode.IDEAL,
    include_hamiltonian: bool = False,
) -> Liouvillian:
    """Full sideband-resolved master equation on the TLS (x) Fock space.

    For each TLS bath: bare flips at +-omega_a with their eta^3 dressed
    dephasing partners, then one- and two-quantum sidebands at
    +-(omega_a -+ n*omega_b) with weights eta^(n+1).  Filtered baths
    substitute the filtered response at every frequency argument.  The
    resonator bath contributes linear damping at +-omega_b.
    """
    if params.variant is not Variant.TLS_RESONATOR:
        raise ValueError("master-equation builders require the TLS_RESONATOR variant")
    if n_max < 4:
        raise ValueError("n_max must be >= 4 for two-quantum jump operators")
    by = baths_by_label(baths)
    eta = params.eta
    wa, wb = params.omega_a, params.omega_b
    sm, spl, b, bd, nb = _tls_resonator_ops(n_max)

    terms = []
    for label in (BathLabel.HOT, BathLabel.COLD):
        bath = by[label]

        def w(omega, bath=bath):
            return bath_weight(bath, omega, filter_mode)

        terms += [
            (w(+wa), sm),
            (eta**3 * w(+wa), sm @ nb),
            (w(-wa), spl),
            (eta**3 * w(-wa), spl @ nb),
        ]
        for n, low, high in ((1, bd, b), (2, bd @ bd, b @ b)):
            coef = eta ** (n + 1)
            terms += [
                (coef * w(+(wa - n * wb)), sm @ low),
                (coef * w(-(wa - n * wb)), spl @ high),
                (coef * w(+(wa + n * wb)), sm @ high),
                (coef * w(-(wa + n * wb)), spl @ low),
            ]
    res = by[BathLabel.RESONATOR]
    terms += [
        (bath_weight(res, +wb, filter_mode), b),
        (bath_weight(res, -wb, filter_mode), bd),
    ]
    h = polaron_diagonal_hamiltonian(params, n_max) if include_hamiltonian else None
    return _assemble(sm.sig, terms, MEVariant.FULL, h)


def build_filtered_me(
    params: ModelParams,
    baths,
    n_max: int,
    *,
    filter_mode: FilterMode = FilterMode.IDEAL,
    include_hamiltonian: bool = False,
) -> Liouvillian:
    """Engineered-bath master equation (five dissipator families).

    Requires the hot bath filter centered on the two-photon sideband
    omega_a - 2*omega_b and the cold bath filter centered on omega_a.
    Surviving terms: cold TLS flips (with dressed partners) at +-omega_a,
    hot two-photon sidebands at +-(omega_a - 2*omega_b), and linear
    resonator damping at +-omega_b.
    """
    if params.variant is not Variant.TLS_RESONATOR:
        raise ValueError("master-equation builders require the TLS_RESONATOR variant")
    if n_max < 4:
        raise ValueError("n_max must be >= 4 for two-quantum jump operators")
    by = baths_by_label(baths)
    hot, cold, res = by[BathLabel.HOT], by[BathLabel.COLD], by[BathLabel.RESONATOR]
    w_minus = params.omega_minus
    wa, wb = params.omega_a, params.omega_b
    if hot.filter is None:
        raise ValueError("hot bath needs a filter centered on omega_a - 2*omega_b")
    if cold.filter is None:
        raise ValueError("cold bath needs a filter centered on omega_a")
    if abs(hot.filter.center - w_minus) > hot.filter.width:
        raise ValueError(
            f"hot bath filter mis-centered: center {hot.filter.center} vs "
            f"two-photon sideband {w_minus} (width {hot.filter.width})"
        )
    if abs(cold.filter.center - wa) > cold.filter.width:
        raise ValueError(
            f"cold bath filter mis-centered: center {cold.filter.center} vs "
            f"TLS frequency {wa} (width {cold.filter.width})"
        )
    if res.filter is not None:
        raise ValueError("resonator bath is not filtered in this model")

    eta = params.eta
    sm, spl, b, bd, nb = _tls_resonator_ops(n_max)

    def wc(omega):
        return bath_weight(cold, omega, filter_mode)

    def wh(omega):
        return bath_weight(hot, omega, filter_mode)

    terms = [
        (wc(+wa), sm),
        (eta**3 * wc(+wa), sm @ nb),
        (wc(-wa), spl),
        (eta**3 * wc(-wa), spl @ nb),
        (eta**3 * wh(+w_minus), sm @ bd @ bd),
        (eta**3 * wh(-w_minus), spl @ b @ b),
        (spectral_response(res, +wb), b),
        (spectral_response(res, -wb), bd),
    ]
    h = polaron_diagonal_hamiltonian(params, n_max) if include_hamiltonian else None
    return _assemble(sm.sig, terms, MEVariant.FILTERED, h)


def tls_steady_sigma_z(
    params: ModelParams, baths, *, filter_mode: FilterMode = FilterMode.IDEAL
) -> float:
    """Stationary <sigma_z> of the TLS alone under the filtered baths.

    Two-level rate balance with the resonator adiabatically eliminated:
    the cold bath drives the +-omega_a flips, the hot bath the eta^3
    two-photon sideband at +-(omega_a - 2*omega_b).  Falls back to the
    ground state when every rate vanishes.
    """
    by = baths_by_label(baths)
    hot, cold = by[BathLabel.HOT], by[BathLabel.COLD]
    eta3 = params.eta**3
    up = bath_weight(cold, -params.omega_a, filter_mode) + eta3 * bath_weight(
        hot, -params.omega_minus, filter_mode
    )
    down = bath_weight(cold, +params.omega_a, filter_mode) + eta3 * bath_weight(
        hot, +params.omega_minus, filter_mode
    )
    if up + down == 0.0:
        return -1.0
    return (up - down) / (up + down)


def reduced_rates(
    params: ModelParams,
    baths,
    sigma_z_expect: float,
    *,
    interpretation: str = "literal",
    filter_mode: FilterMode = FilterMode.IDEAL,
) -> ReducedRates:
    """Rates of the resonator-only master equation.

    ``interpretation="literal"`` weights the hot-bath two-photon and
    cold-bath dephasing terms by <sigma_z> and <sigma_z + 1> as printed,
    clamping any negative result to zero (a Lindblad generator needs
    non-negative rates; in the operating regime the clamped terms are
    negligible).  ``interpretation="population"`` uses the excited/ground
    populations from tracing the TLS out of the joint dissipators.
    """
    if not -1.0 <= sigma_z_expect <= 1.0:
        raise ValueError(f"<sigma_z> = {sigma_z_expect} outside [-1, 1]")
    by = baths_by_label(baths)
    hot, cold, res = by[BathLabel.HOT], by[BathLabel.COLD], by[BathLabel.RESONATOR]
    eta3 = params.eta**3
    wh_em = bath_weight(hot, +params.omega_minus, filter_mode)
    wh_ab = bath_weight(hot, -params.omega_minus, filter_mode)
    wc_em = bath_weight(cold, +params.omega_a, filter_mode)
    wc_ab = bath_weight(cold, -params.omega_a, filter_mode)

    if interpretation == "literal":
        g2_down = eta3 * wh_ab * (sigma_z_expect + 1.0)
        g2_up = eta3 * wh_em * sigma_z_expect
        g_deph = eta3 * (wc_em * sigma_z_expect + wc_ab * (sigma_z_expect + 1.0))
    elif interpretation == "population":
        p_excited = 0.5 * (1.0 + sigma_z_expect)
        p_ground = 0.5 * (1.0 - sigma_z_expect)
        g2_down = eta3 * wh_ab * p_ground
        g2_up = eta3 * wh_em * p_excited
        g_deph = eta3 * (wc_em * p_excited + wc_ab * p_ground)
    else:
        raise ValueError(f"unknown interpretation {interpretation!r}")

    clamped = [name for name, r in (("gamma2_down", g2_down), ("gamma2_up", g2_up),
                                    ("gamma_deph", g_deph)) if r < 0]
    if clamped:
        logger.warning("clamped negative reduced rates to zero: %s", ", ".join(clamped))
    return ReducedRates(
        gamma2_down=max(g2_down, 0.0),
        gamma2_up=max(g2_up, 0.0),
        gamma1_down=spectral_response(res, +params.omega_b),
        gamma1_up=spectral_response(res, -params.omega_b),
        gamma_deph=max(g_deph, 0.0),
    )


def build_reduced_me(rates: ReducedRates, n_max: int) -> Liouvillian:
    """Resonator-only master equation on the (n_max+1)-dimensional space.

    gamma2_down D[b^2] + gamma2_up D[b†^2] + gamma1_down D[b]
    + gamma1_up D[b†] + gamma_deph D[b†b].
    """
    if n_max < 4:
        raise ValueError("n_max must be >= 4 for two-quantum jump operators")
    b = fock_annihilation(n_max)
    bd = b.dag()
    terms = [
        (rates.gamma2_down, b @ b),
        (rates.gamma2_up, bd @ bd),
        (rates.gamma1_down, b),
        (rates.gamma1_up, bd),
        (rates.gamma_deph, bd @ b),
    ]
    d2 = b.sig.total_dim ** 2
    mat = sp.csr_matrix((d2, d2), dtype=complex)
    for rate, op in terms:
        if rate > 0:
            mat = mat + rate * dissipator_superop(op.data)
    return Liouvillian(b.sig, mat.tocsr(), MEVariant.REDUCED)
