#!/usr/bin/env python3
"""Reduced resonator model: adiabatic TLS elimination and phase-space forms.

The TLS damping exceeds every resonator rate by orders of magnitude, so
its stationary polarization can be computed once and folded into effective
resonator-only rates.  This demo derives those rates from the shipped
operating point, compares the reduced steady state with the joint
engineered-bath model, and evaluates the drift/diffusion of the
equivalent classical phase-space process.
"""

from tpcool import (
    PhasePoint,
    build_filtered_me,
    build_reduced_me,
    fp_drift_diffusion,
    mean_occupation,
    reduced_rates,
    steady_state,
    tls_steady_sigma_z,
)
from tpcool.config import apply_parameter, default_config
from tpcool.model import BathLabel

# strong cold bath keeps the TLS pinned near the ground state, which is
# where the reduced description is quantitative
cfg = apply_parameter(default_config(), "bath.cold.kappa", 0.2)

sigma_z = tls_steady_sigma_z(cfg.model, cfg.baths)
print(f"stationary TLS polarization <sigma_z> = {sigma_z:.5f}")

rates = reduced_rates(cfg.model, cfg.baths, sigma_z, interpretation="population")
print(f"two-photon cooling  {rates.gamma2_down:.3e}")
print(f"two-photon heating  {rates.gamma2_up:.3e}")
print(f"thermal damping     {rates.gamma1_down:.3e} / {rates.gamma1_up:.3e}")
kappa_nbar = cfg.bath(BathLabel.RESONATOR).kappa * cfg.nbar_b
print(f"operating checks: Gamma_up/Gamma_down = {rates.gamma2_up / rates.gamma2_down:.2e}, "
      f"kappa_b nbar_b/Gamma_down = {kappa_nbar / rates.gamma2_down:.2e}")

n_reduced = mean_occupation(steady_state(build_reduced_me(rates, cfg.n_max)))
n_joint = mean_occupation(steady_state(build_filtered_me(cfg.model, cfg.baths, cfg.n_max)))
print(f"\n<n> reduced model = {n_reduced:.5f}")
print(f"<n> joint model   = {n_joint:.5f}   (rel. diff {abs(n_reduced - n_joint) / n_joint:.2%})")

print("\nphase-space drift/diffusion along the real axis:")
kappa_b = cfg.bath(BathLabel.RESONATOR).kappa
for mu in (0.0, 0.5, 1.0, 2.0):
    dd = fp_drift_diffusion(PhasePoint(mu), kappa_b, cfg.nbar_b, rates.gamma2_down)
    print(f"  mu = {mu:3.1f}:  F = {dd.drift[0]:+.4e}   H11 = {dd.diffusion[0, 0]:+.4e}")
