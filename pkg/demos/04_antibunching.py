#!/usr/bin/env python3
"""Antibunching from incoherent drive: g2(0) drops below 1 at high T_H.

Sub-Poissonian statistics (g2(0) < 1) and antibunching (g2(0) < g2(tau))
emerge once the thermally driven two-photon decay dominates the linear
thermal damping.  The delay-resolved correlation is computed with the
quantum regression theorem: propagate b rho b+ under the same generator
and read out the occupation.
"""

from tpcool import (
    build_filtered_me,
    default_tau_grid,
    g2_zero,
    steady_state,
    two_time_correlation,
)
from tpcool.config import apply_parameter, default_config
from tpcool.model import BathLabel

cfg = default_config()
kappa_b = cfg.bath(BathLabel.RESONATOR).kappa

print("single-time statistics vs hot-bath temperature:")
for t_hot in (0.05, 0.3, 1.0, 2.0):
    point = apply_parameter(cfg, "bath.hot.temperature", t_hot)
    rho = steady_state(build_filtered_me(point.model, point.baths, point.n_max))
    flavor = "sub-Poissonian" if g2_zero(rho) < 1 else "super-Poissonian"
    print(f"  T_H = {t_hot:5.2f}:  g2(0) = {g2_zero(rho):7.4f}   ({flavor})")

print("\ndelay-resolved correlation (first decade of the tau grid):")
taus = default_tau_grid(kappa_b, points=25)
for t_hot in (0.1, 1.0):
    point = apply_parameter(cfg, "bath.hot.temperature", t_hot)
    liouv = build_filtered_me(point.model, point.baths, point.n_max)
    rho = steady_state(liouv)
    series = two_time_correlation(liouv, rho, taus)
    decade = series.values[(series.taus > 0) & (series.taus <= 1.0 / kappa_b)]
    verdict = "antibunched" if series.values[0] < decade.min() else "bunched"
    print(
        f"  T_H = {t_hot:4.1f}:  g2(0) = {series.values[0]:.4f},  "
        f"g2(tau) in [{decade.min():.4f}, {decade.max():.4f}]  -> {verdict}"
    )
