#!/usr/bin/env python3
"""Thermal baseline: linear damping alone thermalizes the resonator.

With only the resonator bath acting (no two-photon channel), the steady
state is the Bose-Einstein fixed point: a geometric photon-number
distribution with <n> = nbar and bunched statistics g2(0) = 2.  This is
the sanity anchor every engineered-dissipation result is measured against.
"""

import numpy as np

from tpcool import ReducedRates, build_reduced_me, steady_state
from tpcool.observables import g2_zero, mean_occupation, number_distribution

kappa_b = 1e-7
for nbar in (1.0, 5.0, 20.0):
    rates = ReducedRates(
        gamma2_down=0.0,
        gamma2_up=0.0,
        gamma1_down=kappa_b * (1 + nbar),
        gamma1_up=kappa_b * nbar,
        gamma_deph=0.0,
    )
    n_max = max(60, int(12 * nbar))
    rho = steady_state(build_reduced_me(rates, n_max))
    p = number_distribution(rho)
    geometric = nbar ** np.arange(5) / (1 + nbar) ** (np.arange(5) + 1)
    print(f"nbar = {nbar:4.1f}:  <n> = {mean_occupation(rho):.6f}   g2(0) = {g2_zero(rho):.6f}")
    print(f"   P_0..P_4 solved:    {np.round(p[:5], 6)}")
    print(f"   P_0..P_4 geometric: {np.round(geometric, 6)}")
