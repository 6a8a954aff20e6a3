#!/usr/bin/env python3
"""Strong-cooling photon statistics: population concentrates on n = 0, 1.

Two-photon decay removes pairs, so odd-number population funnels into the
first excited state and even into the ground state; the weak thermal
channel mixes the two parities.  The resulting P0, P1 follow the
closed-form strong-cooling populations, checked here against the
engineered-bath master equation, together with the relaxation transient
from a thermal start.
"""

import numpy as np

from tpcool import build_filtered_me, fp_limit_populations, propagate, steady_state
from tpcool.config import default_config
from tpcool.observables import photon_statistics
from tpcool.runner import initial_state_thermal_ground

cfg = default_config()  # T_H = 2, T_C = 0, nbar_b = 5
liouv = build_filtered_me(cfg.model, cfg.baths, cfg.n_max)

stats = photon_statistics(steady_state(liouv))
p0_limit, p1_limit = fp_limit_populations(cfg.nbar_b)
print(f"steady state: <n> = {stats.mean_n:.4f}, g2(0) = {stats.g2_zero:.4f}")
print(f"  P0 = {stats.p_n[0]:.4f}  (strong-cooling limit {p0_limit:.4f})")
print(f"  P1 = {stats.p_n[1]:.4f}  (strong-cooling limit {p1_limit:.4f})")
print(f"  P0 + P1 = {stats.p_n[0] + stats.p_n[1]:.5f}")

# relaxation from a hot start: fast pairwise collapse onto {0, 1}, then a
# slow thermal-contact drift of the parity balance
rho0 = initial_state_thermal_ground(cfg)
times = np.concatenate([[0.0], np.geomspace(10.0, 3e7, 40)])
traj = propagate(liouv, rho0, times, rtol=1e-10, atol=1e-13)
print("\n     t          P0       P1       P0+P1    sum P_n")
for k in range(0, len(times), 8):
    st = photon_statistics(traj.states[k])
    print(
        f"{times[k]:10.1e}   {st.p_n[0]:.4f}   {st.p_n[1]:.4f}   "
        f"{st.p_n[0] + st.p_n[1]:.4f}   {st.p_n.sum():.6f}"
    )
