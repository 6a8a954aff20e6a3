#!/usr/bin/env python3
"""Cooling by heating: raising the hot bath temperature cools the resonator.

The hot bath is filtered to the second lower sideband omega_a - 2*omega_b,
so the only way it can act is by exciting the TLS while removing a photon
pair.  Its absorption weight grows with temperature, so hotter means a
faster two-photon cooling rate and a colder resonator.

Writes cooling_curve.csv and (if matplotlib is available) a plot.
"""

import numpy as np

from tpcool import build_filtered_me, mean_occupation, steady_state
from tpcool.config import apply_parameter, default_config

cfg = apply_parameter(default_config(), "bath.resonator.nbar", 5.0)
temperatures = np.geomspace(0.05, 2.0, 25)

means = []
for t_hot in temperatures:
    point = apply_parameter(cfg, "bath.hot.temperature", float(t_hot))
    liouv = build_filtered_me(point.model, point.baths, point.n_max)
    means.append(mean_occupation(steady_state(liouv)))
    print(f"T_H = {t_hot:6.3f}   <n> = {means[-1]:.4f}")

np.savetxt(
    "cooling_curve.csv",
    np.column_stack([temperatures, means]),
    delimiter=",",
    header="T_H,mean_n",
    comments="",
)
print("wrote cooling_curve.csv")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(4.6, 3.2))
    ax.semilogx(temperatures, means, "o-", ms=3)
    ax.set_xlabel(r"$T_H$")
    ax.set_ylabel(r"$\langle b^\dagger b\rangle$")
    fig.tight_layout()
    fig.savefig("cooling_curve.svg")
    print("wrote cooling_curve.svg")
except ImportError:
    pass
