"""Batch runs: single points, sweeps, figure-reproduction recipes, CSV output.

CSV contract: comma-separated, '#'-prefixed metadata lines, scientific
notation with 12 significant digits, deterministic row order.  Every file
gets a JSON sidecar (<out>.meta.json) recording all resolved parameters,
so the data is reconstructible from outputs alone.
"""

from __future__ import annotations

import dataclasses
import json
import math
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import __version__
from .config import RunConfig, apply_parameter, config_as_dict, si_parameter_table, validate_config
from .fokker_planck import fp_limit_populations
from .liouvillian import (
    Liouvillian,
    MEVariant,
    build_filtered_me,
    build_full_me,
    build_reduced_me,
    reduced_rates,
    tls_steady_sigma_z,
)
from .model import BathLabel
from .observables import photon_statistics
from .operators import DensityMatrix, SpaceSignature
from .solvers import default_tau_grid, propagate, steady_state, two_time_correlation

FLOAT_FMT = "{:.11e}"  # 12 significant digits


def build_liouvillian(config: RunConfig) -> Liouvillian:
    if config.me_variant is MEVariant.FULL:
        return build_full_me(config.model, config.baths, config.n_max)
    if config.me_variant is MEVariant.FILTERED:
        return build_filtered_me(config.model, config.baths, config.n_max)
    sz = tls_steady_sigma_z(config.model, config.baths)
    rates = reduced_rates(
        config.model, config.baths, sz, interpretation=config.sigma_z_interpretation
    )
    return build_reduced_me(rates, config.n_max)


def _observable_row(config: RunConfig, stats) -> dict:
    row = {"T_H": config.bath(BathLabel.HOT).temperature, "nbar_b": config.nbar_b}
    p = stats.p_n
    for obs in config.observables:
        if obs == "mean_n":
            row["mean_n"] = stats.mean_n
        elif obs == "g2_zero":
            row["g2_zero"] = stats.g2_zero if stats.g2_zero is not None else math.nan
        elif obs == "psum01":
            row["psum01"] = float(p[0] + p[1])
        elif obs.startswith("p"):
            k = int(obs[1:])
            row[obs] = float(p[k]) if k < len(p) else 0.0
    return row


def run_single(config: RunConfig) -> tuple[dict, dict]:
    """One steady-state run: returns (CSV row, metadata sidecar dict)."""
    validate_config(config)
    liouv = build_liouvillian(config)
    rho = steady_state(liouv)
    stats = photon_statistics(rho)
    row = _observable_row(config, stats)
    meta = {
        "version": __version__,
        "config": config_as_dict(config),
        "si_parameters": si_parameter_table(config),
        "diagnostics": {
            "trace_residual": liouv.trace_residual(),
            "min_eigenvalue": rho.min_eigenvalue(),
            "hilbert_dim": liouv.dim,
        },
    }
    return row, meta


def _sweep_point(config: RunConfig, value: float) -> dict:
    try:
        point = apply_parameter(config, config.sweep.parameter, value)
        point = dataclasses.replace(point, sweep=None)
        row, _ = run_single(point)
        row[config.sweep.parameter] = value
        row["error"] = ""
        return row
    except Exception as exc:  # failed points emit NaN rows, the sweep continues
        row = {config.sweep.parameter: value}
        row.update({obs: math.nan for obs in config.observables})
        row["error"] = f"{type(exc).__name__}: {exc}"
        return row


def run_sweep(config: RunConfig, jobs: int = 1) -> tuple[list[dict], dict]:
    """Sweep one dotted parameter over its grid; deterministic row order."""
    validate_config(config)
    if config.sweep is None:
        raise ValueError("run_sweep needs a sweep section in the config")
    values = config.sweep.values
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(lambda v: _sweep_point(config, v), values))
    else:
        rows = [_sweep_point(config, v) for v in values]
    meta = {
        "version": __version__,
        "config": config_as_dict(config),
        "n_points": len(values),
    }
    return rows, meta


# ---------------------------------------------------------------------------
# CSV output
# ---------------------------------------------------------------------------

def _format_cell(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isnan(v):
        return "nan"
    return FLOAT_FMT.format(v)


def write_csv(path: str | Path, rows: list[dict], meta: dict, columns=None) -> Path:
    """Write rows with '#'-prefixed metadata lines and a header row."""
    path = Path(path)
    if columns is None:
        columns = []
        for row in rows:
            for key in row:
                if key not in columns:
                    columns.append(key)
    lines = [f"# tpcool {__version__}"]
    for key in sorted(meta.get("config", {})):
        lines.append(f"# {key} = {meta['config'][key]}")
    lines.append(",".join(columns))
    for row in rows:
        lines.append(",".join(_format_cell(row.get(c, "")) for c in columns))
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n")
    sidecar = path.with_suffix(path.suffix + ".meta.json")
    sidecar.write_text(json.dumps(meta, indent=2, sort_keys=True, default=str) + "\n")
    return path


# ---------------------------------------------------------------------------
# figure recipes
# ---------------------------------------------------------------------------

FIGURE_FAMILIES = (5.0, 10.0, 15.0, 20.0)
TEMPERATURE_GRID = tuple(float(v) for v in np.geomspace(0.05, 2.0, 40))


def sweep_n_max(nbar_b: float) -> int:
    """Fock truncation for shape sweeps: generous for the cooled end,
    adequate for the thermal end without the full convergence doubling."""
    return max(30, int(math.ceil(3.0 * nbar_b)))


def _family_config(config: RunConfig, nbar_b: float) -> RunConfig:
    cfg = apply_parameter(config, "bath.resonator.nbar", nbar_b)
    return dataclasses.replace(cfg, n_max=sweep_n_max(nbar_b), sweep=None)


def _temperature_scan(config: RunConfig, nbar_b: float, observable: str, jobs: int) -> list[dict]:
    base = _family_config(config, nbar_b)

    def one(th: float) -> dict:
        cfg = apply_parameter(base, "bath.hot.temperature", th)
        row, _ = run_single(cfg)
        return {"nbar_b": nbar_b, "T_H": th, observable: row[observable]}

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one, TEMPERATURE_GRID))
    return [one(th) for th in TEMPERATURE_GRID]


def reproduce_figure(
    fig_id: str,
    config: RunConfig | None = None,
    *,
    out: str | Path = ".",
    jobs: int = 1,
    plot: bool = False,
    families=FIGURE_FAMILIES,
) -> list[Path]:
    """Reproduce one of the stock result figures; returns written paths.

    fig2: stationary occupation vs hot-bath temperature per nbar_b family.
    fig3: stationary photon-number distribution against the closed-form
          strong-cooling populations, plus the relaxation time series.
    fig4: g2(0) vs hot-bath temperature per family, plus g2(tau) delays.
    `families` restricts the nbar_b curves of fig2/fig4.
    """
    if fig_id not in ("fig2", "fig3", "fig4"):
        raise ValueError(f"unknown figure id {fig_id!r} (expected fig2, fig3 or fig4)")
    if config is None:
        from .config import default_config

        config = default_config()
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    if fig_id == "fig2":
        rows = []
        for nbar in families:
            rows += _temperature_scan(config, nbar, "mean_n", jobs)
        meta = {"version": __version__, "config": config_as_dict(config),
                "families_nbar_b": list(families)}
        written.append(write_csv(out / "fig2.csv", rows, meta,
                                 columns=["nbar_b", "T_H", "mean_n"]))
        if plot:
            written.append(_plot_families(out / "fig2.svg", rows, "mean_n",
                                          r"$\langle b^\dagger b\rangle$"))
        return written

    if fig_id == "fig4":
        rows = []
        for nbar in families:
            rows += _temperature_scan(config, nbar, "g2_zero", jobs)
        meta = {"version": __version__, "config": config_as_dict(config),
                "families_nbar_b": list(families)}
        written.append(write_csv(out / "fig4.csv", rows, meta,
                                 columns=["nbar_b", "T_H", "g2_zero"]))
        inset_rows = _g2_delay_rows(config, temperatures=(0.1, 1.0))
        written.append(write_csv(out / "fig4_inset.csv", inset_rows,
                                 {"version": __version__, "config": config_as_dict(config)},
                                 columns=["T_H", "tau", "g2"]))
        if plot:
            written.append(_plot_families(out / "fig4.svg", rows, "g2_zero", r"$g^{(2)}(0)$"))
        return written

    # fig3: distribution bars + relaxation inset at the default operating point
    cfg = dataclasses.replace(config, sweep=None)
    liouv = build_filtered_me(cfg.model, cfg.baths, cfg.n_max)
    rho = steady_state(liouv)
    stats = photon_statistics(rho)
    p0_limit, p1_limit = fp_limit_populations(cfg.nbar_b)
    bar_rows = []
    for n, p in enumerate(stats.p_n[:12]):
        analytic = p0_limit if n == 0 else (p1_limit if n == 1 else 0.0)
        bar_rows.append({"n": n, "p_n": float(p), "p_n_strong_cooling_limit": analytic})
    meta = {
        "version": __version__,
        "config": config_as_dict(cfg),
        "mean_n": stats.mean_n,
        "g2_zero": stats.g2_zero,
        "initial_state": "thermal resonator (nbar_b) x TLS ground",
    }
    written.append(write_csv(out / "fig3.csv", bar_rows, meta,
                             columns=["n", "p_n", "p_n_strong_cooling_limit"]))

    inset = _relaxation_rows(cfg)
    written.append(write_csv(out / "fig3_inset.csv", inset, meta,
                             columns=["t", "p0", "p1", "psum01", "ptotal"]))
    if plot:
        written.append(_plot_fig3(out / "fig3.svg", bar_rows, inset))
    return written


def _thermal_fock(nbar: float, n_max: int) -> np.ndarray:
    if nbar == 0.0:
        p = np.zeros(n_max + 1)
        p[0] = 1.0
        return p
    ratio = nbar / (1.0 + nbar)
    p = ratio ** np.arange(n_max + 1)
    return p / p.sum()


def initial_state_thermal_ground(config: RunConfig) -> DensityMatrix:
    """Thermal resonator at nbar_b tensored with the TLS ground state."""
    p = _thermal_fock(config.nbar_b, config.n_max)
    tls = np.diag([0.0, 1.0])  # ground state at index 1
    sig = SpaceSignature((2, config.n_max + 1))
    return DensityMatrix.from_data(sig, np.kron(tls, np.diag(p)))


def _relaxation_rows(config: RunConfig) -> list[dict]:
    liouv = build_filtered_me(config.model, config.baths, config.n_max)
    rho0 = initial_state_thermal_ground(config)
    t_grid = np.concatenate([[0.0], np.geomspace(1.0, 3e7, 120)])
    traj = propagate(liouv, rho0, t_grid, rtol=1e-10, atol=1e-13)
    rows = []
    for t, state in zip(traj.times, traj.states):
        stats = photon_statistics(state)
        rows.append({
            "t": t,
            "p0": float(stats.p_n[0]),
            "p1": float(stats.p_n[1]),
            "psum01": float(stats.p_n[0] + stats.p_n[1]),
            "ptotal": float(stats.p_n.sum()),
        })
    return rows


def _g2_delay_rows(config: RunConfig, temperatures) -> list[dict]:
    rows = []
    kappa_b = config.bath(BathLabel.RESONATOR).kappa
    taus = default_tau_grid(kappa_b)
    for th in temperatures:
        cfg = apply_parameter(config, "bath.hot.temperature", th)
        cfg = dataclasses.replace(cfg, sweep=None)
        liouv = build_filtered_me(cfg.model, cfg.baths, cfg.n_max)
        rho = steady_state(liouv)
        series = two_time_correlation(liouv, rho, taus)
        for tau, g2 in zip(series.taus, series.values):
            rows.append({"T_H": th, "tau": float(tau), "g2": float(g2)})
    return rows


# ---------------------------------------------------------------------------
# optional plotting (vector output)
# ---------------------------------------------------------------------------

def _plot_families(path: Path, rows: list[dict], key: str, ylabel: str) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.0, 3.6))
    families = sorted({row["nbar_b"] for row in rows})
    for nbar in families:
        pts = [(r["T_H"], r[key]) for r in rows if r["nbar_b"] == nbar]
        ax.plot(*zip(*pts), lw=1.6, label=rf"$\bar n_b = {nbar:g}$")
    if key == "g2_zero":
        ax.axhline(1.0, color="0.6", lw=0.8, ls=":")
    ax.set_xlabel(r"$T_H$")
    ax.set_ylabel(ylabel)
    ax.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def _plot_fig3(path: Path, bar_rows: list[dict], inset_rows: list[dict]) -> Path:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax, ax2) = plt.subplots(1, 2, figsize=(8.0, 3.4))
    ns = [r["n"] for r in bar_rows]
    ax.bar([n - 0.2 for n in ns], [r["p_n"] for r in bar_rows], width=0.4,
           label="steady state", color="#1f4e79")
    ax.bar([n + 0.2 for n in ns], [r["p_n_strong_cooling_limit"] for r in bar_rows],
           width=0.4, label="strong-cooling limit", color="#74a9d8")
    ax.set_xlabel(r"$n$")
    ax.set_ylabel(r"$P_n$")
    ax.legend(frameon=False, fontsize=8)
    ts = [r["t"] for r in inset_rows[1:]]
    ax2.semilogx(ts, [r["p0"] for r in inset_rows[1:]], "r:", label=r"$P_0$")
    ax2.semilogx(ts, [r["p1"] for r in inset_rows[1:]], "b-.", label=r"$P_1$")
    ax2.semilogx(ts, [r["psum01"] for r in inset_rows[1:]], "k-", label=r"$P_0+P_1$")
    ax2.semilogx(ts, [r["ptotal"] for r in inset_rows[1:]], "g--", label=r"$\sum_n P_n$")
    ax2.set_xlabel(r"$\omega_a t$")
    ax2.legend(frameon=False, fontsize=8)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
