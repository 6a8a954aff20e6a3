"""Command-line front end.

Subcommands:
  single           one steady-state run -> one CSV row
  sweep            sweep the configured parameter grid -> CSV table
  figure           reproduce a stock figure (fig2 | fig3 | fig4)
  validate-config  parse and validate a config file
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from .config import ConfigError, RunConfig, default_config, load_config, validate_config
from .liouvillian import MEVariant
from .runner import reproduce_figure, run_single, run_sweep, write_csv


def _load(args) -> RunConfig:
    config = load_config(args.config) if args.config else default_config()
    if args.n_max is not None:
        config = dataclasses.replace(config, n_max=args.n_max)
    if args.me is not None:
        config = dataclasses.replace(config, me_variant=MEVariant(args.me))
    return config


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="config file (also searched in $TPCOOL_CONFIG_DIR)")
    parser.add_argument("--out", help="output CSV path or directory")
    parser.add_argument("--n-max", type=int, default=None, help="Fock truncation override")
    parser.add_argument("--me", choices=[v.value for v in MEVariant], default=None,
                        help="master-equation variant override")
    parser.add_argument("--jobs", type=int, default=1, help="parallel sweep workers")
    parser.add_argument("--plot", action="store_true", help="also emit vector plots")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tpcool",
        description="Filtered-bath Lindblad simulator: two-photon cooling and photon statistics",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("single", "one steady-state run"),
        ("sweep", "parameter sweep from the config's [sweep] section"),
        ("validate-config", "check a config file and exit"),
    ):
        p = sub.add_parser(name, help=help_text)
        _add_common(p)
    p = sub.add_parser("figure", help="reproduce a stock figure")
    p.add_argument("fig_id", choices=["fig2", "fig3", "fig4"])
    p.add_argument("--families", default=None,
                   help="comma list of nbar_b curves for fig2/fig4 (default 5,10,15,20)")
    _add_common(p)

    args = parser.parse_args(argv)
    try:
        if args.command == "validate-config":
            if not args.config:
                raise ConfigError("validate-config requires --config")
            config = load_config(args.config)
            validate_config(config)
            print(f"OK: {args.config}")
            return 0

        config = _load(args)
        if args.command == "single":
            row, meta = run_single(config)
            out = Path(args.out or config.output_path or "single.csv")
            write_csv(out, [row], meta)
            print(f"wrote {out}")
        elif args.command == "sweep":
            rows, meta = run_sweep(config, jobs=args.jobs)
            out = Path(args.out or config.output_path or "sweep.csv")
            write_csv(out, rows, meta)
            failures = sum(1 for r in rows if r.get("error"))
            print(f"wrote {out} ({len(rows)} rows, {failures} failed points)")
        else:
            kwargs = {}
            if args.families:
                kwargs["families"] = tuple(float(v) for v in args.families.split(","))
            written = reproduce_figure(
                args.fig_id, config, out=args.out or ".", jobs=args.jobs,
                plot=args.plot, **kwargs,
            )
            for path in written:
                print(f"wrote {path}")
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
