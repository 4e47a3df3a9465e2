"""Command-line entry point.

Subcommands name the scenarios; flags override values from an optional
JSON config file whose keys mirror ExperimentConfig:

    {"scenario": "dispersion", "n": [32, 64], "m": 1,
     "dp_exponent": null, "eps": [0.0, 0.05, 0.3333],
     "phi": [0.005, 0.01, 0.02], "circuit": "prog.txt",
     "tol": 1e-10, "seed": 7, "out": "results.csv"}

Exit status: 0 when every bound-checked row is satisfied, 1 when any
row fails its bound, 2 on configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys as _sys

from .experiments import (ConfigError, ExperimentConfig, all_satisfied,
                          rows_to_csv, run_scenario, write_csv)

_CONFIG_KEYS = {
    "scenario": "scenario",
    "n": "n_values",
    "m": "m",
    "dp_exponent": "dp_exponent",
    "eps": "eps",
    "phi": "phi_values",
    "circuit": "circuit_path",
    "tol": "tol",
    "seed": "seed",
    "out": "out_path",
}


def _parse_list(text: str, cast):
    return tuple(cast(tok) for tok in text.split(",") if tok.strip())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spinrings",
        description="Run wavepacket spin-ring experiments and check their bounds.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("dispersion", "free propagation vs pure translation scaling"),
        ("gates", "extended-gate phases and a localized block traversal"),
        ("transient", "weak gate straddling a moving packet"),
        ("bounds-suite", "seeded inequality checks and far-gate residuals"),
        ("circuit", "compile a circuit file and measure end-to-end fidelity"),
        ("all", "every scenario with its defaults"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--n", help="comma-separated ring sizes, e.g. 32,64,128")
        p.add_argument("--m", type=int, help="logical qubit count")
        p.add_argument("--eps", help="exponent triple e,e1,e2")
        p.add_argument("--phi", help="comma-separated gate strengths")
        p.add_argument("--dp-exponent", type=float, dest="dp_exponent",
                       help="momentum-width exponent eta (dx = N**(1-eta))")
        p.add_argument("--tol", type=float, help="propagator tolerance")
        p.add_argument("--seed", type=int, help="master random seed")
        p.add_argument("--config", help="JSON config file (flags override it)")
        p.add_argument("--out", help="CSV output path (default: stdout)")
        p.add_argument("--circuit", help="circuit file path")
    return parser


def _load_config(args: argparse.Namespace) -> ExperimentConfig:
    values: dict = {}
    if args.config:
        with open(args.config) as fh:
            doc = json.load(fh)
        unknown = set(doc) - set(_CONFIG_KEYS)
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        for key, attr in _CONFIG_KEYS.items():
            if key in doc and doc[key] is not None:
                values[attr] = doc[key]
    values["scenario"] = args.command
    if args.n is not None:
        values["n_values"] = _parse_list(args.n, int)
    if args.m is not None:
        values["m"] = args.m
    if args.eps is not None:
        eps = _parse_list(args.eps, float)
        if len(eps) != 3:
            raise ConfigError("--eps needs exactly three values")
        values["eps"] = eps
    if args.phi is not None:
        values["phi_values"] = _parse_list(args.phi, float)
    if args.dp_exponent is not None:
        values["dp_exponent"] = args.dp_exponent
    if args.tol is not None:
        values["tol"] = args.tol
    if args.seed is not None:
        values["seed"] = args.seed
    if args.circuit is not None:
        values["circuit_path"] = args.circuit
    if args.out is not None:
        values["out_path"] = args.out
    if "n_values" in values:
        values["n_values"] = tuple(int(v) for v in values["n_values"])
    if "eps" in values:
        values["eps"] = tuple(float(v) for v in values["eps"])
    if "phi_values" in values:
        values["phi_values"] = tuple(float(v) for v in values["phi_values"])
    return ExperimentConfig(**values)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _load_config(args)
    except (ConfigError, OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"configuration error: {exc}", file=_sys.stderr)
        return 2
    try:
        rows = run_scenario(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=_sys.stderr)
        return 2
    if cfg.out_path:
        write_csv(rows, cfg.out_path)
        print(f"wrote {len(rows)} rows to {cfg.out_path}")
    else:
        print(rows_to_csv(rows), end="")
    return 0 if all_satisfied(rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
