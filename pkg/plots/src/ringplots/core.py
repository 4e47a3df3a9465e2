"""CSV loading, power-law fitting, and figure rendering.

The input schema is the fixed experiments header

    scenario,N,m,g,t,delta_p,phi,measured_error,bound_value,fidelity,runtime_seconds

One figure is produced per scenario: measured error vs N (with the bound
overlaid when present and a fitted slope annotation when requested) or a
fidelity curve when a scenario reports fidelity but no error.  Output is
deterministic: fixed fonts, a fixed SVG hash salt, and no timestamps.
"""

from __future__ import annotations

import csv
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

REQUIRED_COLUMNS = ("scenario", "N", "m", "g", "t", "delta_p", "phi",
                    "measured_error", "bound_value", "fidelity",
                    "runtime_seconds")


class SchemaError(ValueError):
    """The CSV does not carry the experiments schema."""


@dataclass(frozen=True)
class PlotJob:
    input_path: str
    output_path: str
    scenario: str | None = None  # None: every scenario in the file
    loglog: bool = False
    fit_slope: bool = False


def _to_float(cell: str) -> float | None:
    return float(cell) if cell != "" else None


def read_rows(path: str) -> list[dict]:
    """Parse the CSV, checking the schema and typing the numeric fields."""
    if not Path(path).exists():
        raise FileNotFoundError(path)
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for column in REQUIRED_COLUMNS:
            if column not in header:
                raise SchemaError(f"input is missing required column {column!r}")
        rows = []
        for rec in reader:
            rows.append({
                "scenario": rec["scenario"],
                "N": int(rec["N"]),
                "m": int(rec["m"]),
                "t": _to_float(rec["t"]),
                "measured_error": _to_float(rec["measured_error"]),
                "bound_value": _to_float(rec["bound_value"]),
                "fidelity": _to_float(rec["fidelity"]),
            })
    return rows


def _series(rows: list[dict], field: str) -> tuple[np.ndarray, np.ndarray]:
    """Per-N series of `field`, keeping the largest-t row for each N."""
    best: dict[int, dict] = {}
    for row in rows:
        if row[field] is None:
            continue
        t = row["t"] if row["t"] is not None else 0.0
        cur = best.get(row["N"])
        if cur is None or t > (cur["t"] or 0.0):
            best[row["N"]] = row
    ns = np.array(sorted(best))
    vals = np.array([best[n][field] for n in ns])
    return ns, vals


def fit_power_law(ns: np.ndarray, values: np.ndarray) -> float:
    """Least-squares slope of log(values) against log(N)."""
    mask = values > 0
    if int(np.sum(mask)) < 2:
        raise ValueError("need at least two positive points to fit a slope")
    slope, _ = np.polyfit(np.log(ns[mask]), np.log(values[mask]), 1)
    return float(slope)


def _deterministic_style():
    plt.rcParams.update({
        "svg.hashsalt": "ringplots",
        "font.family": "DejaVu Sans",
        "figure.dpi": 100,
        "path.simplify": False,
    })


def _figure_path(base: str, scenario: str, multiple: bool) -> str:
    if not multiple:
        return base
    p = Path(base)
    safe = scenario.replace("/", "_")
    return str(p.with_name(f"{p.stem}_{safe}{p.suffix}"))


def render(job: PlotJob) -> list[str]:
    """Write one figure per matching scenario; returns the written paths.

    An empty scenario match is a warning, not an error, and writes nothing.
    """
    rows = read_rows(job.input_path)
    if job.scenario is not None:
        rows = [r for r in rows if r["scenario"] == job.scenario]
    scenarios = sorted({r["scenario"] for r in rows})
    if not scenarios:
        wanted = job.scenario if job.scenario is not None else "<any>"
        print(f"warning: no rows match scenario {wanted!r}; nothing to plot",
              file=sys.stderr)
        return []
    _deterministic_style()
    written = []
    multiple = len(scenarios) > 1
    for scenario in scenarios:
        sub = [r for r in rows if r["scenario"] == scenario]
        fig, ax = plt.subplots(figsize=(5.5, 4.0))
        ns_err, errs = _series(sub, "measured_error")
        drew_error = ns_err.size > 0 and np.any(errs > 0)
        if drew_error:
            ax.plot(ns_err, errs, "o-", color="#1f5fa8", label="measured")
            ns_bound, bounds = _series(sub, "bound_value")
            if ns_bound.size:
                ax.plot(ns_bound, bounds, "s--", color="#c44e52", label="bound")
            if job.loglog:
                ax.set_xscale("log")
                ax.set_yscale("log")
            ax.set_ylabel("error")
            if job.fit_slope and np.sum(errs > 0) >= 2:
                slope = fit_power_law(ns_err, errs)
                ax.annotate(f"slope {slope:.3f}", xy=(0.05, 0.08),
                            xycoords="axes fraction")
        else:
            ns_fid, fids = _series(sub, "fidelity")
            ax.plot(ns_fid, fids, "o-", color="#2a8f5c", label="fidelity")
            ax.set_ylabel("fidelity")
            if job.loglog:
                ax.set_xscale("log")
        ax.set_xlabel("N")
        ax.set_title(scenario)
        ax.legend(loc="best")
        fig.tight_layout()
        path = _figure_path(job.output_path, scenario, multiple)
        fig.savefig(path, metadata=_scrubbed_metadata(path))
        plt.close(fig)
        written.append(path)
    return written


def _scrubbed_metadata(path: str) -> dict | None:
    suffix = Path(path).suffix.lower()
    if suffix == ".svg":
        return {"Date": None}
    if suffix == ".png":
        return {"Software": None}
    return None
