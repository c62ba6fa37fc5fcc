"""Figure rendering: pure functions of the CSV contents.

Everything is drawn in bits (converting from nats is the only arithmetic
done here, besides dropping non-finite points). Output is deterministic:
fixed canvas, fixed fonts, fixed PNG metadata, no timestamps, so
re-rendering the same CSV is pixel-identical on one toolchain version.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .csvio import SchemaMismatchError, Table, read_table, validate_schema

__all__ = ["FigureJob", "render", "build_figure"]

LN2 = math.log(2.0)
FIGSIZE = (6.4, 4.2)
DPI = 120
GREY = "0.6"
PNG_METADATA = {"Software": "infodyn-figures"}


@dataclass(frozen=True)
class FigureJob:
    input_csv: Path
    figure_kind: str  # ar1_curves | ar2_contours | ar2_region | poles_scatter
    output: Path
    units: str = "bits"

    def __post_init__(self):
        if self.units != "bits":
            raise ValueError("figures are rendered in bits")


def _to_bits(table: Table, values: np.ndarray) -> np.ndarray:
    if table.meta["units"] == "nats":
        return values / LN2
    return values


def _guide(ax, y: float, label: str):
    ax.axhline(y, color=GREY, lw=1.2, zorder=0, gid="asymptote", label=label)


def _fig_ar1_curves(table: Table):
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    psi = table.col("psi1")
    rho = _to_bits(table, table.col("rho"))
    b = _to_bits(table, table.col("b"))
    _guide(ax, float(table.meta["asymptote_b_bits"]), "b asymptote")
    ax.plot(psi, rho, lw=1.4, label=r"$\rho$")
    ax.plot(psi, b, lw=1.4, label=r"$b$")
    ax.set_xlabel(r"$\psi_1$")
    ax.set_ylabel("bits per sample")
    ax.set_ylim(0.0, 3.0)
    ax.legend(loc="upper center")
    return fig


def _fig_ar2_contours(table: Table):
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    p1 = table.col("psi1")
    p2 = table.col("psi2")
    rho = _to_bits(table, table.col("rho"))
    finite = np.isfinite(rho)
    levels = np.geomspace(0.05, 4.0, 9)
    ax.tricontour(p1[finite], p2[finite], np.minimum(rho[finite], 8.0), levels=levels)
    ax.plot([-2.0, 0.0, 2.0, -2.0], [-1.0, 1.0, -1.0, -1.0], color=GREY, lw=1.0)
    ax.set_xlabel(r"$\psi_1$")
    ax.set_ylabel(r"$\psi_2$")
    return fig


def _fig_ar2_region(table: Table):
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    lo = _to_bits(table, table.col("rho_lo"))
    hi = _to_bits(table, table.col("rho_hi"))
    bmin = _to_bits(table, table.col("b_min"))
    bmax = _to_bits(table, table.col("b_max"))
    mid = 0.5 * (lo + hi)
    _guide(ax, float(table.meta["asymptote_b_upper_bits"]), "upper asymptote")
    _guide(ax, float(table.meta["asymptote_b_lower_bits"]), "lower asymptote")
    ax.fill_between(mid, bmin, bmax, alpha=0.45, lw=0)
    ax.set_xlabel(r"$\rho$ (bits)")
    ax.set_ylabel(r"$b$ (bits)")
    ax.set_xlim(0.0, float(hi[-1]))
    return fig


def _fig_poles_scatter(table: Table):
    fig, ax = plt.subplots(figsize=FIGSIZE, dpi=DPI)
    rho = _to_bits(table, table.col("rho"))
    b = _to_bits(table, table.col("b"))
    probe = table.col("probe") > 0.5
    finite = np.isfinite(rho) & ~probe
    _guide(ax, float(table.meta["asymptote_b_bits"]), "b asymptote")
    ax.plot(rho[finite], b[finite], ".", ms=2.5, alpha=0.6)
    if probe.any():
        # rho of the probe diverges; pin its marker to the right edge
        x = rho[finite].max() if finite.any() else 1.0
        ax.plot([x], [b[probe][0]], "^", ms=7.0, gid="probe")
    ax.set_xlabel(r"$\rho$ (bits)")
    ax.set_ylabel(r"$b$ (bits)")
    return fig


_BUILDERS = {
    "ar1_curves": _fig_ar1_curves,
    "ar2_contours": _fig_ar2_contours,
    "ar2_region": _fig_ar2_region,
    "poles_scatter": _fig_poles_scatter,
}


def build_figure(kind: str, table: Table):
    """Validate the table against the kind and return the figure."""
    validate_schema(kind, table)
    return _BUILDERS[kind](table)


def render(job: FigureJob) -> Path:
    """Render one job to its output path and return the path."""
    table = read_table(job.input_csv)
    fig = build_figure(job.figure_kind, table)
    try:
        out = Path(job.output)
        kwargs = {"metadata": PNG_METADATA} if out.suffix == ".png" else {}
        fig.savefig(out, **kwargs)
    finally:
        plt.close(fig)
    return Path(job.output)


def _main(kind: str, argv) -> int:
    parser = argparse.ArgumentParser(description=f"render the {kind} figure")
    parser.add_argument("input_csv", type=Path)
    parser.add_argument("output", type=Path)
    args = parser.parse_args(argv)
    try:
        render(FigureJob(args.input_csv, kind, args.output))
    except SchemaMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


def main_ar1(argv=None) -> int:
    return _main("ar1_curves", argv)


def main_ar2_contours(argv=None) -> int:
    return _main("ar2_contours", argv)


def main_ar2_region(argv=None) -> int:
    return _main("ar2_region", argv)


def main_poles(argv=None) -> int:
    return _main("poles_scatter", argv)
