"""Command line interface.

Subcommands: measures, sweep-ar1, sweep-ar2, scatter-poles, oracle,
duality. CSV output is comma-separated with '.' decimals, LF endings, and
'#'-prefixed metadata lines that pin down the run (command, version,
seed, grid sizes, units) so identical invocations produce byte-identical
files. JSON output is a flat object with measure keys h, rho, b, r and
gap keys suffixed _gap.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .closed_form import NATS_PER_BIT
from .experiments import (
    AR1_EDGE_MARGIN,
    AR2_EDGE_DISTANCE,
    MeasureRecord,
    SweepSpec,
    ar1_sweep,
    ar2_cloud,
    binomial_probe,
    duality_document,
    measures_document,
    oracle_reports,
    pole_scatter,
    rho_envelope,
    scatter_asymptote_bits,
)
from .models import MaModel, make_ar
from .spectral import DEFAULT_GRID_N

HALF_LOG2_6 = 0.5 * math.log2(6.0)
HALF_LOG2_3_2 = 0.5 * math.log2(1.5)


def load_model(path):
    """Read a model file: {"type": "ar"|"ma", "coeffs": [...], "sigma2": x}.

    For AR models coeffs are psi_1..psi_N; for MA models the full
    b_0..b_N vector with b_0 = 1.
    """
    with open(path) as fh:
        doc = json.load(fh)
    kind = doc.get("type")
    coeffs = doc.get("coeffs", [])
    sigma2 = doc.get("sigma2", 1.0)
    if kind == "ar":
        return make_ar(coeffs, sigma2)
    if kind == "ma":
        return MaModel(np.asarray(coeffs, dtype=float), sigma2)
    raise ValueError(f"model type must be 'ar' or 'ma', got {kind!r}")


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return format(x, ".17g")


def _write_csv(path, meta: dict, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        for key, value in meta.items():
            fh.write(f"# {key}: {value}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def _emit_json(doc: dict, out) -> None:
    text = json.dumps(doc, indent=2)
    if out is None or out == "-":
        sys.stdout.write(text + "\n")
    else:
        Path(out).write_text(text + "\n")


def _factor(units: str) -> float:
    return 1.0 if units == "nats" else 1.0 / NATS_PER_BIT


def _base_meta(command: str, args) -> dict:
    return {
        "command": command,
        "version": __version__,
        "units": args.units,
    }


def _cmd_measures(args) -> int:
    model = load_model(args.model)
    doc = measures_document(model, units=args.units, grid_n=args.grid_n, ell=args.ell_max)
    doc = {"command": "measures", "version": __version__, "model": str(args.model), **doc}
    _emit_json(doc, args.out)
    return 0


def _cmd_sweep_ar1(args) -> int:
    spec = SweepSpec("ar1", count=args.count, units=args.units)
    psi, rho, b = ar1_sweep(spec.count)
    f = _factor(spec.units)
    meta = _base_meta("sweep-ar1", args)
    meta.update(
        {
            "seed": "none",
            "count": spec.count,
            "margin": _fmt(AR1_EDGE_MARGIN),
            # b levels off at half a bit as |psi1| -> 1 while rho diverges
            "asymptote_b_bits": _fmt(0.5),
        }
    )
    rows = zip(psi, rho * f, b * f)
    _write_csv(args.out, meta, ["psi1", "rho", "b"], rows)
    return 0


def _cmd_sweep_ar2(args) -> int:
    spec = SweepSpec("ar2", grid_density=args.grid_density, units=args.units)
    p1, p2, rho, b = ar2_cloud(spec.grid_density)
    f = _factor(spec.units)
    meta = _base_meta("sweep-ar2", args)
    meta.update(
        {
            "seed": "none",
            "grid_density": spec.grid_density,
            "edge_distance": _fmt(AR2_EDGE_DISTANCE),
            "asymptote_b_upper_bits": _fmt(HALF_LOG2_6),
            "asymptote_b_lower_bits": _fmt(HALF_LOG2_3_2),
        }
    )
    meta["table"] = "cloud"
    _write_csv(args.out, meta, ["psi1", "psi2", "rho", "b"], zip(p1, p2, rho * f, b * f))

    rho_bits = rho / NATS_PER_BIT
    b_bits = b / NATS_PER_BIT
    lo, hi, bmin, bmax, count = rho_envelope(rho_bits, b_bits)
    fb = 1.0 if spec.units == "bits" else NATS_PER_BIT
    env_meta = dict(meta)
    env_meta["table"] = "envelope"
    env_path = _envelope_path(args.out)
    _write_csv(
        env_path,
        env_meta,
        ["rho_lo", "rho_hi", "b_min", "b_max", "count"],
        zip(lo * fb, hi * fb, bmin * fb, bmax * fb, count),
    )
    return 0


def _envelope_path(out) -> Path:
    p = Path(out)
    return p.with_name(p.stem + "_region" + (p.suffix or ".csv"))


def _cmd_scatter_poles(args) -> int:
    spec = SweepSpec(
        "arn_poles",
        count=args.count,
        order=args.order,
        radial_bias=args.radial_bias,
        seed=args.seed,
        units=args.units,
    )
    rho, b = pole_scatter(spec.order, spec.count, spec.radial_bias, spec.seed)
    records = [
        MeasureRecord((i,), float(r), float(bb), divergent=not math.isfinite(r))
        for i, (r, bb) in enumerate(zip(rho, b))
    ]
    if args.probe:
        pr, pb = binomial_probe(spec.order)
        records.append(MeasureRecord(("probe",), pr, pb, divergent=not math.isfinite(pr)))
    f = _factor(spec.units)
    meta = _base_meta("scatter-poles", args)
    meta.update(
        {
            "seed": spec.seed,
            "order": spec.order,
            "count": spec.count,
            "radial_bias": _fmt(spec.radial_bias),
            "probe": int(args.probe),
            "asymptote_b_bits": _fmt(scatter_asymptote_bits(spec.order)),
        }
    )
    rows = (
        (rec.rho * f, rec.b * f, 1 if rec.params == ("probe",) else 0) for rec in records
    )
    _write_csv(args.out, meta, ["rho", "b", "probe"], rows)
    return 0


def _cmd_oracle(args) -> int:
    model = load_model(args.model)
    reports = oracle_reports(model, ell_max=args.ell_max, grid_n=args.grid_n)
    base = Path(args.out)
    for name, report in reports.items():
        meta = {
            "command": "oracle",
            "version": __version__,
            "units": "nats",
            "seed": "none",
            "model": str(args.model),
            "statistic": name,
            "ell_max": args.ell_max,
            "grid_n": args.grid_n,
        }
        path = base.with_name(base.stem + f"_{name}" + (base.suffix or ".csv"))
        _write_csv(path, meta, ["ell", "value", "target", "gap"], report.rows())
    return 0


def _cmd_duality(args) -> int:
    model = load_model(args.model)
    doc = duality_document(model, grid_n=args.grid_n)
    doc = {"command": "duality", "version": __version__, "model": str(args.model), **doc}
    _emit_json(doc, args.out)
    return 0


def _add_units(p):
    p.add_argument(
        "--units", choices=("nats", "bits"), default="nats", help="output units"
    )


def _add_grid_n(p):
    p.add_argument(
        "--grid-n", type=int, default=DEFAULT_GRID_N, help="spectral grid size"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="infodyn",
        description="Information rates of stationary Gaussian AR/MA processes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measures", help="all four measures from the three paths")
    p.add_argument("--model", required=True, help="JSON model file")
    _add_grid_n(p)
    p.add_argument("--ell-max", type=int, default=512, help="oracle truncation length")
    _add_units(p)
    p.add_argument("--out", default=None, help="output JSON path (default stdout)")
    p.set_defaults(func=_cmd_measures)

    p = sub.add_parser("sweep-ar1", help="rho and b along the AR(1) coefficient line")
    p.add_argument("--count", type=int, default=399, help="grid points (odd hits 0)")
    _add_units(p)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_sweep_ar1)

    p = sub.add_parser("sweep-ar2", help="AR(2) stability-region cloud and envelope")
    p.add_argument("--grid-density", type=int, default=400, help="points per axis")
    _add_units(p)
    p.add_argument("--out", required=True, help="cloud CSV path (envelope gets _region)")
    p.set_defaults(func=_cmd_sweep_ar2)

    p = sub.add_parser("scatter-poles", help="random-pole AR scatter of (rho, b)")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--count", type=int, default=5000)
    p.add_argument("--radial-bias", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--probe",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="append the all-poles-together probe row",
    )
    _add_units(p)
    p.add_argument("--out", required=True, help="output CSV path")
    p.set_defaults(func=_cmd_scatter_poles)

    p = sub.add_parser("oracle", help="Toeplitz-oracle convergence reports")
    p.add_argument("--model", required=True, help="JSON model file")
    p.add_argument("--ell-max", type=int, default=512)
    _add_grid_n(p)
    p.add_argument("--out", required=True, help="base CSV path (_next/_center/_szego)")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("duality", help="pir(S) = mir(1/S) numerical check")
    p.add_argument("--model", required=True, help="JSON model file")
    _add_grid_n(p)
    p.add_argument("--out", default=None, help="output JSON path (default stdout)")
    p.set_defaults(func=_cmd_duality)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
