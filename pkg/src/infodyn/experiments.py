"""Parameter sweeps, random-pole scatter, and multi-path measure documents.

The computational layer behind the CLI: everything here returns plain
arrays or dicts so it can be tested without touching files. Sweep cells
are independent; results are always emitted in input order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .closed_form import (
    NATS_PER_BIT,
    DivergentPIRError,
    entropy_rate_cf,
    info_rates,
    info_rates_spectral,
    mir_ar_general,
    mir_ma,
    pir_ar,
)
from .models import (
    ArModel,
    PoleSet,
    SingularSystemError,
    ar_autocovariance,
    ma_autocovariance,
    poles_to_ar,
    random_pole_set,
)
from .oracle import (
    cond_entropy_center,
    cond_entropy_next,
    convergence_report,
    szego_harmonic_check,
    truncation_schedule,
)
from .spectral import (
    DEFAULT_GRID_N,
    LOG_2PI_E,
    erasure_rate_spectral,
    invert_spectrum,
    mir_spectral,
    pir_spectral,
    psd_ar,
    psd_ma,
)

__all__ = [
    "SweepSpec",
    "MeasureRecord",
    "ar1_sweep",
    "ar2_cloud",
    "ar2_max_root_modulus",
    "rho_envelope",
    "pole_scatter",
    "binomial_probe",
    "scatter_asymptote_bits",
    "measures_document",
    "duality_document",
    "oracle_reports",
    "AR1_EDGE_MARGIN",
    "AR2_EDGE_DISTANCE",
    "RHO_BIN_COUNT",
    "RHO_BIN_MAX_BITS",
]

AR1_EDGE_MARGIN = 1e-3
# The lower accessible-region asymptote only shows up within ~1e-4 of the
# stability boundary, so the AR(2) cloud clusters geometrically toward it.
AR2_EDGE_DISTANCE = 1e-6
RHO_BIN_COUNT = 200
RHO_BIN_MAX_BITS = 6.0


@dataclass(frozen=True)
class SweepSpec:
    """Declarative description of one sweep or scatter run."""

    model_family: str  # ar1 | ar2 | ma1 | arn_poles
    count: int = 0
    grid_density: int = 0
    order: int = 0
    radial_bias: float = 1.0
    seed: int = 0
    units: str = "nats"

    def __post_init__(self):
        if self.model_family not in ("ar1", "ar2", "ma1", "arn_poles"):
            raise ValueError(f"unknown model family {self.model_family!r}")
        if self.units not in ("nats", "bits"):
            raise ValueError(f"units must be 'nats' or 'bits', got {self.units!r}")


@dataclass(frozen=True)
class MeasureRecord:
    """One sweep cell: parameters, rates (nats), and a divergence flag."""

    params: tuple
    rho: float
    b: float
    divergent: bool = False


def ar1_sweep(count: int = 399, margin: float = AR1_EDGE_MARGIN):
    """Uniform psi1 grid on [-1 + margin, 1 - margin] with rho and b in nats.

    An odd count puts psi1 = 0 (white noise) exactly on the grid; the grid
    is mirrored around it so the two halves are bit-identical.
    """
    if count < 2:
        raise ValueError("count must be >= 2")
    edge = 1.0 - margin
    if count % 2:
        pos = np.linspace(0.0, edge, count // 2 + 1)
        psi = np.concatenate((-pos[:0:-1], pos))
    else:
        psi = np.linspace(-edge, edge, count)
    rho = -0.5 * np.log1p(-psi * psi)
    b = 0.5 * np.log1p(psi * psi)
    return psi, rho, b


def ar2_max_root_modulus(psi1, psi2):
    """Largest characteristic-root modulus of z^2 - psi1 z - psi2, vectorised."""
    p1 = np.asarray(psi1, dtype=float)
    p2 = np.asarray(psi2, dtype=float)
    disc = p1 * p1 + 4.0 * p2
    sq = np.sqrt(np.maximum(disc, 0.0))
    real = np.maximum(np.abs(p1 + sq), np.abs(p1 - sq)) / 2.0
    cplx = np.sqrt(np.maximum(-p2, 0.0))
    return np.where(disc >= 0.0, real, cplx)


def ar2_cloud(grid_density: int = 400, edge_distance: float = AR2_EDGE_DISTANCE):
    """Stability-region point cloud with rates, clustered toward the edges.

    Columns are uniform in psi1 over (-2, 2); within each column the psi2
    values approach both ends of the stable interval (-1, 1 - |psi1|) on a
    geometric ladder with minimum edge distance ``edge_distance``. That
    resolves the rho divergence at the boundary, which a uniform grid
    cannot reach. Membership is confirmed by the root test.

    Returns (psi1, psi2, rho, b) flat arrays, rates in nats.
    """
    G = grid_density
    if G < 4:
        raise ValueError("grid_density must be >= 4")
    half = G // 2
    t = np.arange(half) / half  # 0 .. <1
    psi1_cols = -2.0 + 4.0 * (np.arange(G) + 0.5) / G
    p1_parts, p2_parts = [], []
    for p in psi1_cols:
        lo, hi = -1.0, 1.0 - abs(p)
        m = 0.5 * (hi - lo)
        d = m * (min(edge_distance, 0.1 * m) / m) ** (1.0 - t)
        p2 = np.concatenate([lo + d, hi - d])
        p1_parts.append(np.full(p2.size, p))
        p2_parts.append(p2)
    p1 = np.concatenate(p1_parts)
    p2 = np.concatenate(p2_parts)
    stable = ar2_max_root_modulus(p1, p2) < 1.0 - 1e-9
    p1, p2 = p1[stable], p2[stable]
    denom = 1.0 - (p1 * p1 + p2) * (1.0 + p2) + p2**3
    rho = 0.5 * np.log((1.0 - p2) / denom)
    b = 0.5 * np.log1p(p1 * p1 + p2 * p2)
    return p1, p2, rho, b


def rho_envelope(rho_bits, b_bits, n_bins: int = RHO_BIN_COUNT, rho_max: float = RHO_BIN_MAX_BITS):
    """Per-rho-bin min/max envelope of b over [0, rho_max] bits.

    Returns (rho_lo, rho_hi, b_min, b_max, count) arrays for the non-empty
    bins, in ascending rho order.
    """
    rho_bits = np.asarray(rho_bits, dtype=float)
    b_bits = np.asarray(b_bits, dtype=float)
    edges = np.linspace(0.0, rho_max, n_bins + 1)
    idx = np.digitize(rho_bits, edges) - 1
    rows = []
    for i in range(n_bins):
        sel = idx == i
        c = int(sel.sum())
        if c == 0:
            continue
        rows.append(
            (edges[i], edges[i + 1], float(b_bits[sel].min()), float(b_bits[sel].max()), c)
        )
    lo, hi, bmin, bmax, count = (np.asarray(col) for col in zip(*rows))
    return lo, hi, bmin, bmax, count


def _pole_model_rates(model: ArModel):
    b = pir_ar(model)
    try:
        rho = mir_ar_general(model)
    except SingularSystemError:
        # marginal variance beyond what the solver can resolve: the rate
        # genuinely diverges at the stability boundary
        rho = math.inf
    return rho, b


def pole_scatter(order: int = 8, count: int = 5000, radial_bias: float = 1.0, seed: int = 0):
    """Random-pole AR scatter: (rho, b) arrays in nats, deterministic in seed."""
    rng = np.random.default_rng(seed)
    rho = np.empty(count)
    b = np.empty(count)
    for i in range(count):
        poles = random_pole_set(order, rng, radial_bias=radial_bias)
        model = poles_to_ar(poles, 1.0)
        rho[i], b[i] = _pole_model_rates(model)
    return rho, b


def binomial_probe(order: int = 8, radius: float = 1.0 - 1e-6):
    """All poles at +radius: the configuration approaching the upper b limit.

    Returns (rho, b) in nats; rho is typically inf at probe radii.
    """
    poles = PoleSet(np.full(order, radius, dtype=complex))
    model = poles_to_ar(poles, 1.0)
    return _pole_model_rates(model)


def scatter_asymptote_bits(order: int) -> float:
    """Conjectured upper b limit: half the log2 of the central binomial sum."""
    return 0.5 * math.log2(math.comb(2 * order, order))


def _model_autocov(model, max_lag):
    if isinstance(model, ArModel):
        return ar_autocovariance(model, max_lag)
    return ma_autocovariance(model, max_lag)


def _model_psd(model, grid_n):
    if isinstance(model, ArModel):
        return psd_ar(model, grid_n)
    return psd_ma(model, grid_n)


def _json_number(x):
    if isinstance(x, float) and not math.isfinite(x):
        return "inf" if x > 0 else ("-inf" if x < 0 else "nan")
    return x


def measures_document(
    model, units: str = "nats", grid_n: int = DEFAULT_GRID_N, ell: int = 512
) -> dict:
    """Flat measure document from all three paths plus agreement gaps.

    Keys h, rho, b, r carry the closed-form values; *_spectral and
    *_oracle the other two paths; *_gap the absolute deviations from the
    closed forms. Divergent values are emitted as the string "inf" and
    flagged.
    """
    factor = 1.0 if units == "nats" else 1.0 / NATS_PER_BIT
    divergent = False
    try:
        closed = info_rates(model, grid_n)
        closed_vals = {"h": closed.h, "rho": closed.rho, "b": closed.b, "r": closed.r}
    except DivergentPIRError:
        divergent = True
        closed_vals = {
            "h": entropy_rate_cf(model.sigma2),
            "rho": mir_ma(model),
            "b": math.inf,
            "r": -math.inf,
        }

    S = _model_psd(model, grid_n)
    spect = info_rates_spectral(S)
    spect_vals = {"h": spect.h, "rho": spect.rho, "b": spect.b, "r": spect.r}

    acov = _model_autocov(model, 2 * ell)
    h_o = cond_entropy_next(acov, ell)
    r_o = cond_entropy_center(acov, ell)
    rho_o = 0.5 * (LOG_2PI_E + np.log(acov.gamma[0])) - h_o
    oracle_vals = {"h": h_o, "rho": rho_o, "b": h_o - r_o, "r": r_o}

    doc = {"units": units, "grid_n": grid_n, "ell": ell, "divergent": divergent}
    for key in ("h", "rho", "b", "r"):
        doc[key] = _json_number(closed_vals[key] * factor)
    for tag, vals in (("spectral", spect_vals), ("oracle", oracle_vals)):
        for key in ("h", "rho", "b", "r"):
            doc[f"{key}_{tag}"] = _json_number(vals[key] * factor)
            gap = abs(closed_vals[key] - vals[key]) * factor
            doc[f"{key}_{tag}_gap"] = _json_number(gap)
    return doc


def duality_document(model, grid_n: int = DEFAULT_GRID_N) -> dict:
    """Numerical check that pir(S) = mir(1/S) and mir(S) = pir(1/S)."""
    S = _model_psd(model, grid_n)
    inv = invert_spectrum(S)
    pir_s = pir_spectral(S)
    mir_inv = mir_spectral(inv)
    mir_s = mir_spectral(S)
    pir_inv = pir_spectral(inv)
    return {
        "grid_n": grid_n,
        "units": "nats",
        "pir": pir_s,
        "mir_of_inverse": mir_inv,
        "pir_duality_gap": abs(pir_s - mir_inv),
        "mir": mir_s,
        "pir_of_inverse": pir_inv,
        "mir_duality_gap": abs(mir_s - pir_inv),
    }


def oracle_reports(model, ell_max: int = 512, grid_n: int = DEFAULT_GRID_N) -> dict:
    """Convergence reports for the three truncation statistics.

    "next": entropy of the next variable given ell, against the entropy
    rate. "center": entropy of the central variable given both sides,
    against the spectral erasure rate. "szego": harmonic eigenvalue
    statistic against the reciprocal spectral mean.
    """
    schedule = truncation_schedule(ell_max)
    acov = _model_autocov(model, 2 * ell_max)
    S = _model_psd(model, grid_n)
    return {
        "next": convergence_report(
            cond_entropy_next, acov, schedule, entropy_rate_cf(model.sigma2)
        ),
        "center": convergence_report(
            cond_entropy_center, acov, schedule, erasure_rate_spectral(S)
        ),
        "szego": szego_harmonic_check(acov, ell_max, S, lengths=schedule),
    }
