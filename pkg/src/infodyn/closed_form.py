"""Coefficient-domain formulas for the four information rates.

The fastest and most accurate path: entropy rate from sigma2 alone,
predictive information from the squared coefficient norm, and the AR/MA
duality that maps the multi-information of one family onto the predictive
information of the other through spectrum inversion.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .models import (
    ArModel,
    MaModel,
    NonPositiveVarianceError,
    SingularSystemError,
    ar_autocovariance,
    characteristic_roots,
)
from .spectral import (
    DEFAULT_GRID_N,
    LOG_2PI_E,
    DivergentMeasureWarning,
    SpectrumGrid,
    invert_spectrum,
    mir_spectral,
    psd_ma,
    spectral_means,
)

__all__ = [
    "InfoRates",
    "pir_ar",
    "entropy_rate_cf",
    "mir_ar1",
    "mir_ar2",
    "gamma0_ar2",
    "mir_ar_general",
    "mir_ma",
    "pir_ma",
    "info_rates",
    "info_rates_spectral",
    "DivergentPIRError",
    "OutOfRegionError",
    "NATS_PER_BIT",
]

NATS_PER_BIT = np.log(2.0)
# A zero this close to the unit circle makes the PIR effectively infinite.
DIVERGENCE_TOL = 1e-6
NEAR_DIVERGENT_MODULUS = 0.99


class DivergentPIRError(ValueError):
    """Predictive information rate diverges (zero on the unit circle)."""


class OutOfRegionError(ValueError):
    """Coefficients outside the stability region."""


@dataclass(frozen=True)
class InfoRates:
    """The four process information measures with a unit tag.

    h and r are differential entropies and may be negative; rho and b are
    mutual informations and must be non-negative. The decomposition
    h = b + r holds by construction.
    """

    h: float
    rho: float
    b: float
    r: float
    units: str = "nats"

    def __post_init__(self):
        if self.units not in ("nats", "bits"):
            raise ValueError(f"units must be 'nats' or 'bits', got {self.units!r}")
        if self.rho < -1e-12 or self.b < -1e-12:
            raise ValueError(f"negative information rate: rho={self.rho}, b={self.b}")
        if abs(self.h - (self.b + self.r)) > 1e-12:
            raise ValueError(
                f"h = {self.h} does not decompose as b + r = {self.b + self.r}"
            )

    def in_units(self, units: str) -> "InfoRates":
        if units == self.units:
            return self
        if units == "bits":
            f = 1.0 / NATS_PER_BIT
        elif units == "nats":
            f = NATS_PER_BIT
        else:
            raise ValueError(f"units must be 'nats' or 'bits', got {units!r}")
        return InfoRates(self.h * f, self.rho * f, self.b * f, self.r * f, units)


def _half_log1p_sumsq(coeffs) -> float:
    # shared by pir_ar and mir_ma so the duality is bit-identical
    c = np.atleast_1d(np.asarray(coeffs, dtype=float))
    if c.size == 0:
        return 0.0
    return 0.5 * np.log1p(np.dot(c, c))


def pir_ar(model_or_psi) -> float:
    """(1/2) log(1 + sum psi_k^2); independent of sigma2.

    Accepts an ArModel or a raw coefficient vector (the expression is well
    defined even outside the stability region, where it gives the limiting
    value approached from inside).
    """
    psi = model_or_psi.psi if isinstance(model_or_psi, ArModel) else model_or_psi
    return _half_log1p_sumsq(psi)


def entropy_rate_cf(sigma2) -> float:
    """(1/2) log(2 pi e sigma2), valid for both AR and MA models."""
    if not sigma2 > 0.0:
        raise NonPositiveVarianceError(f"sigma2 must be > 0, got {sigma2}")
    return 0.5 * (LOG_2PI_E + np.log(sigma2))


def mir_ar1(psi1) -> float:
    """-(1/2) log(1 - psi1^2) for a unit-variance-normalised AR(1)."""
    if abs(psi1) >= 1.0:
        raise OutOfRegionError(f"|psi1| = {abs(psi1)} >= 1")
    return -0.5 * np.log1p(-psi1 * psi1)


def _ar2_denominator(psi1, psi2):
    return 1.0 - (psi1 * psi1 + psi2) * (1.0 + psi2) + psi2**3


def mir_ar2(psi1, psi2) -> float:
    """(1/2) log[(1 - psi2) / (1 - (psi1^2 + psi2)(1 + psi2) + psi2^3)]."""
    roots = characteristic_roots([psi1, psi2])
    if np.abs(roots).max() >= 1.0 - 1e-9:
        raise OutOfRegionError(f"({psi1}, {psi2}) outside the stability region")
    return 0.5 * np.log((1.0 - psi2) / _ar2_denominator(psi1, psi2))


def gamma0_ar2(m: ArModel) -> float:
    """Marginal variance of an AR(2) model in closed form."""
    if m.order != 2:
        raise ValueError(f"expected an AR(2) model, got order {m.order}")
    p1, p2 = m.psi
    return m.sigma2 * (1.0 - p2) / _ar2_denominator(p1, p2)


def mir_ar_general(m: ArModel) -> float:
    """(1/2) log(gamma_0 / sigma2) with gamma_0 from the Yule-Walker system."""
    if m.order == 0:
        return 0.0
    g0 = ar_autocovariance(m, 0).gamma[0]
    return 0.5 * np.log(g0 / m.sigma2)


def mir_ma(model_or_tail) -> float:
    """(1/2) log(sum b_k^2) with b_0 = 1.

    Accepts an MaModel or the raw tail b_1..b_N; the latter evaluates the
    same expression as ``pir_ar`` on the same vector, bit for bit.
    """
    tail = model_or_tail.b[1:] if isinstance(model_or_tail, MaModel) else model_or_tail
    return _half_log1p_sumsq(tail)


def pir_ma(m: MaModel, grid_n: int = DEFAULT_GRID_N) -> float:
    """Predictive information rate of a strictly minimum-phase MA model.

    MA(1) has the exact form -(1/2) log(1 - b1^2). Higher orders go
    through spectrum inversion: the coefficients reinterpreted as the IIR
    denominator define the autoregression with the reciprocal spectrum,
    whose multi-information rate equals this model's PIR. ``grid_n`` sets
    the fallback spectral resolution if that Yule-Walker system is too
    ill-conditioned to solve.
    """
    zs = m.zeros()
    if zs.size == 0:
        return 0.0
    worst = float(np.abs(zs).max())
    if worst >= 1.0 - DIVERGENCE_TOL:
        raise DivergentPIRError(
            f"zero with modulus {worst:.17g} within {DIVERGENCE_TOL:.0e} of the "
            "unit circle: the predictive information rate diverges to +inf"
        )
    if worst > NEAR_DIVERGENT_MODULUS:
        warnings.warn(
            f"zero modulus {worst:.6g} close to the unit circle; "
            "the predictive information rate is near-divergent",
            DivergentMeasureWarning,
            stacklevel=2,
        )
    if m.order == 1:
        b1 = m.b[1]
        return -0.5 * np.log1p(-b1 * b1)
    dual = ArModel(-m.b[1:], 1.0)
    try:
        return mir_ar_general(dual)
    except SingularSystemError:
        return mir_spectral(invert_spectrum(psd_ma(m, grid_n)))


def info_rates(m, grid_n: int = DEFAULT_GRID_N) -> InfoRates:
    """All four measures of an AR or MA model by the closed-form path."""
    if isinstance(m, ArModel):
        h = entropy_rate_cf(m.sigma2)
        rho = mir_ar_general(m)
        b = pir_ar(m)
    elif isinstance(m, MaModel):
        h = entropy_rate_cf(m.sigma2)
        rho = mir_ma(m)
        b = pir_ma(m, grid_n)
    else:
        raise TypeError(f"expected ArModel or MaModel, got {type(m).__name__}")
    return InfoRates(h, rho, b, h - b)


def info_rates_spectral(S: SpectrumGrid) -> InfoRates:
    """All four measures from one pass over a spectrum grid."""
    ms = spectral_means(S)
    h = 0.5 * (LOG_2PI_E + ms.mean_logS)
    rho = 0.5 * (np.log(ms.mean_S) - ms.mean_logS)
    b = 0.5 * (np.log(ms.mean_invS) + ms.mean_logS)
    r = 0.5 * (LOG_2PI_E - np.log(ms.mean_invS))
    return InfoRates(h, rho, b, r)
