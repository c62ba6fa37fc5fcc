"""Power spectral densities on uniform circular grids and information
measures as spectral integrals.

The quadrature is the periodic trapezoid (= rectangle) rule on the
half-open grid omega_j = -pi + 2*pi*j/n, which is spectrally accurate for
the analytic spectra of stable finite-order models. Power-of-two grid
sizes make the built-in n-versus-n/2 convergence self-check a free
subsampling.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .models import ArModel, MaModel

__all__ = [
    "SpectrumGrid",
    "SpectralMeans",
    "psd_ar",
    "psd_ma",
    "spectral_means",
    "entropy_rate_spectral",
    "mir_spectral",
    "pir_spectral",
    "erasure_rate_spectral",
    "invert_spectrum",
    "write_spectrum_csv",
    "ZeroOnGridError",
    "DivergentMeasureWarning",
    "DEFAULT_GRID_N",
    "LOG_2PI_E",
]

DEFAULT_GRID_N = 2**14
POSITIVITY_FLOOR = 1e-300
EVEN_SYMMETRY_RTOL = 1e-12
SELF_CHECK_RTOL = 1e-9

LOG_2PI_E = np.log(2.0 * np.pi) + 1.0


class ZeroOnGridError(ValueError):
    """The spectrum vanishes (or underflows) at a grid point."""


class DivergentMeasureWarning(RuntimeWarning):
    """A spectral integral shows signs of divergence; results are partial."""


def _require_power_of_two(n):
    if n < 2 or n & (n - 1):
        raise ValueError(f"grid size must be a power of two >= 2, got {n}")


@dataclass(frozen=True, eq=False)
class SpectrumGrid:
    """Spectrum samples S(omega_j) at omega_j = -pi + 2*pi*j/n."""

    values: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=float)).copy()
        _require_power_of_two(v.size)
        if not np.all(np.isfinite(v)):
            raise ValueError("spectrum values must be finite")
        if v.min() <= 0.0:
            raise ValueError("spectrum values must be strictly positive")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    def omegas(self) -> np.ndarray:
        return -np.pi + 2.0 * np.pi * np.arange(self.n) / self.n


@dataclass(frozen=True)
class SpectralMeans:
    """Arithmetic, log (geometric), and reciprocal (harmonic) spectrum means."""

    mean_S: float
    mean_logS: float
    mean_invS: float

    def __post_init__(self):
        slack = 1.0 + 1e-12
        gm = np.exp(self.mean_logS)
        if self.mean_S * slack < gm or gm * slack < 1.0 / self.mean_invS:
            raise ValueError(
                "means violate the arithmetic >= geometric >= harmonic chain"
            )


def _transfer_power(coeffs, n):
    # sum_k c_k exp(-i omega_j k) on the grid equals the DFT of c_k (-1)^k
    signs = np.ones(len(coeffs))
    signs[1::2] = -1.0
    f = np.fft.fft(coeffs * signs, n)
    values = np.abs(f) ** 2
    # a real filter has an exactly even power response; FFT noise near
    # polynomial zeros breaks that at the scale*eps level, so symmetrise
    mirrored = np.concatenate((values[:1], values[:0:-1]))
    if not np.allclose(values, mirrored, rtol=0.0, atol=1e-9 * values.max()):
        raise ValueError("transfer power evaluation lost even symmetry")
    return 0.5 * (values + mirrored)


def _check_even(values):
    body = values[1:]
    ref = body[::-1]
    if not np.allclose(body, ref, rtol=EVEN_SYMMETRY_RTOL, atol=0.0):
        raise ValueError("spectrum of a real process must be even in omega")


def psd_ar(m: ArModel, n: int = DEFAULT_GRID_N) -> SpectrumGrid:
    """Sample S(omega) = sigma2 / |sum_k a_k e^{-i omega k}|^2, a = (1, -psi)."""
    _require_power_of_two(n)
    if n < 2 * (m.order + 1):
        raise ValueError(f"grid size {n} too small for order {m.order}")
    a = np.concatenate(([1.0], -m.psi))
    values = m.sigma2 / _transfer_power(a, n)
    _check_even(values)
    return SpectrumGrid(values)


def psd_ma(m: MaModel, n: int = DEFAULT_GRID_N) -> SpectrumGrid:
    """Sample S(omega) = sigma2 * |sum_k b_k e^{-i omega k}|^2.

    Zeros of B exactly on the unit circle can null a grid point; that is
    rejected rather than silently propagated into log/reciprocal means.
    """
    _require_power_of_two(n)
    if n < 2 * (m.order + 1):
        raise ValueError(f"grid size {n} too small for order {m.order}")
    values = m.sigma2 * _transfer_power(m.b, n)
    if values.min() < POSITIVITY_FLOOR:
        j = int(values.argmin())
        omega = -np.pi + 2.0 * np.pi * j / n
        raise ZeroOnGridError(
            f"S({omega:.6g}) = {values[j]:.3g} is not positive; "
            "regrid or perturb the model"
        )
    _check_even(values)
    return SpectrumGrid(values)


def spectral_means(S: SpectrumGrid, self_check: bool = True) -> SpectralMeans:
    """Periodic-trapezoid means of S, log S, and 1/S over the circle.

    With ``self_check`` the means are recomputed on the half-resolution
    subgrid; a relative discrepancy above 1e-9 signals a (near-)divergent
    integral and raises DivergentMeasureWarning while still returning the
    full-grid values.
    """
    v = S.values
    full = (float(v.mean()), float(np.log(v).mean()), float((1.0 / v).mean()))
    if self_check and S.n >= 4:
        half_v = v[::2]
        half = (half_v.mean(), np.log(half_v).mean(), (1.0 / half_v).mean())
        for name, a, b in zip(("S", "log S", "1/S"), full, half):
            # unit floor: means sitting at an analytic zero would otherwise
            # turn rounding noise into a relative discrepancy of order one
            scale = max(abs(a), abs(b), 1.0)
            if abs(a - b) > SELF_CHECK_RTOL * scale:
                warnings.warn(
                    f"mean of {name} changed by {abs(a - b) / scale:.3g} "
                    f"(relative) between n = {S.n // 2} and n = {S.n}; "
                    "the integral may diverge",
                    DivergentMeasureWarning,
                    stacklevel=2,
                )
    return SpectralMeans(*full)


def entropy_rate_spectral(S: SpectrumGrid) -> float:
    """Entropy rate (1/2)(log 2 pi e + mean log S), in nats per sample."""
    return 0.5 * (LOG_2PI_E + spectral_means(S).mean_logS)


def mir_spectral(S: SpectrumGrid) -> float:
    """Multi-information rate (1/2)(log mean S - mean log S); >= 0."""
    ms = spectral_means(S)
    return 0.5 * (np.log(ms.mean_S) - ms.mean_logS)


def pir_spectral(S: SpectrumGrid) -> float:
    """Predictive information rate (1/2)(log mean 1/S + mean log S); >= 0."""
    ms = spectral_means(S)
    return 0.5 * (np.log(ms.mean_invS) + ms.mean_logS)


def erasure_rate_spectral(S: SpectrumGrid) -> float:
    """Erasure entropy rate (1/2) log 2 pi e - (1/2) log mean 1/S."""
    ms = spectral_means(S)
    return 0.5 * (LOG_2PI_E - np.log(ms.mean_invS))


def invert_spectrum(S: SpectrumGrid) -> SpectrumGrid:
    """Pointwise reciprocal spectrum (an involution up to rounding)."""
    return SpectrumGrid(1.0 / S.values)


def write_spectrum_csv(S: SpectrumGrid, path) -> None:
    """Dump the grid as omega,S rows for plotting or debugging."""
    with open(path, "w", newline="") as fh:
        fh.write("omega,S\n")
        for w, s in zip(S.omegas(), S.values):
            fh.write(f"{w:.17g},{s:.17g}\n")
