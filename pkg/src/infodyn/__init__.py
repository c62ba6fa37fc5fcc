"""Information rates of stationary Gaussian AR/MA processes.

Entropy rate, multi-information rate, predictive information rate, and
erasure entropy rate, computed along three mutually-verifying paths:
closed-form coefficient expressions, spectral integrals, and finite
Toeplitz-matrix Gaussian entropies.
"""

from .closed_form import (
    NATS_PER_BIT,
    DivergentPIRError,
    InfoRates,
    OutOfRegionError,
    entropy_rate_cf,
    gamma0_ar2,
    info_rates,
    info_rates_spectral,
    mir_ar1,
    mir_ar2,
    mir_ar_general,
    mir_ma,
    pir_ar,
    pir_ma,
)
from .models import (
    ArModel,
    AutocovSequence,
    ConjugateViolationError,
    DegeneratePolynomialError,
    LagTooLargeError,
    MaModel,
    NonPositiveVarianceError,
    NotMinimumPhaseError,
    PoleSet,
    SingularSystemError,
    UnstableError,
    ZeroSet,
    ar_autocovariance,
    empirical_autocov,
    ma_autocovariance,
    ma_minimum_phase,
    make_ar,
    poles_to_ar,
    random_pole_set,
    sample_path,
)
from .oracle import (
    ConvergenceReport,
    EigenFailureError,
    McReport,
    NotPositiveDefiniteError,
    ToeplitzCov,
    block_entropy,
    cond_entropy_center,
    cond_entropy_next,
    mc_cross_check,
    pir_markov_block,
    szego_harmonic_check,
)
from .spectral import (
    DEFAULT_GRID_N,
    DivergentMeasureWarning,
    SpectralMeans,
    SpectrumGrid,
    ZeroOnGridError,
    entropy_rate_spectral,
    erasure_rate_spectral,
    invert_spectrum,
    mir_spectral,
    pir_spectral,
    psd_ar,
    psd_ma,
    spectral_means,
    write_spectrum_csv,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # models
    "ArModel",
    "MaModel",
    "PoleSet",
    "ZeroSet",
    "AutocovSequence",
    "make_ar",
    "poles_to_ar",
    "ar_autocovariance",
    "ma_autocovariance",
    "ma_minimum_phase",
    "sample_path",
    "empirical_autocov",
    "random_pole_set",
    # spectral
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
    "DEFAULT_GRID_N",
    # closed form
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
    "NATS_PER_BIT",
    # oracle
    "ToeplitzCov",
    "ConvergenceReport",
    "McReport",
    "block_entropy",
    "cond_entropy_next",
    "cond_entropy_center",
    "pir_markov_block",
    "szego_harmonic_check",
    "mc_cross_check",
    # errors and warnings
    "UnstableError",
    "NonPositiveVarianceError",
    "NotMinimumPhaseError",
    "ConjugateViolationError",
    "SingularSystemError",
    "LagTooLargeError",
    "DegeneratePolynomialError",
    "ZeroOnGridError",
    "DivergentMeasureWarning",
    "DivergentPIRError",
    "OutOfRegionError",
    "NotPositiveDefiniteError",
    "EigenFailureError",
]
