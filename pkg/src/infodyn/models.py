"""Gaussian AR(N) and MA(N) process models.

Construction and validation (stability, minimum phase, conjugate-closed
root sets), exact autocovariance sequences, and seeded path sampling.
All model values are immutable after construction and safe to share
between threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.signal

__all__ = [
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
    "characteristic_roots",
    "UnstableError",
    "NonPositiveVarianceError",
    "NotMinimumPhaseError",
    "ConjugateViolationError",
    "SingularSystemError",
    "LagTooLargeError",
    "DegeneratePolynomialError",
]

# Roots recovered numerically from expanded coefficients carry eigensolver
# noise; the margin keeps downstream quadrature and solves well conditioned.
STABILITY_MARGIN = 1e-9
# MA zeros may sit on the unit circle; the slack absorbs root-finding noise
# for repeated zeros.
MIN_PHASE_TOL = 1e-6
CONJUGATE_TOL = 1e-12
# Yule-Walker systems beyond this condition number give meaningless gammas.
YULE_WALKER_COND_LIMIT = 1e12


class UnstableError(ValueError):
    """A characteristic root lies on or outside the unit circle."""


class NonPositiveVarianceError(ValueError):
    """Innovation variance must be strictly positive."""


class NotMinimumPhaseError(ValueError):
    """An MA zero lies strictly outside the unit disk."""


class ConjugateViolationError(ValueError):
    """A root multiset is not closed under complex conjugation."""


class SingularSystemError(ValueError):
    """The Yule-Walker system is numerically singular."""


class LagTooLargeError(ValueError):
    """Requested lag exceeds what the data can support."""


class DegeneratePolynomialError(ValueError):
    """All-zero coefficient vector."""


def _float_vector(x, name):
    v = np.atleast_1d(np.asarray(x, dtype=float)).copy()
    if v.ndim != 1:
        raise ValueError(f"{name} must be one-dimensional")
    if v.size and not np.all(np.isfinite(v)):
        raise ValueError(f"{name} must be finite")
    v.setflags(write=False)
    return v


def characteristic_roots(psi):
    """Roots of z^N - psi_1 z^(N-1) - ... - psi_N (the filter poles)."""
    psi = np.asarray(psi, dtype=float)
    if psi.size == 0:
        return np.empty(0, dtype=complex)
    return np.roots(np.concatenate(([1.0], -psi)))


def _check_conjugate_closed(values):
    """Greedy pairing of non-real elements with their conjugates."""
    tol = CONJUGATE_TOL * (1.0 + np.abs(values))
    upper = [i for i in range(values.size) if values[i].imag > tol[i]]
    lower = [i for i in range(values.size) if values[i].imag < -tol[i]]
    for i in upper:
        if not lower:
            raise ConjugateViolationError(f"no conjugate partner for {values[i]}")
        dists = [abs(values[i] - np.conj(values[j])) for j in lower]
        jbest = int(np.argmin(dists))
        if dists[jbest] > tol[i]:
            raise ConjugateViolationError(
                f"no conjugate partner for {values[i]} within tolerance"
            )
        lower.pop(jbest)
    if lower:
        raise ConjugateViolationError(f"unpaired conjugate element {values[lower[0]]}")


@dataclass(frozen=True, eq=False)
class PoleSet:
    """Conjugate-closed multiset of filter poles strictly inside the unit disk."""

    values: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=complex)).copy()
        if v.size and np.abs(v).max() >= 1.0:
            worst = v[np.abs(v).argmax()]
            raise UnstableError(f"pole {worst} has modulus {abs(worst):.17g} >= 1")
        _check_conjugate_closed(v)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True, eq=False)
class ZeroSet:
    """Conjugate-closed multiset of FIR zeros inside or on the unit circle."""

    values: np.ndarray

    def __post_init__(self):
        v = np.atleast_1d(np.asarray(self.values, dtype=complex)).copy()
        if v.size and np.abs(v).max() > 1.0:
            worst = v[np.abs(v).argmax()]
            raise NotMinimumPhaseError(
                f"zero {worst} has modulus {abs(worst):.17g} > 1"
            )
        _check_conjugate_closed(v)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True, eq=False)
class ArModel:
    """Stable autoregression X_t = U_t + sum_{k=1..N} psi_k X_{t-k}.

    Parameters
    ----------
    psi : array of float
        Prediction coefficients psi_1..psi_N. Empty means white noise.
    sigma2 : float
        Innovation variance, > 0.
    roots : array of complex, optional
        Characteristic roots when already known exactly (e.g. the model was
        built from its poles). If omitted they are computed from ``psi``
        and judged against a stability margin; supplied roots are trusted
        and only required to lie strictly inside the unit disk.
    """

    psi: np.ndarray
    sigma2: float
    roots: np.ndarray | None = None

    def __post_init__(self):
        psi = _float_vector(self.psi, "psi")
        object.__setattr__(self, "psi", psi)
        sigma2 = float(self.sigma2)
        if not sigma2 > 0.0:
            raise NonPositiveVarianceError(f"sigma2 must be > 0, got {sigma2}")
        object.__setattr__(self, "sigma2", sigma2)
        if self.roots is None:
            roots = characteristic_roots(psi)
            limit = 1.0 - STABILITY_MARGIN
        else:
            roots = np.atleast_1d(np.asarray(self.roots, dtype=complex)).copy()
            if roots.size != psi.size:
                raise ValueError("number of roots must equal the model order")
            limit = 1.0
        if roots.size:
            worst = int(np.abs(roots).argmax())
            if abs(roots[worst]) >= limit:
                raise UnstableError(
                    f"characteristic root {roots[worst]} has modulus "
                    f"{abs(roots[worst]):.17g} >= {limit:.17g}"
                )
        roots.setflags(write=False)
        object.__setattr__(self, "roots", roots)

    @property
    def order(self) -> int:
        return self.psi.size

    @property
    def max_root_modulus(self) -> float:
        return float(np.abs(self.roots).max()) if self.order else 0.0


@dataclass(frozen=True, eq=False)
class MaModel:
    """Moving average X_t = sum_{k=0..N} b_k U_{t-k} with b[0] = 1.

    The constructor rejects coefficient vectors whose zeros lie strictly
    outside the unit disk; run ``ma_minimum_phase`` first to normalise an
    arbitrary FIR vector. Zeros exactly on the circle are allowed.
    """

    b: np.ndarray
    sigma2: float

    def __post_init__(self):
        b = _float_vector(self.b, "b")
        if b.size == 0 or b[0] != 1.0:
            raise ValueError("b[0] must be exactly 1")
        object.__setattr__(self, "b", b)
        sigma2 = float(self.sigma2)
        if not sigma2 > 0.0:
            raise NonPositiveVarianceError(f"sigma2 must be > 0, got {sigma2}")
        object.__setattr__(self, "sigma2", sigma2)
        zs = self.zeros()
        if zs.size and np.abs(zs).max() > 1.0 + MIN_PHASE_TOL:
            worst = zs[np.abs(zs).argmax()]
            raise NotMinimumPhaseError(
                f"zero {worst} has modulus {abs(worst):.17g} > 1; "
                "normalise with ma_minimum_phase first"
            )

    @property
    def order(self) -> int:
        return self.b.size - 1

    def zeros(self) -> np.ndarray:
        """Zeros of B(z) = sum_k b_k z^-k."""
        if self.order == 0:
            return np.empty(0, dtype=complex)
        return np.roots(self.b)


@dataclass(frozen=True, eq=False)
class AutocovSequence:
    """Autocovariances gamma_0..gamma_max_lag of a stationary process."""

    gamma: np.ndarray
    max_lag: int

    def __post_init__(self):
        g = _float_vector(self.gamma, "gamma")
        if g.size != self.max_lag + 1:
            raise ValueError("gamma must have max_lag + 1 entries")
        if not g[0] > 0.0:
            raise ValueError(f"gamma[0] must be > 0, got {g[0]}")
        if np.abs(g).max() > g[0] * (1.0 + 1e-12):
            k = int(np.abs(g).argmax())
            raise ValueError(f"|gamma[{k}]| = {abs(g[k]):.17g} exceeds gamma[0]")
        object.__setattr__(self, "gamma", g)


def make_ar(psi, sigma2) -> ArModel:
    """Validate and build a stable AR model from prediction coefficients."""
    return ArModel(np.asarray(psi, dtype=float), sigma2)


def poles_to_ar(poles, sigma2) -> ArModel:
    """Build an AR model whose transfer function has the given poles.

    Expands prod_k (z - zeta_k) into the characteristic polynomial
    z^N - psi_1 z^(N-1) - ... - psi_N. The supplied poles are kept as the
    model's roots, so high-multiplicity configurations near the circle do
    not suffer the ill-conditioning of re-finding roots from coefficients.
    """
    ps = poles if isinstance(poles, PoleSet) else PoleSet(np.asarray(poles, dtype=complex))
    if len(ps) == 0:
        return ArModel(np.empty(0), sigma2, roots=np.empty(0, dtype=complex))
    coeffs = np.poly(ps.values)
    if np.iscomplexobj(coeffs):
        # conjugate closure already verified; drop pairing residue
        coeffs = coeffs.real
    return ArModel(-coeffs[1:], sigma2, roots=ps.values)


def random_pole_set(order, rng, radial_bias=1.0, max_modulus=1.0) -> PoleSet:
    """Sample a conjugate-closed pole set inside the unit disk.

    Moduli are drawn as ``max_modulus * u**(0.5/radial_bias)`` with u
    uniform on [0, 1); radial_bias = 1 is uniform over the disk area and
    larger values push poles toward the circle. Odd orders get one real
    pole with a random sign.
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    if radial_bias <= 0:
        raise ValueError("radial_bias must be > 0")
    if not 0.0 < max_modulus <= 1.0:
        raise ValueError("max_modulus must be in (0, 1]")
    n_pairs, n_real = divmod(order, 2)
    poles = []
    for _ in range(n_pairs):
        r = max_modulus * rng.random() ** (0.5 / radial_bias)
        th = rng.uniform(0.0, np.pi)
        z = r * np.exp(1j * th)
        poles.extend([z, np.conj(z)])
    if n_real:
        r = max_modulus * rng.random() ** (0.5 / radial_bias)
        sign = 1.0 if rng.random() < 0.5 else -1.0
        poles.append(complex(sign * r))
    return PoleSet(np.asarray(poles, dtype=complex))


def ar_autocovariance(m: ArModel, max_lag: int) -> AutocovSequence:
    """Exact autocovariances of a stable AR model.

    Solves the order-N Yule-Walker system for gamma_0..gamma_N and extends
    with the linear recursion gamma_k = sum_i psi_i gamma_{k-i} for k > N,
    which costs O(max_lag) instead of growing the solve.
    """
    if max_lag < 0:
        raise ValueError("max_lag must be >= 0")
    N = m.order
    if N == 0:
        gamma = np.zeros(max_lag + 1)
        gamma[0] = m.sigma2
        return AutocovSequence(gamma, max_lag)
    A = np.zeros((N + 1, N + 1))
    for k in range(N + 1):
        A[k, k] += 1.0
        for i in range(1, N + 1):
            A[k, abs(k - i)] -= m.psi[i - 1]
    rhs = np.zeros(N + 1)
    rhs[0] = m.sigma2
    cond = np.linalg.cond(A)
    if not np.isfinite(cond) or cond > YULE_WALKER_COND_LIMIT:
        raise SingularSystemError(
            f"Yule-Walker matrix condition {cond:.3g} exceeds "
            f"{YULE_WALKER_COND_LIMIT:.0e}; stability margin too small"
        )
    try:
        head = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystemError(f"Yule-Walker solve failed: {exc}") from exc
    gamma = np.empty(max_lag + 1)
    upto = min(N, max_lag)
    gamma[: upto + 1] = head[: upto + 1]
    for k in range(N + 1, max_lag + 1):
        gamma[k] = np.dot(m.psi, gamma[k - 1 : k - N - 1 : -1])
    try:
        return AutocovSequence(gamma, max_lag)
    except ValueError as exc:
        raise SingularSystemError(
            f"Yule-Walker solution violates autocovariance bounds: {exc}"
        ) from exc


def ma_autocovariance(m: MaModel, max_lag: int) -> AutocovSequence:
    """Autocovariances gamma_k = sigma2 * sum_{j=k..N} b_j b_{j-k}, zero past N."""
    if max_lag < 0:
        raise ValueError("max_lag must be >= 0")
    full = m.sigma2 * np.correlate(m.b, m.b, mode="full")[m.order :]
    gamma = np.zeros(max_lag + 1)
    upto = min(m.order, max_lag)
    gamma[: upto + 1] = full[: upto + 1]
    return AutocovSequence(gamma, max_lag)


def ma_minimum_phase(b):
    """Reflect FIR zeros outside the unit disk to their conjugate reciprocals.

    Parameters
    ----------
    b : array of float
        FIR coefficients with b[0] != 0.

    Returns
    -------
    coeffs : array of float
        Minimum-phase coefficients with coeffs[0] = 1.
    gain : float
        Variance factor absorbing the reflected |zeta|^2 terms and the
        leading coefficient: a model (coeffs, sigma2 * gain) has the same
        power spectrum as the input (b, sigma2) at every frequency.
    """
    v = _float_vector(b, "b")
    if not v.size or not np.any(v != 0.0):
        raise DegeneratePolynomialError("all-zero coefficient vector")
    if v[0] == 0.0:
        raise ValueError("b[0] must be nonzero")
    gain = v[0] ** 2
    poly = v / v[0]
    if poly.size == 1:
        return poly, float(gain)
    roots = np.roots(poly)
    mods = np.abs(roots)
    outside = mods > 1.0
    if np.any(outside):
        gain *= np.prod(mods[outside] ** 2)
        roots[outside] = 1.0 / np.conj(roots[outside])
        poly = np.poly(roots)
        if np.iscomplexobj(poly):
            poly = poly.real
    out = np.asarray(poly, dtype=float)
    out.setflags(write=False)
    return out, float(gain)


def _burn_in_length(m: ArModel) -> int:
    # long memory needs a longer warm-up; all-zero roots are exact immediately
    rmax = m.max_root_modulus
    if m.order == 0 or rmax == 0.0:
        return 1000 if m.order else 0
    return int(np.ceil(max(1000.0, 50.0 * m.order / -np.log(rmax))))


def sample_path(m, n: int, seed) -> np.ndarray:
    """Draw a length-n realisation of the process, deterministic in seed.

    MA paths are exactly stationary (the first N innovations are drawn as
    pre-history); AR paths start from zeros and discard a burn-in of
    max(1000, 50 N / -log max|root|) samples.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = np.random.default_rng(seed)
    sd = np.sqrt(m.sigma2)
    if isinstance(m, MaModel):
        u = rng.normal(0.0, sd, n + m.order)
        return np.convolve(u, m.b, mode="valid")
    if m.order == 0:
        return rng.normal(0.0, sd, n)
    burn = _burn_in_length(m)
    u = rng.normal(0.0, sd, burn + n)
    a = np.concatenate(([1.0], -m.psi))
    x = scipy.signal.lfilter([1.0], a, u)
    return x[burn:]


def empirical_autocov(path, max_lag: int) -> AutocovSequence:
    """Biased estimator gamma_hat_k = (1/n) sum_t x_t x_{t-k}.

    The 1/n normalisation keeps the estimated sequence positive
    semidefinite, at the price of a small bias at large lags.
    """
    x = np.asarray(path, dtype=float)
    n = x.size
    if max_lag >= n:
        raise LagTooLargeError(f"max_lag {max_lag} >= path length {n}")
    if max_lag < 0:
        raise ValueError("max_lag must be >= 0")
    gamma = np.empty(max_lag + 1)
    for k in range(max_lag + 1):
        gamma[k] = np.dot(x[k:], x[: n - k]) / n
    return AutocovSequence(gamma, max_lag)
