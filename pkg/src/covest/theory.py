"""Evaluators for the estimator's error bounds and Monte-Carlo verifiers.

Closed-form bound expressions (entrywise and spectral, with their data-side
statistics), Gaussian tail thresholds, the KL divergence between compressed
Gaussians and its Monte-Carlo contraction rate, a projection-moment estimate,
the rate-collapse rescalings, and the eigenvector perturbation bound.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .linalg import (
    Basis,
    DataMatrix,
    SymMatrix,
    _sym_eig_array,
    _sym_entries,
    inf_norm,
    two_inf_norm,
)
from .sampling import RngStream, sample_random_bases

# Relative eigenvalue floor below which a compressed covariance is singular.
EIG_FLOOR = 1e-12

_MC_CHUNK = 4096


class BoundPreconditionWarning(UserWarning):
    """A bound was evaluated outside the regime in which it is proved."""


@dataclass(frozen=True)
class SampleStats:
    """Data-dependent quantities appearing in the error bounds.

    ``s1`` is the spectral norm of the norm-weighted second moment
    (1/n) sum ||x_t||^2 x_t x_t', ``s2`` the mean fourth-power column norm.
    """

    inf_x: float
    two_inf_x: float
    s1: float
    s2: float
    n: int
    d: int

    def __post_init__(self) -> None:
        if min(self.inf_x, self.two_inf_x, self.s1, self.s2) < 0:
            raise InvalidInputError("sample statistics must be non-negative")
        if self.n < 1 or self.d < 1:
            raise InvalidInputError("need n >= 1 and d >= 1")


@dataclass(frozen=True)
class GaussianTails:
    """High-probability thresholds for Gaussian data, each at level 1 - delta."""

    data_inf: float
    data_two_inf: float
    sample_cov_spectral: float
    sample_cov_inf: float


def compute_stats(x: DataMatrix) -> SampleStats:
    """Evaluate the bound statistics directly from the data columns."""
    cols = x.columns
    sq_norms = np.sum(cols * cols, axis=0)
    weighted = (cols * sq_norms) @ cols.T / x.count
    evals, _ = _sym_eig_array((weighted + weighted.T) / 2.0)
    s1 = max(abs(float(evals[0])), abs(float(evals[-1])))
    s2 = float(np.mean(sq_norms**2))
    return SampleStats(inf_norm(x), two_inf_norm(x), s1, s2, x.count, x.dim)


def _check_delta(delta: float) -> None:
    if not 0.0 < delta < 1.0:
        raise InvalidInputError("delta must lie in (0, 1)")


def inf_error_bound(
    stats: SampleStats, m: int, delta: float, kappa1: float = 1.0, kappa2: float = 1.0
) -> float:
    """Entrywise error bound for the de-biased estimator.

    kappa1 * ||X||_inf^2 * sqrt(d^2 log^2(nd/delta) / (n m^2)) plus the
    second-order term kappa2 * ||X||_inf^2 * d^2 log^2(nd/delta) / (n m^2).
    The constants are not pinned down by the analysis, so they default to 1
    and the evaluator is used for shape and monotonicity rather than absolute
    certification. Evaluating outside the proved regime (d >= 2 and
    delta >= 4 d^2 exp(-n/12)) emits a warning instead of failing.
    """
    _check_delta(delta)
    n, d = stats.n, stats.d
    if d < 2 or delta < 4 * d * d * np.exp(-n / 12.0):
        warnings.warn(
            "entrywise bound evaluated outside its proved regime",
            BoundPreconditionWarning,
            stacklevel=2,
        )
    log_term = np.log(n * d / delta)
    ratio = d * d * log_term * log_term / (n * m * m)
    scale = stats.inf_x**2
    return float(kappa1 * scale * np.sqrt(ratio) + kappa2 * scale * ratio)


def spectral_error_bound(
    stats: SampleStats, m: int, delta: float, kappa1: float = 1.0, kappa2: float = 1.0
) -> float:
    """Spectral error bound for the de-biased estimator.

    kappa1 * (sqrt((d/m) S1) + sqrt((d/m^2) S2)) * sqrt(log(d/delta) / n)
    plus kappa2 * d ||X||_{2,inf}^2 log(d/delta) / (n m). Proved for d >= 2;
    evaluating below that emits a warning.
    """
    _check_delta(delta)
    n, d = stats.n, stats.d
    if d < 2:
        warnings.warn(
            "spectral bound evaluated outside its proved regime",
            BoundPreconditionWarning,
            stacklevel=2,
        )
    log_term = np.log(d / delta)
    lead = (np.sqrt(d / m * stats.s1) + np.sqrt(d / (m * m) * stats.s2)) * np.sqrt(log_term / n)
    tail = d * stats.two_inf_x**2 * log_term / (n * m)
    return float(kappa1 * lead + kappa2 * tail)


def gaussian_tail_bounds(
    sigma: SymMatrix, n: int, delta: float, c: float = 1.0
) -> GaussianTails:
    """The four Gaussian tail thresholds used to instantiate the bounds.

    Each holds with probability at least 1 - delta for n draws from
    N(0, sigma): max-abs data entry, max column norm, spectral deviation of
    the sample covariance (with unspecified universal constant ``c``), and
    entrywise deviation of the sample covariance.
    """
    _check_delta(delta)
    if n < 1:
        raise InvalidInputError("need n >= 1")
    d = sigma.dim
    s_inf = inf_norm(sigma)
    evals, _ = _sym_eig_array(sigma.entries)
    s_spec = max(abs(float(evals[0])), abs(float(evals[-1])))
    trace = float(np.trace(sigma.entries))
    return GaussianTails(
        data_inf=float(np.sqrt(2.0 * s_inf * np.log(n * d / delta))),
        data_two_inf=float(np.sqrt(2.0 * trace * np.log(n * d / delta))),
        sample_cov_spectral=float(s_spec * np.sqrt(c * np.log(2.0 / delta) / n)),
        sample_cov_inf=float(s_inf * np.sqrt(np.log(2.0 * d / delta) / n)),
    )


def kl_compressed_gaussian(
    sigma0: SymMatrix | np.ndarray,
    sigma1: SymMatrix | np.ndarray,
    u: Basis | np.ndarray,
) -> float:
    """KL divergence between the two Gaussians seen through the frame u.

    Computes (1/2)(tr(C0^{-1} C1) - m - log det(C0^{-1} C1)) for
    C_i = U' Sigma_i U. The inverse goes through an eigendecomposition with a
    1e-12 relative floor; a singular compressed sigma0 is rejected. Equal
    inputs short-circuit to exactly zero.
    """
    s0 = _sym_entries(sigma0)
    s1 = _sym_entries(sigma1)
    cols = u.columns if isinstance(u, Basis) else np.asarray(u, dtype=np.float64)
    if s0.shape != s1.shape or cols.shape[0] != s0.shape[0]:
        raise InvalidInputError("covariances and frame have mismatched dimensions")
    m = cols.shape[1]
    c0 = cols.T @ (s0 @ cols)
    c1 = cols.T @ (s1 @ cols)
    if np.array_equal(c0, c1):
        return 0.0
    w0, v0 = _sym_eig_array((c0 + c0.T) / 2.0)
    if w0[-1] <= EIG_FLOOR * abs(w0[0]) or w0[0] <= 0.0:
        raise InvalidInputError("compressed sigma0 is singular")
    white = v0 / np.sqrt(w0)
    b = white.T @ ((c1 + c1.T) / 2.0) @ white
    mu, _ = _sym_eig_array((b + b.T) / 2.0)
    if mu[-1] <= 0.0:
        raise InvalidInputError("compressed sigma1 is singular")
    return 0.5 * float(np.sum(mu) - m - np.sum(np.log(mu)))


def mc_kl_contraction(
    d: int, m: int, gamma: float, eta: float, reps: int, rng: RngStream
) -> float:
    """Monte-Carlo average compressed KL between eta*I and eta*I + gamma*e1 e1'.

    Each rep draws its own Haar frame from ``rng.child(rep)`` and evaluates
    :func:`kl_compressed_gaussian`; the average measures how much the random
    compression contracts the information about the spike, and is bounded by
    (3/2)(gamma/eta)^2 m^2/d^2.
    """
    if eta <= 0 or gamma < -eta:
        raise InvalidInputError("need eta > 0 and gamma >= -eta")
    if reps < 1:
        raise InvalidInputError("need reps >= 1")
    s0 = eta * np.eye(d)
    s1 = s0.copy()
    s1[0, 0] += gamma
    total = 0.0
    for start in range(0, reps, _MC_CHUNK):
        stop = min(start + _MC_CHUNK, reps)
        frames = sample_random_bases(d, m, rng, stop - start, first_index=start)
        for i in range(stop - start):
            total += kl_compressed_gaussian(s0, s1, frames[i])
    return total / reps


def frob_projection_moment(d: int, m: int, reps: int, rng: RngStream) -> float:
    """Monte-Carlo average of ||U' e1||^4 over Haar frames U.

    Matches the exact fourth-moment product ``beta_moment(m, d, 2)``; for
    m = d the projection is the identity, so the value is exactly 1 with no
    sampling. Per-rep frames come from ``rng.child(rep)``.
    """
    if not 1 <= m <= d:
        raise InvalidInputError(f"need 1 <= m <= d, got m={m}, d={d}")
    if reps < 1:
        raise InvalidInputError("need reps >= 1")
    if m == d:
        return 1.0
    total = 0.0
    for start in range(0, reps, _MC_CHUNK):
        stop = min(start + _MC_CHUNK, reps)
        frames = sample_random_bases(d, m, rng, stop - start, first_index=start)
        w = np.sum(frames[:, 0, :] ** 2, axis=1)
        total += float(np.sum(w * w))
    return total / reps


def rescale_error(
    err: float, n: int, m: int, d: int, norm_kind: str, variant: str = "d3_text"
) -> float:
    """Multiply an error by the factor that collapses curves across (d, m, n).

    For the entrywise norm the factor is sqrt(n m^2 / (d^2 log^3 d)). For the
    spectral norm two variants circulate: ``d3_text`` (default) uses
    sqrt(n m^2 / d^3) and ``d2_caption`` uses sqrt(n m^2 / d^2).
    """
    if err < 0:
        raise InvalidInputError("error must be non-negative")
    if n < 1 or not 1 <= m <= d or d < 2:
        raise InvalidInputError("need n >= 1 and 1 <= m <= d with d >= 2")
    if norm_kind == "inf":
        factor = np.sqrt(n * m * m / (d * d * np.log(d) ** 3))
    elif norm_kind == "spectral":
        if variant == "d3_text":
            factor = np.sqrt(n * m * m / d**3)
        elif variant == "d2_caption":
            factor = np.sqrt(n * m * m / d**2)
        else:
            raise InvalidInputError(f"unknown rescale variant {variant!r}")
    else:
        raise InvalidInputError(f"unknown norm kind {norm_kind!r}")
    return float(err * factor)


def davis_kahan_bound(gap: float, perturbation_norm: float) -> float:
    """Eigenvector perturbation bound: sine of the angle is at most norm/gap."""
    if gap <= 0:
        raise InvalidInputError("eigengap must be positive")
    if perturbation_norm < 0:
        raise InvalidInputError("perturbation norm must be non-negative")
    return perturbation_norm / gap
