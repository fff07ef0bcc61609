"""Covariance estimation from compressed observations.

The observed (biased) second-moment matrix built from back-projected
measurements, the exact linear de-biasing map, its closed-form inverse (the
expected observed matrix for a known covariance), rank truncation, and
principal-subspace extraction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, UnsupportedDimensionError
from .linalg import SymMatrix, spectral_norm, sym_eig, top_k_projector
from .sampling import Observation

# Projector sanity tolerances used by subspace_error.
PROJECTOR_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class CovEstimate:
    """A covariance estimate with the measurement geometry that produced it.

    ``method`` tags the pipeline: "observed", "debiased", "truncated(k)", or a
    baseline name such as "sample" or "hmt".
    """

    matrix: SymMatrix
    d: int
    m: int
    n: int
    method: str

    def __post_init__(self) -> None:
        if self.matrix.dim != self.d:
            raise InvalidInputError("estimate dimension does not match matrix")
        if not 1 <= self.m <= self.d:
            raise InvalidInputError("need 1 <= m <= d")
        if self.n < 1:
            raise InvalidInputError("need n >= 1")


def _stack_observations(obs: list[Observation]) -> tuple[np.ndarray, np.ndarray]:
    if not obs:
        raise InvalidInputError("need at least one observation")
    d, m = obs[0].basis.dim, obs[0].basis.rank
    for o in obs:
        if o.basis.dim != d or o.basis.rank != m:
            raise InvalidInputError("observations mix different (d, m) shapes")
    bases = np.stack([o.basis.columns for o in obs])
    z = np.stack([o.compressed for o in obs])
    return bases, z


def _backproject(bases: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Rows y_t = A_t z_t for stacked frames (n, d, m) and coordinates (n, m)."""
    return np.einsum("tdm,tm->td", bases, z)


def _observed_from_backprojection(y: np.ndarray, m: int) -> np.ndarray:
    """(d^2 / (n m^2)) * sum_t y_t y_t' for back-projected rows y (n, d)."""
    n, d = y.shape
    return (d * d / (n * m * m)) * (y.T @ y)


def observed_covariance(obs: list[Observation]) -> SymMatrix:
    """Scaled second-moment matrix of the back-projected observations.

    Each observation contributes y_t = A_t z_t; the average of y_t y_t' is
    scaled by d^2 / m^2. The result is a biased covariance estimate whose
    expectation over the random frames is ``expected_observed_cov`` of the
    sample covariance; :func:`debias` removes the bias exactly.
    """
    bases, z = _stack_observations(obs)
    y = _backproject(bases, z)
    return SymMatrix(_observed_from_backprojection(y, bases.shape[2]))


def _debias_coefficients(d: int, m: int) -> tuple[float, float]:
    denom = d * (d * m + d - 2)
    return m * (d + 2) * (d - 1) / denom, m * (d - m) / denom


def debias(s1: SymMatrix, m: int) -> SymMatrix:
    """Exact inverse of the frame-averaging bias.

    Maps the observed matrix S to a * S - b * tr(S) * I with
    a = m(d+2)(d-1) / (d(dm+d-2)) and b = m(d-m) / (d(dm+d-2)). For m = d both
    coefficients reduce so the map is the identity, bit for bit.
    """
    d = s1.dim
    if d < 2:
        raise UnsupportedDimensionError("de-biasing requires d >= 2")
    if not 1 <= m <= d:
        raise InvalidInputError(f"need 1 <= m <= d, got m={m}, d={d}")
    a, b = _debias_coefficients(d, m)
    out = a * s1.entries - (b * np.trace(s1.entries)) * np.eye(d)
    return SymMatrix(out)


def expected_observed_cov(sigma: SymMatrix, m: int) -> SymMatrix:
    """Expectation of the observed matrix when the data has covariance sigma.

    Closed form: (d(dm+d-2) * Sigma + d(d-m) * tr(Sigma) * I) / (m(d+2)(d-1)).
    Composing with :func:`debias` recovers sigma exactly; the trace is
    inflated by the factor d/m.
    """
    d = sigma.dim
    if d < 2:
        raise UnsupportedDimensionError("expected observed matrix requires d >= 2")
    if not 1 <= m <= d:
        raise InvalidInputError(f"need 1 <= m <= d, got m={m}, d={d}")
    denom = m * (d + 2) * (d - 1)
    num = d * (d * m + d - 2) * sigma.entries + (d * (d - m) * np.trace(sigma.entries)) * np.eye(d)
    return SymMatrix(num / denom)


def estimate(obs: list[Observation]) -> CovEstimate:
    """Unbiased covariance estimate from compressed observations."""
    bases, z = _stack_observations(obs)
    n, d, m = bases.shape
    s1 = SymMatrix(_observed_from_backprojection(_backproject(bases, z), m))
    return CovEstimate(debias(s1, m), d, m, n, "debiased")


def rank_truncate(est: CovEstimate, k: int, order: str = "signed") -> CovEstimate:
    """Keep k eigenvalues of the estimate and zero out the rest.

    ``order`` picks which eigenvalues survive: "signed" keeps the k
    algebraically largest (the right choice when the target is PSD), while
    "magnitude" keeps the k largest in absolute value.
    """
    d = est.d
    if not 1 <= k <= d:
        raise InvalidInputError(f"need 1 <= k <= d, got k={k}")
    if order not in ("signed", "magnitude"):
        raise InvalidInputError(f"unknown truncation order {order!r}")
    spec = sym_eig(est.matrix)
    if order == "signed":
        keep = np.arange(k)
    else:
        keep = np.argsort(-np.abs(spec.eigenvalues), kind="stable")[:k]
    v = spec.eigenvectors[:, keep]
    w = spec.eigenvalues[keep]
    truncated = SymMatrix((v * w) @ v.T)
    return CovEstimate(truncated, d, est.m, est.n, f"truncated({k})")


def subspace_estimate(est: CovEstimate, k: int) -> SymMatrix:
    """Projector onto the span of the k leading eigenvectors of the estimate."""
    return top_k_projector(sym_eig(est.matrix), k)


def subspace_error(p: SymMatrix, q: SymMatrix) -> float:
    """Spectral distance between two orthogonal projectors of equal rank.

    Both arguments must be idempotent to 1e-8 with integer traces agreeing to
    1e-8; the distance equals the sine of the largest principal angle.
    """
    for name, proj in (("first", p), ("second", q)):
        e = proj.entries
        if np.max(np.abs(e @ e - e)) > PROJECTOR_TOL:
            raise InvalidInputError(f"{name} argument is not a projector")
    if p.dim != q.dim:
        raise InvalidInputError("projectors live in different dimensions")
    if abs(np.trace(p.entries) - np.trace(q.entries)) > PROJECTOR_TOL:
        raise InvalidInputError("projectors have different ranks")
    return spectral_norm(SymMatrix(p.entries - q.entries))


def psd_clamp(est: CovEstimate) -> CovEstimate:
    """Optional post-processor: clip negative eigenvalues to zero.

    Not applied anywhere by default; the raw de-biased estimate is kept
    unbiased, and callers that need a PSD matrix opt in explicitly.
    """
    spec = sym_eig(est.matrix)
    w = np.maximum(spec.eigenvalues, 0.0)
    clamped = SymMatrix((spec.eigenvectors * w) @ spec.eigenvectors.T)
    return CovEstimate(clamped, est.d, est.m, est.n, est.method + "+psd")
