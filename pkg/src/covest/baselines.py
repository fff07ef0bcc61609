"""Reference estimators to compare against.

The uncompressed sample covariance, a randomized sketch-and-project estimator
in the style of classical randomized range finders, the single-shared-frame
estimator, and the closed-form error floor any fixed projection incurs.
"""

from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError, InvalidInputError, UnsupportedDimensionError
from .estimator import CovEstimate
from .linalg import Basis, DataMatrix, SymMatrix, orthonormalize
from .sampling import RngStream


def sample_covariance(x: DataMatrix) -> SymMatrix:
    """Uncentered sample covariance (1/n) X X'."""
    return SymMatrix((x.columns @ x.columns.T) / x.count)


def hmt_estimate(x: DataMatrix, m: int, rng: RngStream, oversample: int = 0) -> CovEstimate:
    """Randomized range-finder baseline with sketch dimension m.

    Draws a Gaussian test matrix R (n x (m + oversample)), orthonormalizes
    X R into Q, projects the data onto that single shared range, and returns
    the sample covariance of the projected data. One fresh retry is made if
    the Gaussian sketch happens to be numerically rank-deficient.
    """
    d, n = x.dim, x.count
    p = m + oversample
    if oversample < 0:
        raise InvalidInputError("oversample must be non-negative")
    if not 1 <= m <= min(d, n) or p > min(d, n):
        raise UnsupportedDimensionError(
            f"need 1 <= m and m + oversample <= min(d, n); got m={m}, oversample={oversample}"
        )
    gen = rng.generator()
    q: Basis | None = None
    for _ in range(2):
        try:
            q = orthonormalize(x.columns @ gen.standard_normal((n, p)))
            break
        except DegenerateInputError:
            continue
    if q is None:
        raise DegenerateInputError("sketch was rank-deficient twice; data may be degenerate")
    if q.rank == d:
        # The sketch spans all of R^d, so projecting is the identity map.
        projected = x.columns
    else:
        projected = q.columns @ (q.columns.T @ x.columns)
    return CovEstimate(SymMatrix((projected @ projected.T) / n), d, m, n, "hmt")


def shared_projection_estimate(sigma_hat: SymMatrix, basis: Basis) -> SymMatrix:
    """Compress an estimate through one fixed frame: A A' Sigma A A'.

    Whatever sigma_hat is, the result is confined to the m-dimensional range
    of the frame, which is what caps the accuracy of any single-projection
    scheme.
    """
    if basis.dim != sigma_hat.dim:
        raise InvalidInputError("basis and matrix dimensions differ")
    proj = basis.columns @ basis.columns.T
    return SymMatrix(proj @ sigma_hat.entries @ proj)


def fixed_projection_floor(eta: float, m: int, d: int) -> float:
    """Spectral error floor for estimators that reuse one m-dimensional frame.

    Over covariances with spectral norm at most eta, no estimator that sees
    the data only through a single fixed m-frame can beat
    (eta / sqrt(2)) * (1 - m/d)^(1/4) in the worst case; the floor vanishes
    only at m = d and scales linearly in eta.
    """
    if not 1 <= m <= d:
        raise UnsupportedDimensionError(f"need 1 <= m <= d, got m={m}, d={d}")
    if eta < 0:
        raise InvalidInputError("eta must be non-negative")
    return (eta / np.sqrt(2.0)) * (1.0 - m / d) ** 0.25
