"""Monte-Carlo drivers over redrawn random frames.

Shared by the theory checks and the acceptance experiments: the redraw-mean
of the estimator for a fixed data set, and the Kolmogorov-Smirnov distance of
squared projection lengths against their exact Beta law. Rep r of any driver
uses the stream ``rng.child(r)``, so results are independent of chunking,
thread schedule, and rep order.
"""

from __future__ import annotations

import numpy as np
from scipy.special import betainc

from .errors import InvalidInputError, UnsupportedDimensionError
from .estimator import _debias_coefficients
from .linalg import DataMatrix
from .sampling import RngStream, _descend_generator, _orthonormalize_stack, sample_random_bases

_REP_CHUNK = 512


def mc_estimate_mean(
    x: DataMatrix, m: int, reps: int, rng: RngStream
) -> tuple[np.ndarray, np.ndarray]:
    """Mean and standard error of the estimator over redrawn projections.

    Recomputes the de-biased estimate ``reps`` times for the same data, rep r
    drawing its frames exactly as ``estimate(compress(x, m, rng.child(r)))``
    would, and returns the entrywise mean and Monte-Carlo standard error. The
    mean converges to the sample covariance of x; the standard error supports
    z-tests of that.
    """
    d, n = x.dim, x.count
    if not 1 <= m <= d:
        raise UnsupportedDimensionError(f"need 1 <= m <= d, got m={m}, d={d}")
    if reps < 2:
        raise InvalidInputError("need reps >= 2 for a standard error")
    cols = x.columns
    scale = d * d / (n * m * m)
    a, b = _debias_coefficients(d, m)
    eye = np.eye(d)
    total = np.zeros((d, d))
    total_sq = np.zeros((d, d))
    for start in range(0, reps, _REP_CHUNK):
        stop = min(start + _REP_CHUNK, reps)
        count = stop - start
        g = np.empty((count * n, d, m))
        pos = 0
        for r in range(count):
            for t in range(n):
                g[pos] = _descend_generator(rng, (start + r, t)).standard_normal((d, m))
                pos += 1
        frames = _orthonormalize_stack(g).reshape(count, n, d, m)
        z = np.einsum("rtdm,dt->rtm", frames, cols)
        y = np.einsum("rtdm,rtm->rtd", frames, z)
        s1 = scale * np.matmul(np.transpose(y, (0, 2, 1)), y)
        s1 = (s1 + np.transpose(s1, (0, 2, 1))) / 2.0
        traces = np.trace(s1, axis1=1, axis2=2)
        ests = a * s1 - (b * traces)[:, None, None] * eye
        total += ests.sum(axis=0)
        total_sq += (ests * ests).sum(axis=0)
    mean = total / reps
    variance = np.maximum(total_sq / reps - mean * mean, 0.0)
    se = np.sqrt(variance / reps)
    return mean, np.maximum(se, 1e-30)


def projection_length_samples(d: int, m: int, reps: int, rng: RngStream) -> np.ndarray:
    """Squared relative projection lengths ||A' e1||^2 over redrawn Haar frames."""
    if not 1 <= m <= d:
        raise UnsupportedDimensionError(f"need 1 <= m <= d, got m={m}, d={d}")
    if reps < 1:
        raise InvalidInputError("need reps >= 1")
    out = np.empty(reps)
    for start in range(0, reps, 4096):
        stop = min(start + 4096, reps)
        frames = sample_random_bases(d, m, rng, stop - start, first_index=start)
        out[start:stop] = np.sum(frames[:, 0, :] ** 2, axis=1)
    return out


def ks_distance_beta(d: int, m: int, reps: int, rng: RngStream) -> float:
    """KS distance between sampled projection lengths and Beta(m/2, (d-m)/2)."""
    if m >= d:
        raise UnsupportedDimensionError("the Beta law needs m < d")
    samples = np.sort(projection_length_samples(d, m, reps, rng))
    cdf = betainc(m / 2.0, (d - m) / 2.0, samples)
    grid = np.arange(reps, dtype=np.float64)
    upper = np.max((grid + 1.0) / reps - cdf)
    lower = np.max(cdf - grid / reps)
    return float(max(upper, lower))
