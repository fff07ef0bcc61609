"""Randomness plumbing and measurement-model sampling.

Provides hierarchical, order-independent random streams (Philox counter-based
generators keyed by a seed path), Gaussian data sampling, Haar-distributed
orthonormal frames, the per-vector compression step that produces the
observations the estimator consumes, and exact Beta moments for projection
lengths.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInputError, InvalidInputError, UnsupportedDimensionError
from .linalg import (
    RANK_TOL,
    Basis,
    DataMatrix,
    SymMatrix,
    orthonormalize,
    _basis_trusted,
    _readonly,
    _sym_eig_array,
)

# Eigenvalues of a covariance below -1e-10 * ||Sigma||_2 are rejected;
# anything negative above that is treated as roundoff and clamped to zero.
PSD_TOL = 1e-10

_U64 = (1 << 64) - 1


@dataclass(frozen=True)
class RngStream:
    """Deterministic random stream addressed by (master_seed, stream_id, path).

    Two streams with different addresses are statistically independent, and a
    stream's output never depends on what was drawn from any other stream, so
    work can be divided across threads in any order without changing results.
    ``child(i)`` derives the i-th sub-stream by appending to the path.
    """

    master_seed: int
    stream_id: int = 0
    path: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for part in (self.master_seed, self.stream_id, *self.path):
            if not isinstance(part, int):
                raise InvalidInputError("RngStream components must be integers")

    def child(self, index: int) -> "RngStream":
        if index < 0:
            raise InvalidInputError("child index must be non-negative")
        return RngStream(self.master_seed, self.stream_id, self.path + (int(index),))

    def generator(self) -> np.random.Generator:
        return _descend_generator(self, ())


def _descend_generator(rng: RngStream, indices: tuple[int, ...]) -> np.random.Generator:
    """Generator for rng.child(i0).child(i1)... without building the streams.

    Bitwise identical to chaining :meth:`RngStream.child` and calling
    ``generator()``; used in hot loops where millions of sub-streams are
    opened.
    """
    key = tuple(part & _U64 for part in (rng.stream_id, *rng.path, *indices))
    seq = np.random.SeedSequence(rng.master_seed & _U64, spawn_key=key)
    return np.random.Generator(np.random.Philox(seq))


@dataclass(frozen=True, eq=False)
class GaussianSpec:
    """Zero-mean Gaussian with the given covariance.

    The covariance must be positive semi-definite up to roundoff: eigenvalues
    below -1e-10 * ||Sigma||_2 are an error, small negative ones are clamped
    to zero. A symmetric square root is precomputed for sampling.
    """

    covariance: SymMatrix
    _root: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.covariance, SymMatrix):
            object.__setattr__(self, "covariance", SymMatrix(self.covariance))
        evals, evecs = _sym_eig_array(self.covariance.entries)
        top = max(abs(float(evals[0])), abs(float(evals[-1])))
        if float(evals[-1]) < -PSD_TOL * top:
            raise InvalidInputError("covariance is not positive semi-definite")
        clamped = np.maximum(evals, 0.0)
        root = (evecs * np.sqrt(clamped)) @ evecs.T
        object.__setattr__(self, "_root", _readonly(root))

    @property
    def dim(self) -> int:
        return self.covariance.dim


@dataclass(frozen=True, eq=False)
class Observation:
    """One compressed measurement: the frame used and the projected coordinates."""

    basis: Basis
    compressed: np.ndarray

    def __post_init__(self) -> None:
        z = np.ascontiguousarray(self.compressed, dtype=np.float64)
        if z.shape != (self.basis.rank,):
            raise InvalidInputError("compressed vector length must match basis rank")
        if not np.all(np.isfinite(z)):
            raise InvalidInputError("compressed vector must be finite")
        object.__setattr__(self, "compressed", _readonly(z))


def sample_gaussian(spec: GaussianSpec, n: int, rng: RngStream) -> DataMatrix:
    """Draw n i.i.d. vectors from the Gaussian and return them as columns."""
    if n < 1:
        raise InvalidInputError("need n >= 1 samples")
    z = rng.generator().standard_normal((spec.dim, n))
    return DataMatrix(spec._root @ z)


def sample_random_basis(d: int, m: int, rng: RngStream) -> Basis:
    """Haar-distributed orthonormal d x m frame.

    QR of a standard Gaussian matrix with the R diagonal forced positive; the
    sign fix makes the factor unique and the distribution exactly uniform.
    """
    if not 1 <= m <= d:
        raise UnsupportedDimensionError(f"need 1 <= m <= d, got m={m}, d={d}")
    return orthonormalize(rng.generator().standard_normal((d, m)))


def _orthonormalize_stack(g: np.ndarray) -> np.ndarray:
    """Batched QR with the positive-diagonal sign fix, one frame per row.

    Matches :func:`covest.linalg.orthonormalize` bit for bit on every slice;
    rejects any numerically rank-deficient slice.
    """
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r, axis1=-2, axis2=-1)
    fro = np.sqrt(np.sum(g * g, axis=(-2, -1)))
    if np.any(np.min(np.abs(diag), axis=-1) <= RANK_TOL * fro):
        raise DegenerateInputError("degenerate Gaussian draw during basis sampling")
    return q * np.where(diag < 0.0, -1.0, 1.0)[..., None, :]


def sample_random_bases(
    d: int, m: int, rng: RngStream, count: int, first_index: int = 0
) -> np.ndarray:
    """Stack of ``count`` Haar frames, frame i drawn from ``rng.child(first_index + i)``.

    Bitwise identical to calling :func:`sample_random_basis` on each child
    stream; the QR factorizations are batched for speed.
    """
    if not 1 <= m <= d:
        raise UnsupportedDimensionError(f"need 1 <= m <= d, got m={m}, d={d}")
    if count < 1:
        raise InvalidInputError("need count >= 1")
    g = np.empty((count, d, m))
    for i in range(count):
        g[i] = _descend_generator(rng, (first_index + i,)).standard_normal((d, m))
    return _orthonormalize_stack(g)


def compress(x: DataMatrix, m: int, rng: RngStream, chunk: int = 8192) -> list[Observation]:
    """Compress each data vector with its own independent random frame.

    Column t is paired with the frame drawn from ``rng.child(t)`` and reduced
    to z_t = A_t' x_t. The stream-per-vector layout means any subset of
    observations can be regenerated without touching the others.
    """
    d, n = x.dim, x.count
    if not 1 <= m <= d:
        raise UnsupportedDimensionError(f"need 1 <= m <= d, got m={m}, d={d}")
    cols = x.columns
    out: list[Observation] = []
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        bases = sample_random_bases(d, m, rng, stop - start, first_index=start)
        z = np.einsum("tdm,dt->tm", bases, cols[:, start:stop])
        if not np.all(np.isfinite(z)):
            raise InvalidInputError("compression produced non-finite coordinates")
        # Frames are orthonormal by construction and z was checked above, so
        # the per-object validation is skipped for speed.
        for t in range(stop - start):
            o = object.__new__(Observation)
            object.__setattr__(o, "basis", _basis_trusted(bases[t]))
            object.__setattr__(o, "compressed", _readonly(z[t]))
            out.append(o)
    return out


def beta_moment(m: int, d: int, i: int) -> float:
    """i-th moment of the squared relative projection length.

    For a Haar m-frame A in R^d and any fixed unit vector u, the quantity
    ||A'u||^2 follows a Beta(m/2, (d-m)/2) law; its i-th moment is the exact
    product prod_{j=1..i} (m + 2(j-1)) / (d + 2(j-1)).
    """
    if not 1 <= m <= d:
        raise UnsupportedDimensionError(f"need 1 <= m <= d, got m={m}, d={d}")
    if i < 0:
        raise InvalidInputError("moment order must be non-negative")
    value = 1.0
    for j in range(1, i + 1):
        value *= (m + 2 * (j - 1)) / (d + 2 * (j - 1))
    return value


def sample_uniform_sphere(d: int, rng: RngStream) -> np.ndarray:
    """Uniform draw from the unit sphere in R^d (normalized Gaussian)."""
    if d < 1:
        raise UnsupportedDimensionError("need d >= 1")
    g = rng.generator().standard_normal(d)
    norm = float(np.sqrt(np.sum(g * g)))
    if norm == 0.0:
        raise InvalidInputError("degenerate Gaussian draw on the sphere")
    return g / norm
