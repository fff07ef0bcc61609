"""Dense symmetric linear algebra.

Storage types (symmetric matrices, data matrices, orthonormal bases, spectra),
matrix norms, a cyclic Jacobi eigensolver, Householder orthonormalization, and
spectral projectors. Everything is dense float64; targets dimensions up to a
few hundred.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .errors import DegenerateInputError, InvalidInputError

# Orthonormality tolerance for Basis columns: ||A'A - I||_inf.
ORTHONORMAL_TOL = 1e-10
# Rank test for orthonormalize: smallest |R_ii| relative to ||G||_F.
RANK_TOL = 1e-12
# Jacobi stopping rule: off-diagonal Frobenius mass relative to ||M||_F.
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100


def _readonly(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _require_finite(a: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(a)):
        raise InvalidInputError(f"{what} must have finite entries")


@dataclass(frozen=True, eq=False)
class SymMatrix:
    """Dense symmetric d x d matrix; symmetrized as (M + M')/2 at construction."""

    entries: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.entries, dtype=np.float64)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise InvalidInputError("SymMatrix requires a square 2-d array")
        _require_finite(m, "SymMatrix")
        object.__setattr__(self, "entries", _readonly((m + m.T) / 2.0))

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class DataMatrix:
    """Collection of n data vectors in R^d, stored as the columns of a d x n array."""

    columns: np.ndarray

    def __post_init__(self) -> None:
        x = np.ascontiguousarray(self.columns, dtype=np.float64)
        if x.ndim != 2 or x.shape[0] < 1 or x.shape[1] < 1:
            raise InvalidInputError("DataMatrix requires a d x n array with n >= 1")
        _require_finite(x, "DataMatrix")
        object.__setattr__(self, "columns", _readonly(x))

    @property
    def dim(self) -> int:
        return self.columns.shape[0]

    @property
    def count(self) -> int:
        return self.columns.shape[1]


@dataclass(frozen=True, eq=False)
class Basis:
    """Orthonormal d x m frame: the columns span an m-dimensional subspace."""

    columns: np.ndarray

    def __post_init__(self) -> None:
        a = np.ascontiguousarray(self.columns, dtype=np.float64)
        if a.ndim != 2 or not 1 <= a.shape[1] <= a.shape[0]:
            raise InvalidInputError("Basis requires a d x m array with 1 <= m <= d")
        _require_finite(a, "Basis")
        gram = a.T @ a
        if np.max(np.abs(gram - np.eye(a.shape[1]))) > ORTHONORMAL_TOL:
            raise InvalidInputError("Basis columns are not orthonormal")
        object.__setattr__(self, "columns", _readonly(a))

    @property
    def dim(self) -> int:
        return self.columns.shape[0]

    @property
    def rank(self) -> int:
        return self.columns.shape[1]


def _basis_trusted(columns: np.ndarray) -> Basis:
    """Wrap columns already known orthonormal (QR output) without re-checking."""
    basis = object.__new__(Basis)
    object.__setattr__(basis, "columns", _readonly(columns))
    return basis


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigendecomposition of a SymMatrix: eigenvalues sorted descending (signed),
    eigenvector i is the i-th column of ``eigenvectors``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __post_init__(self) -> None:
        w = np.ascontiguousarray(self.eigenvalues, dtype=np.float64)
        v = np.ascontiguousarray(self.eigenvectors, dtype=np.float64)
        d = w.shape[0]
        if w.ndim != 1 or v.shape != (d, d):
            raise InvalidInputError("Spectrum requires d eigenvalues and a d x d eigenvector matrix")
        _require_finite(w, "Spectrum eigenvalues")
        _require_finite(v, "Spectrum eigenvectors")
        if np.any(np.diff(w) > 0):
            raise InvalidInputError("Spectrum eigenvalues must be sorted descending")
        object.__setattr__(self, "eigenvalues", _readonly(w))
        object.__setattr__(self, "eigenvectors", _readonly(v))

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]


@njit(cache=True)
def _jacobi_kernel(a: np.ndarray, tol_rel: float, max_sweeps: int):  # pragma: no cover
    d = a.shape[0]
    v = np.eye(d)
    fro = 0.0
    for i in range(d):
        for j in range(d):
            fro += a[i, j] * a[i, j]
    threshold = tol_rel * np.sqrt(fro)
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(d):
            for j in range(i + 1, d):
                off += 2.0 * a[i, j] * a[i, j]
        if np.sqrt(off) <= threshold:
            break
        for p in range(d - 1):
            for q in range(p + 1, d):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                app = a[p, p]
                aqq = a[q, q]
                tau = (aqq - app) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for k in range(d):
                    if k != p and k != q:
                        akp = a[k, p]
                        akq = a[k, q]
                        a[k, p] = c * akp - s * akq
                        a[p, k] = a[k, p]
                        a[k, q] = s * akp + c * akq
                        a[q, k] = a[k, q]
                a[p, p] = app - t * apq
                a[q, q] = aqq + t * apq
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(d):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return a, v


def _sym_eig_array(a: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Jacobi eigendecomposition of a symmetric array; eigenvalues descending."""
    work = np.array(a, dtype=np.float64, copy=True, order="C")
    diag, vecs = _jacobi_kernel(work, JACOBI_TOL, JACOBI_MAX_SWEEPS)
    evals = np.diagonal(diag).copy()
    order = np.argsort(-evals, kind="stable")
    return evals[order], np.ascontiguousarray(vecs[:, order])


def _sym_entries(m: "SymMatrix | np.ndarray") -> np.ndarray:
    """Accept a SymMatrix or a raw array; raw arrays are symmetrized like SymMatrix."""
    if isinstance(m, SymMatrix):
        return m.entries
    a = np.asarray(m, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInputError("expected a square matrix")
    _require_finite(a, "matrix")
    return (a + a.T) / 2.0


def sym_eig(m: SymMatrix | np.ndarray) -> Spectrum:
    """Full eigendecomposition by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius mass drops below
    1e-12 * ||M||_F, capped at 100 sweeps. Eigenvalues are returned in
    signed-descending order; ties keep the Jacobi column order (stable sort).
    """
    evals, evecs = _sym_eig_array(_sym_entries(m))
    return Spectrum(evals, evecs)


def spectral_norm(m: SymMatrix | np.ndarray) -> float:
    """Operator norm max_i |lambda_i(M)|, taken from the Jacobi spectrum."""
    evals, _ = _sym_eig_array(_sym_entries(m))
    return max(abs(float(evals[0])), abs(float(evals[-1])))


def inf_norm(m: SymMatrix | DataMatrix | np.ndarray) -> float:
    """Entrywise max norm: max_ij |M_ij|."""
    a = m.entries if isinstance(m, SymMatrix) else m.columns if isinstance(m, DataMatrix) else np.asarray(m, dtype=np.float64)
    return float(np.max(np.abs(a)))


def two_inf_norm(x: DataMatrix | np.ndarray) -> float:
    """Largest column Euclidean norm: max_j ||m_j||_2."""
    a = x.columns if isinstance(x, DataMatrix) else np.asarray(x, dtype=np.float64)
    if a.ndim != 2:
        raise InvalidInputError("two_inf_norm expects a matrix")
    return float(np.sqrt(np.max(np.sum(a * a, axis=0))))


def frobenius_norm(m: SymMatrix | DataMatrix | np.ndarray) -> float:
    """Square root of the sum of squared entries."""
    a = m.entries if isinstance(m, SymMatrix) else m.columns if isinstance(m, DataMatrix) else np.asarray(m, dtype=np.float64)
    return float(np.sqrt(np.sum(a * a)))


def orthonormalize(g: np.ndarray) -> Basis:
    """Orthonormal basis for the column space of g via Householder QR.

    The factor is made canonical by forcing the R diagonal positive (flipping
    the sign of the corresponding Q columns), so the output is a deterministic
    function of g and the map sends a standard-Gaussian g to a Haar-distributed
    frame. Rank deficiency (smallest |R_ii| <= 1e-12 * ||G||_F) is rejected.
    """
    a = np.asarray(g, dtype=np.float64)
    if a.ndim != 2 or not 1 <= a.shape[1] <= a.shape[0]:
        raise InvalidInputError("orthonormalize requires a d x m array with 1 <= m <= d")
    _require_finite(a, "orthonormalize input")
    q, r = np.linalg.qr(a)
    diag = np.diagonal(r)
    if np.min(np.abs(diag)) <= RANK_TOL * float(np.sqrt(np.sum(a * a))):
        raise DegenerateInputError("orthonormalize input is numerically rank-deficient")
    return Basis(q * np.where(diag < 0.0, -1.0, 1.0))


def top_k_projector(s: Spectrum, k: int) -> SymMatrix:
    """Orthogonal projector onto the span of the k leading eigenvectors."""
    d = s.dim
    if not 1 <= k <= d:
        raise InvalidInputError(f"k must satisfy 1 <= k <= {d}, got {k}")
    v = s.eigenvectors[:, :k]
    return SymMatrix(v @ v.T)
