import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from covest import (
    Basis,
    DataMatrix,
    DegenerateInputError,
    InvalidInputError,
    Spectrum,
    SymMatrix,
    frobenius_norm,
    inf_norm,
    orthonormalize,
    spectral_norm,
    sym_eig,
    top_k_projector,
    two_inf_norm,
)
from oracles import charpoly_eigenvalues

# Matches the pinned construction in test_sym_eig_random_matches_charpoly.
SEED7_EIGS = np.array(
    [
        1.6936356328634332,
        1.0740962582787723,
        -0.78138742346889267,
        -0.94412466747849089,
        -2.6199034484186217,
    ]
)


def random_sym(seed, d):
    g = np.random.default_rng(seed).standard_normal((d, d))
    return (g + g.T) / 2


def test_symmatrix_symmetrizes():
    s = SymMatrix(np.array([[1.0, 2.0], [0.0, 1.0]]))
    np.testing.assert_array_equal(s.entries, np.array([[1.0, 1.0], [1.0, 1.0]]))
    assert s.dim == 2


def test_symmatrix_rejects_bad_input():
    with pytest.raises(InvalidInputError):
        SymMatrix(np.array([[1.0, np.nan], [np.nan, 1.0]]))
    with pytest.raises(InvalidInputError):
        SymMatrix(np.zeros((2, 3)))


def test_datamatrix_shape_contract():
    x = DataMatrix(np.zeros((3, 5)))
    assert (x.dim, x.count) == (3, 5)
    with pytest.raises(InvalidInputError):
        DataMatrix(np.zeros(4))


def test_basis_rejects_non_orthonormal():
    with pytest.raises(InvalidInputError):
        Basis(np.array([[1.0, 1.0], [0.0, 1.0]]))


def test_spectrum_requires_descending_order():
    with pytest.raises(InvalidInputError):
        Spectrum(np.array([1.0, 2.0]), np.eye(2))


def test_sym_eig_identity():
    spec = sym_eig(SymMatrix(np.eye(3)))
    np.testing.assert_allclose(spec.eigenvalues, np.ones(3), atol=1e-14)


def test_sym_eig_diagonal():
    spec = sym_eig(SymMatrix(np.diag([3.0, 1.0, -2.0])))
    np.testing.assert_allclose(spec.eigenvalues, [3.0, 1.0, -2.0], atol=1e-14)
    # Diagonal input needs no rotations, so eigenvectors stay standard basis.
    np.testing.assert_allclose(np.abs(spec.eigenvectors), np.eye(3), atol=1e-14)


def test_sym_eig_random_matches_charpoly():
    g = np.random.default_rng(7).standard_normal((5, 5))
    a = (g + g.T) / 2
    spec = sym_eig(SymMatrix(a))
    np.testing.assert_allclose(spec.eigenvalues, charpoly_eigenvalues(a), atol=1e-8)
    np.testing.assert_allclose(spec.eigenvalues, SEED7_EIGS, atol=1e-8)


@pytest.mark.parametrize("seed,d", [(0, 2), (1, 5), (2, 13), (3, 40)])
def test_sym_eig_reconstruction(seed, d):
    a = random_sym(seed, d)
    spec = sym_eig(SymMatrix(a))
    w, v = spec.eigenvalues, spec.eigenvectors
    scale = max(1.0, frobenius_norm(a))
    assert np.max(np.abs((v * w) @ v.T - a)) <= 1e-8 * scale
    assert np.max(np.abs(v.T @ v - np.eye(d))) <= 1e-10
    assert np.all(np.diff(w) <= 0)


def test_sym_eig_rejects_nonfinite():
    with pytest.raises(InvalidInputError):
        sym_eig(np.array([[np.inf, 0.0], [0.0, 1.0]]))


def test_spectral_norm_examples():
    assert spectral_norm(np.eye(6)) == pytest.approx(1.0, abs=1e-14)
    assert spectral_norm(np.array([[0.0, 1.0], [1.0, 0.0]])) == pytest.approx(1.0, abs=1e-12)
    assert spectral_norm(np.diag([1.5, -0.5])) == pytest.approx(1.5, abs=1e-14)


def test_spectral_norm_is_extreme_eigenvalue():
    for seed in range(5):
        a = random_sym(seed, 7)
        w = sym_eig(SymMatrix(a)).eigenvalues
        assert spectral_norm(a) == max(abs(w[0]), abs(w[-1]))


def test_entry_norm_examples():
    assert inf_norm(np.array([[1.0, -3.0], [-3.0, 2.0]])) == 3.0
    x = np.zeros((3, 2))
    x[0, 0] = 1.0
    x[1, 1] = 2.0
    assert two_inf_norm(DataMatrix(x)) == 2.0
    assert frobenius_norm(np.eye(4)) == 2.0


def test_norm_chain_on_random_matrices():
    for seed in range(10):
        d = 2 + seed
        a = random_sym(seed, d)
        lo, mid, hi = inf_norm(a), spectral_norm(a), frobenius_norm(a)
        assert lo <= mid + 1e-12
        assert mid <= hi + 1e-12
        assert hi <= d * lo + 1e-12


def test_two_inf_vs_inf_norm():
    for seed in range(10):
        x = np.random.default_rng(seed).standard_normal((6, 9))
        assert two_inf_norm(x) <= np.sqrt(6) * inf_norm(x) + 1e-12


def test_orthonormalize_examples():
    g = np.zeros((3, 2))
    g[0, 0] = 2.0
    g[1, 1] = 2.0
    b = orthonormalize(g)
    np.testing.assert_allclose(b.columns, g / 2.0, atol=1e-12)

    single = orthonormalize(np.array([[3.0], [4.0]]))
    np.testing.assert_allclose(single.columns, [[0.6], [0.8]], atol=1e-12)

    rand = orthonormalize(np.random.default_rng(1).standard_normal((8, 3)))
    np.testing.assert_allclose(rand.columns.T @ rand.columns, np.eye(3), atol=1e-10)


def test_orthonormalize_rank_deficient():
    g = np.ones((4, 2))
    with pytest.raises(DegenerateInputError):
        orthonormalize(g)


def test_orthonormalize_spans_input():
    g = np.random.default_rng(4).standard_normal((6, 3))
    b = orthonormalize(g)
    # col(G) == col(A): projecting G onto A changes nothing.
    np.testing.assert_allclose(b.columns @ (b.columns.T @ g), g, atol=1e-10)


def test_top_k_projector_examples():
    spec = sym_eig(SymMatrix(np.diag([3.0, 2.0, 1.0])))
    np.testing.assert_allclose(top_k_projector(spec, 2).entries, np.diag([1.0, 1.0, 0.0]), atol=1e-12)
    np.testing.assert_allclose(top_k_projector(spec, 3).entries, np.eye(3), atol=1e-12)

    spec2 = sym_eig(SymMatrix(np.array([[2.0, 1.0], [1.0, 2.0]])))
    np.testing.assert_allclose(top_k_projector(spec2, 1).entries, np.full((2, 2), 0.5), atol=1e-12)


def test_top_k_projector_validates_k():
    spec = sym_eig(SymMatrix(np.eye(3)))
    with pytest.raises(InvalidInputError):
        top_k_projector(spec, 0)
    with pytest.raises(InvalidInputError):
        top_k_projector(spec, 4)


def test_top_k_projector_idempotent():
    for seed in range(5):
        a = random_sym(seed, 6)
        p = top_k_projector(sym_eig(SymMatrix(a)), 2).entries
        assert np.max(np.abs(p @ p - p)) <= 1e-8
        assert np.trace(p) == pytest.approx(2.0, abs=1e-8)


def test_equal_eigenvalue_ties_are_stable():
    # Repeated eigenvalues leave the Jacobi column order alone, so the
    # top-k projector of the identity is the leading coordinate block.
    spec = sym_eig(SymMatrix(np.eye(4)))
    np.testing.assert_allclose(top_k_projector(spec, 2).entries, np.diag([1.0, 1.0, 0.0, 0.0]), atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 10))
def test_norm_chain_property(seed, d):
    a = random_sym(seed, d)
    assert inf_norm(a) <= spectral_norm(a) + 1e-12
    assert spectral_norm(a) <= frobenius_norm(a) + 1e-12
    assert frobenius_norm(a) <= d * inf_norm(a) + 1e-12
