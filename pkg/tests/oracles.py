"""Independent reference computations used to validate library results.

Every oracle here deliberately avoids the code path it is meant to check:
eigenvalues come from the characteristic polynomial instead of a matrix
eigensolver, Beta probabilities and moments come from Gauss-Legendre
quadrature instead of special-function libraries, and KL divergences come
from explicit inverses and determinants instead of eigenvalue whitening.
"""

import numpy as np

# Shared Gauss-Legendre rule, accurate to machine precision for the smooth
# integrands below.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(400)


def charpoly_coefficients(a):
    """Coefficients of det(tI - A) via the Faddeev-LeVerrier recursion.

    Returns c[0..d] with c[0] = 1 so that p(t) = sum_k c[k] t^(d-k).
    """
    a = np.asarray(a, dtype=float)
    d = a.shape[0]
    coeffs = np.zeros(d + 1)
    coeffs[0] = 1.0
    mk = np.zeros_like(a)
    eye = np.eye(d)
    for k in range(1, d + 1):
        mk = a @ mk + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ mk) / k
    return coeffs


def charpoly_eigenvalues(a, newton_steps=60):
    """Eigenvalues of a symmetric matrix from its characteristic polynomial.

    Roots of the Faddeev-LeVerrier polynomial, polished by damped Newton
    iteration against the exact polynomial, returned in descending order.
    Intended for small well-separated spectra (d <= 8, random matrices);
    clustered roots would defeat the polish step.
    """
    coeffs = charpoly_coefficients(a)
    roots = np.real(np.roots(coeffs))
    poly = np.poly1d(coeffs)
    dpoly = poly.deriv()
    scale = max(1.0, float(np.max(np.abs(roots))))
    for _ in range(newton_steps):
        g = dpoly(roots)
        safe = np.where(g == 0.0, 1.0, g)
        step = np.where(np.abs(g) > 1e-300, poly(roots) / safe, 0.0)
        roots = roots - np.clip(step, -0.1 * scale, 0.1 * scale)
    return np.sort(roots)[::-1]


def _beta_integral(a, b, lo, hi, extra_power=0):
    """Integral of t^(a-1+extra_power) (1-t)^(b-1) over [lo, hi].

    Uses the substitution t = sin(u)^2, which removes the endpoint
    singularities for a, b >= 1/2:

        t^(a-1) (1-t)^(b-1) dt  ->  2 sin(u)^(2a-1) cos(u)^(2b-1) du
    """
    u_lo = np.arcsin(np.sqrt(lo))
    u_hi = np.arcsin(np.sqrt(hi))
    u = 0.5 * (u_hi - u_lo) * (_GL_NODES + 1.0) + u_lo
    s, c = np.sin(u), np.cos(u)
    vals = 2.0 * s ** (2.0 * (a + extra_power) - 1.0) * c ** (2.0 * b - 1.0)
    return 0.5 * (u_hi - u_lo) * float(np.dot(_GL_WEIGHTS, vals))


def beta_cdf_quadrature(a, b, x):
    """CDF of Beta(a, b) at x by direct quadrature (no special functions)."""
    x = np.asarray(x, dtype=float)
    norm = _beta_integral(a, b, 0.0, 1.0)
    flat = np.clip(x.reshape(-1), 0.0, 1.0)
    out = np.array([_beta_integral(a, b, 0.0, xi, 0) / norm for xi in flat])
    return out.reshape(x.shape) if x.shape else float(out[0])


def beta_moment_quadrature(a, b, i):
    """E[T^i] for T ~ Beta(a, b) by quadrature against the same rule."""
    norm = _beta_integral(a, b, 0.0, 1.0)
    return _beta_integral(a, b, 0.0, 1.0, extra_power=i) / norm


def kl_gaussian_direct(c0, c1):
    """Gaussian KL divergence in the trace/log-det form used throughout:

        0.5 * (tr(c0^-1 c1) - m - log det(c0^-1 c1))

    Computed with an explicit inverse and slogdet, independent of any
    eigenvalue-based whitening.
    """
    c0 = np.asarray(c0, dtype=float)
    c1 = np.asarray(c1, dtype=float)
    m = c0.shape[0]
    prod = np.linalg.inv(c0) @ c1
    sign, logdet = np.linalg.slogdet(prod)
    if sign <= 0:
        raise ValueError("product matrix must have positive determinant")
    return 0.5 * (np.trace(prod) - m - logdet)


def kl_spike_closed_form(gamma, eta, omega):
    """Closed-form compressed KL for the pair (eta*I, eta*I + gamma*e1 e1^T).

    With u = U^T e1 and omega = ||u||^2, the compressed covariances are
    C0 = eta*I_m and C1 = eta*I_m + gamma*u u^T, a rank-one update, so

        KL = 0.5 * (r*omega - log(1 + r*omega)),   r = gamma / eta.
    """
    x = (gamma / eta) * omega
    return 0.5 * (x - np.log1p(x))


def eigh_descending(a):
    """LAPACK eigendecomposition sorted descending: a second, independent
    route next to both the library solver and the char-poly oracle."""
    w, v = np.linalg.eigh(np.asarray(a, dtype=float))
    order = np.argsort(w)[::-1]
    return w[order], v[:, order]
