"""Recovering a principal subspace from compressed observations.

When the covariance is (nearly) rank k, truncating the estimate to its top-k
eigenspace costs at most a factor 2 in spectral error, and the estimated
subspace is controlled by the eigengap through the perturbation bound.
"""

import numpy as np

from covest import (
    GaussianSpec,
    RngStream,
    SymMatrix,
    compress,
    davis_kahan_bound,
    estimate,
    rank_truncate,
    sample_gaussian,
    spectral_norm,
    subspace_error,
    subspace_estimate,
    sym_eig,
    top_k_projector,
)

d, k, m, n = 8, 2, 2, 5000
rng = RngStream(31)

# A rank-2 covariance: two strong directions, nothing else.
q, _ = np.linalg.qr(rng.child(0).generator().standard_normal((d, d)))
evals = np.zeros(d)
evals[:k] = (2.0, 1.2)
sigma = SymMatrix((q * evals) @ q.T)
gap = evals[k - 1] - evals[k]

x = sample_gaussian(GaussianSpec(sigma), n, rng.child(1))
est = estimate(compress(x, m, rng.child(2)))
trunc = rank_truncate(est, k)

err_full = spectral_norm(est.matrix.entries - sigma.entries)
err_trunc = spectral_norm(trunc.matrix.entries - sigma.entries)
print(f"rank-{k} target in R^{d}, m={m}, n={n}")
print(f"raw estimate error      : {err_full:.4f}")
print(f"rank-{k} truncated error : {err_trunc:.4f} (guaranteed <= {2 * err_full:.4f})")

pi_hat = subspace_estimate(est, k)
pi_true = top_k_projector(sym_eig(sigma), k)
angle = subspace_error(pi_hat, pi_true)
bound = davis_kahan_bound(gap, err_full)
print(f"principal-subspace sine  : {angle:.4f} (perturbation bound {bound:.4f})")
