"""Covariance estimation from independent random low-dimensional projections.

Each data vector is observed only through its coordinates in a fresh random
orthonormal frame; a closed-form de-biasing of the back-projected second
moment recovers the full covariance at a rate governed by the compression
ratio. The package bundles the estimator, baselines, bound evaluators,
Monte-Carlo verifiers, a sensor-network cost simulation, and a config-driven
experiment CLI.
"""

from .baselines import (
    fixed_projection_floor,
    hmt_estimate,
    sample_covariance,
    shared_projection_estimate,
)
from .errors import (
    CheckFailedError,
    ConfigError,
    CovestError,
    DegenerateInputError,
    InvalidInputError,
    UnsupportedDimensionError,
)
from .estimator import (
    CovEstimate,
    debias,
    estimate,
    expected_observed_cov,
    observed_covariance,
    psd_clamp,
    rank_truncate,
    subspace_error,
    subspace_estimate,
)
from .linalg import (
    Basis,
    DataMatrix,
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
from .sampling import (
    GaussianSpec,
    Observation,
    RngStream,
    beta_moment,
    compress,
    sample_gaussian,
    sample_random_bases,
    sample_random_basis,
    sample_uniform_sphere,
)
from .simnet import CostLedger, Protocol, run_network, sweep_tradeoff
from .theory import (
    BoundPreconditionWarning,
    GaussianTails,
    SampleStats,
    compute_stats,
    davis_kahan_bound,
    frob_projection_moment,
    gaussian_tail_bounds,
    inf_error_bound,
    kl_compressed_gaussian,
    mc_kl_contraction,
    rescale_error,
    spectral_error_bound,
)

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "BoundPreconditionWarning",
    "CheckFailedError",
    "ConfigError",
    "CostLedger",
    "CovEstimate",
    "CovestError",
    "DataMatrix",
    "DegenerateInputError",
    "GaussianSpec",
    "GaussianTails",
    "InvalidInputError",
    "Observation",
    "Protocol",
    "RngStream",
    "SampleStats",
    "Spectrum",
    "SymMatrix",
    "UnsupportedDimensionError",
    "beta_moment",
    "compress",
    "compute_stats",
    "davis_kahan_bound",
    "debias",
    "estimate",
    "expected_observed_cov",
    "fixed_projection_floor",
    "frob_projection_moment",
    "frobenius_norm",
    "gaussian_tail_bounds",
    "hmt_estimate",
    "inf_error_bound",
    "inf_norm",
    "kl_compressed_gaussian",
    "mc_kl_contraction",
    "observed_covariance",
    "orthonormalize",
    "psd_clamp",
    "rank_truncate",
    "rescale_error",
    "run_network",
    "sample_covariance",
    "sample_gaussian",
    "sample_random_bases",
    "sample_random_basis",
    "sample_uniform_sphere",
    "shared_projection_estimate",
    "spectral_error_bound",
    "spectral_norm",
    "subspace_error",
    "subspace_estimate",
    "sweep_tradeoff",
    "sym_eig",
    "top_k_projector",
    "two_inf_norm",
    "__version__",
]
