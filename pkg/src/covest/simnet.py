"""In-process simulation of a star network of sensors and a fusion center.

Each sensor node holds one data vector; the fusion center wants the
covariance. Three protocols are modeled with exact communication ledgers:
shipping raw vectors, shipping back-projected vectors, and shipping only the
compressed coordinates while the fusion center regenerates each node's frame
from a shared seed. This is a cost model, not a wire protocol: messages are
Python calls, and the seed exchange is costed at zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .baselines import sample_covariance
from .errors import InvalidInputError, UnsupportedDimensionError
from .estimator import (
    CovEstimate,
    _backproject,
    _observed_from_backprojection,
    debias,
)
from .linalg import DataMatrix, SymMatrix, inf_norm, spectral_norm
from .sampling import GaussianSpec, RngStream, compress, sample_gaussian, sample_random_bases


class Protocol(Enum):
    """How measurements travel from the nodes to the fusion center."""

    NAIVE_FULL = "naive_full"
    BACKPROJECTED = "backprojected"
    SYNCHRONIZED_SEED = "synchronized_seed"


@dataclass(frozen=True)
class CostLedger:
    """Exact communication counts for one protocol run.

    ``scalar_measurements`` is what the nodes observe, ``scalars_transmitted``
    what crosses the network, ``messages`` the number of node-to-center sends.
    """

    scalar_measurements: int
    scalars_transmitted: int
    messages: int


@dataclass(frozen=True, eq=False)
class SweepRow:
    """Aggregated accuracy/cost numbers for one compression width."""

    m: int
    mean_err_inf: float
    mean_err_spec: float
    ledger: CostLedger
    trial_errs_inf: tuple[float, ...]
    trial_errs_spec: tuple[float, ...]


def _ledger_for(protocol: Protocol, n: int, d: int, m: int) -> CostLedger:
    if protocol is Protocol.NAIVE_FULL:
        return CostLedger(n * d, n * d, n)
    if protocol is Protocol.BACKPROJECTED:
        return CostLedger(n * m, n * d, n)
    return CostLedger(n * m, n * m, n)


def run_network(
    x: DataMatrix, m: int, protocol: Protocol, rng: RngStream
) -> tuple[CovEstimate, CostLedger]:
    """Run one protocol over the node data and return (estimate, ledger).

    Compressive protocols give the bitwise-identical estimate to running
    ``estimate(compress(x, m, rng))`` locally. Under ``synchronized_seed`` the
    fusion center sees only the m coordinates per node and regenerates the
    node frames from the shared stream; under ``backprojected`` the nodes send
    d-dimensional back-projections and the center never needs the frames.
    """
    d, n = x.dim, x.count
    if protocol is Protocol.NAIVE_FULL:
        est = CovEstimate(sample_covariance(x), d, d, n, "sample")
        return est, _ledger_for(protocol, n, d, m)
    if not 1 <= m <= d:
        raise UnsupportedDimensionError(f"need 1 <= m <= d, got m={m}, d={d}")
    obs = compress(x, m, rng)
    z = np.stack([o.compressed for o in obs])
    if protocol is Protocol.BACKPROJECTED:
        # Nodes back-project before sending; the center sums outer products.
        bases = np.stack([o.basis.columns for o in obs])
    elif protocol is Protocol.SYNCHRONIZED_SEED:
        # Center regenerates every node frame from the shared stream.
        bases = sample_random_bases(d, m, rng, n)
    else:
        raise InvalidInputError(f"unknown protocol {protocol!r}")
    s1 = SymMatrix(_observed_from_backprojection(_backproject(bases, z), m))
    est = CovEstimate(debias(s1, m), d, m, n, "debiased")
    return est, _ledger_for(protocol, n, d, m)


def sweep_tradeoff(
    spec: GaussianSpec,
    d: int,
    n: int,
    m_grid: tuple[int, ...] | list[int],
    trials: int,
    rng: RngStream,
    protocol: Protocol = Protocol.SYNCHRONIZED_SEED,
) -> list[SweepRow]:
    """Accuracy-versus-communication sweep over compression widths.

    For each m, ``trials`` independent runs draw fresh data from the Gaussian
    and push it through the protocol; errors are measured against the
    population covariance in both norms and averaged. The ledger in each row
    is exact and identical across trials. Trial (i, t) uses the sub-stream
    ``rng.child(i).child(t)``, so rows are reproducible independently.
    """
    if spec.dim != d:
        raise InvalidInputError("spec dimension does not match d")
    if trials < 1 or not m_grid:
        raise InvalidInputError("need trials >= 1 and a non-empty m grid")
    sigma = spec.covariance.entries
    rows: list[SweepRow] = []
    for mi, m in enumerate(m_grid):
        errs_inf: list[float] = []
        errs_spec: list[float] = []
        ledger = _ledger_for(protocol, n, d, m)
        for t in range(trials):
            stream = rng.child(mi).child(t)
            x = sample_gaussian(spec, n, stream.child(0))
            est, led = run_network(x, m, protocol, stream.child(1))
            if led != ledger:
                raise InvalidInputError("ledger changed across trials")
            diff = est.matrix.entries - sigma
            errs_inf.append(inf_norm(diff))
            errs_spec.append(spectral_norm(diff))
        rows.append(
            SweepRow(
                m,
                float(np.mean(errs_inf)),
                float(np.mean(errs_spec)),
                ledger,
                tuple(errs_inf),
                tuple(errs_spec),
            )
        )
    return rows


__all__ = [
    "Protocol",
    "CostLedger",
    "SweepRow",
    "run_network",
    "sweep_tradeoff",
]
