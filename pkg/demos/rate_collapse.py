"""Convergence rates and the curve collapse.

The estimator's error falls like 1/sqrt(n) for every measurement budget m;
what compression costs is the constant, through the effective sample size
n m^2 / d^2. Rescaling each curve by sqrt(n m^2 / d^3) should therefore
stack different (d, m) settings on top of one another.
"""

import numpy as np

from covest.experiments import make_config, run_rates

config = make_config(
    "rates",
    {
        "d": (8, 16),
        "m": (2, 4),
        "n_grid": (200, 1000, 5000, 25000),
        "trials": 8,
        "master_seed": 99,
    },
)
rows = run_rates(config)

print("mean spectral error by (d, m), raw and rescaled:")
print(f"{'d':>4} {'m':>3} " + " ".join(f"n={n:<7}" for n in config.n_grid))
for d in config.d:
    for m in config.m:
        raw, scaled = [], []
        for n in config.n_grid:
            errs = [r.err_spec for r in rows if (r.d, r.m, r.n) == (d, m, n)]
            rescaled = [r.err_spec_rescaled for r in rows if (r.d, r.m, r.n) == (d, m, n)]
            raw.append(np.mean(errs))
            scaled.append(np.mean(rescaled))
        print(f"{d:>4} {m:>3} " + " ".join(f"{v:<9.3f}" for v in raw))
        print(f"{'':>8} " + " ".join(f"{v:<9.3f}" for v in scaled) + "  (rescaled)")

for d in config.d:
    for m in config.m:
        means = [
            np.mean([r.err_spec for r in rows if (r.d, r.m, r.n) == (d, m, n)])
            for n in config.n_grid
        ]
        slope = np.polyfit(np.log(config.n_grid), np.log(means), 1)[0]
        print(f"log-log slope d={d}, m={m}: {slope:+.3f} (expect about -0.5)")
