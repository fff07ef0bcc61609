"""Synthetic result-CSV builders shared by the plot tests."""

import csv

import pytest

from covest_plots import SCHEMA_COLUMNS

# Trial multipliers averaging to exactly 1, so trial means sit exactly on the
# underlying curve and fitted slopes are exact.
TRIAL_FACTORS = (0.95, 1.0, 1.05)


def write_result_csv(path, rows, columns=SCHEMA_COLUMNS):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(columns), extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
    return path


def sqrt_rate_rows(pairs=((16, 1), (16, 2)), n_grid=(100, 1000, 10000)):
    """Rows whose trial-mean error is exactly proportional to n^(-1/2)."""
    rows = []
    for d, m in pairs:
        for n in n_grid:
            for trial, factor in enumerate(TRIAL_FACTORS):
                err_spec = (d / m) * n ** -0.5 * factor
                err_inf = 0.4 * err_spec
                scale = (n * m * m / d**3) ** 0.5
                rows.append(
                    {
                        "experiment": "rates",
                        "d": d,
                        "m": m,
                        "n": n,
                        "trial": trial,
                        "seed": 7,
                        "method": "debiased",
                        "err_inf": err_inf,
                        "err_spec": err_spec,
                        "err_inf_rescaled": err_inf * scale,
                        "err_spec_rescaled": err_spec * scale,
                        "subspace_err": "",
                        "wall_ms": 1.0,
                    }
                )
    return rows


def two_method_rows(n_grid=(1000, 10000, 100000)):
    """One decaying series and one flat series, three trials each."""
    rows = []
    for method, curve in (("debiased", lambda n: 5.0 * n**-0.5), ("hmt", lambda n: 0.8)):
        for n in n_grid:
            for trial, factor in enumerate(TRIAL_FACTORS):
                err = curve(n) * factor
                rows.append(
                    {
                        "experiment": "compare_hmt",
                        "d": 40,
                        "m": 5,
                        "n": n,
                        "trial": trial,
                        "seed": 7,
                        "method": method,
                        "err_inf": err,
                        "err_spec": err,
                        "err_inf_rescaled": err,
                        "err_spec_rescaled": err,
                        "subspace_err": "",
                        "wall_ms": 1.0,
                    }
                )
    return rows


@pytest.fixture
def rates_csv(tmp_path):
    return write_result_csv(tmp_path / "rates.csv", sqrt_rate_rows())


@pytest.fixture
def compare_csv(tmp_path):
    return write_result_csv(tmp_path / "compare.csv", two_method_rows())


@pytest.fixture
def empty_csv(tmp_path):
    return write_result_csv(tmp_path / "empty.csv", [])
