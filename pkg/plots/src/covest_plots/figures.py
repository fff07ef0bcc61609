"""Figure rendering for experiment result CSVs.

Output is SVG by default because it diffs cleanly: with the hash salt pinned
and the date stamp stripped, identical input yields identical bytes under a
fixed matplotlib version. A .png suffix selects PNG instead.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib
import numpy as np

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .data import PlotsError, read_rows, series_means

# Everything that could leak run-to-run entropy into the output bytes.
_STABLE_RC = {
    "svg.hashsalt": "covest-plots",
    "svg.fonttype": "none",
    "figure.dpi": 100,
    "figure.figsize": (10.0, 4.0),
}

_NORM_LABELS = {"spec": "spectral error", "inf": "entrywise max error"}


def _save(fig, out_path: str | Path) -> Path:
    path = Path(out_path)
    if path.suffix.lower() == ".png":
        fig.savefig(path, format="png")
    else:
        fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path


def fitted_slopes(series: dict) -> dict[tuple, float]:
    """Least-squares log-log slope of each mean-error series vs n.

    Series with fewer than two distinct n values or any non-positive mean
    are skipped (no slope is defined for them).
    """
    slopes = {}
    for key, (ns, means, _) in series.items():
        if len(ns) < 2 or any(v <= 0 for v in means):
            continue
        slopes[key] = float(np.polyfit(np.log10(ns), np.log10(means), 1)[0])
    return slopes


def plot_rates(csv_path: str | Path, out_path: str | Path, norm_kind: str = "spec") -> Path:
    """Render raw and rescaled error-vs-n panels, one series per (d, m).

    Left panel: mean raw error on log-log axes, annotated with the mean
    fitted slope across series. Right panel: the rescaled error, which
    collapses the (d, m) curves when the rate matches the rescaling. Returns
    the written path; nothing is written if the input is invalid.
    """
    if norm_kind not in _NORM_LABELS:
        raise PlotsError(f"unknown norm kind: {norm_kind!r} (expected 'spec' or 'inf')")
    rows = read_rows(csv_path)
    raw = series_means(rows, ("d", "m"), f"err_{norm_kind}")
    rescaled = series_means(rows, ("d", "m"), f"err_{norm_kind}_rescaled")
    slopes = fitted_slopes(raw)

    with matplotlib.rc_context(_STABLE_RC):
        fig, (ax_raw, ax_res) = plt.subplots(1, 2)
        for axis, series, title in (
            (ax_raw, raw, f"{_NORM_LABELS[norm_kind]} vs n"),
            (ax_res, rescaled, f"rescaled {_NORM_LABELS[norm_kind]} vs n"),
        ):
            for (d, m), (ns, means, _) in series.items():
                axis.loglog(ns, means, marker="o", label=f"d={d}, m={m}")
            axis.set_title(title)
            axis.set_xlabel("n")
            axis.grid(True, which="both", alpha=0.3)
            axis.legend()
        ax_raw.set_ylabel(_NORM_LABELS[norm_kind])
        if slopes:
            mean_slope = sum(slopes.values()) / len(slopes)
            ax_raw.text(
                0.04, 0.06, f"mean fitted slope: {mean_slope:.3f}",
                transform=ax_raw.transAxes,
            )
        fig.tight_layout()
        return _save(fig, out_path)


def plot_compare(csv_path: str | Path, out_path: str | Path) -> Path:
    """Render one panel of spectral error vs n, one series per method.

    Each series shows the trial mean with a min-to-max band over trials.
    Methods are plotted in sorted name order, so series order is a pure
    function of the input. Returns the written path.
    """
    rows = read_rows(csv_path)
    series = series_means(rows, ("method",), "err_spec")

    with matplotlib.rc_context(_STABLE_RC):
        fig, axis = plt.subplots(figsize=(6.0, 4.0))
        for (method,), (ns, means, trials) in series.items():
            axis.loglog(ns, means, marker="o", label=method)
            axis.fill_between(
                ns, [min(t) for t in trials], [max(t) for t in trials], alpha=0.25
            )
        axis.set_title("spectral error vs n by method")
        axis.set_xlabel("n")
        axis.set_ylabel("spectral error")
        axis.grid(True, which="both", alpha=0.3)
        axis.legend()
        fig.tight_layout()
        return _save(fig, out_path)
