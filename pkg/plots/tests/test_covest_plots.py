"""Unit tests for CSV loading and figure rendering."""

import math
import re
import xml.etree.ElementTree as ElementTree

import pytest
from conftest import sqrt_rate_rows, write_result_csv

from covest_plots import (
    SCHEMA_COLUMNS,
    EmptyDataError,
    PlotsError,
    SchemaError,
    fitted_slopes,
    plot_compare,
    plot_rates,
    read_rows,
    series_means,
)
from covest_plots.__main__ import main


def test_read_rows_types(rates_csv):
    rows = read_rows(rates_csv)
    assert len(rows) == 2 * 3 * 3
    first = rows[0]
    assert isinstance(first["d"], int) and isinstance(first["n"], int)
    assert isinstance(first["err_spec"], float)
    assert first["method"] == "debiased"
    assert math.isnan(first["subspace_err"])


def test_read_rows_missing_columns_all_named(tmp_path):
    columns = [c for c in SCHEMA_COLUMNS if c not in ("err_spec", "wall_ms")]
    path = write_result_csv(tmp_path / "bad.csv", sqrt_rate_rows(), columns=columns)
    with pytest.raises(SchemaError) as info:
        read_rows(path)
    assert info.value.missing == ("err_spec", "wall_ms")
    assert "err_spec" in str(info.value) and "wall_ms" in str(info.value)


def test_read_rows_empty_and_missing_file(empty_csv, tmp_path):
    with pytest.raises(EmptyDataError):
        read_rows(empty_csv)
    with pytest.raises(PlotsError):
        read_rows(tmp_path / "nope.csv")


def test_read_rows_tolerates_extra_columns(tmp_path):
    columns = list(SCHEMA_COLUMNS) + ["note"]
    rows = sqrt_rate_rows(pairs=((4, 2),), n_grid=(100,))
    for row in rows:
        row["note"] = "x"
    path = write_result_csv(tmp_path / "extra.csv", rows, columns=columns)
    assert len(read_rows(path)) == len(rows)


def test_series_means_groups_and_averages(rates_csv):
    series = series_means(read_rows(rates_csv), ("d", "m"), "err_spec")
    assert list(series) == [(16, 1), (16, 2)]
    ns, means, trials = series[(16, 1)]
    assert ns == [100, 1000, 10000]
    assert means[0] == pytest.approx(16.0 * 100**-0.5)
    assert len(trials[0]) == 3


def test_fitted_slopes_exact_on_power_law(rates_csv):
    slopes = fitted_slopes(series_means(read_rows(rates_csv), ("d", "m"), "err_spec"))
    for value in slopes.values():
        assert value == pytest.approx(-0.5, abs=1e-9)


def test_plot_rates_writes_parseable_svg_with_series_labels(rates_csv, tmp_path):
    out = tmp_path / "rates.svg"
    before = rates_csv.read_bytes()
    written = plot_rates(rates_csv, out)
    assert written == out and out.exists()
    ElementTree.parse(out)
    svg = out.read_text(encoding="utf-8")
    assert svg.count('<g id="axes_') == 2
    assert "d=16, m=1" in svg and "d=16, m=2" in svg
    assert rates_csv.read_bytes() == before


def test_plot_rates_annotates_mean_slope(rates_csv, tmp_path):
    out = tmp_path / "rates.svg"
    plot_rates(rates_csv, out)
    match = re.search(r"mean fitted slope: (-?\d+\.\d+)", out.read_text(encoding="utf-8"))
    assert match is not None
    assert float(match.group(1)) == pytest.approx(-0.5, abs=0.001)


def test_plot_rates_inf_norm_variant(rates_csv, tmp_path):
    out = tmp_path / "rates_inf.svg"
    plot_rates(rates_csv, out, norm_kind="inf")
    assert "entrywise max error" in out.read_text(encoding="utf-8")


def test_plot_rates_rejects_unknown_norm(rates_csv, tmp_path):
    out = tmp_path / "never.svg"
    with pytest.raises(PlotsError):
        plot_rates(rates_csv, out, norm_kind="nuclear")
    assert not out.exists()


def test_plot_rates_empty_input_writes_nothing(empty_csv, tmp_path):
    out = tmp_path / "never.svg"
    with pytest.raises(EmptyDataError):
        plot_rates(empty_csv, out)
    assert not out.exists()


def test_plot_rates_png_output(rates_csv, tmp_path):
    out = tmp_path / "rates.png"
    plot_rates(rates_csv, out)
    assert out.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


def test_plot_rates_byte_stable_within_process(rates_csv, tmp_path):
    first, second = tmp_path / "a.svg", tmp_path / "b.svg"
    plot_rates(rates_csv, first)
    plot_rates(rates_csv, second)
    assert first.read_bytes() == second.read_bytes()


def test_plot_compare_single_panel_two_series_with_band(compare_csv, tmp_path):
    out = tmp_path / "compare.svg"
    plot_compare(compare_csv, out)
    ElementTree.parse(out)
    svg = out.read_text(encoding="utf-8")
    assert svg.count('<g id="axes_') == 1
    assert "debiased" in svg and "hmt" in svg
    # Sorted method order fixes the series order on the canvas.
    assert svg.index("debiased") < svg.index("hmt")
    assert "opacity: 0.25" in svg


def test_cli_success_paths(rates_csv, compare_csv, tmp_path, capsys):
    out_rates = tmp_path / "rates.svg"
    out_compare = tmp_path / "compare.svg"
    assert main(["rates", str(rates_csv), str(out_rates), "--norm", "inf"]) == 0
    assert main(["compare", str(compare_csv), str(out_compare)]) == 0
    printed = capsys.readouterr().out.splitlines()
    assert printed == [str(out_rates), str(out_compare)]
    assert out_rates.exists() and out_compare.exists()


def test_cli_empty_csv_exits_2_without_writing(empty_csv, tmp_path, capsys):
    out = tmp_path / "never.svg"
    assert main(["rates", str(empty_csv), str(out)]) == 2
    assert "covest-plots: error:" in capsys.readouterr().err
    assert not out.exists()
