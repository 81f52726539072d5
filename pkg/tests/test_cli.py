import numpy as np
import pytest

from cissa.cli import EXIT_INPUT, EXIT_NUMERIC, EXIT_OK, EXIT_USAGE, _exit_code, main
from cissa.exceptions import (
    ColumnMissing,
    DegenerateRegressor,
    EmptyMatrix,
    FileNotFound,
    InvalidParams,
    NonMonotoneDates,
    NotMonthlyCompatible,
    ZeroNorm,
)
from cissa.simulate import LinearModelParams, simulate_linear


@pytest.fixture
def monthly_csv(tmp_path):
    x = simulate_linear(LinearModelParams(seed=99)).observed
    lines = ["date,value"]
    year, month = 2005, 1
    for v in x:
        lines.append(f"{year:04d}-{month:02d},{float(v):.17g}")
        month += 1
        if month == 13:
            month, year = 1, year + 1
    p = tmp_path / "monthly.csv"
    p.write_text("\n".join(lines) + "\n")
    return p, x


def test_decompose_end_to_end(monthly_csv, tmp_path, capsys):
    """The decompose command writes a full, additive set of outputs.

    The shares table keeps the trend, cycle, seasonal, irregular order
    and sums to 100; the components file reproduces the input series.
    """
    csv, x = monthly_csv
    out = tmp_path / "out"
    code = main(
        [
            "decompose",
            "--input", str(csv),
            "--column", "value",
            "--date-column", "date",
            "--window", "48",
            "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    message = capsys.readouterr().out
    assert "decomposed 193 observations" in message

    shares = (out / "shares.csv").read_text().strip().splitlines()
    order = [line.split(",")[0] for line in shares[1:]]
    assert order == ["trend", "cycle", "seasonal", "irregular"]
    total = sum(float(line.split(",")[1]) for line in shares[1:])
    assert total == pytest.approx(100.0, abs=0.1)

    rows = (out / "components.csv").read_text().strip().splitlines()[1:]
    parsed = np.array([[float(c) for c in r.split(",")] for r in rows])
    assert np.allclose(parsed[:, 1], x, atol=1e-12)
    # the mean goes back into the zero-frequency component, so the
    # components still sum to the raw input
    assert np.allclose(parsed[:, 2:].sum(axis=1), x, atol=1e-9)
    assert (out / "seasonality_check.csv").exists()
    assert (out / "wcorr.csv").exists()


def test_decompose_no_demean_and_no_wcorr(monthly_csv, tmp_path):
    csv, x = monthly_csv
    out = tmp_path / "plain"
    code = main(
        [
            "decompose",
            "--input", str(csv),
            "--column", "value",
            "--window", "48",
            "--no-demean",
            "--no-wcorr",
            "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    assert not (out / "wcorr.csv").exists()
    rows = (out / "components.csv").read_text().strip().splitlines()[1:]
    parsed = np.array([[float(c) for c in r.split(",")] for r in rows])
    assert np.allclose(parsed[:, 2:].sum(axis=1), x, atol=1e-9)


def test_decompose_inline_bands(monthly_csv, tmp_path):
    csv, _ = monthly_csv
    out = tmp_path / "bands"
    code = main(
        [
            "decompose",
            "--input", str(csv),
            "--column", "value",
            "--window", "48",
            "--bands", "low=0:0.05;seasonal=1/12",
            "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    shares = (out / "shares.csv").read_text().strip().splitlines()
    names = [line.split(",")[0] for line in shares[1:]]
    assert names == ["seasonal", "irregular", "low"]


def test_decompose_config_file_with_flag_precedence(monthly_csv, tmp_path):
    csv, _ = monthly_csv
    cfg = tmp_path / "run.cfg"
    cfg.write_text("window = 24\ncolumn = value\nvariant = toeplitz\n")
    out = tmp_path / "cfg_out"
    code = main(
        [
            "decompose",
            "--input", str(csv),
            "--config", str(cfg),
            "--window", "48",  # flag beats the config's 24
            "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    spectrum_written = (out / "spectrum.csv").exists()
    assert not spectrum_written  # toeplitz has no eigenvalue spectrum file


def test_decompose_requires_window(monthly_csv, tmp_path, capsys):
    csv, _ = monthly_csv
    code = main(["decompose", "--input", str(csv), "--column", "value"])
    assert code == EXIT_USAGE
    err = capsys.readouterr().err
    assert err.startswith("error[InvalidParams]:")


def test_decompose_missing_file(tmp_path, capsys):
    code = main(
        ["decompose", "--input", str(tmp_path / "ghost.csv"), "--window", "24"]
    )
    assert code == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error[FileNotFound]:")
    # nothing was created on the way out
    assert not (tmp_path / "cissa_output").exists()


def test_decompose_wrong_column(monthly_csv, capsys):
    csv, _ = monthly_csv
    code = main(
        ["decompose", "--input", str(csv), "--column", "price", "--window", "24"]
    )
    assert code == EXIT_INPUT
    assert "error[ColumnMissing]" in capsys.readouterr().err


def test_usage_errors_from_argparse(capsys):
    assert main(["decompose"]) == EXIT_USAGE
    assert main(["frobnicate"]) == EXIT_USAGE
    capsys.readouterr()


def test_version_flag(capsys):
    assert main(["--version"]) == 0
    assert capsys.readouterr().out.startswith("cissa ")


def test_out_dir_env_default(monthly_csv, tmp_path, monkeypatch):
    csv, _ = monthly_csv
    target = tmp_path / "from_env"
    monkeypatch.setenv("CISSA_OUT_DIR", str(target))
    code = main(
        ["decompose", "--input", str(csv), "--column", "value", "--window", "24"]
    )
    assert code == EXIT_OK
    assert (target / "shares.csv").exists()


def test_simulate_command(tmp_path, capsys):
    out = tmp_path / "mc"
    code = main(
        [
            "simulate",
            "--model", "linear",
            "--reps", "4",
            "--seed", "1",
            "--window", "48",
            "--variant", "cissa",
            "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    text = capsys.readouterr().out
    assert "linear model, 4 replications" in text
    assert "[cissa] failures: 0" in text
    assert (out / "quantiles_linear_cissa.csv").exists()


def test_simulate_rejects_unknown_variant(tmp_path, capsys):
    code = main(["simulate", "--reps", "2", "--variant", "svd", "--out", str(tmp_path)])
    assert code == EXIT_USAGE
    assert "error[InvalidParams]" in capsys.readouterr().err


def test_spectrum_command(monthly_csv, tmp_path, capsys):
    csv, _ = monthly_csv
    out = tmp_path / "spec"
    code = main(
        [
            "spectrum",
            "--input", str(csv),
            "--column", "value",
            "--window", "48",
            "--out", str(out),
        ]
    )
    assert code == EXIT_OK
    lines = (out / "spectrum.csv").read_text().strip().splitlines()
    assert lines[0] == "frequency,eigenvalue"
    assert len(lines) == 49
    assert "period" in capsys.readouterr().out


def test_exit_code_mapping():
    assert _exit_code(FileNotFound("x")) == EXIT_INPUT
    assert _exit_code(ColumnMissing("x")) == EXIT_INPUT
    assert _exit_code(NonMonotoneDates("x")) == EXIT_INPUT
    assert _exit_code(InvalidParams("x")) == EXIT_USAGE
    assert _exit_code(NotMonthlyCompatible("x")) == EXIT_USAGE
    assert _exit_code(ZeroNorm("x")) == EXIT_NUMERIC
    assert _exit_code(DegenerateRegressor("x")) == EXIT_NUMERIC
    assert _exit_code(EmptyMatrix("x")) == EXIT_NUMERIC
