import json

import pandas as pd
import pytest

import cli
from config import paths
from data_models.fit_models import FitResult


def test_fit_grouped_weibull(capsys, nelson_grouped_csv_path):
    code = cli.main(["fit", "--model", "weibull", "--data", nelson_grouped_csv_path, "--grouped",
                     "--init", "1,1", "--output", "json"])
    assert code == cli.EXIT_OK
    result = FitResult.model_validate_json(capsys.readouterr().out)
    assert result.converged
    assert result.estimate.rate == pytest.approx(0.0017448, rel=2e-2)
    assert result.estimate.shape == pytest.approx(1.4867, rel=5e-3)


def test_json_output_round_trips(capsys, gupta_csv_path):
    code = cli.main(["fit", "--model", "normal", "--data", gupta_csv_path,
                     "--strategy", "mcem", "--k", "50", "--seed", "11", "--output", "json"])
    out = capsys.readouterr().out.rstrip("\n")
    assert code == cli.EXIT_OK
    assert FitResult.model_validate_json(out).model_dump_json(indent=2) == out
    assert json.loads(out)["seed"] == 11


def test_bounds_out_of_order_is_invalid_data(capsys, tmpdir):
    data = tmpdir.join("bad.csv")
    data.write("lower,upper\n1,1\n5,2\n")
    assert cli.main(["fit", "--model", "normal", "--data", data.strpath]) == cli.EXIT_DATA
    assert "invalid data" in capsys.readouterr().err


def test_negative_lifetime_is_invalid_data(capsys, tmpdir):
    data = tmpdir.join("negative.csv")
    data.write("lower,upper\n-1,2\n3,3\n")
    assert cli.main(["fit", "--model", "weibull", "--data", data.strpath]) == cli.EXIT_DATA
    assert "support" in capsys.readouterr().err


@pytest.mark.parametrize("model", ["weibull", "rayleigh"])
def test_exact_zero_lifetime_is_invalid_data(capsys, tmpdir, model):
    data = tmpdir.join("zero.csv")
    data.write("0,0\n1,1\n2,2\n3,inf\n")
    assert cli.main(["fit", "--model", model, "--data", data.strpath]) == cli.EXIT_DATA
    err = capsys.readouterr().err
    assert "invalid data" in err
    assert "record 0" in err


def test_exact_em_for_weibull_is_a_usage_error(capsys, nelson_grouped_csv_path):
    code = cli.main(["fit", "--model", "weibull", "--data", nelson_grouped_csv_path,
                     "--grouped", "--strategy", "em"])
    assert code == cli.EXIT_USAGE
    assert capsys.readouterr().err.startswith("error:")


def test_simulate_writes_study_table(capsys, tmpdir, study_config_text):
    config_file = tmpdir.join("study.cfg")
    config_file.write(study_config_text)
    out_dir = tmpdir.join("outputs").strpath
    assert cli.main(["simulate", "--config", config_file.strpath, "--out", out_dir]) == cli.EXIT_OK

    table = pd.read_csv(tmpdir.join("outputs", paths.STUDY_TABLE_CSV_FILE_NAME).strpath)
    assert len(table) == 6
    assert sorted(table["strategy"].unique()) == ["em", "mcem", "qem"]
    assert tmpdir.join("outputs", paths.STUDY_TABLE_TEXT_FILE_NAME).check(file=1)
    assert "Study table written to" in capsys.readouterr().out


def test_fixtures_leukemia(capsys):
    assert cli.main(["fixtures", "--name", "leukemia"]) == cli.EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("== leukemia")
    assert "39.89" in out
    assert "em:" in out and "qem:" in out
