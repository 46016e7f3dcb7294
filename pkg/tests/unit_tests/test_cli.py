import json

import pytest

import cli
from data_models.fit_models import Strategy, XiScheme
from data_models.params import WeibullParams
from exceptions import (
    DegenerateMStepError,
    IntervalDataError,
    StudyConfigError,
    ZeroMassIntervalError,
)


def _fit_args(*extra):
    return cli.build_parser().parse_args(["fit", "--model", "weibull", "--data", "x.csv", *extra])


def test_build_fit_config_uses_defaults():
    config = cli.build_fit_config(_fit_args())
    assert config.strategy is Strategy.QEM
    assert config.K == 1000
    assert config.eps == 1e-5
    assert config.max_iterations == 500
    assert config.initial is None


def test_build_fit_config_applies_flags():
    args = _fit_args("--strategy", "mcem", "--k", "50", "--xi-scheme", "left",
                     "--eps", "1e-8", "--max-iter", "20", "--seed", "3", "--init", "0.5, 2")
    config = cli.build_fit_config(args)
    assert config.strategy is Strategy.MCEM
    assert config.K == 50
    assert config.xi_scheme is XiScheme.LEFT
    assert config.eps == 1e-8
    assert config.max_iterations == 20
    assert config.seed == 3
    assert config.initial == WeibullParams(rate=0.5, shape=2.0)


def test_parser_rejects_unknown_model():
    assert cli.main(["fit", "--model", "gamma", "--data", "x.csv"]) == cli.EXIT_USAGE


def test_parser_requires_command():
    assert cli.main([]) == cli.EXIT_USAGE


def test_bad_init_is_a_usage_error(gupta_csv_path):
    assert cli.main(["fit", "--model", "normal", "--data", gupta_csv_path, "--init", "1"]) == cli.EXIT_USAGE


def test_missing_data_file(tmpdir):
    code = cli.main(["fit", "--model", "normal", "--data", tmpdir.join("none.csv").strpath])
    assert code == cli.EXIT_DATA


@pytest.mark.parametrize(
    "error, expected",
    [
        (IntervalDataError("bad record"), cli.EXIT_DATA),
        (DegenerateMStepError("collapsed"), cli.EXIT_FIT),
        (ZeroMassIntervalError("no mass"), cli.EXIT_DATA),
    ],
)
def test_fit_errors_map_to_exit_status(mocker, gupta_csv_path, error, expected):
    mocker.patch("cli.run_fit", side_effect=error)
    assert cli.main(["fit", "--model", "normal", "--data", gupta_csv_path]) == expected


def test_zero_mass_during_fit_is_a_fit_failure(mocker, gupta_csv_path):
    error = ZeroMassIntervalError("no mass", observation_index=2)
    error.partial_result = object()
    mocker.patch("cli.run_fit", side_effect=error)
    assert cli.main(["fit", "--model", "normal", "--data", gupta_csv_path]) == cli.EXIT_FIT


def test_unexpected_error_writes_error_file(mocker, tmpdir, gupta_csv_path):
    error_file = tmpdir.join("errors", "fit_error.txt").strpath
    mocker.patch.dict(cli.ERROR_FILE_PATHS, {"fit": error_file})
    mocker.patch("cli.run_fit", side_effect=RuntimeError("boom"))
    assert cli.main(["fit", "--model", "normal", "--data", gupta_csv_path]) == cli.EXIT_UNEXPECTED
    with open(error_file, encoding="utf-8") as file:
        assert "RuntimeError: boom" in file.read()


def test_study_config_error_is_a_usage_error(mocker, tmpdir):
    mocker.patch("cli.load_study_config", side_effect=StudyConfigError("missing required key 'n'", key="n"))
    assert cli.main(["simulate", "--config", "study.cfg", "--out", tmpdir.strpath]) == cli.EXIT_USAGE


def test_missing_study_config(tmpdir):
    code = cli.main(["simulate", "--config", tmpdir.join("none.cfg").strpath, "--out", tmpdir.strpath])
    assert code == cli.EXIT_USAGE


def test_fit_text_report(capsys, gupta_csv_path):
    code = cli.main(["fit", "--model", "normal", "--data", gupta_csv_path, "--strategy", "em",
                     "--eps", "1e-10", "--init", "0,1", "--trace"])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    assert "model: normal (strategy=em)" in out
    assert "converged: True" in out
    assert "loglik" in out


def test_fit_json_output_and_save(capsys, tmpdir, gupta_csv_path):
    save_path = tmpdir.join("result.json").strpath
    code = cli.main(["fit", "--model", "normal", "--data", gupta_csv_path, "--k", "100",
                     "--output", "json", "--save", save_path])
    out = capsys.readouterr().out
    assert code == cli.EXIT_OK
    payload = json.loads(out)
    assert payload["model"] == "normal"
    assert payload["strategy"] == "qem"
    with open(save_path, encoding="utf-8") as file:
        assert file.read() == out.rstrip("\n")


def test_fit_exponential_mean(capsys, tmpdir):
    data = tmpdir.join("times.csv")
    data.write("lower,upper\n1,1\n2,2\n3,inf\n")
    code = cli.main(["fit", "--model", "exponential", "--data", data.strpath, "--strategy", "em",
                     "--eps", "1e-12", "--max-iter", "2000", "--exp-mean"])
    assert code == cli.EXIT_OK
    assert "mean=3" in capsys.readouterr().out


def test_fixtures_command(mocker, capsys):
    replay = mocker.patch("cli.replay_fixtures", return_value=[])
    assert cli.main(["fixtures", "--name", "gupta"]) == cli.EXIT_OK
    replay.assert_called_once_with("gupta")


def test_fixtures_command_rejects_unknown_name():
    assert cli.main(["fixtures", "--name", "iris"]) == cli.EXIT_USAGE


def test_log_level_flag(mocker, gupta_csv_path):
    set_level = mocker.patch("cli.set_log_level")
    mocker.patch("cli.run_fit", side_effect=DegenerateMStepError("collapsed"))
    cli.main(["fit", "--model", "normal", "--data", gupta_csv_path, "--log-level", "debug"])
    set_level.assert_called_once_with("DEBUG")
