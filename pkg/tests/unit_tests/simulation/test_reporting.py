import pandas as pd

from simulation.reporting import format_study_table, write_study_outputs
from simulation.study import STUDY_TABLE_COLUMNS


def _table():
    table = pd.DataFrame(
        [
            ["em", None, "scale", 1.5e-4, 2.31e-7, 2.5e-7, 1.0, 0, 0.0, True],
            ["qem", 100, "scale", -2.0e-6, 4.0e-9, 4.1e-9, 57.75, 1, 0.005, True],
        ],
        columns=STUDY_TABLE_COLUMNS,
    )
    table["K"] = table["K"].astype("Int64")
    return table


def test_format_study_table_shows_missing_k_as_dash():
    text = format_study_table(_table())
    lines = text.splitlines()
    assert lines[0].split() == STUDY_TABLE_COLUMNS
    assert lines[1].split()[:3] == ["em", "-", "scale"]
    assert "2.310e-07" in lines[1]
    assert "5.775e+01" in lines[2]


def test_write_study_outputs(tmpdir):
    out_dir = tmpdir.join("study").strpath
    csv_path, text_path = write_study_outputs(_table(), out_dir)
    with open(csv_path, encoding="utf-8") as file:
        lines = file.read().splitlines()
    assert lines[0] == ",".join(STUDY_TABLE_COLUMNS)
    assert lines[1].startswith("em,,scale,1.500000e-04,2.310000e-07")
    assert lines[2].startswith("qem,100,scale,")
    reloaded = pd.read_csv(csv_path)
    assert reloaded["mse"].tolist() == [2.31e-7, 4.0e-9]
    with open(text_path, encoding="utf-8") as file:
        assert file.read() == format_study_table(_table()) + "\n"
