import os
from typing import Tuple

import pandas as pd

from config import paths
from utils import save_dataframe_as_csv

STUDY_FLOAT_FORMAT = "%.6e"


def format_study_table(table: pd.DataFrame) -> str:
    """Aligned text rendering of the study table; exact EM rows show K as -."""
    k_column = table["K"].astype(object).where(table["K"].notna(), "-")
    return table.assign(K=k_column).to_string(
        index=False,
        na_rep="-",
        float_format=lambda value: f"{value:.3e}",
    )


def write_study_outputs(
        table: pd.DataFrame,
        out_dir: str = paths.SIMULATION_OUTPUTS_DIR) -> Tuple[str, str]:
    """
    Writes the study table as CSV and as an aligned text table.

    Args:
        table (pd.DataFrame): Output of run_study.
        out_dir (str): Directory to write into, created if needed.

    Returns:
        Tuple[str, str]: Paths of the CSV file and the text file.
    """
    os.makedirs(out_dir, exist_ok=True)
    csv_path = os.path.join(out_dir, paths.STUDY_TABLE_CSV_FILE_NAME)
    text_path = os.path.join(out_dir, paths.STUDY_TABLE_TEXT_FILE_NAME)
    save_dataframe_as_csv(table, csv_path, float_format=STUDY_FLOAT_FORMAT)
    with open(text_path, "w", encoding="utf-8") as file:
        file.write(format_study_table(table) + "\n")
    return csv_path, text_path
