"""
Reading and writing interval data.

Two comma-separated schemas are supported, selected by the caller:

    lower,upper          one unit per row
    lower,upper,count    one inspection window per row

Headers are optional and `inf` / `-inf` (any case) mark unbounded ends.
"""
import io
import math
from typing import List, Sequence

import pandas as pd

from data_models.interval_data import Dataset, GroupedRow, IntervalObservation
from data_models.params import get_params_class
from exceptions import EmptyDatasetError, IntervalDataError, SupportViolationError
from logger import get_logger
from utils import read_text_file

logger = get_logger(__name__)

INTERVAL_COLUMNS = ["lower", "upper"]
GROUPED_COLUMNS = ["lower", "upper", "count"]


def _read_records(text: str, columns: Sequence[str]) -> pd.DataFrame:
    """
    Splits CSV text into string cells, dropping an optional header row.

    Args:
        text (str): The CSV content.
        columns (Sequence[str]): Expected column names.

    Returns:
        pd.DataFrame: String cells, one row per record.

    Raises:
        EmptyDatasetError: If the text holds no records.
        IntervalDataError: If a record has the wrong number of fields.
    """
    try:
        records = pd.read_csv(
            io.StringIO(text),
            header=None,
            dtype=str,
            keep_default_na=False,
            skipinitialspace=True,
            skip_blank_lines=True,
        )
    except pd.errors.EmptyDataError:
        raise EmptyDatasetError("no records found") from None
    except pd.errors.ParserError as exc:
        raise IntervalDataError(f"malformed CSV: {exc}") from exc

    if records.shape[1] != len(columns):
        raise IntervalDataError(
            f"expected {len(columns)} fields per record ({','.join(columns)}), "
            f"got {records.shape[1]}")
    records.columns = list(columns)
    records = records.apply(lambda col: col.str.strip())

    first_row = [cell.lower() for cell in records.iloc[0]]
    if first_row == list(columns):
        records = records.iloc[1:].reset_index(drop=True)
    if records.empty:
        raise EmptyDatasetError("no records found")
    return records


def _to_float(token: str, record_index: int, column: str) -> float:
    try:
        value = float(token)
    except (TypeError, ValueError):
        raise IntervalDataError(
            f"field '{column}' is not a number: {token!r}", record_index=record_index) from None
    if math.isnan(value):
        raise IntervalDataError(f"field '{column}' is NaN", record_index=record_index)
    return value


def _to_count(token: str, record_index: int) -> int:
    value = _to_float(token, record_index, "count")
    if not value.is_integer():
        raise IntervalDataError(f"count must be an integer, got {token!r}", record_index=record_index)
    return int(value)


def parse_interval_csv(text: str) -> Dataset:
    """
    Parses `lower,upper` records into a Dataset, preserving record order.

    Args:
        text (str): The CSV content.

    Returns:
        Dataset: The validated dataset.

    Raises:
        IntervalDataError: On a malformed field, lower > upper, or both bounds infinite.
            The message names the offending record (0-based, header excluded).
        EmptyDatasetError: If there are no records.
    """
    records = _read_records(text, INTERVAL_COLUMNS)
    observations = []
    for index, (lower, upper) in enumerate(records.itertuples(index=False, name=None)):
        a = _to_float(lower, index, "lower")
        b = _to_float(upper, index, "upper")
        try:
            observations.append(IntervalObservation(a, b))
        except IntervalDataError as exc:
            raise IntervalDataError(str(exc), record_index=index) from exc
    dataset = Dataset(tuple(observations))
    logger.info(f"Parsed interval data: {dataset.summary()}")
    return dataset


def parse_grouped_csv(text: str) -> List[GroupedRow]:
    """
    Parses `lower,upper,count` inspection records.

    Args:
        text (str): The CSV content.

    Returns:
        List[GroupedRow]: The rows in file order.

    Raises:
        IntervalDataError: On a malformed field, lower >= upper, or a negative
            or fractional count.
    """
    records = _read_records(text, GROUPED_COLUMNS)
    rows = []
    for index, (lower, upper, count) in enumerate(records.itertuples(index=False, name=None)):
        a = _to_float(lower, index, "lower")
        b = _to_float(upper, index, "upper")
        c = _to_count(count, index)
        try:
            rows.append(GroupedRow(a, b, c))
        except IntervalDataError as exc:
            raise IntervalDataError(str(exc), record_index=index) from exc
    return rows


def expand_grouped(rows: Sequence[GroupedRow]) -> Dataset:
    """
    Turns inspection counts into interval observations.

    Each row contributes `count` copies of its window, in row order.

    Args:
        rows (Sequence[GroupedRow]): Validated rows.

    Returns:
        Dataset: n = Σ count observations.

    Raises:
        EmptyDatasetError: If every count is zero.
    """
    observations = []
    for row in rows:
        observations.extend([IntervalObservation(row.lower, row.upper)] * row.count)
    if not observations:
        raise EmptyDatasetError("grouped data has no failures in any window")
    dataset = Dataset(tuple(observations))
    logger.info(f"Expanded {len(rows)} grouped rows: {dataset.summary()}")
    return dataset


def _format_bound(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return repr(float(value))


def serialize_interval_csv(dataset: Dataset) -> str:
    """
    Writes a dataset as `lower,upper` CSV with a header.

    Finite values use their shortest round-trip representation so that parsing the
    output reproduces the dataset exactly, exactness included.

    Args:
        dataset (Dataset): Dataset to write.

    Returns:
        str: The CSV text.
    """
    lines = [",".join(INTERVAL_COLUMNS)]
    lines.extend(f"{_format_bound(obs.lower)},{_format_bound(obs.upper)}" for obs in dataset)
    return "\n".join(lines) + "\n"


def read_dataset(file_path: str, grouped: bool = False) -> Dataset:
    """
    Reads a dataset from a CSV file.

    Args:
        file_path (str): Path to the CSV file.
        grouped (bool): Read the `lower,upper,count` schema and expand it.

    Returns:
        Dataset: The validated dataset.
    """
    text = read_text_file(file_path)
    if grouped:
        return expand_grouped(parse_grouped_csv(text))
    return parse_interval_csv(text)


def validate_for_model(dataset: Dataset, model: str) -> None:
    """
    Checks that every observation lies in the support of a model.

    Exponential, Rayleigh and Weibull live on [0, inf) and need nonnegative lower
    bounds. Normal and Laplace accept -inf. Rayleigh and Weibull also reject an
    exact lifetime of 0, where their density vanishes or diverges.

    Args:
        dataset (Dataset): The data.
        model (str): Model name.

    Raises:
        SupportViolationError: Naming the first record outside the support.
        ValueError: If the model is unknown.
    """
    params_class = get_params_class(model)
    if not params_class.nonnegative_support:
        return
    negative = dataset.lower < 0
    if negative.any():
        index = int(negative.argmax())
        raise SupportViolationError(
            f"lower bound {dataset.lower[index]} is outside the support [0, inf) "
            f"of the {model} model",
            record_index=index,
        )
    if params_class.exact_zero_allowed:
        return
    at_zero = dataset.exact_mask & (dataset.lower == 0)
    if at_zero.any():
        index = int(at_zero.argmax())
        raise SupportViolationError(
            f"exact lifetime 0 has no density under the {model} model; "
            f"record it as an interval such as [0, b]",
            record_index=index,
        )
