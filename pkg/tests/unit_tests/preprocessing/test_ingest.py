import math

import numpy as np
import pytest

from data_models.interval_data import Dataset, GroupedRow, IntervalObservation
from exceptions import EmptyDatasetError, IntervalDataError, SupportViolationError
from preprocessing.ingest import (
    expand_grouped,
    parse_grouped_csv,
    parse_interval_csv,
    read_dataset,
    serialize_interval_csv,
    validate_for_model,
)


def test_parse_interval_csv_exact_and_censored():
    dataset = parse_interval_csv("6,6\n9,inf")
    assert dataset.n == 2
    assert dataset.m == 1
    assert dataset[0] == IntervalObservation(6.0, 6.0)
    assert dataset[1] == IntervalObservation(9.0, math.inf)


def test_parse_interval_csv_type2_sample():
    text = "\n".join(["1.613,1.613"] * 7 + ["1.778,inf"] * 3)
    dataset = parse_interval_csv(text)
    assert dataset.n == 10
    assert dataset.m == 7


def test_parse_interval_csv_header_and_case_insensitive_tokens():
    dataset = parse_interval_csv("Lower, Upper\n-INF, 2\n1.5, Inf\n\n")
    assert dataset.n == 2
    assert dataset[0].is_left_censored()
    assert dataset[1].is_right_censored()


def test_parse_interval_csv_lower_above_upper():
    with pytest.raises(IntervalDataError, match="lower > upper") as exc_info:
        parse_interval_csv("1,2\n5,3")
    assert exc_info.value.record_index == 1


@pytest.mark.parametrize("text, match", [
    ("1,abc", "not a number"),
    ("1,nan", "NaN"),
    ("-inf,inf", "both bounds are infinite"),
    ("1,2,3", "expected 2 fields"),
    ("1,2\n3,4,5", "malformed CSV"),
])
def test_parse_interval_csv_errors(text, match):
    with pytest.raises(IntervalDataError, match=match):
        parse_interval_csv(text)


@pytest.mark.parametrize("text", ["", "lower,upper\n"])
def test_parse_interval_csv_empty(text):
    with pytest.raises(EmptyDatasetError):
        parse_interval_csv(text)


def test_serialize_then_parse_is_identity():
    rng = np.random.default_rng(3)
    values = rng.exponential(size=20)
    lower = list(values) + [0.1, 1.0 / 3.0, -math.inf]
    upper = list(values) + [math.inf, 0.7, 2.0]
    dataset = Dataset.from_bounds(lower, upper)
    text = serialize_interval_csv(dataset)
    assert text.splitlines()[0] == "lower,upper"
    reparsed = parse_interval_csv(text)
    assert reparsed == dataset
    np.testing.assert_array_equal(reparsed.exact_mask, dataset.exact_mask)


def test_parse_grouped_csv():
    rows = parse_grouped_csv("lower,upper,count\n0,6.12,5\n63.48,inf,73\n")
    assert rows == [GroupedRow(0.0, 6.12, 5), GroupedRow(63.48, math.inf, 73)]


@pytest.mark.parametrize("text, match", [
    ("0,1,-2", "nonnegative"),
    ("0,1,1.5", "integer"),
    ("1,1,2", "lower < upper"),
    ("0,1", "expected 3 fields"),
])
def test_parse_grouped_csv_errors(text, match):
    with pytest.raises(IntervalDataError, match=match):
        parse_grouped_csv(text)


def test_expand_grouped_repeats_windows():
    dataset = expand_grouped([GroupedRow(0, 2, 3)])
    assert dataset.n == 3
    assert all(obs == IntervalObservation(0.0, 2.0) for obs in dataset)


def test_expand_grouped_all_zero_counts():
    with pytest.raises(EmptyDatasetError):
        expand_grouped([GroupedRow(0, 1, 0)])


def test_expand_grouped_nelson_table(nelson_grouped_csv_path):
    dataset = read_dataset(nelson_grouped_csv_path, grouped=True)
    assert dataset.n == 167
    assert dataset.m == 0
    assert dataset.n_right_censored == 73
    assert all(obs == IntervalObservation(63.48, math.inf) for obs in dataset.observations[-73:])


def test_read_dataset_interval_file(gupta_csv_path):
    dataset = read_dataset(gupta_csv_path)
    assert dataset.summary()["exact"] == 7
    assert dataset.n_right_censored == 3


def test_read_dataset_missing_file(tmpdir):
    with pytest.raises(FileNotFoundError):
        read_dataset(tmpdir.join("missing.csv").strpath)


def test_validate_for_model_rejects_negative_lifetimes():
    dataset = Dataset.from_bounds([1.0, -1.0], [1.0, 2.0])
    with pytest.raises(SupportViolationError, match="record 1"):
        validate_for_model(dataset, "exponential")


def test_validate_for_model_allows_left_censoring_for_location_models():
    dataset = Dataset.from_bounds([-math.inf], [2.0])
    validate_for_model(dataset, "normal")
    validate_for_model(dataset, "laplace")
    with pytest.raises(SupportViolationError):
        validate_for_model(dataset, "weibull")


def test_validate_for_model_rejects_exact_zero_where_density_degenerates():
    dataset = Dataset.from_bounds([1.0, 0.0, 0.0], [1.0, 0.0, 2.0])
    for model in ("weibull", "rayleigh"):
        with pytest.raises(SupportViolationError, match="record 1"):
            validate_for_model(dataset, model)
    validate_for_model(dataset, "exponential")
    validate_for_model(Dataset.from_bounds([0.0, 1.0], [2.0, math.inf]), "weibull")


def test_validate_for_model_accepts_leukemia(leukemia):
    validate_for_model(leukemia, "exponential")
