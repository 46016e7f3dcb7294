import os

import numpy as np
import pytest

from data_models.fit_models import FitConfig, Strategy
from data_models.interval_data import Dataset, IntervalObservation
from data_models.params import (
    ExponentialParams,
    LaplaceParams,
    NormalParams,
    RayleighParams,
    WeibullParams,
)
from fixtures import datasets

TEST_RESOURCES_DIR = os.path.join(os.path.dirname(os.path.abspath(__file__)), "test_resources")


@pytest.fixture
def test_resources_dir():
    return TEST_RESOURCES_DIR


@pytest.fixture
def gupta_csv_path():
    """Interval CSV of the Gupta sample, with header and inf tokens."""
    return os.path.join(TEST_RESOURCES_DIR, "gupta.csv")


@pytest.fixture
def nelson_grouped_csv_path():
    """Grouped CSV of the cracked-parts inspection data."""
    return os.path.join(TEST_RESOURCES_DIR, "nelson_cracks_grouped.csv")


@pytest.fixture
def study_config_text():
    """A small normal study that runs in well under a second."""
    return (
        "model = normal\n"
        "true_params = 50, 5\n"
        "n = 10\n"
        "r = 2\n"
        "replications = 3\n"
        "iterations_per_fit = 5\n"
        "cells = em, mcem:10, qem:10\n"
        "seed = 7\n"
    )


@pytest.fixture
def small_censored_dataset():
    """Four exact lifetimes, one finite interval and one right-censored lifetime."""
    return Dataset((
        IntervalObservation(1.0, 1.0),
        IntervalObservation(2.0, 2.0),
        IntervalObservation(2.5, 2.5),
        IntervalObservation(3.0, 3.0),
        IntervalObservation(1.5, 4.0),
        IntervalObservation(3.0, np.inf),
    ))


@pytest.fixture
def leukemia():
    return datasets.leukemia_dataset()


@pytest.fixture
def gupta():
    return datasets.gupta_dataset()


@pytest.fixture
def balakrishnan():
    return datasets.balakrishnan_dataset()


@pytest.fixture
def rayleigh20():
    return datasets.rayleigh20_dataset()


@pytest.fixture
def nelson_cracks():
    return datasets.nelson_cracks_dataset()


@pytest.fixture
def params_by_model():
    """One parameter vector per model, away from the default starting values."""
    return {
        "exponential": ExponentialParams(rate=0.5),
        "normal": NormalParams(location=1.0, scale=2.0),
        "laplace": LaplaceParams(location=-1.0, scale=1.5),
        "rayleigh": RayleighParams(scale=2.0),
        "weibull": WeibullParams(rate=0.3, shape=1.7),
    }


@pytest.fixture
def qem_config():
    return FitConfig(strategy=Strategy.QEM, K=200, eps=1e-8, max_iterations=500)
