import math

import numpy as np
import pytest

from data_models.interval_data import IntervalObservation
from data_models.params import WeibullParams
from distributions import cdf, logpdf, pdf, truncated_quantile, weibull_mstep
from exceptions import NoUniqueRootError


def test_pdf_reduces_to_exponential():
    assert pdf(WeibullParams(rate=1.0, shape=1.0), 2.0) == pytest.approx(math.exp(-2.0), rel=1e-14)


def test_logpdf_at_zero_depends_on_shape():
    assert logpdf(WeibullParams(rate=2.0, shape=1.0), 0.0) == pytest.approx(math.log(2.0))
    assert logpdf(WeibullParams(rate=2.0, shape=2.0), 0.0) == -math.inf
    assert logpdf(WeibullParams(rate=2.0, shape=0.5), 0.0) == math.inf


def test_cdf():
    assert cdf(WeibullParams(rate=1.0, shape=2.0), 1.0) == pytest.approx(1.0 - math.exp(-1.0), rel=1e-14)
    assert cdf(WeibullParams(rate=1.0, shape=2.0), math.inf) == 1.0


def test_truncated_quantile_on_whole_support():
    q = truncated_quantile(
        WeibullParams(rate=1.0, shape=1.0), IntervalObservation(0.0, math.inf), 1.0 - math.exp(-1.0))
    assert q == pytest.approx(1.0, rel=1e-14)
    cdf_value = cdf(WeibullParams(rate=1.0, shape=1.0), q)
    assert cdf_value == pytest.approx(1.0 - math.exp(-1.0), rel=1e-14)


def test_truncated_quantile_far_right_tail():
    params = WeibullParams(rate=1.0, shape=2.0)
    q = truncated_quantile(params, IntervalObservation(40.0, math.inf), 0.5)
    assert q == pytest.approx(math.sqrt(1600.0 + math.log(2.0)), rel=1e-14)


def _profile_loglik(data, shape):
    rate = len(data) / np.sum(data**shape)
    return np.sum(np.log(rate) + np.log(shape) + (shape - 1) * np.log(data) - rate * data**shape)


def test_complete_data_mstep_solves_score_equation():
    data = np.random.default_rng(5).weibull(1.8, size=60) * 3.0
    rate, shape = weibull_mstep(data[:, np.newaxis])
    power = data**shape
    score = 1.0 / shape + np.mean(np.log(data)) - np.sum(power * np.log(data)) / np.sum(power)
    assert abs(score) < 1e-10
    assert rate == pytest.approx(len(data) / np.sum(power), rel=1e-12)
    best = _profile_loglik(data, shape)
    assert best >= _profile_loglik(data, shape * (1 + 1e-4))
    assert best >= _profile_loglik(data, shape * (1 - 1e-4))


def test_weibull_mstep_constant_samples():
    with pytest.raises(NoUniqueRootError):
        weibull_mstep(np.full((4, 3), 2.5))
