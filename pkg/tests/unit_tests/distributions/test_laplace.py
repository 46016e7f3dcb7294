import math

import numpy as np
import pytest

from data_models.interval_data import IntervalObservation
from data_models.params import LaplaceParams
from distributions import cdf, interval_log_mass, laplace_mstep, pdf, truncated_quantile
from exceptions import DegenerateMStepError

PARAMS = LaplaceParams(location=2.0, scale=1.5)


def test_pdf_peak():
    assert pdf(PARAMS, 2.0) == pytest.approx(1.0 / 3.0)


def test_cdf_halves():
    assert cdf(PARAMS, 2.0) == 0.5
    assert cdf(PARAMS, 2.0 + 1.5) == pytest.approx(1.0 - 0.5 * math.exp(-1.0))
    assert cdf(PARAMS, -math.inf) == 0.0
    assert cdf(PARAMS, math.inf) == 1.0


@pytest.mark.parametrize("lower, upper", [(3.0, 6.0), (-4.0, 0.5), (-1.0, 5.0), (-math.inf, 2.5)])
def test_interval_log_mass_matches_cdf_difference(lower, upper):
    expected = math.log(cdf(PARAMS, upper) - cdf(PARAMS, lower))
    assert interval_log_mass(PARAMS, lower, upper) == pytest.approx(expected, rel=1e-12)


def test_far_tail_interval_keeps_mass():
    value = interval_log_mass(PARAMS, 2.0 + 1.5 * 800.0, math.inf)
    assert value == pytest.approx(math.log(0.5) - 800.0, rel=1e-14)


def test_truncated_quantile_one_sided_branches():
    right = truncated_quantile(PARAMS, IntervalObservation(3.5, math.inf), 0.5)
    left = truncated_quantile(PARAMS, IntervalObservation(-math.inf, 0.5), 0.5)
    assert right == pytest.approx(3.5 + 1.5 * math.log(2.0), rel=1e-14)
    assert left == pytest.approx(0.5 - 1.5 * math.log(2.0), rel=1e-14)


def test_truncated_quantile_symmetric_straddle():
    q = truncated_quantile(PARAMS, IntervalObservation(-13.0, 17.0), 0.5)
    assert q == pytest.approx(2.0, abs=1e-13)


def test_laplace_mstep_arithmetic():
    location, scale = laplace_mstep(np.array([[1.0], [2.0], [3.0]]))
    assert location == 2.0
    assert scale == pytest.approx(2.0 / 3.0)


def test_laplace_mstep_pools_all_samples():
    samples = np.array([[1.0, 10.0], [2.0, 3.0]])
    location, scale = laplace_mstep(samples)
    assert location == 2.5
    assert scale == pytest.approx(np.mean(np.abs(samples - 2.5)))


def test_laplace_mstep_constant_samples():
    with pytest.raises(DegenerateMStepError):
        laplace_mstep(np.full((3, 2), 4.0))
