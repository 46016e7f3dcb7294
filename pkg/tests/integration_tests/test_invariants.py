"""
Randomized property suites over many generated instances.
"""
import math

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
from distributions import exp_estep, logpdf, normal_estep
from em.engine import run_fit
from oracle.quadrature import quadrature_estep
from root_finding.weibull_shape import ShapeEquationInputs, beta_bounds, g_of_beta, h_of_beta, solve_beta

INSTANCES = 1000


def _censored_dataset(rng, draws, nonnegative):
    observations = []
    for x in draws:
        kind = rng.integers(4)
        if kind <= 1:
            observations.append(IntervalObservation(x, x))
        elif kind == 2:
            observations.append(IntervalObservation(x * rng.uniform(0.3, 1.0) if nonnegative else x - rng.exponential(), math.inf))
        else:
            low = x * rng.uniform(0.3, 1.0) if nonnegative else x - rng.exponential()
            observations.append(IntervalObservation(low, x + rng.exponential()))
    return Dataset(tuple(observations))


def _relative_drops(loglik):
    loglik = np.asarray(loglik)
    return np.diff(loglik) / np.maximum(1.0, np.abs(loglik[1:]))


@pytest.mark.slow
def test_exact_em_never_decreases_observed_loglik():
    rng = np.random.default_rng(20240611)
    for _ in range(INSTANCES // 2):
        rate = rng.uniform(0.2, 5.0)
        dataset = _censored_dataset(rng, rng.exponential(1.0 / rate, size=15), nonnegative=True)
        config = FitConfig(strategy=Strategy.EM, eps=1e-12, max_iterations=30,
                           initial=ExponentialParams(rate=rng.uniform(0.1, 10.0)))
        assert np.all(_relative_drops(run_fit("exponential", dataset, config).loglik_trace) >= -1e-12)

        location, scale = rng.uniform(-2.0, 2.0), rng.uniform(0.5, 2.0)
        dataset = _censored_dataset(rng, rng.normal(location, scale, size=15), nonnegative=False)
        config = FitConfig(strategy=Strategy.EM, eps=1e-12, max_iterations=30,
                           initial=NormalParams(location=rng.uniform(-1.0, 1.0), scale=rng.uniform(0.5, 3.0)))
        assert np.all(_relative_drops(run_fit("normal", dataset, config).loglik_trace) >= -1e-12)


def _random_interval(rng, center, spread, nonnegative):
    if rng.random() < 0.3:
        lower = max(center + spread * rng.normal(), 0.0) if nonnegative else center + spread * rng.normal()
        return IntervalObservation(lower, math.inf)
    lower = center + spread * rng.normal()
    if nonnegative:
        lower = abs(lower)
    return IntervalObservation(lower, lower + spread * rng.exponential())


@pytest.mark.slow
def test_truncated_moments_agree_with_quadrature():
    rng = np.random.default_rng(7)
    for _ in range(INSTANCES):
        rate = rng.uniform(0.1, 3.0)
        obs = _random_interval(rng, 1.0 / rate, 1.0 / rate, nonnegative=True)
        closed_form = exp_estep(rate, Dataset((obs,))).A[0]
        assert quadrature_estep(ExponentialParams(rate=rate), obs, "mean") == pytest.approx(closed_form, rel=1e-8)

        location, scale = rng.uniform(-5.0, 5.0), rng.uniform(0.2, 4.0)
        obs = _random_interval(rng, location, 1.5 * scale, nonnegative=False)
        moments = normal_estep(location, scale, Dataset((obs,)))
        params = NormalParams(location=location, scale=scale)
        assert quadrature_estep(params, obs, "mean") == pytest.approx(moments.B[0], rel=1e-8, abs=1e-9)
        assert quadrature_estep(params, obs, "second-moment") == pytest.approx(moments.A[0], rel=1e-8)


def _power_interval(obs, power):
    return Dataset((IntervalObservation(obs.lower**power, obs.upper**power),))


@pytest.mark.slow
def test_transformed_exponential_moments_agree_with_quadrature():
    """
    Z²/(2β²) of a Rayleigh, λZ^β of a Weibull and (Z - μ)/σ of a Laplace above μ
    are unit exponential, so their truncated means have the exponential closed form.
    """
    rng = np.random.default_rng(8)
    for _ in range(INSTANCES):
        scale = rng.uniform(0.5, 5.0)
        obs = _random_interval(rng, scale, scale, nonnegative=True)
        expected = exp_estep(1.0 / (2.0 * scale**2), _power_interval(obs, 2.0)).A[0]
        assert quadrature_estep(RayleighParams(scale=scale), obs, "second-moment") == pytest.approx(expected, rel=1e-8)

        rate, shape = rng.uniform(0.2, 2.0), rng.uniform(1.0, 3.0)
        obs = _random_interval(rng, rate ** (-1.0 / shape), rate ** (-1.0 / shape), nonnegative=True)
        expected = exp_estep(rate, _power_interval(obs, shape)).A[0]
        value = quadrature_estep(WeibullParams(rate=rate, shape=shape), obs, "z-power-beta", shape)
        assert value == pytest.approx(expected, rel=1e-8)

        location, scale = rng.uniform(-3.0, 3.0), rng.uniform(0.3, 3.0)
        lower = location + scale * rng.exponential()
        upper = math.inf if rng.random() < 0.3 else lower + scale * rng.exponential()
        shifted = Dataset((IntervalObservation(lower - location, upper - location),))
        expected = location + exp_estep(1.0 / scale, shifted).A[0]
        value = quadrature_estep(LaplaceParams(location=location, scale=scale), IntervalObservation(lower, upper), "mean")
        assert value == pytest.approx(expected, rel=1e-8, abs=1e-9)


@pytest.mark.slow
def test_weibull_shape_root_is_bracketed():
    rng = np.random.default_rng(9)
    for _ in range(INSTANCES):
        shape = rng.uniform(0.3, 5.0)
        samples = rng.weibull(shape, size=(rng.integers(2, 30), rng.integers(1, 20))) * rng.uniform(0.01, 100.0)
        inputs = ShapeEquationInputs(samples)
        beta_lower, beta_upper = beta_bounds(inputs)
        assert g_of_beta(beta_lower) - h_of_beta(inputs, beta_lower) >= -1e-12
        assert g_of_beta(beta_upper) - h_of_beta(inputs, beta_upper) <= 1e-12
        beta = solve_beta(inputs)
        assert beta_lower <= beta <= beta_upper
        assert g_of_beta(beta) == pytest.approx(h_of_beta(inputs, beta), rel=1e-8, abs=1e-9)


@pytest.mark.parametrize(
    "params, at",
    [
        (ExponentialParams(rate=0.7), 2.0),
        (NormalParams(location=1.0, scale=2.0), -0.5),
        (LaplaceParams(location=0.0, scale=1.5), 0.8),
        (RayleighParams(scale=2.0), 3.0),
        (WeibullParams(rate=0.4, shape=1.8), 1.2),
    ],
)
def test_narrow_interval_log_pdf_tends_to_point_density(params, at):
    previous = math.inf
    for width in (1e-1, 1e-3, 1e-5, 1e-7):
        value = quadrature_estep(params, IntervalObservation(at, at + width), "log-pdf", params)
        error = abs(value - logpdf(params, at))
        assert error < previous
        previous = error
    assert previous < 1e-6
