"""
The five lifetime models and model-independent entry points.

Every function takes a ModelParams instance and dispatches on its model tag.
"""
from typing import Dict, Type, Union

import numpy as np

from data_models.interval_data import Dataset, IntervalObservation
from data_models.params import ModelParams
from distributions.base import EStepMoments, LifetimeDistribution
from distributions.exponential import Exponential, exp_estep, exp_mstep, exp_sample_mstep
from distributions.laplace import Laplace, laplace_mstep
from distributions.normal import Normal, normal_estep, normal_mstep, normal_sample_mstep
from distributions.rayleigh import Rayleigh, rayleigh_mstep
from distributions.weibull import Weibull, weibull_mstep
from exceptions import IntervalDataError
from logger import get_logger

logger = get_logger(__name__)

DISTRIBUTIONS: Dict[str, Type[LifetimeDistribution]] = {
    "exponential": Exponential,
    "normal": Normal,
    "laplace": Laplace,
    "rayleigh": Rayleigh,
    "weibull": Weibull,
}

ArrayLike = Union[float, np.ndarray]


def get_distribution(params: ModelParams) -> LifetimeDistribution:
    """Binds the model class of `params` to its values."""
    return DISTRIBUTIONS[params.model](params)


def _like_input(x, result):
    return float(result) if np.ndim(x) == 0 else result


def pdf(params: ModelParams, x: ArrayLike) -> ArrayLike:
    """Density; 0 outside the support."""
    return _like_input(x, get_distribution(params).pdf(x))


def logpdf(params: ModelParams, x: ArrayLike) -> ArrayLike:
    return _like_input(x, get_distribution(params).logpdf(x))


def cdf(params: ModelParams, x: ArrayLike) -> ArrayLike:
    """Distribution function, with cdf(-inf) = 0 and cdf(inf) = 1."""
    return _like_input(x, get_distribution(params).cdf(x))


def interval_log_mass(params: ModelParams, lower: ArrayLike, upper: ArrayLike) -> ArrayLike:
    """log(F(upper) - F(lower)); -inf for an interval without mass."""
    return _like_input(lower, get_distribution(params).interval_log_mass(lower, upper))


def _check_fraction(xi: ArrayLike) -> np.ndarray:
    xi_array = np.asarray(xi, dtype=float)
    if not np.all((xi_array > 0) & (xi_array < 1)):
        raise ValueError("fractions must lie strictly between 0 and 1")
    return xi_array


def truncated_quantile(
        params: ModelParams, obs: IntervalObservation, xi: ArrayLike) -> ArrayLike:
    """
    ξ-quantile of the model restricted to the observation's interval.

    Args:
        params (ModelParams): Current parameters.
        obs (IntervalObservation): A non-degenerate interval.
        xi (float or np.ndarray): Fractions in (0, 1).

    Returns:
        float or np.ndarray: q with lower <= q <= upper.

    Raises:
        IntervalDataError: If the interval is degenerate; its only value is obs.lower.
        ValueError: If a fraction is outside (0, 1).
        ZeroMassIntervalError: If the interval has zero probability under params.
    """
    if obs.is_exact():
        raise IntervalDataError(
            f"degenerate interval [{obs.lower}, {obs.upper}] has no conditional quantile")
    xi_array = _check_fraction(xi)
    q = get_distribution(params).truncated_quantile(
        np.float64(obs.lower), np.float64(obs.upper), xi_array)
    return _like_input(xi, q)


def truncated_sample(
        params: ModelParams, obs: IntervalObservation, u: ArrayLike) -> ArrayLike:
    """Inverse-transform draw from the truncated law: the quantile at uniform u."""
    return truncated_quantile(params, obs, u)


def observed_loglik(params: ModelParams, dataset: Dataset) -> float:
    """
    Observed-data log-likelihood.

    Σ over exact observations of log f(a_i) plus Σ over intervals of
    log(F(b_i) - F(a_i)), with all normalizing constants kept.

    Args:
        params (ModelParams): Parameters.
        dataset (Dataset): Data validated for the model.

    Returns:
        float: The log-likelihood, -inf when an interval has zero mass.
    """
    dist = get_distribution(params)
    exact = dataset.exact_mask
    total = 0.0
    if exact.any():
        total += float(np.sum(dist.logpdf(dataset.lower[exact])))
    if not exact.all():
        log_mass = dist.interval_log_mass(dataset.lower[~exact], dataset.upper[~exact])
        if np.any(np.isnan(log_mass) | np.isneginf(log_mass)):
            logger.warning(f"Zero-mass interval under {params}; log-likelihood is -inf")
            return -np.inf
        total += float(np.sum(log_mass))
    return -np.inf if np.isnan(total) else total


def sample_variates(params: ModelParams, size, rng: np.random.Generator) -> np.ndarray:
    """Untruncated draws from the model."""
    return get_distribution(params).sample(size, rng)


__all__ = [
    "DISTRIBUTIONS",
    "EStepMoments",
    "LifetimeDistribution",
    "cdf",
    "exp_estep",
    "exp_mstep",
    "exp_sample_mstep",
    "get_distribution",
    "interval_log_mass",
    "laplace_mstep",
    "logpdf",
    "normal_estep",
    "normal_mstep",
    "normal_sample_mstep",
    "observed_loglik",
    "pdf",
    "rayleigh_mstep",
    "sample_variates",
    "truncated_quantile",
    "truncated_sample",
    "weibull_mstep",
]
