"""
Maps each model onto its E-step and M-step routines.

The exact E-step exists only for the exponential and normal models. The sample
M-steps consume the n×K matrix produced by the quantile or Monte Carlo E-step.
"""
from typing import Callable, Dict

import numpy as np
from pydantic import ValidationError

from data_models.interval_data import Dataset
from data_models.params import ModelParams, make_params
from distributions import (
    EStepMoments,
    exp_estep,
    exp_mstep,
    exp_sample_mstep,
    laplace_mstep,
    normal_estep,
    normal_mstep,
    normal_sample_mstep,
    rayleigh_mstep,
    weibull_mstep,
)
from exceptions import DegenerateMStepError, StrategyNotSupportedError

SAMPLE_MSTEPS: Dict[str, Callable[[np.ndarray], object]] = {
    "exponential": exp_sample_mstep,
    "normal": normal_sample_mstep,
    "laplace": laplace_mstep,
    "rayleigh": rayleigh_mstep,
    "weibull": weibull_mstep,
}

EXACT_ESTEPS: Dict[str, Callable[[ModelParams, Dataset], EStepMoments]] = {
    "exponential": lambda params, dataset: exp_estep(params.rate, dataset),
    "normal": lambda params, dataset: normal_estep(params.location, params.scale, dataset),
}

MOMENT_MSTEPS: Dict[str, Callable[[EStepMoments], object]] = {
    "exponential": exp_mstep,
    "normal": normal_mstep,
}


def _as_params(model: str, update) -> ModelParams:
    values = np.atleast_1d(np.asarray(update, dtype=float))
    try:
        return make_params(model, values)
    except ValidationError as exc:
        raise DegenerateMStepError(
            f"{model} M-step produced invalid parameters {values.tolist()}") from exc


def exact_estep(params: ModelParams, dataset: Dataset) -> EStepMoments:
    """
    Closed-form conditional moments.

    Raises:
        StrategyNotSupportedError: For models without closed-form moments.
    """
    if params.model not in EXACT_ESTEPS:
        raise StrategyNotSupportedError(
            f"the exact E-step is not available for the {params.model} model")
    return EXACT_ESTEPS[params.model](params, dataset)


def moments_mstep(model: str, moments: EStepMoments) -> ModelParams:
    """M-step of the exact EM algorithm."""
    if model not in MOMENT_MSTEPS:
        raise StrategyNotSupportedError(f"the exact M-step is not available for the {model} model")
    return _as_params(model, MOMENT_MSTEPS[model](moments))


def sample_mstep(model: str, samples: np.ndarray) -> ModelParams:
    """M-step of the quantile and Monte Carlo EM algorithms."""
    return _as_params(model, SAMPLE_MSTEPS[model](samples))
