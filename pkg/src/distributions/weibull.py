"""
Weibull model f(x) = λβ x^(β-1) exp(-λx^β), F(x) = 1 - exp(-λx^β).
"""
from typing import Tuple

import numpy as np

from data_models.params import WeibullParams
from distributions.base import LifetimeDistribution
from root_finding.weibull_shape import ShapeEquationInputs, solve_beta, weibull_rate


class Weibull(LifetimeDistribution):
    params_class = WeibullParams

    def _cumulative_hazard(self, x):
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        with np.errstate(over="ignore"):
            return self.params.rate * np.power(x, self.params.shape)

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        rate, shape = self.params.rate, self.params.shape
        if shape < 1:
            at_zero = np.inf
        elif shape == 1:
            at_zero = np.log(rate)
        else:
            at_zero = -np.inf
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            value = (np.log(rate) + np.log(shape) + (shape - 1.0) * np.log(x)
                     - rate * np.power(x, shape))
        return np.where(x > 0, value, np.where(x == 0, at_zero, -np.inf))

    def cdf(self, x):
        return -np.expm1(-self._cumulative_hazard(x))

    def interval_log_mass(self, lower, upper):
        h_a, h_b = self._cumulative_hazard(lower), self._cumulative_hazard(upper)
        with np.errstate(divide="ignore", invalid="ignore"):
            return -h_a + np.log(-np.expm1(-(h_b - h_a)))

    def ppf(self, u):
        u = np.asarray(u, dtype=float)
        return np.power(-np.log1p(-u) / self.params.rate, 1.0 / self.params.shape)

    def _truncated_ppf(self, lower, upper, xi):
        # q^β = a^β - (1/λ) log1p(xi expm1(-λ(b^β - a^β)))
        rate, shape = self.params.rate, self.params.shape
        lower = np.maximum(lower, 0.0)
        a_pow = np.power(lower, shape)
        b_pow = np.power(np.maximum(upper, 0.0), shape)
        q_pow = a_pow - np.log1p(xi * np.expm1(-rate * (b_pow - a_pow))) / rate
        return np.power(q_pow, 1.0 / shape)


def weibull_mstep(samples: np.ndarray) -> Tuple[float, float]:
    """
    Weibull update from an n×K quantile or sample matrix.

    β' is the unique root of the shape equation and λ' = nK / Σ q^β'.

    Args:
        samples (np.ndarray): n×K matrix of positive values.

    Returns:
        Tuple[float, float]: (λ', β').

    Raises:
        NoUniqueRootError: If all samples are equal.
    """
    inputs = ShapeEquationInputs(samples)
    shape = solve_beta(inputs)
    return weibull_rate(inputs, shape), shape
