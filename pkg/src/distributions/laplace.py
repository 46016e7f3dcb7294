"""
Laplace model f(x) = exp(-|x - μ| / σ) / (2σ).
"""
from typing import Tuple

import numpy as np

from data_models.params import LaplaceParams
from distributions.base import LifetimeDistribution
from exceptions import DegenerateMStepError

LOG_HALF = np.log(0.5)


class Laplace(LifetimeDistribution):
    params_class = LaplaceParams

    def _standardize(self, x):
        return (np.asarray(x, dtype=float) - self.params.location) / self.params.scale

    def logpdf(self, x):
        return -np.log(2.0 * self.params.scale) - np.abs(self._standardize(x))

    def cdf(self, x):
        z = self._standardize(x)
        with np.errstate(over="ignore"):
            return np.where(z < 0, 0.5 * np.exp(np.minimum(z, 0.0)), 1.0 - 0.5 * np.exp(-np.maximum(z, 0.0)))

    def _log_cdf(self, z):
        return np.where(z < 0, LOG_HALF + np.minimum(z, 0.0), np.log1p(-0.5 * np.exp(-np.maximum(z, 0.0))))

    def _log_sf(self, z):
        return self._log_cdf(-z)

    def interval_log_mass(self, lower, upper):
        za, zb = self._standardize(lower), self._standardize(upper)
        with np.errstate(divide="ignore", invalid="ignore"):
            # one-sided intervals are exponential pieces
            log_width = np.log(-np.expm1(-(zb - za)))
            right = self._log_sf(za) + log_width
            left = self._log_cdf(zb) + log_width
            straddle = np.log1p(-0.5 * np.exp(-np.maximum(zb, 0.0)) - 0.5 * np.exp(np.minimum(za, 0.0)))
        return np.where(za >= 0, right, np.where(zb <= 0, left, straddle))

    def ppf(self, u):
        u = np.asarray(u, dtype=float)
        mu, sigma = self.params.location, self.params.scale
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(u < 0.5, mu + sigma * np.log(2.0 * u), mu - sigma * np.log(2.0 * (1.0 - u)))

    def _truncated_ppf(self, lower, upper, xi):
        mu, sigma = self.params.location, self.params.scale
        za, zb = self._standardize(lower), self._standardize(upper)
        width = np.expm1(-(zb - za))
        right = lower - sigma * np.log1p(xi * width)
        left = upper + sigma * np.log1p((1.0 - xi) * width)

        # straddling the location: invert the two-piece distribution function
        f_a = 0.5 * np.exp(np.minimum(za, 0.0))
        s_b = 0.5 * np.exp(-np.maximum(zb, 0.0))
        mass = 1.0 - f_a - s_b
        p = f_a + xi * mass
        one_minus_p = s_b + (1.0 - xi) * mass
        middle = np.where(
            p < 0.5, mu + sigma * np.log(2.0 * p), mu - sigma * np.log(2.0 * one_minus_p))
        return np.where(za >= 0, right, np.where(zb <= 0, left, middle))


def laplace_mstep(samples: np.ndarray) -> Tuple[float, float]:
    """
    Laplace update from an n×K sample or quantile matrix.

    μ' is the median of all nK pooled values, each with equal weight. With an even
    count it is the midpoint of the two central order statistics. σ' is the mean over
    observations of the mean absolute deviation from μ'.

    Args:
        samples (np.ndarray): n×K matrix z_{i,k}.

    Returns:
        Tuple[float, float]: (μ', σ').

    Raises:
        DegenerateMStepError: If every value equals μ', leaving σ' = 0.
    """
    location = float(np.median(samples))
    scale = float(np.mean(np.abs(samples - location)))
    if not scale > 0:
        raise DegenerateMStepError(
            f"scale update is zero: all samples equal the median {location}")
    return location, scale
