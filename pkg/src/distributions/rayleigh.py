"""
Rayleigh model f(z) = (z / β²) exp(-z² / (2β²)).
"""
import numpy as np

from data_models.params import RayleighParams
from distributions.base import LifetimeDistribution


class Rayleigh(LifetimeDistribution):
    params_class = RayleighParams

    @property
    def _two_beta_sq(self) -> float:
        return 2.0 * self.params.scale**2

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            value = np.log(x) - 2.0 * np.log(self.params.scale) - x * x / self._two_beta_sq
        return np.where(x > 0, value, -np.inf)

    def cdf(self, x):
        x = np.maximum(np.asarray(x, dtype=float), 0.0)
        with np.errstate(invalid="ignore"):
            return -np.expm1(-x * x / self._two_beta_sq)

    def interval_log_mass(self, lower, upper):
        lower = np.maximum(np.asarray(lower, dtype=float), 0.0)
        upper = np.maximum(np.asarray(upper, dtype=float), 0.0)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            a2 = lower * lower / self._two_beta_sq
            b2 = upper * upper / self._two_beta_sq
            return -a2 + np.log(-np.expm1(-(b2 - a2)))

    def ppf(self, u):
        return self.params.scale * np.sqrt(-2.0 * np.log1p(-np.asarray(u, dtype=float)))

    def _truncated_ppf(self, lower, upper, xi):
        lower = np.maximum(lower, 0.0)
        return np.sqrt(
            lower * lower
            - self._two_beta_sq * np.log1p(xi * np.expm1(-(upper * upper - lower * lower) / self._two_beta_sq)))


def rayleigh_mstep(samples: np.ndarray) -> float:
    """
    β' = sqrt((1 / 2n) Σ_i (1/K) Σ_k z_{i,k}²).

    Args:
        samples (np.ndarray): n×K matrix of positive values.

    Returns:
        float: Next scale β'.
    """
    return float(np.sqrt(np.mean(samples * samples) / 2.0))
