"""
Exponential model f(z | λ) = λ exp(-λz), with its closed-form E-step.
"""
import numpy as np

from data_models.interval_data import Dataset
from data_models.params import ExponentialParams
from distributions.base import EStepMoments, LifetimeDistribution
from exceptions import DegenerateMStepError

# below this value of λ(b - a) the series form of the truncated mean is used
SERIES_THRESHOLD = 1e-3


class Exponential(LifetimeDistribution):
    params_class = ExponentialParams

    @property
    def rate(self) -> float:
        return self.params.rate

    def logpdf(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(invalid="ignore"):
            return np.where(x >= 0, np.log(self.rate) - self.rate * x, -np.inf)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        return -np.expm1(-self.rate * np.maximum(x, 0.0))

    def interval_log_mass(self, lower, upper):
        lower = np.maximum(np.asarray(lower, dtype=float), 0.0)
        upper = np.maximum(np.asarray(upper, dtype=float), 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            return -self.rate * lower + np.log(-np.expm1(-self.rate * (upper - lower)))

    def ppf(self, u):
        return -np.log1p(-np.asarray(u, dtype=float)) / self.rate

    def _truncated_ppf(self, lower, upper, xi):
        # F(q) = F(a) + xi (F(b) - F(a)) factored by exp(-λa)
        lower = np.maximum(lower, 0.0)
        return lower - np.log1p(xi * np.expm1(-self.rate * (upper - lower))) / self.rate


def exp_estep(rate: float, dataset: Dataset) -> EStepMoments:
    """
    Conditional means A_i = E[Z_i | a_i <= Z_i <= b_i, λ].

    Evaluated as A_i = a_i + (1/λ)(1 - x / expm1(x)) with x = λ(b_i - a_i), which is
    the ratio form rewritten so it keeps its digits as b_i → a_i. Exact observations
    give a_i and right-censored ones a_i + 1/λ.

    Args:
        rate (float): Current rate λ^(s).
        dataset (Dataset): The data.

    Returns:
        EStepMoments: A per observation.
    """
    lower, upper = dataset.lower, dataset.upper
    x = rate * (upper - lower)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        exact_term = 1.0 - x / np.expm1(x)
        series_term = x / 2.0 - x**2 / 12.0 + x**4 / 720.0
    term = np.where(x < SERIES_THRESHOLD, series_term, exact_term)
    term = np.where(np.isinf(upper), 1.0, term)
    A = np.where(dataset.exact_mask, lower, lower + term / rate)
    return EStepMoments(A=A)


def exp_mstep(moments: EStepMoments) -> float:
    """
    λ^(s+1) = n / Σ A_i.

    Raises:
        DegenerateMStepError: If Σ A_i is not positive.
    """
    total = float(np.sum(moments.A))
    if not total > 0:
        raise DegenerateMStepError(f"sum of conditional means is {total}; rate undefined")
    return moments.n / total


def exp_sample_mstep(samples: np.ndarray) -> float:
    """
    Rate update from an n×K sample or quantile matrix: λ' = n / Σ_i mean_k z_{i,k}.

    Raises:
        DegenerateMStepError: If the samples sum to zero.
    """
    total = float(np.mean(samples, axis=1).sum())
    if not total > 0:
        raise DegenerateMStepError(f"sum of row means is {total}; rate undefined")
    return samples.shape[0] / total
