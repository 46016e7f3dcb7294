"""
Normal model with its closed-form truncated moments.
"""
from typing import Tuple

import numpy as np
from scipy.special import log_ndtr, ndtr, ndtri, ndtri_exp

from data_models.interval_data import Dataset
from data_models.params import NormalParams
from distributions.base import EStepMoments, LifetimeDistribution, log_diff_exp
from exceptions import DegenerateMStepError, ZeroMassIntervalError

LOG_SQRT_2PI = 0.5 * np.log(2.0 * np.pi)
COLLAPSE_ULPS = 4.0


def _log_phi(z: np.ndarray) -> np.ndarray:
    return -0.5 * z * z - LOG_SQRT_2PI


class Normal(LifetimeDistribution):
    params_class = NormalParams

    def _standardize(self, x):
        return (np.asarray(x, dtype=float) - self.params.location) / self.params.scale

    def logpdf(self, x):
        return _log_phi(self._standardize(x)) - np.log(self.params.scale)

    def cdf(self, x):
        return ndtr(self._standardize(x))

    def interval_log_mass(self, lower, upper):
        alpha, beta = self._standardize(lower), self._standardize(upper)
        upper_tail = alpha > 0
        # mirror intervals right of the mean so log_ndtr works on the small tail
        hi = np.where(upper_tail, log_ndtr(-alpha), log_ndtr(beta))
        lo = np.where(upper_tail, log_ndtr(-beta), log_ndtr(alpha))
        return log_diff_exp(hi, lo)

    def ppf(self, u):
        return self.params.location + self.params.scale * ndtri(np.asarray(u, dtype=float))

    def _truncated_ppf(self, lower, upper, xi):
        alpha, beta = self._standardize(lower), self._standardize(upper)
        upper_tail = alpha > 0
        # S(q) = S(a) [1 - xi (1 - S(b)/S(a))] right of the mean,
        # F(q) = F(b) [1 - (1 - xi)(1 - F(a)/F(b))] otherwise
        log_s_a, log_s_b = log_ndtr(-alpha), log_ndtr(-beta)
        log_f_a, log_f_b = log_ndtr(alpha), log_ndtr(beta)
        log_p_upper = log_s_a + np.log1p(xi * np.expm1(log_s_b - log_s_a))
        log_p_lower = log_f_b + np.log1p((1.0 - xi) * np.expm1(log_f_a - log_f_b))
        z = np.where(upper_tail, -ndtri_exp(log_p_upper), ndtri_exp(log_p_lower))
        return self.params.location + self.params.scale * z


def normal_estep(location: float, scale: float, dataset: Dataset) -> EStepMoments:
    """
    Truncated first and second moments of every observation.

    With α = (a - μ)/σ, β = (b - μ)/σ and Z = Φ(β) - Φ(α):

        B = μ + σ (φ(α) - φ(β)) / Z
        A = μ² + σ² + σ ((μ + a) φ(α) - (μ + b) φ(β)) / Z

    The φ terms of infinite ends vanish. Ratios φ/Z are formed in log space.
    Exact observations give (A, B) = (a², a).

    Args:
        location (float): Current μ^(s).
        scale (float): Current σ^(s).
        dataset (Dataset): The data.

    Returns:
        EStepMoments: A = E[Z²], B = E[Z] and V = Var[Z] per observation.

    Raises:
        ZeroMassIntervalError: If an interval has zero probability.
    """
    dist = Normal(NormalParams(location=location, scale=scale))
    lower, upper = dataset.lower, dataset.upper
    exact = dataset.exact_mask
    A = lower * lower
    B = lower.copy()
    V = np.zeros_like(lower)
    interval_rows = np.flatnonzero(~exact)
    if interval_rows.size == 0:
        return EStepMoments(A=A, B=B, V=V)

    a, b = lower[interval_rows], upper[interval_rows]
    log_mass = dist.interval_log_mass(a, b)
    empty = np.isneginf(log_mass) | np.isnan(log_mass)
    if empty.any():
        index = int(interval_rows[np.flatnonzero(empty)[0]])
        raise ZeroMassIntervalError(
            f"interval [{lower[index]}, {upper[index]}] has zero probability "
            f"under {dist.params}",
            observation_index=index,
        )

    alpha, beta = dist._standardize(a), dist._standardize(b)
    with np.errstate(invalid="ignore", over="ignore"):
        ratio_a = np.where(np.isfinite(alpha), np.exp(_log_phi(alpha) - log_mass), 0.0)
        ratio_b = np.where(np.isfinite(beta), np.exp(_log_phi(beta) - log_mass), 0.0)
        term_a = np.where(np.isfinite(a), (location + a) * ratio_a, 0.0)
        term_b = np.where(np.isfinite(b), (location + b) * ratio_b, 0.0)
        tilt_a = np.where(np.isfinite(alpha), alpha * ratio_a, 0.0)
        tilt_b = np.where(np.isfinite(beta), beta * ratio_b, 0.0)
    first = np.clip(location + scale * (ratio_a - ratio_b), a, b)
    second = location**2 + scale**2 + scale * (term_a - term_b)
    B[interval_rows] = first
    A[interval_rows] = np.maximum(second, first * first)
    # Var = σ² (1 + (αφ(α) - βφ(β))/Z - ((φ(α) - φ(β))/Z)²), bounded by σ²
    V[interval_rows] = scale**2 * np.clip(1.0 + tilt_a - tilt_b - (ratio_a - ratio_b) ** 2, 0.0, 1.0)
    return EStepMoments(A=A, B=B, V=V)


def _checked_scale(variance: float, location: float) -> float:
    # a spread below a few ulps of μ' is rounding noise of identical values
    if not variance > (COLLAPSE_ULPS * np.finfo(float).eps * location) ** 2:
        raise DegenerateMStepError(
            f"variance update {variance:.6g} is not positive; the data have collapsed to a point")
    return float(np.sqrt(variance))


def normal_mstep(moments: EStepMoments) -> Tuple[float, float]:
    """
    μ' = mean(B) and σ'² = mean(A) - μ'².

    The variance is summed in centered form, mean(V_i) + mean((B_i - μ')²) with
    V_i = A_i - B_i², which equals mean(A) - μ'² without cancelling against μ'².
    V is taken from the moments when the E-step supplies it.

    Raises:
        DegenerateMStepError: If the variance update is not positive.
    """
    location = float(np.mean(moments.B))
    if moments.V is not None:
        within = moments.V
    else:
        within = np.maximum(moments.A - moments.B**2, 0.0)
    variance = float(np.mean(within) + np.mean((moments.B - location) ** 2))
    return location, _checked_scale(variance, location)


def normal_sample_mstep(samples: np.ndarray) -> Tuple[float, float]:
    """
    Normal update from an n×K sample or quantile matrix.

    μ' is the mean of the row means and σ'² the mean of the row second moments
    minus μ'², taken here about μ'.

    Raises:
        DegenerateMStepError: If all samples coincide.
    """
    location = float(np.mean(samples))
    variance = float(np.mean((samples - location) ** 2))
    return location, _checked_scale(variance, location)
