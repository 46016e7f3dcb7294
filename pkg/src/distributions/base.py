from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, Optional, Type

import numpy as np

from data_models.params import ModelParams
from exceptions import ModelMismatchError, ZeroMassIntervalError
from utils import open_unit_uniforms


@dataclass(frozen=True)
class EStepMoments:
    """Closed-form conditional moments of the missing lifetimes.

    For the exponential model A holds E[Z_i | θ^(s)] and B is None. For the normal
    model A holds E[Z_i² | θ^(s)], B holds E[Z_i | θ^(s)] and V the conditional
    variance, kept apart from A so it does not cancel against B².
    """
    A: np.ndarray
    B: Optional[np.ndarray] = None
    V: Optional[np.ndarray] = None

    @property
    def n(self) -> int:
        return int(self.A.shape[0])


def log_diff_exp(log_hi: np.ndarray, log_lo: np.ndarray) -> np.ndarray:
    """log(exp(log_hi) - exp(log_lo)) for log_hi >= log_lo, -inf when both vanish."""
    log_hi = np.asarray(log_hi, dtype=float)
    log_lo = np.asarray(log_lo, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        result = log_hi + np.log(-np.expm1(log_lo - log_hi))
    return np.where(np.isneginf(log_hi), -np.inf, result)


class LifetimeDistribution(ABC):
    """A parametric model bound to one parameter vector.

    All array methods broadcast their arguments. Interval methods take the lower and
    upper bounds separately and expect non-degenerate intervals.
    """
    params_class: ClassVar[Type[ModelParams]]

    def __init__(self, params: ModelParams):
        if not isinstance(params, self.params_class):
            raise ModelMismatchError(
                f"{type(self).__name__} needs {self.params_class.__name__}, "
                f"got {type(params).__name__}")
        self.params = params

    @property
    def nonnegative_support(self) -> bool:
        return self.params_class.nonnegative_support

    @abstractmethod
    def logpdf(self, x: np.ndarray) -> np.ndarray:
        """Log density, -inf outside the support."""

    def pdf(self, x: np.ndarray) -> np.ndarray:
        return np.exp(self.logpdf(x))

    @abstractmethod
    def cdf(self, x: np.ndarray) -> np.ndarray:
        """Distribution function on the extended reals."""

    @abstractmethod
    def interval_log_mass(self, lower: np.ndarray, upper: np.ndarray) -> np.ndarray:
        """log(F(upper) - F(lower)), evaluated on the tail holding less mass."""

    @abstractmethod
    def ppf(self, u: np.ndarray) -> np.ndarray:
        """Untruncated quantile function."""

    @abstractmethod
    def _truncated_ppf(
            self, lower: np.ndarray, upper: np.ndarray, xi: np.ndarray) -> np.ndarray:
        """Quantile of the law restricted to [lower, upper], before clipping."""

    def check_positive_mass(self, lower: np.ndarray, upper: np.ndarray) -> None:
        """
        Raises if any interval carries no probability mass.

        Args:
            lower (np.ndarray): Lower bounds.
            upper (np.ndarray): Upper bounds, same shape.

        Raises:
            ZeroMassIntervalError: Naming the position of the first empty interval.
        """
        log_mass = np.ravel(self.interval_log_mass(lower, upper))
        empty = np.isneginf(log_mass) | np.isnan(log_mass)
        if empty.any():
            index = int(np.flatnonzero(empty)[0])
            raise ZeroMassIntervalError(
                f"interval [{np.ravel(lower)[index]}, {np.ravel(upper)[index]}] has zero "
                f"probability under {self.params}",
                observation_index=index,
            )

    def truncated_quantile(
            self, lower: np.ndarray, upper: np.ndarray, xi: np.ndarray) -> np.ndarray:
        """
        Inverse of the truncated distribution function.

        Solves (F(q) - F(lower)) / (F(upper) - F(lower)) = xi for q.

        Args:
            lower (np.ndarray): Lower bounds, e.g. shape (n, 1).
            upper (np.ndarray): Upper bounds, same shape as lower.
            xi (np.ndarray): Fractions in (0, 1), e.g. shape (K,).

        Returns:
            np.ndarray: Quantiles inside [lower, upper], broadcast shape.

        Raises:
            ZeroMassIntervalError: If an interval has zero probability.
        """
        lower = np.asarray(lower, dtype=float)
        upper = np.asarray(upper, dtype=float)
        xi = np.asarray(xi, dtype=float)
        self.check_positive_mass(lower, upper)
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            q = self._truncated_ppf(lower, upper, xi)
        return np.clip(q, lower, upper)

    def sample(self, size, rng: np.random.Generator) -> np.ndarray:
        """Inverse-transform draws from the untruncated law."""
        return self.ppf(open_unit_uniforms(rng, size))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.params})"
