"""
Interval-data model: one lifetime bound per unit, grouped inspection rows, and
the validated dataset the estimators consume.
"""
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Tuple

import numpy as np

from exceptions import EmptyDatasetError, IntervalDataError


@dataclass(frozen=True)
class IntervalObservation:
    """A lifetime known to lie in [lower, upper].

    lower == upper marks an exactly observed lifetime, upper == +inf a right-censored
    one and lower == -inf a left-censored one.
    """
    lower: float
    upper: float

    def __post_init__(self) -> None:
        lower, upper = float(self.lower), float(self.upper)
        if math.isnan(lower) or math.isnan(upper):
            raise IntervalDataError(f"bounds must be numbers, got [{lower}, {upper}]")
        if lower > upper:
            raise IntervalDataError(f"lower > upper in [{lower}, {upper}]")
        if math.isinf(lower) and math.isinf(upper):
            raise IntervalDataError(f"both bounds are infinite in [{lower}, {upper}]")
        if lower == math.inf or upper == -math.inf:
            raise IntervalDataError(f"interval [{lower}, {upper}] has no finite point")
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    def is_exact(self) -> bool:
        """True when the lifetime is fully observed (degenerate interval)."""
        return self.lower == self.upper

    def is_right_censored(self) -> bool:
        return self.upper == math.inf

    def is_left_censored(self) -> bool:
        return self.lower == -math.inf


@dataclass(frozen=True)
class GroupedRow:
    """Number of failures observed in one inspection window [lower, upper]."""
    lower: float
    upper: float
    count: int

    def __post_init__(self) -> None:
        if isinstance(self.count, bool) or int(self.count) != self.count:
            raise IntervalDataError(f"count must be an integer, got {self.count!r}")
        if self.count < 0:
            raise IntervalDataError(f"count must be nonnegative, got {self.count}")
        window = IntervalObservation(self.lower, self.upper)
        if window.is_exact():
            raise IntervalDataError(
                f"inspection window must have lower < upper, got [{self.lower}, {self.upper}]")
        object.__setattr__(self, "lower", window.lower)
        object.__setattr__(self, "upper", window.upper)
        object.__setattr__(self, "count", int(self.count))


@dataclass(frozen=True)
class Dataset:
    """An ordered, validated, immutable collection of interval observations.

    Exact observations are the observed part of the sample, the remaining
    intervals its missing part.
    """
    observations: Tuple[IntervalObservation, ...]
    _lower: np.ndarray = field(init=False, repr=False, compare=False)
    _upper: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        observations = tuple(self.observations)
        if len(observations) == 0:
            raise EmptyDatasetError("dataset has no observations")
        object.__setattr__(self, "observations", observations)
        lower = np.array([obs.lower for obs in observations], dtype=float)
        upper = np.array([obs.upper for obs in observations], dtype=float)
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "_lower", lower)
        object.__setattr__(self, "_upper", upper)

    @classmethod
    def from_bounds(cls, lower: Iterable[float], upper: Iterable[float]) -> "Dataset":
        """Builds a dataset from parallel sequences of lower and upper bounds."""
        lower, upper = list(lower), list(upper)
        if len(lower) != len(upper):
            raise IntervalDataError("lower and upper bounds differ in length")
        observations = []
        for index, (a, b) in enumerate(zip(lower, upper)):
            try:
                observations.append(IntervalObservation(a, b))
            except IntervalDataError as exc:
                raise IntervalDataError(str(exc), record_index=index) from exc
        return cls(tuple(observations))

    @classmethod
    def from_exact(cls, values: Sequence[float]) -> "Dataset":
        """Builds a dataset of fully observed lifetimes."""
        return cls.from_bounds(values, values)

    def __len__(self) -> int:
        return len(self.observations)

    def __iter__(self):
        return iter(self.observations)

    def __getitem__(self, index: int) -> IntervalObservation:
        return self.observations[index]

    @property
    def lower(self) -> np.ndarray:
        """Read-only array of lower bounds."""
        return self._lower

    @property
    def upper(self) -> np.ndarray:
        """Read-only array of upper bounds."""
        return self._upper

    @property
    def exact_mask(self) -> np.ndarray:
        return self._lower == self._upper

    @property
    def n(self) -> int:
        return len(self.observations)

    @property
    def m(self) -> int:
        """Number of exactly observed lifetimes."""
        return int(np.count_nonzero(self.exact_mask))

    @property
    def n_interval(self) -> int:
        return self.n - self.m

    @property
    def n_right_censored(self) -> int:
        return int(np.count_nonzero(self._upper == np.inf))

    @property
    def n_left_censored(self) -> int:
        return int(np.count_nonzero(self._lower == -np.inf))

    def summary(self) -> dict:
        """Counts by observation kind."""
        return {
            "n": self.n,
            "exact": self.m,
            "interval": self.n_interval,
            "right_censored": self.n_right_censored,
            "left_censored": self.n_left_censored,
        }
