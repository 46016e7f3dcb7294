"""
Published censored and grouped lifetime datasets used as worked examples.
"""
import math
from typing import Callable, Dict, Sequence

from data_models.interval_data import Dataset, GroupedRow, IntervalObservation
from preprocessing.ingest import expand_grouped

# remission times in weeks of 21 patients; 12 are right-censored at random
LEUKEMIA_EXACT = (6, 6, 6, 7, 10, 13, 16, 22, 23)
LEUKEMIA_CENSORED = (6, 9, 10, 11, 17, 19, 20, 25, 32, 32, 34, 35)

# Type-II censored normal sample: the largest 3 of 10 censored
GUPTA_EXACT = (1.613, 1.644, 1.663, 1.732, 1.740, 1.763, 1.778)
GUPTA_N = 10

# Type-II censored Laplace sample: the largest 2 of 20 censored
BALAKRISHNAN_EXACT = (
    32.00692, 37.75687, 43.84736, 46.26761, 46.90651, 47.26220, 47.28952, 47.59391,
    48.06508, 49.25429, 50.27790, 50.48675, 50.66167, 53.33585, 53.49258, 53.56681,
    53.98112, 54.94154,
)
BALAKRISHNAN_N = 20

# simulated Rayleigh(5) sample, the largest 5 of 20 censored
RAYLEIGH20_EXACT = (
    1.950, 2.295, 4.282, 4.339, 4.411, 4.460, 4.699, 5.319,
    5.440, 5.777, 7.485, 7.620, 8.181, 8.443, 10.627,
)
RAYLEIGH20_N = 20

# cracked parts found at intermittent inspections (months)
NELSON_CRACKS_ROWS = (
    GroupedRow(0.0, 6.12, 5),
    GroupedRow(6.12, 19.92, 16),
    GroupedRow(19.92, 29.64, 12),
    GroupedRow(29.64, 35.40, 18),
    GroupedRow(35.40, 39.72, 18),
    GroupedRow(39.72, 45.24, 2),
    GroupedRow(45.24, 52.32, 6),
    GroupedRow(52.32, 63.48, 17),
    GroupedRow(63.48, math.inf, 73),
)


def right_censored_sample(exact: Sequence[float], censored: Sequence[float]) -> Dataset:
    """Exact observations followed by observations right-censored at the given values."""
    observations = [IntervalObservation(x, x) for x in exact]
    observations.extend(IntervalObservation(c, math.inf) for c in censored)
    return Dataset(tuple(observations))


def type2_sample(exact: Sequence[float], n: int) -> Dataset:
    """A Type-II censored sample of size n, censored at its largest observed value."""
    return right_censored_sample(exact, [max(exact)] * (n - len(exact)))


def leukemia_dataset() -> Dataset:
    return right_censored_sample(LEUKEMIA_EXACT, LEUKEMIA_CENSORED)


def gupta_dataset() -> Dataset:
    return type2_sample(GUPTA_EXACT, GUPTA_N)


def balakrishnan_dataset() -> Dataset:
    return type2_sample(BALAKRISHNAN_EXACT, BALAKRISHNAN_N)


def rayleigh20_dataset() -> Dataset:
    return type2_sample(RAYLEIGH20_EXACT, RAYLEIGH20_N)


def nelson_cracks_dataset() -> Dataset:
    return expand_grouped(NELSON_CRACKS_ROWS)


DATASETS: Dict[str, Callable[[], Dataset]] = {
    "leukemia": leukemia_dataset,
    "gupta": gupta_dataset,
    "balakrishnan": balakrishnan_dataset,
    "rayleigh20": rayleigh20_dataset,
    "nelson-cracks": nelson_cracks_dataset,
}


def get_dataset(name: str) -> Dataset:
    """
    Returns an embedded dataset by name.

    Raises:
        ValueError: If the name is unknown.
    """
    if name not in DATASETS:
        raise ValueError(f"unknown dataset '{name}'; expected one of {', '.join(DATASETS)}")
    return DATASETS[name]()
