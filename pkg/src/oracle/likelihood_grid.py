"""
Brute-force maximization of the observed-data likelihood by grid refinement.

This does not touch the EM machinery and serves as its reference.
"""
import itertools
from typing import Sequence, Tuple

import numpy as np
from pydantic import ValidationError

from data_models.interval_data import Dataset
from data_models.params import ModelParams, get_params_class, make_params
from distributions import observed_loglik
from exceptions import OracleBoxError
from logger import get_logger

logger = get_logger(__name__)

GRID_POINTS = 21
SHRINK_FACTOR = 10
REFINEMENT_ROUNDS = 8
# recentering steps allowed when a refined box slides along a likelihood ridge
MAX_MOVES = 500


def _loglik_or_minus_inf(model: str, values: Sequence[float], dataset: Dataset) -> float:
    try:
        params = make_params(model, values)
    except (ValidationError, ValueError):
        return -np.inf
    value = observed_loglik(params, dataset)
    return value if np.isfinite(value) else -np.inf


def _most_central(
        indices: Sequence[Tuple[int, ...]], is_best: np.ndarray, points: int) -> Tuple[int, ...]:
    # ties, e.g. on a flat likelihood stretch, go to the point nearest the box center
    middle = (points - 1) / 2.0
    tied = [index for index, best in zip(indices, is_best) if best]
    return min(tied, key=lambda index: sum((i - middle) ** 2 for i in index))


def mle_grid_refine(
        model: str,
        dataset: Dataset,
        box: Sequence[Tuple[float, float]],
        points: int = GRID_POINTS,
        shrink_factor: int = SHRINK_FACTOR,
        rounds: int = REFINEMENT_ROUNDS,
) -> ModelParams:
    """
    Maximizes the observed-data log-likelihood over a box by iterated grid search.

    Each round evaluates a tensor grid of `points` values per parameter and centers
    the next box on the best point. If that point is interior, the box shrinks by
    `shrink_factor` (one grid spacing either side for 21 points). If it is on the
    edge, the box moves and doubles, up to its first size, so the search can follow
    a ridge between correlated parameters. The search ends once the box has
    shrunk `rounds` times over.

    Args:
        model (str): Model name.
        dataset (Dataset): The data.
        box (Sequence[Tuple[float, float]]): (low, high) per parameter, in the model's
            parameter order. Must contain the maximizer.
        points (int): Grid points per parameter.
        shrink_factor (int): Box shrink per refining round.
        rounds (int): Number of refining rounds.

    Returns:
        ModelParams: The maximizer, accurate to about box width × 10^-(rounds + 1).

    Raises:
        OracleBoxError: If the first grid peaks on the box boundary, or the search
            keeps moving without refining.
        ValueError: If the box has the wrong dimension or the likelihood is -inf
            everywhere on the grid.
    """
    names = get_params_class(model).parameter_names
    if len(box) != len(names):
        raise ValueError(f"box needs {len(names)} (low, high) pairs for {model}, got {len(box)}")
    center = np.array([(low + high) / 2.0 for low, high in box], dtype=float)
    half_width = np.array([(high - low) / 2.0 for low, high in box], dtype=float)
    if np.any(half_width <= 0):
        raise ValueError("every box side needs low < high")

    offsets = np.linspace(-1.0, 1.0, points)
    initial_half_width = half_width.copy()
    final_half_width = half_width / float(shrink_factor) ** rounds
    moves, first_round = 0, True
    best_value = -np.inf
    while np.any(half_width > final_half_width * (1.0 + 1e-9)):
        axes = [c + h * offsets for c, h in zip(center, half_width)]
        indices = list(itertools.product(range(points), repeat=len(axes)))
        values = np.array([
            _loglik_or_minus_inf(model, [axis[i] for axis, i in zip(axes, index)], dataset)
            for index in indices
        ])
        best_value = values.max()
        if best_value == -np.inf:
            raise ValueError(f"log-likelihood is -inf everywhere on the grid around {center}")
        best_index = _most_central(indices, values == best_value, points)

        center = np.array([axis[i] for axis, i in zip(axes, best_index)])
        on_edge = any(i in (0, points - 1) for i in best_index)
        if on_edge and first_round:
            raise OracleBoxError(
                f"maximizer {center.tolist()} lies on the boundary of {list(box)}; widen the box")
        if on_edge:
            moves += 1
            if moves > MAX_MOVES:
                raise OracleBoxError(f"grid search kept moving past {center.tolist()}")
            half_width = np.minimum(2.0 * half_width, initial_half_width)
        else:
            half_width = half_width / shrink_factor
        first_round = False

    logger.debug(f"Grid maximizer for {model}: {center.tolist()} (loglik {best_value:.10g}, "
                 f"{moves} moves)")
    return make_params(model, center)
