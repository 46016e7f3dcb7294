"""
Monte Carlo study of EM estimators on Type-II censored samples.

Each replication draws a sample, censors its largest r values at the largest
observed one, computes the maximum likelihood reference, and fits every cell.
Bias and MSE are taken over replications of (cell estimate - reference).
"""
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from joblib import Parallel, delayed

from data_models.fit_models import EXACT_EM_MODELS, FitConfig, Strategy
from data_models.interval_data import Dataset, IntervalObservation
from data_models.params import ModelParams, get_params_class
from distributions import sample_variates
from em.engine import run_fit
from exceptions import FitError, OracleBoxError, QuadratureError, ZeroMassIntervalError
from logger import get_logger
from oracle.likelihood_grid import mle_grid_refine
from simulation.study_config import StudyCell, StudyConfig
from utils import derive_seed, make_generator

logger = get_logger(__name__)

STUDY_TABLE_COLUMNS = [
    "strategy", "K", "parameter", "bias", "mse", "mean_sq_diff", "sre",
    "failures", "failure_rate", "valid",
]
# a cell whose fits fail more often than this is reported but marked invalid
MAX_FAILURE_RATE = 0.01
# settings of the QEM pilot fit that centers the grid-search box
PILOT_K = 100
PILOT_BOX_FACTORS = (0.5, 2.0)
# cells run a fixed number of iterations
CELL_EPS = 1e-12

FIT_FAILURES = (FitError, ZeroMassIntervalError)


def type2_censor(draws: Sequence[float], r: int) -> Dataset:
    """
    Censors the largest r of n values at the largest remaining one.

    Args:
        draws (Sequence[float]): The complete sample.
        r (int): Number of censored units, 0 <= r < n.

    Returns:
        Dataset: n - r exact observations in increasing order, then r copies of
            [x_(n-r), inf].
    """
    values = np.sort(np.asarray(draws, dtype=float))
    n = values.size
    if not 0 <= r < n:
        raise ValueError(f"need 0 <= r < n, got r={r}, n={n}")
    observed = values[: n - r]
    censor_at = observed[-1]
    observations = [IntervalObservation(x, x) for x in observed]
    observations.extend(IntervalObservation(censor_at, np.inf) for _ in range(r))
    return Dataset(tuple(observations))


def simulate_type2_censored(
        params: ModelParams,
        n: int,
        r: int,
        seed: Optional[int],
        spawn_key: Sequence[int] = ()) -> Dataset:
    """
    Draws n lifetimes and applies Type-II censoring.

    Args:
        params (ModelParams): Data-generating parameters.
        n (int): Sample size.
        r (int): Number of censored units.
        seed (Optional[int]): Base seed.
        spawn_key (Sequence[int]): Stream index, e.g. (replication,).

    Returns:
        Dataset: The censored sample. The same arguments give the same dataset.
    """
    rng = make_generator(seed, spawn_key)
    return type2_censor(sample_variates(params, n, rng), r)


def _reference_box(estimate: ModelParams) -> List[Tuple[float, float]]:
    low, high = PILOT_BOX_FACTORS
    values = estimate.as_dict()
    box = []
    for name, value in values.items():
        if name == "location":
            spread = values["scale"]
            box.append((value - 2.0 * spread, value + 2.0 * spread))
        else:
            box.append((low * value, high * value))
    return box


def reference_estimate(config: StudyConfig, dataset: Dataset) -> ModelParams:
    """
    Per-replication maximum likelihood estimate.

    Exponential and normal use exact EM run to reference_eps. The other models use
    the grid-search oracle over a box around a converged QEM pilot estimate.
    """
    if config.model in EXACT_EM_MODELS:
        fit_config = FitConfig(
            strategy=Strategy.EM,
            eps=config.reference_eps,
            max_iterations=config.reference_max_iterations,
            initial=config.initial,
        )
        return run_fit(config.model, dataset, fit_config).estimate
    pilot_config = FitConfig(
        strategy=Strategy.QEM,
        K=PILOT_K,
        xi_scheme=config.xi_scheme,
        eps=config.reference_eps,
        max_iterations=config.reference_max_iterations,
        initial=config.initial,
    )
    pilot = run_fit(config.model, dataset, pilot_config).estimate
    return mle_grid_refine(config.model, dataset, _reference_box(pilot))


def cell_fit_config(config: StudyConfig, cell: StudyCell, replication: int, cell_index: int) -> FitConfig:
    """Settings of one cell's fit in one replication."""
    return FitConfig(
        strategy=cell.strategy,
        K=cell.K or 1,
        xi_scheme=config.xi_scheme,
        eps=CELL_EPS,
        max_iterations=config.iterations_per_fit,
        seed=derive_seed(config.seed, (replication, cell_index)),
        initial=config.initial,
    )


@dataclass
class ReplicationOutcome:
    """Reference and per-cell estimates of one replication; None marks a failure."""
    index: int
    reference: Optional[Tuple[float, ...]]
    estimates: List[Optional[Tuple[float, ...]]]


def run_replication(config: StudyConfig, replication: int) -> ReplicationOutcome:
    """
    Simulates one censored sample and fits the reference and every cell.

    Args:
        config (StudyConfig): Study design.
        replication (int): Replication index, which keys the random streams.

    Returns:
        ReplicationOutcome: Estimates as value tuples in parameter order.
    """
    dataset = simulate_type2_censored(
        config.true_params, config.n, config.r, config.seed, spawn_key=(replication,))
    try:
        reference = reference_estimate(config, dataset).values()
    except FIT_FAILURES + (OracleBoxError, QuadratureError) as exc:
        logger.warning(f"Replication {replication}: reference fit failed: {exc}")
        reference = None

    estimates: List[Optional[Tuple[float, ...]]] = []
    for cell_index, cell in enumerate(config.cells):
        fit_config = cell_fit_config(config, cell, replication, cell_index)
        try:
            estimates.append(run_fit(config.model, dataset, fit_config).estimate.values())
        except FIT_FAILURES as exc:
            logger.info(f"Replication {replication}, cell {cell.label}: fit failed: {exc}")
            estimates.append(None)
    return ReplicationOutcome(index=replication, reference=reference, estimates=estimates)


def reference_cell_index(cells: Sequence[StudyCell]) -> int:
    """Exact EM if present, else the QEM cell with the largest K, else the first cell."""
    for index, cell in enumerate(cells):
        if cell.strategy is Strategy.EM:
            return index
    qem = [(cell.K, -index) for index, cell in enumerate(cells) if cell.strategy is Strategy.QEM]
    if qem:
        return -max(qem)[1]
    return 0


def _cell_differences(
        outcomes: Sequence[ReplicationOutcome], cell_index: int) -> Tuple[np.ndarray, int]:
    rows, failures = [], 0
    for outcome in outcomes:
        estimate = outcome.estimates[cell_index]
        if outcome.reference is None or estimate is None:
            failures += 1
            continue
        rows.append(np.subtract(estimate, outcome.reference))
    return np.array(rows, dtype=float), failures


def summarize_study(config: StudyConfig, outcomes: Sequence[ReplicationOutcome]) -> pd.DataFrame:
    """
    Aggregates replication outcomes into the study table.

    For every cell and parameter: bias = mean(d), mse = variance of d (ddof 0),
    mean_sq_diff = mean(d²), and sre = mse of the reference cell / mse of the cell,
    where d = cell estimate - reference estimate. Outcomes are reduced in
    replication order.

    Args:
        config (StudyConfig): Study design.
        outcomes (Sequence[ReplicationOutcome]): One outcome per replication.

    Returns:
        pd.DataFrame: One row per (cell, parameter) with STUDY_TABLE_COLUMNS.
    """
    outcomes = sorted(outcomes, key=lambda outcome: outcome.index)
    names = get_params_class(config.model).parameter_names
    stats: Dict[int, Dict[str, np.ndarray]] = {}
    for cell_index in range(len(config.cells)):
        diffs, failures = _cell_differences(outcomes, cell_index)
        if diffs.size == 0:
            nan = np.full(len(names), np.nan)
            stats[cell_index] = {"bias": nan, "mse": nan, "mean_sq_diff": nan, "failures": failures}
        else:
            stats[cell_index] = {
                "bias": diffs.mean(axis=0),
                "mse": diffs.var(axis=0, ddof=0),
                "mean_sq_diff": np.mean(diffs**2, axis=0),
                "failures": failures,
            }

    reference_index = reference_cell_index(config.cells)
    reference_mse = stats[reference_index]["mse"]
    rows = []
    for cell_index, cell in enumerate(config.cells):
        cell_stats = stats[cell_index]
        failure_rate = cell_stats["failures"] / len(outcomes)
        valid = failure_rate <= MAX_FAILURE_RATE
        if not valid:
            logger.warning(
                f"Cell {cell.label}: {cell_stats['failures']} of {len(outcomes)} fits failed; "
                f"row marked invalid")
        for j, name in enumerate(names):
            mse = cell_stats["mse"][j]
            if cell_index == reference_index:
                sre = 1.0
            elif mse == 0:
                sre = 1.0 if reference_mse[j] == 0 else np.inf
            else:
                sre = reference_mse[j] / mse
            rows.append({
                "strategy": cell.strategy.value,
                "K": cell.K,
                "parameter": name,
                "bias": cell_stats["bias"][j],
                "mse": mse,
                "mean_sq_diff": cell_stats["mean_sq_diff"][j],
                "sre": sre,
                "failures": cell_stats["failures"],
                "failure_rate": failure_rate,
                "valid": valid,
            })
    table = pd.DataFrame(rows, columns=STUDY_TABLE_COLUMNS)
    table["K"] = table["K"].astype("Int64")
    return table


def run_study(config: StudyConfig) -> pd.DataFrame:
    """
    Runs all replications, in parallel when config.n_jobs != 1, and builds the table.

    Every replication derives its streams from (seed, replication index), so the
    table does not depend on n_jobs.

    Args:
        config (StudyConfig): Study design.

    Returns:
        pd.DataFrame: The study table (see summarize_study).
    """
    logger.info(
        f"Running {config.replications} replications of the {config.model} study "
        f"(n={config.n}, r={config.r}, cells={[cell.label for cell in config.cells]})")
    outcomes = Parallel(n_jobs=config.n_jobs)(
        delayed(run_replication)(config, replication)
        for replication in range(config.replications))
    table = summarize_study(config, outcomes)
    n_params = len(get_params_class(config.model).parameter_names)
    for cell_index, cell in enumerate(config.cells):
        rows = table.iloc[cell_index * n_params:(cell_index + 1) * n_params]
        logger.info(f"Cell {cell.label}: mse={rows['mse'].tolist()} sre={rows['sre'].tolist()}")
    return table
