"""
EM driver shared by the exact, Monte Carlo (MCEM) and quantile-grid (QEM) E-steps.
"""
from typing import List, Optional

import numpy as np

from data_models.fit_models import EXACT_EM_MODELS, FitConfig, FitResult, Strategy, XiScheme
from data_models.interval_data import Dataset
from data_models.params import ModelParams, default_initial_params
from distributions import exp_estep, get_distribution, observed_loglik
from em.msteps import exact_estep, moments_mstep, sample_mstep
from exceptions import (
    FitError,
    ModelMismatchError,
    StrategyNotSupportedError,
    ZeroMassIntervalError,
)
from logger import get_logger
from preprocessing.ingest import validate_for_model
from utils import make_generator, open_unit_uniforms

logger = get_logger(__name__)

CONVERGENCE_FLOOR = 1e-300
# stopping rule must hold on this many consecutive iterations
CONFIRMING_PASSES = 2
# largest double below 1, used in place of the fraction K/K
LAST_FRACTION = float(np.nextafter(1.0, 0.0))


def quantile_grid(K: int, scheme: XiScheme = XiScheme.MIDPOINT) -> np.ndarray:
    """
    The K fractions ξ_1 < … < ξ_K at which conditional quantiles are taken.

    midpoint gives (k - 1/2)/K, shifted k/(K + 1) and left k/K. For left the final
    fraction 1 is replaced by the largest double below 1, so unbounded intervals
    still get a finite quantile.

    Args:
        K (int): Grid size, >= 1.
        scheme (XiScheme): Fraction scheme.

    Returns:
        np.ndarray: Strictly increasing fractions in (0, 1).
    """
    if K < 1:
        raise ValueError(f"K must be at least 1, got {K}")
    k = np.arange(1, K + 1, dtype=float)
    scheme = XiScheme(scheme)
    if scheme is XiScheme.MIDPOINT:
        return (k - 0.5) / K
    if scheme is XiScheme.SHIFTED:
        return k / (K + 1)
    grid = k / K
    grid[-1] = LAST_FRACTION
    return grid


def estep_matrix(
        params: ModelParams,
        dataset: Dataset,
        config: FitConfig,
        iteration: int = 0) -> np.ndarray:
    """
    n×K matrix of conditional quantiles (QEM) or conditional draws (MCEM).

    Row i holds q_{i,k} = F^{-1}(ξ_k | a_i, b_i, θ). MCEM uses uniforms from the
    stream keyed by (seed, iteration), drawn for the full n×K matrix so that entry
    (i, k) is tied to its own counter. Exact observations give a constant row.

    Args:
        params (ModelParams): Current parameters θ^(s).
        dataset (Dataset): The data.
        config (FitConfig): Strategy, K, scheme and seed.
        iteration (int): Iteration index keying the MCEM stream.

    Returns:
        np.ndarray: The n×K matrix.

    Raises:
        StrategyNotSupportedError: If config.strategy is the exact E-step.
        ZeroMassIntervalError: Naming the first observation without mass.
    """
    n, K = dataset.n, config.K
    lower, upper = dataset.lower, dataset.upper
    matrix = np.repeat(lower[:, np.newaxis], K, axis=1)
    rows = np.flatnonzero(~dataset.exact_mask)
    if rows.size == 0:
        return matrix

    if config.strategy is Strategy.QEM:
        xi = quantile_grid(K, config.xi_scheme)[np.newaxis, :]
    elif config.strategy is Strategy.MCEM:
        rng = make_generator(config.seed, spawn_key=(iteration,))
        xi = open_unit_uniforms(rng, (n, K))[rows]
    else:
        raise StrategyNotSupportedError("the exact E-step has no sample matrix")

    dist = get_distribution(params)
    try:
        matrix[rows] = dist.truncated_quantile(
            lower[rows, np.newaxis], upper[rows, np.newaxis], xi)
    except ZeroMassIntervalError as exc:
        index = int(rows[exc.observation_index])
        raise ZeroMassIntervalError(
            f"interval [{lower[index]}, {upper[index]}] has zero probability under {params}",
            observation_index=index,
        ) from exc
    return matrix


def check_convergence(previous: ModelParams, current: ModelParams, eps: float) -> bool:
    """
    Relative stopping rule |θ'_j - θ_j| < ε max(|θ'_j|, 1e-300) on every coordinate.

    Raises:
        ModelMismatchError: If the two parameter vectors belong to different models.
    """
    if previous.model != current.model:
        raise ModelMismatchError(
            f"cannot compare {previous.model} parameters with {current.model} parameters")
    old = np.asarray(previous.values())
    new = np.asarray(current.values())
    return bool(np.all(np.abs(new - old) < eps * np.maximum(np.abs(new), CONVERGENCE_FLOOR)))


def approximate_q(params: ModelParams, samples: np.ndarray) -> float:
    """
    Q̂(θ | θ^(s)) = Σ_i (1/K) Σ_k log f(z_{i,k} | θ).

    The sample matrix carries θ^(s); params is the θ at which Q̂ is evaluated.
    """
    log_density = get_distribution(params).logpdf(samples)
    return float(np.sum(np.mean(log_density, axis=1)))


def exponential_q(rate: float, previous_rate: float, dataset: Dataset) -> float:
    """Exact Q(λ | λ_s) = n log λ - λ Σ A_i(λ_s) of the exponential model."""
    moments = exp_estep(previous_rate, dataset)
    return float(dataset.n * np.log(rate) - rate * np.sum(moments.A))


def _em_step(
        params: ModelParams, dataset: Dataset, config: FitConfig, iteration: int) -> ModelParams:
    if config.strategy is Strategy.EM:
        return moments_mstep(params.model, exact_estep(params, dataset))
    samples = estep_matrix(params, dataset, config, iteration=iteration)
    return sample_mstep(params.model, samples)


def _build_result(
        model: str,
        config: FitConfig,
        trace: List[ModelParams],
        loglik_trace: List[float],
        converged: bool) -> FitResult:
    return FitResult(
        model=model,
        strategy=config.strategy,
        K=config.K,
        xi_scheme=config.xi_scheme,
        seed=config.seed,
        estimate=trace[-1],
        trace=list(trace),
        loglik_trace=list(loglik_trace),
        converged=converged,
        iterations=len(trace) - 1,
    )


def run_fit(
        model: str,
        dataset: Dataset,
        config: Optional[FitConfig] = None) -> FitResult:
    """
    Runs EM from config.initial (or the model's default start).

    Each iteration performs the configured E-step and the model's M-step, then
    records θ^(s+1) and its observed-data log-likelihood. The fit stops once the
    relative stopping rule has held on two consecutive iterations, or after
    config.max_iterations iterations.

    Args:
        model (str): Model name.
        dataset (Dataset): The data.
        config (FitConfig, optional): Fit settings. Defaults to FitConfig().

    Returns:
        FitResult: Estimate, traces and convergence flag.

    Raises:
        SupportViolationError: If the data fall outside the model's support.
        StrategyNotSupportedError: If the exact E-step is requested for a model
            without closed-form moments.
        ModelMismatchError: If config.initial belongs to another model.
        FitError: On a degenerate M-step or shape equation. partial_result holds
            the trace up to the last completed iteration.
        ZeroMassIntervalError: If an interval loses all mass during the E-step,
            with partial_result attached likewise.
    """
    config = config or FitConfig()
    validate_for_model(dataset, model)
    if config.strategy is Strategy.EM and model not in EXACT_EM_MODELS:
        raise StrategyNotSupportedError(
            f"strategy 'em' is only available for {' and '.join(EXACT_EM_MODELS)}, not '{model}'")
    initial = config.initial or default_initial_params(model)
    if initial.model != model:
        raise ModelMismatchError(f"initial values are {initial.model} parameters, not {model}")

    logger.info(
        f"Starting {config.strategy.value} fit of the {model} model: n={dataset.n}, "
        f"K={config.K}, eps={config.eps:g}, start={initial}")

    params = initial
    trace = [params]
    loglik_trace = [observed_loglik(params, dataset)]
    passes = 0
    converged = False
    for iteration in range(1, config.max_iterations + 1):
        try:
            updated = _em_step(params, dataset, config, iteration)
        except (FitError, ZeroMassIntervalError) as exc:
            exc.partial_result = _build_result(model, config, trace, loglik_trace, False)
            logger.info(f"Fit failed at iteration {iteration}: {exc}")
            raise
        passes = passes + 1 if check_convergence(params, updated, config.eps) else 0
        params = updated
        trace.append(params)
        loglik_trace.append(observed_loglik(params, dataset))
        logger.debug(f"s={iteration} {params} loglik={loglik_trace[-1]:.10g}")
        if passes >= CONFIRMING_PASSES:
            converged = True
            break

    if converged:
        logger.info(f"Converged after {len(trace) - 1} iterations: {params}")
    else:
        logger.info(f"Stopped at the iteration cap ({config.max_iterations}): {params}")
    return _build_result(model, config, trace, loglik_trace, converged)
