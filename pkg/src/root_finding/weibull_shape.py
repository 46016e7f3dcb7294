"""
Shape equation of the Weibull quantile M-step.

With q_max the largest entry of the n×K sample matrix and d = log q_max - log q,
the shape update β solves g(β) = h(β), where

    g(β) = 1 / β
    h(β) = Σ q^β log q / Σ q^β - mean(log q) = mean(d) - Σ w d / Σ w,   w = exp(-β d).

g is strictly decreasing and h nondecreasing, so the root is unique and lies in
[β_L, 1 / h(β_L)] with β_L = 1 / mean(d).
"""
from dataclasses import dataclass, field
from typing import Tuple

import numpy as np
from scipy.optimize import brentq

from exceptions import NoUniqueRootError

DEFAULT_TOLERANCE = 1e-12
# mean(d) below this is treated as a constant sample
CONSTANT_SAMPLE_THRESHOLD = 1e-12


@dataclass(frozen=True)
class ShapeEquationInputs:
    """Log-samples of the shape equation, shifted by the largest value."""
    q: np.ndarray
    logq: np.ndarray = field(init=False, repr=False)
    log_q_max: float = field(init=False)
    distance: np.ndarray = field(init=False, repr=False)
    mean_distance: float = field(init=False)

    def __post_init__(self) -> None:
        q = np.asarray(self.q, dtype=float)
        if q.size == 0 or not np.all(np.isfinite(q)) or not np.all(q > 0):
            raise ValueError("shape equation needs a nonempty matrix of finite positive values")
        logq = np.log(q).ravel()
        log_q_max = float(logq.max())
        distance = log_q_max - logq
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "logq", logq)
        object.__setattr__(self, "log_q_max", log_q_max)
        object.__setattr__(self, "distance", distance)
        object.__setattr__(self, "mean_distance", float(distance.mean()))

    @property
    def q_max(self) -> float:
        return float(np.exp(self.log_q_max))

    @property
    def size(self) -> int:
        return int(self.distance.size)

    def weights(self, beta: float) -> np.ndarray:
        """q^β / q_max^β, so the largest weight is 1."""
        return np.exp(-beta * self.distance)


def g_of_beta(beta: float) -> float:
    return 1.0 / beta


def h_of_beta(inputs: ShapeEquationInputs, beta: float) -> float:
    """
    Weighted log-mean difference h(β), computed with exponent shifting.

    Args:
        inputs (ShapeEquationInputs): Prepared samples.
        beta (float): Shape value, > 0.

    Returns:
        float: h(β) >= 0.
    """
    w = inputs.weights(beta)
    return inputs.mean_distance - float(np.dot(w, inputs.distance) / w.sum())


def beta_bounds(inputs: ShapeEquationInputs) -> Tuple[float, float]:
    """
    Bracket [β_L, β_U] of the shape root.

    β_L = nK / Σ (log q_max - log q) and β_U = 1 / h(β_L).

    Raises:
        NoUniqueRootError: If the samples are (numerically) all equal.
    """
    if inputs.mean_distance < CONSTANT_SAMPLE_THRESHOLD:
        raise NoUniqueRootError(
            "shape equation has no unique root: all samples are equal to q_max")
    beta_lower = 1.0 / inputs.mean_distance
    h_lower = h_of_beta(inputs, beta_lower)
    if not h_lower > 0:
        raise NoUniqueRootError(
            f"shape equation has no unique root: h(β_L) = {h_lower:.3g} at β_L = {beta_lower:.6g}")
    return beta_lower, 1.0 / h_lower


def solve_beta(inputs: ShapeEquationInputs, tol: float = DEFAULT_TOLERANCE) -> float:
    """
    Unique root of g(β) = h(β) inside [β_L, β_U].

    Uses Brent's method, which keeps a sign-changing bracket and falls back to
    bisection whenever interpolation stalls.

    Args:
        inputs (ShapeEquationInputs): Prepared samples.
        tol (float): Relative tolerance on β.

    Returns:
        float: The shape root.

    Raises:
        NoUniqueRootError: If the samples are (numerically) all equal.
    """
    beta_lower, beta_upper = beta_bounds(inputs)

    def excess(beta: float) -> float:
        return g_of_beta(beta) - h_of_beta(inputs, beta)

    if excess(beta_lower) <= 0:
        return beta_lower
    if excess(beta_upper) >= 0:
        return beta_upper
    return float(brentq(excess, beta_lower, beta_upper, xtol=np.finfo(float).tiny, rtol=tol))


def weibull_rate(inputs: ShapeEquationInputs, beta: float) -> float:
    """λ' = nK / Σ q^β, evaluated as nK exp(-β log q_max) / Σ w."""
    w = inputs.weights(beta)
    return float(inputs.size * np.exp(-beta * inputs.log_q_max) / w.sum())
