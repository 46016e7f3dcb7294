"""
Adaptive quadrature of conditional expectations E[g(Z) | a <= Z <= b, θ].
"""
import warnings
from typing import Callable, Dict, List, Optional, Union

import numpy as np
from scipy.integrate import IntegrationWarning, quad

from data_models.interval_data import IntervalObservation
from data_models.params import ModelParams
from distributions import get_distribution
from exceptions import IntervalDataError, QuadratureError, ZeroMassIntervalError

QUADRATURE_TOLERANCE = 1e-12
ACCEPTED_ERROR = 1e-10
# QUADPACK uses 21 nodes per subinterval; cap the total at about a million
NODE_BUDGET = 10**6
SUBINTERVAL_LIMIT = NODE_BUDGET // 21

INTEGRAND_TAGS = ("mean", "second-moment", "log-z", "z-power-beta", "abs-dev", "log-pdf")


def _integrand(tag: str, argument) -> Callable[[float], float]:
    if tag == "mean":
        return lambda z: z
    if tag == "second-moment":
        return lambda z: z * z
    if tag == "log-z":
        return np.log
    if tag == "z-power-beta":
        return lambda z: z**float(argument)
    if tag == "abs-dev":
        return lambda z: abs(z - float(argument))
    if tag == "log-pdf":
        other = get_distribution(argument)
        return lambda z: float(other.logpdf(z))
    raise ValueError(f"unknown integrand tag '{tag}'; expected one of {', '.join(INTEGRAND_TAGS)}")


def _integrate(func: Callable[[float], float], lower: float, upper: float) -> Dict[str, float]:
    # roundoff warnings are judged by the returned error estimate instead
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        result = quad(
            func, lower, upper,
            epsabs=QUADRATURE_TOLERANCE, epsrel=QUADRATURE_TOLERANCE,
            limit=SUBINTERVAL_LIMIT, full_output=1,
        )
    value, abserr, info = result[0], result[1], result[2]
    if info["last"] >= SUBINTERVAL_LIMIT:
        raise QuadratureError(
            f"quadrature on [{lower}, {upper}] used its whole node budget "
            f"({info['neval']} evaluations)")
    return {"value": value, "abserr": abserr}


def _pieces(lower, upper, median, params, tag, argument) -> List[tuple]:
    """Splits [lower, upper] at the median and at the kinks of the integrand."""
    cuts = {median}
    if hasattr(params, "location"):
        cuts.add(float(params.location))
    if tag == "abs-dev":
        cuts.add(float(argument))
    inner = sorted(cut for cut in cuts if lower < cut < upper)
    edges = [lower, *inner, upper]
    return list(zip(edges[:-1], edges[1:]))


def quadrature_estep(
        params: ModelParams,
        obs: IntervalObservation,
        tag: str,
        argument: Optional[Union[float, ModelParams]] = None) -> float:
    """
    ∫ g(z) p(z | θ) dz over the observation's interval by adaptive quadrature.

    p is the density restricted to [a, b] and renormalized. Both the numerator and
    the normalizing mass are integrated here, split at the conditional median, and
    infinite ends are handled by QUADPACK's change of variable.

    Args:
        params (ModelParams): θ of the conditional law.
        obs (IntervalObservation): A non-degenerate interval.
        tag (str): One of mean, second-moment, log-z, z-power-beta, abs-dev, log-pdf.
        argument (float or ModelParams, optional): β for z-power-beta, μ for abs-dev,
            and the θ whose log-density is integrated for log-pdf.

    Returns:
        float: The conditional expectation.

    Raises:
        IntervalDataError: If the interval is degenerate.
        ZeroMassIntervalError: If the interval has zero probability.
        QuadratureError: If the tolerance is not met within the node budget.
    """
    if obs.is_exact():
        raise IntervalDataError("quadrature needs a non-degenerate interval")
    if tag in ("z-power-beta", "abs-dev", "log-pdf") and argument is None:
        raise ValueError(f"integrand '{tag}' needs an argument")
    g = _integrand(tag, argument)
    dist = get_distribution(params)
    lower, upper = obs.lower, obs.upper

    median = float(dist.truncated_quantile(lower, upper, 0.5))
    # densities are scaled by their value at the median to keep far tails representable
    log_scale = float(dist.logpdf(median))
    if not np.isfinite(log_scale):
        raise ZeroMassIntervalError(f"density vanishes inside [{lower}, {upper}] under {params}")

    def density(z: float) -> float:
        return float(np.exp(dist.logpdf(z) - log_scale))

    def weighted(z: float) -> float:
        p = density(z)
        return g(z) * p if p > 0 else 0.0

    pieces = _pieces(lower, upper, median, params, tag, argument)
    mass = [_integrate(density, lo, hi) for lo, hi in pieces]
    moment = [_integrate(weighted, lo, hi) for lo, hi in pieces]
    total_mass = sum(piece["value"] for piece in mass)
    if not total_mass > 0:
        raise ZeroMassIntervalError(f"interval [{lower}, {upper}] has zero probability under {params}")
    total_moment = sum(piece["value"] for piece in moment)
    value = total_moment / total_mass

    error = (sum(piece["abserr"] for piece in moment)
             + abs(value) * sum(piece["abserr"] for piece in mass)) / total_mass
    if error > ACCEPTED_ERROR * max(1.0, abs(value)):
        raise QuadratureError(
            f"quadrature error estimate {error:.3g} exceeds tolerance for '{tag}' on [{lower}, {upper}]")
    return value
