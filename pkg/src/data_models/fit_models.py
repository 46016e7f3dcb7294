"""
Fit configuration and fit result models.
"""
from enum import Enum
from typing import Any, List, Optional

import pandas as pd
from pydantic import BaseModel, ConfigDict, Field, model_validator

from config import paths
from data_models.params import AnyModelParams, ModelName, ModelParams
from utils import read_json_as_dict

EXACT_EM_MODELS = ("exponential", "normal")


class Strategy(str, Enum):
    """E-step strategies."""
    EM = "em"
    MCEM = "mcem"
    QEM = "qem"


class XiScheme(str, Enum):
    """Fraction grids used by the quantile E-step."""
    MIDPOINT = "midpoint"  # (k - 1/2) / K
    LEFT = "left"  # k / K
    SHIFTED = "shifted"  # k / (K + 1)


class FitConfig(BaseModel):
    """
    Settings of one EM fit.

    K is ignored by the exact E-step and seed only matters for MCEM. A seed of None
    draws fresh OS entropy, which makes MCEM fits non-reproducible.
    """
    model_config = ConfigDict(frozen=True, extra="forbid")

    strategy: Strategy = Strategy.QEM
    K: int = Field(1000, ge=1)
    xi_scheme: XiScheme = XiScheme.MIDPOINT
    eps: float = Field(1e-5, gt=0, lt=1)
    max_iterations: int = Field(500, ge=1)
    seed: Optional[int] = Field(0, ge=0, lt=2**64)
    initial: Optional[AnyModelParams] = None

    @model_validator(mode="after")
    def _exact_em_needs_closed_form(self) -> "FitConfig":
        if (self.strategy is Strategy.EM and self.initial is not None
                and self.initial.model not in EXACT_EM_MODELS):
            raise ValueError(
                f"strategy 'em' is only available for {' and '.join(EXACT_EM_MODELS)}, "
                f"not '{self.initial.model}'")
        return self


def load_default_fit_config(
        fit_config_file_path: str = paths.FIT_CONFIG_FILE_PATH, **overrides: Any) -> FitConfig:
    """
    Reads the default fit settings and applies overrides.

    Overrides whose value is None are ignored, so argparse namespaces can be passed
    through directly.

    Args:
        fit_config_file_path (str): Path to the JSON defaults.
        **overrides: FitConfig fields to replace.

    Returns:
        FitConfig: The validated configuration.
    """
    settings = read_json_as_dict(fit_config_file_path)
    settings.update({key: value for key, value in overrides.items() if value is not None})
    return FitConfig(**settings)


class FitResult(BaseModel):
    """
    Outcome of run_fit.

    trace holds θ^(0) … θ^(iterations) and loglik_trace the observed-data
    log-likelihood at each of them, so both have iterations + 1 entries.
    """
    model_config = ConfigDict(frozen=True, ser_json_inf_nan="constants")

    model: ModelName
    strategy: Strategy
    K: int
    xi_scheme: XiScheme
    seed: Optional[int] = None
    estimate: AnyModelParams
    trace: List[AnyModelParams]
    loglik_trace: List[float]
    converged: bool
    iterations: int

    @model_validator(mode="after")
    def _trace_lengths_agree(self) -> "FitResult":
        if len(self.trace) != self.iterations + 1 or len(self.loglik_trace) != len(self.trace):
            raise ValueError(
                f"trace of {len(self.trace)} and loglik_trace of {len(self.loglik_trace)} "
                f"entries do not match {self.iterations} iterations")
        return self

    @property
    def final_loglik(self) -> float:
        return self.loglik_trace[-1]

    def trace_frame(self, exp_mean: bool = False) -> pd.DataFrame:
        """
        Per-iteration table with columns s, one column per parameter, and loglik.

        Args:
            exp_mean (bool): Report an exponential fit as its mean 1/λ instead of the rate.

        Returns:
            pd.DataFrame: One row per iterate, θ^(0) first.
        """
        rows = []
        for s, (params, loglik) in enumerate(zip(self.trace, self.loglik_trace)):
            row = {"s": s}
            row.update(_report_values(params, exp_mean))
            row["loglik"] = loglik
            rows.append(row)
        return pd.DataFrame(rows)

    def estimate_values(self, exp_mean: bool = False) -> dict:
        """Final estimate as a name → value dict."""
        return _report_values(self.estimate, exp_mean)


def _report_values(params: ModelParams, exp_mean: bool) -> dict:
    if exp_mean and params.model == "exponential":
        return {"mean": params.mean}
    return params.as_dict()

