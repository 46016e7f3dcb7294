"""
Simulation study settings and their flat `key = value` file format.

Example:

    model = normal
    true_params = 50, 5
    n = 20
    r = 5
    replications = 200
    iterations_per_fit = 10
    cells = em, mcem:100, qem:100
    seed = 20240611
"""
import configparser
from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from data_models.fit_models import EXACT_EM_MODELS, Strategy, XiScheme
from data_models.params import MODEL_NAMES, AnyModelParams, ModelName, make_params
from exceptions import StudyConfigError
from utils import read_text_file

SECTION = "study"
REQUIRED_KEYS = (
    "model", "true_params", "n", "r", "replications", "cells", "iterations_per_fit", "seed")
OPTIONAL_KEYS = ("xi_scheme", "initial", "n_jobs", "reference_eps", "reference_max_iterations")


class StudyCell(BaseModel):
    """One estimator of the study: a strategy and, except for exact EM, its K."""
    model_config = ConfigDict(frozen=True)

    strategy: Strategy
    K: Optional[int] = Field(None, ge=1)

    @model_validator(mode="after")
    def _k_matches_strategy(self) -> "StudyCell":
        if self.strategy is Strategy.EM and self.K is not None:
            raise ValueError("the exact EM cell takes no K")
        if self.strategy is not Strategy.EM and self.K is None:
            raise ValueError(f"cell '{self.strategy.value}' needs a K, e.g. {self.strategy.value}:100")
        return self

    @property
    def label(self) -> str:
        return self.strategy.value if self.K is None else f"{self.strategy.value}:{self.K}"


class StudyConfig(BaseModel):
    """Design of a Type-II censored simulation study."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    model: ModelName
    true_params: AnyModelParams
    n: int = Field(ge=1)
    r: int = Field(ge=0)
    replications: int = Field(ge=1)
    cells: List[StudyCell] = Field(min_length=1)
    iterations_per_fit: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2**64)
    xi_scheme: XiScheme = XiScheme.MIDPOINT
    initial: Optional[AnyModelParams] = None
    n_jobs: int = 1
    reference_eps: float = Field(1e-10, gt=0, lt=1)
    reference_max_iterations: int = Field(1000, ge=1)

    @model_validator(mode="after")
    def _consistent(self) -> "StudyConfig":
        if self.r >= self.n:
            raise ValueError(f"r must be smaller than n, got r={self.r}, n={self.n}")
        if self.true_params.model != self.model:
            raise ValueError(f"true_params are {self.true_params.model} parameters, not {self.model}")
        if self.initial is not None and self.initial.model != self.model:
            raise ValueError(f"initial values are {self.initial.model} parameters, not {self.model}")
        if self.model not in EXACT_EM_MODELS and any(c.strategy is Strategy.EM for c in self.cells):
            raise ValueError(f"an exact EM cell is not available for the {self.model} model")
        return self


def parse_cells(text: str) -> List[StudyCell]:
    """Parses `em, mcem:100, qem:1000` into cells."""
    cells = []
    for token in (part.strip() for part in text.split(",")):
        if not token:
            continue
        strategy, _, k = token.partition(":")
        cells.append(StudyCell(strategy=strategy.strip().lower(), K=int(k) if k else None))
    return cells


def _parse_floats(text: str) -> List[float]:
    return [float(part) for part in text.split(",") if part.strip()]


def parse_study_config(text: str) -> StudyConfig:
    """
    Parses study settings written as flat `key = value` lines.

    Args:
        text (str): File content. `#` starts a comment.

    Returns:
        StudyConfig: The validated settings.

    Raises:
        StudyConfigError: Naming the missing, unknown or invalid key.
    """
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        parser.read_string(f"[{SECTION}]\n{text}")
    except configparser.Error as exc:
        raise StudyConfigError(f"cannot read study config: {exc}") from exc
    entries = dict(parser[SECTION])

    for key in REQUIRED_KEYS:
        if key not in entries:
            raise StudyConfigError(f"missing required key '{key}'", key=key)
    for key in entries:
        if key not in REQUIRED_KEYS + OPTIONAL_KEYS:
            raise StudyConfigError(f"unknown key '{key}'", key=key)

    settings = dict(entries)
    model = entries["model"].strip().lower()
    if model not in MODEL_NAMES:
        raise StudyConfigError(
            f"unknown model '{model}'; expected one of {', '.join(MODEL_NAMES)}", key="model")
    settings["model"] = model
    current_key = "true_params"
    try:
        settings["true_params"] = make_params(model, _parse_floats(entries["true_params"]))
        if "initial" in entries:
            current_key = "initial"
            settings["initial"] = make_params(model, _parse_floats(entries["initial"]))
        current_key = "cells"
        settings["cells"] = parse_cells(entries["cells"])
    except (ValueError, ValidationError) as exc:
        raise StudyConfigError(f"invalid value for '{current_key}': {exc}", key=current_key) from exc

    try:
        return StudyConfig(**settings)
    except ValidationError as exc:
        first = exc.errors()[0]
        key = str(first["loc"][0]) if first["loc"] else None
        raise StudyConfigError(f"invalid study config ({key}): {first['msg']}", key=key) from exc


def load_study_config(config_file_path: str) -> StudyConfig:
    """Reads and validates a study config file."""
    return parse_study_config(read_text_file(config_file_path))
