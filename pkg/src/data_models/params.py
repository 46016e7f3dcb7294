"""
Parameter vectors of the five lifetime models, as a tagged union.

Exponential and Weibull use the rate parameterization f(x) = λβx^(β−1)exp(−λx^β)
(β = 1 for the exponential). The exponential mean σ = 1/λ is an output format only.
"""
from typing import Annotated, ClassVar, Dict, Literal, Sequence, Tuple, Type, Union

from pydantic import BaseModel, ConfigDict, Field

from config import paths
from utils import read_json_as_dict

ModelName = Literal["exponential", "normal", "laplace", "rayleigh", "weibull"]
MODEL_NAMES: Tuple[str, ...] = ("exponential", "normal", "laplace", "rayleigh", "weibull")

PositiveFloat = Annotated[float, Field(gt=0, allow_inf_nan=False)]
FiniteFloat = Annotated[float, Field(allow_inf_nan=False)]


class ModelParams(BaseModel):
    """Base class of all parameter vectors."""
    model_config = ConfigDict(frozen=True, extra="forbid")

    parameter_names: ClassVar[Tuple[str, ...]] = ()
    # True when the model lives on [0, inf)
    nonnegative_support: ClassVar[bool] = True
    # False when the density at 0 is zero or unbounded, so an exact lifetime of 0 has no likelihood
    exact_zero_allowed: ClassVar[bool] = True

    def values(self) -> Tuple[float, ...]:
        """Parameter values in declaration order."""
        return tuple(float(getattr(self, name)) for name in self.parameter_names)

    def as_dict(self) -> Dict[str, float]:
        return dict(zip(self.parameter_names, self.values()))

    def __str__(self) -> str:
        inner = ", ".join(f"{name}={value:.7g}" for name, value in self.as_dict().items())
        return f"{self.model}({inner})"


class ExponentialParams(ModelParams):
    model: Literal["exponential"] = "exponential"
    rate: PositiveFloat
    parameter_names: ClassVar[Tuple[str, ...]] = ("rate",)

    @property
    def mean(self) -> float:
        """Mean lifetime σ = 1/λ."""
        return 1.0 / self.rate


class NormalParams(ModelParams):
    model: Literal["normal"] = "normal"
    location: FiniteFloat
    scale: PositiveFloat
    parameter_names: ClassVar[Tuple[str, ...]] = ("location", "scale")
    nonnegative_support: ClassVar[bool] = False


class LaplaceParams(ModelParams):
    model: Literal["laplace"] = "laplace"
    location: FiniteFloat
    scale: PositiveFloat
    parameter_names: ClassVar[Tuple[str, ...]] = ("location", "scale")
    nonnegative_support: ClassVar[bool] = False


class RayleighParams(ModelParams):
    model: Literal["rayleigh"] = "rayleigh"
    scale: PositiveFloat
    parameter_names: ClassVar[Tuple[str, ...]] = ("scale",)
    exact_zero_allowed: ClassVar[bool] = False


class WeibullParams(ModelParams):
    model: Literal["weibull"] = "weibull"
    rate: PositiveFloat
    shape: PositiveFloat
    parameter_names: ClassVar[Tuple[str, ...]] = ("rate", "shape")
    exact_zero_allowed: ClassVar[bool] = False


AnyModelParams = Annotated[
    Union[ExponentialParams, NormalParams, LaplaceParams, RayleighParams, WeibullParams],
    Field(discriminator="model"),
]

PARAMS_CLASSES: Dict[str, Type[ModelParams]] = {
    "exponential": ExponentialParams,
    "normal": NormalParams,
    "laplace": LaplaceParams,
    "rayleigh": RayleighParams,
    "weibull": WeibullParams,
}


def get_params_class(model: str) -> Type[ModelParams]:
    """
    Looks up the parameter class of a model.

    Args:
        model (str): One of MODEL_NAMES.

    Returns:
        Type[ModelParams]: The parameter class.

    Raises:
        ValueError: If the model is unknown.
    """
    try:
        return PARAMS_CLASSES[model]
    except KeyError:
        raise ValueError(
            f"Unknown model '{model}'. Expected one of {', '.join(MODEL_NAMES)}.") from None


def make_params(model: str, values: Sequence[float]) -> ModelParams:
    """
    Builds a parameter vector from positional values.

    Args:
        model (str): Model name.
        values (Sequence[float]): Values in the model's parameter order.

    Returns:
        ModelParams: The validated parameter vector.

    Raises:
        ValueError: If the count of values is wrong or a value is out of range.
    """
    params_class = get_params_class(model)
    names = params_class.parameter_names
    if len(values) != len(names):
        raise ValueError(
            f"Model '{model}' takes {len(names)} parameter(s) ({', '.join(names)}), "
            f"got {len(values)}.")
    return params_class(**{name: float(value) for name, value in zip(names, values)})


def default_initial_params(
        model: str,
        initial_params_file_path: str = paths.INITIAL_PARAMS_FILE_PATH) -> ModelParams:
    """
    Returns the configured starting values θ^(0) of a model.

    Args:
        model (str): Model name.
        initial_params_file_path (str): JSON file mapping model name to parameter values.

    Returns:
        ModelParams: Starting values.
    """
    params_class = get_params_class(model)
    return params_class(**read_json_as_dict(initial_params_file_path)[model])
