"""
Replays the published worked examples on the embedded datasets and compares the
fits with the published iterates and estimates.
"""
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from data_models.fit_models import FitConfig, FitResult, Strategy
from data_models.interval_data import Dataset
from data_models.params import make_params
from em.engine import run_fit
from fixtures import datasets
from logger import get_logger

logger = get_logger(__name__)

FIXTURE_NAMES = ("leukemia", "gupta", "balakrishnan", "rayleigh20", "nelson-cracks")
REPORT_COLUMNS = ["run", "parameter", "at", "reported", "fitted", "difference"]

# fixed-length runs, as in the published iteration tables
TABLE_ITERATIONS = 10
TABLE_EPS = 1e-12
TABLE_K = 1000


@dataclass(frozen=True)
class FixtureRun:
    """
    One fit of a fixture together with the values published for it.

    reported_trace maps a parameter to its published iterates s = 1, 2, …;
    reported_final maps a parameter to the published final estimate.
    """
    label: str
    model: str
    config: FitConfig
    exp_mean: bool = False
    reported_trace: Dict[str, Sequence[float]] = field(default_factory=dict)
    reported_final: Dict[str, float] = field(default_factory=dict)


@dataclass(frozen=True)
class Fixture:
    name: str
    description: str
    dataset: Callable[[], Dataset]
    runs: Tuple[FixtureRun, ...]


@dataclass
class FixtureReport:
    """Fits of one fixture and the row-by-row comparison with published values."""
    name: str
    description: str
    dataset: Dataset
    results: Dict[str, FitResult]
    comparison: pd.DataFrame


def _table_config(strategy: Strategy, model: str, initial: Sequence[float], K: int = TABLE_K) -> FitConfig:
    return FitConfig(
        strategy=strategy,
        K=K,
        eps=TABLE_EPS,
        max_iterations=TABLE_ITERATIONS,
        seed=0,
        initial=make_params(model, initial),
    )


def _converging_config(strategy: Strategy, model: str, initial: Sequence[float],
                       eps: float, max_iterations: int) -> FitConfig:
    return FitConfig(
        strategy=strategy,
        K=TABLE_K,
        eps=eps,
        max_iterations=max_iterations,
        seed=0,
        initial=make_params(model, initial),
    )


def _leukemia() -> Fixture:
    return Fixture(
        name="leukemia",
        description="Leukemia remission times, exponential model, 12 of 21 right-censored",
        dataset=datasets.leukemia_dataset,
        runs=(
            FixtureRun(
                label="em",
                model="exponential",
                config=_converging_config(Strategy.EM, "exponential", [1.0], 1e-10, 1000),
                exp_mean=True,
                reported_final={"mean": 39.89},
            ),
            FixtureRun(
                label="qem",
                model="exponential",
                config=_converging_config(Strategy.QEM, "exponential", [1.0], 1e-10, 1000),
                exp_mean=True,
                reported_final={"mean": 39.89},
            ),
        ),
    )


def _gupta() -> Fixture:
    em_location = [1.8467, 1.8058, 1.7761, 1.7593, 1.7504, 1.7459, 1.7439, 1.7429, 1.7425, 1.7424]
    em_scale = [0.2968, 0.1931, 0.1370, 0.1070, 0.0919, 0.0848, 0.0816, 0.0802, 0.0796, 0.0793]
    return Fixture(
        name="gupta",
        description="Type-II censored normal sample, 3 of 10 censored at 1.778",
        dataset=datasets.gupta_dataset,
        runs=(
            FixtureRun(
                label="em",
                model="normal",
                config=_table_config(Strategy.EM, "normal", [0.0, 1.0]),
                reported_trace={"location": em_location, "scale": em_scale},
                reported_final={"location": 1.742, "scale": 0.079},
            ),
            FixtureRun(
                label="mcem",
                model="normal",
                config=_table_config(Strategy.MCEM, "normal", [0.0, 1.0]),
                reported_trace={
                    "location": [1.8456, 1.8074, 1.7771, 1.7597, 1.7503,
                                 1.7458, 1.7440, 1.7428, 1.7422, 1.7421],
                    "scale": [0.2973, 0.1959, 0.1386, 0.1076, 0.0919,
                              0.0847, 0.0816, 0.0802, 0.0792, 0.0789],
                },
            ),
            FixtureRun(
                label="qem",
                model="normal",
                config=_table_config(Strategy.QEM, "normal", [0.0, 1.0]),
                reported_trace={
                    "location": [1.8467, 1.8057, 1.7760, 1.7593, 1.7503,
                                 1.7459, 1.7439, 1.7429, 1.7425, 1.7424],
                    "scale": [0.2966, 0.1930, 0.1369, 0.1069, 0.0919,
                              0.0848, 0.0816, 0.0802, 0.0796, 0.0793],
                },
            ),
        ),
    )


def _balakrishnan() -> Fixture:
    location = [49.76609] * TABLE_ITERATIONS
    return Fixture(
        name="balakrishnan",
        description="Type-II censored Laplace sample, 2 of 20 censored at 54.94154",
        dataset=datasets.balakrishnan_dataset,
        runs=(
            FixtureRun(
                label="mcem",
                model="laplace",
                config=_table_config(Strategy.MCEM, "laplace", [0.0, 1.0]),
                reported_trace={
                    "location": location,
                    "scale": [4.320983, 4.669010, 4.669581, 4.682357, 4.693247,
                              4.687793, 4.693793, 4.678954, 4.702827, 4.671909],
                },
            ),
            FixtureRun(
                label="qem",
                model="laplace",
                config=_table_config(Strategy.QEM, "laplace", [0.0, 1.0]),
                reported_trace={
                    "location": location,
                    "scale": [4.318817, 4.650584, 4.683749, 4.687064, 4.687395,
                              4.687429, 4.687432, 4.687432, 4.687432, 4.687432],
                },
                reported_final={"location": 49.76609, "scale": 4.68761},
            ),
        ),
    )


def _rayleigh20() -> Fixture:
    return Fixture(
        name="rayleigh20",
        description="Simulated Rayleigh sample, 5 of 20 censored at 10.627, two starting values",
        dataset=datasets.rayleigh20_dataset,
        runs=(
            FixtureRun(
                label="mcem-start-1",
                model="rayleigh",
                config=_table_config(Strategy.MCEM, "rayleigh", [1.0]),
                reported_trace={"scale": [5.3363, 5.9395, 6.0888, 6.1170, 6.1413,
                                          6.1336, 6.1214, 6.1290, 6.1261, 6.1292]},
            ),
            FixtureRun(
                label="qem-start-1",
                model="rayleigh",
                config=_table_config(Strategy.QEM, "rayleigh", [1.0]),
                reported_trace={"scale": [5.3358, 5.9444, 6.0870, 6.1221, 6.1309,
                                          6.1330, 6.1336, 6.1337, 6.1338, 6.1338]},
                reported_final={"scale": 6.1341},
            ),
            FixtureRun(
                label="mcem-start-10",
                model="rayleigh",
                config=_table_config(Strategy.MCEM, "rayleigh", [10.0]),
                reported_trace={"scale": [7.3335, 6.4458, 6.2167, 6.1488, 6.1494,
                                          6.1356, 6.1219, 6.1291, 6.1261, 6.1292]},
            ),
            FixtureRun(
                label="qem-start-10",
                model="rayleigh",
                config=_table_config(Strategy.QEM, "rayleigh", [10.0]),
                reported_trace={"scale": [7.2946, 6.4435, 6.2126, 6.1536, 6.1387,
                                          6.1350, 6.1341, 6.1338, 6.1338, 6.1338]},
                reported_final={"scale": 6.1341},
            ),
        ),
    )


def _nelson_cracks() -> Fixture:
    return Fixture(
        name="nelson-cracks",
        description="Cracked parts from intermittent inspection, 167 grouped lifetimes",
        dataset=datasets.nelson_cracks_dataset,
        runs=(
            FixtureRun(
                label="qem-weibull",
                model="weibull",
                config=_converging_config(Strategy.QEM, "weibull", [1.0, 1.0], 1e-5, 500),
                reported_final={"rate": 0.001674018, "shape": 1.497657},
            ),
            FixtureRun(
                label="qem-exponential",
                model="exponential",
                config=_converging_config(Strategy.QEM, "exponential", [1.0], 1e-5, 500),
                reported_final={"rate": 0.01209699},
            ),
        ),
    )


FIXTURES: Dict[str, Callable[[], Fixture]] = {
    "leukemia": _leukemia,
    "gupta": _gupta,
    "balakrishnan": _balakrishnan,
    "rayleigh20": _rayleigh20,
    "nelson-cracks": _nelson_cracks,
}


def get_fixture(name: str) -> Fixture:
    """
    Looks up a fixture by name.

    Raises:
        ValueError: If the name is unknown.
    """
    if name not in FIXTURES:
        raise ValueError(f"unknown fixture '{name}'; expected one of {', '.join(FIXTURE_NAMES)} or all")
    return FIXTURES[name]()


def _comparison_rows(run: FixtureRun, result: FitResult) -> List[dict]:
    rows = []
    trace = result.trace_frame(exp_mean=run.exp_mean)
    for parameter, values in run.reported_trace.items():
        for s, reported in enumerate(values, start=1):
            fitted = float(trace[parameter].iloc[s]) if s < len(trace) else np.nan
            rows.append({"run": run.label, "parameter": parameter, "at": f"s={s}",
                         "reported": reported, "fitted": fitted})
    final = result.estimate_values(exp_mean=run.exp_mean)
    for parameter, reported in run.reported_final.items():
        rows.append({"run": run.label, "parameter": parameter, "at": "final",
                     "reported": reported, "fitted": final[parameter]})
    return rows


def replay_fixture(name: str) -> FixtureReport:
    """
    Runs every published configuration of one fixture.

    Args:
        name (str): One of FIXTURE_NAMES.

    Returns:
        FixtureReport: The fits and a comparison table with one row per published value.
    """
    fixture = get_fixture(name)
    dataset = fixture.dataset()
    results: Dict[str, FitResult] = {}
    rows: List[dict] = []
    for run in fixture.runs:
        result = run_fit(run.model, dataset, run.config)
        results[run.label] = result
        rows.extend(_comparison_rows(run, result))
        logger.info(f"Fixture {name}, run {run.label}: {result.estimate} "
                    f"after {result.iterations} iterations")
    comparison = pd.DataFrame(rows, columns=REPORT_COLUMNS[:-1])
    comparison["difference"] = comparison["fitted"] - comparison["reported"]
    return FixtureReport(
        name=name,
        description=fixture.description,
        dataset=dataset,
        results=results,
        comparison=comparison,
    )


def replay_fixtures(name: Optional[str] = "all") -> List[FixtureReport]:
    """Replays one fixture, or every fixture when name is 'all'."""
    names = FIXTURE_NAMES if name == "all" else (name,)
    return [replay_fixture(fixture_name) for fixture_name in names]


def format_fixture_report(report: FixtureReport) -> str:
    """Human-readable comparison of one fixture."""
    lines = [f"== {report.name}: {report.description}", f"data: {report.dataset.summary()}"]
    for label, result in report.results.items():
        status = "converged" if result.converged else "stopped"
        lines.append(f"{label}: {result.estimate} ({status} after {result.iterations} iterations)")
    lines.append(report.comparison.to_string(index=False, float_format=lambda value: f"{value:.6g}"))
    return "\n".join(lines)
