"""Sweep module for running parameter sweeps and writing their result tables.

A sweep evaluates one scenario along a grid of one variable, once per
series (a set of scenario overrides such as ``{"b": 1}``), and produces one
row per (series, grid point). Every emitted file embeds the resolved
scenario, the settings and the seed, so the file itself can be re-run.
"""
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
import pandas as pd
import yaml
from tqdm import tqdm

from fd_backhaul.analytic import (
    RateReport,
    limit_K_infinity,
    power_scaling_limit,
    se_half_duplex,
    se_phase,
)
from fd_backhaul.constants import (
    FORMS,
    PHASE_VARIABLES,
    PHASES,
    SWEEP_OUTPUTS,
    SWEEP_VARIABLES,
    Form,
    Phase,
    SweepOutput,
    SweepVariable,
)
from fd_backhaul.energy import PowerModel, ee
from fd_backhaul.logger import setup_custom_logger
from fd_backhaul.montecarlo import McSettings, mc_se_phase1, mc_se_phase2
from fd_backhaul.params import (
    AdcConfig,
    HeterogeneousKError,
    Scenario,
    default_scenario,
    parse_bits,
    resize_scenario,
    scenario_from_dict,
    scenario_to_dict,
    with_power_scaling,
)
from fd_backhaul.settings import N_WORKERS, OUTPUT_DIR
from fd_backhaul.utils import db_to_linear, linear_to_db, replace_inf, stable_hash, to_builtin

logger = setup_custom_logger(__name__)

# One row of a sweep table, keyed by column name.
ResultRow = Dict[str, Any]

OVERRIDE_KEYS = ("S", "M_rx", "N_rx", "M_tx", "N_tx", "b", "K_dB", "K", "sigma2", "SNR_dB", "FOM_fJ")
FORMATS = ("csv", "json")


@dataclass(frozen=True)
class SweepSpec:
    """A sweep of one variable over a grid, repeated for every series.

    Attributes
    ----------
    name : str
        Name used for the output file.
    phase : Phase
        Phase evaluated; ``scenario`` is switched to its antenna roles.
    variable : SweepVariable
        The swept quantity.
    grid : Tuple[float, ...]
        Strictly increasing values of ``variable``.
    scenario : Scenario
        The fixed scenario.
    outputs : Tuple[SweepOutput, ...]
        Any of "analytic", "montecarlo", "limits", "hd" and "ee".
    series : Tuple[Dict[str, Any], ...]
        Overrides applied before the grid value, one series each (see
        ``OVERRIDE_KEYS``).
    antenna_ratio : Optional[float]
        When an MC array size is set, the SC array follows as
        ``round(ratio * M)``; None leaves it alone.
    power_scaling : Optional[Tuple[float, float]]
        Linear ``(E_m, E_s)``; when given, the data powers shrink with the
        array sizes at every point.
    model : PowerModel
        Power model for the "ee" output.
    mc : McSettings
        Monte Carlo settings; the seed is the master seed of the sweep.
    form : Form
        Closed-form variant of the analytic outputs.
    """

    name: str
    phase: Phase
    variable: SweepVariable
    grid: Tuple[float, ...]
    scenario: Optional[Scenario] = None
    outputs: Tuple[SweepOutput, ...] = ("analytic",)
    series: Tuple[Dict[str, Any], ...] = ({},)
    antenna_ratio: Optional[float] = 0.5
    power_scaling: Optional[Tuple[float, float]] = None
    model: PowerModel = field(default_factory=PowerModel)
    mc: McSettings = field(default_factory=McSettings)
    form: Form = "exact"

    def __post_init__(self):
        if self.phase not in PHASES:
            raise ValueError(f"phase must be one of {PHASES}, got {self.phase!r}.")
        if self.variable not in SWEEP_VARIABLES:
            raise ValueError(
                f"Unknown sweep variable {self.variable!r}, expected one of {SWEEP_VARIABLES}."
            )
        if self.variable not in PHASE_VARIABLES[self.phase]:
            raise ValueError(
                f"Variable {self.variable!r} cannot be swept in phase {self.phase}."
            )

        grid = tuple(float(v) for v in self.grid)
        if not grid:
            raise ValueError("Sweep grid must not be empty.")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError(f"Sweep grid must be strictly increasing, got {list(grid)}.")
        object.__setattr__(self, "grid", grid)

        unknown = [o for o in self.outputs if o not in SWEEP_OUTPUTS]
        if unknown:
            raise ValueError(f"Unknown outputs {unknown}, expected a subset of {SWEEP_OUTPUTS}.")
        object.__setattr__(self, "outputs", tuple(self.outputs))

        series = tuple(dict(s) for s in self.series) or ({},)
        for overrides in series:
            bad = [k for k in overrides if k not in OVERRIDE_KEYS]
            if bad:
                raise ValueError(f"Unknown series overrides {bad}, expected {OVERRIDE_KEYS}.")
        object.__setattr__(self, "series", series)

        if self.form not in FORMS:
            raise ValueError(f"form must be one of {FORMS}, got {self.form!r}.")

        scenario = default_scenario(self.phase) if self.scenario is None else self.scenario
        object.__setattr__(self, "scenario", scenario.for_phase(self.phase))

    @property
    def max_S(self) -> int:
        return max(int(s.get("S", self.scenario.cfg.S)) for s in self.series)

    def columns(self) -> List[str]:
        """Column order of the result table; fixed for a given spec."""
        columns = ["series", self.variable]
        links = range(1, self.max_S + 1)

        def se_columns(prefix: str, with_std: bool) -> List[str]:
            names = [f"{prefix}_sum_se", f"{prefix}_sum_se_mc", f"{prefix}_sum_se_sc"]
            names += [f"{prefix}_se_mc_{k}" for k in links]
            names += [f"{prefix}_se_sc_{k}" for k in links]
            if not with_std:
                return names

            return [c for name in names for c in (name, f"{name}_std")]

        if "analytic" in self.outputs:
            columns += se_columns("analytic", False)
        if "montecarlo" in self.outputs:
            columns += se_columns("montecarlo", True)
        if "hd" in self.outputs:
            columns += se_columns("hd", False)
        if "limits" in self.outputs:
            columns += ["k_inf_sum_se", "k_inf_sum_se_mc", "k_inf_sum_se_sc"]
            if self.power_scaling is not None:
                columns += [
                    "power_scaling_sum_se",
                    "power_scaling_sum_se_mc",
                    "power_scaling_sum_se_sc",
                ]
        if "ee" in self.outputs:
            columns += ["ee_sum_se", "power_mc", "power_total", "ee"]

        return columns + ["scenario_hash", "seed"]

    def metadata(self) -> Dict[str, Any]:
        """Everything needed to re-run the spec, in plain types."""
        data = {
            "name": self.name,
            "phase": self.phase,
            "variable": self.variable,
            "grid": list(self.grid),
            "outputs": list(self.outputs),
            "series": [dict(s) for s in self.series],
            "antenna_ratio": self.antenna_ratio,
            "power_scaling": None
            if self.power_scaling is None
            else {"E_m": self.power_scaling[0], "E_s": self.power_scaling[1]},
            "form": self.form,
            "mc": {
                "n_realizations": self.mc.n_realizations,
                "seed": self.mc.seed,
                "batch": self.mc.batch,
                "stderr": self.mc.stderr,
            },
            "power_model": asdict(self.model),
            "scenario": scenario_to_dict(self.scenario),
        }
        data["scenario_hash"] = stable_hash(data["scenario"])

        return to_builtin(data)


def series_label(overrides: Dict[str, Any]) -> str:
    if not overrides:
        return "base"

    return ",".join(f"{k}={v}" for k, v in overrides.items())


def apply_override(
    scenario: Scenario,
    model: PowerModel,
    key: str,
    value: Any,
    phase: Phase,
    antenna_ratio: Optional[float] = None,
) -> Tuple[Scenario, PowerModel]:
    """Applies one sweep or series setting to the scenario and power model."""
    cfg, fading, interf, adc = scenario

    if key == "S":
        return resize_scenario(scenario, int(value)), model
    if key in ("M_rx", "M_tx"):
        M = int(value)
        cfg = replace(cfg, **{key: M})
        if antenna_ratio is not None:
            N_key = "N_rx" if key == "M_rx" else "N_tx"
            cfg = replace(cfg, **{N_key: max(1, int(round(antenna_ratio * M)))})
        return scenario._replace(cfg=cfg), model
    if key in ("N_rx", "N_tx"):
        return scenario._replace(cfg=replace(cfg, **{key: int(value)})), model
    if key == "b":
        return scenario._replace(adc=AdcConfig.uniform(parse_bits(value))), model
    if key == "K_dB":
        return scenario._replace(fading=fading.with_K(db_to_linear(float(value)))), model
    if key == "K":
        return scenario._replace(fading=fading.with_K(float(value))), model
    if key == "sigma2":
        return scenario._replace(interf=interf.with_strength(float(value), phase)), model
    if key == "SNR_dB":
        p = db_to_linear(float(value))
        return scenario._replace(cfg=replace(cfg, p_m=p, p_s=p)), model
    if key == "FOM_fJ":
        return scenario, model.with_fom(float(value) * 1e-15)

    raise ValueError(f"Unknown override {key!r}, expected one of {OVERRIDE_KEYS}.")


@dataclass(frozen=True)
class SweepPoint:
    index: int
    series: str
    value: float
    scenario: Scenario
    model: PowerModel
    seed: int


def _antenna_ratio(spec: SweepSpec, overrides: Dict[str, Any]) -> Optional[float]:
    if "N_rx" in overrides or "N_tx" in overrides:
        return None

    return spec.antenna_ratio


def apply_series(
    spec: SweepSpec, overrides: Dict[str, Any], skip: Tuple[str, ...] = ()
) -> Tuple[Scenario, PowerModel]:
    """Scenario and power model of one series, before the grid value is set."""
    scenario, model = spec.scenario, spec.model
    ratio = _antenna_ratio(spec, overrides)
    # S first, since it rebuilds the per-link profiles.
    for key in sorted(overrides, key=lambda k: k != "S"):
        if key in skip:
            continue
        scenario, model = apply_override(scenario, model, key, overrides[key], spec.phase, ratio)

    return scenario, model


def sweep_points(spec: SweepSpec) -> List[SweepPoint]:
    """Expands the spec into its grid points, series-major.

    Point ``i`` gets the seed ``SeedSequence([master_seed, i])``, so its
    Monte Carlo output does not depend on which other points are run.
    """
    points = []
    for overrides in spec.series:
        scenario, model = apply_series(spec, overrides)
        ratio = _antenna_ratio(spec, overrides)

        for value in spec.grid:
            point, point_model = apply_override(
                scenario, model, spec.variable, value, spec.phase, ratio
            )
            if spec.power_scaling is not None:
                E_m, E_s = spec.power_scaling
                point = point._replace(cfg=with_power_scaling(point.cfg, E_m, E_s, spec.phase))

            index = len(points)
            seed = int(np.random.SeedSequence([spec.mc.seed, index]).generate_state(1)[0])
            points.append(
                SweepPoint(index, series_label(overrides), value, point, point_model, seed)
            )

    return points


def _se_values(prefix: str, report: RateReport, S_max: int) -> ResultRow:
    row: ResultRow = {
        f"{prefix}_sum_se": report.sum_se_total,
        f"{prefix}_sum_se_mc": report.sum_se_mc,
        f"{prefix}_sum_se_sc": report.sum_se_sc,
    }
    per_link = {"mc": report.se_mc_per_link, "sc": report.se_sc_per_link}
    for side, values in per_link.items():
        for k in range(S_max):
            row[f"{prefix}_se_{side}_{k + 1}"] = float(values[k]) if k < values.size else math.nan

    if report.method == "montecarlo":
        row[f"{prefix}_sum_se_std"] = report.sum_se_stderr()
        row[f"{prefix}_sum_se_mc_std"] = report.sum_se_stderr("mc")
        row[f"{prefix}_sum_se_sc_std"] = report.sum_se_stderr("sc")
        for side in ("mc", "sc"):
            errors = report.se_stderr(side)
            for k in range(S_max):
                value = float(errors[k]) if k < errors.size else math.nan
                row[f"{prefix}_se_{side}_{k + 1}_std"] = value

    return row


def evaluate_point(spec: SweepSpec, point: SweepPoint) -> ResultRow:
    """Computes every requested output at one grid point."""
    scenario = point.scenario
    cfg, fading, interf, adc = scenario
    stats = scenario.stats
    phase = spec.phase
    row: ResultRow = {"series": point.series, spec.variable: point.value}

    if "analytic" in spec.outputs:
        row.update(_se_values("analytic", se_phase(scenario, phase, spec.form), spec.max_S))

    if "montecarlo" in spec.outputs:
        mc = replace(spec.mc, seed=point.seed)
        evaluate = mc_se_phase1 if phase == 1 else mc_se_phase2
        report = evaluate(cfg, fading, stats, interf, adc, mc=mc)
        row.update(_se_values("montecarlo", report, spec.max_S))

    if "hd" in spec.outputs:
        report = se_half_duplex(cfg, fading, stats, interf, adc, phase, form=spec.form)
        row.update(_se_values("hd", report, spec.max_S))

    if "limits" in spec.outputs:
        try:
            report = limit_K_infinity(cfg, fading, interf, adc, phase, form=spec.form)
            row["k_inf_sum_se"] = report.sum_se_total
            row["k_inf_sum_se_mc"] = report.sum_se_mc
            row["k_inf_sum_se_sc"] = report.sum_se_sc
        except HeterogeneousKError as e:
            logger.debug(f"K-factor limit skipped at point {point.index}: {e}")
            row.update({"k_inf_sum_se": math.nan, "k_inf_sum_se_mc": math.nan, "k_inf_sum_se_sc": math.nan})

        if spec.power_scaling is not None:
            E_m, E_s = spec.power_scaling
            report = power_scaling_limit(E_m, E_s, fading, adc, phase, cfg.tau_d, stats=stats)
            row["power_scaling_sum_se"] = report.sum_se_total
            row["power_scaling_sum_se_mc"] = report.sum_se_mc
            row["power_scaling_sum_se_sc"] = report.sum_se_sc

    if "ee" in spec.outputs:
        b = adc.b_m1 if phase == 1 else adc.b_m2
        report = ee(phase, cfg, fading, stats, interf, b, point.model, form=spec.form)
        row["ee_sum_se"] = report.sum_se
        row["power_mc"] = report.breakdown.get("mc", math.nan)
        row["power_total"] = report.power_total
        row["ee"] = report.ee

    row["scenario_hash"] = stable_hash(scenario_to_dict(scenario))
    row["seed"] = point.seed

    logger.debug(f"{spec.name} [{point.series}] {spec.variable}={point.value}: done")

    return row


def run_sweep(
    spec: SweepSpec, workers: Optional[int] = None, progress: bool = False
) -> pd.DataFrame:
    """Runs a sweep.

    Grid points are dispatched to a thread pool and merged in point order,
    so the table is identical for any number of workers.

    Parameters
    ----------
    spec : SweepSpec
        The sweep.
    workers : Optional[int]
        Worker threads; defaults to the ``N_WORKERS`` setting.
    progress : bool
        Show a tqdm progress bar over grid points.

    Returns
    -------
    pd.DataFrame
        One row per (series, grid point) with ``spec.columns()``. An empty
        ``outputs`` yields a header-only table.
    """
    columns = spec.columns()
    if not spec.outputs:
        logger.info(f"Sweep '{spec.name}' requests no outputs; writing the header only.")
        return pd.DataFrame(columns=columns)

    points = sweep_points(spec)
    logger.info(
        f"Running sweep '{spec.name}': phase {spec.phase}, {len(points)} points over "
        f"{spec.variable}, outputs {list(spec.outputs)}."
    )

    workers = N_WORKERS if workers is None else workers
    with ThreadPoolExecutor(max_workers=workers) as pool:
        rows = list(
            tqdm(
                pool.map(lambda p: evaluate_point(spec, p), points),
                total=len(points),
                desc=spec.name,
                disable=not progress,
            )
        )

    return pd.DataFrame(rows, columns=columns)


# Result files
# ============
def write_results(
    df: pd.DataFrame,
    spec: SweepSpec,
    path: Optional[Union[str, Path]] = None,
    fmt: str = "csv",
) -> Path:
    """Writes a sweep table with its metadata header.

    CSV files start with ``#``-prefixed lines holding the metadata as YAML;
    JSON files hold ``{"metadata": ..., "rows": [...]}``.

    Raises
    ------
    ValueError
        If ``fmt`` is not "csv" or "json".
    OSError
        If the file cannot be written.
    """
    if fmt not in FORMATS:
        raise ValueError(f"Output format must be one of {FORMATS}, got {fmt!r}.")

    path = Path(OUTPUT_DIR) / f"{spec.name}.{fmt}" if path is None else Path(path)
    metadata = spec.metadata()

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        if fmt == "csv":
            header = yaml.safe_dump(metadata, sort_keys=False)
            with open(path, "w") as f:
                for line in header.splitlines():
                    f.write(f"# {line}\n")
                df.to_csv(f, index=False)
        else:
            rows = [replace_inf(to_builtin(row)) for row in df.to_dict(orient="records")]
            with open(path, "w") as f:
                json.dump({"metadata": replace_inf(metadata), "rows": rows}, f, indent=2)
    except OSError as e:
        logger.error(f"Could not write results to {path}: {e}")
        raise

    logger.info(f"Wrote {len(df)} rows to {path}")

    return path


def read_metadata(path: Union[str, Path]) -> Dict[str, Any]:
    """Reads the metadata header of an emitted CSV or JSON result file."""
    path = Path(path)
    if path.suffix == ".json":
        with open(path, "r") as f:
            return json.load(f)["metadata"]

    lines = []
    with open(path, "r") as f:
        for line in f:
            if not line.startswith("#"):
                break
            lines.append(line[2:] if line.startswith("# ") else line[1:])

    return yaml.safe_load("".join(lines)) or {}


def read_results(path: Union[str, Path]) -> pd.DataFrame:
    path = Path(path)
    if path.suffix == ".json":
        with open(path, "r") as f:
            rows = json.load(f)["rows"]

        return pd.DataFrame(rows).replace({"inf": math.inf, "-inf": -math.inf}).infer_objects()

    return pd.read_csv(path, comment="#", dtype={"series": str, "scenario_hash": str})


def spec_from_dict(data: Dict[str, Any]) -> SweepSpec:
    """Builds a SweepSpec from a spec file mapping or an emitted metadata header.

    A ``bits`` list is shorthand for one series per resolution. Power
    scaling is given as ``{E_m, E_s}`` (linear) or ``{E_m_db, E_s_db}``.
    """
    phase = int(data.get("phase", 1))
    scenario = scenario_from_dict(data["scenario"]) if data.get("scenario") else None

    series = [dict(s) for s in data.get("series") or []]
    if data.get("bits"):
        series = [{**s, "b": b} for s in (series or [{}]) for b in data["bits"]]

    power_scaling = None
    if data.get("power_scaling"):
        ps = data["power_scaling"]
        E_m = ps["E_m"] if "E_m" in ps else db_to_linear(ps["E_m_db"])
        E_s = ps["E_s"] if "E_s" in ps else db_to_linear(ps["E_s_db"])
        power_scaling = (float(E_m), float(E_s))

    mc_d = data.get("mc") or {}
    mc = McSettings(
        n_realizations=int(mc_d.get("n_realizations", McSettings().n_realizations)),
        seed=int(mc_d.get("seed", McSettings().seed)),
        batch=int(mc_d.get("batch", McSettings().batch)),
        stderr=mc_d.get("stderr", McSettings().stderr),
    )

    model_d = dict(data.get("power_model") or {})
    if "FOM_fJ" in model_d:
        model_d["FOM_W"] = float(model_d.pop("FOM_fJ")) * 1e-15

    return SweepSpec(
        name=str(data.get("name", "sweep")),
        phase=phase,  # type: ignore
        variable=data["variable"],
        grid=tuple(float(v) for v in data["grid"]),
        scenario=scenario,  # type: ignore
        outputs=tuple(data.get("outputs", ("analytic",))),
        series=tuple(series),
        antenna_ratio=data.get("antenna_ratio", 0.5),
        power_scaling=power_scaling,
        model=PowerModel(**model_d),
        mc=mc,
        form=data.get("form", "exact"),
    )


def load_sweep_spec(path: Union[str, Path]) -> SweepSpec:
    """Loads a YAML sweep spec, or re-creates the spec of an emitted result file."""
    path = Path(path)
    if path.suffix in (".csv", ".json"):
        data = read_metadata(path)
    else:
        with open(path, "r") as f:
            data = yaml.safe_load(f) or {}

    logger.info(f"Loaded sweep spec: {path}")

    return spec_from_dict(data)


# Presets
# =======
INF = math.inf
E_10DB = db_to_linear(10.0)


def _scenario(phase: Phase, M: int, N: int, **system: Any) -> Scenario:
    scenario = default_scenario(phase, M=M, N=N)
    if system:
        scenario = scenario._replace(cfg=replace(scenario.cfg, **system))

    return scenario


def _fig6_scenario() -> Scenario:
    scenario = default_scenario(1, M=300, N=150)
    cfg, fading, interf, adc = scenario
    interf = replace(
        interf,
        sigma2_m=0.5,
        sigma2_s=np.full(cfg.S, 0.5),
        sigma2_c=np.full((cfg.S, cfg.S), 0.3),
    )

    return Scenario(cfg, fading.with_K(db_to_linear(10.0)), interf, AdcConfig.uniform(3))


def presets() -> List[SweepSpec]:
    """Sweeps reproducing every figure family of the analysis."""
    antennas = tuple(range(50, 501, 50))
    b_series = tuple({"b": b} for b in (1, 2, 3, INF))
    ee_grid = tuple(range(1, 16))
    K_series = tuple({"K": K} for K in (0.0, 1.0))

    specs = [
        SweepSpec("fig3a", 1, "M_rx", antennas, _scenario(1, 50, 25), ("analytic", "montecarlo"), b_series),
        SweepSpec("fig3b", 2, "M_tx", antennas, _scenario(2, 50, 25), ("analytic", "montecarlo"), b_series),
        SweepSpec(
            "fig3c",
            1,
            "M_rx",
            antennas,
            _scenario(1, 50, 25),
            ("analytic", "limits"),
            b_series,
            power_scaling=(E_10DB, E_10DB),
        ),
        SweepSpec(
            "fig3d",
            2,
            "M_tx",
            antennas,
            _scenario(2, 50, 25),
            ("analytic", "limits"),
            b_series,
            power_scaling=(E_10DB, E_10DB),
        ),
        SweepSpec("fig4", 1, "b", tuple(range(1, 11)) + (INF,), _scenario(1, 500, 250), ("analytic",), K_series),
        SweepSpec(
            "fig4_phase2", 2, "b", tuple(range(1, 11)) + (INF,), _scenario(2, 500, 250), ("analytic",), K_series
        ),
        SweepSpec(
            "fig5",
            1,
            "K_dB",
            tuple(range(-10, 31, 5)),
            _scenario(1, 700, 350),
            ("analytic", "limits"),
            tuple({"b": b} for b in (1, 3, INF)),
        ),
        SweepSpec(
            "fig6a",
            1,
            "M_rx",
            tuple(range(50, 601, 50)),
            _fig6_scenario(),
            ("analytic", "hd"),
            tuple({"S": S} for S in (2, 4, 6)),
        ),
        SweepSpec(
            "fig6b",
            1,
            "sigma2",
            tuple(round(0.1 * i, 1) for i in range(11)),
            _fig6_scenario(),
            ("analytic", "hd"),
            tuple({"M_rx": M} for M in (150, 300)),
        ),
    ]

    ee_series_1 = tuple(
        {"K_dB": K, "M_rx": M, "N_rx": N} for K in (0, 10) for M, N in ((300, 200), (500, 250))
    )
    ee_series_2 = tuple({"M_tx": M, "N_tx": N} for M, N in ((500, 250), (1000, 1000)))
    fom_series = tuple({"FOM_fJ": fom} for fom in (5, 65, 494))
    fig9_scenario = _scenario(1, 300, 200)
    fig9_scenario = fig9_scenario._replace(fading=fig9_scenario.fading.with_K(db_to_linear(20.0)))

    # "a" is plotted as EE vs b and "b" as the EE/SE frontier; both need the same table.
    outputs = ("analytic", "ee")
    for suffix in ("a", "b"):
        specs += [
            SweepSpec(f"fig7{suffix}", 1, "b", ee_grid, _scenario(1, 300, 200), outputs, ee_series_1),
            SweepSpec(f"fig8{suffix}", 2, "b", ee_grid, _scenario(2, 500, 250), outputs, ee_series_2),
            SweepSpec(f"fig9{suffix}", 1, "b", ee_grid, fig9_scenario, outputs, fom_series),
        ]

    return sorted(specs, key=lambda s: s.name)


def get_preset(name: str) -> SweepSpec:
    """Returns the preset called ``name``.

    Raises
    ------
    ValueError
        If no preset has that name.
    """
    for spec in presets():
        if spec.name == name:
            return spec

    names = [s.name for s in presets()]
    raise ValueError(f"Unknown preset {name!r}, expected one of {names}.")


def describe(spec: SweepSpec) -> Dict[str, Any]:
    """One-line summary of a spec for listings."""
    cfg = spec.scenario.cfg
    return {
        "name": spec.name,
        "phase": spec.phase,
        "variable": spec.variable,
        "grid": f"{spec.grid[0]:g}..{spec.grid[-1]:g} ({len(spec.grid)})",
        "series": "; ".join(series_label(s) for s in spec.series),
        "outputs": ",".join(spec.outputs),
        "M": cfg.M_rx if spec.phase == 1 else cfg.M_tx,
        "N": cfg.N_rx if spec.phase == 1 else cfg.N_tx,
        "K_dB": round(float(linear_to_db(spec.scenario.fading.K_m[0])), 2),
        "power_scaling": spec.power_scaling is not None,
    }
