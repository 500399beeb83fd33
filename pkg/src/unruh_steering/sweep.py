"""Parameter sweeps over (scenario, p, r, phi) grids with flat-file output.

Grid points are independent work items; results are always collected and
sorted on a deterministic key before anything is written, so output files
are byte-identical regardless of the worker count.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from .measures import Convention, decoherence_triple, lqu, steering_report
from .model import ModelParams, R_MAX, Scenario, accelerate_closed, initial_state

QUANTITIES = (
    "d_total",
    "d_qubit",
    "d_qutrit",
    "lqu",
    "s_ab_oracle",
    "s_ba_oracle",
    "i_ab_closed",
    "i_ba_closed",
    "steer_ab",
    "steer_ba",
    "steer_diff",
)

_DECOHERENCE_QUANTITIES = frozenset(("d_total", "d_qubit", "d_qutrit"))
_STEERING_QUANTITIES = frozenset(
    ("s_ab_oracle", "s_ba_oracle", "i_ab_closed", "i_ba_closed", "steer_ab", "steer_ba", "steer_diff")
)

CSV_HEADER = "scenario,p,r_q,r_t,phi,quantity,value"

DEFAULT_R_STEPS = 101


class ConfigError(ValueError):
    """Invalid sweep configuration; maps to CLI exit code 1."""


@dataclass(frozen=True)
class SweepRecord:
    """One evaluated (grid point, quantity) pair."""

    scenario: str
    p: float
    r_q: float
    r_t: float
    phi: float
    quantity: str
    value: float

    @property
    def sort_key(self):
        return (self.scenario, self.p, self.r_q, self.r_t, self.phi, self.quantity)


@dataclass(frozen=True)
class SweepConfig:
    """A sweep: scenario, grids, quantities and output settings.

    ``r_values`` feed the accelerated subsystem(s) of the scenario; the
    inertial scenario ignores them (records carry r_q = r_t = 0).
    """

    scenario: Scenario
    p_values: tuple[float, ...]
    r_values: tuple[float, ...] = (0.0,)
    phi: float = 0.0
    quantities: tuple[str, ...] = QUANTITIES
    convention: Convention = Convention.AS_PRINTED
    workers: int = 1

    def validate(self) -> None:
        if not self.p_values:
            raise ConfigError("p grid is empty")
        if not self.r_values:
            raise ConfigError("r grid is empty")
        if not self.quantities:
            raise ConfigError("no quantities requested")
        for p in self.p_values:
            if not 0.0 <= p <= 0.5:
                raise ConfigError(f"p={p} outside [0, 0.5]")
        for r in self.r_values:
            if not 0.0 <= r <= R_MAX:
                raise ConfigError(f"r={r} outside [0, pi/4]")
        unknown = set(self.quantities) - set(QUANTITIES)
        if unknown:
            raise ConfigError(f"unknown quantities {sorted(unknown)}; available: {', '.join(QUANTITIES)}")
        if self.workers < 1:
            raise ConfigError(f"workers must be positive, got {self.workers}")


def _effective_r(scenario: Scenario, r: float) -> tuple[float, float]:
    if scenario is Scenario.NONE:
        return 0.0, 0.0
    if scenario is Scenario.QUBIT:
        return r, 0.0
    if scenario is Scenario.QUTRIT:
        return 0.0, r
    return r, r


def _evaluate_point(task) -> list[SweepRecord]:
    scenario_value, p, r, phi, quantities, convention_value = task
    scenario = Scenario(scenario_value)
    convention = Convention(convention_value)
    r_q, r_t = _effective_r(scenario, r)
    if scenario is Scenario.NONE:
        state = initial_state(p)
    else:
        state = accelerate_closed(ModelParams(p=p, r_q=r_q, r_t=r_t, phi=phi, scenario=scenario))

    values: dict[str, float] = {}
    requested = set(quantities)
    if requested & _DECOHERENCE_QUANTITIES:
        triple = decoherence_triple(state)
        values.update(d_total=triple.d_total, d_qubit=triple.d_qubit, d_qutrit=triple.d_qutrit)
    if "lqu" in requested:
        values["lqu"] = lqu(state).value
    if requested & _STEERING_QUANTITIES:
        report = steering_report(state, convention)
        values.update(
            s_ab_oracle=report.s_ab_oracle,
            s_ba_oracle=report.s_ba_oracle,
            i_ab_closed=report.i_ab_closed,
            i_ba_closed=report.i_ba_closed,
            steer_ab=report.steer_ab,
            steer_ba=report.steer_ba,
            steer_diff=abs(report.steer_ab - report.steer_ba),
        )
    return [
        SweepRecord(scenario.value, p, r_q, r_t, phi, quantity, values[quantity])
        for quantity in quantities
    ]


def run_sweep(config: SweepConfig) -> list[SweepRecord]:
    """Evaluate a sweep and return records in deterministic order."""
    config.validate()
    tasks = [
        (config.scenario.value, p, r, config.phi, config.quantities, config.convention.value)
        for p in config.p_values
        for r in config.r_values
    ]
    if config.workers == 1 or len(tasks) <= 1:
        batches = map(_evaluate_point, tasks)
    else:
        chunk = max(1, len(tasks) // (config.workers * 4))
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            batches = list(pool.map(_evaluate_point, tasks, chunksize=chunk))
    records = [record for batch in batches for record in batch]
    for record in records:
        if not math.isfinite(record.value):
            raise ValueError(f"non-finite value for {record}")
    records.sort(key=lambda record: record.sort_key)
    return records


def format_value(value: float) -> str:
    """Fixed 12-significant-digit positional rendering, e.g. 0.500000000000."""
    value = float(value)
    if value == 0.0:
        return "0.000000000000"
    decimals = max(0, 11 - math.floor(math.log10(abs(value))))
    return f"{value:.{decimals}f}"


def write_output(records, path, fmt: str = "csv") -> None:
    """Persist records as CSV (pinned header, 12 significant digits) or JSON."""
    if fmt not in ("csv", "json"):
        raise ConfigError(f"unknown output format {fmt!r}")
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if fmt == "csv":
                fh.write(CSV_HEADER + "\n")
                for rec in records:
                    fh.write(
                        f"{rec.scenario},{format_value(rec.p)},{format_value(rec.r_q)},"
                        f"{format_value(rec.r_t)},{format_value(rec.phi)},{rec.quantity},"
                        f"{format_value(rec.value)}\n"
                    )
            else:
                json.dump([asdict(rec) for rec in records], fh, indent=2)
                fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def _r_grid(steps: int = DEFAULT_R_STEPS) -> tuple[float, ...]:
    return tuple(float(r) for r in np.linspace(0.0, R_MAX, steps))


def _preset_table() -> dict[str, SweepConfig]:
    r_grid = _r_grid()
    p_grid = tuple(float(p) for p in np.linspace(0.0, 0.5, 101))
    decoherence = ("d_total", "d_qubit", "d_qutrit")
    steer = ("steer_ab", "steer_ba", "steer_diff")
    fig2_p = (0.0, 0.1, 0.2, 0.3, 0.4, 0.5)
    fig45_p = {"a": 0.0, "b": 0.01, "c": 0.05}

    presets: dict[str, SweepConfig] = {
        "fig1a": SweepConfig(Scenario.NONE, p_values=p_grid, r_values=(0.0,), quantities=decoherence),
        "fig1b": SweepConfig(Scenario.QUBIT, p_values=(0.1,), r_values=r_grid, quantities=decoherence),
        "fig1c": SweepConfig(Scenario.QUTRIT, p_values=(0.1,), r_values=r_grid, quantities=decoherence),
        "fig1d": SweepConfig(Scenario.BOTH, p_values=(0.1,), r_values=r_grid, quantities=decoherence),
        "fig2a": SweepConfig(Scenario.QUBIT, p_values=fig2_p, r_values=r_grid, quantities=("lqu",)),
        "fig2b": SweepConfig(Scenario.QUTRIT, p_values=fig2_p, r_values=r_grid, quantities=("lqu",)),
        "fig2c": SweepConfig(Scenario.BOTH, p_values=fig2_p, r_values=r_grid, quantities=("lqu",)),
    }
    for suffix, scenario in (("a", Scenario.QUBIT), ("c", Scenario.QUTRIT), ("e", Scenario.BOTH)):
        presets[f"fig3{suffix}"] = SweepConfig(
            scenario, p_values=(0.1,), r_values=r_grid, quantities=("i_ab_closed",)
        )
    for suffix, scenario in (("b", Scenario.QUBIT), ("d", Scenario.QUTRIT), ("f", Scenario.BOTH)):
        presets[f"fig3{suffix}"] = SweepConfig(
            scenario, p_values=(0.1,), r_values=r_grid, quantities=("i_ba_closed",)
        )
    for suffix, p in fig45_p.items():
        presets[f"fig4{suffix}"] = SweepConfig(
            Scenario.QUBIT, p_values=(p,), r_values=r_grid, quantities=steer
        )
        presets[f"fig5{suffix}"] = SweepConfig(
            Scenario.QUTRIT, p_values=(p,), r_values=r_grid, quantities=steer
        )
    return presets


PRESET_NAMES = tuple(sorted(_preset_table()))


def preset_config(name: str, workers: int = 1) -> SweepConfig:
    """Look up a figure preset by name (fig1a .. fig5c)."""
    table = _preset_table()
    if name not in table:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(sorted(table))}")
    base = table[name]
    if workers == base.workers:
        return base
    return SweepConfig(
        scenario=base.scenario,
        p_values=base.p_values,
        r_values=base.r_values,
        phi=base.phi,
        quantities=base.quantities,
        convention=base.convention,
        workers=workers,
    )
