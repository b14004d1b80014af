"""Experiment configuration, figure presets, sweeps and file output.

An experiment couples a molecule, a field configuration, a temperature and
the numerical propagation settings.  ``run_single`` produces the thermally
averaged observable series and its extrema; ``run_sweep`` repeats that over
a grid of one scalar parameter with per-point failure isolation and a
deterministic reduction order, so identical configs give byte-identical
output files regardless of the worker count.
"""

import dataclasses
import json
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from . import field as field_mod
from . import molecule as molecule_mod
from .basis import BasisSpec, build_cos_operators
from .field import FieldConfig, PulseSpec
from .molecule import MoleculeParams, build_ensemble, rotational_period_ps, to_internal
from .observables import ExtremaSummary, ObservableSeries, extract_extrema
from .propagator import (CYCLE_AVERAGED, PropagationConfig, propagate_block,
                         propagate_block_converged)

SWEEP_PARAMETERS = ("tau", "gamma_sq", "delta_cep_1", "delta_cep_2",
                    "t_delay", "I_tot", "temperature")


class ExperimentError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class SweepSpec:
    """One scalar parameter and the grid of values to scan."""

    parameter: str
    values: tuple

    def __post_init__(self):
        if self.parameter not in SWEEP_PARAMETERS:
            raise ExperimentError(
                f"unknown sweep parameter {self.parameter!r}; "
                f"recognized: {SWEEP_PARAMETERS}")
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ExperimentError("sweep grid is empty")
        if any(b < a for a, b in zip(values, values[1:])):
            raise ExperimentError("sweep grid must be sorted ascending")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class OutputSpec:
    directory: str = "."
    name: str = "run"
    save_series: bool = False


@dataclass(frozen=True)
class ExperimentConfig:
    """Complete description of a run or a sweep."""

    molecule: MoleculeParams
    field: FieldConfig
    temperatures: tuple = (0.0,)
    prop: PropagationConfig = PropagationConfig()
    ensemble_epsilon: float = 1e-6
    post_window_ps: float = None  # None -> two rotational periods
    pre_window_ps: float = 0.2
    sweep: SweepSpec = None
    output: OutputSpec = None

    def __post_init__(self):
        temps = self.temperatures
        if isinstance(temps, (int, float)):
            temps = (float(temps),)
        temps = tuple(float(t) for t in temps)
        if not temps or any(t < 0 for t in temps):
            raise ExperimentError("temperatures must be non-negative")
        object.__setattr__(self, "temperatures", temps)

    def resolved_post_window_ps(self) -> float:
        if self.post_window_ps is not None:
            return self.post_window_ps
        return 2.0 * rotational_period_ps(self.molecule)

    def resolved_prop(self) -> PropagationConfig:
        """Propagation window derived from the field support and post window."""
        t_on, t_off = self.field.support_ps()
        return replace(self.prop,
                       t_start_ps=t_on - self.pre_window_ps,
                       t_end_ps=t_off + self.resolved_post_window_ps())


@dataclass
class RunResult:
    series: ObservableSeries
    extrema: ExtremaSummary
    temperature_k: float
    ensemble_size: int
    norm_error: float
    final_dt_fs: float
    final_j_max: int


def run_single(cfg: ExperimentConfig) -> RunResult:
    """Propagate every ensemble member, thermally average, extract extrema.

    Members sharing |M| are propagated together as one coefficient block.
    Writes ``<name>_series.csv`` and ``<name>_meta.json`` when an output
    spec is present.
    """
    if cfg.sweep is not None:
        raise ExperimentError("config has a sweep section; use run_sweep")
    if len(cfg.temperatures) != 1:
        raise ExperimentError("run_single needs exactly one temperature")
    temperature = cfg.temperatures[0]

    internal = to_internal(cfg.molecule)
    ensemble = build_ensemble(cfg.molecule, temperature, cfg.ensemble_epsilon)
    prop = cfg.resolved_prop().resolve(cfg.field)

    orientation = None
    alignment = None
    times = None
    norm_error = 0.0
    final_dt_fs = prop.dt_fs
    final_j_max = prop.j_max
    converge = prop.convergence_tol is not None

    for m, j_weights in ensemble.weights_by_abs_m().items():
        basis = BasisSpec(j_max=prop.j_max, m=m, pad=prop.pad)
        block0 = np.zeros((basis.dim, len(j_weights)), dtype=complex)
        weights = np.empty(len(j_weights))
        for col, (j, w) in enumerate(j_weights):
            block0[j - m, col] = 1.0
            weights[col] = w
        if converge:
            traj, used, _ = propagate_block_converged(
                block0, basis, internal, cfg.field, prop)
            final_dt_fs = min(final_dt_fs, used.dt_fs)
            final_j_max = max(final_j_max, traj.basis.j_max)
        else:
            traj = propagate_block(block0, basis, internal, cfg.field, prop)
        orient_m, align_m = traj.observable_series(
            build_cos_operators(traj.basis))
        norm_error = max(norm_error, float(np.abs(traj.norms - 1.0).max()))
        if orientation is None:
            times = traj.times_ps
            orientation = np.zeros(len(times))
            alignment = np.zeros(len(times))
        orientation += orient_m @ weights
        alignment += align_m @ weights

    envelopes = np.vstack([
        np.asarray(field_mod.envelope(p, times), dtype=float)
        for p in cfg.field.resolved_pulses()])
    series = ObservableSeries(times_ps=times, orientation=orientation,
                              alignment=alignment, envelopes=envelopes,
                              pulse_window=cfg.field.support_ps())
    extrema = extract_extrema(series, cfg.resolved_post_window_ps())
    result = RunResult(series=series, extrema=extrema,
                       temperature_k=temperature,
                       ensemble_size=len(ensemble.entries),
                       norm_error=norm_error,
                       final_dt_fs=final_dt_fs, final_j_max=final_j_max)
    if cfg.output is not None:
        _write_single(cfg, result)
    return result


@dataclass
class SweepRow:
    """One grid point of a sweep: parameter value, extrema and metadata."""

    param: float
    extrema: ExtremaSummary = None
    final_dt_fs: float = float("nan")
    final_j_max: int = -1
    error: str = ""

    CSV_COLUMNS = (("param",) + ExtremaSummary.ROW_FIELDS
                   + ("final_dt_fs", "final_j_max", "error"))

    def csv_values(self):
        if self.extrema is None:
            body = (float("nan"),) * len(ExtremaSummary.ROW_FIELDS)
        else:
            body = self.extrema.as_row()
        return (self.param,) + body + (self.final_dt_fs, self.final_j_max,
                                       self.error)


def apply_sweep_value(cfg: ExperimentConfig, parameter: str,
                      value: float) -> ExperimentConfig:
    """A copy of ``cfg`` with one recognized scalar parameter replaced."""
    pulses = cfg.field.pulses
    if parameter == "tau":
        pulses = tuple(replace(p, tau_ps=value) for p in pulses)
        return replace(cfg, field=replace(cfg.field, pulses=pulses))
    if parameter == "gamma_sq":
        if not 0.0 <= value <= 1.0:
            raise ExperimentError("gamma_sq must lie in [0, 1]")
        pulses = tuple(replace(p, gamma=math.sqrt(value)) for p in pulses)
        return replace(cfg, field=replace(cfg.field, pulses=pulses))
    if parameter == "I_tot":
        pulses = tuple(replace(p, i_tot_w_cm2=value) for p in pulses)
        return replace(cfg, field=replace(cfg.field, pulses=pulses))
    if parameter in ("delta_cep_1", "delta_cep_2"):
        index = 0 if parameter.endswith("1") else 1
        if index >= len(pulses):
            raise ExperimentError(f"{parameter} needs pulse {index + 1}")
        pulses = tuple(replace(p, delta_cep=value) if i == index else p
                       for i, p in enumerate(pulses))
        return replace(cfg, field=replace(cfg.field, pulses=pulses))
    if parameter == "t_delay":
        if len(pulses) < 2:
            raise ExperimentError("t_delay sweep needs two pulses")
        return replace(cfg, field=replace(cfg.field, t_delay_ps=value))
    if parameter == "temperature":
        return replace(cfg, temperatures=(value,))
    raise ExperimentError(f"unknown sweep parameter {parameter!r}")


def _point_config(cfg: ExperimentConfig, value: float) -> ExperimentConfig:
    point = apply_sweep_value(cfg, cfg.sweep.parameter, value)
    output = None
    if cfg.output is not None and cfg.output.save_series:
        output = replace(cfg.output,
                         name=f"{cfg.output.name}_{cfg.sweep.parameter}_{value:g}")
    return replace(point, sweep=None, output=output)


def _run_sweep_point(args):
    cfg, value = args
    try:
        result = run_single(_point_config(cfg, value))
        return SweepRow(param=value, extrema=result.extrema,
                        final_dt_fs=result.final_dt_fs,
                        final_j_max=result.final_j_max)
    except Exception as exc:  # noqa: BLE001 - per-row isolation by design
        return SweepRow(param=value, error=f"{type(exc).__name__}: {exc}")


def run_sweep(cfg: ExperimentConfig, workers: int = 0):
    """Run every grid point (concurrently), reduce in grid order.

    A failing point is recorded in its row without aborting the sweep.
    Returns the list of `SweepRow`.
    """
    if cfg.sweep is None:
        raise ExperimentError("config has no sweep section; use run_single")
    tasks = [(cfg, v) for v in cfg.sweep.values]
    if workers == 0:
        workers = min(os.cpu_count() or 1, len(tasks))
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_sweep_point, tasks))
    else:
        rows = [_run_sweep_point(t) for t in tasks]
    if cfg.output is not None:
        _write_sweep(cfg, rows)
    return rows


# ---------------------------------------------------------------------------
# output files

def config_as_dict(cfg: ExperimentConfig) -> dict:
    d = dataclasses.asdict(cfg)
    # output paths are environment, not physics: identical physical configs
    # must serialize identically for the determinism guarantee
    d.pop("output", None)
    d["resolved"] = {
        "rotational_period_ps": rotational_period_ps(cfg.molecule),
        "post_window_ps": cfg.resolved_post_window_ps(),
        "field_support_ps": list(cfg.field.support_ps()),
    }
    d["version"] = __version__
    return d


def _header_lines(cfg: ExperimentConfig) -> list:
    return [f"rotalign {__version__}",
            "config: " + json.dumps(config_as_dict(cfg), sort_keys=True)]


def _write_single(cfg: ExperimentConfig, result: RunResult):
    out = cfg.output
    os.makedirs(out.directory, exist_ok=True)
    base = os.path.join(out.directory, out.name)
    result.series.to_csv(base + "_series.csv", _header_lines(cfg))
    meta = {
        "config": config_as_dict(cfg),
        "temperature_k": result.temperature_k,
        "ensemble_size": result.ensemble_size,
        "norm_error": result.norm_error,
        "final_dt_fs": result.final_dt_fs,
        "final_j_max": result.final_j_max,
        "extrema": dataclasses.asdict(result.extrema),
    }
    with open(base + "_meta.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)


def _write_sweep(cfg: ExperimentConfig, rows):
    out = cfg.output
    os.makedirs(out.directory, exist_ok=True)
    base = os.path.join(out.directory, out.name)
    with open(base + "_sweep.csv", "w", encoding="utf-8") as fh:
        for line in _header_lines(cfg):
            fh.write(f"# {line}\n")
        fh.write(",".join(SweepRow.CSV_COLUMNS) + "\n")
        for row in rows:
            values = row.csv_values()
            fh.write(",".join(
                v if isinstance(v, str) else repr(float(v))
                for v in values[:-1]) + f",{values[-1]}\n")
    meta = {
        "config": config_as_dict(cfg),
        "n_points": len(rows),
        "n_failed": sum(1 for r in rows if r.error),
    }
    with open(base + "_meta.json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)


def read_sweep_csv(path):
    """Sweep CSV back as a dict of column name -> float array ('error' -> list)."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.rstrip("\n") for ln in fh if not ln.startswith("#")]
    header = lines[0].split(",")
    columns = {name: [] for name in header}
    for ln in lines[1:]:
        parts = ln.split(",")
        for name, part in zip(header, parts):
            columns[name].append(part)
    out = {}
    for name, vals in columns.items():
        if name == "error":
            out[name] = vals
        else:
            out[name] = np.array([float(v) if v else math.nan for v in vals])
    return out


# ---------------------------------------------------------------------------
# figure presets

_GAMMA_OPT = math.sqrt(2.0 / 3.0)


def _base_pulse(**kw) -> PulseSpec:
    defaults = dict(shape=field_mod.TRAPEZOID, tau_ps=0.12, i_tot_w_cm2=7e13,
                    gamma=_GAMMA_OPT, delta_cep=0.0, omega_cm1=12500.0)
    defaults.update(kw)
    return PulseSpec(**defaults)


def _base_config(**kw) -> ExperimentConfig:
    defaults = dict(molecule=molecule_mod.HBR,
                    field=FieldConfig.single(_base_pulse()),
                    temperatures=(1.0, 10.0, 20.0, 30.0),
                    prop=PropagationConfig(mode=CYCLE_AVERAGED, j_max=40))
    defaults.update(kw)
    return ExperimentConfig(**defaults)


def _grid(start, stop, count):
    return tuple(np.linspace(start, stop, count))


def _preset_table() -> dict:
    two_pi = 2.0 * math.pi
    both_short = (_base_pulse(tau_ps=0.1), _base_pulse(tau_ps=0.1))
    both_long = (_base_pulse(tau_ps=1.18), _base_pulse(tau_ps=1.18))
    hybrid_long = (_base_pulse(tau_ps=1.18, gamma=1.0),
                   _base_pulse(tau_ps=1.18))
    hybrid_short = (_base_pulse(tau_ps=0.1, gamma=1.0),
                    _base_pulse(tau_ps=0.1))
    return {
        # single two-color pulse: ratio, duration, intensity, CEP scans
        "fig1": _base_config(
            sweep=SweepSpec("gamma_sq", _grid(0.0, 1.0, 51))),
        "fig2": _base_config(
            sweep=SweepSpec("tau", _grid(0.02, 8.0, 200))),
        "fig3": _base_config(
            sweep=SweepSpec("tau", _grid(0.02, 8.0, 200))),
        "fig4": _base_config(
            temperatures=(30.0,),
            sweep=SweepSpec("I_tot", _grid(1e13, 1e14, 10))),
        "fig4_gaussian": _base_config(
            field=FieldConfig.single(_base_pulse(shape=field_mod.GAUSSIAN)),
            temperatures=(30.0,),
            sweep=SweepSpec("I_tot", _grid(1e13, 1e14, 10))),
        # time traces
        "fig5a": _base_config(),
        "fig5b": _base_config(
            field=FieldConfig.single(_base_pulse(tau_ps=4.5))),
        "fig6a": _base_config(
            field=FieldConfig.single(_base_pulse(tau_ps=1.18))),
        "fig6b": _base_config(
            field=FieldConfig.single(_base_pulse(tau_ps=5.28))),
        "fig7": _base_config(
            field=FieldConfig.single(_base_pulse(tau_ps=1.18)),
            temperatures=(30.0,),
            sweep=SweepSpec("delta_cep_1", _grid(0.0, two_pi, 101))),
        # monochromatic prepulse followed by a two-color pulse
        "fig8a": _base_config(
            field=FieldConfig(pulses=hybrid_long),
            temperatures=(30.0,),
            sweep=SweepSpec("t_delay", _grid(0.0, 4.0, 101))),
        "fig8b": _base_config(
            field=FieldConfig(pulses=hybrid_short),
            temperatures=(30.0,),
            sweep=SweepSpec("t_delay", _grid(0.0, 4.0, 101))),
        # two two-color pulses
        "fig9a": _base_config(
            field=FieldConfig(pulses=both_long),
            temperatures=(30.0,),
            sweep=SweepSpec("t_delay", _grid(0.0, 4.0, 101))),
        "fig9b": _base_config(
            field=FieldConfig(pulses=both_short),
            temperatures=(30.0,),
            sweep=SweepSpec("t_delay", _grid(0.0, 4.0, 101))),
        "fig10": _base_config(
            field=FieldConfig(pulses=both_short, t_delay_ps=2.0),
            temperatures=(30.0,),
            sweep=SweepSpec("delta_cep_2", _grid(0.0, two_pi, 101))),
        "fig11": _base_config(
            field=FieldConfig(pulses=both_short, t_delay_ps=1.5),
            temperatures=(30.0,),
            sweep=SweepSpec("delta_cep_2", _grid(0.0, two_pi, 101))),
    }


_PANEL_ALIASES = {"fig5": "fig5a", "fig6": "fig6a", "fig8": "fig8a",
                  "fig9": "fig9a"}


def preset_names():
    return sorted(_preset_table())


def preset(name: str) -> ExperimentConfig:
    """Bundled experiment configuration by name (fig1 .. fig11)."""
    table = _preset_table()
    key = _PANEL_ALIASES.get(name, name)
    try:
        return table[key]
    except KeyError:
        raise ExperimentError(
            f"unknown preset {name!r}; available: {preset_names()}") from None


def thin_sweep(cfg: ExperimentConfig, max_points: int) -> ExperimentConfig:
    """Reduce a sweep grid to at most ``max_points`` (keeps both endpoints)."""
    if cfg.sweep is None or len(cfg.sweep.values) <= max_points:
        return cfg
    idx = np.unique(np.linspace(0, len(cfg.sweep.values) - 1,
                                max_points).round().astype(int))
    values = tuple(cfg.sweep.values[i] for i in idx)
    return replace(cfg, sweep=SweepSpec(cfg.sweep.parameter, values))


def run_preset(name: str, out_dir: str, fast: bool = False, workers: int = 0):
    """Execute a preset for each of its temperatures, writing output files.

    Returns the list of written (temperature, base name) pairs.
    """
    cfg = preset(name)
    if fast:
        cfg = thin_sweep(cfg, 15)
    written = []
    for temperature in cfg.temperatures:
        suffix = f"_T{temperature:g}K" if len(cfg.temperatures) > 1 else ""
        out = OutputSpec(directory=out_dir, name=f"{name}{suffix}",
                         save_series=cfg.sweep is None)
        point = replace(cfg, temperatures=(temperature,), output=out)
        if cfg.sweep is None:
            run_single(point)
        else:
            run_sweep(point, workers=workers)
        written.append((temperature, out.name))
    return written
