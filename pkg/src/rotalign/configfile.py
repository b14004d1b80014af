"""Experiment config files: INI sections with unit-tagged values.

Every dimensioned quantity must carry its unit suffix (``tau = 0.12 ps``,
``B = 8.3482 cm^-1``), and unknown sections or keys are rejected outright;
silent unit mistakes are the dominant failure mode in this kind of
calculation, so nothing is inferred.

Example
-------
::

    [molecule]
    preset = HBr

    [ensemble]
    temperature = 30 K

    [pulse1]
    shape = trapezoid
    tau = 0.12 ps
    intensity = 7e13 W/cm^2
    gamma_sq = 0.6667
    delta_cep = 0 rad

    [propagation]
    mode = cycle-averaged

    [sweep]
    parameter = gamma_sq
    start = 0
    stop = 1
    count = 51

    [output]
    directory = out
    name = ratio_scan
"""

import configparser
import dataclasses
import math

import numpy as np

from .field import GAUSSIAN, TRAPEZOID, FieldConfig, PulseSpec
from .harness import ExperimentConfig, ExperimentError, OutputSpec, SweepSpec
from .molecule import BETA_UNIT_TAGS, MoleculeParams, get_preset
from .propagator import CYCLE_AVERAGED, FULL_FIELD, PropagationConfig


class ConfigFileError(ExperimentError):
    """Malformed experiment config file."""


def _quantity(text: str, units: tuple, key: str) -> float:
    """Parse '<number> <unit>' enforcing one of the accepted unit spellings."""
    parts = text.split()
    if len(parts) != 2:
        raise ConfigFileError(
            f"{key} = {text!r}: expected '<value> <unit>' with unit in {units}")
    value, unit = parts
    if unit not in units:
        raise ConfigFileError(
            f"{key}: unit {unit!r} not recognized (accepted: {units})")
    try:
        return float(value)
    except ValueError:
        raise ConfigFileError(f"{key}: {value!r} is not a number") from None


def _number(text: str, key: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise ConfigFileError(f"{key}: {text!r} is not a number") from None


class _Section:
    """Tracks which keys were consumed so leftovers can be rejected."""

    def __init__(self, name, mapping):
        self.name = name
        self.mapping = dict(mapping)
        self.seen = set()

    def get(self, key, default=None):
        self.seen.add(key)
        return self.mapping.get(key, default)

    def quantity(self, key, units, default=None):
        raw = self.get(key)
        if raw is None:
            return default
        return _quantity(raw, units, f"[{self.name}] {key}")

    def number(self, key, default=None):
        raw = self.get(key)
        if raw is None:
            return default
        return _number(raw, f"[{self.name}] {key}")

    def boolean(self, key, default=False):
        raw = self.get(key)
        if raw is None:
            return default
        if raw.lower() in ("true", "yes", "1", "on"):
            return True
        if raw.lower() in ("false", "no", "0", "off"):
            return False
        raise ConfigFileError(f"[{self.name}] {key}: {raw!r} is not a boolean")

    def check_consumed(self):
        unknown = set(self.mapping) - self.seen
        if unknown:
            raise ConfigFileError(
                f"unknown keys in [{self.name}]: {sorted(unknown)}")


def _parse_molecule(sec: _Section) -> MoleculeParams:
    preset = sec.get("preset")
    if preset is not None:
        base = get_preset(preset)
        tag = sec.get("beta_unit")
        sec.check_consumed()
        if tag is not None:
            if tag not in BETA_UNIT_TAGS:
                raise ConfigFileError(f"[molecule] beta_unit: {tag!r} not in "
                                      f"{BETA_UNIT_TAGS}")
            base = dataclasses.replace(base, beta_unit=tag)
        return base
    params = MoleculeParams(
        name=sec.get("name", "custom"),
        b_cm1=sec.quantity("B", ("cm^-1",)),
        mu0_debye=sec.quantity("mu0", ("D", "debye")),
        alpha_par_a3=sec.quantity("alpha_par", ("A^3", "angstrom^3")),
        alpha_perp_a3=sec.quantity("alpha_perp", ("A^3", "angstrom^3")),
        beta_par=sec.number("beta_par"),
        beta_perp=sec.number("beta_perp"),
        beta_unit=sec.get("beta_unit", "as-volume-A5"),
        gj_even=sec.number("gj_even", 1.0),
        gj_odd=sec.number("gj_odd", 1.0),
    )
    sec.check_consumed()
    return params


def _parse_pulse(sec: _Section) -> PulseSpec:
    shape = sec.get("shape", TRAPEZOID)
    if shape not in (TRAPEZOID, GAUSSIAN):
        raise ConfigFileError(f"[{sec.name}] shape: {shape!r} unknown")
    gamma = sec.number("gamma")
    gamma_sq = sec.number("gamma_sq")
    if gamma is not None and gamma_sq is not None:
        raise ConfigFileError(f"[{sec.name}]: give gamma or gamma_sq, not both")
    if gamma is None:
        gamma = math.sqrt(gamma_sq) if gamma_sq is not None else math.sqrt(2 / 3)
    pulse = PulseSpec(
        shape=shape,
        tau_ps=sec.quantity("tau", ("ps",), 0.12),
        i_tot_w_cm2=sec.quantity("intensity", ("W/cm^2",), 7e13),
        gamma=gamma,
        delta_cep=sec.quantity("delta_cep", ("rad",), 0.0),
        t_center_ps=sec.quantity("t_center", ("ps",), 0.0),
        omega_cm1=sec.quantity("omega", ("cm^-1",), 12500.0),
        plateau_ratio=sec.number("plateau_ratio", 3.0),
    )
    sec.check_consumed()
    return pulse


def parse_config(path) -> ExperimentConfig:
    """Read an experiment config file; raises `ConfigFileError` on any defect."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.optionxform = str  # unit-bearing keys are case-sensitive
    read = parser.read(path)
    if not read:
        raise ConfigFileError(f"cannot read config file {path!r}")

    known = {"molecule", "ensemble", "pulse1", "pulse2", "field",
             "propagation", "sweep", "output"}
    present = set(parser.sections())
    unknown = present - known
    if unknown:
        raise ConfigFileError(f"unknown sections: {sorted(unknown)}")
    if "molecule" not in present or "pulse1" not in present:
        raise ConfigFileError("[molecule] and [pulse1] sections are required")

    def section(name):
        return _Section(name, parser[name] if name in parser else {})

    mol = _parse_molecule(section("molecule"))

    pulses = [_parse_pulse(section("pulse1"))]
    if "pulse2" in present:
        pulses.append(_parse_pulse(section("pulse2")))

    fld = section("field")
    t_delay = fld.quantity("t_delay", ("ps",), 0.0)
    fld.check_consumed()
    if t_delay and len(pulses) < 2:
        raise ConfigFileError("[field] t_delay given but only one pulse")
    field = FieldConfig(pulses=tuple(pulses), t_delay_ps=t_delay)

    ens = section("ensemble")
    temperature = ens.quantity("temperature", ("K",), 0.0)
    epsilon = ens.number("epsilon", 1e-6)
    ens.check_consumed()

    prp = section("propagation")
    mode = prp.get("mode", CYCLE_AVERAGED)
    if mode not in (CYCLE_AVERAGED, FULL_FIELD):
        raise ConfigFileError(f"[propagation] mode: {mode!r} unknown")
    dt_fs = prp.quantity("dt", ("fs",))
    j_max = prp.number("j_max", 40)
    tol = prp.number("convergence_tol")
    post_window = prp.quantity("post_window", ("ps",))
    pre_window = prp.quantity("pre_window", ("ps",), 0.2)
    prp.check_consumed()
    prop = PropagationConfig(mode=mode, dt_fs=dt_fs, j_max=int(j_max),
                             convergence_tol=tol)

    sweep = None
    if "sweep" in present:
        swp = section("sweep")
        parameter = swp.get("parameter")
        if parameter is None:
            raise ConfigFileError("[sweep] needs a parameter key")
        raw_values = swp.get("values")
        if raw_values is not None:
            values = tuple(_number(v.strip(), "[sweep] values")
                           for v in raw_values.split(","))
        else:
            start = swp.number("start")
            stop = swp.number("stop")
            count = swp.number("count")
            if None in (start, stop, count):
                raise ConfigFileError(
                    "[sweep] needs either values or start/stop/count")
            values = tuple(np.linspace(start, stop, int(count)))
        swp.check_consumed()
        sweep = SweepSpec(parameter, values)

    output = None
    if "output" in present:
        out = section("output")
        output = OutputSpec(directory=out.get("directory", "."),
                            name=out.get("name", "run"),
                            save_series=out.boolean("save_series", False))
        out.check_consumed()

    return ExperimentConfig(
        molecule=mol, field=field, temperatures=(temperature,), prop=prop,
        ensemble_epsilon=epsilon, post_window_ps=post_window,
        pre_window_ps=pre_window, sweep=sweep, output=output)
