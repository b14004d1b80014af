"""rotalign: laser-driven alignment and orientation of linear molecules.

A rigid-rotor split-operator simulator for shaped two-color laser pulses,
with thermal-ensemble averaging and a parameter-sweep harness.
"""

__version__ = "0.1.0"

from .basis import BasisSpec, CosOperators, GridTransform, RotorState, cos_matrix_element
from .field import FieldConfig, PulseSpec, cycle_averaged_coefficients, envelope, instantaneous_field
from .harness import (ExperimentConfig, OutputSpec, RunResult, SweepRow,
                      SweepSpec, preset, preset_names, run_preset, run_single,
                      run_sweep)
from .molecule import (HBR, InternalParams, MoleculeParams, ThermalEnsemble,
                       build_ensemble, rotational_period_ps, to_internal)
from .observables import (ExtremaSummary, ObservableSeries, expectation,
                          extract_extrema, thermal_average)
from .propagator import (CYCLE_AVERAGED, FULL_FIELD, PropagationConfig,
                         Trajectory, propagate, potential_on_grid, step)

__all__ = [
    "BasisSpec", "CosOperators", "GridTransform", "RotorState",
    "cos_matrix_element",
    "FieldConfig", "PulseSpec", "cycle_averaged_coefficients", "envelope",
    "instantaneous_field",
    "ExperimentConfig", "OutputSpec", "RunResult", "SweepRow", "SweepSpec",
    "preset", "preset_names", "run_preset", "run_single", "run_sweep",
    "HBR", "InternalParams", "MoleculeParams", "ThermalEnsemble",
    "build_ensemble", "rotational_period_ps", "to_internal",
    "ExtremaSummary", "ObservableSeries", "expectation", "extract_extrema",
    "thermal_average",
    "CYCLE_AVERAGED", "FULL_FIELD", "PropagationConfig", "Trajectory",
    "propagate", "potential_on_grid", "step",
]
