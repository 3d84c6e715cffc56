"""Non-RWA simulations of few-cycle pulse driven transfer in lambda atoms.

The package propagates the full oscillating-field equations of motion for a
three-level lambda system driven by two simultaneous few-cycle pulses
(chirped Gaussian or sinc shaped), and provides a deterministic sweep
engine plus a CSV-emitting CLI for robustness scans.

Units: times in fs, frequencies and Rabi amplitudes in rad/fs, hbar = 1.
"""

from .atom import (
    STATE_LABELS,
    DensityState,
    Detunings,
    LambdaAtom,
    detunings,
    ground_state,
)
from .config import (
    PRESETS,
    ScenarioConfig,
    SweepSection,
    emit_config,
    load_preset,
    parse_config,
    preset_names,
)
from .dynamics import (
    DEFAULT_DT,
    ObservableSummary,
    TimeGrid,
    Trajectory,
    bloch_rhs,
    observables,
    propagate,
    propagate_wavefunction,
    time_reversal_defect,
)
from .errors import (
    InvariantBreach,
    ParseError,
    StepTooLarge,
    UnknownKeyError,
    ValidationError,
)
from .pulses import (
    GAUSSIAN_WIDTH_RATIO,
    SINC_WIDTH_RATIO,
    PulseShape,
    PulseSpec,
    envelope,
    instantaneous_frequency,
    instantaneous_rabi,
    phase,
    pulse_area,
)
from .reporting import emit_sweep_csv, emit_trajectory_csv, run_summary
from .scenario import (
    Scenario,
    default_window,
    gaussian_reference_scenario,
    sinc_reference_scenario,
)
from .sweep import (
    AxisParam,
    Observable,
    SweepAxis,
    SweepResult,
    SweepSpec,
    cep_sweep_defaults,
    chirp_sweep_defaults,
    rabi_map_defaults,
    run_sweep,
    width_sweep_defaults,
)

__version__ = "0.1.0"

__all__ = [
    "AxisParam",
    "DEFAULT_DT",
    "DensityState",
    "Detunings",
    "GAUSSIAN_WIDTH_RATIO",
    "InvariantBreach",
    "LambdaAtom",
    "Observable",
    "ObservableSummary",
    "PRESETS",
    "ParseError",
    "PulseShape",
    "PulseSpec",
    "Scenario",
    "ScenarioConfig",
    "SINC_WIDTH_RATIO",
    "STATE_LABELS",
    "StepTooLarge",
    "SweepAxis",
    "SweepResult",
    "SweepSection",
    "SweepSpec",
    "TimeGrid",
    "Trajectory",
    "UnknownKeyError",
    "ValidationError",
    "bloch_rhs",
    "cep_sweep_defaults",
    "chirp_sweep_defaults",
    "default_window",
    "detunings",
    "emit_config",
    "emit_sweep_csv",
    "emit_trajectory_csv",
    "envelope",
    "gaussian_reference_scenario",
    "ground_state",
    "instantaneous_frequency",
    "instantaneous_rabi",
    "load_preset",
    "observables",
    "parse_config",
    "phase",
    "preset_names",
    "propagate",
    "propagate_wavefunction",
    "pulse_area",
    "rabi_map_defaults",
    "run_sweep",
    "sinc_reference_scenario",
    "time_reversal_defect",
    "width_sweep_defaults",
]
