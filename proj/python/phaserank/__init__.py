"""RFID backscatter phase simulation and trough-based relative localization."""

from ._core import (
    ConfigError,
    EmptyTraceError,
    FormationError,
    InconsistentRecordingsError,
    InsufficientDataError,
    InvalidParameterError,
    IoError,
    SingularityError,
    UndefinedMetricError,
    analytic_phase_rate,
    brute_force_min,
    detect_rotation_events,
    find_trough_lowest,
    ideal_phase,
    locate,
    run_experiment,
    savitzky_golay,
    simulate_sweeps,
    splice,
    wrap_two_pi,
)

__all__ = [
    "ConfigError",
    "EmptyTraceError",
    "FormationError",
    "InconsistentRecordingsError",
    "InsufficientDataError",
    "InvalidParameterError",
    "IoError",
    "SingularityError",
    "UndefinedMetricError",
    "analytic_phase_rate",
    "brute_force_min",
    "detect_rotation_events",
    "find_trough_lowest",
    "ideal_phase",
    "locate",
    "run_experiment",
    "savitzky_golay",
    "simulate_sweeps",
    "splice",
    "wrap_two_pi",
]
