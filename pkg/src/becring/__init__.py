"""Mean-field simulator for BEC momentum states in a recoil-resolving ring
cavity: collective decay, subradiant steady states, pump-ratio sweeps."""

from .model import (
    ModeAmplitudes,
    CavityField,
    ModelParams,
    SystemState,
    PhysicalInputs,
    omega_n,
    alpha,
    structure_factor,
    populations,
    rhs,
    coupling_g,
    recoil_frequency,
)
from .schedule import Schedule, Segment, InitialStateSpec, controls_at, \
    atom_number, initial_state, constant_schedule
from .integrator import StepControl, Trajectory, IntegrationError, step, \
    integrate, run_schedule

from .config import RunConfig, ConfigError, parse_config, serialize_config
from .scenarios import (
    Pulse,
    Steady,
    ScenarioResult,
    SweepRow,
    SweepResult,
    run_relaxation,
    run_seeded_protocol,
    run_epsilon_sweep,
    detect_pulse,
    detect_steady,
    adiabatic_field,
    calibrate_eta,
)
from .csvio import write_trajectory_csv, write_sweep_csv

__version__ = "0.1.0"
