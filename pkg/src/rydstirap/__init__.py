"""Simulator for Rydberg-blockaded STIRAP entanglement preparation.

Builds the collective-basis Hamiltonian of N three-level atoms under a
blockade that caps the Rydberg occupation at one, follows the zero-energy
dark eigenstate through the avoided crossing, propagates the Schroedinger
equation (optionally with counterdiabatic driving), and evaluates the
diagnostics that expose the critical slowing down: gap scaling, spin
variances and macroscopicity, work fluctuations, and fidelity-susceptibility
finite-size collapse.
"""

from .criticality import (
    GAP_FLOOR_DEFAULT,
    CDHamiltonian,
    CollapseReport,
    CounterdiabaticDrive,
    RateProfile,
    SusceptibilityProfile,
    build_cd_hamiltonian,
    dark_state_rate,
    fidelity_susceptibility,
    integrated_work,
    integrated_work_scaling,
    rate_profile,
    scaling_collapse,
    susceptibility_scan,
    work_fluctuation,
)
from .dynamics import (
    QuantumState,
    StepControls,
    Trajectory,
    basis_state,
    overlap_fidelity,
    propagate,
    propagate_counterdiabatic,
)
from .errors import (
    ConfigError,
    DegenerateDarkState,
    DegeneracyEncountered,
    GapFloorViolation,
    GridMismatch,
    InsufficientOverlap,
    NoInteriorMinimum,
    NotConverged,
    SectorMixed,
    SimulationError,
    StepSizeUnderflow,
    TrackingLost,
)
from .fitting import ScalingFit, fit_power_law
from .model import (
    OMEGA_2PI_10MHZ,
    CollectiveBasis,
    HamiltonianOperator,
    PulseSchedule,
    build_basis,
    collective_hamiltonian,
    hamiltonian_at,
    hamiltonian_derivative_at,
    make_schedule,
    pulse_derivative,
    pulse_value,
)
from .observables import (
    SpinOperatorSet,
    SumRuleResult,
    VarianceSeries,
    build_spin_operators,
    effective_size,
    rydberg_parity,
    spin_covariance,
    total_spin_sum_rule,
    variance,
    variance_series,
)
from .spectral import (
    GapProfile,
    SpectralSnapshot,
    diagonalize,
    find_critical_time,
    fit_gap_scaling,
    gap_at,
    track_dark_state,
    tracking_grid,
)

__version__ = "0.1.0"
