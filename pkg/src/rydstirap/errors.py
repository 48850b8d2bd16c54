"""Exception types shared across the simulator modules."""

from __future__ import annotations


class SimulationError(Exception):
    """Base class for all simulator-specific failures."""


class ConfigError(SimulationError):
    """Invalid or inconsistent experiment configuration."""


class DegenerateDarkState(SimulationError):
    """Two eigenvalues sit within tolerance of zero; the dark state is ill-defined."""


class TrackingLost(SimulationError):
    """Consecutive dark-state overlap dropped below the tracking threshold."""

    def __init__(self, t: float, overlap: float, threshold: float):
        super().__init__(
            f"dark-state continuity lost at t={t:.6g} us: overlap {overlap:.4g} "
            f"< {threshold:.4g}; refine the time grid near the avoided crossing"
        )
        self.t = t
        self.overlap = overlap
        self.threshold = threshold


class NoInteriorMinimum(SimulationError):
    """The gap is monotone on the scanned window; no interior minimum to refine."""


class StepSizeUnderflow(SimulationError):
    """The integrator could not meet the requested local accuracy."""

    def __init__(self, step: float, worst_local_error: float):
        super().__init__(
            f"step size underflow: needed step below {step:.3g} us, "
            f"worst local error {worst_local_error:.3g}"
        )
        self.step = step
        self.worst_local_error = worst_local_error


class GridMismatch(SimulationError):
    """Two time series were combined on different grids."""


class GapFloorViolation(SimulationError):
    """An operation entered a region where the dark gap is below the floor."""

    def __init__(self, t: float, gap: float, gap_floor: float):
        super().__init__(
            f"gap {gap:.4g} rad/us below floor {gap_floor:.4g} at t={t:.6g} us"
        )
        self.t = t
        self.gap = gap
        self.gap_floor = gap_floor


class DegeneracyEncountered(SimulationError):
    """Two eigenlevels are closer than the floor allows for CD construction."""

    def __init__(self, t: float, levels: tuple[int, int], splitting: float):
        super().__init__(
            f"levels {levels[0]} and {levels[1]} split by only {splitting:.4g} rad/us "
            f"at t={t:.6g} us"
        )
        self.t = t
        self.levels = levels
        self.splitting = splitting


class SectorMixed(SimulationError):
    """A fixed-sector operation received a state spread over both Rydberg sectors."""

    def __init__(self, populations: tuple[float, float], per_sector: dict):
        super().__init__(
            f"state populates both Rydberg sectors (p0={populations[0]:.4g}, "
            f"p1={populations[1]:.4g}); see .per_sector for per-sector results"
        )
        self.populations = populations
        self.per_sector = per_sector


class NotConverged(SimulationError):
    """A convergence self-check failed (reports both estimates)."""

    def __init__(self, message: str, estimates: tuple[float, float]):
        super().__init__(f"{message}: estimates {estimates[0]:.6g} vs {estimates[1]:.6g}")
        self.estimates = estimates


class InsufficientOverlap(SimulationError):
    """Rescaled collapse curves share no common window."""
