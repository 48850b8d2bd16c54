"""Time-dependent Schroedinger propagation and adiabatic-following fidelity.

Steps are exact exponentials of an effective Hamiltonian, so unitarity holds
to roundoff regardless of step size.  Two schemes are available: "gl4", a
two-point Gauss-Legendre Magnus step (4th order), and "midpoint", the plain
exponential of H at the step midpoint (2nd order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatch, StepSizeUnderflow
from .model import HamiltonianOperator
from .spectral import SpectralSnapshot

__all__ = [
    "QuantumState",
    "StepControls",
    "Trajectory",
    "basis_state",
    "propagate",
    "propagate_counterdiabatic",
    "overlap_fidelity",
]

NORM_TOL = 1e-9

_GL_LOW = 0.5 - math.sqrt(3.0) / 6.0
_GL_HIGH = 0.5 + math.sqrt(3.0) / 6.0
_SQRT3_12 = math.sqrt(3.0) / 12.0


@dataclass(frozen=True)
class QuantumState:
    """Normalized complex amplitude vector over the collective basis."""

    amplitudes: np.ndarray
    t: float

    def __post_init__(self):
        amp = np.ascontiguousarray(self.amplitudes, dtype=complex)
        norm = np.linalg.norm(amp)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm {norm!r} deviates from 1 beyond {NORM_TOL}")
        object.__setattr__(self, "amplitudes", amp)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


def basis_state(basis, n_g: int, n_e: int, n_r: int, t: float = 0.0) -> QuantumState:
    """Unit amplitude on a single collective occupation state."""
    amp = np.zeros(basis.dim, dtype=complex)
    amp[basis.index_of(n_g, n_e, n_r)] = 1.0
    return QuantumState(amp, t)


@dataclass(frozen=True)
class StepControls:
    """Accuracy knobs for the propagator.

    max_step bounds the substep length; when local_tol is set, each substep
    is additionally halved until a Richardson estimate of the local error
    drops below it (StepSizeUnderflow below min_step).
    """

    max_step: float = 1e-3
    scheme: str = "gl4"
    local_tol: float | None = None
    min_step: float = 1e-9

    def __post_init__(self):
        if not self.max_step > 0.0:
            raise ValueError("max_step must be positive")
        if self.scheme not in ("gl4", "midpoint"):
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.local_tol is not None and not self.local_tol > 0.0:
            raise ValueError("local_tol must be positive when given")


@dataclass
class Trajectory:
    """States on a strictly increasing time grid plus integrator metadata."""

    times: np.ndarray
    amplitudes: np.ndarray  # (n_times, dim) complex
    controls: StepControls
    worst_local_error: float | None = None

    def state(self, i: int) -> QuantumState:
        return QuantumState(self.amplitudes[i], float(self.times[i]))

    @property
    def final(self) -> QuantumState:
        return self.state(len(self.times) - 1)

    @property
    def norm_drift(self) -> float:
        norms = np.linalg.norm(self.amplitudes, axis=1)
        return float(np.max(np.abs(norms - 1.0)))


def _step_gl4(h_func, t: float, h: float, psi: np.ndarray) -> np.ndarray:
    h1 = h_func(t + _GL_LOW * h)
    h2 = h_func(t + _GL_HIGH * h)
    cross = h2 @ h1
    k = 0.5 * h * (h1 + h2) - 1j * (_SQRT3_12 * h * h) * (cross - cross.conj().T)
    w, v = np.linalg.eigh(k)
    return v @ (np.exp(-1j * w) * (v.conj().T @ psi))


def _step_midpoint(h_func, t: float, h: float, psi: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(h_func(t + 0.5 * h))
    return v @ (np.exp(-1j * w * h) * (v.conj().T @ psi))


_STEPPERS = {"gl4": _step_gl4, "midpoint": _step_midpoint}


def _controlled_step(step, h_func, t, h, psi, controls, worst):
    """One substep with recursive Richardson halving against local_tol."""
    if h < controls.min_step:
        raise StepSizeUnderflow(h, worst[0])
    full = step(h_func, t, h, psi)
    half = step(h_func, t + 0.5 * h, 0.5 * h, step(h_func, t, 0.5 * h, psi))
    err = float(np.linalg.norm(full - half))
    worst[0] = max(worst[0], err)
    if err <= controls.local_tol:
        return half
    psi = _controlled_step(step, h_func, t, 0.5 * h, psi, controls, worst)
    return _controlled_step(step, h_func, t + 0.5 * h, 0.5 * h, psi, controls, worst)


def _advance(h_func, t0, t1, psi, controls, worst):
    span = t1 - t0
    n_sub = max(1, math.ceil(span / controls.max_step))
    h = span / n_sub
    step = _STEPPERS[controls.scheme]
    for k in range(n_sub):
        t = t0 + k * h
        if controls.local_tol is None:
            psi = step(h_func, t, h, psi)
        else:
            psi = _controlled_step(step, h_func, t, h, psi, controls, worst)
    return psi


def _propagate_func(h_func, initial: QuantumState, times, controls: StepControls | None):
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 1:
        raise ValueError("propagation needs a 1-d, nonempty time grid")
    if np.any(np.diff(times) <= 0.0):
        raise ValueError("time grid must be strictly increasing")
    if abs(initial.t - times[0]) > 1e-12:
        raise ValueError(
            f"initial state is at t={initial.t} but the grid starts at {times[0]}"
        )
    controls = controls if controls is not None else StepControls()
    out = np.empty((times.size, initial.amplitudes.size), dtype=complex)
    out[0] = initial.amplitudes
    psi = initial.amplitudes.copy()
    worst = [0.0]
    for i in range(1, times.size):
        psi = _advance(h_func, times[i - 1], times[i], psi, controls, worst)
        out[i] = psi
    worst_err = worst[0] if controls.local_tol is not None else None
    return Trajectory(times, out, controls, worst_err)


def propagate(
    op: HamiltonianOperator,
    initial: QuantumState,
    times,
    controls: StepControls | None = None,
) -> Trajectory:
    """Integrate i d/dt psi = H(t) psi along the given output grid."""
    return _propagate_func(op.matrix, initial, times, controls)


def propagate_counterdiabatic(
    op: HamiltonianOperator,
    cd,
    initial: QuantumState,
    times,
    controls: StepControls | None = None,
) -> Trajectory:
    """Propagate under H(t) + H_1(t) with H_1 from a counterdiabatic provider.

    The provider is called at every substep evaluation time and may raise
    GapFloorViolation; the grid must therefore stay inside the region where
    the dark gap exceeds the provider's floor.
    """

    def h_total(t: float) -> np.ndarray:
        h1 = cd(t)
        h1 = getattr(h1, "matrix", h1)
        return op.matrix(t) + h1

    return _propagate_func(h_total, initial, times, controls)


def overlap_fidelity(traj: Trajectory, dark_path: list[SpectralSnapshot]) -> np.ndarray:
    """F(t) = |<psi(t)|D(t)>|^2 on the shared grid of trajectory and dark path."""
    dark_times = np.array([s.t for s in dark_path])
    if dark_times.size != traj.times.size or np.max(np.abs(dark_times - traj.times)) > 1e-9:
        raise GridMismatch("trajectory and dark path use different time grids")
    fid = np.empty(dark_times.size)
    for i, snap in enumerate(dark_path):
        fid[i] = abs(np.vdot(traj.amplitudes[i], snap.dark_state)) ** 2
    return fid
