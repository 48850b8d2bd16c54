"""Diagonalization, dark-state tracking, gap profiles, and gap-scaling fits."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DegenerateDarkState, NoInteriorMinimum, TrackingLost
from .fitting import ScalingFit, fit_power_law
from .model import HamiltonianOperator, PulseSchedule, build_basis, pulse_value

__all__ = [
    "SpectralSnapshot",
    "GapProfile",
    "diagonalize",
    "track_dark_state",
    "tracking_grid",
    "find_critical_time",
    "fit_gap_scaling",
    "gap_at",
]

ZERO_TOL = 1e-9


@dataclass
class SpectralSnapshot:
    """Eigensystem of H(t) at one time, with the zero-energy state identified.

    Eigenvalues ascending; eigenvectors real orthonormal columns.  The sign
    gauge is canonical (largest-magnitude entry positive) unless the snapshot
    was chained to a predecessor, in which case every column keeps a
    nonnegative overlap with its predecessor.
    """

    t: float
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    dark_index: int
    gap: float

    @property
    def dark_state(self) -> np.ndarray:
        return self.eigenvectors[:, self.dark_index]

    @property
    def spectral_norm(self) -> float:
        return float(max(abs(self.eigenvalues[0]), abs(self.eigenvalues[-1])))


@dataclass
class GapProfile:
    """Gap(t) on a scan grid plus the refined minimum location."""

    times: np.ndarray
    gaps: np.ndarray
    t_c: float
    gap_min: float


def _eigh_gap(eigenvalues: np.ndarray) -> tuple[int, float]:
    dark = int(np.argmin(np.abs(eigenvalues)))
    others = np.delete(eigenvalues, dark)
    return dark, float(np.min(np.abs(others - eigenvalues[dark])))


def gap_at(op: HamiltonianOperator, t: float) -> float:
    """Distance from the zero-energy eigenvalue to its nearest neighbor."""
    w = np.linalg.eigvalsh(op.matrix(t))
    return _eigh_gap(w)[1]


def _fix_signs(vectors: np.ndarray, prev: SpectralSnapshot | None) -> None:
    if prev is None:
        anchor = np.argmax(np.abs(vectors), axis=0)
        signs = np.sign(vectors[anchor, np.arange(vectors.shape[1])])
    else:
        signs = np.sign(np.einsum("ij,ij->j", prev.eigenvectors, vectors))
    signs[signs == 0.0] = 1.0
    vectors *= signs


def diagonalize(
    op: HamiltonianOperator,
    t: float,
    prev: SpectralSnapshot | None = None,
    zero_tol: float = ZERO_TOL,
) -> SpectralSnapshot:
    """Full eigensystem at time t with gauge-fixed real eigenvectors.

    Raises DegenerateDarkState when a second eigenvalue lies within
    zero_tol * ||H|| of zero (in particular whenever H(t) = 0).
    """
    h = op.matrix(t)
    w, v = np.linalg.eigh(h)
    hnorm = max(abs(w[0]), abs(w[-1]))
    by_magnitude = np.sort(np.abs(w))
    if hnorm == 0.0 or by_magnitude[1] < zero_tol * hnorm:
        raise DegenerateDarkState(
            f"no isolated zero-energy eigenstate at t={t:.6g} us "
            f"(|H|={hnorm:.3g}, two smallest |eigenvalues| "
            f"{by_magnitude[0]:.3g}, {by_magnitude[1]:.3g})"
        )
    dark, gap = _eigh_gap(w)
    _fix_signs(v, prev)
    return SpectralSnapshot(float(t), w, v, dark, gap)


def tracking_grid(
    pulses: PulseSchedule, n_points: int, margin: float | None = None
) -> np.ndarray:
    """Uniform grid strictly inside the union of pulse supports.

    The margin keeps the endpoints away from H = 0 where the dark state is
    degenerate; by default it scales with the pulse width.
    """
    lo, hi = pulses.window
    if margin is None:
        margin = 0.015 * pulses.sigma
    if margin <= 0.0 or 2.0 * margin >= hi - lo:
        raise ValueError(f"margin {margin} does not fit inside the pulse window")
    return np.linspace(lo + margin, hi - margin, n_points)


def track_dark_state(
    op: HamiltonianOperator,
    times,
    min_overlap: float = 0.5,
    zero_tol: float = ZERO_TOL,
) -> list[SpectralSnapshot]:
    """Follow the zero-energy eigenstate along a time grid with a continuity gauge.

    The grid must start where the 1-pulse is still off, so that the dark
    state is the all-ground anchor |N, 0, 0>.  Raises TrackingLost when the
    overlap between consecutive dark vectors falls below min_overlap.
    """
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 2:
        raise ValueError("tracking needs a 1-d grid with at least two points")
    if np.any(np.diff(times) <= 0.0):
        raise ValueError("tracking grid must be strictly increasing")
    if pulse_value(op.pulses, "1", times[0]) != 0.0:
        raise ValueError("tracking must start at a time where the 1-pulse is off")

    snapshots: list[SpectralSnapshot] = []
    prev: SpectralSnapshot | None = None
    ground = op.basis.all_ground_index
    for t in times:
        snap = diagonalize(op, t, prev=prev, zero_tol=zero_tol)
        if prev is None:
            if snap.dark_state[ground] < 0.0:
                snap.eigenvectors[:, snap.dark_index] *= -1.0
        else:
            overlap = float(prev.dark_state @ snap.dark_state)
            if overlap < min_overlap:
                raise TrackingLost(float(t), overlap, min_overlap)
        snapshots.append(snap)
        prev = snap
    return snapshots


def find_critical_time(
    op: HamiltonianOperator,
    window: tuple[float, float] | None = None,
    refine_tol: float = 1e-4,
    n_scan: int = 201,
) -> GapProfile:
    """Locate the minimum gap by grid scan plus bounded golden-section refinement.

    The default window is the pulse-overlap interval.  Raises
    NoInteriorMinimum when the scanned gap is monotone.
    """
    if window is None:
        window = op.pulses.overlap_window
    lo, hi = window
    if not lo < hi:
        raise ValueError(f"empty scan window ({lo}, {hi})")
    times = np.linspace(lo, hi, n_scan)
    gaps = np.array([gap_at(op, t) for t in times])
    imin = int(np.argmin(gaps))
    if imin == 0 or imin == n_scan - 1:
        raise NoInteriorMinimum(
            f"gap is monotone over ({lo:.6g}, {hi:.6g}); widen the window"
        )
    result = minimize_scalar(
        lambda t: gap_at(op, t),
        bounds=(times[imin - 1], times[imin + 1]),
        method="bounded",
        options={"xatol": refine_tol},
    )
    return GapProfile(
        times=times,
        gaps=gaps,
        t_c=float(result.x),
        gap_min=float(result.fun),
    )


def fit_gap_scaling(
    n_atoms_list,
    schedule: PulseSchedule,
    window: tuple[float, float] | None = None,
    refine_tol: float = 1e-4,
    n_scan: int = 201,
) -> ScalingFit:
    """Fit gap_min(N) ~ N**exponent, each gap taken at its own critical time."""
    ns = [int(n) for n in n_atoms_list]
    if len(set(ns)) < 4:
        raise ValueError("gap scaling fit needs at least 4 distinct atom numbers")
    gap_minima = []
    for n in ns:
        op = HamiltonianOperator(build_basis(n), schedule)
        profile = find_critical_time(op, window=window, refine_tol=refine_tol, n_scan=n_scan)
        gap_minima.append(profile.gap_min)
    return fit_power_law(np.array(ns, dtype=float), np.array(gap_minima))
