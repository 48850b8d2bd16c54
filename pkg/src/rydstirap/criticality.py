"""Critical-slowing-down diagnostics: dark-state rate of change, counterdiabatic
driving, work fluctuations and their size scaling, and the fidelity
susceptibility with its finite-size collapse."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegeneracyEncountered,
    GapFloorViolation,
    InsufficientOverlap,
    NotConverged,
)
from .fitting import ScalingFit, fit_power_law
from .model import HamiltonianOperator, PulseSchedule, build_basis
from .spectral import SpectralSnapshot, diagonalize, find_critical_time

__all__ = [
    "GAP_FLOOR_DEFAULT",
    "RateProfile",
    "CDHamiltonian",
    "CounterdiabaticDrive",
    "SusceptibilityProfile",
    "CollapseReport",
    "dark_state_rate",
    "build_cd_hamiltonian",
    "work_fluctuation",
    "rate_profile",
    "integrated_work",
    "integrated_work_scaling",
    "fidelity_susceptibility",
    "susceptibility_scan",
    "scaling_collapse",
]

GAP_FLOOR_DEFAULT = 1e-3  # rad/us


def _check_gap(snapshot: SpectralSnapshot, gap_floor: float) -> None:
    if snapshot.gap < gap_floor:
        raise GapFloorViolation(snapshot.t, snapshot.gap, gap_floor)


def dark_state_rate(
    snapshot: SpectralSnapshot, dh: np.ndarray, gap_floor: float = GAP_FLOOR_DEFAULT
) -> float:
    """Norm of the dark-state time derivative, R(t).

    First-order perturbation theory with the dark energy pinned at zero:
    R^2 = sum_{n != dark} |<n|dH/dt|dark>|^2 / (eps_n - eps_dark)^2.
    """
    _check_gap(snapshot, gap_floor)
    w = snapshot.eigenvalues
    v = snapshot.eigenvectors
    dark = snapshot.dark_index
    couplings = v.T @ (dh @ v[:, dark])
    denom = w - w[dark]
    terms = np.delete(couplings, dark) / np.delete(denom, dark)
    return float(np.sqrt(np.sum(terms**2)))


@dataclass(frozen=True)
class CDHamiltonian:
    """Counterdiabatic term H_1(t): Hermitian, purely imaginary in the real gauge."""

    t: float
    matrix: np.ndarray
    gap_floor: float


def build_cd_hamiltonian(
    snapshot: SpectralSnapshot, dh: np.ndarray, gap_floor: float = GAP_FLOOR_DEFAULT
) -> CDHamiltonian:
    """Assemble H_1 = i sum_{m != n} |m><m|dH|n><n| / (eps_n - eps_m).

    The diagonal vanishes in the real gauge.  Raises DegeneracyEncountered
    when any level pair is split by less than gap_floor.
    """
    w = snapshot.eigenvalues
    v = snapshot.eigenvectors
    split = w[None, :] - w[:, None]
    off = ~np.eye(w.size, dtype=bool)
    tight = np.abs(split[off])
    if np.min(tight) < gap_floor:
        flat = np.where(off, np.abs(split), np.inf)
        m, n = np.unravel_index(int(np.argmin(flat)), flat.shape)
        raise DegeneracyEncountered(snapshot.t, (int(m), int(n)), float(flat[m, n]))
    coupling = v.T @ dh @ v
    kernel = np.zeros_like(coupling)
    np.divide(coupling, split, out=kernel, where=off)
    h1 = 1j * (v @ kernel @ v.T)
    return CDHamiltonian(snapshot.t, h1, gap_floor)


def work_fluctuation(
    snapshot: SpectralSnapshot, dh: np.ndarray, gap_floor: float = GAP_FLOOR_DEFAULT
) -> float:
    """sqrt(Var(H_CD)) in the dark state, from the assembled H_CD = H + H_1.

    Computed by matrix algebra on H_CD rather than the perturbation sum, so
    it can serve as an independent check of the identity with R(t).
    """
    _check_gap(snapshot, gap_floor)
    cd = build_cd_hamiltonian(snapshot, dh, gap_floor)
    h = (snapshot.eigenvectors * snapshot.eigenvalues) @ snapshot.eigenvectors.T
    h_cd = h + cd.matrix
    psi = snapshot.dark_state.astype(complex)
    w = h_cd @ psi
    var = float(np.real(np.vdot(w, w))) - float(np.real(np.vdot(psi, w))) ** 2
    return math.sqrt(max(var, 0.0))


class CounterdiabaticDrive:
    """H_1(t) provider for shortcut-to-adiabaticity propagation."""

    def __init__(self, op: HamiltonianOperator, gap_floor: float = GAP_FLOOR_DEFAULT):
        self.op = op
        self.gap_floor = gap_floor

    def __call__(self, t: float) -> CDHamiltonian:
        snapshot = diagonalize(self.op, t)
        _check_gap(snapshot, self.gap_floor)
        return build_cd_hamiltonian(snapshot, self.op.derivative(t), self.gap_floor)


@dataclass
class RateProfile:
    """R(t) and the independently computed work fluctuation on a grid."""

    times: np.ndarray
    rate: np.ndarray
    work_fluct: np.ndarray


def rate_profile(
    op: HamiltonianOperator, times, gap_floor: float = GAP_FLOOR_DEFAULT
) -> RateProfile:
    """Evaluate R(t) and sqrt(Var(H_CD)) pointwise along a grid."""
    times = np.asarray(times, dtype=float)
    rate = np.empty(times.size)
    work = np.empty(times.size)
    for i, t in enumerate(times):
        snapshot = diagonalize(op, t)
        dh = op.derivative(t)
        rate[i] = dark_state_rate(snapshot, dh, gap_floor)
        work[i] = work_fluctuation(snapshot, dh, gap_floor)
    return RateProfile(times, rate, work)


def integrated_work(
    op: HamiltonianOperator,
    tau: float | None = None,
    gap_floor: float = GAP_FLOOR_DEFAULT,
    rel_tol: float = 1e-3,
    n_start: int = 65,
    max_doublings: int = 12,
) -> float:
    """Trapezoid quadrature of the work fluctuation over [0, tau].

    The integrand vanishes outside the pulse-overlap window (eigenvectors are
    static when a single pulse acts), so only that window is sampled; the
    grid is doubled until the integral changes by less than rel_tol.
    """
    sched = op.pulses
    if tau is None:
        tau = sched.window[1]
    lo, hi = sched.overlap_window
    lo, hi = max(lo, 0.0), min(hi, tau)
    if lo >= hi:
        return 0.0

    cache: dict[float, float] = {}

    def integrand(t: float) -> float:
        if t not in cache:
            snapshot = diagonalize(op, t)
            cache[t] = dark_state_rate(snapshot, op.derivative(t), gap_floor)
        return cache[t]

    ts = np.linspace(lo, hi, n_start)
    vals = np.array([integrand(t) for t in ts])
    total = refined = float(np.trapezoid(vals, ts))
    for _ in range(max_doublings):
        mids = 0.5 * (ts[:-1] + ts[1:])
        mid_vals = np.array([integrand(t) for t in mids])
        ts = np.sort(np.concatenate([ts, mids]))
        vals = np.empty(ts.size)
        vals[0::2] = np.array([cache[t] for t in ts[0::2]])
        vals[1::2] = mid_vals
        refined = float(np.trapezoid(vals, ts))
        if abs(refined - total) <= rel_tol * abs(refined):
            return refined
        total = refined
    raise NotConverged("work integral did not settle under grid doubling", (total, refined))


def integrated_work_scaling(
    n_atoms_list,
    schedule: PulseSchedule,
    tau: float | None = None,
    gap_floor: float = GAP_FLOOR_DEFAULT,
    rel_tol: float = 1e-3,
) -> ScalingFit:
    """Fit the integrated work fluctuation against atom number on log-log axes."""
    ns = [int(n) for n in n_atoms_list]
    integrals = []
    for n in ns:
        op = HamiltonianOperator(build_basis(n), schedule)
        integrals.append(integrated_work(op, tau=tau, gap_floor=gap_floor, rel_tol=rel_tol))
    return fit_power_law(np.array(ns, dtype=float), np.array(integrals))


@dataclass
class SusceptibilityProfile:
    """Fidelity susceptibility S(t) <= 0 with its refined minimum.

    t_min/s_min come from a parabola through the three deepest grid points.
    """

    n_atoms: int
    times: np.ndarray
    values: np.ndarray
    epsilon: float
    t_min: float
    s_min: float

    def collapse_pairs(self, amplitude_exponent: float = 2.0):
        """Rescaled (N (t - t_N), N^-exponent (S - S_N)) pairs."""
        x = self.n_atoms * (self.times - self.t_min)
        y = (self.values - self.s_min) / float(self.n_atoms) ** amplitude_exponent
        return x, y


def _parabolic_minimum(ts: np.ndarray, ss: np.ndarray) -> tuple[float, float]:
    """Vertex of the parabola through three points bracketing a minimum."""
    coeffs = np.polyfit(ts, ss, 2)
    a, b, c = coeffs
    if a <= 0.0:  # no curvature: fall back to the grid point
        i = int(np.argmin(ss))
        return float(ts[i]), float(ss[i])
    t_v = -b / (2.0 * a)
    t_v = float(np.clip(t_v, ts[0], ts[-1]))
    return t_v, float(np.polyval(coeffs, t_v))


def fidelity_susceptibility(
    op: HamiltonianOperator,
    times,
    epsilon: float | None = None,
    check_tol: float = 0.01,
) -> SusceptibilityProfile:
    """S(t) = 2 (F(t, eps) - 1) / eps^2 from neighboring dark eigenstates.

    F compares the tracked dark states at t - eps and t + eps.  The default
    eps shrinks as 0.01/N because the susceptibility feature narrows with N.
    Raises NotConverged when the eps and eps/2 estimates disagree beyond
    check_tol (relative, with a floor of 1e-3 of the profile scale).
    """
    n = op.basis.n_atoms
    eps = 0.01 / n if epsilon is None else float(epsilon)
    if not eps > 0.0:
        raise ValueError("epsilon must be positive")
    times = np.asarray(times, dtype=float)
    if times.ndim != 1 or times.size < 3:
        raise ValueError("susceptibility needs a grid of at least three points")

    def estimate(t: float, e: float) -> float:
        left = diagonalize(op, t - e).dark_state
        right = diagonalize(op, t + e).dark_state
        overlap = abs(float(left @ right))
        return 2.0 * (overlap - 1.0) / (e * e)

    s_full = np.array([estimate(t, eps) for t in times])
    s_half = np.array([estimate(t, 0.5 * eps) for t in times])
    scale = float(np.max(np.abs(s_full))) or 1.0
    tol = check_tol * np.maximum(np.maximum(np.abs(s_full), np.abs(s_half)), 1e-3 * scale)
    mismatch = np.abs(s_full - s_half)
    if np.any(mismatch > tol):
        i = int(np.argmax(mismatch - tol))
        raise NotConverged(
            f"epsilon-halving test failed at t={times[i]:.6g} us (eps={eps:.3g})",
            (float(s_full[i]), float(s_half[i])),
        )
    imin = int(np.argmin(s_full))
    if imin == 0 or imin == times.size - 1:
        # boundary or flat profile: keep the grid value, no parabola to fit
        t_min, s_min = float(times[imin]), float(s_full[imin])
    else:
        t_min, s_min = _parabolic_minimum(
            times[imin - 1 : imin + 2], s_full[imin - 1 : imin + 2]
        )
    return SusceptibilityProfile(n, times, s_full, eps, t_min, s_min)


def susceptibility_scan(
    op: HamiltonianOperator,
    x_half: float = 10.0,
    n_points: int = 121,
    epsilon: float | None = None,
    check_tol: float = 0.01,
    refine_tol: float = 1e-4,
) -> SusceptibilityProfile:
    """Two-pass S(t) scan on a window of rescaled half-width x_half around t_N.

    The window spans t_N +- x_half/N so that profiles at different N cover
    the same collapsed range; the first pass centers on the minimum-gap time
    and the second recenters on the refined t_N.
    """
    n = op.basis.n_atoms
    half = x_half / n
    t_c = find_critical_time(op, refine_tol=refine_tol).t_c
    first = fidelity_susceptibility(
        op, np.linspace(t_c - half, t_c + half, n_points), epsilon, check_tol
    )
    grid = np.linspace(first.t_min - half, first.t_min + half, n_points)
    return fidelity_susceptibility(op, grid, epsilon, check_tol)


@dataclass
class CollapseReport:
    """Rescaled susceptibility curves on a common window and their spread."""

    x: np.ndarray
    curves: dict[int, np.ndarray]
    pairwise_rms: dict[tuple[int, int], float]
    max_rms: float
    mean_rms: float
    y_range: float
    amplitude_exponent: float


def scaling_collapse(
    profiles,
    amplitude_exponent: float = 2.0,
    n_grid: int = 201,
) -> CollapseReport:
    """Overlay rescaled profiles and report pairwise RMS deviations.

    Each profile is mapped to (N (t - t_N), N^-exponent (S - S_N)) and
    interpolated onto the intersection of the rescaled windows; RMS values
    are normalized by the overall y-range.  Raises InsufficientOverlap when
    the rescaled windows share no interval.
    """
    profiles = list(profiles)
    if not profiles:
        raise ValueError("no profiles to collapse")
    pairs = [p.collapse_pairs(amplitude_exponent) for p in profiles]
    lo = max(float(x.min()) for x, _ in pairs)
    hi = min(float(x.max()) for x, _ in pairs)
    if lo >= hi:
        raise InsufficientOverlap(
            f"rescaled windows share no interval (max of minima {lo:.4g} >= "
            f"min of maxima {hi:.4g})"
        )
    grid = np.linspace(lo, hi, n_grid)
    curves = {
        p.n_atoms: np.interp(grid, x, y) for p, (x, y) in zip(profiles, pairs)
    }
    stacked = np.array(list(curves.values()))
    y_range = float(stacked.max() - stacked.min()) or 1.0
    keys = list(curves)
    pairwise: dict[tuple[int, int], float] = {}
    for a in range(len(keys)):
        for b in range(a + 1, len(keys)):
            rms = float(np.sqrt(np.mean((curves[keys[a]] - curves[keys[b]]) ** 2)))
            pairwise[(keys[a], keys[b])] = rms / y_range
    values = list(pairwise.values())
    return CollapseReport(
        x=grid,
        curves=curves,
        pairwise_rms=pairwise,
        max_rms=max(values) if values else 0.0,
        mean_rms=float(np.mean(values)) if values else 0.0,
        y_range=y_range,
        amplitude_exponent=amplitude_exponent,
    )
