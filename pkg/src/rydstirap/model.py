"""Pulse schedules, the blockaded collective basis, and Hamiltonian assembly.

Conventions: hbar = 1, time in microseconds, angular frequency in rad/us.
A laser spec of "2 pi x 10 MHz" enters as 2*pi*10 ~ 62.832 rad/us.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

__all__ = [
    "OMEGA_2PI_10MHZ",
    "PulseSchedule",
    "CollectiveBasis",
    "HamiltonianOperator",
    "make_schedule",
    "pulse_value",
    "pulse_derivative",
    "build_basis",
    "collective_hamiltonian",
    "hamiltonian_at",
    "hamiltonian_derivative_at",
]

OMEGA_2PI_10MHZ = 2.0 * math.pi * 10.0  # rad/us


@dataclass(frozen=True)
class PulseSchedule:
    """Two sin^2 STIRAP envelopes sharing a half-duration sigma.

    Each pulse is Omega_max * sin^2(pi (t - t_start) / (2 sigma)) on the open
    window (t_start, t_start + 2 sigma) and exactly zero outside.  The r-pulse
    precedes the 1-pulse (counterintuitive ordering).
    """

    omega_max_1: float
    omega_max_r: float
    sigma: float
    t_start_r: float
    t_start_1: float

    def __post_init__(self) -> None:
        if not self.sigma > 0.0:
            raise ValueError(f"sigma must be positive, got {self.sigma}")
        if self.omega_max_1 < 0.0 or self.omega_max_r < 0.0:
            raise ValueError("peak Rabi frequencies must be nonnegative")
        if self.t_start_r > self.t_start_1:
            raise ValueError(
                "counterintuitive ordering requires t_start_r <= t_start_1"
            )

    @property
    def separation(self) -> float:
        """Peak separation between the two pulses (us)."""
        return self.t_start_1 - self.t_start_r

    def support(self, which) -> tuple[float, float]:
        """Open interval outside which the selected pulse vanishes."""
        t0 = self.t_start_1 if _which(which) == "1" else self.t_start_r
        return (t0, t0 + 2.0 * self.sigma)

    @property
    def window(self) -> tuple[float, float]:
        """Union of both pulse supports."""
        return (self.t_start_r, self.t_start_1 + 2.0 * self.sigma)

    @property
    def overlap_window(self) -> tuple[float, float]:
        """Interval on which both pulses are simultaneously nonzero."""
        lo = self.t_start_1
        hi = self.t_start_r + 2.0 * self.sigma
        if lo >= hi:
            raise ValueError("pulses do not overlap for this schedule")
        return (lo, hi)

    @property
    def duration(self) -> float:
        return self.window[1] - self.window[0]


def make_schedule(
    omega_max: float = OMEGA_2PI_10MHZ,
    sigma: float = 1.5,
    separation: float = 1.1,
    t_start_r: float = 0.0,
    omega_max_r: float | None = None,
) -> PulseSchedule:
    """Build a schedule from peak amplitude, width and peak separation."""
    return PulseSchedule(
        omega_max_1=omega_max,
        omega_max_r=omega_max if omega_max_r is None else omega_max_r,
        sigma=sigma,
        t_start_r=t_start_r,
        t_start_1=t_start_r + separation,
    )


def _which(which) -> str:
    w = str(which)
    if w not in ("1", "r"):
        raise ValueError(f"pulse selector must be '1' or 'r', got {which!r}")
    return w


def _pulse_params(pulses: PulseSchedule, which) -> tuple[float, float]:
    if _which(which) == "1":
        return pulses.omega_max_1, pulses.t_start_1
    return pulses.omega_max_r, pulses.t_start_r


def pulse_value(pulses: PulseSchedule, which, t):
    """Rabi envelope Omega_j(t) in rad/us; zero outside the open support window.

    Accepts a scalar time or an array and returns the matching shape.
    """
    omega, t0 = _pulse_params(pulses, which)
    x = (np.asarray(t, dtype=float) - t0) / (2.0 * pulses.sigma)
    out = np.where((x > 0.0) & (x < 1.0), omega * np.sin(np.pi * x) ** 2, 0.0)
    return float(out) if np.ndim(t) == 0 else out


def pulse_derivative(pulses: PulseSchedule, which, t):
    """d Omega_j / dt in rad/us^2; zero outside the support window."""
    omega, t0 = _pulse_params(pulses, which)
    tt = np.asarray(t, dtype=float)
    x = (tt - t0) / (2.0 * pulses.sigma)
    slope = omega * (np.pi / (2.0 * pulses.sigma)) * np.sin(np.pi * (tt - t0) / pulses.sigma)
    out = np.where((x > 0.0) & (x < 1.0), slope, 0.0)
    return float(out) if np.ndim(t) == 0 else out


class CollectiveBasis:
    """Permutation-symmetric states |n_g, n_e, n_r> with at most one Rydberg atom.

    Ordering is fixed for reproducibility: the n_r = 0 block with n_e = 0..N
    ascending, then the n_r = 1 block with n_e = 0..N-1 ascending, with
    n_g = N - n_e - n_r throughout.  Dimension is 2N + 1.
    """

    def __init__(self, n_atoms: int):
        if int(n_atoms) != n_atoms or n_atoms < 1:
            raise ValueError(f"n_atoms must be a positive integer, got {n_atoms!r}")
        self.n_atoms = int(n_atoms)
        n = self.n_atoms
        states = [(n - ne, ne, 0) for ne in range(n + 1)]
        states += [(n - 1 - ne, ne, 1) for ne in range(n)]
        self.states: tuple[tuple[int, int, int], ...] = tuple(states)
        self._index = {s: i for i, s in enumerate(states)}
        arr = np.array(states, dtype=np.intp)
        self.n_g = arr[:, 0]
        self.n_e = arr[:, 1]
        self.n_r = arr[:, 2]

    @property
    def dim(self) -> int:
        return 2 * self.n_atoms + 1

    def __len__(self) -> int:
        return self.dim

    def index_of(self, n_g: int, n_e: int, n_r: int) -> int:
        """Exact index lookup; raises KeyError for triples outside the basis."""
        try:
            return self._index[(n_g, n_e, n_r)]
        except KeyError:
            raise KeyError(
                f"no state |{n_g},{n_e},{n_r}> in the N={self.n_atoms} basis"
            ) from None

    @property
    def all_ground_index(self) -> int:
        """Index of |N, 0, 0> (first state by construction)."""
        return 0

    @cached_property
    def _couplings(self):
        # (i, j, amp) triples for the two coupling families; each unordered
        # pair is generated exactly once, from its higher-n_e member.
        jx_i, jx_j, jx_a = [], [], []
        jc_i, jc_j, jc_a = [], [], []
        for i, (ng, ne, nr) in enumerate(self.states):
            if ne < 1:
                continue
            jx_i.append(i)
            jx_j.append(self.index_of(ng + 1, ne - 1, nr))
            jx_a.append(math.sqrt((ng + 1) * ne))
            if nr == 0:
                jc_i.append(i)
                jc_j.append(self.index_of(ng, ne - 1, 1))
                jc_a.append(math.sqrt(ne))
        as_arrays = lambda idx, jdx, amp: (
            np.asarray(idx, dtype=np.intp),
            np.asarray(jdx, dtype=np.intp),
            np.asarray(amp, dtype=float),
        )
        return as_arrays(jx_i, jx_j, jx_a), as_arrays(jc_i, jc_j, jc_a)


def build_basis(n_atoms: int) -> CollectiveBasis:
    """Enumerate the blockaded collective basis for n_atoms >= 1."""
    return CollectiveBasis(n_atoms)


def collective_hamiltonian(
    basis: CollectiveBasis, omega_1: float, omega_r: float
) -> np.ndarray:
    """Real symmetric H for instantaneous Rabi values (rad/us).

    Nonzero elements: <n_g+1, n_e-1, n_r|H|n_g, n_e, n_r> = -omega_1/2 *
    sqrt((n_g+1) n_e) and <n_g, n_e-1, 1|H|n_g, n_e, 0> = -omega_r/2 *
    sqrt(n_e), plus symmetric transposes.  The diagonal is zero.
    """
    (jx_i, jx_j, jx_a), (jc_i, jc_j, jc_a) = basis._couplings
    h = np.zeros((basis.dim, basis.dim))
    if jx_i.size:
        vals = -0.5 * omega_1 * jx_a
        h[jx_i, jx_j] = vals
        h[jx_j, jx_i] = vals
    if jc_i.size:
        vals = -0.5 * omega_r * jc_a
        h[jc_i, jc_j] = vals
        h[jc_j, jc_i] = vals
    return h


class HamiltonianOperator:
    """Time-dependent collective Hamiltonian H(t) on a fixed basis.

    Stateless after construction: matrix(t) and derivative(t) are pure
    functions of t and safe for concurrent read-only use.
    """

    def __init__(self, basis: CollectiveBasis, pulses: PulseSchedule):
        self.basis = basis
        self.pulses = pulses

    @property
    def dim(self) -> int:
        return self.basis.dim

    def matrix(self, t: float) -> np.ndarray:
        """H(t) in rad/us (real symmetric)."""
        return collective_hamiltonian(
            self.basis,
            pulse_value(self.pulses, "1", t),
            pulse_value(self.pulses, "r", t),
        )

    def derivative(self, t: float) -> np.ndarray:
        """dH/dt in rad/us^2; same sparsity pattern as matrix(t)."""
        return collective_hamiltonian(
            self.basis,
            pulse_derivative(self.pulses, "1", t),
            pulse_derivative(self.pulses, "r", t),
        )


def hamiltonian_at(op: HamiltonianOperator, t: float) -> np.ndarray:
    return op.matrix(t)


def hamiltonian_derivative_at(op: HamiltonianOperator, t: float) -> np.ndarray:
    return op.derivative(t)
