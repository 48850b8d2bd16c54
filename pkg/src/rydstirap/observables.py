"""Collective spin operators, variances, macroscopicity, and parity diagnostics.

J_x, J_y, J_z act on the g-e manifold only and are block diagonal over the
two Rydberg sectors; the sector spins are J = N/2 (n_r = 0) and (N-1)/2
(n_r = 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SectorMixed
from .model import CollectiveBasis

__all__ = [
    "SpinOperatorSet",
    "VarianceSeries",
    "SumRuleResult",
    "build_spin_operators",
    "variance",
    "spin_covariance",
    "effective_size",
    "total_spin_sum_rule",
    "rydberg_parity",
    "variance_series",
]

SECTOR_TOL = 1e-10


@dataclass(frozen=True)
class SpinOperatorSet:
    """Collective spin matrices on the blockaded basis.

    jx and jz are real symmetric, jy is purely imaginary Hermitian, and
    rydberg_number is the diagonal n_r counter.
    """

    basis: CollectiveBasis
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray
    rydberg_number: np.ndarray


def build_spin_operators(basis: CollectiveBasis) -> SpinOperatorSet:
    """Assemble J_x, J_y, J_z and n_r from the bosonic ladder algebra.

    The triple satisfies [J_x, J_y] = i J_z and cyclic permutations on each
    fixed-n_r sector.
    """
    dim = basis.dim
    jx = np.zeros((dim, dim))
    jy = np.zeros((dim, dim), dtype=complex)
    for i, (ng, ne, nr) in enumerate(basis.states):
        if ne < 1:
            continue
        j = basis.index_of(ng + 1, ne - 1, nr)
        amp = 0.5 * math.sqrt((ng + 1) * ne)
        jx[i, j] = jx[j, i] = amp
        jy[j, i] = 1j * amp
        jy[i, j] = -1j * amp
    jz = np.diag(0.5 * (basis.n_e - basis.n_g).astype(float))
    n_r = np.diag(basis.n_r.astype(float))
    return SpinOperatorSet(basis, jx, jy, jz, n_r)


def _amplitudes(state) -> np.ndarray:
    return np.asarray(getattr(state, "amplitudes", state))


def variance(state, operator: np.ndarray) -> float:
    """Var(A) = <A^2> - <A>^2 for a Hermitian operator; clipped at zero."""
    psi = _amplitudes(state)
    w = operator @ psi
    mean = float(np.real(np.vdot(psi, w)))
    second = float(np.real(np.vdot(w, w)))
    return max(second - mean * mean, 0.0)


def spin_covariance(state, ops: SpinOperatorSet) -> np.ndarray:
    """Symmetrized 3x3 covariance of (J_x, J_y, J_z)."""
    psi = _amplitudes(state)
    ws = [ops.jx @ psi, ops.jy @ psi, ops.jz @ psi]
    means = [float(np.real(np.vdot(psi, w))) for w in ws]
    cov = np.empty((3, 3))
    for a in range(3):
        for b in range(a, 3):
            sym = 0.5 * float(np.real(np.vdot(ws[a], ws[b]) + np.vdot(ws[b], ws[a])))
            cov[a, b] = cov[b, a] = sym - means[a] * means[b]
    return cov


def effective_size(state, ops: SpinOperatorSet) -> float:
    """Largest Var(2 n.J)/N over collective spin directions n on the g-e manifold.

    This restricted maximization equals 4 lambda_max(covariance)/N and is a
    lower bound to the unrestricted single-particle-operator definition.
    """
    cov = spin_covariance(state, ops)
    lam_max = float(np.linalg.eigvalsh(cov)[-1])
    return 4.0 * lam_max / ops.basis.n_atoms


@dataclass(frozen=True)
class SumRuleResult:
    """Per-sector transverse-spin sum rule and Casimir residuals."""

    sector: int
    spin_j: float
    transverse_sum: float  # <Jy^2> + <Jz^2>
    sum_rule_residual: float  # transverse_sum - J(J+1)
    casimir_residual: float  # <Jx^2 + Jy^2 + Jz^2> - J(J+1)


def _sector_result(psi: np.ndarray, sector: int, ops: SpinOperatorSet) -> SumRuleResult:
    n = ops.basis.n_atoms
    spin_j = 0.5 * n if sector == 0 else 0.5 * (n - 1)
    jx2 = float(np.real(np.vdot(ops.jx @ psi, ops.jx @ psi)))
    jy2 = float(np.real(np.vdot(ops.jy @ psi, ops.jy @ psi)))
    jz2 = float(np.real(np.vdot(ops.jz @ psi, ops.jz @ psi)))
    casimir = spin_j * (spin_j + 1.0)
    return SumRuleResult(
        sector=sector,
        spin_j=spin_j,
        transverse_sum=jy2 + jz2,
        sum_rule_residual=jy2 + jz2 - casimir,
        casimir_residual=jx2 + jy2 + jz2 - casimir,
    )


def total_spin_sum_rule(
    state, ops: SpinOperatorSet, sector_tol: float = SECTOR_TOL
) -> SumRuleResult:
    """Evaluate <Jy^2> + <Jz^2> against J(J+1) in the state's Rydberg sector.

    Raises SectorMixed when the state populates both sectors beyond
    sector_tol; the exception carries renormalized per-sector results.
    """
    psi = _amplitudes(state)
    mask1 = ops.basis.n_r == 1
    p1 = float(np.sum(np.abs(psi[mask1]) ** 2))
    p0 = float(np.sum(np.abs(psi[~mask1]) ** 2))
    if min(p0, p1) > sector_tol:
        per_sector = {}
        for sector, mask, pop in ((0, ~mask1, p0), (1, mask1, p1)):
            proj = np.where(mask, psi, 0.0) / math.sqrt(pop)
            per_sector[sector] = _sector_result(proj, sector, ops)
        raise SectorMixed((p0, p1), per_sector)
    sector = 0 if p0 >= p1 else 1
    return _sector_result(psi, sector, ops)


def rydberg_parity(state, ops: SpinOperatorSet) -> float:
    """Mean Rydberg occupation <n_r> in [0, 1]."""
    psi = _amplitudes(state)
    return float(np.sum(np.abs(psi) ** 2 * ops.basis.n_r))


@dataclass
class VarianceSeries:
    """Collective-spin variances and related diagnostics along a state series."""

    times: np.ndarray
    var_jx: np.ndarray
    var_jy: np.ndarray
    var_jz: np.ndarray
    mean_nr: np.ndarray
    n_eff: np.ndarray


def variance_series(times, states, ops: SpinOperatorSet) -> VarianceSeries:
    """Evaluate the VarianceSeries diagnostics for states on a time grid."""
    times = np.asarray(times, dtype=float)
    vectors = [_amplitudes(s) for s in states]
    if len(vectors) != times.size:
        raise ValueError("number of states does not match the time grid")
    m = times.size
    out = {name: np.empty(m) for name in ("vx", "vy", "vz", "nr", "neff")}
    for i, psi in enumerate(vectors):
        out["vx"][i] = variance(psi, ops.jx)
        out["vy"][i] = variance(psi, ops.jy)
        out["vz"][i] = variance(psi, ops.jz)
        out["nr"][i] = rydberg_parity(psi, ops)
        out["neff"][i] = effective_size(psi, ops)
    return VarianceSeries(times, out["vx"], out["vy"], out["vz"], out["nr"], out["neff"])
