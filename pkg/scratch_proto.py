"""Scratch prototype checks (deleted before finishing)."""
import time

import numpy as np

from rydstirap import (
    HamiltonianOperator, build_basis, make_schedule, diagonalize,
    find_critical_time, fit_gap_scaling, track_dark_state, tracking_grid,
    build_spin_operators, variance, rydberg_parity, total_spin_sum_rule,
    effective_size,
)

sched = make_schedule()  # fig2 defaults: omega=2pi*10, sigma=1.5, sep=1.1
print("window:", sched.window, "overlap:", sched.overlap_window)

# --- critical time N=10
t0 = time.perf_counter()
op10 = HamiltonianOperator(build_basis(10), sched)
prof = find_critical_time(op10)
print(f"N=10 t_c={prof.t_c:.5f} gap_min={prof.gap_min:.5f}  ({time.perf_counter()-t0:.2f}s)")

# --- gap scaling
t0 = time.perf_counter()
fit = fit_gap_scaling([10, 20, 30, 40, 50], sched)
print(f"gap exponent={fit.exponent:.4f} prefactor={fit.prefactor:.3f} rms={fit.residual_rms:.2e} ({time.perf_counter()-t0:.2f}s)")

# --- track dark state N=10, check parity + variance endpoints
t0 = time.perf_counter()
grid = tracking_grid(sched, 601)
snaps = track_dark_state(op10, grid)
ops10 = build_spin_operators(build_basis(10))
v0 = variance(snaps[0].dark_state, ops10.jx)
vend = variance(snaps[-1].dark_state, ops10.jx)
vmax = max(variance(s.dark_state, ops10.jx) for s in snaps)
print(f"track N=10: var_jx start={v0:.6f} (N/4={2.5}) end={vend:.3e} max={vmax:.2f} ({time.perf_counter()-t0:.2f}s)")
print("  parity end:", rydberg_parity(snaps[-1].dark_state, ops10))
sr = total_spin_sum_rule(snaps[-1].dark_state, ops10)
print("  sum rule:", sr.transverse_sum, "resid:", sr.sum_rule_residual, "casimir:", sr.casimir_residual)
print("  n_eff end:", effective_size(snaps[-1].dark_state, ops10))

# odd N parity
op11 = HamiltonianOperator(build_basis(11), sched)
snaps11 = track_dark_state(op11, grid)
ops11 = build_spin_operators(build_basis(11))
print("N=11 parity end:", rydberg_parity(snaps11[-1].dark_state, ops11))

# --- var max scaling
t0 = time.perf_counter()
maxima = []
for n in (10, 20, 30, 40, 50):
    opn = HamiltonianOperator(build_basis(n), sched)
    opsn = build_spin_operators(build_basis(n))
    snapsn = track_dark_state(opn, grid)
    maxima.append(max(variance(s.dark_state, opsn.jx) for s in snapsn))
from rydstirap import fit_power_law
fitv = fit_power_law(np.array([10, 20, 30, 40, 50], float), np.array(maxima))
print(f"var max exponent={fitv.exponent:.4f} ({time.perf_counter()-t0:.1f}s)", maxima)

# --- minimum pair splitting across overlap grid (CD feasibility)
for n in (10, 30, 50):
    opn = HamiltonianOperator(build_basis(n), sched)
    lo, hi = sched.overlap_window
    worst = np.inf
    for t in np.linspace(lo, hi, 301):
        w = np.linalg.eigvalsh(opn.matrix(t))
        worst = min(worst, np.diff(w).min())
    print(f"N={n}: min pair splitting on overlap grid = {worst:.4e}")
