"""Propagation checks: dynamic lag, STA property, oracle accuracy, convergence."""
import time

import numpy as np
from scipy.linalg import expm

from rydstirap import (
    HamiltonianOperator, build_basis, make_schedule, track_dark_state,
    tracking_grid, QuantumState, StepControls, propagate,
    propagate_counterdiabatic, overlap_fidelity, CounterdiabaticDrive,
    build_spin_operators, variance,
)

sched = make_schedule()

# --- criterion 4: dynamic lag N=10
t0 = time.perf_counter()
op = HamiltonianOperator(build_basis(10), sched)
grid = tracking_grid(sched, 801)
dark = track_dark_state(op, grid)
psi0 = QuantumState(dark[0].dark_state.astype(complex), grid[0])
traj = propagate(op, psi0, grid, StepControls(max_step=1e-3))
ops = build_spin_operators(op.basis)
v_dyn = variance(traj.amplitudes[-1], ops.jx)
v_ad = variance(dark[-1].dark_state, ops.jx)
fid = overlap_fidelity(traj, dark)
print(f"N=10 fast: var_dyn(end)={v_dyn:.4f} var_ad(end)={v_ad:.2e} "
      f"F_end={fid[-1]:.4f} F_min={fid.min():.4f} drift={traj.norm_drift:.2e} "
      f"({time.perf_counter()-t0:.1f}s)")

# --- criterion 10: STA at N=6
t0 = time.perf_counter()
op6 = HamiltonianOperator(build_basis(6), sched)
grid6 = tracking_grid(sched, 801)
dark6 = track_dark_state(op6, grid6)
psi06 = QuantumState(dark6[0].dark_state.astype(complex), grid6[0])
cd = CounterdiabaticDrive(op6, gap_floor=1e-3)
traj_cd = propagate_counterdiabatic(op6, cd, psi06, grid6, StepControls(max_step=1e-3))
f_cd = overlap_fidelity(traj_cd, dark6)
traj_plain = propagate(op6, psi06, grid6, StepControls(max_step=1e-3))
f_plain = overlap_fidelity(traj_plain, dark6)
print(f"N=6 fast: CD min F={f_cd.min():.6f}; no-CD min F={f_plain.min():.4f} "
      f"({time.perf_counter()-t0:.1f}s)")

# --- criterion 11: oracle comparison N=4
t0 = time.perf_counter()
op4 = HamiltonianOperator(build_basis(4), sched)
tspan = (0.0, 4.1)
psi0 = np.zeros(op4.dim, complex); psi0[0] = 1.0
controls = StepControls(max_step=5e-3)
traj4 = propagate(op4, QuantumState(psi0, 0.0), np.array(tspan), controls)
# piecewise-constant expm oracle on 100x finer grid
n_fine = int(round((tspan[1]-tspan[0]) / controls.max_step)) * 100
ts = np.linspace(tspan[0], tspan[1], n_fine + 1)
psi = psi0.copy()
for a, b in zip(ts[:-1], ts[1:]):
    psi = expm(-1j * op4.matrix(0.5 * (a + b)) * (b - a)) @ psi
err = np.linalg.norm(traj4.amplitudes[-1] - psi)
print(f"N=4 oracle err={err:.2e} ({time.perf_counter()-t0:.1f}s)")

# --- convergence contract: halving max_step changes final state by <= 1e-7
t0 = time.perf_counter()
tgrid = np.array([0.0, 4.1])
final = {}
for ms in (2e-3, 1e-3, 5e-4):
    tr = propagate(op4, QuantumState(psi0, 0.0), tgrid, StepControls(max_step=ms))
    final[ms] = tr.amplitudes[-1]
print("dz(2e-3 -> 1e-3) =", np.linalg.norm(final[2e-3]-final[1e-3]),
      " dz(1e-3 -> 5e-4) =", np.linalg.norm(final[1e-3]-final[5e-4]))

# --- integrator order measurement (gl4 and midpoint), N=2
op2 = HamiltonianOperator(build_basis(2), sched)
psi0 = np.zeros(op2.dim, complex); psi0[0] = 1.0
ref = propagate(op2, QuantumState(psi0, 0.0), np.array([1.2, 2.2]),
                StepControls(max_step=1e-5)).amplitudes[-1]
for scheme in ("gl4", "midpoint"):
    errs = []
    steps = (4e-2, 2e-2, 1e-2) if scheme == "gl4" else (4e-3, 2e-3, 1e-3)
    for ms in steps:
        tr = propagate(op2, QuantumState(psi0, 1.2), np.array([1.2, 2.2]),
                       StepControls(max_step=ms, scheme=scheme))
        errs.append(np.linalg.norm(tr.amplitudes[-1] - ref))
    orders = np.log2(np.array(errs[:-1]) / np.array(errs[1:]))
    print(f"{scheme}: errors={['%.3e' % e for e in errs]} orders={np.round(orders, 2)}")
print(f"({time.perf_counter()-t0:.1f}s)")
