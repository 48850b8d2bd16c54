"""Why did tracking break at N=20 with 601 points?"""
import numpy as np

from rydstirap import (
    HamiltonianOperator, build_basis, make_schedule, diagonalize,
    dark_state_rate, tracking_grid,
)

sched = make_schedule()
op = HamiltonianOperator(build_basis(20), sched)

grid = tracking_grid(sched, 601)
i0 = np.searchsorted(grid, 1.36)
i1 = np.searchsorted(grid, 1.41)
prev = None
print("t, overlap with previous dark, R(t):")
for t in grid[i0:i1]:
    snap = diagonalize(op, t)
    r = dark_state_rate(snap, op.derivative(t))
    if prev is not None:
        ov = abs(float(prev.dark_state @ snap.dark_state))
        print(f"  t={t:.5f} |ov|={ov:.4f} R={r:.2f}")
    prev = snap

# R profile shape for N=20 on a fine grid: count peaks
ts = np.arange(1.30, 1.60, 0.0005)
rs = []
for t in ts:
    snap = diagonalize(op, t)
    rs.append(dark_state_rate(snap, op.derivative(t)))
rs = np.array(rs)
peaks = [
    (ts[i], rs[i])
    for i in range(1, len(ts) - 1)
    if rs[i] > rs[i - 1] and rs[i] > rs[i + 1] and rs[i] > 20
]
print("R(t) peaks above 20 for N=20:")
for t, r in peaks:
    print(f"  t={t:.4f} R={r:.1f}")
