"""Fine structure of the low spectrum: local minima of the nearest gap."""
import numpy as np

from rydstirap import HamiltonianOperator, build_basis, make_schedule

sched = make_schedule()


def smallest_pos(op, t, k=4):
    w = np.linalg.eigvalsh(op.matrix(t))
    pos = np.sort(w[w > 1e-12])
    return pos[:k]


for n in (10, 20, 50):
    op = HamiltonianOperator(build_basis(n), sched)
    ts = np.arange(1.15, 2.4, 0.002)
    lam1 = np.array([smallest_pos(op, t, 1)[0] for t in ts])
    # local minima of lam1
    mins = [
        (ts[i], lam1[i])
        for i in range(1, len(ts) - 1)
        if lam1[i] < lam1[i - 1] and lam1[i] < lam1[i + 1]
    ]
    print(f"N={n}: local minima of nearest gap:")
    for t, g in mins[:8]:
        print(f"   t={t:.3f} gap={g:.4f}")

# look at the lowest 4 positive levels near the crossing for N=10
op = HamiltonianOperator(build_basis(10), sched)
print("\nN=10 lowest positive levels:")
for t in np.arange(1.40, 1.80, 0.025):
    print(f"  t={t:.3f} " + " ".join(f"{v:8.4f}" for v in smallest_pos(op, t)))
