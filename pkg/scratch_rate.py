"""Where does R(t) peak, and which levels carry the dark-state coupling?"""
import numpy as np

from rydstirap import (
    HamiltonianOperator, build_basis, make_schedule, diagonalize,
    dark_state_rate, fit_power_law,
)

sched = make_schedule()


def rate(op, t):
    snap = diagonalize(op, t)
    return dark_state_rate(snap, op.derivative(t))


print("R(t) peak per N:")
peaks = []
for n in (10, 20, 30, 40, 50):
    op = HamiltonianOperator(build_basis(n), sched)
    ts = np.arange(1.15, 2.2, 0.001)
    rs = np.array([rate(op, t) for t in ts])
    i = int(np.argmax(rs))
    peaks.append((n, ts[i], rs[i]))
    print(f"  N={n:3d} t_peak={ts[i]:.4f} R_peak={rs[i]:.4f}")

arr = np.array(peaks)
fit = fit_power_law(arr[:, 0], arr[:, 2])
print("R peak exponent vs N:", round(fit.exponent, 4))

# coupling-weighted analysis at the N=10 minimum-gap point and at 1.53
op = HamiltonianOperator(build_basis(10), sched)
for t in (1.53, 1.5546, 1.60):
    snap = diagonalize(op, t)
    dh = op.derivative(t)
    c = snap.eigenvectors.T @ (dh @ snap.dark_state)
    w = snap.eigenvalues
    dark = snap.dark_index
    idx = np.argsort(np.abs(w - w[dark]))
    print(f"\nN=10 t={t}: levels by distance from zero (energy, |coupling|):")
    for k in idx[1:6]:
        print(f"   eps={w[k]:9.4f}  |<n|dH|0>|={abs(c[k]):9.4f}")
