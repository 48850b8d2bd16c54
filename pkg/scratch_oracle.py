"""Tensor-product oracle check of the Hamiltonian assembly + gap study."""
import numpy as np

from rydstirap import (
    HamiltonianOperator, build_basis, make_schedule, collective_hamiltonian,
    gap_at, find_critical_time,
)


def oracle_hamiltonian(n_atoms, omega_1, omega_r):
    """Direct bosonic operator algebra on (g-mode) x (e-mode) x (Rydberg qubit)."""
    nb = n_atoms + 1
    b = np.diag(np.sqrt(np.arange(1, nb)), k=1)          # annihilation, Fock cutoff N
    ident = np.eye(nb)
    sm = np.array([[0.0, 1.0], [0.0, 0.0]])              # sigma-: |1> -> |0>
    sp = sm.T
    a_g = np.kron(np.kron(b, ident), np.eye(2))
    a_e = np.kron(np.kron(ident, b), np.eye(2))
    s_minus = np.kron(np.kron(ident, ident), sm)
    s_plus = np.kron(np.kron(ident, ident), sp)
    h_jx = -0.5 * omega_1 * (a_g.T @ a_e + a_g @ a_e.T)
    h_jc = -0.5 * omega_r * (a_e @ s_plus + a_e.T @ s_minus)
    h = h_jx + h_jc
    # restrict to n_g + n_e + n_r = N, ordered like CollectiveBasis
    basis = build_basis(n_atoms)
    idx = [(ng * nb + ne) * 2 + nr for (ng, ne, nr) in basis.states]
    return h[np.ix_(idx, idx)]


sched = make_schedule()
rng = np.random.default_rng(7)
worst = 0.0
for n in range(1, 13):
    basis = build_basis(n)
    for _ in range(5):
        o1, orr = rng.uniform(0, 70, size=2)
        h_main = collective_hamiltonian(basis, o1, orr)
        h_orac = oracle_hamiltonian(n, o1, orr)
        worst = max(worst, np.max(np.abs(h_main - h_orac)))
print("max |H - H_oracle| over N<=12:", worst)

# spectrum special cases
basis = build_basis(7)
w = np.linalg.eigvalsh(collective_hamiltonian(basis, 0.0, 50.0))
expect = sorted([0.0] + [s * 0.5 * 50.0 * np.sqrt(k) for k in range(1, 8) for s in (1, -1)])
print("JC-only spectrum err:", np.max(np.abs(w - np.array(expect))))
w = np.linalg.eigvalsh(collective_hamiltonian(basis, 50.0, 0.0))
ms = sorted([-50.0 * m for m in np.arange(-3.5, 4.0, 1.0)] + [-50.0 * m for m in np.arange(-3.0, 4.0, 1.0)])
print("Jx-only spectrum err:", np.max(np.abs(w - np.array(sorted(ms)))))

# gap landscape N=10
op10 = HamiltonianOperator(build_basis(10), sched)
ts = np.linspace(1.1, 3.0, 39)
print("gap(t) N=10:")
print(np.array2string(np.array([gap_at(op10, t) for t in ts]), precision=3, max_line_width=100))
prof = find_critical_time(op10, refine_tol=1e-6, n_scan=801)
print(f"refined: t_c={prof.t_c:.6f} gap={prof.gap_min:.6f}")
print("gap at 1.53:", gap_at(op10, 1.53), " at 1.5546:", gap_at(op10, 1.5546))

# N ladder incl large N: t_c and gap_min, local log-slope
ns = [10, 20, 30, 40, 50, 70, 100, 150, 200]
res = []
for n in ns:
    opn = HamiltonianOperator(build_basis(n), sched)
    p = find_critical_time(opn, refine_tol=1e-6, n_scan=401)
    res.append((n, p.t_c, p.gap_min))
    print(f"N={n:4d}  t_c={p.t_c:.5f}  gap_min={p.gap_min:.5f}")
arr = np.array(res)
slopes = np.diff(np.log(arr[:, 2])) / np.diff(np.log(arr[:, 0]))
print("pairwise log-slopes:", np.array2string(slopes, precision=3))
