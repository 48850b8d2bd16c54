"""Sensitivity of t_c(N=10) to schedule parameters; hunt for the paper's 1.53."""
import numpy as np

from rydstirap import HamiltonianOperator, build_basis, make_schedule, find_critical_time


def tc(n, sigma, sep):
    sched = make_schedule(sigma=sigma, separation=sep)
    op = HamiltonianOperator(build_basis(n), sched)
    try:
        p = find_critical_time(op, refine_tol=1e-5, n_scan=401)
        return p.t_c, p.gap_min
    except Exception as e:
        return float("nan"), float("nan")


print("fix sep+2*sigma=4.1, vary sigma:")
for sigma in (1.3, 1.4, 1.45, 1.5, 1.55, 1.6, 1.7):
    sep = 4.1 - 2 * sigma
    t, g = tc(10, sigma, sep)
    print(f"  sigma={sigma:.2f} sep={sep:.2f}: t_c={t:.4f} gap={g:.3f}")

print("fix sigma=1.5, vary sep:")
for sep in (0.9, 1.0, 1.05, 1.1, 1.15, 1.2, 1.3):
    t, g = tc(10, 1.5, sep)
    print(f"  sep={sep:.2f}: t_c={t:.4f} gap={g:.3f}")

print("unequal amplitudes (ratio r = omega_r_max / omega_1_max), sigma=1.5 sep=1.1:")
from rydstirap import PulseSchedule, HamiltonianOperator as HO, build_basis as bb
from rydstirap import find_critical_time as fct
for ratio in (0.8, 0.9, 1.1, 1.25):
    sched = PulseSchedule(62.83185307179586, 62.83185307179586 * ratio, 1.5, 0.0, 1.1)
    op = HO(bb(10), sched)
    p = fct(op, refine_tol=1e-5, n_scan=401)
    print(f"  ratio={ratio}: t_c={p.t_c:.4f} gap={p.gap_min:.3f}")
