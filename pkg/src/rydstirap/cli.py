"""Experiment runner: one subcommand per reproducible figure-style experiment.

Subcommands: spectrum | evolve | criticality.  Each run writes CSV artifacts
(12 significant digits, byte-reproducible for identical configs), optional
SVG charts, and a manifest listing every artifact with its SHA-256; the
manifest is written last, so its presence marks a complete run.  Exit codes:
0 success, 2 configuration error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import __version__
from .criticality import (
    integrated_work,
    rate_profile,
    scaling_collapse,
    susceptibility_scan,
    CounterdiabaticDrive,
)
from .dynamics import QuantumState, StepControls, overlap_fidelity, propagate, propagate_counterdiabatic
from .errors import ConfigError, NoInteriorMinimum, SimulationError
from .fitting import fit_power_law
from .model import (
    OMEGA_2PI_10MHZ,
    HamiltonianOperator,
    PulseSchedule,
    build_basis,
)
from .observables import build_spin_operators, variance_series
from .spectral import find_critical_time, gap_at, track_dark_state, tracking_grid
from .svgplot import line_chart

__all__ = ["ExperimentConfig", "RunManifest", "cmd_spectrum", "cmd_evolve", "cmd_criticality", "main"]

ENV_MAX_WORKERS = "RYDSTIRAP_MAX_WORKERS"
EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL = 0, 2, 3

IDENTITY_REL_TOL = 1e-8


@dataclass(frozen=True)
class ExperimentConfig:
    """Validated parameters for one experiment run."""

    omega_max_1: float = OMEGA_2PI_10MHZ
    omega_max_r: float = OMEGA_2PI_10MHZ
    sigma_us: float = 1.5
    separation_us: float = 1.1
    t_start_r_us: float = 0.0
    atom_numbers: tuple[int, ...] = (10, 20, 30, 40, 50)
    susceptibility_atom_numbers: tuple[int, ...] = (50, 100, 150)
    n_time_points: int = 401
    susceptibility_points: int = 121
    margin_us: float | None = None
    max_step_us: float = 1e-3
    gap_floor: float = 1e-3
    refine_tol_us: float = 1e-4
    epsilon_scale: float = 0.01
    collapse_x_half: float = 10.0
    quad_rel_tol: float = 1e-3
    tau_us: float | None = None
    output_dir: str = "runs"
    seed: int = 20230817

    # nested config-file layout: section -> {file key -> dataclass field}
    _SECTIONS = {
        "schedule": {
            "omega_max_1": "omega_max_1",
            "omega_max_r": "omega_max_r",
            "sigma_us": "sigma_us",
            "separation_us": "separation_us",
            "t_start_r_us": "t_start_r_us",
        },
        "grid": {
            "n_points": "n_time_points",
            "susceptibility_points": "susceptibility_points",
            "margin_us": "margin_us",
        },
        "tolerances": {
            "max_step_us": "max_step_us",
            "gap_floor": "gap_floor",
            "refine_tol_us": "refine_tol_us",
            "epsilon_scale": "epsilon_scale",
            "collapse_x_half": "collapse_x_half",
            "quad_rel_tol": "quad_rel_tol",
        },
    }
    _TOP_KEYS = ("atom_numbers", "susceptibility_atom_numbers", "tau_us", "output_dir", "seed")

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        """Build from the nested file layout, rejecting unknown keys."""
        if not isinstance(data, dict):
            raise ConfigError("config root must be a JSON object")
        fields: dict = {}
        for key, value in data.items():
            if key in cls._SECTIONS:
                if not isinstance(value, dict):
                    raise ConfigError(f"section {key!r} must be an object")
                known = cls._SECTIONS[key]
                for sub, subval in value.items():
                    if sub not in known:
                        raise ConfigError(f"unknown key {key}.{sub!r}")
                    fields[known[sub]] = subval
            elif key in cls._TOP_KEYS:
                fields[key] = value
            else:
                raise ConfigError(f"unknown key {key!r}")
        if "atom_numbers" in fields:
            fields["atom_numbers"] = tuple(int(n) for n in fields["atom_numbers"])
        if "susceptibility_atom_numbers" in fields:
            fields["susceptibility_atom_numbers"] = tuple(
                int(n) for n in fields["susceptibility_atom_numbers"]
            )
        return cls(**fields)

    @classmethod
    def from_file(cls, path) -> "ExperimentConfig":
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file {path} is not valid JSON: {exc}") from exc
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        """Nested echo of the configuration (inverse of from_dict)."""
        out: dict = {}
        for section, mapping in self._SECTIONS.items():
            out[section] = {sub: getattr(self, field) for sub, field in mapping.items()}
        for key in self._TOP_KEYS:
            value = getattr(self, key)
            out[key] = list(value) if isinstance(value, tuple) else value
        return out

    def schedule(self) -> PulseSchedule:
        return PulseSchedule(
            omega_max_1=self.omega_max_1,
            omega_max_r=self.omega_max_r,
            sigma=self.sigma_us,
            t_start_r=self.t_start_r_us,
            t_start_1=self.t_start_r_us + self.separation_us,
        )

    def validate(self) -> None:
        """Check every statically checkable module precondition."""
        try:
            sched = self.schedule()
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        for name, values in (
            ("atom_numbers", self.atom_numbers),
            ("susceptibility_atom_numbers", self.susceptibility_atom_numbers),
        ):
            if not values:
                raise ConfigError(f"{name} must not be empty")
            if any(int(n) != n or n < 1 for n in values):
                raise ConfigError(f"{name} entries must be positive integers")
        if self.n_time_points < 16 or self.susceptibility_points < 16:
            raise ConfigError("time grids need at least 16 points")
        if self.margin_us is not None and not (
            0.0 < 2.0 * self.margin_us < sched.duration
        ):
            raise ConfigError("margin_us must be positive and fit inside the pulse window")
        for name in ("max_step_us", "gap_floor", "refine_tol_us", "epsilon_scale",
                     "collapse_x_half", "quad_rel_tol"):
            if not getattr(self, name) > 0.0:
                raise ConfigError(f"{name} must be positive")
        if self.tau_us is not None and not self.tau_us > sched.window[0]:
            raise ConfigError("tau_us must exceed the schedule start")
        if int(self.seed) != self.seed:
            raise ConfigError("seed must be an integer")
        if not str(self.output_dir):
            raise ConfigError("output_dir must be a nonempty path")

    def tau(self) -> float:
        return self.schedule().window[1] if self.tau_us is None else self.tau_us


@dataclass
class RunManifest:
    """Completion record: config echo, artifact hashes, timings, version."""

    command: str
    config: dict
    artifacts: list
    timings_s: dict
    version: str

    def write(self, out_dir: Path) -> Path:
        path = out_dir / f"manifest_{self.command}.json"
        payload = dataclasses.asdict(self)
        _atomic_write(path, json.dumps(payload, indent=2) + "\n")
        return path

    @staticmethod
    def load(out_dir: Path, command: str) -> "RunManifest | None":
        path = out_dir / f"manifest_{command}.json"
        if not path.exists():
            return None
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
            return RunManifest(**data)
        except (OSError, json.JSONDecodeError, TypeError):
            return None


def _sha256(path: Path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()


def _atomic_write(path: Path, text: str) -> None:
    tmp = path.with_name(path.name + f".tmp{os.getpid()}")
    try:
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)
    finally:
        tmp.unlink(missing_ok=True)


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def _csv_text(header: str, rows, footers=()) -> str:
    lines = [header]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    lines.extend(footers)
    return "\n".join(lines) + "\n"


def _write_csv(out_dir: Path, name: str, header: str, rows, footers=()) -> str:
    _atomic_write(out_dir / name, _csv_text(header, rows, footers))
    return name


def _resolve_workers(requested: int, n_jobs: int) -> int:
    cap_text = os.environ.get(ENV_MAX_WORKERS, "")
    cap = None
    if cap_text:
        try:
            cap = max(1, int(cap_text))
        except ValueError as exc:
            raise ConfigError(f"{ENV_MAX_WORKERS} must be an integer: {cap_text!r}") from exc
    workers = (os.cpu_count() or 1) if requested <= 0 else requested
    if cap is not None:
        workers = min(workers, cap)
    return max(1, min(workers, n_jobs))


def _run_jobs(fn, jobs, workers: int):
    if workers <= 1 or len(jobs) <= 1:
        return [fn(job) for job in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, jobs))


def _manifest_is_complete(out_dir: Path, command: str, config: ExperimentConfig) -> list | None:
    manifest = RunManifest.load(out_dir, command)
    if manifest is None or manifest.command != command:
        return None
    if manifest.config != config.to_dict():
        return None
    for entry in manifest.artifacts:
        path = out_dir / entry["path"]
        if not path.exists() or _sha256(path) != entry["sha256"]:
            return None
    return [entry["path"] for entry in manifest.artifacts]


def _finalize(out_dir: Path, command: str, config: ExperimentConfig,
              written: list, timings: dict) -> list:
    artifacts = [
        {"path": name, "sha256": _sha256(out_dir / name), "bytes": (out_dir / name).stat().st_size}
        for name in sorted(written)
    ]
    manifest = RunManifest(
        command=command,
        config=config.to_dict(),
        artifacts=artifacts,
        timings_s={k: round(v, 3) for k, v in timings.items()},
        version=__version__,
    )
    manifest.write(out_dir)
    return [entry["path"] for entry in artifacts]


def _cleanup(out_dir: Path, written: list) -> None:
    for name in written:
        (out_dir / name).unlink(missing_ok=True)


# ---------------------------------------------------------------------------
# spectrum
# ---------------------------------------------------------------------------

def _spectrum_job(args):
    config, n, svg = args
    t0 = time.perf_counter()
    sched = config.schedule()
    op = HamiltonianOperator(build_basis(n), sched)
    lo, hi = sched.window
    ts = np.linspace(lo, hi, config.n_time_points)
    eigenrows = [np.linalg.eigvalsh(op.matrix(t)) for t in ts]
    grid = tracking_grid(sched, config.n_time_points, config.margin_us)
    gaps = [gap_at(op, t) for t in grid]
    try:
        profile = find_critical_time(op, refine_tol=config.refine_tol_us)
    except NoInteriorMinimum:
        # small N: the gap dips only between the pulse peaks (e.g. N=1)
        peaks = (sched.t_start_r + sched.sigma, sched.t_start_1 + sched.sigma)
        profile = find_critical_time(op, window=peaks, refine_tol=config.refine_tol_us)

    out_dir = Path(config.output_dir)
    written = []
    header = "t_us," + ",".join(f"eig_{k}" for k in range(op.dim))
    written.append(_write_csv(
        out_dir, f"spectrum_N{n}.csv", header,
        ([t, *row] for t, row in zip(ts, eigenrows)),
    ))
    written.append(_write_csv(
        out_dir, f"gap_N{n}.csv", "t_us,gap", zip(grid, gaps),
    ))
    if svg:
        eig = np.array(eigenrows)
        line_chart(
            out_dir / f"spectrum_N{n}.svg",
            [(ts, eig[:, k], "") for k in range(eig.shape[1])],
            title=f"energy spectrum, N={n}", xlabel="t (us)", ylabel="energy (rad/us)",
        )
        written.append(f"spectrum_N{n}.svg")
    return {"n": n, "t_c": profile.t_c, "gap_min": profile.gap_min,
            "written": written, "seconds": time.perf_counter() - t0}


def cmd_spectrum(config: ExperimentConfig, force: bool = False, svg: bool = False,
                 workers: int = 1) -> list:
    """Spectrum vs time, gap profiles, and the gap-scaling fit for each N."""
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    existing = None if force else _manifest_is_complete(out_dir, "spectrum", config)
    if existing is not None:
        print("spectrum: complete manifest found, nothing to do (use --force to rerun)")
        return existing

    written: list = []
    timings: dict = {}
    try:
        jobs = [(config, n, svg) for n in config.atom_numbers]
        results = _run_jobs(_spectrum_job, jobs, _resolve_workers(workers, len(jobs)))
        rows = []
        for res in results:
            written.extend(res["written"])
            timings[f"spectrum_N{res['n']}"] = res["seconds"]
            rows.append((res["n"], res["t_c"], res["gap_min"]))

        ns = [r[0] for r in rows]
        footers = []
        if len(set(ns)) >= 4:
            fit = fit_power_law(np.array(ns, float), np.array([r[2] for r in rows]))
            footers.append(
                f"# fit_exponent={_fmt(fit.exponent)} prefactor={_fmt(fit.prefactor)} "
                f"residual_rms={_fmt(fit.residual_rms)}"
            )
        else:
            footers.append("# fit_exponent skipped: need at least 4 distinct atom numbers")
        written.append(_write_csv(out_dir, "gap_scaling.csv", "N,t_c_us,gap_min", rows, footers))
        if svg and len(ns) >= 2:
            line_chart(
                out_dir / "gap_scaling.svg",
                [(np.array(ns, float), np.array([r[2] for r in rows]), "gap_min")],
                title="minimum gap vs N", xlabel="N", ylabel="gap (rad/us)",
                log_x=True, log_y=True,
            )
            written.append("gap_scaling.svg")
    except BaseException:
        _cleanup(out_dir, written)
        raise
    return _finalize(out_dir, "spectrum", config, written, timings)


# ---------------------------------------------------------------------------
# evolve
# ---------------------------------------------------------------------------

def _evolve_job(args):
    config, n, cd_on, svg = args
    t0 = time.perf_counter()
    sched = config.schedule()
    basis = build_basis(n)
    op = HamiltonianOperator(basis, sched)
    ops = build_spin_operators(basis)
    grid = tracking_grid(sched, config.n_time_points, config.margin_us)
    dark = track_dark_state(op, grid)
    initial = QuantumState(dark[0].dark_state.astype(complex), grid[0])
    controls = StepControls(max_step=config.max_step_us)
    traj = propagate(op, initial, grid, controls)
    fidelity = overlap_fidelity(traj, dark)
    columns = {"F": fidelity}
    if cd_on:
        cd = CounterdiabaticDrive(op, config.gap_floor)
        cd_traj = propagate_counterdiabatic(op, cd, initial, grid, controls)
        columns["F_cd"] = overlap_fidelity(cd_traj, dark)
    dark_series = variance_series(grid, [s.dark_state for s in dark], ops)
    dyn_series = variance_series(grid, traj.amplitudes, ops)

    out_dir = Path(config.output_dir)
    written = []
    header = "t_us," + ",".join(columns)
    written.append(_write_csv(
        out_dir, f"fidelity_N{n}.csv", header,
        ([t, *(columns[k][i] for k in columns)] for i, t in enumerate(grid)),
    ))
    written.append(_write_csv(
        out_dir, f"variances_N{n}.csv",
        "t_us,var_jx_dynamic,var_jx_adiabatic,mean_nr,n_eff",
        zip(grid, dyn_series.var_jx, dark_series.var_jx,
            dyn_series.mean_nr, dyn_series.n_eff),
    ))
    if svg:
        series = [(grid, fidelity, "F")]
        if cd_on:
            series.append((grid, columns["F_cd"], "F_cd"))
        line_chart(out_dir / f"fidelity_N{n}.svg", series,
                   title=f"dark-state fidelity, N={n}", xlabel="t (us)", ylabel="F")
        written.append(f"fidelity_N{n}.svg")
        line_chart(
            out_dir / f"variances_N{n}.svg",
            [(grid, dyn_series.var_jx, "dynamic"), (grid, dark_series.var_jx, "adiabatic")],
            title=f"Var(J_x), N={n}", xlabel="t (us)", ylabel="Var(J_x)",
        )
        written.append(f"variances_N{n}.svg")
    return {"n": n, "written": written, "seconds": time.perf_counter() - t0}


def cmd_evolve(config: ExperimentConfig, cd_flag: bool = False, force: bool = False,
               svg: bool = False, workers: int = 1) -> list:
    """Schroedinger evolution vs the adiabatic dark path for each N."""
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    command = "evolve_cd" if cd_flag else "evolve"
    existing = None if force else _manifest_is_complete(out_dir, command, config)
    if existing is not None:
        print(f"{command}: complete manifest found, nothing to do (use --force to rerun)")
        return existing

    written: list = []
    timings: dict = {}
    try:
        jobs = [(config, n, cd_flag, svg) for n in config.atom_numbers]
        results = _run_jobs(_evolve_job, jobs, _resolve_workers(workers, len(jobs)))
        for res in results:
            written.extend(res["written"])
            timings[f"evolve_N{res['n']}"] = res["seconds"]
    except BaseException:
        _cleanup(out_dir, written)
        raise
    return _finalize(out_dir, command, config, written, timings)


# ---------------------------------------------------------------------------
# criticality
# ---------------------------------------------------------------------------

def _rate_job(args):
    config, n, svg = args
    t0 = time.perf_counter()
    sched = config.schedule()
    op = HamiltonianOperator(build_basis(n), sched)
    lo, hi = sched.overlap_window
    grid = np.linspace(lo, hi, config.n_time_points)
    profile = rate_profile(op, grid, config.gap_floor)
    floor = IDENTITY_REL_TOL * max(float(profile.rate.max()), 1.0)
    mismatch = np.abs(profile.rate - profile.work_fluct)
    if np.any(mismatch > IDENTITY_REL_TOL * profile.rate + floor * 1e-4):
        i = int(np.argmax(mismatch))
        raise SimulationError(
            f"work-fluctuation identity violated at t={grid[i]:.6g} "
            f"(R={profile.rate[i]:.6g}, work={profile.work_fluct[i]:.6g})"
        )
    integral = integrated_work(op, tau=config.tau(), gap_floor=config.gap_floor,
                               rel_tol=config.quad_rel_tol)

    out_dir = Path(config.output_dir)
    written = [_write_csv(
        out_dir, f"rate_N{n}.csv", "t_us,R,work_fluct",
        zip(grid, profile.rate, profile.work_fluct),
    )]
    return {"n": n, "integral": integral, "written": written,
            "rate": profile.rate, "grid": grid, "seconds": time.perf_counter() - t0}


def _susceptibility_job(args):
    config, n, svg = args
    t0 = time.perf_counter()
    sched = config.schedule()
    op = HamiltonianOperator(build_basis(n), sched)
    profile = susceptibility_scan(
        op,
        x_half=config.collapse_x_half,
        n_points=config.susceptibility_points,
        epsilon=config.epsilon_scale / n,
        refine_tol=config.refine_tol_us,
    )
    out_dir = Path(config.output_dir)
    written = [_write_csv(
        out_dir, f"susceptibility_N{n}.csv", "t_us,S",
        zip(profile.times, profile.values),
        [f"# t_N_us={_fmt(profile.t_min)} S_min={_fmt(profile.s_min)} "
         f"epsilon_us={_fmt(profile.epsilon)}"],
    )]
    return {"n": n, "profile": profile, "written": written,
            "seconds": time.perf_counter() - t0}


def cmd_criticality(config: ExperimentConfig, force: bool = False, svg: bool = False,
                    workers: int = 1) -> list:
    """Rate of change, work-fluctuation scaling, and susceptibility collapse."""
    out_dir = Path(config.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    existing = None if force else _manifest_is_complete(out_dir, "criticality", config)
    if existing is not None:
        print("criticality: complete manifest found, nothing to do (use --force to rerun)")
        return existing

    written: list = []
    timings: dict = {}
    try:
        jobs = [(config, n, svg) for n in config.atom_numbers]
        rate_results = _run_jobs(_rate_job, jobs, _resolve_workers(workers, len(jobs)))
        rows = []
        for res in rate_results:
            written.extend(res["written"])
            timings[f"rate_N{res['n']}"] = res["seconds"]
            rows.append((res["n"], res["integral"]))
        footers = []
        if len({r[0] for r in rows}) >= 4:
            fit = fit_power_law(np.array([r[0] for r in rows], float),
                                np.array([r[1] for r in rows]))
            footers.append(
                f"# alpha={_fmt(fit.exponent)} prefactor={_fmt(fit.prefactor)} "
                f"residual_rms={_fmt(fit.residual_rms)}"
            )
        else:
            footers.append("# alpha skipped: need at least 4 distinct atom numbers")
        written.append(_write_csv(out_dir, "work_scaling.csv", "N,integrated_work",
                                  rows, footers))

        sjobs = [(config, n, svg) for n in config.susceptibility_atom_numbers]
        s_results = _run_jobs(_susceptibility_job, sjobs,
                              _resolve_workers(workers, len(sjobs)))
        profiles = []
        for res in s_results:
            written.extend(res["written"])
            timings[f"susceptibility_N{res['n']}"] = res["seconds"]
            profiles.append(res["profile"])

        if len(profiles) >= 2:
            report = scaling_collapse(profiles, amplitude_exponent=2.0)
            header = "x," + ",".join(f"y_N{n}" for n in report.curves)
            collapse_rows = (
                [x, *(report.curves[n][i] for n in report.curves)]
                for i, x in enumerate(report.x)
            )
            written.append(_write_csv(
                out_dir, "collapse.csv", header, collapse_rows,
                [f"# max_rms={_fmt(report.max_rms)} mean_rms={_fmt(report.mean_rms)} "
                 f"amplitude_exponent={_fmt(report.amplitude_exponent)}"],
            ))
        if svg:
            line_chart(
                out_dir / "rate.svg",
                [(res["grid"], res["rate"], f"N={res['n']}") for res in rate_results],
                title="dark-state rate of change", xlabel="t (us)", ylabel="R (1/us)",
            )
            written.append("rate.svg")
            if len(profiles) >= 2:
                line_chart(
                    out_dir / "collapse.svg",
                    [(report.x, report.curves[n], f"N={n}") for n in report.curves],
                    title="susceptibility collapse", xlabel="N (t - t_N)", ylabel="Q",
                )
                written.append("collapse.svg")
    except BaseException:
        _cleanup(out_dir, written)
        raise
    return _finalize(out_dir, "criticality", config, written, timings)


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rydstirap",
        description="Rydberg-blockaded STIRAP critical-slowing-down experiments",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("spectrum", "time-dependent spectrum, gap profile, and gap scaling"),
        ("evolve", "Schroedinger evolution, fidelity, and spin variances"),
        ("criticality", "rate of change, work scaling, susceptibility collapse"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", type=str, default=None,
                       help="JSON config file (flags override it)")
        p.add_argument("--n-atoms", type=int, nargs="+", default=None,
                       help="atom numbers for the sweep")
        p.add_argument("--susceptibility-n", type=int, nargs="+", default=None,
                       help="atom numbers for the susceptibility collapse")
        p.add_argument("--sigma-us", type=float, default=None,
                       help="pulse half-duration sigma in us")
        p.add_argument("--dt-us", type=float, default=None,
                       help="peak separation between the pulses in us")
        p.add_argument("--tau-us", type=float, default=None,
                       help="work-integration horizon in us")
        p.add_argument("--out", type=str, default=None, help="output directory")
        p.add_argument("--seed", type=int, default=None,
                       help="seed recorded for randomized self-tests")
        p.add_argument("--force", action="store_true",
                       help="rerun even if a complete manifest exists")
        p.add_argument("--svg", action="store_true", help="emit SVG charts")
        p.add_argument("--workers", type=int, default=0,
                       help=f"worker processes (0 = auto, capped by ${ENV_MAX_WORKERS})")
        if name == "evolve":
            p.add_argument("--cd", choices=("on", "off"), default="off",
                           help="add the counterdiabatic drive")
    return parser


def _config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    config = (
        ExperimentConfig.from_file(args.config)
        if args.config
        else ExperimentConfig()
    )
    overrides: dict = {}
    if args.n_atoms is not None:
        overrides["atom_numbers"] = tuple(args.n_atoms)
    if args.susceptibility_n is not None:
        overrides["susceptibility_atom_numbers"] = tuple(args.susceptibility_n)
    if args.sigma_us is not None:
        overrides["sigma_us"] = args.sigma_us
    if args.dt_us is not None:
        overrides["separation_us"] = args.dt_us
    if args.tau_us is not None:
        overrides["tau_us"] = args.tau_us
    if args.out is not None:
        overrides["output_dir"] = args.out
    if args.seed is not None:
        overrides["seed"] = args.seed
    if overrides:
        config = dataclasses.replace(config, **overrides)
    config.validate()
    return config


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        config = _config_from_args(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        if args.command == "spectrum":
            paths = cmd_spectrum(config, force=args.force, svg=args.svg, workers=args.workers)
        elif args.command == "evolve":
            paths = cmd_evolve(config, cd_flag=(args.cd == "on"), force=args.force,
                               svg=args.svg, workers=args.workers)
        else:
            paths = cmd_criticality(config, force=args.force, svg=args.svg,
                                    workers=args.workers)
    except (SimulationError, ValueError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for path in paths:
        print(f"wrote {Path(config.output_dir) / path}")
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
