"""End-to-end Burgers runs: transform, evolve, transform back, compare."""

import csv
import json
import time
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import ConfigError, DomainError, SeriesUnreliable
from .exact import damping_terms, fourier_coefficients, fourier_series, shock_exact, two_mode_exact
from .heat import build_propagator, cn_build, evolve_to
from .hopf_cole import forward_transform, inverse_transform
from .metrics import error_norms
from .problems import PROBLEM_IDS, get_problem
from .spatial import GridSpec, assemble_D

SCHEMES = ("hoc7", "cn")
EXACT_MODES = ("auto", "fourier", "closed", "none")
FORMATS = ("csv", "json")
TIME_TOL = 1e-12


@dataclass
class RunConfig:
    """Everything needed to reproduce one run.

    Exactly one of ``h``/``N`` and one of ``tau``/``M`` may be given; missing
    values fall back to the problem's first published parameter set.
    ``report_times`` are absolute times; they default to ``[T]`` when ``T``
    is given and to the published report times otherwise.
    """

    problem: str = "ex1"
    nu: Optional[float] = None
    h: Optional[float] = None
    N: Optional[int] = None
    tau: Optional[float] = None
    M: Optional[int] = None
    T: Optional[float] = None
    scheme: str = "hoc7"
    exact: str = "auto"
    report_times: Optional[list] = None
    out: Optional[str] = None
    format: str = "csv"

    def resolve(self):
        """Validate and fill defaults; returns ``(problem, grid, nu, times)``."""
        if self.problem not in PROBLEM_IDS:
            raise ConfigError(f"--problem: unknown problem {self.problem!r} (choose from {', '.join(PROBLEM_IDS)})")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"--scheme: expected one of {SCHEMES}, got {self.scheme!r}")
        if self.exact not in EXACT_MODES:
            raise ConfigError(f"--exact: expected one of {EXACT_MODES}, got {self.exact!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"--format: expected one of {FORMATS}, got {self.format!r}")
        if self.h is not None and self.N is not None:
            raise ConfigError("--h and --N are mutually exclusive")
        if self.tau is not None and self.M is not None:
            raise ConfigError("--tau and --M are mutually exclusive")
        prob = get_problem(self.problem)
        base = prob.default_params[0]
        nu = base.nu_d if self.nu is None else float(self.nu)
        if not nu > 0:
            raise ConfigError(f"--nu: viscosity must be positive, got {nu}")
        a0, a1 = prob.domain
        t0 = prob.t_init

        times = sorted(float(t) for t in self.report_times) if self.report_times else None
        if times is None and self.T is None:
            times = [float(t) for t in base.report_times]
        T = self.T if self.T is not None else (times[-1] if times else base.T)
        T = float(T)
        if times is None:
            times = [T]
        if times[-1] > T + TIME_TOL:
            raise ConfigError(f"--report-times: {times[-1]} exceeds --T {T}")
        if times[0] < t0 - TIME_TOL:
            raise ConfigError(f"--report-times: {times[0]} precedes the initial time {t0}")

        if self.N is not None:
            N = int(self.N)
        else:
            h = base.h if self.h is None else float(self.h)
            N = round((a1 - a0) / h)
            if N < 1 or abs(N * h - (a1 - a0)) > 1e-9 * (a1 - a0):
                raise ConfigError(f"--h: {h} does not divide the domain [{a0}, {a1}]")
        if T == t0:
            M, tau = 1, None
        elif self.M is not None:
            M = int(self.M)
            tau = (T - t0) / M
        else:
            tau = base.tau if self.tau is None else float(self.tau)
            M = round((T - t0) / tau)
            if M < 1 or abs(M * tau - (T - t0)) > TIME_TOL * max(1.0, T):
                raise ConfigError(f"--tau: {tau} does not divide [{t0}, {T}]")
        try:
            grid = GridSpec(a0, a1, N, t0, T if T > t0 else t0 + (tau or 1.0), M)
        except DomainError as exc:
            raise ConfigError(f"grid: {exc}") from None
        for t in times:
            k = round((t - t0) / grid.tau)
            if abs(t0 + k * grid.tau - t) > TIME_TOL * max(1.0, abs(t)):
                raise ConfigError(f"--report-times: {t} is not commensurate with tau={grid.tau}")

        if self.exact == "fourier" and prob.exact != "fourier":
            raise ConfigError(f"--exact fourier: problem {prob.id} has no Fourier-series solution")
        if self.exact == "closed" and prob.exact not in ("shock", "two_mode"):
            raise ConfigError(f"--exact closed: problem {prob.id} has no closed-form solution")
        return prob, grid, nu, times


@dataclass
class Snapshot:
    t: float
    numeric: list
    exact: Optional[list] = None
    l2: Optional[float] = None
    linf: Optional[float] = None
    reliable: bool = True
    note: str = ""


@dataclass
class RunReport:
    config: dict
    x: list
    snapshots: list
    timing: dict = field(default_factory=dict)

    def snapshot(self, t):
        for s in self.snapshots:
            if abs(s.t - t) <= TIME_TOL * max(1.0, abs(t)):
                return s
        raise KeyError(t)

    def to_dict(self):
        return {"config": self.config, "x": self.x,
                "snapshots": [asdict(s) for s in self.snapshots], "timing": self.timing}

    @classmethod
    def from_dict(cls, d):
        return cls(d["config"], list(d["x"]), [Snapshot(**s) for s in d["snapshots"]], dict(d.get("timing", {})))

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))

    @property
    def reliable(self):
        return all(s.reliable for s in self.snapshots)


def fmt(v):
    """17 significant digits: enough to round-trip any double."""
    if v is None:
        return ""
    return format(float(v), ".17g")


def write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(v) if isinstance(v, (float, np.floating)) or v is None else v for v in row])


def snapshot_filename(t):
    return f"solution_t{t:g}.csv"


def write_report(report, out_dir, format="csv"):
    """Write a report to ``out_dir``; returns the list of files written."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    if format == "json":
        path = out / "report.json"
        path.write_text(report.to_json() + "\n", encoding="utf-8")
        return [path]
    written = []
    for s in report.snapshots:
        path = out / snapshot_filename(s.t)
        exact = s.exact if s.exact is not None else [None] * len(s.numeric)
        rows = [(x, n, e, None if e is None else abs(n - e)) for x, n, e in zip(report.x, s.numeric, exact)]
        write_csv(path, ["x", "numeric", "exact", "abs_error"], rows)
        written.append(path)
    path = out / "summary.csv"
    write_csv(path, ["t", "L2", "Linf", "reliable", "note"],
              [(float(s.t), s.l2, s.linf, str(s.reliable).lower(), s.note) for s in report.snapshots])
    written.append(path)
    return written


class Reference:
    """Reference values of ``w`` on the grid for a problem, or ``None`` when unavailable."""

    def __init__(self, prob, mode, nu, grid, times):
        self.prob, self.nu, self.grid = prob, nu, grid
        kind = prob.exact if mode == "auto" else mode
        if kind == "closed":
            kind = prob.exact
        self.kind = kind
        self.fourier = None
        later = [t for t in times if t > prob.t_init]
        if kind == "fourier" and later:
            l_max = damping_terms(nu, min(later))
            self.fourier = fourier_coefficients(prob.initial(nu), nu, l_max,
                                                antiderivative=prob.antiderivative(nu))

    def at(self, t):
        """``(values, reliable, note)`` at time ``t``."""
        x = self.grid.x
        if self.kind == "none":
            return None, True, "no reference"
        if t == self.prob.t_init:
            return np.asarray(self.prob.w0(x, self.nu), dtype=float), True, ""
        if self.kind == "shock":
            return shock_exact(x, t, self.nu), True, ""
        if self.kind == "two_mode":
            return two_mode_exact(x, t, self.nu), True, ""
        ev = fourier_series(self.fourier, x, t)
        if not np.all(ev.reliable):
            return None, False, f"reference unreliable ({ev.reason})"
        return ev.w, True, ""


def solve(config):
    """Run one configuration and return its :class:`RunReport`."""
    prob, grid, nu, times = config.resolve()
    clock = time.perf_counter()
    state0 = forward_transform(prob.initial(nu), nu, grid)
    D = assemble_D(grid.N)
    build = build_propagator if config.scheme == "hoc7" else cn_build
    prop = build(D, nu, grid)
    states = evolve_to(prop, state0, times)
    t_solve = time.perf_counter() - clock

    clock = time.perf_counter()
    ref = Reference(prob, config.exact, nu, grid, times)
    snapshots = []
    for t in times:
        w = inverse_transform(states[t], nu, grid)
        exact, reliable, note = ref.at(t)
        snap = Snapshot(float(t), w.tolist(), reliable=reliable, note=note)
        if exact is not None:
            rep = error_norms(w, exact, grid.h)
            snap.exact = np.asarray(exact, dtype=float).tolist()
            snap.l2, snap.linf = rep.l2, rep.linf
        snapshots.append(snap)
    t_ref = time.perf_counter() - clock

    cfg = {f.name: getattr(config, f.name) for f in fields(config)}
    cfg.update(nu=nu, N=grid.N, M=grid.M, h=grid.h, tau=grid.tau, T=grid.T, report_times=list(times))
    return RunReport(cfg, grid.x.tolist(), snapshots, {"solve_s": t_solve, "reference_s": t_ref})


def run_to_states(problem_id, nu, h, tau, times, scheme="hoc7"):
    """Heat states at ``times`` without the reference machinery (used by studies)."""
    cfg = RunConfig(problem=problem_id, nu=nu, h=h, tau=tau, report_times=list(times), scheme=scheme)
    prob, grid, nu, times = cfg.resolve()
    state0 = forward_transform(prob.initial(nu), nu, grid)
    build = build_propagator if scheme == "hoc7" else cn_build
    prop = build(assemble_D(grid.N), nu, grid)
    return grid, prop, state0, evolve_to(prop, state0, times)


__all__ = ["RunConfig", "RunReport", "Snapshot", "solve", "write_report", "SeriesUnreliable"]
