"""Table reproduction, refinement studies, stability samples and the coefficient check."""

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np
import scipy.linalg

from .errors import DomainError
from .exact import damping_terms, fourier_coefficients, fourier_psi
from .heat import HeatState, build_propagator, evolve
from .hopf_cole import transform_context
from .metrics import convergence_order
from .problems import get_problem
from .published import (PRINTED_HERMITE, PRINTED_HERMITE_H6, PRINTED_HERMITE_H7, PRINTED_MATRIX_DEN,
                        PRINTED_MATRIX_NUM, PRINTED_NEWTON_COTES_H9, PRINTED_PSI_DEN, PRINTED_PSI_NUM,
                        PRINTED_STAGE_H7, PRINTED_STAGES, PRINTED_TAIL, TABLES)
from .scheme import (default_theta_grid, derive_stability_function, hermite_coefficients,
                     newton_cotes_weights, ode_convergence, psi_eval, stability_boundary)
from .solver import RunConfig, fmt, solve, write_csv
from .spatial import GridSpec, assemble_D

VALUE_TOL = 5e-5
NORM_FACTOR = 2.0


# -- tables ------------------------------------------------------------------

@dataclass
class TableResult:
    table_id: int
    rows: list
    norms: list
    deviations: dict
    files: list = field(default_factory=list)

    @property
    def ok(self):
        return self.deviations["all_within"]


def table_config(table_id):
    tab = TABLES[table_id]
    params = get_problem(tab.problem).default_params[tab.param_index]
    return RunConfig(problem=tab.problem, nu=params.nu_d, h=params.h, tau=params.tau,
                     report_times=list(tab.times))


def cmd_table(table_id, out_dir=None):
    """Re-run a published table and compare with its printed values.

    A computed value deviates when it differs from the printed numerical
    solution by more than ``VALUE_TOL``; a norm deviates when it exceeds
    ``NORM_FACTOR`` times the printed norm.
    """
    if table_id not in TABLES:
        raise DomainError(f"table id must be one of {sorted(TABLES)}, got {table_id!r}")
    tab = TABLES[table_id]
    report = solve(table_config(table_id))
    x = np.array(report.x)
    h = report.config["h"]
    a0 = x[0]

    rows, dev_rows = [], []
    for xv, T, printed in tab.rows:
        snap = report.snapshot(T)
        i = int(round((xv - a0) / h))
        computed = snap.numeric[i]
        exact = snap.exact[i] if snap.exact is not None else None
        rows.append([xv, T, computed, exact] + [float(printed[c]) for c in tab.columns])
        dev = abs(computed - printed["present"])
        dev_rows.append({"x": xv, "T": T, "computed": computed, "published": printed["present"],
                         "deviation": dev, "ok": dev <= VALUE_TOL})

    norms, dev_norms = [], []
    for T, pub in sorted(tab.norms.items()):
        snap = report.snapshot(T)
        p_linf, p_l2 = pub["linf"] / tab.norm_scale, pub["l2"] / tab.norm_scale
        norms.append([T, snap.linf, snap.l2, p_linf, p_l2])
        ok = snap.linf is not None and snap.linf <= NORM_FACTOR * p_linf
        dev_norms.append({"T": T, "linf": snap.linf, "l2": snap.l2, "published_linf": p_linf,
                          "published_l2": p_l2, "ok": ok})

    unreliable = [s.t for s in report.snapshots if not s.reliable]
    deviations = {
        "table": table_id,
        "problem": tab.problem,
        "value_tolerance": VALUE_TOL,
        "norm_factor": NORM_FACTOR,
        "max_deviation": max(d["deviation"] for d in dev_rows),
        "rows": dev_rows,
        "norms": dev_norms,
        "reference_unreliable_at": unreliable,
        "all_within": all(d["ok"] for d in dev_rows) and all(d["ok"] for d in dev_norms),
    }
    result = TableResult(table_id, rows, norms, deviations)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        header = ["x", "T", "computed", "exact"] + [f"published_{c}" for c in tab.columns]
        path = out / f"table{table_id}.csv"
        write_csv(path, header, rows)
        result.files.append(path)
        if norms:
            path = out / f"table{table_id}_norms.csv"
            write_csv(path, ["T", "Linf", "L2", "published_Linf", "published_L2"], norms)
            result.files.append(path)
        path = out / f"table{table_id}_deviations.json"
        path.write_text(json.dumps(deviations, indent=2, sort_keys=True) + "\n", encoding="utf-8")
        result.files.append(path)
    return result


# -- refinement studies ------------------------------------------------------

CONVERGE_MODES = ("ode", "time", "space")

# problem, nu, T and the refinement levels for the PDE studies
TIME_STUDY = {"problem": "ex1", "nu": 2.0, "T": 0.1, "N": 16, "levels": (1, 2, 4, 8, 16)}
SPACE_STUDY = {"problem": "ex1", "nu": 2.0, "T": 0.1, "tau": 1e-5, "levels": (10, 20, 40, 80)}


def _time_error(M, prob, nu, T, N):
    grid = GridSpec(*prob.domain, N, prob.t_init, T, M)
    D = assemble_D(N)
    ctx = transform_context(prob.initial(nu), nu, grid)
    psi0 = np.exp(ctx.log_psi0)
    # reference: the semi-discrete system integrated exactly in time
    ref = scipy.linalg.expm(-(nu * T / (24 * grid.h**2)) * D.to_dense()) @ psi0
    got = evolve(build_propagator(D, nu, grid), HeatState(psi0, grid.t0), M).psi
    return grid.tau, float(np.max(np.abs(got - ref)) / np.max(np.abs(ref)))


def _space_error(N, prob, nu, T, tau, sol):
    grid = GridSpec(*prob.domain, N, prob.t_init, T, round(T / tau))
    ctx = transform_context(prob.initial(nu), nu, grid)
    got = evolve(build_propagator(assemble_D(N), nu, grid), HeatState(np.exp(ctx.log_psi0), 0.0), grid.M).psi
    ref = fourier_psi(sol, grid.x, T) * np.exp(sol.log_shift - ctx.shift)
    return grid.h, float(np.max(np.abs(got - ref)) / np.max(ref))


def cmd_converge(mode, levels=None, workers=None):
    """Refinement study; returns rows ``(step, error, order)`` with ``order=None`` on the first row.

    ``ode``: the scalar formula on ``u' = -u`` to ``T = 1`` with ``h = 2^-k``.
    ``time``: fixed grid, ``M`` steps to ``T``, error against the exactly
    integrated semi-discrete heat system.
    ``space``: tiny fixed ``tau``, ``N`` intervals, heat-solution error against
    the Fourier series.
    """
    if mode not in CONVERGE_MODES:
        raise DomainError(f"mode must be one of {CONVERGE_MODES}, got {mode!r}")
    if mode == "ode":
        exps = range(3, 8) if levels is None else levels
        data = ode_convergence(exponents=exps)
    else:
        study = TIME_STUDY if mode == "time" else SPACE_STUDY
        prob = get_problem(study["problem"])
        nu, T = study["nu"], study["T"]
        lv = study["levels"] if levels is None else tuple(levels)
        if mode == "time":
            def job(M):
                return _time_error(M, prob, nu, T, study["N"])
        else:
            sol = fourier_coefficients(prob.initial(nu), nu, damping_terms(nu, T),
                                       antiderivative=prob.antiderivative(nu))

            def job(N):
                return _space_error(N, prob, nu, T, study["tau"], sol)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            data = list(pool.map(job, lv))
    orders = [None] + convergence_order(data) if len(data) > 1 else [None] * len(data)
    return [(h, e, o) for (h, e), o in zip(data, orders)]


def write_converge(rows, path):
    write_csv(path, ["step", "error", "order"], rows)


# -- stability ---------------------------------------------------------------

def stability_samples(s_max=20.0, n_linear=401, tail_decades=(3, 6), tail_per_decade=20):
    """``(s, psi(s))`` on a uniform grid of ``[0, s_max]`` plus a logarithmic tail."""
    lin = np.linspace(0.0, s_max, n_linear)
    lo, hi = tail_decades
    tail = np.logspace(lo, hi, (hi - lo) * tail_per_decade + 1)
    s = np.concatenate([lin, tail])
    return list(zip(s.tolist(), np.asarray(psi_eval(s)).tolist()))


def locus_points(n_theta=720):
    """Boundary locus as rows ``(theta, Re s, Im s, residual)``."""
    rows = []
    for pt in stability_boundary(default_theta_grid(n_theta)):
        for r in sorted(pt.roots, key=lambda z: (z.real, z.imag)):
            rows.append((pt.theta, float(r.real), float(r.imag), pt.residual))
    return rows


def cmd_stability(out_dir, n_theta=720):
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    p1, p2 = out / "psi.csv", out / "boundary_locus.csv"
    write_csv(p1, ["s", "psi"], stability_samples())
    write_csv(p2, ["theta", "re_s", "im_s", "residual"], locus_points(n_theta))
    return [p1, p2]


# -- derivation check --------------------------------------------------------

@dataclass(frozen=True)
class CheckItem:
    name: str
    derived: str
    printed: str
    match: bool


def _stage_bar(k):
    """Derived Taylor-substituted stage in the printed layout."""
    st = hermite_coefficients(k)
    c, d = st.coeffs, st.taylor_weight
    return (c[0] - d, c[1] + d, c[2], c[4], c[3] - d, c[5] + d / 2), (d * Fraction(-1, 6), d * Fraction(1, 24),
                                                                        d * Fraction(-1, 120))


def derive_check():
    """Compare every derived coefficient with its printed counterpart.

    Returns ``(items, consistency)``: the side-by-side comparison and a dict
    of internal consistency checks on the derived function, each a bool.
    """
    items = []

    def add(name, derived, printed):
        items.append(CheckItem(name, str(derived), str(printed), derived == printed))

    sf = derive_stability_function()
    num, den = sf.scaled(453600)
    for j, (d, p) in enumerate(zip(num, PRINTED_PSI_NUM)):
        add(f"psi numerator s^{j} (stability form)", d, p)
    for j, (d, p) in enumerate(zip(num, PRINTED_MATRIX_NUM)):
        add(f"psi numerator s^{j} (matrix form)", d, p)
    for j, (d, p) in enumerate(zip(den, PRINTED_PSI_DEN)):
        add(f"psi denominator s^{j} (stability form)", d, p)
    for j, (d, p) in enumerate(zip(den, PRINTED_MATRIX_DEN)):
        add(f"psi denominator s^{j} (matrix form)", d, p)

    labels = ("u_n", "u_n+1", "hu'_n", "hu'_n+1", "h2u''_n", "h2u''_n+1")
    for k, (scale, nums) in PRINTED_HERMITE.items():
        for lab, d, p in zip(labels, hermite_coefficients(k).coeffs, nums):
            add(f"hermite k={k} {lab}", d, Fraction(p, scale))

    bar_labels = ("u_n", "u_n+1", "hu'_n", "h2u''_n", "hu'_n+1", "h2u''_n+1")
    for k, (scale, nums) in PRINTED_STAGES.items():
        coeffs, tail = _stage_bar(k)
        for lab, d, p in zip(bar_labels, coeffs, nums[:6]):
            add(f"stage k={k} {lab}", d, Fraction(p) / scale)
        weight = Fraction(nums[6], scale)
        for j, (d, p) in enumerate(zip(tail, PRINTED_TAIL), start=3):
            add(f"stage k={k} tail h^{j}u^({j})_n+1", d, weight * p)

    nc = newton_cotes_weights()
    add("newton-cotes h^9 error constant", nc.monomial_defect(8) / math.factorial(8), PRINTED_NEWTON_COTES_H9)
    for k in range(1, 6):
        st = hermite_coefficients(k)
        e6 = st.monomial_defect(6) / math.factorial(6)
        e7 = st.monomial_defect(7) / math.factorial(7)
        add(f"hermite k={k} h^6 error constant", e6, PRINTED_HERMITE_H6[k])
        add(f"hermite k={k} h^7 error constant", e7, PRINTED_HERMITE_H7[k])
        # u_{n+theta} - ubar = (e7 + delta/840) h^7 u^(7)_n once the h^6 terms cancel
        add(f"stage k={k} h^7 error constant", e7 + st.taylor_weight / 840, PRINTED_STAGE_H7[k])

    consistency = {
        "psi(0) == 1": sf.exact(0) == 1,
        "degree gap == 3": sf.degree_gap == 3,
        "order == 7": sf.order() == 7,
        "denominator coefficients positive": all(c > 0 for c in sf.den_coeffs),
        "hermite c_u0 + c_u1 == 1": all(sum(hermite_coefficients(k).coeffs[:2]) == 1 for k in range(1, 6)),
        "hermite exact to degree 5": all(hermite_coefficients(k).monomial_defect(d) == 0
                                         for k in range(1, 6) for d in range(6)),
        "newton-cotes exact to degree 7": all(nc.monomial_defect(d) == 0 for d in range(8)),
        "h^6 stage errors cancelled": all(hermite_coefficients(k).monomial_defect(6)
                                          + hermite_coefficients(k).taylor_weight == 0 for k in range(1, 6)),
    }
    return items, consistency


def format_derive_check(items, consistency):
    width = max(len(i.name) for i in items)
    lines = [f"{'item':<{width}}  {'derived':>22}  {'printed':>22}  status"]
    for i in items:
        lines.append(f"{i.name:<{width}}  {i.derived:>22}  {i.printed:>22}  {'ok' if i.match else 'MISMATCH'}")
    mism = sum(not i.match for i in items)
    lines.append(f"{mism} of {len(items)} printed values differ from the derivation")
    for name, ok in consistency.items():
        lines.append(f"consistency: {name}: {'pass' if ok else 'FAIL'}")
    return "\n".join(lines)


__all__ = ["cmd_table", "cmd_converge", "cmd_stability", "derive_check", "format_derive_check",
           "stability_samples", "locus_points", "fmt"]
