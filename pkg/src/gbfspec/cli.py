"""Command-line front end.

Every run reads an optional flat ``key = value`` config file and then
applies command-line overrides on top.  Output is CSV; diagnostics go to
stderr.  Exit status: 0 success, 1 usage/config error, 2 non-convergence.
"""

import argparse
import csv
import datetime
import io
import logging
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .analysis import linf_error, slice_values
from .newton import SingularJacobianError, SolverConfig, solve_problem
from .problem import InvalidProblemError, ProblemSpec, affine_unmap, exact_solution
from .spectral import barycentric_matrix
from .tables import TABLES

log = logging.getLogger("gbfspec")

OUTPUT_DIR_ENV = "GBF_OUTPUT_DIR"
COMMANDS = ("solve", "table", "sweep", "surface")

EXIT_OK, EXIT_USAGE, EXIT_DIVERGED = 0, 1, 2


class ConfigError(ValueError):
    pass


def _float_list(text):
    return [float(v) for v in str(text).replace(",", " ").split()]


def _int_list(text):
    return [int(v) for v in str(text).replace(",", " ").split()]


def _bool(text):
    value = str(text).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


_REQUIRED = object()

# key -> (parser, default)
FIELDS = {
    "sigma1": (float, _REQUIRED),
    "sigma2": (float, _REQUIRED),
    "mu": (float, 1.0),
    "delta": (int, _REQUIRED),
    "eta_min": (float, 0.0),
    "eta_max": (float, 1.0),
    "t_final": (float, _REQUIRED),
    "N": (int, _REQUIRED),
    "residual_tolerance": (float, SolverConfig.residual_tolerance),
    "step_tolerance": (float, SolverConfig.step_tolerance),
    "max_iterations": (int, SolverConfig.max_iterations),
    "report_times": (_float_list, None),
    "output_path": (str, None),
    "table_id": (int, _REQUIRED),
    "orders": (_int_list, _REQUIRED),
    "resolution": (int, 50),
    "jobs": (int, 1),
    "advection": (str, "conservative"),
    "timestamp": (_bool, True),
}
ALIASES = {"order": "N", "n": "N", "output": "output_path"}

NEEDED = {
    "solve": ("sigma1", "sigma2", "delta", "t_final", "N"),
    "sweep": ("sigma1", "sigma2", "delta", "t_final", "orders"),
    "surface": ("sigma1", "sigma2", "delta", "t_final", "N"),
    "table": ("table_id",),
}


@dataclass(frozen=True)
class RunConfig:
    command: str
    values: dict

    def __getattr__(self, name):
        try:
            return self.values[name]
        except KeyError:
            raise AttributeError(name) from None

    def problem(self) -> ProblemSpec:
        return ProblemSpec(
            sigma1=self.sigma1, sigma2=self.sigma2, delta=self.delta, t_final=self.t_final,
            mu=self.mu, eta_range=(self.eta_min, self.eta_max),
        )

    def solver(self) -> SolverConfig:
        return SolverConfig(
            residual_tolerance=self.residual_tolerance,
            step_tolerance=self.step_tolerance,
            max_iterations=self.max_iterations,
        )


def _canonical(key: str) -> str:
    return ALIASES.get(key, ALIASES.get(key.lower(), key))


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = _canonical(key.strip()), value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        if key == "command":
            if value not in COMMANDS:
                raise ConfigError(f"{source}:{lineno}: unknown command {value!r}")
            out[key] = value
            continue
        if key not in FIELDS:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            out[key] = FIELDS[key][0](value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: invalid value for {key}: {value!r}") from None
    return out


def build_run_config(command: str, file_values: dict, overrides: dict) -> RunConfig:
    merged = {k: d for k, (_, d) in FIELDS.items() if d is not _REQUIRED}
    merged.update({k: v for k, v in file_values.items() if k != "command"})
    merged.update({k: v for k, v in overrides.items() if v is not None})
    for key in NEEDED[command]:
        if key not in merged:
            raise ConfigError(f"missing required key {key!r} for command {command!r}")
    config = RunConfig(command, merged)
    if command != "table":
        try:
            spec = config.problem()
        except InvalidProblemError as exc:
            raise ConfigError(str(exc)) from None
        times = config.report_times or []
        if any(t < 0 or t > spec.t_final for t in times):
            raise ConfigError(f"report_times must lie in [0, t_final={spec.t_final}]")
    if merged["advection"] not in ("conservative", "product_rule"):
        raise ConfigError(f"advection must be 'conservative' or 'product_rule', got {merged['advection']!r}")
    if command == "table" and merged["table_id"] not in TABLES:
        raise ConfigError(f"table_id must be one of {sorted(TABLES)}")
    if command == "surface" and merged["resolution"] < 2:
        raise ConfigError("resolution must be >= 2")
    try:
        config.solver()
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    return config


def fmt(x) -> str:
    return format(float(x), ".16g")


def _write_csv(config: RunConfig, header, rows, stream=None) -> str:
    """Write rows to ``output_path`` (or ``stream``/stdout); returns where."""
    buf = io.StringIO()
    if config.timestamp:
        stamp = datetime.datetime.now(datetime.timezone.utc).isoformat(timespec="seconds")
        buf.write(f"# gbfspec {__version__} {config.command} {stamp}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    path = config.output_path
    if path is None:
        (stream or sys.stdout).write(buf.getvalue())
        return "-"
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(buf.getvalue())
    return path


def _summary_stream(config):
    return sys.stderr if config.output_path is None else sys.stdout


def run_solve(config: RunConfig) -> int:
    spec = config.problem()
    sol = solve_problem(spec, config.N, config.solver(), advection=config.advection)
    times = config.report_times or [spec.t_final]
    report = linf_error(sol.U, spec, sol.space_grid, sol.time_grid, times)

    eta = affine_unmap(sol.space_grid.nodes, spec.eta_range)
    t = affine_unmap(sol.time_grid.nodes, spec.time_range)
    U = sol.U.grid
    exact = exact_solution(spec, eta[:, None], t[None, :])
    rows = [
        (fmt(eta[i]), fmt(t[j]), fmt(U[i, j]), fmt(exact[i, j]))
        for i in range(eta.size) for j in range(t.size)
    ]
    where = _write_csv(config, ("eta", "t", "u_num", "u_exact"), rows)
    slices = " ".join(f"linf(t={fmt(tt)})={e:.4e}" for tt, e in report.requested)
    print(
        f"N={config.N} delta={spec.delta} converged={str(sol.report.converged).lower()} "
        f"iterations={sol.report.iterations} residual={sol.report.final_residual:.3e} "
        f"linf={report.l_inf:.4e} {slices} output={where}",
        file=_summary_stream(config),
    )
    return EXIT_OK if sol.report.converged else EXIT_DIVERGED


def table_cell(table_id: int, delta: int, t: float, order: int, solver: SolverConfig,
               advection: str = "conservative"):
    """Error of one table cell: solve on [0, t] and read the solution at t.

    Returns ``None`` when the solve fails or does not converge.
    """
    setup = TABLES[table_id]
    spec = ProblemSpec(setup.sigma1, setup.sigma2, delta, t)
    try:
        sol = solve_problem(spec, order, solver, advection=advection)
    except (SingularJacobianError, ArithmeticError) as exc:
        log.warning("table %d cell delta=%d t=%g N=%d failed: %s", table_id, delta, t, order, exc)
        return None
    if not sol.report.converged:
        log.warning("table %d cell delta=%d t=%g N=%d did not converge", table_id, delta, t, order)
        return None
    return linf_error(sol.U, spec, sol.space_grid, sol.time_grid, [t]).requested[0][1]


def _cell_job(args):
    return table_cell(*args)


def run_table(config: RunConfig, table_id: int = None) -> int:
    table_id = config.table_id if table_id is None else table_id
    cells = TABLES[table_id].cells()
    jobs = [(table_id, d, t, n, config.solver(), config.advection) for d, t, n in cells]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            errors = list(pool.map(_cell_job, jobs))
    else:
        errors = [_cell_job(j) for j in jobs]
    rows = [
        (str(d), fmt(t), str(n), "FAIL" if e is None else fmt(e))
        for (d, t, n), e in zip(cells, errors)
    ]
    _write_csv(config, ("delta", "t", "N", "linf"), rows)
    failed = sum(e is None for e in errors)
    if failed:
        print(f"{failed} of {len(cells)} cells failed", file=sys.stderr)
    return EXIT_DIVERGED if failed else EXIT_OK


def run_sweep(config: RunConfig) -> int:
    spec = config.problem()
    times = config.report_times or [spec.t_final]
    rows, failed = [], 0
    for n in sorted(config.orders):
        try:
            sol = solve_problem(spec, n, config.solver(), advection=config.advection)
            ok = sol.report.converged
            errs = [e for _, e in linf_error(sol.U, spec, sol.space_grid, sol.time_grid, times).requested]
        except (SingularJacobianError, ArithmeticError) as exc:
            log.warning("N=%d failed: %s", n, exc)
            ok, errs = False, [None] * len(times)
        failed += not ok
        for t, e in zip(times, errs):
            rows.append((str(spec.delta), fmt(t), str(n), "FAIL" if (e is None or not ok) else fmt(e)))
    _write_csv(config, ("delta", "t", "N", "linf"), rows)
    return EXIT_DIVERGED if failed else EXIT_OK


def run_surface(config: RunConfig, resolution: int = None) -> int:
    resolution = config.resolution if resolution is None else resolution
    spec = config.problem()
    sol = solve_problem(spec, config.N, config.solver(), advection=config.advection)
    ref = np.linspace(-1.0, 1.0, resolution)
    eta = affine_unmap(ref, spec.eta_range)
    t = affine_unmap(ref, spec.time_range)
    Mx = barycentric_matrix(sol.space_grid, ref)
    values = Mx @ slice_values(sol.U, sol.time_grid, ref)
    exact = exact_solution(spec, eta[:, None], t[None, :])
    rows = [
        (fmt(eta[i]), fmt(t[j]), fmt(values[i, j]), fmt(exact[i, j]))
        for i in range(resolution) for j in range(resolution)
    ]
    where = _write_csv(config, ("eta", "t", "u_num", "u_exact"), rows)
    print(
        f"N={config.N} resolution={resolution} converged={str(sol.report.converged).lower()} "
        f"max_abs_diff={np.abs(values - exact).max():.4e} output={where}",
        file=_summary_stream(config),
    )
    return EXIT_OK if sol.report.converged else EXIT_DIVERGED


RUNNERS = {"solve": run_solve, "table": run_table, "sweep": run_sweep, "surface": run_surface}


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-c", "--config", help="flat 'key = value' config file")
    common.add_argument("-o", "--output", dest="output_path", help=f"CSV path (relative paths honour ${OUTPUT_DIR_ENV})")
    common.add_argument("--no-timestamp", dest="timestamp", action="store_const", const=False,
                        help="omit the leading '# ...' provenance comment")
    common.add_argument("-v", "--verbose", action="count", default=0)
    g = common.add_argument_group("problem")
    g.add_argument("--sigma1", type=float)
    g.add_argument("--sigma2", type=float)
    g.add_argument("--mu", type=float)
    g.add_argument("--delta", type=int)
    g.add_argument("--eta-min", dest="eta_min", type=float)
    g.add_argument("--eta-max", dest="eta_max", type=float)
    g.add_argument("--t-final", dest="t_final", type=float)
    g.add_argument("-N", "--order", dest="N", type=int, help="CGL order in space and time")
    g.add_argument("--advection", choices=("conservative", "product_rule"))
    s = common.add_argument_group("solver")
    s.add_argument("--residual-tolerance", dest="residual_tolerance", type=float)
    s.add_argument("--step-tolerance", dest="step_tolerance", type=float)
    s.add_argument("--max-iterations", dest="max_iterations", type=int)
    common.add_argument("--report-times", dest="report_times", type=_float_list,
                        help="comma-separated physical times for slice errors")

    parser = argparse.ArgumentParser(prog="gbfspec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("solve", parents=[common], help="solve one problem, write nodal CSV")
    p = sub.add_parser("table", parents=[common], help="reproduce a benchmark error table")
    p.add_argument("--table-id", dest="table_id", type=int, choices=sorted(TABLES))
    p.add_argument("-j", "--jobs", type=int)
    p = sub.add_parser("sweep", parents=[common], help="error versus N at report times")
    p.add_argument("--orders", type=_int_list, help="comma-separated orders, e.g. 4,6,8")
    p = sub.add_parser("surface", parents=[common], help="interpolated solution on a uniform lattice")
    p.add_argument("--resolution", type=int)
    return parser


def main(argv=None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(
        level=logging.WARNING - 10 * min(args.verbose, 2),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    overrides = {k: v for k, v in vars(args).items() if k in FIELDS}
    try:
        file_values = {}
        if args.config:
            try:
                with open(args.config) as fh:
                    text = fh.read()
            except OSError as exc:
                raise ConfigError(f"cannot read config: {exc}") from None
            file_values = parse_config_text(text, args.config)
            if file_values.get("command", args.command) != args.command:
                raise ConfigError(f"{args.config}: command {file_values['command']!r} does not match {args.command!r}")
        config = build_run_config(args.command, file_values, overrides)
    except ConfigError as exc:
        print(f"gbfspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return RUNNERS[args.command](config)
    except SingularJacobianError as exc:
        print(f"gbfspec: {exc}", file=sys.stderr)
        return EXIT_DIVERGED


if __name__ == "__main__":
    sys.exit(main())
