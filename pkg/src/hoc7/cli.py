"""Command-line interface: ``hoc7 {solve,table,converge,stability,derive-check}``.

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 printed-value deviation under ``table --strict``.
"""

import argparse
import sys
from pathlib import Path

from .errors import ConfigError, DomainError, NumericalFailure
from .published import TABLES
from .solver import RunConfig, fmt, solve, write_report
from .studies import CONVERGE_MODES, cmd_converge, cmd_stability, cmd_table, derive_check, format_derive_check, write_converge

EXIT_OK, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_DEVIATION = 0, 2, 3, 4

_INT_KEYS = {"N", "M"}
_FLOAT_KEYS = {"nu", "h", "tau", "T"}
_STR_KEYS = {"problem", "scheme", "exact", "out", "format"}
CONFIG_KEYS = _INT_KEYS | _FLOAT_KEYS | _STR_KEYS | {"report_times"}


def _convert(key, raw, where):
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
        if key == "report_times":
            return [float(v) for v in raw.replace(",", " ").split()]
    except ValueError:
        raise ConfigError(f"{where}: invalid value {raw!r} for {key}") from None
    return raw


def read_config(path):
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    values = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"--config: cannot read {path}: {exc.strerror}") from None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        where = f"{path}:{lineno}"
        key, sep, raw = line.partition("=")
        key, raw = key.strip().replace("-", "_"), raw.strip()
        if not sep or not key:
            raise ConfigError(f"{where}: expected 'key = value', got {line!r}")
        if key not in CONFIG_KEYS:
            raise ConfigError(f"{where}: unknown key {key!r}")
        values[key] = _convert(key, raw, where)
    return values


def _report_times(text):
    try:
        return [float(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser():
    parser = argparse.ArgumentParser(prog="hoc7", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="run one problem and write its snapshots")
    p.add_argument("--config", help="key = value file; flags override its entries")
    p.add_argument("--problem")
    p.add_argument("--nu", type=float)
    grid = p.add_mutually_exclusive_group()
    grid.add_argument("--h", type=float)
    grid.add_argument("--N", type=int)
    steps = p.add_mutually_exclusive_group()
    steps.add_argument("--tau", type=float)
    steps.add_argument("--M", type=int)
    p.add_argument("--T", type=float)
    p.add_argument("--scheme", choices=("hoc7", "cn"))
    p.add_argument("--exact", choices=("auto", "fourier", "closed", "none"))
    p.add_argument("--report-times", type=_report_times, dest="report_times")
    p.add_argument("--out", help="output directory (omit to print the summary only)")
    p.add_argument("--format", choices=("csv", "json"))

    p = sub.add_parser("table", help="reproduce a published table")
    p.add_argument("table_id", type=int, choices=sorted(TABLES))
    p.add_argument("--out", default=".")
    p.add_argument("--strict", action="store_true", help="exit 4 if any printed value is not reproduced")

    p = sub.add_parser("converge", help="refinement study")
    p.add_argument("mode", choices=CONVERGE_MODES)
    p.add_argument("--levels", type=_report_times,
                   help="exponents k for h = 2^-k (ode), step counts M (time) or interval counts N (space)")
    p.add_argument("--out", help="CSV path (default: stdout)")

    p = sub.add_parser("stability", help="stability function samples and boundary locus")
    p.add_argument("--out", default=".")

    sub.add_parser("derive-check", help="compare derived coefficients with the printed ones")
    return parser


def run_config_from(args):
    values = read_config(args.config) if args.config else {}
    for key in CONFIG_KEYS:
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    # a flag overrides its mutually exclusive partner from the file
    for a, b in (("h", "N"), ("tau", "M")):
        if getattr(args, a) is not None:
            values.pop(b, None)
        elif getattr(args, b) is not None:
            values.pop(a, None)
    return RunConfig(**values)


def _solve(args, out):
    config = run_config_from(args)
    config.resolve()
    report = solve(config)
    if config.out:
        for path in write_report(report, config.out, config.format):
            print(path, file=out)
    for s in report.snapshots:
        print(f"t={fmt(s.t)} L2={fmt(s.l2) or '-'} Linf={fmt(s.linf) or '-'} reliable={str(s.reliable).lower()}"
              + (f" ({s.note})" if s.note else ""), file=out)
    return EXIT_OK


def _table(args, out):
    result = cmd_table(args.table_id, args.out)
    for path in result.files:
        print(path, file=out)
    d = result.deviations
    print(f"table {args.table_id}: max deviation {d['max_deviation']:.3e}, "
          f"{'all within tolerance' if result.ok else 'DEVIATIONS PRESENT'}", file=out)
    if args.strict and not result.ok:
        return EXIT_DEVIATION
    return EXIT_OK


def _converge(args, out):
    levels = None
    if args.levels is not None:
        levels = [int(v) for v in args.levels]
    rows = cmd_converge(args.mode, levels)
    if args.out:
        write_converge(rows, args.out)
        print(args.out, file=out)
    else:
        print("step,error,order", file=out)
        for r in rows:
            print(",".join(fmt(v) for v in r), file=out)
    return EXIT_OK


def _stability(args, out):
    for path in cmd_stability(args.out):
        print(path, file=out)
    return EXIT_OK


def _derive_check(args, out):
    items, consistency = derive_check()
    print(format_derive_check(items, consistency), file=out)
    return EXIT_OK if all(consistency.values()) else EXIT_NUMERICAL


_COMMANDS = {"solve": _solve, "table": _table, "converge": _converge,
             "stability": _stability, "derive-check": _derive_check}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args, out)
    except (ConfigError, DomainError) as exc:
        print(f"hoc7: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalFailure as exc:
        print(f"hoc7: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
