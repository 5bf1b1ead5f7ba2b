"""Command-line interface.

Subcommands: ``posterior`` (exact table), ``approx`` (gamma parameters and
discretized pmf), ``compare`` (metrics plus plot-ready overlay columns),
``verify`` (identity checks over the built-in grid) and ``sweep`` (grid
file driver).  Output is CSV (default) or a single JSON document; repeated
runs with identical flags produce byte-identical output.

Exit status: 0 success, 1 domain or tolerance failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Any, Sequence

from .approximation import discretize_gamma, moment_matched_gamma, theorem1_gamma
from .errors import DomainError, NumericError, PrecisionError
from .model import derive_params
from .posterior import exact_posterior, posterior_moments
from .special import bernoulli_numbers, bernoulli_polynomial, power_sum
from .validation import (
    compare,
    sweep,
    verify_bernoulli_expansion,
    verify_lerch_denominator,
)

SCHEMA_VERSION = "1"

# Built-in verification grid: a small-rate and a large-rate reference set.
REFERENCE_SETS = ((1.5, 0.1, -0.05), (1.5, 0.5, -0.05))

_LERCH_TOL = 1e-8
_POWERSUM_TOL = 1e-9


class GridFormatError(Exception):
    """A sweep grid file line that cannot be parsed."""


def _fmt(value: Any) -> str:
    """Render one CSV field: floats at 12 significant digits."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if value == 0.0:
            value = 0.0  # normalize -0.0
        return format(value, ".12g")
    return str(value)


def _round12(value: Any) -> Any:
    """Round floats (recursively) to 12 significant digits for JSON output."""
    if isinstance(value, bool):
        return value
    if isinstance(value, float):
        if value == 0.0:
            value = 0.0  # normalize -0.0
        return float(format(value, ".12g"))
    if isinstance(value, dict):
        return {k: _round12(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round12(v) for v in value]
    return value


def _emit_json(doc: dict[str, Any]) -> None:
    sys.stdout.write(json.dumps(_round12(doc), indent=2) + "\n")


def _comment(text: str) -> None:
    sys.stdout.write(f"# {text}\n")


def _kv(pairs: Sequence[tuple[str, Any]]) -> str:
    return " ".join(f"{k}={_fmt(v)}" for k, v in pairs)


def _csv_writer() -> Any:
    return csv.writer(sys.stdout, lineterminator="\n")


def _params_pairs(args: argparse.Namespace, m: float) -> list[tuple[str, Any]]:
    return [("a", args.a), ("b", args.b), ("c", args.c), ("x", args.x), ("m", m)]


def cmd_posterior(args: argparse.Namespace) -> int:
    params = derive_params(args.a, args.b, args.c)
    table = exact_posterior(params, args.x, args.eps_tail)
    mu, var = posterior_moments(table)
    ks = table.support
    if args.format == "json":
        _emit_json(
            {
                "schema_version": SCHEMA_VERSION,
                "command": "posterior",
                "params": {"a": args.a, "b": args.b, "c": args.c, "m": params.m},
                "x": args.x,
                "eps_tail": args.eps_tail,
                "rows": [
                    {"k": int(k), "prob": float(p), "log_weight": float(lw)}
                    for k, p, lw in zip(ks, table.probs, table.log_weights)
                ],
                "tail_bound": table.tail_bound,
                "mu_post": mu,
                "var_post": var,
            }
        )
        return 0
    _comment(f"schema_version={SCHEMA_VERSION}")
    _comment(
        "command=posterior "
        + _kv(_params_pairs(args, params.m) + [("eps_tail", args.eps_tail)])
    )
    writer = _csv_writer()
    writer.writerow(["k", "prob", "log_weight"])
    for k, p, lw in zip(ks, table.probs, table.log_weights):
        writer.writerow([int(k), _fmt(float(p)), _fmt(float(lw))])
    _comment(_kv([("tail_bound", table.tail_bound), ("mu_post", mu), ("var_post", var)]))
    return 0


def _build_gamma(args: argparse.Namespace, params, table):
    if args.kind == "theorem1":
        return theorem1_gamma(params, args.x)
    mu, var = posterior_moments(table)
    return moment_matched_gamma(mu, var)


def cmd_approx(args: argparse.Namespace) -> int:
    params = derive_params(args.a, args.b, args.c)
    table = exact_posterior(params, args.x, args.eps_tail)
    g = _build_gamma(args, params, table)
    disc = discretize_gamma(g, table.k_min, table.k_max, renormalize=False)
    ks = table.support
    if args.format == "json":
        _emit_json(
            {
                "schema_version": SCHEMA_VERSION,
                "command": "approx",
                "params": {"a": args.a, "b": args.b, "c": args.c, "m": params.m},
                "x": args.x,
                "kind": g.kind,
                "eps_tail": args.eps_tail,
                "gamma": {
                    "shape": g.shape,
                    "scale": g.scale,
                    "mean": g.mean,
                    "variance": g.variance,
                },
                "rows": [
                    {"k": int(k), "prob": float(p)} for k, p in zip(ks, disc.probs)
                ],
                "raw_total": disc.raw_total,
            }
        )
        return 0
    _comment(f"schema_version={SCHEMA_VERSION}")
    _comment(
        "command=approx "
        + _kv(
            _params_pairs(args, params.m)
            + [("kind", g.kind), ("eps_tail", args.eps_tail)]
        )
    )
    _comment(
        _kv(
            [
                ("shape", g.shape),
                ("scale", g.scale),
                ("mean", g.mean),
                ("variance", g.variance),
            ]
        )
    )
    writer = _csv_writer()
    writer.writerow(["k", "prob"])
    for k, p in zip(ks, disc.probs):
        writer.writerow([int(k), _fmt(float(p))])
    _comment(_kv([("raw_total", disc.raw_total)]))
    return 0


_METRIC_COLUMNS = [
    "kind",
    "tv",
    "kl",
    "sup_abs",
    "mean_exact",
    "var_exact",
    "mean_approx",
    "var_approx",
    "dropped_term_ratio",
    "inequality_holds",
    "raw_total",
]


def _report_row(rep) -> list[str]:
    return [
        rep.kind,
        _fmt(rep.tv),
        _fmt(rep.kl),
        _fmt(rep.sup_abs),
        _fmt(rep.mean_exact),
        _fmt(rep.var_exact),
        _fmt(rep.mean_approx),
        _fmt(rep.var_approx),
        _fmt(rep.dropped_term_ratio),
        _fmt(rep.inequality_holds),
        _fmt(rep.raw_total),
    ]


def _report_dict(rep) -> dict[str, Any]:
    return {
        "kind": rep.kind,
        "tv": rep.tv,
        "kl": rep.kl,
        "sup_abs": rep.sup_abs,
        "mean_exact": rep.mean_exact,
        "var_exact": rep.var_exact,
        "mean_approx": rep.mean_approx,
        "var_approx": rep.var_approx,
        "dropped_term_ratio": rep.dropped_term_ratio,
        "inequality_holds": rep.inequality_holds,
        "raw_total": rep.raw_total,
    }


def cmd_compare(args: argparse.Namespace) -> int:
    params = derive_params(args.a, args.b, args.c)
    table = exact_posterior(params, args.x, args.eps_tail)
    mu, var = posterior_moments(table)
    discs = {}
    reports = []
    for kind in ("theorem1", "moment_matched"):
        g = (
            theorem1_gamma(params, args.x)
            if kind == "theorem1"
            else moment_matched_gamma(mu, var)
        )
        disc = discretize_gamma(g, table.k_min, table.k_max, renormalize=True)
        discs[kind] = disc
        reports.append(compare(table, disc, args.epsilon_ineq))
    ks = table.support
    overlay = zip(ks, table.probs, discs["theorem1"].probs, discs["moment_matched"].probs)
    if args.format == "json":
        _emit_json(
            {
                "schema_version": SCHEMA_VERSION,
                "command": "compare",
                "params": {"a": args.a, "b": args.b, "c": args.c, "m": params.m},
                "x": args.x,
                "eps_tail": args.eps_tail,
                "epsilon_ineq": args.epsilon_ineq,
                "metrics": [_report_dict(rep) for rep in reports],
                "overlay": [
                    {
                        "k": int(k),
                        "exact": float(pe),
                        "theorem1": float(pt),
                        "moment_matched": float(pm),
                    }
                    for k, pe, pt, pm in overlay
                ],
            }
        )
        return 0
    _comment(f"schema_version={SCHEMA_VERSION}")
    _comment(
        "command=compare "
        + _kv(
            _params_pairs(args, params.m)
            + [("eps_tail", args.eps_tail), ("epsilon_ineq", args.epsilon_ineq)]
        )
    )
    writer = _csv_writer()
    writer.writerow(_METRIC_COLUMNS)
    for rep in reports:
        writer.writerow(_report_row(rep))
    _comment("overlay")
    writer.writerow(["k", "exact", "theorem1", "moment_matched"])
    for k, pe, pt, pm in overlay:
        writer.writerow([int(k), _fmt(float(pe)), _fmt(float(pt)), _fmt(float(pm))])
    return 0


def _verify_lerch_rows() -> list[tuple[str, str, float, bool]]:
    rows = []
    for a, b, c in REFERENCE_SETS:
        params = derive_params(a, b, c)
        for x in range(1, 16):
            err = verify_lerch_denominator(params, x)
            rows.append(
                (
                    "lerch_denominator",
                    _kv([("a", a), ("b", b), ("c", c), ("x", x)]),
                    err,
                    err < _LERCH_TOL,
                )
            )
    return rows


def _verify_powersum_rows() -> list[tuple[str, str, float, bool]]:
    rows = []
    for n in range(0, 21):
        table = bernoulli_numbers(n + 1)
        for upper in (1, 5, 10, 30):
            expected = power_sum(n, upper)
            got = (bernoulli_polynomial(n + 1, float(upper)) - table[n + 1]) / (n + 1)
            err = abs(got - expected) / (abs(expected) if expected != 0.0 else 1.0)
            rows.append(
                (
                    "power_sum_identity",
                    _kv([("n", n), ("upper", upper)]),
                    err,
                    err < _POWERSUM_TOL,
                )
            )
    return rows


def _verify_bernoulli_rows() -> list[tuple[str, str, float, bool]]:
    rows = []
    errs_at_8 = {}
    for a, b, c in REFERENCE_SETS:
        params = derive_params(a, b, c)
        for x in (1, 2, 3):
            few = verify_bernoulli_expansion(params, x, 2)
            many = verify_bernoulli_expansion(params, x, 8)
            errs_at_8[(b, x)] = many
            # 1e-14 slack: both errors may sit at the float noise floor.
            rows.append(
                (
                    "bernoulli_expansion_shrinks",
                    _kv([("a", a), ("b", b), ("c", c), ("x", x)]),
                    many,
                    many <= few + 1e-14,
                )
            )
    small_b, large_b = REFERENCE_SETS[0][1], REFERENCE_SETS[1][1]
    for x in (1, 2, 3):
        rows.append(
            (
                "bernoulli_error_rate_ordering",
                _kv([("x", x), ("terms", 8)]),
                errs_at_8[(large_b, x)],
                errs_at_8[(large_b, x)] >= errs_at_8[(small_b, x)],
            )
        )
    return rows


def cmd_verify(args: argparse.Namespace) -> int:
    suites = {
        "lerch": _verify_lerch_rows,
        "bernoulli": _verify_bernoulli_rows,
        "powersum": _verify_powersum_rows,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    rows: list[tuple[str, str, float, bool]] = []
    for name in names:
        rows.extend(suites[name]())
    if args.format == "json":
        _emit_json(
            {
                "schema_version": SCHEMA_VERSION,
                "command": "verify",
                "suite": args.suite,
                "checks": [
                    {
                        "check": check,
                        "params": detail,
                        "relative_error": err,
                        "pass": ok,
                    }
                    for check, detail, err, ok in rows
                ],
            }
        )
    else:
        _comment(f"schema_version={SCHEMA_VERSION}")
        _comment(f"command=verify suite={args.suite}")
        writer = _csv_writer()
        writer.writerow(["check", "params", "relative_error", "pass"])
        for check, detail, err, ok in rows:
            writer.writerow([check, detail, _fmt(err), _fmt(ok)])
    return 0 if all(ok for _, _, _, ok in rows) else 1


def _parse_grid(path: str) -> list[tuple[float, float, float, int]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise GridFormatError(f"cannot read grid file {path}: {exc}") from exc
    points = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = [f.strip() for f in line.split(",")]
        if len(fields) != 4:
            raise GridFormatError(
                f"{path}:{lineno}: expected 4 fields a,b,c,x, got {len(fields)}"
            )
        try:
            points.append((float(fields[0]), float(fields[1]), float(fields[2]), int(fields[3])))
        except ValueError as exc:
            raise GridFormatError(f"{path}:{lineno}: {exc}") from exc
    return points


_SWEEP_COLUMNS = ["index", "a", "b", "c", "x"] + _METRIC_COLUMNS + ["error"]


def cmd_sweep(args: argparse.Namespace) -> int:
    grid = _parse_grid(args.grid_file)
    results = sweep(grid, args.eps_tail, args.epsilon_ineq)
    if args.format == "json":
        entries = []
        for res in results:
            entry: dict[str, Any] = {
                "index": res.index,
                "a": res.a,
                "b": res.b,
                "c": res.c,
                "x": res.x,
                "kind": res.kind,
                "error": res.error,
            }
            if res.report is not None:
                entry.update(_report_dict(res.report))
            entries.append(entry)
        _emit_json(
            {
                "schema_version": SCHEMA_VERSION,
                "command": "sweep",
                "grid_file": args.grid_file,
                "eps_tail": args.eps_tail,
                "epsilon_ineq": args.epsilon_ineq,
                "results": entries,
            }
        )
        return 0
    _comment(f"schema_version={SCHEMA_VERSION}")
    _comment(
        "command=sweep "
        + _kv(
            [
                ("grid_file", args.grid_file),
                ("eps_tail", args.eps_tail),
                ("epsilon_ineq", args.epsilon_ineq),
            ]
        )
    )
    writer = _csv_writer()
    writer.writerow(_SWEEP_COLUMNS)
    for res in results:
        prefix = [res.index, _fmt(res.a), _fmt(res.b), _fmt(res.c), res.x]
        if res.report is not None:
            writer.writerow(prefix + _report_row(res.report) + [""])
        else:
            blank = [""] * (len(_METRIC_COLUMNS) - 1)
            writer.writerow(prefix + [res.kind or ""] + blank + [res.error or ""])
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gpgamma",
        description=(
            "Exact posterior of the Generalized Poisson count level and its "
            "gamma approximations"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_model_args(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("-a", type=float, required=True, help="model constant a")
        sp.add_argument("-b", type=float, required=True, help="rate constant b in (0,1)")
        sp.add_argument("-c", type=float, required=True, help="model constant c")
        sp.add_argument("-x", type=int, required=True, help="observed count")
        sp.add_argument(
            "--eps-tail",
            type=float,
            default=1e-10,
            help="relative truncation tail for the exact posterior (default 1e-10)",
        )

    def add_format_arg(sp: argparse.ArgumentParser) -> None:
        sp.add_argument(
            "--format",
            choices=("csv", "json"),
            default="csv",
            help="output format (default csv)",
        )

    sp = sub.add_parser("posterior", help="exact posterior table of k")
    add_model_args(sp)
    add_format_arg(sp)
    sp.set_defaults(func=cmd_posterior)

    sp = sub.add_parser("approx", help="gamma approximation and its discretized pmf")
    add_model_args(sp)
    sp.add_argument(
        "--kind",
        choices=("theorem1", "moment-matched"),
        required=True,
        help="gamma construction",
    )
    add_format_arg(sp)
    sp.set_defaults(func=cmd_approx)

    sp = sub.add_parser("compare", help="metrics and overlay for both gamma kinds")
    add_model_args(sp)
    sp.add_argument(
        "--epsilon-ineq",
        type=float,
        default=0.01,
        help="epsilon for the validity inequality (default 0.01)",
    )
    add_format_arg(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("verify", help="numerical identity checks")
    sp.add_argument(
        "suite",
        choices=("lerch", "bernoulli", "powersum", "all"),
        help="which identity suite to run",
    )
    add_format_arg(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("sweep", help="comparison reports over a grid file")
    sp.add_argument("grid_file", help="CSV file with lines a,b,c,x (# comments allowed)")
    sp.add_argument("--eps-tail", type=float, default=1e-10)
    sp.add_argument("--epsilon-ineq", type=float, default=0.01)
    add_format_arg(sp)
    sp.set_defaults(func=cmd_sweep)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "kind", None) == "moment-matched":
        args.kind = "moment_matched"
    try:
        return args.func(args)
    except GridFormatError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, PrecisionError, NumericError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def run() -> None:
    raise SystemExit(main())
