"""Command-line front end: compute, verify, sweep, lemma-check, wns-region.

Data goes to stdout and diagnostics to stderr. Exit codes:

    0  success / PASS
    1  verification or lemma check FAIL
    2  usage or parameter-domain error, or no closed form available
    3  numeric failure during a search
    4  output could not be written
"""
from __future__ import annotations

import argparse
import contextlib
import csv
import io
import json
import os
import sys

import numpy as np

from .closed_forms import closed_form
from .errors import (
    ConditionNotMetError,
    GeoConstError,
    NumericFailureError,
    ParameterDomainError,
    UnsupportedBranchError,
    UnsupportedCombinationError,
)
from .functionals import ConstantKind, ConstantQuery
from .lemmas import lemma1_check, lemma2_max_check
from .properties import RegionQuery, wns_lambda_threshold, wns_region_scan
from .norms import parse_space
from .search import ComputationResult, SearchConfig, compute_constant, verify_against_closed_form

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC, EXIT_IO = 0, 1, 2, 3, 4
THREADS_ENV = "GEOCONST_THREADS"

RESULT_FIELDS = [
    "space",
    "constant",
    "params",
    "value",
    "closed_form",
    "abs_diff",
    "theta_x",
    "theta_y",
    "t",
    "branch",
    "evaluations",
]
VERIFY_FIELDS = RESULT_FIELDS + ["tol", "status"]
SWEEP_FIELDS = ["lambda", "constant", "xi", "eta", "value", "closed_form", "abs_diff"]
REGION_FIELDS = ["lambda", "lyj", "bound", "holds"]

_NUMBER = {"type": ["number", "null"]}
RESULT_SCHEMA = {
    "type": "object",
    "required": ["space", "constant", "params", "value", "witness", "closed_form", "abs_diff", "evaluations"],
    "additionalProperties": False,
    "properties": {
        "space": {"type": "string"},
        "constant": {"enum": [k.value for k in ConstantKind]},
        "params": {"type": "object", "additionalProperties": {"type": "number"}},
        "value": {"type": "number"},
        "witness": {
            "type": "object",
            "required": ["x", "y", "t", "theta_x", "theta_y", "branch"],
            "additionalProperties": False,
            "properties": {
                "x": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
                "y": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
                "t": {"type": "number"},
                "theta_x": {"type": "number"},
                "theta_y": {"type": "number"},
                "branch": {"enum": ["scale-y", "scale-x"]},
            },
        },
        "closed_form": _NUMBER,
        "abs_diff": _NUMBER,
        "evaluations": {"type": "integer"},
    },
}
VERIFY_SCHEMA = {
    **RESULT_SCHEMA,
    "required": RESULT_SCHEMA["required"] + ["tol", "status"],
    "properties": {**RESULT_SCHEMA["properties"], "tol": {"type": "number"}, "status": {"enum": ["PASS", "FAIL"]}},
}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def fmt(v) -> str:
    """12 significant digits, locale independent; empty for missing values."""
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".12g")


def _num(v):
    return None if v is None else float(fmt(v))


# --- argument parsing -------------------------------------------------------


def _add_constant_args(p: argparse.ArgumentParser, with_space: bool = True):
    if with_space:
        p.add_argument("--space", required=True, help="bf:lambda=<r> | gbf:lambda=<r>,p=<r> | lp:p=<r>")
    p.add_argument("--constant", required=True, choices=[k.value for k in ConstantKind])
    p.add_argument("--xi", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--p-exp", type=float, default=2.0, help="exponent of the generalized NJ constant")
    p.add_argument("--t-mean", type=float, default=2.0, help="power-mean exponent of the James-type constant")
    p.add_argument("--tau", type=float, default=1.0)
    p.add_argument("--lam", type=float, default=1.0, help="lambda weight of J_{lambda,mu}")
    p.add_argument("--mu", type=float, default=1.0)
    p.add_argument("--grid", type=int, default=SearchConfig.angle_grid_n, help="angle lattice size")
    p.add_argument("--scale-grid", type=int, default=SearchConfig.scale_grid_n, help="lattice size for t in [0,1]")
    p.add_argument("--refine-iters", type=int, default=SearchConfig.refine_iters)


def _add_lambda_range(p: argparse.ArgumentParser, default_steps: int):
    p.add_argument("--lambda-from", type=float, required=True)
    p.add_argument("--lambda-to", type=float, required=True)
    p.add_argument("--lambda-steps", type=int, default=default_steps)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geoconst", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="numerical supremum of one constant")
    _add_constant_args(p)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("verify", help="compare the numerical supremum with the closed form")
    _add_constant_args(p)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--format", choices=["csv", "json"], default="csv")

    p = sub.add_parser("sweep", help="compute a constant along a lambda grid")
    p.add_argument("--space-template", required=True, help="space text containing {lambda}")
    _add_constant_args(p, with_space=False)
    _add_lambda_range(p, default_steps=11)
    p.add_argument("--out", default="-", help="output path, '-' for stdout")

    p = sub.add_parser("lemma-check", help="lattice check of an auxiliary inequality")
    p.add_argument("--lemma", type=int, choices=[1, 2], required=True)
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--t", type=float, default=1.0)
    p.add_argument("--xi", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--grid-n", type=int, default=None, help="lattice size (default 200 for lemma 1, 400 for lemma 2)")

    p = sub.add_parser("wns-region", help="weak-normal-structure condition along a lambda grid")
    p.add_argument("--xi", type=float, default=1.0)
    p.add_argument("--eta", type=float, default=1.0)
    _add_lambda_range(p, default_steps=21)
    return parser


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise CliError(f"{THREADS_ENV} must be a nonnegative integer, got {raw!r}", EXIT_USAGE) from None
    if n < 0:
        raise CliError(f"{THREADS_ENV} must be a nonnegative integer, got {raw!r}", EXIT_USAGE)
    return n


def _config(args, tol: float = 1e-3) -> SearchConfig:
    return SearchConfig(
        angle_grid_n=args.grid,
        scale_grid_n=args.scale_grid,
        refine_iters=args.refine_iters,
        accept_tol=tol,
        workers=_threads(),
    )


def _query(args) -> ConstantQuery:
    return ConstantQuery(
        ConstantKind(args.constant),
        xi=args.xi,
        eta=args.eta,
        lam=args.lam,
        mu=args.mu,
        p_exp=args.p_exp,
        t_mean=args.t_mean,
        tau=args.tau,
    )


# --- record rendering -------------------------------------------------------


def _params_text(q: ConstantQuery) -> str:
    return ";".join(f"{k}={fmt(v)}" for k, v in q.params().items())


def result_row(res: ComputationResult) -> dict[str, str]:
    w = res.witness
    return {
        "space": res.space.to_text(),
        "constant": res.query.kind.value,
        "params": _params_text(res.query),
        "value": fmt(res.value),
        "closed_form": fmt(res.closed_form),
        "abs_diff": fmt(res.abs_diff),
        "theta_x": fmt(w.theta_x),
        "theta_y": fmt(w.theta_y),
        "t": fmt(w.t),
        "branch": w.branch.value,
        "evaluations": fmt(res.evaluations),
    }


def result_json(res: ComputationResult) -> dict:
    w = res.witness
    return {
        "space": res.space.to_text(),
        "constant": res.query.kind.value,
        "params": {k: _num(v) for k, v in res.query.params().items()},
        "value": _num(res.value),
        "witness": {
            "x": [_num(w.x.a), _num(w.x.b)],
            "y": [_num(w.y.a), _num(w.y.b)],
            "t": _num(w.t),
            "theta_x": _num(w.theta_x),
            "theta_y": _num(w.theta_y),
            "branch": w.branch.value,
        },
        "closed_form": _num(res.closed_form),
        "abs_diff": _num(res.abs_diff),
        "evaluations": int(res.evaluations),
    }


def _write_csv(stream, fields, rows):
    writer = csv.DictWriter(stream, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)


def _emit(out, fmt_name: str, fields, row, doc):
    if fmt_name == "json":
        out.write(json.dumps(doc) + "\n")
    else:
        _write_csv(out, fields, [row])


# --- commands ---------------------------------------------------------------


def cmd_compute(args, out) -> int:
    res = compute_constant(parse_space(args.space), _query(args), _config(args))
    _emit(out, args.format, RESULT_FIELDS, result_row(res), result_json(res))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    space, query = parse_space(args.space), _query(args)
    if not args.tol >= 0:
        raise ParameterDomainError(f"--tol must be >= 0, got {args.tol}")
    try:
        closed_form(space, query)
    except (UnsupportedCombinationError, ConditionNotMetError, UnsupportedBranchError) as exc:
        raise CliError(f"verify: {exc}", EXIT_USAGE) from None
    res = verify_against_closed_form(space, query, _config(args, args.tol))
    status = "PASS" if res.agrees else "FAIL"
    row = {**result_row(res), "tol": fmt(args.tol), "status": status}
    doc = {**result_json(res), "tol": _num(args.tol), "status": status}
    _emit(out, args.format, VERIFY_FIELDS, row, doc)
    print(f"{status}: value={fmt(res.value)} closed_form={fmt(res.closed_form)} abs_diff={fmt(res.abs_diff)}", file=sys.stderr)
    return EXIT_OK if res.agrees else EXIT_FAIL


@contextlib.contextmanager
def _open_out(path: str, stdout):
    if path == "-":
        yield stdout
        return
    try:
        fh = open(path, "w", newline="", encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write --out {path!r}: {exc.strerror}", EXIT_IO) from None
    with fh:
        yield fh


def cmd_sweep(args, out) -> int:
    if "{lambda}" not in args.space_template:
        raise CliError("--space-template must contain the placeholder {lambda}", EXIT_USAGE)
    if args.lambda_steps < 1:
        raise CliError("--lambda-steps must be >= 1", EXIT_USAGE)
    if args.lambda_to < args.lambda_from:
        raise CliError("--lambda-to must be >= --lambda-from", EXIT_USAGE)
    query, cfg = _query(args), _config(args)
    lams = np.linspace(args.lambda_from, args.lambda_to, args.lambda_steps)
    spaces = [parse_space(args.space_template.replace("{lambda}", repr(float(lam)))) for lam in lams]
    skew = query.kind in (ConstantKind.LYJ, ConstantKind.LYJ_PRIME)
    with _open_out(args.out, out) as stream:
        buf = io.StringIO()
        rows = []
        for lam, space in zip(lams, spaces):
            res = compute_constant(space, query, cfg)
            rows.append(
                {
                    "lambda": fmt(lam),
                    "constant": query.kind.value,
                    "xi": fmt(query.xi) if skew else "",
                    "eta": fmt(query.eta) if skew else "",
                    "value": fmt(res.value),
                    "closed_form": fmt(res.closed_form),
                    "abs_diff": fmt(res.abs_diff),
                }
            )
        _write_csv(buf, SWEEP_FIELDS, rows)
        try:
            stream.write(buf.getvalue())
            stream.flush()
        except OSError as exc:
            raise CliError(f"cannot write output: {exc}", EXIT_IO) from None
    return EXIT_OK


def _lattice_lines(label: str, chk) -> list[str]:
    x, y = chk.argmax
    return [
        f"{label}.status={'PASS' if chk.passed else 'FAIL'}",
        f"{label}.max={fmt(chk.max_value)}",
        f"{label}.reference={fmt(chk.reference)}",
        f"{label}.argmax=({fmt(x)},{fmt(y)})",
        f"{label}.margin={fmt(chk.margin)}",
    ]


def cmd_lemma_check(args, out) -> int:
    if args.lemma == 1:
        chk = lemma1_check(args.lam, args.grid_n or 200)
        lines = [f"lemma=1", f"lambda={fmt(args.lam)}"] + _lattice_lines("bound", chk)
        passed = chk.passed
    else:
        chk = lemma2_max_check(args.lam, args.t, args.xi, args.eta, args.grid_n or 400)
        lines = [
            "lemma=2",
            f"lambda={fmt(args.lam)}",
            f"t={fmt(args.t)}",
            f"xi={fmt(args.xi)}",
            f"eta={fmt(args.eta)}",
            f"f.corner_stated={fmt(chk.f_corner_stated)}",
            f"g.corner_stated={fmt(chk.g_corner_stated)}",
        ]
        lines += _lattice_lines("f", chk.f) + _lattice_lines("g", chk.g)
        passed = chk.passed
    lines.insert(0, "PASS" if passed else "FAIL")
    out.write("\n".join(lines) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_wns_region(args, out) -> int:
    q = RegionQuery(args.xi, args.eta, args.lambda_from, args.lambda_to, args.lambda_steps)
    threshold = wns_lambda_threshold(args.xi, args.eta)
    rows = [
        {"lambda": fmt(r.lam), "lyj": fmt(r.lyj), "bound": fmt(r.bound), "holds": fmt(r.holds)}
        for r in wns_region_scan(q)
    ]
    print(f"threshold={fmt(threshold)}", file=sys.stderr)
    _write_csv(out, REGION_FIELDS, rows)
    return EXIT_OK


COMMANDS = {
    "compute": cmd_compute,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "lemma-check": cmd_lemma_check,
    "wns-region": cmd_wns_region,
}


def main(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, stdout)
    except CliError as exc:
        print(f"geoconst: {exc}", file=sys.stderr)
        return exc.code
    except NumericFailureError as exc:
        print(f"geoconst: numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except GeoConstError as exc:
        print(f"geoconst: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
