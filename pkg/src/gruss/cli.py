"""The ``gruss`` command.

Usage::

    gruss check INSTANCE.json [--tol 1e-9]
    gruss bound INSTANCE.json --bound {t1,t2,c3,t3,c4,all}
    gruss integral INSTANCE.json --prop {p1,c5,r5,p2,c6}
    gruss sharpness --family {c3-q,t3-lambda,search} [--q ...] [--lambda ...]
                    [--seed N] [--trials N] [--out FILE] [--format csv|json|text]

Exit codes: 0 when everything holds or is admissible, 1 when a bound is
violated or an instance is inadmissible, 2 on usage or parse errors.
Output is deterministic: the same file, flags and seed give byte-identical
stdout and output files (wall time is only reported with ``--timing``).
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import math
import sys
import time
from pathlib import Path

from . import bounds, measures, sharpness
from .bounds import VERDICT_HOLDS, VERDICT_NA, VERDICT_VIOLATED, BoundId, BoundReport
from .conditions import ADMISSIBLE_TOL, Box, Combination, check, combine
from .errors import GrussError, NonUnitError
from .io import InstanceFile, dumps, fmt, load_instance
from .space import WeightedSpace

EXIT_OK, EXIT_VIOLATED, EXIT_USAGE = 0, 1, 2

SWEEP_COLUMNS = (
    "parameter",
    "measured",
    "bound_normalizer",
    "implied_constant",
    "analytic_prediction",
    "abs_error",
)
SEARCH_COLUMNS = (
    "bound",
    "mode",
    "dim",
    "seed",
    "trials",
    "evaluated",
    "max_ratio",
    "argmax_trial",
    "violations",
)


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _box_arg(text: str) -> Box:
    vals = _float_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI, got {text!r}")
    return Box(*vals)


def _condition_row(name: str, c) -> dict:
    return {
        "name": name,
        "slack_re": c.slack_re,
        "slack_ball": c.slack_ball,
        "admissible": c.admissible,
    }


def _bound_row(rep: BoundReport, tol: float) -> dict:
    return {
        "bound": rep.bound_id.value,
        "functional": rep.functional,
        "measured": rep.measured,
        "bound_value": rep.bound_value,
        "ratio": rep.ratio,
        "verdict": rep.verdict(tol),
        "reason": rep.reason,
        "slacks": [c.slack_re for c in rep.conditions],
    }


def _na_row(bound: str, reason: str) -> dict:
    return {
        "bound": bound,
        "functional": None,
        "measured": None,
        "bound_value": None,
        "ratio": None,
        "verdict": VERDICT_NA,
        "reason": reason,
        "slacks": [],
    }


def _overall(rows: list[dict]) -> str:
    verdicts = [r["verdict"] for r in rows]
    if VERDICT_VIOLATED in verdicts:
        return VERDICT_VIOLATED
    if VERDICT_HOLDS in verdicts:
        return VERDICT_HOLDS
    return VERDICT_NA


# --- vector-file helpers ----------------------------------------------------


def _need(inst: InstanceFile, names: tuple[str, ...] = (), boxes: tuple[str, ...] = (), lam: bool = False) -> str:
    """Empty string when all fields are present, else a description of the first gap."""
    for n in names:
        if n not in inst.vectors:
            return f"needs vector {n}"
    if lam and inst.lam is None:
        return "needs lambda"
    for b in boxes:
        if b not in inst.boxes:
            return f"needs box {b}"
    return ""


def _carrier(inst: InstanceFile):
    """Space, unit vector and box scale for the file's run type.

    Integral files without ``h`` use the constant carrier ``1/sqrt(mu)``;
    pointwise boxes then scale by ``sqrt(mu)``.
    """
    space = WeightedSpace(inst.weights)
    if inst.kind == "vector":
        return space, inst.vectors["e"], 1.0
    sample = measures.MeasureSample(inst.weights, inst.vectors["f"], inst.vectors["g"], inst.vectors.get("h"))
    if sample.h is not None:
        return space, measures.require_h(sample), 1.0
    sample = measures.uniform_h(sample)
    return space, sample.h, math.sqrt(sample.total_mass)


def _run_check(inst: InstanceFile, tol: float) -> tuple[dict, int]:
    space, e, k = _carrier(inst)
    a, b = ("x", "y") if inst.kind == "vector" else ("f", "g")
    rows = []
    for name in (a, b):
        if name in inst.boxes and name in inst.vectors:
            rows.append(_condition_row(name, check(space, inst.vectors[name], e, inst.boxes[name].scaled(k), tol)))
    if "combination" in inst.boxes and inst.lam is not None and a in inst.vectors and b in inst.vectors:
        signs = (1, -1) if inst.two_sided else (1,)
        for s in signs:
            v = combine(space, inst.vectors[a], inst.vectors[b], Combination(inst.lam, s))
            label = f"lam*{a} {'+' if s > 0 else '-'} (1-lam)*{b}"
            rows.append(_condition_row(label, check(space, v, e, inst.boxes["combination"].scaled(k), tol)))
    if not rows:
        raise UsageError("nothing to check: no box matches a vector in the file")
    ok = all(r["admissible"] for r in rows)
    return {"conditions": rows, "verdict": "ADMISSIBLE" if ok else "INADMISSIBLE"}, (
        EXIT_OK if ok else EXIT_VIOLATED
    )


_BOUND_NEEDS = {
    "t1": dict(names=("x", "y"), boxes=("x", "y")),
    "t2": dict(names=("x", "y"), boxes=("x", "y")),
    "c3": dict(names=("x", "y"), boxes=("x", "y")),
    "t3": dict(names=("x", "y"), boxes=("combination",), lam=True),
    "c4": dict(names=("x", "y"), boxes=("combination",), lam=True),
    "schwartz": dict(names=("x", "y")),
}


def _evaluate_bound(name: str, inst: InstanceFile, tol: float) -> BoundReport:
    space = WeightedSpace(inst.weights)
    v = inst.vectors
    args = (space, v["x"], v["y"], v["e"])
    bx = inst.boxes
    if name == "t1":
        return bounds.bound_theorem1(*args, bx["x"], bx["y"], tol)
    if name == "t2":
        return bounds.bound_theorem2(*args, bx["x"], bx["y"], tol)
    if name == "c3":
        return bounds.bound_corollary3(*args, bx["x"], bx["y"], tol)
    if name == "t3":
        return bounds.bound_theorem3(*args, bx["combination"], inst.lam, tol)
    if name == "c4":
        return bounds.bound_corollary4(*args, bx["combination"], inst.lam, tol)
    return bounds.bound_schwartz(*args)


def _run_bound(inst: InstanceFile, which: str, tol: float) -> tuple[dict, int]:
    if inst.kind != "vector":
        raise UsageError("bound needs a vector file (with e); use 'integral' for f, g files")
    names = ["t1", "t2", "c3", "t3", "c4", "schwartz"] if which == "all" else [which]
    rows = []
    for name in names:
        missing = _need(inst, **_BOUND_NEEDS[name])
        if missing:
            if which != "all":
                raise UsageError(f"--bound {name} {missing}")
            rows.append(_na_row(name.upper(), missing))
            continue
        rows.append(_bound_row(_evaluate_bound(name, inst, tol), tol))
    verdict = _overall(rows)
    return {"bounds": rows, "verdict": verdict}, (EXIT_VIOLATED if verdict == VERDICT_VIOLATED else EXIT_OK)


def _run_integral(inst: InstanceFile, prop: str, tol: float) -> tuple[dict, int]:
    if inst.kind != "integral":
        raise UsageError("integral needs a file with f and g")
    v = inst.vectors
    sample = measures.MeasureSample(inst.weights, v["f"], v["g"], v.get("h"))
    bx = inst.boxes
    need_boxes = ("combination",) if prop in ("p2", "c6") else ("f", "g")
    for b in need_boxes:
        if b not in bx:
            raise UsageError(f"--prop {prop} needs box {b}")
    if prop in ("p2", "c6") and inst.lam is None:
        raise UsageError(f"--prop {prop} needs lambda")
    if prop in ("p1", "p2") and "h" not in v:
        raise UsageError(f"--prop {prop} needs h")

    try:
        if prop == "r5":
            r = measures.ratio_remark5(sample, bx["f"], bx["g"], tol)
            row = {
                "bound": "R5",
                "left": r.left,
                "right": r.right,
                "verdict": r.verdict(tol),
                "reason": r.reason,
            }
        else:
            if prop == "p1":
                rep = measures.check_prop1(sample, bx["f"], bx["g"], tol)
            elif prop == "c5":
                rep = measures.check_cor5(sample, bx["f"], bx["g"], tol)
            elif prop == "p2":
                rep = measures.check_prop2(sample, bx["combination"], inst.lam, inst.two_sided, tol)
            else:
                rep = measures.check_cor6(sample, bx["combination"], inst.lam, inst.two_sided, tol)
            row = _bound_row(rep, tol)
        row["prop"] = prop
    except NonUnitError:
        raise
    except GrussError as exc:
        row = _na_row(prop.upper(), str(exc))
        row["prop"] = prop
    verdict = row["verdict"]
    return {"bounds": [row], "verdict": verdict}, (EXIT_VIOLATED if verdict == VERDICT_VIOLATED else EXIT_OK)


# --- sharpness ----------------------------------------------------------------


def _sweep_rows(results) -> list[dict]:
    return [
        {
            "parameter": r.parameter,
            "measured": r.measured,
            "bound_normalizer": r.bound_normalizer,
            "implied_constant": r.implied_constant,
            "analytic_prediction": r.analytic_prediction,
            "abs_error": r.abs_error,
        }
        for r in results
    ]


def _run_sharpness(args) -> tuple[dict, int]:
    if args.family == "c3-q":
        qs = args.q if args.q is not None else [0.5, 0.1, 0.01, 0.001]
        rows = _sweep_rows(sharpness.sweep_q(qs))
        return {"family": "c3-q", "columns": list(SWEEP_COLUMNS), "rows": rows}, EXIT_OK
    if args.family == "t3-lambda":
        lams = args.lam if args.lam is not None else [0.1, 0.25, 0.5, 0.75, 0.9]
        box = args.box_x or Box(0.0, 2.0)
        if not box.is_real:
            raise UsageError("t3-lambda needs a real box")
        rows = _sweep_rows(sharpness.sweep_lambda(lams, box.lo.real, box.hi.real))
        return {"family": "t3-lambda", "columns": list(SWEEP_COLUMNS), "rows": rows}, EXIT_OK

    bound = BoundId(args.bound.upper())
    default_box = Box(1.0, 3.0) if bound in (BoundId.T2, BoundId.C3) else Box(0.0, 1.0)
    lam = None
    if args.lam is not None:
        if len(args.lam) != 1:
            raise UsageError("search takes a single --lambda value")
        lam = args.lam[0]
    cfg = sharpness.SearchConfig(
        seed=args.seed,
        trials=args.trials,
        dim=args.dim,
        bound=bound,
        box_x=args.box_x or default_box,
        box_y=args.box_y,
        complex_mode=args.mode == "complex",
        lam=lam,
    )
    res = sharpness.random_search(cfg)
    row = {
        "bound": bound.value,
        "mode": args.mode,
        "dim": cfg.dim,
        "seed": cfg.seed,
        "trials": res.trials,
        "evaluated": res.evaluated,
        "max_ratio": res.max_ratio,
        "argmax_trial": res.argmax_trial,
        "violations": res.violations,
    }
    inst = res.instance
    argmax = None
    if inst is not None:
        argmax = {"weights": inst.space.weights, "e": inst.e, "x": inst.x, "y": inst.y, "lambda": inst.lam}
    report = {"family": "search", "columns": list(SEARCH_COLUMNS), "rows": [row], "argmax_instance": argmax}
    return report, (EXIT_VIOLATED if res.violations else EXIT_OK)


# --- rendering ----------------------------------------------------------------


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, complex):
        return f"{fmt(v.real)}{'+' if v.imag >= 0 else '-'}{fmt(abs(v.imag))}j"
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def render_text(report: dict) -> str:
    lines = [f"# gruss {report['run']}  input={report['input'] or '-'}  tol={fmt(report['tolerance'])}"]
    for c in report.get("conditions", []):
        lines.append(
            f"condition {c['name']}: slack_re={_cell(c['slack_re'])} "
            f"slack_ball={_cell(c['slack_ball'])} "
            f"{'ADMISSIBLE' if c['admissible'] else 'INADMISSIBLE'}"
        )
    for b in report.get("bounds", []):
        if "left" in b:
            body = f"left={_cell(b['left'])} right={_cell(b['right'])}"
        else:
            body = (
                f"measured={_cell(b['measured'])} bound={_cell(b['bound_value'])} "
                f"ratio={_cell(b['ratio'])}"
            )
        tail = f"  ({b['reason']})" if b["reason"] else ""
        label = f"{b['prop']} [{b['bound']}]" if "prop" in b else b["bound"]
        lines.append(f"{label}: {body} {b['verdict']}{tail}")
    if "rows" in report:
        cols = report["columns"]
        lines.append("  ".join(cols))
        for r in report["rows"]:
            lines.append("  ".join(_cell(r[c]) for c in cols))
    if "verdict" in report:
        lines.append(f"verdict: {report['verdict']}")
    if "wall_time" in report:
        lines.append(f"wall_time: {report['wall_time']:.6f}s")
    return "\n".join(lines) + "\n"


def render_csv(report: dict) -> str:
    buf = _stdio.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if "rows" in report:
        cols = report["columns"]
        writer.writerow(cols)
        for r in report["rows"]:
            writer.writerow([_cell(r[c]) for c in cols])
        return buf.getvalue()
    cols = ["bound", "measured", "bound_value", "ratio", "verdict"]
    writer.writerow(cols)
    for b in report.get("bounds", []):
        writer.writerow([_cell(b.get(c)) for c in cols])
    return buf.getvalue()


def render(report: dict, fmt_name: str) -> str:
    if fmt_name == "json":
        return dumps(report) + "\n"
    if fmt_name == "csv":
        return render_csv(report)
    return render_text(report)


# --- argument parsing ---------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=ADMISSIBLE_TOL, help="admissibility and verdict tolerance")
    common.add_argument("--format", choices=("text", "json", "csv"), default=None)
    common.add_argument("--out", type=Path, default=None, help="write the report here")
    common.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")

    parser = argparse.ArgumentParser(prog="gruss", description="Grüss-type inequalities on weighted spaces.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", parents=[common], help="admissibility slacks")
    p.add_argument("instance", type=Path)

    p = sub.add_parser("bound", parents=[common], help="evaluate bounds on a vector instance")
    p.add_argument("instance", type=Path)
    p.add_argument("--bound", choices=("t1", "t2", "c3", "t3", "c4", "all"), default="all")

    p = sub.add_parser("integral", parents=[common], help="integral forms over a discrete measure")
    p.add_argument("instance", type=Path)
    p.add_argument("--prop", choices=("p1", "c5", "r5", "p2", "c6"), required=True)

    p = sub.add_parser("sharpness", parents=[common], help="extremal sweeps and random search")
    p.add_argument("--family", choices=("c3-q", "t3-lambda", "search"), required=True)
    p.add_argument("--q", type=_float_list, default=None, help="comma-separated q values in (0,1)")
    p.add_argument("--lambda", dest="lam", type=_float_list, default=None, help="comma-separated lambda values")
    p.add_argument("--box-x", type=_box_arg, default=None, help="LO,HI")
    p.add_argument("--box-y", type=_box_arg, default=None, help="LO,HI")
    p.add_argument("--bound", choices=("t1", "t2", "c3", "t3", "c4"), default="t1")
    p.add_argument("--mode", choices=("real", "complex"), default="real")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1000)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.tol < 0:
        parser.error("--tol must be nonnegative")
    start = time.perf_counter()
    try:
        if args.command == "sharpness":
            body, code = _run_sharpness(args)
            report = {"run": "sharpness", "input": None, "tolerance": args.tol, **body}
        else:
            inst = load_instance(args.instance)
            if args.command == "check":
                body, code = _run_check(inst, args.tol)
            elif args.command == "bound":
                body, code = _run_bound(inst, args.bound, args.tol)
            else:
                body, code = _run_integral(inst, args.prop, args.tol)
            report = {
                "run": args.command,
                "input": args.instance.name,
                "tolerance": args.tol,
                "inputs": inst.raw,
                **body,
            }
    except (UsageError, ValueError) as exc:
        where = f"{args.instance}: " if getattr(args, "instance", None) else ""
        print(f"gruss: error: {where}{exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.timing:
        report["wall_time"] = time.perf_counter() - start

    if args.out is not None:
        out_fmt = args.format or ("csv" if args.out.suffix == ".csv" else "json")
        args.out.write_text(render(report, out_fmt), encoding="utf-8")
        sys.stdout.write(render_text(report))
    else:
        sys.stdout.write(render(report, args.format or "text"))
    return code


if __name__ == "__main__":
    sys.exit(main())
