"""Command-line interface.

Exit codes: 0 success, 2 input or validation error, 1 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .core_model import AssessmentConfig, OperationError, make_lumped
from .flow_metrics import cumulative_net, effect_accumulator, effect_primitive, evaluate_flow
from .io_formats import (
    csv_text,
    ranking_to_csv,
    ranking_to_json,
    read_catalog,
    read_events,
    refset_to_csv,
    refset_to_json,
    report_to_json,
    report_to_table,
    sweep_to_csv,
    sweep_to_json,
    table_to_csv,
    table_to_json,
)
from .lumped_metrics import DaughterSpec, evaluate_lumped
from .reference_sets import (
    ReferenceSetSpec,
    calibrate_reference_set,
    generate_reference_set,
    group_efficiencies,
    verify_reference_set,
)
from .studies import CRITERIA, SweepSpec, rank_operations, run_sweep, run_table_study


class UsageError(OperationError):
    pass


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _render_report(report, fmt: str) -> str:
    return report_to_json(report) if fmt == "json" else report_to_table(report)


def _config(args) -> AssessmentConfig:
    return AssessmentConfig(t1=args.t1)


def cmd_eval_lumped(args) -> None:
    op = make_lumped(args.re, args.pe, args.t_r, args.t_p)
    report = evaluate_lumped(op, _config(args), DaughterSpec(args.td))
    _emit(_render_report(report, args.format), args.out)


def _curve_samples(flow, cfg: AssessmentConfig, samples: int) -> str:
    ice = cumulative_net(flow)
    d = effect_primitive(flow)
    try:
        t_a, wde = effect_accumulator(flow, cfg)
        t_end = t_a + cfg.t1
    except OperationError:
        t_a, wde = None, None
        t_end = flow.t_last + cfg.t1
    t0 = flow.t_0
    times = {e.t for e in flow.events}
    if t_a is not None:
        times |= {t_a, t_end}
    if samples > 1:
        step = (t_end - t0) / (samples - 1)
        times |= {t0 + i * step for i in range(samples)}
    lines = [["t", "ice", "D", "wde"]]
    for t in sorted(times):
        w = "" if t_a is None or t < t_a else repr(wde(t))
        lines.append([repr(t), repr(ice(t)), repr(d(t)), w])
    return csv_text(lines)


def cmd_eval_flow(args) -> None:
    with open(args.input, encoding="utf-8", newline="") as fh:
        flow = read_events(fh)
    cfg = _config(args)
    report = evaluate_flow(flow, cfg, DaughterSpec(args.td))
    _emit(_render_report(report, args.format), args.out)
    if args.dump_curves:
        _emit(_curve_samples(flow, cfg, args.samples), args.dump_curves)


def cmd_refset(args) -> None:
    spec = ReferenceSetSpec(args.base_re, args.base_t, args.growth, args.groups, args.horizon)
    cfg = _config(args)
    ref = generate_reference_set(spec)
    if args.calibrate:
        ref = calibrate_reference_set(ref, cfg)
    effs = group_efficiencies(ref, cfg)
    if args.format == "json":
        text = refset_to_json(ref, effs, verify_reference_set(ref))
    else:
        text = refset_to_csv(ref, effs, args.precision)
    _emit(text, args.out)


def cmd_study(args) -> None:
    if (args.table is None) == (args.sweep is None):
        raise UsageError("give exactly one of --table or --sweep")
    cfg = AssessmentConfig(t1=args.t1, precision=args.precision)
    if args.table is not None:
        study = run_table_study(args.table, cfg, DaughterSpec(args.td))
        text = table_to_json(study) if args.format == "json" else table_to_csv(study)
    else:
        with open(args.sweep, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise UsageError(f"sweep spec is not valid JSON: {exc}") from None
        try:
            spec = SweepSpec.from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, OperationError):
                raise
            raise UsageError(f"malformed sweep spec: {exc}") from None
        rows = run_sweep(spec, cfg, DaughterSpec(args.td))
        text = sweep_to_json(spec.varying, rows) if args.format == "json" else sweep_to_csv(spec.varying, rows)
    _emit(text, args.out)


def cmd_rank(args) -> None:
    with open(args.input, encoding="utf-8", newline="") as fh:
        catalog = read_catalog(fh)
    ranked = rank_operations(catalog, args.criterion, _config(args), DaughterSpec(args.td))
    text = ranking_to_json(ranked) if args.format == "json" else ranking_to_csv(ranked)
    _emit(text, args.out)
    for op_id, msg in ranked.errors:
        print(f"warning: {op_id}: {msg}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="target-efficiency",
        description="Efficiency indicators for target operations.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--t1", type=float, default=1.0, help="estimated interval after completion (default 1)")
    common.add_argument("--td", type=float, default=1.0, help="daughter operation duration (default 1)")
    common.add_argument("--out", help="write output to this path instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval-lumped", parents=[common], help="indicators of a registration model")
    p.add_argument("--re", type=float, required=True)
    p.add_argument("--pe", type=float, required=True)
    p.add_argument("--t-r", dest="t_r", type=float, required=True)
    p.add_argument("--t-p", dest="t_p", type=float, required=True)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.set_defaults(func=cmd_eval_lumped)

    p = sub.add_parser("eval-flow", parents=[common], help="indicators of an event stream (CSV t,amount)")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--dump-curves", metavar="PATH", help="write ice, D and wde samples as CSV")
    p.add_argument("--samples", type=int, default=50, help="uniform grid points for --dump-curves")
    p.set_defaults(func=cmd_eval_flow)

    p = sub.add_parser("refset", parents=[common], help="reference set of capitalization chains")
    p.add_argument("--base-re", type=float, default=3.0)
    p.add_argument("--base-t", type=float, default=2.0)
    p.add_argument("--growth", type=float, default=1.1)
    p.add_argument("--groups", type=int, default=4)
    p.add_argument("--horizon", type=float, default=16.0)
    p.add_argument("--calibrate", action="store_true", help="match every group to group 1's efficiency")
    p.add_argument("--precision", type=int, default=6, help="significant digits in the grid")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_refset)

    p = sub.add_parser("study", parents=[common], help="reproduce a study table or run a sweep")
    p.add_argument("--table", type=int)
    p.add_argument("--sweep", metavar="SPEC.json")
    p.add_argument("--precision", type=int, help="override rendering decimals")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_study)

    p = sub.add_parser("rank", parents=[common], help="rank a catalog CSV (id,re,pe,t_r,t_p)")
    p.add_argument("--input", required=True)
    p.add_argument("--criterion", default="e_potential", choices=CRITERIA + ("efficiency_potential", "efficiency_pair"))
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_rank)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except (OperationError, OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {exc!r}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
