"""Readers and writers for event files, catalogs, reports and study tables."""

from __future__ import annotations

import csv
import io
import json
import math
import re
from typing import Iterable, TextIO

from .core_model import (
    FlowOperation,
    LumpedOperation,
    MetricsReport,
    OperationError,
    make_flow,
    make_lumped,
)
from .reference_sets import ReferenceSet
from .studies import RankedCatalog, SweepRow, TableStudy

EVENT_HEADER = ["t", "amount"]
CATALOG_HEADER = ["id", "re", "pe", "t_r", "t_p"]

_DECIMAL = re.compile(r"[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?")


class InputFormatError(OperationError):
    """Malformed input file; the message names the offending row."""


def parse_decimal(text: str, what: str = "value") -> float:
    """Parse a dot-decimal number; comma separators and non-finite values are rejected."""
    s = text.strip()
    if "," in s:
        raise InputFormatError(f"{what} {text!r}: comma decimal separator is not supported, use '.'")
    if not _DECIMAL.fullmatch(s):
        raise InputFormatError(f"{what} {text!r} is not a decimal number")
    value = float(s)
    if not math.isfinite(value):
        raise InputFormatError(f"{what} {text!r} is not finite")
    return value


def _rows(stream: TextIO, header: list[str], kind: str):
    reader = csv.reader(stream)
    first = next(reader, None)
    if first is None:
        raise InputFormatError(f"{kind} file is empty")
    if [h.strip() for h in first] != header:
        raise InputFormatError(f"{kind} file must start with header {','.join(header)!r}, got {','.join(first)!r}")
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            hint = " (comma decimal separator?)" if len(row) > len(header) else ""
            raise InputFormatError(f"row {lineno}: expected {len(header)} fields, got {len(row)}{hint}")
        yield lineno, row


def read_events(stream: TextIO) -> FlowOperation:
    events = []
    for lineno, row in _rows(stream, EVENT_HEADER, "events"):
        try:
            events.append((parse_decimal(row[0], "t"), parse_decimal(row[1], "amount")))
        except InputFormatError as exc:
            raise InputFormatError(f"row {lineno}: {exc}") from None
    if not events:
        raise InputFormatError("events file has no rows")
    return make_flow(events)


def read_catalog(stream: TextIO) -> list[tuple[str, LumpedOperation]]:
    catalog = []
    seen = set()
    for lineno, row in _rows(stream, CATALOG_HEADER, "catalog"):
        op_id = row[0].strip()
        if op_id in seen:
            raise InputFormatError(f"row {lineno}: duplicate id {op_id!r}")
        seen.add(op_id)
        try:
            values = [parse_decimal(v, name) for v, name in zip(row[1:], CATALOG_HEADER[1:])]
            catalog.append((op_id, make_lumped(*values)))
        except OperationError as exc:
            raise InputFormatError(f"row {lineno}: {exc}") from None
    if not catalog:
        raise InputFormatError("catalog file has no rows")
    return catalog


def write_events(flow: FlowOperation, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(EVENT_HEADER)
    for e in flow.events:
        writer.writerow([repr(e.t), repr(e.amount)])


# ---------- reports ----------

def report_to_json(report: MetricsReport) -> str:
    return json.dumps(report.to_dict(), indent=2)


def report_from_json(text: str) -> MetricsReport:
    return MetricsReport.from_dict(json.loads(text))


def _fmt(value) -> str:
    return "null" if value is None else repr(value)


def report_to_table(report: MetricsReport) -> str:
    data = report.to_dict()
    width = max(len(k) for k in data)
    return "\n".join(f"{k:<{width}}  {_fmt(v)}" for k, v in data.items())


# ---------- studies ----------

def csv_text(rows: Iterable[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()


def table_to_records(study: TableStudy) -> list[dict]:
    records = []
    for row in study.rows:
        prof_r, e_r, k_r = study.rendered(row)
        records.append({
            "n": row.n,
            "re": row.re,
            "pe": row.pe,
            "t_op": row.t_op,
            "prof": prof_r,
            "e": e_r,
            "k": k_r,
            "prof_exact": row.prof,
            "e_exact": row.e,
            "k_exact": row.k,
        })
    return records


def table_to_json(study: TableStudy) -> str:
    return json.dumps(
        {
            "table": study.table_id,
            "title": study.title,
            "variant": study.variant,
            "note": study.note,
            "precision": {"prof": study.precision[0], "e": study.precision[1], "k": study.precision[2]},
            "rows": table_to_records(study),
        },
        indent=2,
    )


def table_to_csv(study: TableStudy) -> str:
    records = table_to_records(study)
    header = list(records[0]) + ["variant"]
    p_prof, p_e, p_k = study.precision
    lines = [header]
    for rec in records:
        lines.append([
            rec["n"], repr(rec["re"]), repr(rec["pe"]), repr(rec["t_op"]),
            f"{rec['prof']:.{p_prof}f}", f"{rec['e']:.{p_e}f}", f"{rec['k']:.{p_k}f}",
            repr(rec["prof_exact"]), repr(rec["e_exact"]), repr(rec["k_exact"]),
            study.variant,
        ])
    return csv_text(lines)


def sweep_to_json(varying: str, rows: list[SweepRow]) -> str:
    return json.dumps(
        {"varying": varying, "rows": [{"x": r.x, **r.values, "error": r.error} for r in rows]},
        indent=2,
    )


def sweep_to_csv(varying: str, rows: list[SweepRow]) -> str:
    criteria = list(rows[0].values) if rows else []
    lines = [[varying, *criteria, "error"]]
    for r in rows:
        lines.append([repr(r.x), *(_fmt(r.values[c]) for c in criteria), r.error or ""])
    return csv_text(lines)


def ranking_to_json(ranked: RankedCatalog) -> str:
    return json.dumps(
        {
            "criterion": ranked.criterion,
            "rows": [
                {"rank": r.rank, "id": r.id, "value": r.value, "report": r.report.to_dict()}
                for r in ranked.rows
            ],
            "ties": ranked.ties,
            "errors": [{"id": i, "error": msg} for i, msg in ranked.errors],
        },
        indent=2,
    )


def ranking_to_csv(ranked: RankedCatalog) -> str:
    lines = [["rank", "id", ranked.criterion, *MetricsReport.JSON_FIELDS.values()]]
    for r in ranked.rows:
        lines.append([r.rank, r.id, repr(r.value), *(_fmt(v) for v in r.report.to_dict().values())])
    return csv_text(lines)


# ---------- reference sets ----------

def refset_grid(ref: ReferenceSet) -> tuple[list[float], list[list]]:
    """Time rows by group columns; a cell holds the capital released (or invested at t=0)."""
    times = sorted({0.0} | {op.t_p for chain in ref.groups for op in chain.operations})
    grid = []
    for t in times:
        grid.append([ref.capital_at(chain.group, t) for chain in ref.groups])
    return times, grid


def refset_to_csv(ref: ReferenceSet, efficiencies: list[float], precision: int = 6) -> str:
    times, grid = refset_grid(ref)
    lines = [["t", *(f"group_{c.group}" for c in ref.groups)]]
    lines.append(["rvic", *(f"{c.rvic:.{precision}g}" for c in ref.groups)])
    for t, cells in zip(times, grid):
        lines.append([f"{t:g}", *("" if v is None else f"{v:.{precision}g}" for v in cells)])
    lines.append(["e_potential", *(repr(e) for e in efficiencies)])
    return csv_text(lines)


def refset_to_json(ref: ReferenceSet, efficiencies: list[float], matches) -> str:
    return json.dumps(
        {
            "spec": {
                "base_re": ref.spec.base_re,
                "base_duration": ref.spec.base_duration,
                "base_growth": ref.spec.base_growth,
                "group_count": ref.spec.group_count,
                "horizon": ref.spec.horizon,
            },
            "groups": [
                {
                    "group": c.group,
                    "duration": c.duration,
                    "rvic": c.rvic,
                    "e_potential": e,
                    "operations": [
                        {"re": op.re, "pe": op.pe, "t_r": op.t_r, "t_p": op.t_p} for op in c.operations
                    ],
                }
                for c, e in zip(ref.groups, efficiencies)
            ],
            "matches": [
                {
                    "t": m.t,
                    "capitals": {str(g): v for g, v in m.capitals.items()},
                    "max_rel_deviation": m.max_rel_deviation,
                    "investment_gap": m.investment_gap,
                }
                for m in matches
            ],
        },
        indent=2,
    )
