"""Parameter studies, sweeps and catalog ranking.

Tables 1-3 vary one of RE, PE or operation time around RE=2, PE=3, t_op=1
and are evaluated with the pair efficiency; table 4 lists the potential
efficiency of the lead operation of each reference-set group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Optional, Sequence, Union

from .core_model import (
    AssessmentConfig,
    FlowOperation,
    InvalidSpec,
    LumpedOperation,
    MetricsReport,
    OperationError,
    UnknownTable,
    make_lumped,
)
from .flow_metrics import evaluate_flow
from .lumped_metrics import (
    DEFAULT_CONFIG,
    DEFAULT_DAUGHTER,
    DaughterSpec,
    efficiency_pair,
    efficiency_potential,
    evaluate_lumped,
    profitability,
)
from .reference_sets import ReferenceSetSpec, generate_reference_set, round_capitals

CRITERIA = ("profitability", "e_pair", "e_potential")
_CRITERION_ALIASES = {
    "prof": "profitability",
    "efficiency_pair": "e_pair",
    "efficiency_potential": "e_potential",
}

# (RE, PE, t_op) grids of the three one-factor studies
TABLE_GRIDS = {
    1: [(re, 3.0, 1.0) for re in (2.0, 2.1, 2.2, 2.3, 2.4, 2.5, 2.6)],
    2: [(2.0, pe, 1.0) for pe in (2.5, 2.6, 2.7, 2.8, 2.9, 3.0, 3.1)],
    3: [(2.0, 3.0, t) for t in (1.0, 1.2, 1.3, 1.4, 1.5, 1.6, 1.7)],
}
TABLE_TITLES = {
    1: "efficiency and profitability versus input cost RE",
    2: "efficiency and profitability versus output value PE",
    3: "efficiency and profitability versus operation time",
    4: "efficiency of the reference-set groups",
}
# table 4 evaluates the reference-set capitals at their printed precision
REFSET_DISPLAY_DECIMALS = 3
# rendering decimals: (PROF, E, k) for tables 1-3, E for table 4
TABLE_PRECISION = {1: (2, 2, 3), 2: (2, 2, 3), 3: (2, 2, 3), 4: (6, 6, 6)}


def canonical_criterion(name: str) -> str:
    name = _CRITERION_ALIASES.get(name, name)
    if name not in CRITERIA:
        raise InvalidSpec(f"unknown criterion {name!r}; choose from {', '.join(CRITERIA)}")
    return name


def round_half_away(value: float, decimals: int) -> float:
    """Round half away from zero on the shortest decimal representation of ``value``."""
    quantum = Decimal(1).scaleb(-decimals)
    d = Decimal(repr(value)).copy_abs().quantize(quantum, rounding=ROUND_HALF_UP)
    return math.copysign(float(d), value)


@dataclass(frozen=True)
class TableRow:
    n: int
    re: float
    pe: float
    t_op: float
    prof: float
    e: float
    k: float


@dataclass(frozen=True)
class TableStudy:
    table_id: int
    title: str
    variant: str  # which efficiency produced the E column
    rows: tuple[TableRow, ...]
    precision: tuple[int, int, int]
    note: str = ""

    def rendered(self, row: TableRow) -> tuple[float, float, float]:
        p_prof, p_e, p_k = self.precision
        return (
            round_half_away(row.prof, p_prof),
            round_half_away(row.e, p_e),
            round_half_away(row.k, p_k),
        )


def run_table_study(
    table_id: int,
    cfg: AssessmentConfig = DEFAULT_CONFIG,
    spec: DaughterSpec = DEFAULT_DAUGHTER,
) -> TableStudy:
    if table_id not in TABLE_TITLES:
        raise UnknownTable(f"unknown table {table_id!r}; tables 1-4 are available")
    precision = TABLE_PRECISION[table_id]
    if cfg.precision is not None:
        precision = (cfg.precision,) * 3

    rows = []
    note = ""
    if table_id == 4:
        ref = round_capitals(generate_reference_set(ReferenceSetSpec()), REFSET_DISPLAY_DECIMALS)
        note = f"group lead capitals rounded to {REFSET_DISPLAY_DECIMALS} decimals as displayed in the reference grid"
        for chain in ref.groups:
            op = chain.operations[0]
            rows.append(
                TableRow(chain.group, op.re, op.pe, op.t_op, profitability(op), efficiency_potential(op, cfg), op.k)
            )
        variant = "e_potential"
    else:
        for n, (re, pe, t_op) in enumerate(TABLE_GRIDS[table_id], start=1):
            op = make_lumped(re, pe, 0.0, t_op)
            rows.append(TableRow(n, re, pe, t_op, profitability(op), efficiency_pair(op, spec), op.k))
        variant = "e_pair"
    return TableStudy(table_id, TABLE_TITLES[table_id], variant, tuple(rows), precision, note)


# ---------- sweeps ----------

@dataclass(frozen=True)
class SweepSpec:
    varying: str
    fixed: dict
    grid: tuple[float, ...]
    criteria: tuple[str, ...] = CRITERIA

    def __post_init__(self):
        if self.varying not in ("re", "pe", "t_op"):
            raise InvalidSpec(f"varying must be one of re, pe, t_op, got {self.varying!r}")
        missing = {"re", "pe", "t_op"} - {self.varying} - set(self.fixed)
        if missing:
            raise InvalidSpec(f"fixed values missing for {', '.join(sorted(missing))}")
        grid = tuple(float(x) for x in self.grid)
        if not grid:
            raise InvalidSpec("grid must not be empty")
        steps = [b - a for a, b in zip(grid, grid[1:])]
        if not (all(s > 0 for s in steps) or all(s < 0 for s in steps)):
            raise InvalidSpec("grid must be strictly monotone")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "criteria", tuple(canonical_criterion(c) for c in self.criteria))

    @classmethod
    def from_dict(cls, data: dict) -> "SweepSpec":
        return cls(
            varying=data["varying"],
            fixed={k: float(v) for k, v in data.get("fixed", {}).items()},
            grid=tuple(data["grid"]),
            criteria=tuple(data.get("criteria", CRITERIA)),
        )


@dataclass(frozen=True)
class SweepRow:
    x: float
    values: dict  # criterion -> value (None when undefined)
    error: Optional[str] = None


def criterion_value(report: MetricsReport, criterion: str) -> Optional[float]:
    return {"profitability": report.prof, "e_pair": report.e_pair, "e_potential": report.e_potential}[
        canonical_criterion(criterion)
    ]


def run_sweep(
    spec: SweepSpec,
    cfg: AssessmentConfig = DEFAULT_CONFIG,
    daughter: DaughterSpec = DEFAULT_DAUGHTER,
) -> list[SweepRow]:
    rows = []
    for x in spec.grid:
        params = dict(spec.fixed)
        params[spec.varying] = x
        try:
            op = make_lumped(params["re"], params["pe"], 0.0, params["t_op"])
            report = evaluate_lumped(op, cfg, daughter)
        except OperationError as exc:
            rows.append(SweepRow(x, {c: None for c in spec.criteria}, str(exc)))
            continue
        rows.append(SweepRow(x, {c: criterion_value(report, c) for c in spec.criteria}))
    return rows


# ---------- ranking ----------

Operation = Union[LumpedOperation, FlowOperation]


@dataclass(frozen=True)
class RankedRow:
    rank: int  # competition rank; tied rows share it
    id: str
    value: float
    report: MetricsReport


@dataclass(frozen=True)
class RankedCatalog:
    criterion: str
    rows: tuple[RankedRow, ...]
    errors: tuple[tuple[str, str], ...] = field(default=())

    @property
    def ties(self) -> list[list[str]]:
        groups: dict[int, list[str]] = {}
        for row in self.rows:
            groups.setdefault(row.rank, []).append(row.id)
        return [ids for ids in groups.values() if len(ids) > 1]


def _evaluate(op: Operation, cfg, daughter) -> MetricsReport:
    if isinstance(op, FlowOperation):
        return evaluate_flow(op, cfg, daughter)
    return evaluate_lumped(op, cfg, daughter)


def rank_operations(
    catalog: Union[dict, Sequence],
    criterion: str = "e_potential",
    cfg: AssessmentConfig = DEFAULT_CONFIG,
    daughter: DaughterSpec = DEFAULT_DAUGHTER,
) -> RankedCatalog:
    """Rank operations by ``criterion``, best first.

    ``catalog`` is a mapping of id to operation or a sequence of
    ``(id, operation)`` pairs. Values within ``cfg.rel_tol`` of a tie group's
    leader share its rank and are ordered by id. Operations for which the
    criterion is undefined are reported in ``errors``.
    """
    criterion = canonical_criterion(criterion)
    items = list(catalog.items()) if isinstance(catalog, dict) else list(catalog)
    scored = []
    errors = []
    for op_id, op in items:
        op_id = str(op_id)
        try:
            report = _evaluate(op, cfg, daughter)
        except OperationError as exc:
            errors.append((op_id, str(exc)))
            continue
        value = criterion_value(report, criterion)
        if value is None:
            errors.append((op_id, f"{criterion} is undefined for this operation"))
            continue
        scored.append((value, op_id, report))

    scored.sort(key=lambda s: (-s[0], s[1]))
    clusters: list[list] = []
    for entry in scored:
        if clusters and math.isclose(entry[0], clusters[-1][0][0], rel_tol=cfg.rel_tol):
            clusters[-1].append(entry)
        else:
            clusters.append([entry])

    rows = []
    position = 1
    for cluster in clusters:
        for value, op_id, report in sorted(cluster, key=lambda s: s[1]):
            rows.append(RankedRow(position, op_id, value, report))
        position += len(cluster)
    return RankedCatalog(criterion, tuple(rows), tuple(sorted(errors)))
