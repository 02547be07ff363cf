"""Reference sets of capitalization chains and efficiency calibration.

A reference set holds one chain per group. Group ``j`` (1-based) runs
operations of duration ``j * base_duration`` with RVIC ``base_growth ** j``,
each operation investing exactly what the previous one released. Chains of
different groups therefore carry the same capital whenever they complete at
the same time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core_model import (
    AssessmentConfig,
    InvalidSpec,
    InvalidTarget,
    LumpedOperation,
    make_lumped,
)
from .lumped_metrics import DEFAULT_CONFIG, _value_added, efficiency_potential


@dataclass(frozen=True)
class ReferenceSetSpec:
    base_re: float = 3.0
    base_duration: float = 2.0
    base_growth: float = 1.1
    group_count: int = 4
    horizon: float = 16.0

    def __post_init__(self):
        if not self.base_re > 0:
            raise InvalidSpec("base_re must be > 0")
        if not self.base_duration > 0:
            raise InvalidSpec("base_duration must be > 0")
        if not self.base_growth > 1:
            raise InvalidSpec("growth must exceed 1")
        if int(self.group_count) != self.group_count or self.group_count < 1:
            raise InvalidSpec("group_count must be an integer >= 1")
        if not self.horizon >= self.base_duration * self.group_count:
            raise InvalidSpec("horizon must be >= base_duration * group_count")


@dataclass(frozen=True)
class Chain:
    group: int
    duration: float
    rvic: float
    operations: tuple[LumpedOperation, ...]

    @property
    def capitals(self) -> tuple[float, ...]:
        return tuple(op.pe for op in self.operations)


@dataclass(frozen=True)
class ReferenceSet:
    spec: ReferenceSetSpec
    groups: tuple[Chain, ...]

    def capital_at(self, group: int, t: float) -> float | None:
        """Capital held by ``group`` at time ``t`` if one of its operations starts or ends there."""
        chain = self.groups[group - 1]
        if not chain.operations:
            return None
        first = chain.operations[0]
        if math.isclose(t, first.t_r, abs_tol=1e-12):
            return first.re
        for op in chain.operations:
            if math.isclose(t, op.t_p, rel_tol=1e-12, abs_tol=1e-12):
                return op.pe
        return None


def _build_chain(group: int, re: float, duration: float, rvic: float, count: int) -> Chain:
    ops = []
    capital = re
    for i in range(count):
        op = LumpedOperation(capital, capital * rvic, i * duration, (i + 1) * duration)
        ops.append(op)
        capital = op.pe
    return Chain(group, duration, rvic, tuple(ops))


def generate_reference_set(spec: ReferenceSetSpec = ReferenceSetSpec()) -> ReferenceSet:
    groups = []
    for j in range(1, int(spec.group_count) + 1):
        duration = j * spec.base_duration
        # tolerance guards horizons that are exact multiples but not in binary
        count = math.floor(spec.horizon / duration + 1e-9)
        groups.append(_build_chain(j, spec.base_re, duration, spec.base_growth**j, count))
    return ReferenceSet(spec, tuple(groups))


@dataclass(frozen=True)
class CapitalMatch:
    """Capital of every group whose chain completes an operation at time ``t``."""

    t: float
    capitals: dict[int, float]
    max_rel_deviation: float
    # spread of the amounts invested into the operations ending at t; nonzero
    # when shorter chains reinvest value added that longer chains never see
    investment_gap: float = 0.0


def verify_reference_set(ref: ReferenceSet) -> list[CapitalMatch]:
    """Compare capitals across groups at every time two or more chains complete together."""
    ends: dict[float, dict[int, LumpedOperation]] = {}
    for chain in ref.groups:
        for op in chain.operations:
            key = round(op.t_p, 9)
            ends.setdefault(key, {})[chain.group] = op
    matches = []
    for t in sorted(ends):
        by_group = ends[t]
        if len(by_group) < 2:
            continue
        caps = {g: op.pe for g, op in sorted(by_group.items())}
        lo, hi = min(caps.values()), max(caps.values())
        invested = [op.re for op in by_group.values()]
        matches.append(
            CapitalMatch(
                t=t,
                capitals=caps,
                max_rel_deviation=(hi - lo) / abs(hi),
                investment_gap=max(invested) - min(invested),
            )
        )
    return matches


def calibrate_output_value(re: float, t_op: float, target_e: float, cfg: AssessmentConfig = DEFAULT_CONFIG) -> float:
    """Output value PE that gives an operation (re, t_op) the efficiency ``target_e``.

    Solves (PE - RE)**2 * t1**2 = E * PE * RE * t_op**2 for its root above RE.
    """
    if not target_e > 0:
        raise InvalidTarget(f"target efficiency must be > 0, got {target_e!r}")
    if not re > 0:
        raise InvalidSpec("re must be > 0")
    if not t_op > 0:
        raise InvalidSpec("t_op must be > 0")
    c = target_e * re * t_op**2 / cfg.t1**2
    # larger root of PE**2 - (2*RE + c)*PE + RE**2, written as RE + (PE - RE)
    # so the value added is not formed by cancellation
    return re + (c + math.sqrt(c * c + 4.0 * re * c)) / 2.0


def extend_chain(op: LumpedOperation, cfg: AssessmentConfig = DEFAULT_CONFIG) -> LumpedOperation:
    """Next operation of a capitalization chain: same RVIC and duration, reinvesting ``op.pe``."""
    _value_added(op)
    return make_lumped(op.pe, op.pe * op.k, op.t_p, op.t_p + op.t_op)


def calibrate_reference_set(ref: ReferenceSet, cfg: AssessmentConfig = DEFAULT_CONFIG) -> ReferenceSet:
    """Re-derive every group's RVIC so its operations match group 1's efficiency."""
    lead = ref.groups[0].operations[0]
    target = efficiency_potential(lead, cfg)
    groups = [ref.groups[0]]
    for chain in ref.groups[1:]:
        pe = calibrate_output_value(ref.spec.base_re, chain.duration, target, cfg)
        rvic = pe / ref.spec.base_re
        groups.append(_build_chain(chain.group, ref.spec.base_re, chain.duration, rvic, len(chain.operations)))
    return ReferenceSet(ref.spec, tuple(groups))


def round_capitals(ref: ReferenceSet, decimals: int) -> ReferenceSet:
    """Copy of ``ref`` with every capital rounded to ``decimals`` places.

    Chains stay linked: an operation's rounded investment equals the rounded
    release of its predecessor.
    """
    groups = []
    for chain in ref.groups:
        ops = tuple(
            LumpedOperation(round(op.re, decimals), round(op.pe, decimals), op.t_r, op.t_p)
            for op in chain.operations
        )
        groups.append(Chain(chain.group, chain.duration, chain.rvic, ops))
    return ReferenceSet(ref.spec, tuple(groups))


def group_efficiencies(ref: ReferenceSet, cfg: AssessmentConfig = DEFAULT_CONFIG) -> list[float]:
    """Efficiency of the first operation of each group."""
    return [efficiency_potential(chain.operations[0], cfg) for chain in ref.groups]
