"""Domain types shared by the lumped, flow and reference-set calculators.

All types are frozen dataclasses. Construct operations through
:func:`make_lumped` and :func:`make_flow`, which validate and normalize
their inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, fields
from typing import Iterable, Optional


# ---------- exceptions ----------

class OperationError(ValueError):
    """Base class for invalid operations or undefined indicators."""


class NonPositiveValue(OperationError):
    pass


class InvertedTimes(OperationError):
    pass


class OneSidedFlow(OperationError):
    pass


class NoValueAdded(OperationError):
    """Raised when an indicator requires PE > RE (RVIC k > 1)."""


class ZeroDuration(OperationError):
    pass


class NonCausalFlow(OperationError):
    """The closed-form completion time falls before the last event."""


class InvalidSpec(OperationError):
    pass


class InvalidTarget(OperationError):
    pass


class UnknownTable(OperationError):
    pass


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise OperationError(f"{name} must be finite, got {value!r}")
    return value


# ---------- lumped (registration) model ----------

@dataclass(frozen=True)
class LumpedOperation:
    """Registration model: value ``re`` invested at ``t_r``, ``pe`` released at ``t_p``."""

    re: float
    pe: float
    t_r: float
    t_p: float

    @property
    def t_op(self) -> float:
        return self.t_p - self.t_r

    @property
    def k(self) -> float:
        """Resource value increase coefficient (RVIC), PE/RE."""
        return self.pe / self.re

    @property
    def value_added(self) -> float:
        return self.pe - self.re


def make_lumped(re: float, pe: float, t_r: float = 0.0, t_p: float = 1.0) -> LumpedOperation:
    re = _require_finite("re", re)
    pe = _require_finite("pe", pe)
    t_r = _require_finite("t_r", t_r)
    t_p = _require_finite("t_p", t_p)
    if re <= 0:
        raise NonPositiveValue(f"re must be > 0, got {re!r}")
    if pe <= 0:
        raise NonPositiveValue(f"pe must be > 0, got {pe!r}")
    if t_p < t_r:
        raise InvertedTimes(f"t_p < t_r ({t_p!r} < {t_r!r})")
    return LumpedOperation(re, pe, t_r, t_p)


# ---------- distributed (event stream) model ----------

@dataclass(frozen=True)
class FlowEvent:
    t: float
    amount: float  # negative = investment, positive = release


@dataclass(frozen=True)
class FlowOperation:
    """Time-sorted, merged event stream with both an investment and a release side."""

    events: tuple[FlowEvent, ...]

    @property
    def t_0(self) -> float:
        return self.events[0].t

    @property
    def t_last(self) -> float:
        return self.events[-1].t

    @property
    def re(self) -> float:
        return math.fsum(-e.amount for e in self.events if e.amount < 0)

    @property
    def pe(self) -> float:
        return math.fsum(e.amount for e in self.events if e.amount > 0)


def _as_event(item) -> FlowEvent:
    if isinstance(item, FlowEvent):
        return item
    t, amount = item
    return FlowEvent(float(t), float(amount))


def make_flow(events: Iterable) -> FlowOperation:
    """Sort events by time, merge equal timestamps by summation and drop zero nets.

    ``events`` may hold :class:`FlowEvent` instances or ``(t, amount)`` pairs.
    """
    raw = [_as_event(e) for e in events]
    if not raw:
        raise OneSidedFlow("flow has no events")
    for e in raw:
        _require_finite("event time", e.t)
        _require_finite("event amount", e.amount)

    buckets: dict[float, list[float]] = {}
    for e in raw:
        buckets.setdefault(e.t, []).append(e.amount)
    merged = []
    for t in sorted(buckets):
        net = math.fsum(buckets[t])
        if net != 0.0:
            merged.append(FlowEvent(t, net))

    if not any(e.amount < 0 for e in merged) or not any(e.amount > 0 for e in merged):
        raise OneSidedFlow("one-sided flow: need at least one investment and one release event")
    return FlowOperation(tuple(merged))


# ---------- configuration and reports ----------

@dataclass(frozen=True)
class AssessmentConfig:
    """Assessment settings.

    t1 is the estimated interval after the completion time over which the
    potential effect accrues. ``precision`` overrides the table rendering
    decimals when set.
    """

    t1: float = 1.0
    rel_tol: float = 1e-9
    precision: Optional[int] = None

    def __post_init__(self):
        if not (self.t1 > 0 and math.isfinite(self.t1)):
            raise InvalidSpec(f"t1 must be > 0, got {self.t1!r}")
        if not self.rel_tol > 0:
            raise InvalidSpec(f"rel_tol must be > 0, got {self.rel_tol!r}")
        if self.precision is not None and self.precision < 0:
            raise InvalidSpec("precision must be >= 0")


@dataclass(frozen=True)
class MetricsReport:
    """All indicators of one operation. Undefined indicators are ``None``."""

    re: float
    pe: float
    t_r: float
    t_p: float
    t_op: float
    k: float
    prof: float
    t_a: Optional[float] = None
    t_d: Optional[float] = None
    r: Optional[float] = None
    a: Optional[float] = None
    e_potential: Optional[float] = None
    e_pair: Optional[float] = None

    # attribute name -> stable JSON field name
    JSON_FIELDS = {
        "re": "re",
        "pe": "pe",
        "t_r": "t_r",
        "t_p": "t_p",
        "t_op": "t_op",
        "k": "k",
        "prof": "profitability",
        "t_a": "t_a",
        "t_d": "t_d",
        "r": "resource_intensity",
        "a": "potential_effect",
        "e_potential": "efficiency_potential",
        "e_pair": "efficiency_pair",
    }

    def to_dict(self) -> dict:
        return {self.JSON_FIELDS[f.name]: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "MetricsReport":
        return cls(**{attr: data.get(key) for attr, key in cls.JSON_FIELDS.items()})
