"""Closed-form indicators for registration (lumped) operation models."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core_model import (
    AssessmentConfig,
    InvalidSpec,
    LumpedOperation,
    MetricsReport,
    NoValueAdded,
    OperationError,
    ZeroDuration,
)

DEFAULT_CONFIG = AssessmentConfig()


@dataclass(frozen=True)
class DaughterSpec:
    """Duration of the daughter operation funded by the parent's value added."""

    t_d_interval: float = 1.0

    def __post_init__(self):
        if not (self.t_d_interval > 0 and math.isfinite(self.t_d_interval)):
            raise InvalidSpec(f"t_d_interval must be > 0, got {self.t_d_interval!r}")


DEFAULT_DAUGHTER = DaughterSpec()


def _value_added(op: LumpedOperation) -> float:
    va = op.pe - op.re
    if va <= 0:
        raise NoValueAdded(f"pe must exceed re (k > 1), got re={op.re!r}, pe={op.pe!r}")
    return va


def _duration(op: LumpedOperation) -> float:
    t_op = op.t_op
    # squared durations that underflow are as degenerate as zero
    if t_op <= 0 or t_op * t_op == 0.0:
        raise ZeroDuration(f"operation time must be > 0, got t_op={t_op!r}")
    return t_op


def rvic(op: LumpedOperation) -> float:
    return op.pe / op.re


def profitability(op: LumpedOperation) -> float:
    """(PE - RE) / RE. Defined for any positive RE, including loss-making operations."""
    return (op.pe - op.re) / op.re


def taco_lumped(op: LumpedOperation) -> float:
    """Time of actual completion, (PE*t_p - RE*t_r) / (PE - RE).

    Evaluated as ``t_p + RE*t_op/(PE - RE)``, which is the same quantity but
    keeps full precision when both registration times are far from zero.
    """
    va = _value_added(op)
    return op.t_p + op.re * op.t_op / va


def resource_intensity_lumped(op: LumpedOperation) -> float:
    """R = PE*RE*t_op**2 / (2*(PE - RE))."""
    va = _value_added(op)
    t_op = _duration(op)
    return op.pe * op.re * t_op**2 / (2.0 * va)


def daughter_resource_intensity(parent: LumpedOperation, spec: DaughterSpec = DEFAULT_DAUGHTER) -> float:
    """Resource intensity of a daughter operation that reinvests the parent's value added.

    The daughter keeps the parent's RVIC k, so R_d = k*T_d**2*(PE - RE) / (2*(k - 1)).
    """
    va = _value_added(parent)
    k = parent.k
    return k * spec.t_d_interval**2 * va / (2.0 * (k - 1.0))


def potential_effect_lumped(op: LumpedOperation, cfg: AssessmentConfig = DEFAULT_CONFIG) -> float:
    """A = (PE - RE) * t1**2 / 2."""
    va = _value_added(op)
    return va * cfg.t1**2 / 2.0


def efficiency_potential(op: LumpedOperation, cfg: AssessmentConfig = DEFAULT_CONFIG) -> float:
    """Global efficiency E = A/R = (PE - RE)**2 * t1**2 / (PE*RE*t_op**2)."""
    va = _value_added(op)
    t_op = _duration(op)
    return va**2 * cfg.t1**2 / (op.pe * op.re * t_op**2)


def efficiency_pair(parent: LumpedOperation, spec: DaughterSpec = DEFAULT_DAUGHTER) -> float:
    """Daughter-to-parent resource intensity ratio.

    With equal RVIC for parent and daughter this reduces to
    (PE - RE) * T_d**2 / (RE * t_op**2); for unit durations it is exactly the
    profitability.
    """
    va = _value_added(parent)
    t_op = _duration(parent)
    return va * spec.t_d_interval**2 / (parent.re * t_op**2)


def _optional(func, *args):
    try:
        return func(*args)
    except OperationError:
        return None


def evaluate_lumped(
    op: LumpedOperation,
    cfg: AssessmentConfig = DEFAULT_CONFIG,
    spec: DaughterSpec = DEFAULT_DAUGHTER,
) -> MetricsReport:
    """Compute every indicator; those undefined for this operation are left as None."""
    t_a = _optional(taco_lumped, op)
    return MetricsReport(
        re=op.re,
        pe=op.pe,
        t_r=op.t_r,
        t_p=op.t_p,
        t_op=op.t_op,
        k=rvic(op),
        prof=profitability(op),
        t_a=t_a,
        t_d=None if t_a is None else t_a + cfg.t1,
        r=_optional(resource_intensity_lumped, op),
        a=_optional(potential_effect_lumped, op, cfg),
        e_potential=_optional(efficiency_potential, op, cfg),
        e_pair=_optional(efficiency_pair, op, spec),
    )
