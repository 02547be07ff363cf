"""Indicators for distributed operations given as streams of value events.

Events are impulses, so the cumulative net flow ``ice`` is a step function,
its primitive ``D`` is piecewise linear and the effect accumulator ``wde`` is
piecewise quadratic. Every integral is evaluated exactly per segment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .core_model import (
    AssessmentConfig,
    FlowOperation,
    LumpedOperation,
    MetricsReport,
    NonCausalFlow,
    NoValueAdded,
    OperationError,
)
from .lumped_metrics import DEFAULT_CONFIG, DEFAULT_DAUGHTER, DaughterSpec, efficiency_pair
from .piecewise import PiecewisePolynomial, step_function


@dataclass(frozen=True)
class FlowTotals:
    re_total: float
    pe_total: float
    t_r_mean: float  # value-weighted mean investment time
    t_p_mean: float  # value-weighted mean release time


def flow_totals(flow: FlowOperation) -> FlowTotals:
    inv = [(e.t, -e.amount) for e in flow.events if e.amount < 0]
    rel = [(e.t, e.amount) for e in flow.events if e.amount > 0]
    re_total = math.fsum(a for _, a in inv)
    pe_total = math.fsum(a for _, a in rel)
    # weighted means taken as offsets from the first event of each side
    t_r0, t_p0 = inv[0][0], rel[0][0]
    t_r_mean = t_r0 + math.fsum(a * (t - t_r0) for t, a in inv) / re_total
    t_p_mean = t_p0 + math.fsum(a * (t - t_p0) for t, a in rel) / pe_total
    return FlowTotals(re_total, pe_total, t_r_mean, t_p_mean)


def cumulative_net(flow: FlowOperation) -> PiecewisePolynomial:
    """ice(t): signed sum of all events registered up to and including t."""
    return step_function([e.t for e in flow.events], [e.amount for e in flow.events])


def effect_primitive(flow: FlowOperation) -> PiecewisePolynomial:
    """D(t) = integral of ice from t_0 to t; vde(tau) = D(tau) - D(t_a)."""
    return cumulative_net(flow).antiderivative()


def _value_added(totals: FlowTotals) -> float:
    va = totals.pe_total - totals.re_total
    if va <= 0:
        raise NoValueAdded(
            f"released value must exceed invested value, got RE={totals.re_total!r}, PE={totals.pe_total!r}"
        )
    return va


def taco_flow(flow: FlowOperation, cfg: AssessmentConfig = DEFAULT_CONFIG) -> float:
    """Completion time (PE*t_p - RE*t_r)/(PE - RE) with value-weighted mean times.

    The result is checked against the zero of D on its final segment.
    """
    totals = flow_totals(flow)
    va = _value_added(totals)
    t_ref = flow.t_last
    # sum(a_i * t_i) / (PE - RE), taken relative to the last event
    t_a = t_ref + math.fsum(e.amount * (e.t - t_ref) for e in flow.events) / va
    if t_a < t_ref:
        raise NonCausalFlow(
            f"completion time {t_a!r} precedes the last event at {t_ref!r}"
        )
    d = effect_primitive(flow)
    span = flow.t_last - flow.t_0
    scale = max(totals.re_total, totals.pe_total) * max(span, abs(t_a - flow.t_0))
    if abs(d(t_a)) > cfg.rel_tol * scale:
        raise OperationError(f"D(t_a) = {d(t_a)!r} is not zero; inconsistent completion time")
    return t_a


def resource_intensity_flow(flow: FlowOperation, cfg: AssessmentConfig = DEFAULT_CONFIG) -> float:
    """Bound value-time: minus the integral of D over [t_0, t_a].

    Equals sum|re_i|*(t_a - t_i)**2/2 - sum pe_j*(t_a - t_j)**2/2.
    """
    t_a = taco_flow(flow, cfg)
    r = -effect_primitive(flow).integrate(flow.t_0, t_a)
    if r <= 0:
        raise NonCausalFlow(f"resource intensity {r!r} is not positive")
    return r


def effect_accumulator(flow: FlowOperation, cfg: AssessmentConfig = DEFAULT_CONFIG):
    """Return ``(t_a, wde)`` where wde(t) is the integral of vde from t_a to t.

    Both vde and wde live on [t_a, inf); wde vanishes left of t_a.
    """
    t_a = taco_flow(flow, cfg)
    d = effect_primitive(flow).tail(t_a)
    vde = d - d.segments[0][0]
    return t_a, vde.antiderivative()


def potential_effect_flow(flow: FlowOperation, cfg: AssessmentConfig = DEFAULT_CONFIG) -> float:
    """A = wde(t_a + t1).

    t_a is never before the last event, so vde is linear with slope PE - RE
    on [t_a, t_d] and the integral is taken in closed form there.
    """
    taco_flow(flow, cfg)
    slope = effect_primitive(flow).segments[-1][1]
    return slope * cfg.t1**2 / 2.0


def efficiency_flow(flow: FlowOperation, cfg: AssessmentConfig = DEFAULT_CONFIG) -> float:
    return potential_effect_flow(flow, cfg) / resource_intensity_flow(flow, cfg)


def _optional(func, *args):
    try:
        return func(*args)
    except OperationError:
        return None


def evaluate_flow(
    flow: FlowOperation,
    cfg: AssessmentConfig = DEFAULT_CONFIG,
    spec: DaughterSpec = DEFAULT_DAUGHTER,
) -> MetricsReport:
    """Aggregate report; pair efficiency uses the weighted-mean registration times."""
    totals = flow_totals(flow)
    t_op = totals.t_p_mean - totals.t_r_mean
    va = totals.pe_total - totals.re_total
    t_a = _optional(taco_flow, flow, cfg)
    r = _optional(resource_intensity_flow, flow, cfg)
    a = _optional(potential_effect_flow, flow, cfg)
    e = None if r is None or a is None else a / r
    equivalent = LumpedOperation(totals.re_total, totals.pe_total, totals.t_r_mean, totals.t_p_mean)
    e_pair = _optional(efficiency_pair, equivalent, spec)
    return MetricsReport(
        re=totals.re_total,
        pe=totals.pe_total,
        t_r=totals.t_r_mean,
        t_p=totals.t_p_mean,
        t_op=t_op,
        k=totals.pe_total / totals.re_total,
        prof=va / totals.re_total,
        t_a=t_a,
        t_d=None if t_a is None else t_a + cfg.t1,
        r=r,
        a=a,
        e_potential=e,
        e_pair=e_pair,
    )
