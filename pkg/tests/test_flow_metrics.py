import math
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from target_efficiency import (
    AssessmentConfig,
    NonCausalFlow,
    NoValueAdded,
    cumulative_net,
    effect_accumulator,
    effect_primitive,
    efficiency_flow,
    evaluate_flow,
    evaluate_lumped,
    flow_totals,
    make_flow,
    make_lumped,
    potential_effect_flow,
    resource_intensity_flow,
    taco_flow,
)

import oracles

TWO = [(0, -3), (2, 3.3)]
THREE = [(0, -2), (1, -1), (3, 3.3)]


def test_flow_totals_two_impulses():
    t = flow_totals(make_flow(TWO))
    assert (t.re_total, t.pe_total, t.t_r_mean, t.t_p_mean) == (3, 3.3, 0, 2)


def test_flow_totals_weighted_times():
    t = flow_totals(make_flow(THREE))
    assert t.re_total == 3 and t.pe_total == 3.3
    assert t.t_r_mean == pytest.approx(1 / 3)
    assert t.t_p_mean == 3


def test_flow_totals_merge():
    t = flow_totals(make_flow([(0, -1), (0, -1), (5, 3)]))
    assert (t.re_total, t.pe_total, t.t_r_mean) == (2, 3, 0)


@pytest.mark.parametrize("t, expected", [(1, -3), (3, 0.3), (-1, 0)])
def test_cumulative_net(t, expected):
    assert cumulative_net(make_flow(TWO))(t) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("t, expected", [(2, -6), (22, 0), (23, 0.3)])
def test_effect_primitive(t, expected):
    assert effect_primitive(make_flow(TWO))(t) == pytest.approx(expected, abs=1e-12)


def test_effect_primitive_final_slope():
    d = effect_primitive(make_flow(THREE))
    assert d.segments[-1][1] == pytest.approx(0.3)


def test_taco_flow():
    assert taco_flow(make_flow(TWO)) == pytest.approx(22)
    assert taco_flow(make_flow(THREE)) == pytest.approx(float(oracles.taco(THREE)), rel=1e-12)
    assert taco_flow(make_flow(THREE)) == pytest.approx(89 / 3, rel=1e-12)


def test_taco_flow_without_value_added():
    with pytest.raises(NoValueAdded):
        taco_flow(make_flow([(0, -1), (1, 1)]))


def test_taco_flow_non_causal():
    # closed form lands at t=0 although an investment follows at t=2
    flow = make_flow([(0, -1), (1, 3), (2, -1.5)])
    assert float(oracles.taco([(0, -1), (1, 3), (2, -1.5)])) == 0
    with pytest.raises(NonCausalFlow):
        taco_flow(flow)


@pytest.mark.parametrize(
    "events, expected",
    [(TWO, 66.0), (THREE, 353 / 3), ([(0, -2), (1, 3)], 3.0)],
)
def test_resource_intensity_flow(events, expected):
    assert resource_intensity_flow(make_flow(events)) == pytest.approx(expected, rel=1e-12)
    assert expected == pytest.approx(float(oracles.resource_intensity(events)), rel=1e-15)


@pytest.mark.parametrize("t1, expected", [(1, 0.15), (2, 0.6)])
def test_potential_effect_flow(t1, expected):
    assert potential_effect_flow(make_flow(TWO), AssessmentConfig(t1=t1)) == pytest.approx(expected, rel=1e-12)


def test_wde_curve():
    t_a, wde = effect_accumulator(make_flow(THREE))
    assert wde(t_a) == 0.0
    assert wde(t_a + 1) == pytest.approx(0.15, rel=1e-9)
    assert wde(t_a + 2) == pytest.approx(0.6, rel=1e-9)


@pytest.mark.parametrize(
    "events, expected",
    [(TWO, 0.002272727), (THREE, 0.15 / (353 / 3)), ([(0, -2), (1, 3)], 1 / 6)],
)
def test_efficiency_flow(events, expected):
    assert efficiency_flow(make_flow(events)) == pytest.approx(expected, abs=1e-9)


def test_three_event_efficiency_value():
    assert efficiency_flow(make_flow(THREE)) == pytest.approx(0.0012748, abs=5e-8)


def test_evaluate_flow_matches_lumped_for_two_impulses():
    f = evaluate_flow(make_flow(TWO))
    l = evaluate_lumped(make_lumped(3, 3.3, 0, 2))
    for name in ("re", "pe", "t_r", "t_p", "t_op", "k", "prof", "t_a", "t_d", "r", "a", "e_potential", "e_pair"):
        assert getattr(f, name) == pytest.approx(getattr(l, name), rel=1e-9), name


def test_evaluate_flow_three_events():
    r = evaluate_flow(make_flow(THREE))
    assert r.t_a == pytest.approx(29.6667, abs=1e-4)
    assert r.r == pytest.approx(117.667, abs=1e-3)
    assert r.a == pytest.approx(0.15)
    assert r.e_potential == pytest.approx(0.0012748, abs=5e-8)
    # differs from the lumped intensity at the weighted mean times (time-variance term)
    lumped = evaluate_lumped(make_lumped(3, 3.3, 1 / 3, 3))
    assert lumped.r == pytest.approx(352 / 3)
    assert r.r - lumped.r == pytest.approx(1 / 3)


def test_evaluate_flow_without_value_added():
    r = evaluate_flow(make_flow([(0, -1), (1, 1)]))
    assert r.k == 1 and r.prof == 0
    assert r.t_a is None and r.r is None and r.a is None and r.e_potential is None and r.e_pair is None


# ---------- properties ----------

@st.composite
def flows(draw, min_events=2, max_events=8):
    """Flows with investments first so the completion time is causal."""
    n_inv = draw(st.integers(1, max_events - 1))
    n_rel = draw(st.integers(1, max_events - n_inv))
    times = sorted(draw(st.lists(st.integers(0, 400), min_size=n_inv + n_rel, max_size=n_inv + n_rel, unique=True)))
    times = [t / 20 for t in times]
    inv = draw(st.lists(st.floats(0.1, 50), min_size=n_inv, max_size=n_inv))
    growth = draw(st.floats(1.05, 4))
    shares = draw(st.lists(st.floats(0.1, 1), min_size=n_rel, max_size=n_rel))
    total = sum(inv) * growth
    rel = [total * s / sum(shares) for s in shares]
    events = [(t, -a) for t, a in zip(times[:n_inv], inv)] + [(t, a) for t, a in zip(times[n_inv:], rel)]
    assume(oracles.taco(events) >= times[-1])
    return events


@settings(max_examples=300)
@given(flows())
def test_resource_intensity_matches_superposition(events):
    flow = make_flow(events)
    expected = float(oracles.resource_intensity(events))
    assert math.isclose(resource_intensity_flow(flow), expected, rel_tol=1e-9)


@settings(max_examples=300)
@given(flows())
def test_taco_zero_of_primitive(events):
    flow = make_flow(events)
    t_a = taco_flow(flow)
    assert math.isclose(t_a, float(oracles.taco(events)), rel_tol=1e-12, abs_tol=1e-12)
    totals = flow_totals(flow)
    span = flow.t_last - flow.t_0
    assert abs(effect_primitive(flow)(t_a)) <= 1e-9 * max(totals.re_total, totals.pe_total) * max(span, t_a - flow.t_0)
    assert t_a >= flow.t_last


@settings(max_examples=200)
@given(flows(), st.floats(0.1, 3))
def test_wde_nonnegative_nondecreasing(events, t1):
    flow = make_flow(events)
    cfg = AssessmentConfig(t1=t1)
    t_a, wde = effect_accumulator(flow, cfg)
    samples = [wde(t_a + t1 * i / 10) for i in range(11)]
    scale = max(abs(s) for s in samples) + 1e-12
    assert all(s >= -1e-9 * scale for s in samples)
    assert all(b >= a - 1e-9 * scale for a, b in zip(samples, samples[1:]))
    assert math.isclose(samples[-1], potential_effect_flow(flow, cfg), rel_tol=1e-6)


@settings(max_examples=200)
@given(flows(), st.floats(0.1, 5))
def test_potential_effect_closed_form(events, t1):
    flow = make_flow(events)
    totals = flow_totals(flow)
    expected = (totals.pe_total - totals.re_total) * t1**2 / 2
    assert math.isclose(potential_effect_flow(flow, AssessmentConfig(t1=t1)), expected, rel_tol=1e-9)


@settings(max_examples=200)
@given(st.lists(st.tuples(st.integers(0, 10).map(float), st.floats(-10, 10).filter(lambda a: abs(a) > 0.01)), min_size=2, max_size=6))
def test_non_causal_flows_are_rejected(events):
    try:
        flow = make_flow(events)
    except ValueError:
        return
    merged = [(e.t, e.amount) for e in flow.events]
    if sum(Fraction(a) for _, a in merged) <= 0:
        with pytest.raises(NoValueAdded):
            taco_flow(flow)
        return
    if oracles.taco(merged) < Fraction(flow.t_last):
        with pytest.raises(NonCausalFlow):
            taco_flow(flow)
    else:
        assert taco_flow(flow) >= flow.t_last
