import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from target_efficiency.piecewise import PiecewisePolynomial, step_function

from oracles import midpoint_integral


def test_step_function_values_and_jumps():
    f = step_function([0.0, 2.0], [-3.0, 3.3])
    assert f(-1) == 0.0
    assert f(0) == -3.0
    assert f(1) == -3.0
    assert f(2) == pytest.approx(0.3)
    assert f.left_limit(2) == -3.0
    assert f(1e6) == pytest.approx(0.3)


def test_antiderivative_is_continuous():
    f = step_function([0.0, 1.0, 3.0], [-2.0, -1.0, 3.3])
    g = f.antiderivative()
    for b in g.breakpoints:
        assert g.left_limit(b) == pytest.approx(g(b), abs=1e-12)
    assert g(1) == pytest.approx(-2)
    assert g(3) == pytest.approx(-8)
    assert g.segments[-1][1] == pytest.approx(0.3)


def test_final_root():
    d = step_function([0.0, 2.0], [-3.0, 3.3]).antiderivative()
    assert d.final_root() == pytest.approx(22.0)


def test_final_root_requires_linear_tail():
    g = step_function([0.0], [1.0]).antiderivative().antiderivative()
    with pytest.raises(ValueError):
        g.final_root()


def test_integrate_reversed_and_outside_domain():
    f = step_function([1.0], [2.0])
    assert f.integrate(0, 3) == pytest.approx(4.0)
    assert f.integrate(3, 0) == pytest.approx(-4.0)
    assert f.integrate(-5, 0) == 0.0


def test_subtract_constant():
    f = step_function([0.0, 1.0], [1.0, 1.0]) - 2.0
    assert f(0.5) == -1.0 and f(2) == 0.0


def test_rejects_unsorted_breakpoints():
    with pytest.raises(ValueError):
        PiecewisePolynomial((1.0, 0.0), ((1.0,), (2.0,)))


steps = st.lists(
    st.tuples(st.floats(min_value=0.01, max_value=3), st.floats(min_value=-5, max_value=5)),
    min_size=1,
    max_size=6,
)


def _build(spec):
    times, t = [], 0.0
    for gap, _ in spec:
        t += gap
        times.append(t)
    return times, [j for _, j in spec]


@settings(max_examples=100, deadline=None)
@given(steps, st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=25))
def test_integral_matches_quadrature(spec, a_frac, length):
    times, jumps = _build(spec)
    f = step_function(times, jumps).antiderivative()
    a = times[0] + a_frac * (times[-1] - times[0])
    b = a + length
    exact = f.integrate(a, b)
    numeric = midpoint_integral(f, a, b, n=4000)
    # f is continuous piecewise linear; midpoint error only at kinks
    scale = max(1.0, max(abs(f(a)), abs(f(b)), abs(f(times[-1]))) * (b - a + 1))
    assert abs(exact - numeric) <= 1e-4 * scale


@settings(max_examples=100)
@given(steps, st.floats(min_value=0, max_value=20))
def test_antiderivative_consistent_with_integrate(spec, extra):
    times, jumps = _build(spec)
    f = step_function(times, jumps)
    g = f.antiderivative()
    t = times[-1] + extra
    assert math.isclose(g(t), f.integrate(times[0], t), rel_tol=1e-9, abs_tol=1e-9)


@settings(max_examples=100)
@given(steps, st.floats(min_value=0, max_value=1), st.floats(min_value=0, max_value=10))
def test_tail_agrees_with_original(spec, frac, dt):
    times, jumps = _build(spec)
    g = step_function(times, jumps).antiderivative().antiderivative()
    start = times[0] + frac * (times[-1] - times[0]) + dt / 2
    tail = g.tail(start)
    assert tail.breakpoints[0] == start
    for t in (start, start + dt / 3, start + dt, times[-1] + dt):
        if t >= start:
            assert math.isclose(tail(t), g(t), rel_tol=1e-9, abs_tol=1e-9)


def test_tail_left_of_domain():
    with pytest.raises(ValueError):
        step_function([1.0], [1.0]).tail(0.0)
