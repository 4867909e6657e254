import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from taylorbiorth import expr as ex
from taylorbiorth.errors import DomainError, ParseError


def test_unary_minus_binds_looser_than_power():
    e = ex.parse("-t^2/2")
    assert e == ex.Neg(ex.Div(ex.IntPow(ex.Var(), 2), ex.Const(2.0)))
    assert ex.evaluate(e, 3.0) == -4.5


@pytest.mark.parametrize("text,t,expected", [
    ("exp(-t^2/2)", 1.0, math.exp(-0.5)),
    ("ln(1-t)", 0.5, math.log(0.5)),
    ("sin(t)*cos(t)", 0.7, math.sin(0.7) * math.cos(0.7)),
    ("sqrt(t) + 2*t - 1", 4.0, 2.0 + 8.0 - 1.0),
    ("t^(-2)", 2.0, 0.25),
    ("t^-3", 2.0, 0.125),
    ("2.5e-1 * t", 4.0, 1.0),
    ("((t))", 1.25, 1.25),
])
def test_evaluate_matches_math(text, t, expected):
    assert ex.evaluate(ex.parse(text), t) == pytest.approx(expected, rel=1e-15)


@pytest.mark.parametrize("text,position", [
    ("ln(1-", 5),
    ("t +", 3),
    ("2 * * t", 4),
    ("(t", 2),
    ("t)", 1),
])
def test_parse_error_position(text, position):
    with pytest.raises(ParseError) as info:
        ex.parse(text)
    assert info.value.position == position
    assert f"at position {position}" in str(info.value)


def test_unknown_function_and_variable():
    with pytest.raises(ParseError, match="unknown function 'tan'"):
        ex.parse("tan(t)")
    with pytest.raises(ParseError):
        ex.parse("x + 1")


def test_fractional_exponent_rejected():
    with pytest.raises(ParseError):
        ex.parse("t^0.5")


@pytest.mark.parametrize("text,t", [("ln(t)", 0.0), ("ln(t)", -1.0), ("sqrt(t)", -1e-9), ("1/t", 0.0)])
def test_domain_errors(text, t):
    with pytest.raises(DomainError):
        ex.evaluate(ex.parse(text), t)


def test_array_evaluation_matches_scalar():
    e = ex.parse("exp(-t^2/2) * sin(3*t) + t^3")
    ts = np.linspace(-3, 3, 41)
    vec = ex.evaluate(e, ts)
    assert np.allclose(vec, [ex.evaluate(e, float(t)) for t in ts], rtol=1e-14, atol=0)


def test_odd_power_is_exactly_odd_on_arrays():
    e = ex.parse("t^17 * exp(-t^2/2)")
    ts = np.linspace(0.1, 9, 50)
    assert np.array_equal(ex.evaluate(e, -ts), -ex.evaluate(e, ts))


def test_reflect_and_substitute():
    e = ex.parse("ln(1-t)")
    r = ex.reflect(e)
    assert ex.evaluate(r, 0.5) == pytest.approx(math.log(1.5))
    shifted = ex.substitute(e, ex.parse("t/2"))
    assert ex.evaluate(shifted, 1.0) == pytest.approx(math.log(0.5))


_leaf = st.one_of(
    st.just(ex.Var()),
    st.floats(min_value=-5, max_value=5, allow_nan=False).map(lambda v: ex.Const(round(v, 3))),
)


def _extend(children):
    return st.one_of(
        st.builds(ex.Add, children, children),
        st.builds(ex.Sub, children, children),
        st.builds(ex.Mul, children, children),
        st.builds(ex.Neg, children),
        st.builds(ex.Sin, children),
        st.builds(ex.Exp, children),
        st.builds(ex.IntPow, children, st.integers(0, 4)),
    )


@given(st.recursive(_leaf, _extend, max_leaves=8), st.floats(min_value=-1.5, max_value=1.5))
def test_to_text_round_trips(e, t):
    again = ex.parse(ex.to_text(e))
    try:
        a = ex.evaluate(e, t)
    except (DomainError, OverflowError):
        return
    b = ex.evaluate(again, t)
    if math.isfinite(a):
        assert b == pytest.approx(a, rel=1e-12, abs=1e-12)
