"""Documented behaviour of each public operation, checked case by case."""

import math
import random
import xml.etree.ElementTree as ET

import pytest

from taylorbiorth import biorth as bo
from taylorbiorth import derivagram as dg
from taylorbiorth import expr as ex
from taylorbiorth import jet as jt
from taylorbiorth import quad, sampling, series, specfun as sf
from taylorbiorth.errors import DomainError, ParseError
from taylorbiorth.quad import Interval

GAUSS = bo.get_signal("gaussian")
LOG = bo.get_signal("logpulse")
ZERO = bo.get_signal("0")
C = sf.EULER_GAMMA
SQRT_2PI = math.sqrt(2 * math.pi)


# expressions -----------------------------------------------------------

def test_parse_trees():
    assert ex.parse("exp(-t^2/2)") == ex.Exp(ex.Neg(ex.Div(ex.IntPow(ex.Var(), 2), ex.Const(2.0))))
    assert ex.parse("ln(1-t)") == ex.Ln(ex.Sub(ex.Const(1.0), ex.Var()))
    with pytest.raises(ParseError, match="position 5"):
        ex.parse("ln(1-")


def test_evaluate_cases():
    assert ex.evaluate(ex.parse("exp(-t^2/2)"), 0.0) == 1.0
    assert ex.evaluate(ex.parse("ln(1-t)"), 0.0) == 0.0
    with pytest.raises(DomainError):
        ex.evaluate(ex.parse("ln(1-t)"), 2.0)


# jets ------------------------------------------------------------------

@pytest.mark.parametrize("text,b,n,expected", [
    ("exp(-t^2/2)", 0.0, 6, [1, 0, -1 / 2, 0, 1 / 8, 0, -1 / 48]),
    ("ln(1-t)", 0.0, 4, [0, -1, -1 / 2, -1 / 3, -1 / 4]),
    ("5", 3.0, 4, [5, 0, 0, 0, 0]),
])
def test_lift_coefficients(text, b, n, expected):
    assert jt.lift(ex.parse(text), b, n).coeffs.tolist() == pytest.approx(expected, rel=1e-15)


def test_derivative_cases():
    jg = jt.lift(GAUSS.expr, 0.0, 6)
    assert jt.derivative(jg, 4) == pytest.approx(3.0)
    assert jt.derivative(jg, 3) == 0.0
    assert jt.derivative(jt.lift(LOG.expr, 0.0, 6), 3) == pytest.approx(-2.0)


def test_truncated_taylor_eval_cases():
    assert jt.truncated_taylor_eval(jt.lift(GAUSS.expr, 0.0, 2), 1.0) == pytest.approx(0.5)
    j = jt.lift(LOG.expr, 0.3, 8)
    assert jt.truncated_taylor_eval(j, 0.3) == j.coeffs[0] == pytest.approx(math.log(0.7))
    # at order 20 the error is the first omitted term 1/(2^11 11!) ~ 1.2e-11
    err20 = jt.truncated_taylor_eval(jt.lift(GAUSS.expr, 0.0, 20), 1.0) - math.exp(-0.5)
    assert err20 == pytest.approx(1 / (2 ** 11 * math.factorial(11)), rel=0.1)
    assert jt.truncated_taylor_eval(jt.lift(GAUSS.expr, 0.0, 22), 1.0) == pytest.approx(math.exp(-0.5), abs=1e-12)


def test_taylor_kernel_cases():
    f = ex.parse("cos(t) + 3")
    for t in (-2.0, 0.4, 5.0):
        assert bo.dist_apply(jt.taylor_kernel(0, t), f) == pytest.approx(4.0)
        assert bo.dist_apply(jt.taylor_kernel(7, t), ex.Const(1.0)) == 1.0
    via_kernel = bo.dist_apply(jt.taylor_kernel(8, 0.7), GAUSS.expr)
    assert abs(via_kernel - jt.truncated_taylor_eval(jt.lift(GAUSS.expr, 0.0, 8), 0.7)) < 1e-12


# quadrature ------------------------------------------------------------

def test_integrate_cases():
    assert quad.integrate(lambda t: math.exp(-t * t), Interval(-math.inf, math.inf)).value == pytest.approx(
        1.7724538509, abs=1e-10)
    assert quad.integrate(lambda t: math.log(1 - t) ** 2, Interval(0, 1)).value == pytest.approx(2.0, abs=1e-8)
    assert quad.integrate(lambda t: 0.0, Interval(0, 1)).value == 0.0


def test_moment_cases():
    assert quad.moment(GAUSS, 2, 0.0) == pytest.approx(2 ** 1.5 * math.gamma(1.5), rel=1e-10)
    assert quad.moment(GAUSS, 2, 0.0) == pytest.approx(2.5066283, abs=1e-7)
    assert abs(quad.moment(GAUSS, 3, 0.0)) < 1e-10
    assert quad.moment(LOG, 1, 0.0) == pytest.approx(-0.75, abs=1e-10)


# special functions -----------------------------------------------------

def test_special_function_cases():
    assert sf.gamma(0.5) == pytest.approx(1.7724538509, abs=1e-10)
    assert sf.gamma(5) == pytest.approx(24.0, rel=1e-14)
    assert sf.gamma(2.5) == pytest.approx(1.3293403881, abs=1e-10)
    assert sf.digamma(1) == pytest.approx(-0.57721566490, abs=1e-11)
    assert sf.digamma(3) == pytest.approx(1.5 - C, abs=1e-13)
    assert sf.digamma(2) - sf.digamma(1) == pytest.approx(1.0, abs=1e-14)
    assert sf.harmonic(2) == 1.5 and sf.harmonic(1) == 1.0
    for n in (1, 10, 100):
        assert abs(sf.harmonic(n) - (sf.digamma(n + 1) + C)) < 1e-12
    assert abs(sf.euler_constant() + sf.digamma(1)) < 1e-12
    assert abs(sf.harmonic(1) - sf.euler_constant() - sf.digamma(2)) < 1e-12


# coefficients ----------------------------------------------------------

def test_wavelet_coefficient_cases():
    assert bo.wavelet_coefficient(GAUSS, 2, 0.0) == pytest.approx(-1.0)
    assert bo.wavelet_coefficient(LOG, 0, 0.4) == pytest.approx(math.log(0.6))
    assert bo.wavelet_coefficient(LOG, 1, 0.0) == pytest.approx(-1.0)


def test_dual_coefficient_cases():
    assert bo.dual_coefficient(GAUSS, 0, 0.0) == pytest.approx(SQRT_2PI, rel=1e-12)
    assert abs(bo.dual_coefficient(GAUSS, 1, 0.0)) < 1e-10
    assert bo.dual_coefficient(LOG, 2, 0.0) == pytest.approx(-(11 / 6) / 6, abs=1e-10)


def test_biorthogonality_cases():
    assert bo.biorthogonality_check(3, 3, 0.7) == 1.0
    assert bo.biorthogonality_check(2, 5, -3.1) == 0.0
    assert bo.biorthogonality_check(5, 2, 9.0) == 0.0


def test_dual_taylor_series_cases():
    ds = bo.dual_taylor_series(GAUSS, 0.0, 8)
    assert ds.coeffs[2] == pytest.approx(SQRT_2PI / 2, rel=1e-10)
    assert bo.dist_apply(ds, ex.parse("t^2")) == pytest.approx(SQRT_2PI, rel=1e-10)
    assert bo.dist_apply(ds, ex.Const(1.0)) == ds.coeffs[0]
    assert all(d == 0.0 for d in bo.dual_taylor_series(ZERO, 0.0, 5).coeffs)


def test_dist_apply_dirac_sifts():
    phi = ex.parse("sin(t) + t^3")
    assert bo.dist_apply(bo.dirac(0.8), phi) == pytest.approx(ex.evaluate(phi, 0.8))


def test_parseval_taylor_cases():
    g = bo.parseval_taylor(GAUSS, 0.0, 4)
    assert g.quadrature_energy == pytest.approx(1.7724539, abs=1e-7)
    assert g.de[0] == pytest.approx(SQRT_2PI, rel=1e-12)
    assert g.de[2] == pytest.approx(-1.2533141, abs=1e-7)
    for k in range(3):
        closed = (-1) ** k * math.sqrt(2) * math.gamma(k + 0.5) / math.factorial(k)
        assert g.de[2 * k] == pytest.approx(closed, rel=1e-10)
    lp = bo.parseval_taylor(LOG, 0.0, 6)
    assert lp.quadrature_energy == pytest.approx(2.0, abs=1e-8)
    assert lp.de[0] == 0.0
    for n in range(1, 7):
        h = sum(1 / k for k in range(1, n + 2))
        assert lp.de[n] == pytest.approx(h / (n * (n + 1)), rel=1e-9)
    z = bo.parseval_taylor(ZERO, 0.0, 4)
    assert all(v == 0.0 for v in z.de + z.c + z.c_dual) and z.quadrature_energy == 0.0


def test_even_odd_split_cases():
    even, odd = bo.even_odd_split(LOG.with_rc(Interval(-1, 1)))
    rng = random.Random(3)
    for t in [rng.uniform(-0.99, 0.99) for _ in range(100)]:
        assert even(t) == pytest.approx(0.5 * math.log(1 - t * t), abs=1e-13)
        assert odd(t) == pytest.approx(0.5 * math.log((1 - t) / (1 + t)), abs=1e-13)
    ge, go = bo.even_odd_split(GAUSS)
    for t in (-2.0, 0.3, 1.7):
        assert ge(t) == GAUSS(t) and go(t) == 0.0


def test_moment_symmetry_cases():
    assert all(abs(v) < 1e-10 for k, v in bo.moment_symmetry_report(GAUSS, 7) if k % 2)
    odd_sig = bo.get_signal("t*exp(-t^2/2)")
    assert all(abs(v) < 1e-10 for k, v in bo.moment_symmetry_report(odd_sig, 6) if k % 2 == 0)
    assert all(v == 0.0 for _, v in bo.moment_symmetry_report(ZERO, 4))


def test_wavelet_spectrum_cases():
    assert bo.wavelet_spectrum(1, 0.0, 2.0) == pytest.approx(-2j)
    assert bo.wavelet_spectrum(2, 0.0, 1.0) == pytest.approx(-1.0)


def test_spectral_moment_cases():
    assert bo.spectral_moment(GAUSS, 2) == pytest.approx(-SQRT_2PI, rel=1e-10)
    assert bo.spectral_moment(GAUSS, 1) == 0


# series ----------------------------------------------------------------

def test_series_first_terms():
    assert series.converg1(0).raw_estimate == pytest.approx(math.sqrt(math.pi), rel=1e-14)
    assert series.converg1(1).raw_estimate == pytest.approx(math.sqrt(math.pi) / 2, rel=1e-14)
    assert series.converg2(1).raw_estimate == pytest.approx((1.5 - C) / 2, rel=1e-13)
    assert series.alternating_log_series(1).raw_estimate == pytest.approx(-0.75)
    assert series.harmonic_identity_series(1).raw_estimate == pytest.approx(0.75)


def test_aitken_cases():
    geometric = []
    acc = 0.0
    for k in range(20):
        acc += 0.5 ** k
        geometric.append(acc)
    assert series.aitken_accelerate(geometric, 3) == pytest.approx(2.0, abs=1e-12)
    assert series.aitken_accelerate(series.converg1(99).partial_sums, 5) == pytest.approx(
        math.sqrt(math.pi / 2), abs=1e-5)
    assert series.aitken_accelerate([0.25] * 9, 3) == 0.25


# derivagram ------------------------------------------------------------

def test_derivagram_cases(tmp_path):
    d = dg.compute(GAUSS, [0.0], 10)
    assert d.column(0).tolist() == pytest.approx(bo.parseval_taylor(GAUSS, 0.0, 9).de, abs=1e-12)
    assert all(abs(d.values[n, 0]) < 1e-10 for n in (1, 3, 5, 7, 9))

    small = dg.compute(LOG, [0.2, 0.4], 2)
    p = tmp_path / "small.csv"
    dg.render_csv(small, p)
    assert len(p.read_text().splitlines()) == 5

    empty = dg.compute(LOG, dg.parse_grid("0.1:0.9:0"), 3)
    dg.render_csv(empty, p)
    assert p.read_text() == "n,t0,DE\n"


def test_bargraph_signs(tmp_path):
    d = dg.compute(GAUSS, [0.0], 10)
    p = tmp_path / "bar.svg"
    dg.render_svg(d, p, "bargraph")
    rects = ET.parse(p).getroot().findall("{http://www.w3.org/2000/svg}rect")
    heights = [float(r.get("height")) for r in rects]
    values = [float(r.get("data-value")) for r in rects]
    assert all(heights[n] == 0.0 for n in range(1, 10, 2))
    assert [values[n] > 0 for n in range(0, 10, 2)] == [True, False, True, False, True]


# sampling --------------------------------------------------------------

def test_sa_cases():
    assert sampling.sa(0.0) == 1.0
    assert abs(sampling.sa(math.pi)) < 1e-15
    assert sampling.sa(math.pi / 2) == pytest.approx(2 / math.pi, rel=1e-15)


def test_sinc_biorth_cases():
    assert sampling.sinc_biorth(4, 4, 2.0) == 1.0
    for B in (0.3, 1.0, 7.0):
        assert abs(sampling.sinc_biorth(1, 3, B)) < 1e-15


def test_two_sinc_reconstruction_case():
    f = sampling.two_sinc_signal(1.0)
    direct = sampling.sa(2 * math.pi * 0.3) + 0.5 * sampling.sa(2 * math.pi * 0.3 - 3 * math.pi)
    ss = sampling.SampledSignal.from_function(f, 1.0, 8)
    assert sampling.shannon_reconstruct(ss, 0.3) == pytest.approx(direct, abs=1e-12)
