import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coupledosc.core import DomainError, OscillatorPair, critical_coupling, normal_modes
from coupledosc.gaussian import Temperature, ground_covariance, thermal_covariance
from coupledosc.witness import (
    FORMS,
    WitnessReport,
    duan_from_covariance,
    duan_ground,
    duan_resonant_ground_value,
    duan_thermal_resonant,
    offresonant_limit_value,
)

# witness values of exact-diagonalisation states (N = 40 per mode)
ORACLE = {
    (1.0, 1.0, 0.5, math.inf): 0.7618016810571375,
    (1.0, 2.0, 0.5, math.inf): 0.8408504789262874,
    (1.0, 1.0, 0.5, 2.0 / math.sqrt(0.5)): 0.8988594390717148,
    (1.0, 2.0, 0.5, 3.0): 0.8991733765960792,
    (1.0, 50.0, 0.8 * math.sqrt(50.0), math.inf): 0.9259223793996572,
}

pairs = st.tuples(st.floats(0.05, 20.0), st.floats(0.05, 20.0), st.floats(0.0, 0.999)).map(
    lambda t: OscillatorPair(t[0], t[1], t[2] * critical_coupling(t[0], t[1])))


def _report(omega, Omega, g, beta):
    pair, temp = OscillatorPair(omega, Omega, g), Temperature(beta)
    if temp.is_ground:
        return duan_ground(pair)
    if pair.is_resonant():
        return duan_thermal_resonant(pair, temp)
    return duan_from_covariance(thermal_covariance(pair, temp), pair)


@pytest.mark.parametrize("point", sorted(ORACLE, key=str))
def test_witness_matches_exact_states(point):
    assert _report(*point).value == pytest.approx(ORACLE[point], abs=1e-12)


@pytest.mark.parametrize("form", FORMS)
def test_examples_all_forms(form):
    assert duan_ground(OscillatorPair(1.0, 1.0, 0.5), form).value == pytest.approx(
        math.sqrt(0.5) / 2 + 1 / (2 * math.sqrt(1.5)), rel=1e-13)
    report = duan_ground(OscillatorPair(1.0, 2.0, 0.5), form)
    assert report.value == pytest.approx(0.840850, abs=1e-6)
    assert report.entangled and report.form_used == form


def test_forms_agree_on_grid():
    worst = 0.0
    for ratio in np.linspace(0.02, 1.0, 50):
        for q in np.linspace(0.0, 0.99, 50):
            pair = OscillatorPair.from_ratios(ratio, q)
            modes = normal_modes(pair)
            values = [duan_ground(pair, f, modes).value for f in FORMS]
            worst = max(worst, (max(values) - min(values)) / min(values))
    assert worst < 1e-10


@settings(max_examples=300, deadline=None)
@given(pairs)
def test_forms_agree_and_match_covariance(pair):
    values = [duan_ground(pair, f).value for f in FORMS]
    # the frequencies-only form recovers g from a squared splitting difference,
    # so below g/g_c ~ 1e-2 its error is set by the rounding of the frequencies
    tol = 1e-10 if pair.coupling_ratio >= 0.01 else 1e-7
    assert max(values) - min(values) < tol * min(values)
    assert duan_from_covariance(ground_covariance(pair), pair).value == pytest.approx(values[0], rel=1e-10)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 100.0), st.floats(0.01, 100.0), st.sampled_from(FORMS))
def test_uncoupled_value_is_exactly_one(omega, Omega, form):
    report = duan_ground(OscillatorPair(omega, Omega, 0.0), form)
    assert report.value == pytest.approx(1.0, abs=1e-12)
    assert not report.entangled or report.value < 1 - 1e-12


def test_boundary_value_is_not_entangled():
    assert not WitnessReport(1.0, "theta_form").entangled
    assert WitnessReport(1.0 - 1e-15, "theta_form").entangled


@pytest.mark.parametrize("q", np.linspace(0.0, 0.99, 12))
def test_resonant_reduction(q):
    pair = OscillatorPair.from_ratios(1.0, q, Omega=2.5)
    assert duan_ground(pair).value == pytest.approx(duan_resonant_ground_value(pair), rel=1e-12)
    assert duan_thermal_resonant(pair, Temperature()).value == pytest.approx(
        duan_resonant_ground_value(pair), rel=1e-12)


@pytest.mark.parametrize("q", [0.2, 0.5, 0.8])
def test_thermal_closed_form_matches_covariance(q):
    pair = OscillatorPair.from_ratios(1.0, q)
    for beta in (0.3, 1.0, 4.0):
        closed = duan_thermal_resonant(pair, Temperature(beta)).value
        general = duan_from_covariance(thermal_covariance(pair, Temperature(beta)), pair).value
        assert closed == pytest.approx(general, rel=1e-12)


def test_uncoupled_thermal_value():
    pair, beta = OscillatorPair(1.0, 1.0, 0.0), 0.8
    n = 1 / math.expm1(beta)
    assert duan_thermal_resonant(pair, Temperature(beta)).value == pytest.approx(2 * n + 1, rel=1e-14)


def test_hot_state_is_not_entangled():
    pair = OscillatorPair(1.0, 1.0, 0.5)
    report = duan_thermal_resonant(pair, Temperature(0.2 / normal_modes(pair).omega_minus))
    assert report.value > 1 and not report.entangled


@settings(max_examples=100, deadline=None)
@given(st.floats(0.0, 0.99), st.floats(0.05, 20.0), st.floats(1.01, 3.0))
def test_thermal_witness_rises_with_temperature(q, beta, factor):
    pair = OscillatorPair.from_ratios(1.0, q)
    cold = duan_thermal_resonant(pair, Temperature(beta * factor)).value
    hot = duan_thermal_resonant(pair, Temperature(beta)).value
    assert hot > cold


def test_thermal_closed_form_rejects_detuning():
    with pytest.raises(DomainError):
        duan_thermal_resonant(OscillatorPair(1.0, 2.0, 0.5), Temperature(1.0))


@pytest.mark.parametrize("q", [0.1, 0.4, 0.7, 0.9, 0.99])
def test_resonance_minimises_witness(q):
    resonant = duan_ground(OscillatorPair.from_ratios(1.0, q)).value
    for ratio in np.linspace(0.05, 0.98, 40):
        assert duan_ground(OscillatorPair.from_ratios(ratio, q)).value > resonant


def test_far_detuned_pair_can_still_be_entangled():
    # a large detuning alone does not remove the witness violation
    pair = OscillatorPair(1.0, 50.0, 0.8 * math.sqrt(50.0))
    report = duan_ground(pair)
    assert report.value == pytest.approx(0.9259223793996572, abs=1e-12)
    assert report.entangled


def test_offresonant_limit_never_signals():
    assert offresonant_limit_value(OscillatorPair(1.0, 3.0, 0.0)) == 1.0
    assert offresonant_limit_value(OscillatorPair(1.0, 1.0, 0.5)) == pytest.approx(1.060660, abs=1e-6)
    assert offresonant_limit_value(OscillatorPair.from_ratios(0.01, 0.5)) >= 1.0


def test_misprinted_coupling_form_disagrees():
    # printed sign: (w- - w+)(... ) with the bracket subtracted gives a value above one
    pair = OscillatorPair(1.0, 2.0, 0.5)
    w, W, g = pair.omega, pair.Omega, pair.g
    m = normal_modes(pair)
    wm, wp = m.omega_minus, m.omega_plus
    root = math.sqrt((w * w - W * W) ** 2 + 4 * w * W * g * g)
    bracket = (w + W) * (wm + wp) - (wm - wp) * (4 * w * W * g + (w - W) ** 2 * (w + W)) / root
    printed = (w * W + wm * wp) * bracket / (8 * w * wm * W * wp)
    assert printed == pytest.approx(1.453, abs=1e-3)
    assert duan_ground(pair, "g_form").value == pytest.approx(0.8408504789262874, abs=1e-12)


def test_unknown_form():
    with pytest.raises(ValueError):
        duan_ground(OscillatorPair(1.0, 1.0, 0.5), "bogus")


def test_covariance_metadata_must_match_pair():
    cov = ground_covariance(OscillatorPair(1.0, 2.0, 0.5))
    with pytest.raises(DomainError):
        duan_from_covariance(cov, OscillatorPair(1.0, 3.0, 0.5))


def test_uncoupled_covariance_witness_is_one():
    pair = OscillatorPair(0.3, 7.0, 0.0)
    assert duan_from_covariance(ground_covariance(pair), pair).value == pytest.approx(1.0, abs=1e-14)


def test_report_dict():
    d = duan_ground(OscillatorPair(1.0, 1.0, 0.5), "theta_form").as_dict()
    assert d == {"value": pytest.approx(0.7618016810571375), "bound": 1.0,
                 "entangled": True, "form_used": "theta_form"}
