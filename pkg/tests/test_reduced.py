import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dressedlambda.errors import InvalidParameters
from dressedlambda.model import mhz
from dressedlambda.reduced import LambdaParams, lambda_efficiency, lambda_reflection

GOLDEN_ABS_R = 0.44721359549995926   # Gamma_eg = Gamma_em = 10 MHz, Gamma_mg = 1 MHz, delta = 5 MHz
rates = st.floats(1e5, 1e9)


def analytic_r(p):
    # weak-probe Lambda reflection: 1 - Gamma_eg / (Gamma_tot / 2 - i delta)
    half = 0.5 * (p.gamma_eg + p.gamma_em)
    return 1.0 - p.gamma_eg / (half - 1j * p.probe_detuning)


def test_matched_resonance_cancels():
    p = LambdaParams(mhz(10.0), mhz(10.0), mhz(1.0))
    assert abs(lambda_reflection(p)) <= 1e-6


@given(rates, st.floats(-1e9, 1e9), rates)
@settings(max_examples=40, deadline=None)
def test_no_raman_channel_unit_reflection(geg, delta, gmg):
    p = LambdaParams(geg, 0.0, gmg, probe_detuning=delta)
    assert abs(lambda_reflection(p)) == pytest.approx(1.0, abs=1e-6)


@given(rates, rates, rates, st.floats(-1e9, 1e9))
@settings(max_examples=60, deadline=None)
def test_matches_closed_form(geg, gem, gmg, delta):
    p = LambdaParams(geg, gem, gmg, probe_detuning=delta)
    r = lambda_reflection(p)
    assert r == pytest.approx(analytic_r(p), abs=1e-7)
    assert abs(r) <= 1 + 1e-6


def test_golden_value():
    p = LambdaParams(mhz(10.0), mhz(10.0), mhz(1.0), probe_detuning=mhz(5.0))
    assert abs(lambda_reflection(p)) == pytest.approx(GOLDEN_ABS_R, abs=1e-9)


def test_weak_probe_efficiency_unity():
    p = LambdaParams(mhz(10.0), mhz(10.0), mhz(1.0), probe_amp=np.sqrt(1e3))
    assert lambda_efficiency(p) == pytest.approx(1.0, abs=1e-3)


def test_saturated_efficiency():
    gmg = mhz(1.0)
    p = LambdaParams(mhz(10.0), mhz(10.0), gmg, probe_amp=np.sqrt(10 * gmg))
    assert lambda_efficiency(p) < 0.5


def test_no_raman_no_efficiency():
    p = LambdaParams(mhz(10.0), 0.0, mhz(1.0), probe_amp=100.0)
    assert lambda_efficiency(p) == pytest.approx(0.0, abs=1e-12)


@given(st.floats(1e2, 1e8))
@settings(max_examples=20, deadline=None)
def test_efficiency_bounded(flux):
    p = LambdaParams(mhz(10.0), mhz(10.0), mhz(1.0), probe_amp=np.sqrt(flux))
    assert 0.0 <= lambda_efficiency(p) <= 1.0 + 1e-9


@pytest.mark.parametrize("kw", [
    dict(gamma_eg=-1.0, gamma_em=1.0, gamma_mg=1.0),
    dict(gamma_eg=1.0, gamma_em=1.0, gamma_mg=0.0),
])
def test_invalid(kw):
    with pytest.raises(InvalidParameters):
        LambdaParams(**kw)


def test_efficiency_needs_probe():
    with pytest.raises(InvalidParameters):
        lambda_efficiency(LambdaParams(1.0, 1.0, 1.0))


@given(rates, rates, rates)
@settings(max_examples=40, deadline=None)
def test_symmetric_in_decay_pair(ga, gb, gmg):
    r_ab = lambda_reflection(LambdaParams(ga, gb, gmg))
    r_ba = lambda_reflection(LambdaParams(gb, ga, gmg))
    assert abs(r_ab) == pytest.approx(abs(r_ba), abs=1e-7)


def test_golden_matched_by_full_model(match4):
    """Full model at the same detuning from the 4->1 line, within 0.05 of the golden |r|."""
    from dressedlambda.dressed import diagonalize_system
    from dressedlambda.dynamics import build_lindblad_rotating, linear_response_reflection

    p = match4.params
    w41 = p.omega_d + diagonalize_system(p).transition(4, 1)
    r = linear_response_reflection(build_lindblad_rotating(p), p, w41 + mhz(5.0)).r
    assert abs(r) == pytest.approx(GOLDEN_ABS_R, abs=0.05)
