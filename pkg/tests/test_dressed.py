import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dressedlambda.dressed import (
    Regime,
    classify_regime,
    decay_rates,
    diagonalize_system,
    drive_sweep,
    perturbative_energies,
    rate_curves,
    track_branches,
)
from dressedlambda.errors import AmbiguousTracking, DegenerateDetuning
from dressedlambda.linalg import dagger
from dressedlambda.model import SystemParams, build_bare_operators, ghz, mhz, reference_params

# Frozen reference energies (MHz, relative to the lowest level) at 4.87 GHz, E = 0.
EXACT_LOW_MHZ = [0.0, 80.4902432, 5161.923789, 5179.509757]


def test_decoupled_dressed_equals_bare():
    p = SystemParams(omega_q=ghz(5), omega_r=ghz(10), g=0.0, kappa=mhz(20), gamma=mhz(1),
                     omega_d=ghz(4.87))
    b = diagonalize_system(p)
    expected = sorted(m * (p.omega_q - p.omega_d) + n * (p.omega_r - p.omega_d)
                      for m in (0, 1) for n in range(p.n_max + 1))
    np.testing.assert_allclose(b.energies, expected, rtol=4e-16, atol=0)
    assert all(w == 1.0 for w in b.weights)


def test_lowest_levels_frozen(nesting):
    b = diagonalize_system(nesting)
    e = (b.energies[:4] - b.energies[0]) / (2 * np.pi * 1e6)
    np.testing.assert_allclose(e, EXACT_LOW_MHZ, atol=1e-6)
    assert b.labels[:4] == [(0, 0), (1, 0), (1, 1), (0, 1)]
    assert np.all(b.weights[:4] >= 0.5)


def test_second_level_near_perturbative(nesting):
    b = diagonalize_system(nesting)
    target = nesting.omega_q - nesting.omega_d - nesting.chi
    assert abs(b.energies[1] - b.energies[0] - target) <= mhz(3.0)


def test_exact_vs_perturbative(nesting):
    b = diagonalize_system(nesting)
    pert = dict(perturbative_energies(nesting))
    for j in range(4):
        assert abs(b.energies[j] - pert[b.labels[j]]) <= mhz(2.0)


def test_perturbative_ground_and_ordering(nesting):
    pert = dict(perturbative_energies(nesting))
    assert pert[(0, 0)] == 0.0
    assert pert[(0, 0)] < pert[(1, 0)] < pert[(1, 1)] < pert[(0, 1)]


def test_perturbative_degenerate():
    p = reference_params()
    object.__setattr__(p, "omega_r", p.omega_q)  # bypass validation on purpose
    with pytest.raises(DegenerateDetuning):
        perturbative_energies(p)
    with pytest.raises(DegenerateDetuning):
        classify_regime(p)


@given(st.floats(0.0, 60.0), st.sampled_from([4.83, 4.87, 4.9]))
@settings(max_examples=25, deadline=None)
def test_basis_invariants(rabi, wd):
    p = reference_params(wd, rabi)
    b = diagonalize_system(p)
    assert np.all(np.diff(b.energies) >= 0)
    np.testing.assert_allclose(dagger(b.vectors) @ b.vectors, np.eye(b.dim), atol=1e-10)


@pytest.mark.parametrize("wd, kind", [
    (4.87, Regime.NESTING),
    (4.83, Regime.UNNESTING),
    (4.90, Regime.NESTING),     # omega_q - 2 chi, window centre
    (4.96, Regime.UNNESTING),
])
def test_classify(wd, kind):
    rc = classify_regime(reference_params(wd))
    assert rc.kind is kind
    assert rc.chi == pytest.approx(mhz(50.0))
    assert to_ghz_pair(rc.window) == pytest.approx((4.85, 4.95))


def to_ghz_pair(w):
    return tuple(x / (2 * np.pi * 1e9) for x in w)


@pytest.mark.parametrize("wd, boundary", [(4.8505, True), (4.9495, True), (4.87, False)])
def test_boundary_flag(wd, boundary):
    assert classify_regime(reference_params(wd)).boundary is boundary


def test_decay_rates_bare_limit(nesting):
    t = decay_rates(diagonalize_system(nesting), nesting)
    k = nesting.kappa
    assert t.kappa_at(3, 2) == pytest.approx(k, rel=0.02)
    assert t.kappa_at(4, 1) == pytest.approx(k, rel=0.02)
    assert t.kappa_at(3, 1) <= 1e-6 * k and t.kappa_at(4, 2) <= 1e-6 * k


def test_decay_rates_strong_drive(nesting):
    p = nesting.with_rabi(mhz(300.0))
    t = decay_rates(diagonalize_system(p), p)
    assert t.kappa_at(3, 1) == pytest.approx(p.kappa, rel=0.1)
    assert t.kappa_at(4, 2) == pytest.approx(p.kappa, rel=0.1)


def test_decay_rates_half_at_crossing(nesting):
    p = nesting.with_rabi(mhz(19.0))
    t = decay_rates(diagonalize_system(p), p)
    assert t.kappa_at(4, 1) == pytest.approx(p.kappa / 2, rel=0.15)
    assert t.kappa_at(4, 2) == pytest.approx(p.kappa / 2, rel=0.15)


@given(st.floats(0.0, 80.0), st.sampled_from([4.83, 4.87]))
@settings(max_examples=25, deadline=None)
def test_decay_table_sum_rules(rabi, wd):
    p = reference_params(wd, rabi)
    ops = build_bare_operators(p)
    b = diagonalize_system(p, ops)
    t = decay_rates(b, p, ops)
    assert t.kappa_t.min() >= 0 and t.gamma_t.min() >= 0
    v = b.vectors
    n_exp = np.real(np.diag(dagger(v) @ dagger(ops.a) @ ops.a @ v))
    e_exp = np.real(np.diag(dagger(v) @ dagger(ops.sigma) @ ops.sigma @ v))
    ka = t.kappa_t / p.kappa
    np.testing.assert_allclose(ka.sum(axis=1), n_exp, atol=1e-10)
    np.testing.assert_allclose(t.gamma_t.sum(axis=1) / p.gamma, e_exp, atol=1e-10)
    # sum_j |<i|a^+|j>|^2 + |<i|a|j>|^2 = <i|a^+ a + a a^+|i>, away from the truncation edge
    sym = ka.sum(axis=1) + ka.sum(axis=0)
    np.testing.assert_allclose(sym[:4], 2 * n_exp[:4] + 1, atol=1e-10)


def test_transition_frequencies_antisymmetric(nesting):
    t = decay_rates(diagonalize_system(nesting), nesting)
    np.testing.assert_allclose(t.frequencies, -t.frequencies.T)


def test_track_constant_sweep(nesting):
    b = diagonalize_system(nesting)
    out = track_branches([b, b, b])
    for x in out:
        np.testing.assert_array_equal(x.energies, b.energies)
        assert x.labels == b.labels


def test_track_small_step_continuous(nesting):
    sweep = drive_sweep(nesting, mhz(np.linspace(0, 0.5, 6)))
    out = track_branches(sweep)
    e = np.array([x.energies for x in out])
    assert np.max(np.abs(np.diff(e, axis=0))) < mhz(1.0)
    assert all(x.labels == out[0].labels for x in out)


def test_track_fine_sweep_overlaps(nesting):
    rabis = mhz(np.linspace(0, 50, 200))
    sweep = drive_sweep(nesting, rabis)
    out = track_branches(sweep, threshold=0.9)
    assert len(out) == 200


def test_track_ambiguous(nesting):
    sweep = drive_sweep(nesting, mhz(np.array([0.0, 400.0])))
    with pytest.raises(AmbiguousTracking):
        track_branches(sweep)


def test_rate_pairing(nesting):
    k = nesting.kappa
    c = rate_curves(nesting, mhz(np.linspace(0, 50, 101)))
    assert np.max(np.abs(c[:, 0] - c[:, 3])) <= 0.1 * k
    assert np.max(np.abs(c[:, 1] - c[:, 2])) <= 0.1 * k
