"""Acceptance criteria 1-8, each at its stated tolerance.

Every test records a single PASS/FAIL line (shown in the terminal summary)
before asserting, so a failing criterion still reports its measured values.
Run alone with ``pytest tests/test_acceptance.py``.
"""
import time

import numpy as np
import pytest

from conftest import record_criterion
from dressedlambda.dressed import (
    Regime,
    classify_regime,
    decay_rates,
    diagonalize_system,
    perturbative_energies,
    rate_curves,
)
from dressedlambda.dynamics import (
    build_lindblad_rotating,
    down_conversion_efficiency,
    linear_response_reflection,
    output_spectrum,
    reflection_map,
    steady_state,
    time_domain_reflection,
)
from dressedlambda.matching import Level, find_matching_power, mismatch_curve
from dressedlambda.model import ghz, mhz, reference_params, scaled_params, to_ghz, to_mhz
from dressedlambda.reduced import LambdaParams, lambda_reflection
from dressedlambda.validation import run_suite

FLUXES = (1e5, 1e6, 1e7)


@pytest.fixture(scope="module")
def match(nesting):
    return find_matching_power(nesting, Level.FOUR)


@pytest.fixture(scope="module")
def lines(match):
    p = match.params
    b = diagonalize_system(p)
    return p.omega_d + b.transition(4, 1), p.omega_d + b.transition(4, 2)


def test_criterion_1_dispersive_shift(nesting):
    t0 = time.perf_counter()
    chi_ok = nesting.chi == pytest.approx(mhz(50.0), rel=1e-15)
    b = diagonalize_system(nesting)
    pert = dict(perturbative_energies(nesting))
    err = max(abs(b.energies[j] - pert[b.labels[j]]) for j in range(4))
    dt = time.perf_counter() - t0
    ok = chi_ok and err <= mhz(2.0) and dt < 1.0
    record_criterion(1, ok, f"chi={to_mhz(nesting.chi):.12g} MHz, max |E_exact - E_pert| = "
                            f"{to_mhz(err):.3f} MHz (<= 2), {dt:.2f} s")
    assert ok


def test_criterion_2_nesting_classification():
    t0 = time.perf_counter()
    a = classify_regime(reference_params(4.87)).kind
    b = classify_regime(reference_params(4.83)).kind
    dt = time.perf_counter() - t0
    ok = a is Regime.NESTING and b is Regime.UNNESTING and dt < 1.0
    record_criterion(2, ok, f"4.87 GHz -> {a.value}, 4.83 GHz -> {b.value}, {dt:.3f} s")
    assert ok


def test_criterion_3_rate_inversion(nesting, unnesting):
    t0 = time.perf_counter()
    k = nesting.kappa
    grid = mhz(np.linspace(0.0, 50.0, 200))
    curves = rate_curves(nesting, grid)
    pair = max(np.max(np.abs(curves[:, 0] - curves[:, 3])),
               np.max(np.abs(curves[:, 1] - curves[:, 2]))) / k
    diff = curves[:, 2] - curves[:, 3]          # k41 - k42
    flips = np.nonzero(np.diff(np.sign(diff)))[0]
    m = find_matching_power(nesting, Level.FOUR)
    t = decay_rates(diagonalize_system(m.params), m.params)
    k41, k42 = t.kappa_at(4, 1) / k, t.kappa_at(4, 2) / k
    un = mismatch_curve(unnesting, grid, Level.FOUR)
    un_cross = bool(np.any(np.diff(np.sign(un)) != 0))
    dt = time.perf_counter() - t0
    ok = (len(flips) == 1 and abs(to_mhz(m.rabi) - 19.0) <= 1.0
          and abs(k41 - 0.5) <= 0.15 * 0.5 and abs(k42 - 0.5) <= 0.15 * 0.5
          and pair <= 0.1 and not un_cross and dt < 30.0)
    record_criterion(3, ok, f"crossing at {to_mhz(m.rabi):.3f} MHz, k41/k={k41:.3f}, k42/k={k42:.3f}, "
                            f"max pairing gap {pair:.4f} k, unnesting crossing={un_cross}, {dt:.1f} s")
    assert ok


def test_criterion_4_reflection_map(match, lines, nesting, unnesting):
    t0 = time.perf_counter()
    p = match.params
    w41 = lines[0]
    model = build_lindblad_rotating(p)
    ss = steady_state(model)
    probes = w41 + mhz(np.linspace(-30.0, 30.0, 1201))
    r = np.array([abs(linear_response_reflection(model, p, w, ss=ss).r) for w in probes])
    kmin = int(np.argmin(r))
    offset = to_mhz(probes[kmin] - w41)
    rabis = mhz(np.linspace(0.0, 50.0, 100))
    grid = ghz(np.linspace(9.90, 10.20, 200))
    r_un = np.abs(reflection_map(unnesting, rabis, grid))
    r_ne = np.abs(reflection_map(nesting, rabis, grid))
    worst = max(r.max(), r_un.max(), r_ne.max())
    dt = time.perf_counter() - t0
    ok = r[kmin] <= 0.1 and abs(offset) <= 5.0 and r_un.min() >= 0.5 and worst <= 1 + 1e-6 \
        and dt < 600.0
    record_criterion(4, ok, f"match: min|r|={r[kmin]:.4f} at {offset:+.2f} MHz from w41 "
                            f"(|r(w41)|={abs(linear_response_reflection(model, p, w41, ss=ss).r):.3f}); "
                            f"unnesting 100x200 min|r|={r_un.min():.4f}; max|r|-1={worst - 1:.1e}; "
                            f"{dt:.1f} s")
    assert ok


def test_criterion_5_transition_frequencies(lines):
    f41, f42 = to_ghz(lines[0]), to_ghz(lines[1])
    ok = abs(f41 - 10.066) <= 0.005 and abs(f42 - 9.977) <= 0.005
    record_criterion(5, ok, f"w_d+w41 = {f41:.4f} GHz (10.066), w_d+w42 = {f42:.4f} GHz (9.977)")
    assert ok


def test_criterion_6_down_conversion(match, lines):
    t0 = time.perf_counter()
    p = match.params
    w41, w42 = lines
    # spectrum over the whole probe band: every line of the probe-shifted manifold
    band = np.linspace(w42 - mhz(150.0), w41 + mhz(150.0), 12001)
    spec = output_spectrum(p, w41, np.sqrt(1e5), band)
    f_peak, _ = spec.peak()
    near = np.abs(band - f_peak) <= p.kappa
    share = np.trapezoid(spec.s_inc[near], band[near]) / np.trapezoid(spec.s_inc, band)
    t_spec = time.perf_counter() - t0
    pts = down_conversion_efficiency(p, FLUXES, w41)
    eta = [pt.eta for pt in pts]
    per_point = (time.perf_counter() - t0 - t_spec) / len(FLUXES)
    ok = (abs(f_peak - w42) <= mhz(5.0) and share >= 0.8 and 0.85 <= eta[0] < 1.0
          and eta[0] > eta[1] > eta[2] and eta[2] < 0.5 * eta[0] and per_point < 300.0)
    record_criterion(6, ok, f"peak at {to_ghz(f_peak):.4f} GHz, peak share {share:.3f}; "
                            f"eta = {eta[0]:.4f}, {eta[1]:.4f}, {eta[2]:.4f}; "
                            f"{per_point:.1f} s per power point")
    assert ok


def test_criterion_7_oracle_equivalence(match, lines):
    t0 = time.perf_counter()
    # (a) resolvent vs time-domain on the scaled configuration
    sp = scaled_params(match.params)
    model_s = build_lindblad_rotating(sp)
    ss_s = steady_state(model_s)
    w41_s = sp.omega_d + diagonalize_system(sp).transition(4, 1)
    dr = max(abs(linear_response_reflection(model_s, sp, w41_s + mhz(d), ss=ss_s).r
                 - time_domain_reflection(sp, w41_s + mhz(d)).r) for d in (-20.0, 0.0, 15.0))
    # (b) full model vs reduced Lambda model, delta measured from the 4->1 line
    p = match.params
    model = build_lindblad_rotating(p)
    ss = steady_state(model)
    k = p.kappa
    deltas = np.linspace(-3 * k, 3 * k, 241)
    full = np.array([abs(linear_response_reflection(model, p, lines[0] + d, ss=ss).r)
                     for d in deltas])
    red = np.array([abs(lambda_reflection(LambdaParams(k / 2, k / 2, p.gamma, d)))
                    for d in deltas])
    gap = np.abs(full - red)
    worst = int(np.argmax(gap))
    # (c) photon-flux conservation at 1e5 photons/s
    spec = output_spectrum(p, lines[0], np.sqrt(1e5), np.array([lines[1]]))
    balance = spec.flux_balance()
    dt = time.perf_counter() - t0
    ok_a, ok_b, ok_c = dr <= 1e-2, gap.max() <= 0.05, abs(balance - 1) <= 0.05
    ok = ok_a and ok_b and ok_c
    record_criterion(7, ok, f"(a) max|r_res - r_td| = {dr:.2e} [{'ok' if ok_a else 'FAIL'}]; "
                            f"(b) max||r_full| - |r_Lambda|| = {gap.max():.3f} at delta = "
                            f"{to_mhz(deltas[worst]):+.1f} MHz [{'ok' if ok_b else 'FAIL'}]; "
                            f"(c) flux balance {balance:.4f} [{'ok' if ok_c else 'FAIL'}]; {dt:.1f} s")
    assert ok_a, "resolvent and time-domain reflection disagree"
    assert ok_c, "photon flux not conserved"
    assert ok_b, (f"full vs reduced |r| differ by {gap.max():.3f} > 0.05 "
                  f"(full {full[worst]:.3f}, reduced {red[worst]:.3f})")


def test_criterion_8_invariant_suite():
    t0 = time.perf_counter()
    results = run_suite()
    dt = time.perf_counter() - t0
    failed = [c.name for c in results if not c.passed]
    ok = not failed and dt < 120.0
    record_criterion(8, ok, f"{len(results) - len(failed)}/{len(results)} invariant checks green, "
                            f"{dt:.1f} s" + (f"; failed: {failed}" if failed else ""))
    assert ok
