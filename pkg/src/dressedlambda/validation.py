"""Structural invariant suite behind ``dressedlambda validate``.

Each check returns a :class:`Check` with the worst observed value and the
bound it is compared against. The suite runs on the reference parameter set
in both drive regimes and takes well under a minute.
"""
import time
from dataclasses import dataclass, replace

import numpy as np

from .dressed import Regime, classify_regime, decay_rates, diagonalize_system
from .dynamics.evolve import time_domain_reflection
from .dynamics.lindblad import build_lindblad_rotating, build_lindblad_secular, steady_state
from .dynamics.response import linear_response_reflection
from .dynamics.spectrum import output_spectrum
from .linalg import dagger
from .matching import Level, find_matching_power
from .model import build_bare_operators, mhz, reference_params, scaled_params

TRACE_TOL = 1e-12
HERM_TOL = 1e-12
POSITIVITY_TOL = 1e-10
SUM_RULE_TOL = 1e-10
ORACLE_TOL = 1e-2
FLUX_TOL = 0.05


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    bound: float
    seconds: float = 0.0

    def line(self):
        tag = "PASS" if self.passed else "FAIL"
        return f"{tag} {self.name}: {self.value:.3e} (bound {self.bound:.1e}, {self.seconds:.1f} s)"


def _random_density(d, rng):
    x = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = x @ dagger(x)
    return rho / np.trace(rho).real


def _reference_points():
    nest = reference_params(4.87)
    unnest = reference_params(4.83)
    match = find_matching_power(nest, Level.FOUR)
    points = [nest.with_rabi(mhz(r)) for r in (0.0, 10.0, 30.0)]
    points += [unnest.with_rabi(mhz(r)) for r in (0.0, 25.0)]
    return match, points


def check_regimes():
    expected = {4.87: Regime.NESTING, 4.83: Regime.UNNESTING}
    return sum(classify_regime(reference_params(f)).kind is not k for f, k in expected.items())


def check_trace_annihilation(models, rng, samples=20):
    """|Tr L(rho)| relative to the generator scale, for random rho."""
    worst = 0.0
    for m in models:
        for _ in range(samples):
            rho = _random_density(m.dim, rng)
            worst = max(worst, abs(np.trace(m.apply(rho))) / m.scale)
    return worst


def check_hermiticity_preservation(models, rng, samples=20):
    worst = 0.0
    for m in models:
        for _ in range(samples):
            out = m.apply(_random_density(m.dim, rng))
            worst = max(worst, np.max(np.abs(out - dagger(out))) / m.scale)
    return worst


def check_steady_states(models):
    """Worst of trace error, anti-Hermitian part, negative eigenvalue, residual / kappa."""
    worst = {"trace": 0.0, "herm": 0.0, "neg": 0.0, "residual": 0.0}
    for m in models:
        ss = steady_state(m)
        rho = ss.rho
        worst["trace"] = max(worst["trace"], abs(np.trace(rho) - 1.0))
        worst["herm"] = max(worst["herm"], np.max(np.abs(rho - dagger(rho))))
        worst["neg"] = max(worst["neg"], -min(0.0, np.min(np.linalg.eigvalsh(rho))))
        kappa = m.params.kappa
        worst["residual"] = max(worst["residual"], ss.residual / kappa)
    return worst


def check_decay_tables(points, n_low=4):
    """Negative entries and sum-rule errors, relative to the bare rates.

    Row sums are exact in the truncated space: sum_j |<i|a^+|j>|^2 = <i|a^+ a|i>.
    The symmetric rule with <i|a^+ a + a a^+|i> = <i|2 a^+ a + 1|i> uses the
    untruncated commutator, so it is checked only on the lowest levels.
    """
    neg, rule_a, rule_s, rule_sym = 0.0, 0.0, 0.0, 0.0
    for p in points:
        ops = build_bare_operators(p)
        basis = diagonalize_system(p, ops)
        t = decay_rates(basis, p, ops)
        neg = max(neg, -min(0.0, t.kappa_t.min() / p.kappa, t.gamma_t.min() / p.gamma))
        v = basis.vectors
        n_exp = np.real(np.diag(dagger(v) @ dagger(ops.a) @ ops.a @ v))
        e_exp = np.real(np.diag(dagger(v) @ dagger(ops.sigma) @ ops.sigma @ v))
        ka, ga = t.kappa_t / p.kappa, t.gamma_t / p.gamma
        rule_a = max(rule_a, np.max(np.abs(ka.sum(axis=1) - n_exp)))
        rule_s = max(rule_s, np.max(np.abs(ga.sum(axis=1) - e_exp)))
        sym = ka.sum(axis=1) + ka.sum(axis=0) - (2 * n_exp + 1)
        rule_sym = max(rule_sym, np.max(np.abs(sym[:n_low])))
    return neg, rule_a, rule_s, rule_sym


def truncation_observables(params):
    """Transition frequencies, 4-level rates and |r| on the 4->1 line."""
    basis = diagonalize_system(params)
    t = decay_rates(basis, params)
    w41 = params.omega_d + basis.transition(4, 1)
    r = linear_response_reflection(build_lindblad_rotating(params), params, w41).r
    freqs = [basis.transition(i, j) for i, j in ((2, 1), (3, 1), (4, 1), (4, 2))]
    rates = [t.kappa_at(i, j) for i, j in ((3, 1), (3, 2), (4, 1), (4, 2))]
    return np.array(freqs), np.array(rates) / params.kappa, abs(r)


def check_truncation(params, step=2):
    """Largest relative change of the observables when n_max grows by ``step``."""
    base = truncation_observables(params)
    more = truncation_observables(replace(params, n_max=params.n_max + step))
    df = np.max(np.abs(more[0] - base[0]) / np.abs(base[0]))
    # rates and |r| are O(1) quantities; compare on that absolute scale
    dk = np.max(np.abs(more[1] - base[1]))
    return max(df, dk, abs(more[2] - base[2]))


def check_oracle(match):
    """Resolvent vs time-domain reflection on the scaled configuration."""
    sp = scaled_params(match.params)
    model = build_lindblad_rotating(sp)
    ss = steady_state(model)
    w41 = sp.omega_d + diagonalize_system(sp).transition(4, 1)
    worst = 0.0
    for off in (-20.0, 0.0, 15.0):
        wp = w41 + mhz(off)
        r_res = linear_response_reflection(model, sp, wp, ss=ss).r
        r_td = time_domain_reflection(sp, wp).r
        worst = max(worst, abs(r_res - r_td))
    return worst


def check_passivity(match, points):
    worst = 0.0
    for p in [match.params] + points:
        model = build_lindblad_rotating(p)
        ss = steady_state(model)
        basis = diagonalize_system(p)
        w41 = p.omega_d + basis.transition(4, 1)
        for off in np.linspace(-150.0, 150.0, 31):
            r = linear_response_reflection(model, p, w41 + mhz(off), ss=ss).r
            worst = max(worst, abs(r) - 1.0)
    return worst


def check_flux(match):
    p = match.params
    basis = diagonalize_system(p)
    wp = p.omega_d + basis.transition(4, 1)
    grid = np.array([p.omega_d + basis.transition(4, 2)])
    spec = output_spectrum(p, wp, np.sqrt(1e5), grid)
    return abs(spec.flux_balance() - 1.0)


def run_suite(seed=0):
    """Run every check; returns the list of :class:`Check` results."""
    rng = np.random.default_rng(seed)
    results = []

    def timed(name, fn, bound, key=None):
        t0 = time.perf_counter()
        value = fn()
        dt = time.perf_counter() - t0
        if isinstance(value, dict):
            for k, v in value.items():
                results.append(Check(f"{name} [{k}]", v <= bound[k], v, bound[k], dt))
        elif isinstance(value, tuple):
            for k, v, b in zip(key, value, bound):
                results.append(Check(f"{name} [{k}]", v <= b, v, b, dt))
        else:
            results.append(Check(name, value <= bound, value, bound, dt))

    match, points = _reference_points()
    rot = [build_lindblad_rotating(p) for p in [match.params] + points]
    wp = match.params.omega_d + diagonalize_system(match.params).transition(4, 1)
    sec = [build_lindblad_secular(match.params, wp, np.sqrt(f)) for f in (1e5, 1e6, 1e7)]

    timed("generator trace annihilation", lambda: check_trace_annihilation(rot + sec, rng),
          TRACE_TOL)
    timed("generator Hermiticity preservation",
          lambda: check_hermiticity_preservation(rot + sec, rng), HERM_TOL)
    timed("steady state", lambda: check_steady_states(rot + sec),
          {"trace": 1e-12, "herm": HERM_TOL, "neg": POSITIVITY_TOL, "residual": 1e-9})
    timed("decay table", lambda: check_decay_tables([match.params] + points),
          (0.0, SUM_RULE_TOL, SUM_RULE_TOL, SUM_RULE_TOL),
          key=("negative", "sum rule a", "sum rule sigma", "sum rule a + a^+ (low levels)"))
    timed("regime classification (misclassified points)", check_regimes, 0)
    timed("truncation n_max -> n_max + 2 (relative shift)",
          lambda: max(check_truncation(p) for p in [match.params] + points), 1e-3)
    timed("passivity |r| - 1", lambda: check_passivity(match, points), 1e-6)
    timed("resolvent vs time domain |dr|", lambda: check_oracle(match), ORACLE_TOL)
    timed("photon flux balance", lambda: check_flux(match), FLUX_TOL)
    return results
