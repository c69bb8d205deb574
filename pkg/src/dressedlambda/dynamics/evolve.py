"""Fixed-step RK4 integration of the master equation, and the time-domain
reflection oracle built on it."""
from dataclasses import dataclass

import numpy as np

from ..errors import StepTooLarge
from ..linalg import dagger
from ..model import build_bare_operators
from .lindblad import apply_generator, build_lindblad_rotating, steady_state
from .response import Method, ReflectionResult

POINTS_PER_PERIOD = 20
TRACE_TOL = 1e-8


@dataclass(frozen=True)
class Probe:
    """Time-dependent term amp * e^{-i detuning t} * op + h.c."""

    op: np.ndarray
    amp: complex
    detuning: float

    def hamiltonian(self, t):
        x = self.amp * np.exp(-1j * self.detuning * t) * self.op
        return x + dagger(x)


@dataclass(frozen=True)
class Trajectory:
    times: np.ndarray
    expectations: np.ndarray  # shape (len(times), len(observables))
    final: np.ndarray
    trace_drift: float


def fastest_frequency(model, probe=None):
    w = np.linalg.eigvalsh(model.h_eff)
    rate = sum(np.linalg.norm(c, 2) ** 2 for c in model.collapse_ops)
    f = np.ptp(w) + rate
    if probe is not None:
        f += abs(probe.detuning)
    return f


def time_evolve(model, rho0, t_end, dt, probe=None, observables=(), store_every=1):
    """Integrate d rho/dt = L rho - i[probe(t), rho] with classical RK4.

    ``dt`` must give at least 20 steps per period of the fastest frequency in
    the problem. ``observables`` are sampled every ``store_every`` steps.
    """
    fmax = fastest_frequency(model, probe)
    if fmax > 0 and dt > 2 * np.pi / (POINTS_PER_PERIOD * fmax):
        raise StepTooLarge(f"dt={dt:.3e} s resolves fewer than {POINTS_PER_PERIOD} points per period")
    h0, c_ops = model.h_eff, model.collapse_ops

    def rhs(t, r):
        h = h0 if probe is None else h0 + probe.hamiltonian(t)
        return apply_generator(h, c_ops, r)

    n = int(round(t_end / dt))
    rho = np.array(rho0, dtype=complex)
    tr0 = np.trace(rho).real
    times, values = [], []
    t = 0.0
    for k in range(n + 1):
        if k % store_every == 0 and observables:
            times.append(t)
            values.append([np.trace(o @ rho) for o in observables])
        if k == n:
            break
        k1 = rhs(t, rho)
        k2 = rhs(t + dt / 2, rho + dt / 2 * k1)
        k3 = rhs(t + dt / 2, rho + dt / 2 * k2)
        k4 = rhs(t + dt, rho + dt * k3)
        rho = rho + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        t = (k + 1) * dt
    drift = abs(np.trace(rho).real - tr0)
    if drift > TRACE_TOL:
        raise StepTooLarge(f"trace drifted by {drift:.2e} over the run")
    return Trajectory(np.array(times), np.array(values), rho, drift)


def time_domain_reflection(params, probe_freq, probe_amp=None, settle=8.0, periods=20):
    """Reflection from direct integration with the probe switched on at t = 0.

    Starts from the probe-free steady state, integrates ``settle / gamma``
    seconds and projects <a(t)> onto e^{-i dp t} over the final ``periods``
    whole probe periods. The step is chosen so one period is an integer
    number of steps. Only practical for scaled-down carrier frequencies.
    """
    ops = build_bare_operators(params)
    model = build_lindblad_rotating(params, ops)
    ss = steady_state(model)
    sk = np.sqrt(params.kappa)
    if probe_amp is None:
        probe_amp = 1e-3 * sk
    dp = probe_freq - params.omega_d
    probe = Probe(sk * dagger(ops.a), probe_amp, dp)

    period = 2 * np.pi / abs(dp)
    dt_max = 2 * np.pi / (POINTS_PER_PERIOD * fastest_frequency(model, probe))
    m = int(np.ceil(period / dt_max))
    dt = period / m
    n_periods = max(int(settle / params.gamma / period), periods)
    traj = time_evolve(model, ss.rho, n_periods * period, dt, probe, observables=[ops.a])
    t = traj.times[-(periods * m + 1):]
    a_t = traj.expectations[-(periods * m + 1):, 0]
    amp = np.trapezoid(a_t * np.exp(1j * dp * t), t) / (t[-1] - t[0])
    r = 1.0 - 1j * sk * amp / probe_amp
    return ReflectionResult(probe_freq=probe_freq, r=complex(r), method=Method.TIME_DOMAIN)
