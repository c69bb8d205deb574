"""Weak-probe reflection from the Liouvillian resolvent.

With a probe sqrt(kappa) (F e^{-i dp t} a^+ + h.c.) added to the drive-frame
Hamiltonian, the first-order density-matrix sideband obeys

    (L + i dp) rho_+ = i F [sqrt(kappa) a^+, rho_ss]

and the reflected amplitude follows from b_out = b_in - i sqrt(kappa) a:

    r = 1 - i sqrt(kappa) Tr(a rho_+) / F.
"""
import enum
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import ResolventSingular, Singular
from ..linalg import dagger, solve_linear
from ..model import build_bare_operators
from .lindblad import build_lindblad_rotating, steady_state, unvec, vec


class Method(enum.Enum):
    RESOLVENT = "resolvent"
    TIME_DOMAIN = "time_domain"


@dataclass(frozen=True)
class ReflectionResult:
    probe_freq: float
    r: complex
    method: Method = Method.RESOLVENT


def first_order_sideband(L, scale, rho0, coupling, detuning, amp=1.0):
    """rho_+ for a perturbation amp * e^{-i detuning t} * coupling + h.c."""
    d = rho0.shape[0]
    src = 1j * amp * (coupling @ rho0 - rho0 @ coupling)
    m = L / scale + (1j * detuning / scale) * np.eye(d * d)
    try:
        x = solve_linear(m, vec(src) / scale)
    except Singular as exc:
        raise ResolventSingular(f"resolvent singular at detuning {detuning:.6g} rad/s") from exc
    return unvec(x, d)


def linear_response(L, scale, rho0, coupling, readout, detuning, amp=1.0):
    """Tr(readout rho_+), the e^{-i detuning t} component of <readout>."""
    return np.trace(readout @ first_order_sideband(L, scale, rho0, coupling, detuning, amp))


def linear_response_reflection(model, params, probe_freq, probe_amp=1.0, ss=None):
    """Reflection coefficient at lab probe frequency ``probe_freq`` (rad/s)."""
    ops = model._cache.get("ops") or build_bare_operators(params)
    ss = ss or steady_state(model)
    sk = np.sqrt(params.kappa)
    dp = probe_freq - params.omega_d
    mean_a = linear_response(model.liouvillian(), model.scale, ss.rho, sk * dagger(ops.a),
                             ops.a, dp, probe_amp)
    r = 1.0 - 1j * sk * mean_a / probe_amp
    return ReflectionResult(probe_freq=probe_freq, r=complex(r))


def reflection_row(params, probe_freqs):
    """|r| along a probe-frequency grid at fixed drive (one steady state, many solves)."""
    model = build_lindblad_rotating(params)
    ss = steady_state(model)
    return np.array([linear_response_reflection(model, params, w, ss=ss).r for w in probe_freqs])


def _row_task(args):
    params, rabi, probe_freqs = args
    return reflection_row(params.with_rabi(rabi), probe_freqs)


def reflection_map(params, rabi_grid, probe_freqs, workers=1):
    """Complex r on a (Rabi, probe) grid. Rows are independent tasks merged in order."""
    tasks = [(params, float(r), np.asarray(probe_freqs, dtype=float)) for r in rabi_grid]
    workers = workers or os.cpu_count() or 1
    if workers <= 1 or len(tasks) <= 1:
        rows = [_row_task(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row_task, tasks))
    return np.array(rows)


def probe_induced_populations(model, params, probe_freq, probe_amp, ss=None):
    """Time-averaged density matrix to second order in a weak probe.

    Solves L rho_2 = i[V_+, rho_-] + i[V_-, rho_+] for the static part of the
    second-order correction with Tr rho_2 = 0, where V_+ = sqrt(kappa) F a^+.
    Used to compare the drive-frame model with the secular model.
    """
    ops = model._cache.get("ops") or build_bare_operators(params)
    ss = ss or steady_state(model)
    d = model.dim
    dp = probe_freq - params.omega_d
    L, scale = model.liouvillian(), model.scale
    vp = np.sqrt(params.kappa) * probe_amp * dagger(ops.a)
    vm = dagger(vp)
    rho_p = first_order_sideband(L, scale, ss.rho, dagger(ops.a) * np.sqrt(params.kappa),
                                 dp, probe_amp)
    rho_m = dagger(rho_p)
    src = 1j * (vp @ rho_m - rho_m @ vp) + 1j * (vm @ rho_p - rho_p @ vm)
    A = (L / scale).copy()
    b = vec(src) / scale
    A[0, :] = vec(np.eye(d))
    b = b.copy()
    b[0] = 0.0
    rho2 = unvec(solve_linear(A, b), d)
    return ss.rho + 0.5 * (rho2 + dagger(rho2))
