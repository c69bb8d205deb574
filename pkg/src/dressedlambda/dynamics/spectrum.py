"""Output power spectrum and down-conversion efficiency (secular model).

The spectrum is

    S(w) = Re int_0^inf dtau e^{-i (w - w_d) tau} <b_out^+(t + tau) b_out(t)> / pi

evaluated with the quantum regression theorem. In the secular frame every
emission channel carries a frame offset; channel groups with the same offset
are correlated together and shifted to the lab by ``w_d + offset``. Cross
terms between groups oscillate in the stationary time t and average out.
The coherent (elastic) part is split off analytically and never binned.
"""
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from ..errors import WindowOverlap
from ..linalg import dagger
from .lindblad import build_lindblad_secular, steady_state, vec

TAU_MAX_GAMMA = 20.0   # tau_max = 20 / gamma
DTAU_KAPPA = 0.02      # dtau = 0.02 / kappa
WINDOW_KAPPA = 10.0
EXCLUSION_KAPPA = 0.5


def tau_grid(params, tau_max=None, dtau=None):
    tau_max = tau_max or TAU_MAX_GAMMA / params.gamma
    dtau = dtau or DTAU_KAPPA / params.kappa
    return np.arange(int(np.ceil(tau_max / dtau)) + 1) * dtau


def two_time_correlation(model, ss, op_a, op_b, taus, subtract_mean=False):
    """C(tau) = Tr[A exp(L tau)(B rho_ss)] on a uniform grid starting at 0.

    ``op_a`` / ``op_b`` may be lists of equal length; all seeds are then
    propagated together and C has shape (len(taus), n_pairs).
    With ``subtract_mean`` B is replaced by B - <B>, giving the fluctuation
    correlation <A(tau) dB(0)> = <A(tau) B(0)> - <A><B>.
    """
    single = not isinstance(op_a, (list, tuple))
    As = [op_a] if single else list(op_a)
    Bs = [op_b] if single else list(op_b)
    taus = np.asarray(taus, dtype=float)
    if taus[0] != 0.0 or (len(taus) > 2 and not np.allclose(np.diff(taus), taus[1] - taus[0])):
        raise ValueError("tau grid must be uniform and start at 0")
    rho = ss.rho
    seeds = []
    for B in Bs:
        x = B @ rho
        if subtract_mean:
            x = x - np.trace(x) * rho
        seeds.append(vec(x))
    X = np.array(seeds).T
    R = np.array([vec(A.T) for A in As])
    out = np.empty((len(taus), len(As)), dtype=complex)
    out[0] = np.einsum("kj,jk->k", R, X)
    if len(taus) > 1:
        prop = scipy.linalg.expm(model.liouvillian() * (taus[1] - taus[0]))
        for k in range(1, len(taus)):
            X = prop @ X
            out[k] = np.einsum("kj,jk->k", R, X)
    return out[:, 0] if single else out


def _trapezoid_weights(taus):
    w = np.full(len(taus), taus[1] - taus[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def fourier_density(corr, taus, nus, chunk=256):
    """Re sum_k w_k e^{-i nu tau_k} C(tau_k) / pi, nus in frame units (rad/s)."""
    wc = _trapezoid_weights(taus) * corr
    out = np.empty(len(nus))
    for s in range(0, len(nus), chunk):
        ph = np.exp(-1j * np.outer(nus[s:s + chunk], taus))
        out[s:s + chunk] = np.real(ph @ wc) / np.pi
    return out


@dataclass(frozen=True)
class Line:
    transition: tuple
    center: float       # lab frequency, rad/s
    frame_offset: float
    flux: float         # incoherent photons/s in this line
    correlation: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class Spectrum:
    freqs: np.ndarray
    s_inc: np.ndarray
    coherent_flux: float
    probe_freq: float
    input_flux: float
    incoherent_flux: float        # probe-derived (cross-manifold) waveguide-1 emission
    waveguide2_flux: float        # probe-derived waveguide-2 emission
    total_output_flux: float      # all waveguide-1 output, coherent + incoherent
    populations: np.ndarray
    omega_d: float
    lines: list = field(repr=False)
    taus: np.ndarray = field(repr=False)

    @property
    def reflection(self):
        return np.sqrt(self.coherent_flux / self.input_flux) if self.input_flux else np.nan

    def flux_balance(self):
        """(coherent + incoherent + waveguide-2) / input, for probe-derived photons."""
        return (self.coherent_flux + self.incoherent_flux + self.waveguide2_flux) / self.input_flux

    def line_density(self, freqs, select=None):
        """Sum of per-line incoherent densities on a lab grid (rad/s)."""
        freqs = np.asarray(freqs, dtype=float)
        total = np.zeros(len(freqs))
        for ln in self.lines:
            if select is None or select(ln):
                total += fourier_density(ln.correlation, self.taus,
                                         freqs - self.omega_d - ln.frame_offset)
        return total

    def peak(self):
        k = int(np.argmax(self.s_inc))
        return self.freqs[k], self.s_inc[k]


def output_spectrum(params, probe_freq, probe_amp, freq_grid, n_levels=4,
                    tau_max=None, dtau=None, model=None):
    """Incoherent output spectrum of waveguide 1 on a lab frequency grid (rad/s).

    ``params`` must carry the drive; ``probe_amp`` is F in sqrt(photons/s).
    """
    model = model or build_lindblad_secular(params, probe_freq, probe_amp, n_levels)
    ss = steady_state(model)
    rho = ss.rho
    taus = tau_grid(params, tau_max, dtau)
    freq_grid = np.asarray(freq_grid, dtype=float)
    dp = model.probe_detuning
    one_step = lambda ch: np.isclose(ch.frame_offset, dp) and dp != 0.0

    groups = model.output_operators(1)
    offsets = sorted(groups)
    ops_g = [groups[o] for o in offsets]
    k1 = [(c, ch) for c, ch in zip(model.collapse_ops, model.channels) if ch.waveguide == 1]
    A = [dagger(S) for S in ops_g] + [dagger(c) for c, _ in k1]
    B = ops_g + [c for c, _ in k1]
    C = two_time_correlation(model, ss, A, B, taus, subtract_mean=True)

    s_inc = np.zeros(len(freq_grid))
    for g, off in enumerate(offsets):
        s_inc += fourier_density(C[:, g], taus, freq_grid - params.omega_d - off)

    lines = []
    for n, (c, ch) in enumerate(k1):
        corr = C[:, len(offsets) + n]
        lines.append(Line(ch.transition, ch.lab_frequency, ch.frame_offset,
                          float(np.real(corr[0])), corr))

    probe_group = [o for o in offsets if np.isclose(o, dp) and dp != 0.0]
    mean_s = np.trace(groups[probe_group[0]] @ rho) if probe_group else 0.0
    coherent = abs(probe_amp - 1j * mean_s) ** 2
    inc_probe = sum(np.real(C[0, g]) for g, o in enumerate(offsets) if o in probe_group)
    inc_all = float(np.sum(np.real(C[0, :len(offsets)])))
    other_coherent = sum(abs(np.trace(groups[o] @ rho)) ** 2 for o in offsets if o not in probe_group)
    wg2 = sum(np.real(np.trace(dagger(c) @ c @ rho))
              for c, ch in zip(model.collapse_ops, model.channels)
              if ch.waveguide == 2 and one_step(ch))

    spec = Spectrum(
        freqs=freq_grid, s_inc=s_inc, coherent_flux=float(coherent), probe_freq=probe_freq,
        input_flux=float(abs(probe_amp) ** 2), incoherent_flux=float(inc_probe),
        waveguide2_flux=float(wg2), total_output_flux=float(coherent + inc_all + other_coherent),
        populations=np.real(np.diag(rho)).copy(), omega_d=params.omega_d, lines=lines,
        taus=taus,
    )
    return spec


@dataclass(frozen=True)
class EfficiencyPoint:
    input_flux: float
    eta: float
    spectrum: Spectrum = field(repr=False)

    def __iter__(self):
        yield self.input_flux
        yield self.eta


def efficiency_window(params, probe_freq=None, window=None, exclusion=None):
    """(probe_freq, center, half_width, exclusion) for the down-converted line.

    By default the probe sits on the |1~> -> |4~> resonance and the window is
    centred on the |4~> -> |2~> emission line.
    """
    from ..dressed import diagonalize_system

    basis = diagonalize_system(params)
    if probe_freq is None:
        probe_freq = params.omega_d + basis.transition(4, 1)
    center = params.omega_d + basis.transition(4, 2)
    window = WINDOW_KAPPA * params.kappa if window is None else window
    exclusion = EXCLUSION_KAPPA * params.kappa if exclusion is None else exclusion
    if abs(center - probe_freq) <= exclusion:
        raise WindowOverlap("down-converted line lies inside the elastic exclusion zone")
    return probe_freq, center, window, exclusion


def down_conversion_efficiency(params, probe_fluxes, probe_freq=None, window=None,
                               exclusion=None, n_points=2001, n_levels=4):
    """Down-converted flux over input flux for each probe power.

    eta = (1/|F|^2) * integral over center +- window of the incoherent spectrum,
    with every emission line centred within ``exclusion`` of the probe
    frequency removed (the elastic line is never part of the incoherent
    spectrum to begin with). ``params`` should sit at the matching point.
    """
    probe_freq, center, window, exclusion = efficiency_window(params, probe_freq, window,
                                                              exclusion)
    grid = np.linspace(center - window, center + window, n_points)
    elastic = lambda ln: abs(ln.center - probe_freq) <= exclusion
    out = []
    for flux in probe_fluxes:
        spec = output_spectrum(params, probe_freq, np.sqrt(flux), grid, n_levels)
        density = spec.s_inc - spec.line_density(grid, elastic)
        eta = float(np.trapezoid(density, grid) / flux)
        out.append(EfficiencyPoint(float(flux), eta, spec))
    return out
