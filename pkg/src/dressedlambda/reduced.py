"""Three-level Lambda system |g>, |m>, |e> probed on the g-e transition.

A deliberately small model used as a cross-check of the full simulator. It
goes through the same generator, steady-state and resolvent code.
"""
from dataclasses import dataclass

import numpy as np

from .dynamics.lindblad import Channel, Frame, LindbladModel, steady_state
from .dynamics.response import linear_response
from .errors import InvalidParameters

G, M, E = 0, 1, 2


def _ket_bra(i, j):
    op = np.zeros((3, 3), dtype=complex)
    op[i, j] = 1.0
    return op


@dataclass(frozen=True)
class LambdaParams:
    gamma_eg: float
    gamma_em: float
    gamma_mg: float
    probe_detuning: float = 0.0
    probe_amp: complex = 0.0

    def __post_init__(self):
        if min(self.gamma_eg, self.gamma_em, self.gamma_mg) < 0:
            raise InvalidParameters("Lambda rates must be non-negative")
        if self.gamma_mg <= 0:
            raise InvalidParameters("gamma_mg must be positive so that |g> is the unique steady state")

    @property
    def readout(self):
        """Waveguide operator sqrt(Gamma_eg) |g><e| seen by the probe."""
        return np.sqrt(self.gamma_eg) * _ket_bra(G, E)


def lambda_model(p, probe_amp=0.0, carrier=None):
    """Generator in the frame rotating with the probe (static, RWA).

    With ``carrier`` set, |e> instead sits at that frequency in a frame where
    the probe still oscillates; this keeps the weak-probe resolvent away from
    the steady-state zero mode.
    """
    if carrier is None:
        h = -p.probe_detuning * _ket_bra(E, E)
    else:
        h = carrier * _ket_bra(E, E)
    drive = probe_amp * np.sqrt(p.gamma_eg) * _ket_bra(E, G)
    h = h + drive + drive.conj().T
    c_ops = [np.sqrt(p.gamma_eg) * _ket_bra(G, E),
             np.sqrt(p.gamma_em) * _ket_bra(M, E),
             np.sqrt(p.gamma_mg) * _ket_bra(G, M)]
    channels = [Channel(1, ("e", "g")), Channel(1, ("e", "m")), Channel(2, ("m", "g"))]
    return LindbladModel(h_eff=h, collapse_ops=c_ops, frame=Frame.DRESSED_SECULAR,
                         channels=channels)


def lambda_reflection(p):
    """Weak-probe reflection coefficient of the Lambda system."""
    carrier = 100.0 * (p.gamma_eg + p.gamma_em + p.gamma_mg)
    model = lambda_model(p, carrier=carrier)
    ss = steady_state(model)
    S = p.readout
    mean_s = linear_response(model.liouvillian(), model.scale, ss.rho, S.conj().T, S,
                             carrier + p.probe_detuning)
    return complex(1.0 - 1j * mean_s)


def lambda_efficiency(p):
    """Raman (e -> m) flux per input photon at probe amplitude ``p.probe_amp``."""
    flux = abs(p.probe_amp) ** 2
    if flux == 0:
        raise InvalidParameters("lambda_efficiency needs a non-zero probe amplitude")
    model = lambda_model(p, p.probe_amp)
    ss = steady_state(model)
    pe = np.real(ss.rho[E, E])
    return float(p.gamma_em * pe / flux)
