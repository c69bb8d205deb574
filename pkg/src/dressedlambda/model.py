"""Physical parameters, bare operators and the rotating-frame Hamiltonian.

All frequencies and rates are angular (rad/s) internally. User-facing values
in GHz/MHz are converted once with :func:`ghz` / :func:`mhz`. The joint basis
is |m>_q (x) |n>_r with the qubit index m in {0, 1} outer and the photon
number n in {0..n_max} inner, so the state |m, n> sits at index
``m * (n_max + 1) + n``.
"""
import warnings
from dataclasses import dataclass, replace

import numpy as np

from .errors import InvalidParameters
from .linalg import dagger, kron

TWO_PI = 2.0 * np.pi


def ghz(f):
    return TWO_PI * 1e9 * f


def mhz(f):
    return TWO_PI * 1e6 * f


def to_ghz(w):
    return w / (TWO_PI * 1e9)


def to_mhz(w):
    return w / (TWO_PI * 1e6)


@dataclass(frozen=True)
class SystemParams:
    """Qubit-resonator-waveguide parameters (angular units).

    ``drive_amp`` is the complex drive amplitude E in sqrt(photons/s); the
    Rabi frequency is ``sqrt(gamma) * |E|``.
    """

    omega_q: float
    omega_r: float
    g: float
    kappa: float
    gamma: float
    omega_d: float
    drive_amp: complex = 0.0
    n_max: int = 4

    def __post_init__(self):
        for name in ("omega_q", "omega_r", "kappa", "omega_d"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise InvalidParameters(f"{name} must be positive and finite, got {value!r}")
        # g = 0 and gamma = 0 are kept as decoupled / closed-qubit limits
        for name in ("g", "gamma"):
            value = getattr(self, name)
            if not np.isfinite(value) or value < 0:
                raise InvalidParameters(f"{name} must be non-negative and finite, got {value!r}")
        if not np.isfinite(complex(self.drive_amp)):
            raise InvalidParameters("drive_amp must be finite")
        if int(self.n_max) != self.n_max or self.n_max < 2:
            raise InvalidParameters(f"n_max must be an integer >= 2, got {self.n_max!r}")
        detuning = abs(self.omega_r - self.omega_q)
        if detuning <= 2 * self.g:
            raise InvalidParameters(
                f"|omega_r - omega_q| = {detuning:.4g} rad/s is not dispersive (<= 2g)"
            )
        if detuning < 5 * self.g:
            warnings.warn("qubit-resonator detuning below 5g; dispersive picture is marginal",
                          stacklevel=3)

    @property
    def rabi(self):
        return np.sqrt(self.gamma) * abs(self.drive_amp)

    @property
    def dim(self):
        return 2 * (self.n_max + 1)

    @property
    def chi(self):
        return self.g ** 2 / (self.omega_r - self.omega_q)

    def with_rabi(self, rabi):
        """Copy with a real, non-negative drive amplitude giving Rabi frequency ``rabi``."""
        if rabi != 0 and self.gamma == 0:
            raise InvalidParameters("a Rabi frequency needs gamma > 0")
        if rabi == 0:
            return replace(self, drive_amp=0.0)
        return replace(self, drive_amp=rabi / np.sqrt(self.gamma))


def reference_params(omega_d_ghz=4.87, rabi_mhz=0.0, n_max=4):
    """Parameter set quoted in the reference setup (5 GHz qubit, 10 GHz resonator)."""
    p = SystemParams(
        omega_q=ghz(5.0),
        omega_r=ghz(10.0),
        g=mhz(500.0),
        kappa=mhz(20.0),
        gamma=mhz(1.0),
        omega_d=ghz(omega_d_ghz),
        n_max=n_max,
    )
    return p.with_rabi(mhz(rabi_mhz))


def scaled_params(params, factor=50.0):
    """Divide every frequency (not the rates, not the drive) by ``factor``.

    Used for the time-domain oracle, which cannot resolve 10 GHz carriers.
    """
    return replace(
        params,
        omega_q=params.omega_q / factor,
        omega_r=params.omega_r / factor,
        g=params.g / factor,
        omega_d=params.omega_d / factor,
    )


@dataclass(frozen=True)
class BareOperators:
    a: np.ndarray
    sigma: np.ndarray
    dim: int


def bare_operators(n_max):
    """Resonator and qubit lowering operators on the truncated joint space."""
    if n_max < 1:
        raise InvalidParameters("n_max must be >= 1")
    n = n_max + 1
    a_r = np.diag(np.sqrt(np.arange(1, n, dtype=float)), 1)
    s_q = np.array([[0.0, 1.0], [0.0, 0.0]])
    a = kron(np.eye(2), a_r)
    sigma = kron(s_q, np.eye(n))
    return BareOperators(a=a, sigma=sigma, dim=2 * n)


def build_bare_operators(params):
    return bare_operators(params.n_max)


def basis_index(m, n, n_max):
    return m * (n_max + 1) + n


def basis_labels(n_max):
    return [(m, n) for m in (0, 1) for n in range(n_max + 1)]


def build_rotating_hamiltonian(params, ops=None):
    """Static system Hamiltonian in the frame rotating at the drive frequency.

    H = (w_q - w_d) s^+ s + (w_r - w_d) a^+ a + g (s^+ a + a^+ s)
        + sqrt(gamma) (E s^+ + E^* s)
    """
    ops = ops or build_bare_operators(params)
    a, s = ops.a, ops.sigma
    ad, sd = dagger(a), dagger(s)
    e = complex(params.drive_amp)
    h = (
        (params.omega_q - params.omega_d) * (sd @ s)
        + (params.omega_r - params.omega_d) * (ad @ a)
        + params.g * (sd @ a + ad @ s)
        + np.sqrt(params.gamma) * (e * sd + np.conj(e) * s)
    )
    return h
