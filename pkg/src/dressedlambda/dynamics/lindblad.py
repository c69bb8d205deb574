"""Lindblad generators in two frames, and their steady states.

Density matrices are vectorized row-major, ``vec(X) = X.reshape(-1)``, so
``vec(A X B) = kron(A, B.T) @ vec(X)``.

Two constructions are provided:

* ``RotatingAtDrive`` -- the exact model in the frame of the drive, with the
  collective channels sqrt(kappa) a and sqrt(gamma) sigma.
* ``DressedSecular`` -- the lowest dressed levels only, each photon manifold
  moved to a frame rotating at a multiple of the probe detuning so that a
  finite-power probe becomes static, and one collapse operator per dressed
  transition.
"""
import enum
from dataclasses import dataclass, field

import numpy as np

from ..dressed import DressedBasis, diagonalize_system, dressed_matrix_elements
from ..errors import DegenerateSteadyState, ManifoldOverlap, Singular
from ..linalg import dagger, solve_linear
from ..model import SystemParams, build_bare_operators, build_rotating_hamiltonian

NULL_RTOL = 1e-9


class Frame(enum.Enum):
    ROTATING_AT_DRIVE = "rotating"
    DRESSED_SECULAR = "secular"


@dataclass(frozen=True)
class Channel:
    """Bookkeeping for one collapse operator.

    ``frame_offset`` is the frequency (relative to the drive) by which the
    emitted field is shifted when mapping frame frequencies to the lab:
    lab frequency = omega_d + frame_offset + frame frequency.
    """

    waveguide: int
    transition: tuple
    frame_offset: float = 0.0
    lab_frequency: float = float("nan")


@dataclass(frozen=True)
class LindbladModel:
    h_eff: np.ndarray
    collapse_ops: list
    frame: Frame
    channels: list
    params: SystemParams = None
    basis: DressedBasis = None
    manifold: np.ndarray = None
    probe_detuning: float = 0.0
    probe_amp: complex = 0.0
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dim(self):
        return self.h_eff.shape[0]

    @property
    def scale(self):
        """Frequency scale used to normalize the generator before solves."""
        if "scale" not in self._cache:
            self._cache["scale"] = max(np.max(np.abs(self.liouvillian())), 1e-300)
        return self._cache["scale"]

    def liouvillian(self):
        if "L" not in self._cache:
            self._cache["L"] = liouvillian(self.h_eff, self.collapse_ops)
        return self._cache["L"]

    def apply(self, rho):
        return apply_generator(self.h_eff, self.collapse_ops, rho)

    def output_operators(self, waveguide=1):
        """Sum of channel operators per frame offset: ``{offset: S}``."""
        groups = {}
        for c, ch in zip(self.collapse_ops, self.channels):
            if ch.waveguide != waveguide:
                continue
            groups[ch.frame_offset] = groups.get(ch.frame_offset, 0) + c
        return groups


def liouvillian(h, c_ops):
    d = h.shape[0]
    eye = np.eye(d)
    L = -1j * (np.kron(h, eye) - np.kron(eye, h.T))
    for c in c_ops:
        cdc = dagger(c) @ c
        L += np.kron(c, c.conj()) - 0.5 * np.kron(cdc, eye) - 0.5 * np.kron(eye, cdc.T)
    return L


def apply_generator(h, c_ops, rho):
    out = -1j * (h @ rho - rho @ h)
    for c in c_ops:
        cd = dagger(c)
        cdc = cd @ c
        out += c @ rho @ cd - 0.5 * (cdc @ rho + rho @ cdc)
    return out


def vec(x):
    return np.asarray(x).reshape(-1)


def unvec(v, d):
    return np.asarray(v).reshape(d, d)


def build_lindblad_rotating(params, ops=None):
    """Exact generator in the drive frame: H_sys plus D[sqrt(kappa) a] + D[sqrt(gamma) sigma]."""
    ops = ops or build_bare_operators(params)
    h = build_rotating_hamiltonian(params, ops)
    c_ops = [np.sqrt(params.kappa) * ops.a, np.sqrt(params.gamma) * ops.sigma]
    channels = [Channel(1, ("a",)), Channel(2, ("sigma",))]
    model = LindbladModel(h_eff=h, collapse_ops=c_ops, frame=Frame.ROTATING_AT_DRIVE,
                          channels=channels, params=params)
    model._cache["ops"] = ops
    return model


def photon_manifolds(basis, ops, n_levels):
    """Photon-number manifold of each kept dressed level (rounded <a^+ a>)."""
    v = basis.vectors[:, :n_levels]
    num = np.real(np.einsum("ij,ik,kj->j", v.conj(), dagger(ops.a) @ ops.a, v))
    return np.rint(num).astype(int)


def build_lindblad_secular(params, probe_freq, probe_amp, n_levels=4, ops=None):
    """Dressed-level model with a static probe in a multiply-rotating frame.

    ``probe_freq`` is the lab-frame probe frequency (rad/s). Manifold n is
    shifted by n times the probe detuning; the probe couples manifold n to
    n + 1 through sqrt(kappa) F <i~|a^+|j~>. Every downhill dressed transition
    becomes its own collapse operator in each waveguide (secular approximation).
    """
    ops = ops or build_bare_operators(params)
    if n_levels < 4:
        raise ValueError("n_levels must be at least 4")
    basis = diagonalize_system(params, ops)
    K = n_levels
    man = photon_manifolds(basis, ops, K)
    e = basis.energies[:K] - basis.energies[0]
    _check_manifolds(e, man)

    dp = probe_freq - params.omega_d
    ad, sd = dressed_matrix_elements(basis, ops)
    ad, sd = ad[:K, :K], sd[:K, :K]

    h = np.diag(e - man * dp).astype(complex)
    coupling = np.zeros((K, K), dtype=complex)
    for i in range(K):
        for j in range(K):
            if man[i] == man[j] + 1:
                coupling[i, j] = np.sqrt(params.kappa) * probe_amp * ad[i, j]
    h = h + coupling + dagger(coupling)

    c_ops, channels = [], []
    for i in range(K):
        for j in range(i):
            offset = (man[i] - man[j]) * dp
            lab = params.omega_d + basis.energies[i] - basis.energies[j]
            for wg, rate, elem in ((1, params.kappa, ad), (2, params.gamma, sd)):
                amp = np.sqrt(rate) * np.conj(elem[i, j])  # sqrt(rate) <j~|x|i~>
                if abs(amp) == 0.0:
                    continue
                op = np.zeros((K, K), dtype=complex)
                op[j, i] = amp
                c_ops.append(op)
                channels.append(Channel(wg, (i + 1, j + 1), offset, lab))

    model = LindbladModel(h_eff=h, collapse_ops=c_ops, frame=Frame.DRESSED_SECULAR,
                          channels=channels, params=params, basis=basis, manifold=man,
                          probe_detuning=dp, probe_amp=probe_amp)
    model._cache["ops"] = ops
    return model


def _check_manifolds(e, man):
    levels = sorted(set(man))
    for lo, hi in zip(levels, levels[1:]):
        spread = max(np.ptp(e[man == lo]), np.ptp(e[man == hi]))
        gap = np.min(e[man == hi]) - np.max(e[man == lo])
        if gap <= spread:
            raise ManifoldOverlap(
                f"intra-manifold spread {spread:.4g} exceeds inter-manifold gap {gap:.4g}"
            )


@dataclass(frozen=True)
class SteadyState:
    rho: np.ndarray
    residual: float

    def expect(self, op):
        return np.trace(op @ self.rho)


def null_space_dimension(model, rtol=NULL_RTOL):
    s = np.linalg.svd(model.liouvillian() / model.scale, compute_uv=False)
    return int(np.sum(s <= rtol * s[0]))


def steady_state(model, check_unique=True):
    """Solve L(rho) = 0 with the first row replaced by the trace-one constraint."""
    d = model.dim
    if check_unique:
        k = null_space_dimension(model)
        if k != 1:
            raise DegenerateSteadyState(f"generator null space has dimension {k}")
    A = model.liouvillian() / model.scale
    A = A.copy()
    A[0, :] = vec(np.eye(d))
    b = np.zeros(d * d, dtype=complex)
    b[0] = 1.0
    try:
        x = solve_linear(A, b)
    except Singular as exc:
        raise DegenerateSteadyState(str(exc)) from exc
    rho = unvec(x, d)
    rho = 0.5 * (rho + dagger(rho))
    rho /= np.trace(rho).real
    residual = float(np.max(np.abs(model.apply(rho))))
    return SteadyState(rho=rho, residual=residual)


def dressed_populations(model, rho):
    """Populations of the dressed levels (energy order)."""
    if model.frame is Frame.DRESSED_SECULAR:
        return np.real(np.diag(rho)).copy()
    basis = model.basis or diagonalize_system(model.params, model._cache.get("ops"))
    v = basis.vectors
    return np.real(np.diag(dagger(v) @ rho @ v)).copy()
