"""Dressed states of the driven qubit-resonator system and their decay rates.

Dressed indices follow energy order in the rotating frame; index 0 here is the
the conventional level 1. Accessors on :class:`DecayTable` take 1-based indices so
that ``table.kappa_at(4, 1)`` reads like the rate for |4~> -> |1~>.
"""
import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import AmbiguousTracking, DegenerateDetuning
from .linalg import dagger, hermitian_eig
from .model import basis_labels, build_bare_operators, build_rotating_hamiltonian, mhz

LABEL_THRESHOLD = 0.5
TRACK_THRESHOLD = 0.6
BOUNDARY_MARGIN = mhz(1.0)


@dataclass(frozen=True)
class DressedBasis:
    """Eigenstates of the rotating-frame Hamiltonian.

    ``labels[j]`` is the dominant bare state ``(m, n)`` of column ``j`` or
    ``None`` when no bare state carries at least half the weight.
    ``energy_rank[j]`` is the energy-order index of column ``j``; it differs
    from ``j`` only after :func:`track_branches` reorders a sweep.
    """

    energies: np.ndarray
    vectors: np.ndarray
    labels: list
    weights: np.ndarray
    energy_rank: np.ndarray = field(default=None)

    def __post_init__(self):
        if self.energy_rank is None:
            object.__setattr__(self, "energy_rank", np.arange(len(self.energies)))

    @property
    def dim(self):
        return len(self.energies)

    def transition(self, i, j):
        """omega~_ij = omega~_i - omega~_j for 1-based level indices."""
        return self.energies[i - 1] - self.energies[j - 1]

    def label_str(self, j):
        lab = self.labels[j]
        return "mixed" if lab is None else f"|{lab[0]},{lab[1]}>"


@dataclass(frozen=True)
class DecayTable:
    """Dressed radiative rates into waveguide 1 (``kappa_t``) and 2 (``gamma_t``).

    Entry ``[i, j]`` is the rate for |i~> -> |j~> (0-based). Only downhill
    entries ``i > j`` describe physical decays; the full matrices are kept for
    the sum rules.
    """

    kappa_t: np.ndarray
    gamma_t: np.ndarray
    frequencies: np.ndarray

    def kappa_at(self, i, j):
        return self.kappa_t[i - 1, j - 1]

    def gamma_at(self, i, j):
        return self.gamma_t[i - 1, j - 1]


class Regime(enum.Enum):
    NESTING = "nesting"
    UNNESTING = "unnesting"


@dataclass(frozen=True)
class RegimeClass:
    kind: Regime
    chi: float
    window: tuple
    boundary: bool = False

    @property
    def nested(self):
        return self.kind is Regime.NESTING


def _label(vectors, n_max):
    names = basis_labels(n_max)
    weights = np.abs(vectors) ** 2
    dominant = np.argmax(weights, axis=0)
    w = weights[dominant, np.arange(vectors.shape[1])]
    labels = [names[k] if wk >= LABEL_THRESHOLD else None for k, wk in zip(dominant, w)]
    return labels, w


def diagonalize_system(params, ops=None):
    h = build_rotating_hamiltonian(params, ops)
    w, v = hermitian_eig(h)
    labels, weights = _label(v, params.n_max)
    return DressedBasis(energies=w, vectors=v, labels=labels, weights=weights)


def perturbative_energies(params):
    """Second-order dispersive energies in the drive frame (drive ignored).

    Returns ``[((m, n), energy), ...]`` in basis order for n = 0..n_max.
    """
    delta = params.omega_r - params.omega_q
    if delta == 0:
        raise DegenerateDetuning("omega_r == omega_q: dispersive expansion undefined")
    chi = params.g ** 2 / delta
    dq = params.omega_q - params.omega_d
    dr = params.omega_r - params.omega_d
    out = []
    for n in range(params.n_max + 1):
        out.append(((0, n), n * (dr + chi)))
    for n in range(params.n_max + 1):
        out.append(((1, n), dq - chi + n * (dr - chi)))
    return out


def classify_regime(params):
    delta = params.omega_r - params.omega_q
    if delta == 0:
        raise DegenerateDetuning("omega_r == omega_q: dispersive shift undefined")
    chi = params.g ** 2 / delta
    lo, hi = sorted((params.omega_q - 3 * chi, params.omega_q - chi))
    wd = params.omega_d
    kind = Regime.NESTING if lo < wd < hi else Regime.UNNESTING
    boundary = min(abs(wd - lo), abs(wd - hi)) <= BOUNDARY_MARGIN
    return RegimeClass(kind=kind, chi=chi, window=(lo, hi), boundary=boundary)


def decay_rates(basis, params, ops=None):
    """kappa~_ij = kappa |<i~|a^+|j~>|^2 and gamma~_ij = gamma |<i~|s^+|j~>|^2."""
    ops = ops or build_bare_operators(params)
    v = basis.vectors
    ad = dagger(v) @ dagger(ops.a) @ v
    sd = dagger(v) @ dagger(ops.sigma) @ v
    freqs = basis.energies[:, None] - basis.energies[None, :]
    return DecayTable(
        kappa_t=params.kappa * np.abs(ad) ** 2,
        gamma_t=params.gamma * np.abs(sd) ** 2,
        frequencies=freqs,
    )


def dressed_matrix_elements(basis, ops):
    """<i~|a^+|j~> and <i~|s^+|j~> with phases (needed for interference terms)."""
    v = basis.vectors
    return dagger(v) @ dagger(ops.a) @ v, dagger(v) @ dagger(ops.sigma) @ v


def track_branches(sweep, threshold=TRACK_THRESHOLD):
    """Reorder each point of a parameter sweep to follow continuous branches.

    Column k of every returned basis continues column k of the first point,
    matched by maximal eigenvector overlap (optimal assignment). Labels are
    anchored to the first point, which for a drive-power sweep starting at
    E = 0 are the bare states. Raises :class:`AmbiguousTracking` if any
    matched overlap falls below ``threshold``.
    """
    if not sweep:
        return []
    first = sweep[0]
    out = [first]
    prev = first
    for k, cur in enumerate(sweep[1:], start=1):
        overlap = np.abs(dagger(prev.vectors) @ cur.vectors) ** 2
        rows, cols = linear_sum_assignment(-overlap)
        best = overlap[rows, cols]
        if np.min(best) < threshold:
            raise AmbiguousTracking(
                f"sweep point {k}: branch overlap {np.min(best):.3f} below {threshold}"
            )
        perm = cols[np.argsort(rows)]
        tracked = DressedBasis(
            energies=cur.energies[perm],
            vectors=cur.vectors[:, perm],
            labels=list(first.labels),
            weights=cur.weights[perm],
            energy_rank=cur.energy_rank[perm],
        )
        out.append(tracked)
        prev = tracked
    return out


def drive_sweep(params, rabi_grid, ops=None):
    """Energy-ordered dressed bases along a Rabi-frequency grid."""
    ops = ops or build_bare_operators(params)
    return [diagonalize_system(params.with_rabi(r), ops) for r in rabi_grid]


def rate_curves(params, rabi_grid, ops=None):
    """kappa~_31, kappa~_32, kappa~_41, kappa~_42 along a Rabi grid (energy order)."""
    ops = ops or build_bare_operators(params)
    rows = []
    for r in rabi_grid:
        p = params.with_rabi(r)
        t = decay_rates(diagonalize_system(p, ops), p, ops)
        rows.append([t.kappa_at(3, 1), t.kappa_at(3, 2), t.kappa_at(4, 1), t.kappa_at(4, 2)])
    return np.array(rows)
