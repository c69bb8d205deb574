"""Impedance-matching search: equal decay rates out of an upper dressed level."""
import enum
from dataclasses import dataclass

import numpy as np

from .dressed import (
    RegimeClass,
    classify_regime,
    decay_rates,
    diagonalize_system,
    track_branches,
)
from .errors import NoSignChange, NotNested
from .model import SystemParams, build_bare_operators, mhz

MAX_ITER = 60
RESIDUAL_TOL = 1e-4
DEFAULT_BRACKET = (0.0, mhz(50.0))
# tracking step; keeps consecutive eigenvector overlaps well above 0.9
TRACK_STEP = mhz(2.0)


class Level(enum.IntEnum):
    THREE = 3
    FOUR = 4


@dataclass(frozen=True)
class MatchPoint:
    rabi: float
    drive_amp: float
    level: Level
    residual: float
    regime: RegimeClass
    params: SystemParams
    iterations: int = 0


def _ramp(start, stop, step=TRACK_STEP):
    n = max(2, int(np.ceil(abs(stop - start) / step)) + 1)
    return np.linspace(start, stop, n)


def _mismatch_on_tracked(basis, params, ops, level):
    # columns of a tracked basis are branches; branch k started as level k + 1
    t = decay_rates(basis, params, ops)
    k = int(level) - 1
    return t.kappa_t[k, 0] - t.kappa_t[k, 1]


def _tracked(params, rabis, ops, anchor=None):
    sweep = [diagonalize_system(params.with_rabi(r), ops) for r in rabis]
    if anchor is not None:
        sweep = [anchor] + sweep
        return track_branches(sweep)[1:]
    return track_branches(sweep)


def rate_mismatch(params, level=Level.FOUR, ops=None):
    """kappa~_{level,1} - kappa~_{level,2} at ``params``, following branches from E = 0."""
    ops = ops or build_bare_operators(params)
    level = Level(level)
    tracked = _tracked(params, _ramp(0.0, params.rabi), ops)
    return _mismatch_on_tracked(tracked[-1], params, ops, level)


def mismatch_curve(params, rabi_grid, level=Level.FOUR, ops=None):
    """Branch-tracked mismatch along an ascending Rabi grid starting anywhere >= 0."""
    ops = ops or build_bare_operators(params)
    rabi_grid = np.asarray(rabi_grid, dtype=float)
    lead = _ramp(0.0, rabi_grid[0])[:-1] if rabi_grid[0] > 0 else np.array([])
    tracked = _tracked(params, np.concatenate([lead, rabi_grid]), ops)[len(lead):]
    return np.array([
        _mismatch_on_tracked(b, params.with_rabi(r), ops, level)
        for b, r in zip(tracked, rabi_grid)
    ])


def find_matching_power(params, level=Level.FOUR, bracket=DEFAULT_BRACKET, ops=None):
    """Bisect the drive power (as Rabi frequency) for equal decay rates.

    A branch-tracked prescan of ``bracket`` isolates the first sign change of
    the mismatch; bisection then refines it, each midpoint tracked from the
    lower end of the current interval.
    """
    ops = ops or build_bare_operators(params)
    level = Level(level)
    regime = classify_regime(params)
    if not regime.nested:
        raise NotNested(
            f"omega_d outside the nesting window; impedance matching needs nesting "
            f"(window {regime.window[0]:.6g}..{regime.window[1]:.6g} rad/s)"
        )
    lo, hi = map(float, bracket)
    grid = _ramp(lo, hi)
    lead = _ramp(0.0, lo)[:-1] if lo > 0 else np.array([])
    tracked = _tracked(params, np.concatenate([lead, grid]), ops)[len(lead):]
    values = [_mismatch_on_tracked(b, params.with_rabi(r), ops, level)
              for b, r in zip(tracked, grid)]
    kappa = params.kappa

    for k in range(len(grid) - 1):
        if values[k] == 0.0:
            return _point(params, grid[k], level, abs(values[k]) / kappa, regime, 0)
        if np.sign(values[k]) != np.sign(values[k + 1]):
            break
    else:
        raise NoSignChange(f"rate mismatch keeps one sign on the bracket for level {int(level)}")

    a, b = grid[k], grid[k + 1]
    fa, basis_a = values[k], tracked[k]
    mid, fm = a, fa
    for it in range(1, MAX_ITER + 1):
        mid = 0.5 * (a + b)
        basis_m = _tracked(params, [mid], ops, anchor=basis_a)[0]
        fm = _mismatch_on_tracked(basis_m, params.with_rabi(mid), ops, level)
        if abs(fm) / kappa <= RESIDUAL_TOL:
            break
        if np.sign(fm) == np.sign(fa):
            a, fa, basis_a = mid, fm, basis_m
        else:
            b = mid
    return _point(params, mid, level, abs(fm) / kappa, regime, it)


def _point(params, rabi, level, residual, regime, iterations):
    p = params.with_rabi(rabi)
    return MatchPoint(rabi=rabi, drive_amp=abs(p.drive_amp), level=level, residual=residual,
                      regime=regime, params=p, iterations=iterations)


def find_both(params, bracket=DEFAULT_BRACKET, ops=None):
    return {lv: find_matching_power(params, lv, bracket, ops) for lv in Level}
