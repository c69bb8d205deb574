"""Driven qubit-resonator system as an impedance-matched Lambda system.

Dressed-state analysis, decay-rate matching, master-equation reflection and
down-conversion spectra, plus a reduced three-level cross-check.
"""
__version__ = "0.1.0"

from .config import RunConfig, load_config
from .dressed import (
    DecayTable,
    DressedBasis,
    Regime,
    RegimeClass,
    classify_regime,
    decay_rates,
    diagonalize_system,
    perturbative_energies,
    rate_curves,
    track_branches,
)
from .errors import *  # noqa: F401,F403
from .linalg import EigenDecomposition, hermitian_eig, solve_linear
from .matching import Level, MatchPoint, find_both, find_matching_power, rate_mismatch
from .model import (
    SystemParams,
    bare_operators,
    build_bare_operators,
    build_rotating_hamiltonian,
    ghz,
    mhz,
    reference_params,
    scaled_params,
    to_ghz,
    to_mhz,
)
from .reduced import LambdaParams, lambda_efficiency, lambda_reflection
