"""Dense complex linear algebra used throughout the package.

Matrices are plain ``numpy`` complex arrays. The Hermitian eigensolver is a
cyclic Jacobi iteration (accurate and simple at the sizes used here, dim <= 64);
general solves go through LAPACK LU with a reciprocal-condition estimate.
"""
import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy.linalg import lapack

from .errors import DimensionMismatch, NoConvergence, NonHermitian, Singular

HERMITIAN_RTOL = 1e-9
MAX_SWEEPS = 100
MAX_CONDITION = 1e14


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending eigenvalues and the matching orthonormal eigenvector columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray

    def __iter__(self):
        # allows ``w, v = hermitian_eig(h)``
        yield self.eigenvalues
        yield self.eigenvectors


def as_matrix(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains non-finite entries")
    return m


def _off_norm(h):
    # direct sum over off-diagonal entries; total-minus-diagonal cancels badly
    return np.linalg.norm(h[~np.eye(h.shape[0], dtype=bool)])


def hermitian_eig(h, tol=1e-15):
    """Diagonalize a Hermitian matrix by cyclic complex Jacobi rotations.

    Each rotation first removes the phase of ``h[p, q]`` and then applies a
    real Givens rotation that annihilates it. Sweeps continue until the
    off-diagonal Frobenius norm drops below ``tol * ||h||_F``.

    Eigenvectors are phase-fixed so that their largest-magnitude component is
    real and positive, which makes the output deterministic.
    """
    h = as_matrix(h)
    n, m = h.shape
    if n != m:
        raise DimensionMismatch(f"hermitian_eig needs a square matrix, got {h.shape}")
    scale = np.max(np.abs(h)) if h.size else 0.0
    if np.max(np.abs(h - h.conj().T), initial=0.0) > HERMITIAN_RTOL * max(scale, 1e-300):
        raise NonHermitian("matrix is not Hermitian within relative tolerance 1e-9")

    a = 0.5 * (h + h.conj().T)
    v = np.eye(n, dtype=complex)
    target = tol * max(np.linalg.norm(a), 1e-300)

    for _ in range(MAX_SWEEPS):
        if _off_norm(a) <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag <= 1e-300:
                    continue
                phase = apq / mag
                app, aqq = a[p, p].real, a[q, q].real
                theta = 0.5 * np.arctan2(2.0 * mag, aqq - app)
                c, s = np.cos(theta), np.sin(theta)
                # unitary on the (p, q) plane: diag(1, conj(phase)) @ [[c, s], [-s, c]]
                u = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ u
                a[idx, :] = u.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ u
                a[p, q] = a[q, p] = 0.0
    else:
        if _off_norm(a) > target:
            raise NoConvergence(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")

    w = np.real(np.diag(a)).copy()
    order = np.argsort(w, kind="stable")
    w = w[order]
    v = v[:, order]
    for j in range(n):
        k = np.argmax(np.abs(v[:, j]))
        v[:, j] *= np.conj(v[k, j]) / abs(v[k, j])
    return EigenDecomposition(w, v)


def solve_linear(m, rhs):
    """Solve ``m @ x = rhs`` by LU factorization.

    Raises :class:`Singular` when a pivot vanishes, the reciprocal condition
    estimate falls below ``1/MAX_CONDITION``, or the residual bound
    ``||m x - rhs||_max <= 1e-9 ||rhs||_max`` is violated.
    """
    m = as_matrix(m)
    b = np.asarray(rhs, dtype=complex)
    vector = b.ndim == 1
    if vector:
        b = b[:, None]
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"solve_linear needs a square matrix, got {m.shape}")
    if b.shape[0] != m.shape[0]:
        raise DimensionMismatch(f"rhs has {b.shape[0]} rows, matrix has {m.shape[0]}")

    anorm = np.max(np.sum(np.abs(m), axis=0))
    try:
        with warnings.catch_warnings():
            # exact zero pivots are reported below as Singular
            warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
            lu, piv = scipy.linalg.lu_factor(m, check_finite=False)
    except (ValueError, np.linalg.LinAlgError) as exc:
        raise Singular(str(exc)) from exc
    if np.any(np.abs(np.diag(lu)) <= np.finfo(float).tiny):
        raise Singular("zero pivot in LU factorization")
    rcond, info = lapack.zgecon(lu, anorm, norm="1")
    if info != 0 or rcond * MAX_CONDITION < 1.0:
        raise Singular(f"matrix is numerically singular (rcond={rcond:.3e})")

    x = scipy.linalg.lu_solve((lu, piv), b, check_finite=False)
    resid = np.max(np.abs(m @ x - b), initial=0.0)
    if not np.all(np.isfinite(x)) or resid > 1e-9 * max(np.max(np.abs(b), initial=0.0), 1e-300):
        raise Singular(f"solution residual {resid:.3e} exceeds bound")
    return x[:, 0] if vector else x


def kron(a, b):
    return np.kron(as_matrix(a), as_matrix(b))


def dagger(m):
    return np.asarray(m).conj().T


def commutator(a, b):
    return a @ b - b @ a
