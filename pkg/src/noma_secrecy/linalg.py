"""Dense complex-matrix kernels used by the beamformer designs.

Orthogonal projectors onto column-span complements, leading eigenvectors of
Hermitian matrices, and leading generalized eigenvectors of Hermitian pencils,
optionally deflated to a subspace when the pencil is singular because both
matrices are sandwiched by a projector.

Sizes here are tiny (the relay count), so everything goes through dense
LAPACK routines via numpy/scipy.
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import DeflationError, DomainError, SingularMatrixError

HERMITIAN_RTOL = 1e-12
RANK_RTOL = 1e-10


def _as_columns(M) -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim == 1:
        M = M[:, None]
    if M.ndim != 2:
        raise DomainError(f"expected a vector or matrix, got ndim={M.ndim}")
    return M


def _column_svd(M: np.ndarray, full: bool) -> tuple[np.ndarray, np.ndarray]:
    """Left singular vectors and singular values, rejecting rank-deficient input."""
    rows, cols = M.shape
    if cols > rows:
        raise SingularMatrixError(f"{cols} columns in C^{rows} cannot be independent")
    u, s, _ = np.linalg.svd(M, full_matrices=full)
    if s.size == 0 or s[0] == 0.0 or s[-1] <= s[0] * RANK_RTOL:
        raise SingularMatrixError("columns are numerically linearly dependent")
    return u, s


def orth_projector(M) -> np.ndarray:
    """Projector I - M (M^H M)^{-1} M^H onto the orthogonal complement of span(M).

    M is K x m with independent columns (a bare vector counts as one column).
    The result P is Hermitian and idempotent, satisfies P @ M = 0, and has
    rank K - m.  Raises SingularMatrixError when the columns are dependent.
    """
    M = _as_columns(M)
    u, _ = _column_svd(M, full=False)
    return np.eye(M.shape[0], dtype=complex) - u @ u.conj().T


def orth_complement_basis(M) -> np.ndarray:
    """Orthonormal basis (as columns) of the orthogonal complement of span(M)."""
    M = _as_columns(M)
    u, _ = _column_svd(M, full=True)
    return u[:, M.shape[1]:]


def _check_hermitian(H: np.ndarray, name: str) -> None:
    scale = np.linalg.norm(H)
    if np.linalg.norm(H - H.conj().T) > HERMITIAN_RTOL * max(scale, 1e-300):
        raise DomainError(f"{name} is not Hermitian within {HERMITIAN_RTOL:g} relative")


def _fix_phase(v: np.ndarray) -> np.ndarray:
    """Rotate the global phase so the largest-magnitude entry is real nonnegative."""
    j = int(np.argmax(np.abs(v)))
    pivot = v[j]
    if pivot != 0:
        v = v * (pivot.conjugate() / abs(pivot))
    return v


def _leading_index(eigenvalues: np.ndarray) -> int:
    # eigh returns ascending eigenvalues; exact ties are broken toward the
    # lowest column index among those attaining the maximum.
    return int(np.argmax(eigenvalues == eigenvalues[-1]))


def leading_eigvec(H) -> tuple[np.ndarray, float]:
    """Unit eigenvector of a Hermitian matrix for its largest eigenvalue.

    Returns (v, lambda) with the phase fixed so the largest-magnitude entry of
    v is real nonnegative.  Raises DomainError for non-Hermitian input.
    """
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {H.shape}")
    _check_hermitian(H, "H")
    w, v = np.linalg.eigh(H)
    idx = _leading_index(w)
    return _fix_phase(v[:, idx].copy()), float(w[idx])


def leading_gen_eigvec(A, B, range_basis=None) -> np.ndarray:
    """Unit vector maximizing the generalized Rayleigh quotient v^H A v / v^H B v.

    With ``range_basis`` (orthonormal columns Q), the pencil is deflated to
    that subspace: the reduced pencil (Q^H A Q, Q^H B Q) is solved and the
    eigenvector mapped back, which is exact when A and B both vanish outside
    the subspace (projector-sandwiched pencils).  B must be positive definite
    there, otherwise DeflationError is raised.
    """
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DomainError(f"pencil matrices must be square and same-size, got {A.shape} and {B.shape}")
    _check_hermitian(A, "A")
    _check_hermitian(B, "B")
    if range_basis is None:
        q = None
        a_red, b_red = A, B
    else:
        q = np.asarray(range_basis, dtype=complex)
        if q.ndim != 2 or q.shape[0] != A.shape[0]:
            raise DomainError(f"range basis shape {q.shape} does not match pencil size {A.shape[0]}")
        a_red = q.conj().T @ A @ q
        b_red = q.conj().T @ B @ q
    # Symmetrize away rounding asymmetry before LAPACK sees the matrices.
    a_red = 0.5 * (a_red + a_red.conj().T)
    b_red = 0.5 * (b_red + b_red.conj().T)
    try:
        w, v = scipy.linalg.eigh(a_red, b_red)
    except scipy.linalg.LinAlgError as exc:
        raise DeflationError("pencil denominator is not positive definite on the subspace") from exc
    vec = v[:, _leading_index(w)]
    if q is not None:
        vec = q @ vec
    vec = vec / np.linalg.norm(vec)
    return _fix_phase(vec)
