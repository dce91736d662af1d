"""Dense complex linear-algebra kernels shared by the whole library.

Everything operates on plain ``numpy`` arrays of dtype complex128.  The
functions here add the contracts the rest of the library relies on
(tolerance-aware Hermiticity checks, a fixed numerical-rank rule, seeded
Haar sampling); the heavy lifting is delegated to LAPACK via numpy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceFailure, NotHermitian

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "as_complex_matrix",
    "unitarity_residual",
    "hermitian_eigendecomposition",
    "singular_value_decomposition",
    "numerical_rank",
    "random_unitary",
    "haar_unitary",
    "row_space_angles",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used throughout the library.

    rank_rel      relative singular-value cutoff for numerical rank
    unitary_abs   max absolute deviation of U*U from the identity
    residual_abs  max Frobenius deviation for reconstruction checks
    unit_eig_abs  threshold for deciding an eigenvalue of KK* equals 1
    """

    rank_rel: float = 1e-10
    unitary_abs: float = 1e-10
    residual_abs: float = 1e-8
    unit_eig_abs: float = 1e-8

    def __post_init__(self):
        for name in ("rank_rel", "unitary_abs", "residual_abs", "unit_eig_abs"):
            value = getattr(self, name)
            if not (0.0 < value < 1.0):
                raise ValueError(f"{name} must lie strictly between 0 and 1, got {value!r}")


DEFAULT_TOL = Tolerances()


def as_complex_matrix(a) -> np.ndarray:
    """Coerce to a 2-d complex128 array and reject non-finite entries."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or infinite entries")
    return m


def unitarity_residual(u) -> float:
    """Max-norm deviation of U*U from the identity; 0 for exactly unitary U."""
    u = as_complex_matrix(u)
    if u.shape[0] != u.shape[1]:
        raise ValueError(f"unitarity residual needs a square matrix, got {u.shape}")
    gram = u.conj().T @ u
    return float(np.max(np.abs(gram - np.eye(u.shape[0]))))


def hermitian_eigendecomposition(h, tol: Tolerances = DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(eigenvalues, eigenvectors)`` with real eigenvalues sorted
    ascending and eigenvectors as the columns of a unitary matrix, so that
    ``h @ vecs == vecs @ diag(vals)`` up to roundoff.

    Raises NotHermitian when ``max|h - h*|`` exceeds ``tol.unitary_abs`` and
    ConvergenceFailure if the LAPACK iteration fails.
    """
    h = as_complex_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise NotHermitian(f"matrix is not square: {h.shape}")
    deviation = float(np.max(np.abs(h - h.conj().T))) if h.size else 0.0
    if deviation > tol.unitary_abs:
        raise NotHermitian(f"Hermiticity deviation {deviation:.3e} exceeds {tol.unitary_abs:.3e}")
    try:
        vals, vecs = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return vals, vecs


def singular_value_decomposition(m):
    """SVD ``m = u @ diag(sigma) @ v*`` with sigma non-increasing.

    Returns ``(u, sigma, v)``; note the third factor is V itself, not V*.
    """
    m = as_complex_matrix(m)
    try:
        u, sigma, vh = np.linalg.svd(m)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    return u, sigma, vh.conj().T


def numerical_rank(m, tol: Tolerances = DEFAULT_TOL) -> int:
    """Number of singular values above ``rank_rel * sigma_max``; 0 for the zero matrix."""
    m = as_complex_matrix(m)
    if m.size == 0:
        return 0
    sigma = np.linalg.svd(m, compute_uv=False)
    if sigma[0] == 0.0:
        return 0
    return int(np.count_nonzero(sigma > tol.rank_rel * sigma[0]))


def haar_unitary(m: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed m x m unitary drawn from an explicit generator.

    QR of a complex Gaussian matrix, with the triangular factor's diagonal
    phases absorbed into Q so the distribution is genuinely Haar.
    """
    if m < 1:
        raise ValueError(f"matrix size must be positive, got {m}")
    z = (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_unitary(m: int, seed: int) -> np.ndarray:
    """Seeded Haar-random unitary; bit-identical across calls with the same seed."""
    return haar_unitary(m, np.random.default_rng(seed))


def row_space_angles(m1, m2) -> np.ndarray:
    """Principal angles (radians, ascending) between the row spaces of two matrices.

    Computed through the sines (singular values of the residual of one
    orthonormal row basis projected off the other), which resolves angles
    all the way down to machine precision where the arccos-of-cosines route
    bottoms out near sqrt(eps).  The angle vector is all zeros exactly when
    the matrices are row-equivalent.
    """
    m1 = as_complex_matrix(m1)
    m2 = as_complex_matrix(m2)
    _, _, q1 = np.linalg.svd(m1, full_matrices=False)
    _, _, q2 = np.linalg.svd(m2, full_matrices=False)
    residual = q2 - (q2 @ q1.conj().T) @ q1
    sines = np.linalg.svd(residual, compute_uv=False)
    return np.sort(np.arcsin(np.clip(sines, -1.0, 1.0)))
