"""Dense complex matrix helpers: unitarity, nullspaces, random unitaries."""

from __future__ import annotations

import numpy as np

DEFAULT_TOL = 1e-9


def check_tol(tol: float) -> float:
    tol = float(tol)
    if not 0.0 <= tol < 1.0:
        raise ValueError(f"tolerance must satisfy 0 <= tol < 1, got {tol}")
    return tol


def as_matrix(M) -> np.ndarray:
    """Coerce to a finite square complex128 array."""
    A = np.asarray(M, dtype=np.complex128)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def dagger(M: np.ndarray) -> np.ndarray:
    return np.conj(M).T


def is_unitary(M, tol: float = DEFAULT_TOL) -> bool:
    M = np.asarray(M, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        return False
    err = dagger(M) @ M - np.eye(M.shape[0])
    return bool(np.max(np.abs(err)) <= tol)


def _null_mask(s: np.ndarray, ncols: int, tol: float) -> np.ndarray:
    # s: (..., min(m, n)) singular values; returns (..., ncols) bool mask over Vh rows
    smax = s.max(axis=-1, keepdims=True) if s.shape[-1] else np.zeros(s.shape[:-1] + (1,))
    scale = np.where(smax > 0, smax, 1.0)
    padded = np.zeros(s.shape[:-1] + (ncols,))
    padded[..., : s.shape[-1]] = s
    return padded <= tol * scale


def nullspace(A, tol: float = DEFAULT_TOL) -> list[np.ndarray]:
    """Orthonormal basis of the right nullspace of ``A``.

    A singular value counts as zero when it is at most ``tol`` times the
    largest singular value (or ``tol`` itself when ``A`` is zero). Rows of
    ``A`` may be fewer or more than its columns.
    """
    A = np.atleast_2d(np.asarray(A, dtype=np.complex128))
    if A.shape[1] < 1:
        raise ValueError("nullspace needs at least one column")
    if A.shape[0] == 0:
        return [v for v in np.eye(A.shape[1], dtype=np.complex128)]
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    mask = _null_mask(s, A.shape[1], tol)
    return [np.conj(vh[i]) for i in np.flatnonzero(mask)]


def batched_nullspaces(A: np.ndarray, tol: float = DEFAULT_TOL):
    """Nullspaces of a stack of matrices ``A[b]`` with the same threshold rule.

    Returns ``(dims, mask, vh)``: ``dims[b]`` is the nullity of ``A[b]`` and
    its null vectors are ``conj(vh[b][mask[b]])``.
    """
    _, s, vh = np.linalg.svd(A, full_matrices=True)
    mask = _null_mask(s, A.shape[-1], tol)
    return mask.sum(axis=-1), mask, vh


def rank(A, tol: float = DEFAULT_TOL) -> int:
    A = np.atleast_2d(np.asarray(A, dtype=np.complex128))
    return A.shape[1] - len(nullspace(A, tol))


def random_unitary(n: int, seed: int | None = None, rng=None) -> np.ndarray:
    """Haar-distributed unitary from a QR factorisation with the phase fix.

    Deterministic for a fixed ``seed``; pass ``rng`` to draw from an existing
    generator instead.
    """
    if n < 1:
        raise ValueError("dimension must be positive")
    if rng is None:
        rng = np.random.default_rng(seed)
    Z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_phases(n: int, rng) -> np.ndarray:
    return np.exp(2j * np.pi * rng.random(n))
