"""Points of M_n = U(n)/C_n: orthonormal bases up to order and phases."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DimensionMismatch, UnitaryRequired
from .linalg import DEFAULT_TOL, as_matrix, check_tol, dagger, is_unitary
from .monomial import is_monomial


def _column_cmp(eps: float):
    # descending lexicographic order on (re, im) pairs read top-down; values
    # within eps compare equal so float noise does not decide the order
    def cmp(a, b):
        for x, y in zip(a, b):
            if abs(x - y) > eps:
                return -1 if x > y else 1
        return 0

    return cmp


def canonicalize(U, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Deterministic representative ``U @ C`` (``C`` monomial) of the coset ``U C_n``.

    Each column is rotated so its first entry of modulus above ``tol`` is
    real positive, then columns are sorted in descending lexicographic order
    of their (re, im) entries. Columns whose sort keys tie within ``10 * tol``
    keep an arbitrary relative order, so the output is only guaranteed
    identical across representatives when no such ties exist.
    """
    U = as_matrix(U)
    if not is_unitary(U, max(tol, DEFAULT_TOL)):
        raise UnitaryRequired("canonicalize needs a unitary matrix")
    V = U.copy()
    for j in range(V.shape[1]):
        col = V[:, j]
        idx = int(np.argmax(np.abs(col) > tol))
        z = col[idx]
        V[:, j] = col * (np.conj(z) / abs(z))
    keys = [np.stack([V[:, j].real, V[:, j].imag], axis=1).ravel() for j in range(V.shape[1])]
    order = sorted(range(V.shape[1]), key=functools.cmp_to_key(
        lambda a, b: _column_cmp(10 * tol)(keys[a], keys[b])))
    return V[:, order]


@dataclass(frozen=True, eq=False)
class BasisPoint:
    """An unordered orthonormal basis given by the columns of a unitary ``rep``."""

    rep: np.ndarray
    canonical: np.ndarray = field(init=False, repr=False)
    label: str | None = None

    def __post_init__(self):
        rep = as_matrix(self.rep).copy()
        if not is_unitary(rep, DEFAULT_TOL):
            raise UnitaryRequired("basis representative must be unitary")
        rep.setflags(write=False)
        can = canonicalize(rep)
        can.setflags(write=False)
        object.__setattr__(self, "rep", rep)
        object.__setattr__(self, "canonical", can)

    @property
    def n(self) -> int:
        return self.rep.shape[0]

    @classmethod
    def standard(cls, n: int) -> "BasisPoint":
        return cls(np.eye(n, dtype=np.complex128), label="e")

    def act(self, U) -> "BasisPoint":
        """Left action ``U . (V C_n) = (U V) C_n``."""
        U = np.asarray(U, dtype=np.complex128)
        if U.shape != self.rep.shape:
            raise DimensionMismatch("unitary and basis have different dimensions")
        return BasisPoint(U @ self.rep)

    def key(self, decimals: int = 7) -> tuple:
        """Hashable key from the canonical form; unstable where columns tie."""
        r = np.round(self.canonical, decimals) + (0.0 + 0.0j)
        return tuple(np.concatenate([r.real.ravel(), r.imag.ravel()]).tolist())


def _same_dim(p: BasisPoint, q: BasisPoint):
    if p.n != q.n:
        raise DimensionMismatch(f"bases live in dimensions {p.n} and {q.n}")


def points_equal(p: BasisPoint, q: BasisPoint, tol: float = DEFAULT_TOL) -> bool:
    """``p == q`` in M_n, i.e. ``p.rep^dagger q.rep`` is monomial."""
    _same_dim(p, q)
    return is_monomial(dagger(p.rep) @ q.rep, check_tol(tol))


def overlaps(p: BasisPoint, q: BasisPoint) -> np.ndarray:
    """Matrix of ``Tr(P_i Q_j) = |<u_i|v_j>|^2``."""
    _same_dim(p, q)
    return np.abs(dagger(p.rep) @ q.rep) ** 2


def _radicand(p: BasisPoint, q: BasisPoint) -> float:
    # n - 1 - sum (P_ij - 1/n)^2 rewritten with unit row sums as
    # sum_i sum_{j != k} P_ij P_ik: no cancellation, so D(p, p) stays ~1e-16
    P = overlaps(p, q)
    cross = P[:, :, None] * P[:, None, :]
    off = ~np.eye(p.n, dtype=bool)
    return float(np.sum(cross[:, off]))


def mubness(p: BasisPoint, q: BasisPoint) -> float:
    """MUBness distance; equals ``sqrt(n - 1)`` on unbiased pairs and 0 on equal points."""
    # averaging both argument orders makes the result exactly symmetric
    return float(np.sqrt(0.5 * (_radicand(p, q) + _radicand(q, p))))


def is_unbiased(p: BasisPoint, q: BasisPoint, tol: float = DEFAULT_TOL) -> bool:
    tol = check_tol(tol)
    return bool(np.max(np.abs(overlaps(p, q) - 1.0 / p.n)) <= tol)


def is_hadamard_matrix(H, tol: float = DEFAULT_TOL) -> bool:
    H = np.asarray(H, dtype=np.complex128)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        return False
    n = H.shape[0]
    return is_unitary(H, tol) and bool(np.max(np.abs(np.abs(H) - 1 / np.sqrt(n))) <= tol)


def in_unbiased_set(p: BasisPoint, bases: Sequence[BasisPoint], tol: float = DEFAULT_TOL) -> bool:
    """Membership in N(q_1, ..., q_k); always true for an empty list."""
    return all(is_unbiased(p, q, tol) for q in bases)
