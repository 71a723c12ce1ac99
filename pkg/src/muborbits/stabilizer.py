"""Simultaneous stabilizers of MUB lists and their orbits on bases."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .basis import BasisPoint, is_hadamard_matrix, points_equal
from .equivalence import MubList, _check_search_dim, standard_form
from .errors import DimensionMismatch, NotHadamard, UnexpectedSolutionSpace
from .linalg import DEFAULT_TOL, as_matrix, batched_nullspaces, check_tol, dagger
from .monomial import (
    GROUP_TOL,
    MonomialElement,
    ProjectiveElement,
    ProjectiveSet,
    projective_from_monomial,
)

EQUAL_MODULUS_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class StabilizerGroup:
    """Finite group of unitaries modulo the center fixing every basis of a list."""

    n: int
    elements: tuple[ProjectiveElement, ...]
    basis_list: MubList

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def as_set(self, tol: float = GROUP_TOL) -> ProjectiveSet:
        return ProjectiveSet(self.elements, tol)

    def __contains__(self, g: ProjectiveElement) -> bool:
        return g in self.as_set()

    def is_closed(self, tol: float = GROUP_TOL) -> bool:
        """Closure table check: every product (and inverse) lies in the set."""
        s = self.as_set(tol)
        if not any(g.is_identity(tol) for g in self.elements):
            return False
        for g in self.elements:
            if g.inverse() not in s:
                return False
            for h in self.elements:
                if g.compose(h) not in s:
                    return False
        return True

    def stabilizes(self, tol: float = GROUP_TOL) -> bool:
        return all(points_equal(q.act(g.matrix), q, tol) for g in self.elements for q in self.basis_list)


def _sorted_elements(items) -> tuple[ProjectiveElement, ...]:
    return tuple(sorted(items, key=lambda g: g.key()))


def _row_masks(n: int, sigmas: np.ndarray) -> np.ndarray:
    # for each sigma, the flat indices (k, l) with l != sigma(k), in row-major order
    ks = np.repeat(np.arange(n), n)
    ls = np.tile(np.arange(n), n)
    keep = ls[None, :] != sigmas[:, ks]
    return np.stack([np.flatnonzero(row) for row in keep])


def _candidate_sigmas(A_full: np.ndarray, perms: np.ndarray) -> np.ndarray:
    # Gram matrix of the system for sigma = full Gram minus the dropped rows.
    # Its smallest eigenvalue is the squared smallest singular value, so a
    # loose cut here never discards a system the exact SVD would accept.
    n = A_full.shape[1]
    outer = np.einsum("ri,rj->rij", np.conj(A_full), A_full).reshape(n, n, n, n)
    total = outer.sum(axis=(0, 1))
    dropped = outer[np.arange(n)[None, :], perms].sum(axis=1)
    ev = np.linalg.eigvalsh(total[None] - dropped)
    scale = np.maximum(ev[:, -1], 1e-300)
    return np.flatnonzero(ev[:, 0] <= 1e-8 * scale)


def pair_stabilizer(H, tol: float = DEFAULT_TOL) -> StabilizerGroup:
    """Stabilizer of the pair ``(e, H C_n)`` modulo the center.

    Enumerates every component pair ``(rho, sigma)``: ``U`` has its nonzero
    entries ``u_i`` at ``(i, rho(i))`` and ``H^dagger U H`` must vanish off the
    pattern of ``sigma``. That is a homogeneous linear system in the ``u_i``;
    a one-dimensional solution with equal moduli gives one group element.
    """
    tol = check_tol(tol)
    H = as_matrix(H)
    if not is_hadamard_matrix(H, max(tol, 1e-9)):
        raise NotHadamard("pair_stabilizer needs a complex Hadamard matrix")
    n = H.shape[0]
    _check_search_dim(n)

    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    rows = _row_masks(n, perms)
    Hc = np.conj(H)
    found = ProjectiveSet()
    for rho in perms:
        # A_full[(k, l), i] = conj(H[i, k]) * H[rho(i), l]
        A_full = np.einsum("ik,il->kli", Hc, H[rho]).reshape(n * n, n)
        cand = _candidate_sigmas(A_full, perms)
        if not cand.size:
            continue
        dims, mask, vh = batched_nullspaces(A_full[rows[cand]], tol)
        for c_idx in np.flatnonzero(dims):
            s_idx = cand[c_idx]
            if dims[c_idx] > 1:
                raise UnexpectedSolutionSpace(
                    f"solution space of dimension {dims[c_idx]} for rho={tuple(rho)}, "
                    f"sigma={tuple(perms[s_idx])}",
                    rho=tuple(rho), sigma=tuple(perms[s_idx]), dim=int(dims[c_idx]))
            u = np.conj(vh[c_idx][mask[c_idx]][0])
            mod = np.abs(u)
            if np.max(np.abs(mod - mod.mean())) > EQUAL_MODULUS_TOL * mod.mean():
                raise UnexpectedSolutionSpace(
                    f"one-dimensional solution with unequal moduli for rho={tuple(rho)}, "
                    f"sigma={tuple(perms[s_idx])}",
                    rho=tuple(rho), sigma=tuple(perms[s_idx]), dim=1)
            g = projective_from_monomial(MonomialElement(tuple(rho), u / mod))
            found.add(g)

    group = StabilizerGroup(n, _sorted_elements(found), MubList([np.eye(n), H], validate=False))
    if not group.is_closed():
        raise ArithmeticError("computed pair stabilizer is not closed under composition")
    return group


def list_stabilizer(mubs: MubList | Sequence, tol: float = DEFAULT_TOL) -> StabilizerGroup:
    """Simultaneous stabilizer of a list of at least two MUBs, modulo the center.

    The list is put in standard form, the pair stabilizer of its first two
    bases is filtered by the remaining ones, and the survivors are conjugated
    back so they stabilize the list as given.
    """
    tol = check_tol(tol)
    if not isinstance(mubs, MubList):
        mubs = MubList(mubs, tol)
    if len(mubs) < 2:
        raise ValueError("stabilizer of a single basis is the continuous group C_n")
    std, witness = standard_form(mubs, tol)
    pair = pair_stabilizer(std[1].rep, tol)
    kept = [g for g in pair.elements
            if all(points_equal(std[j].act(g.matrix), std[j], tol) for j in range(2, len(std)))]
    W = witness.U
    back = [g.conjugate_by(dagger(W)) for g in kept]
    return StabilizerGroup(mubs.n, _sorted_elements(back), mubs)


@dataclass(frozen=True, eq=False)
class OrbitSet:
    """Orbit of a seed basis; ``actions[i]`` maps the seed to ``points[i]``."""

    points: tuple[BasisPoint, ...]
    actions: tuple[ProjectiveElement, ...]

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def index(self, p: BasisPoint, tol: float = GROUP_TOL) -> int:
        for i, q in enumerate(self.points):
            if points_equal(p, q, tol):
                return i
        return -1

    def __contains__(self, p: BasisPoint) -> bool:
        return self.index(p) >= 0


def orbit(G: StabilizerGroup | Sequence[ProjectiveElement], p: BasisPoint, tol: float = DEFAULT_TOL) -> OrbitSet:
    """Images of ``p`` under every group element, deduplicated as bases."""
    elements = G.elements if isinstance(G, StabilizerGroup) else tuple(G)
    points: list[BasisPoint] = []
    actions: list[ProjectiveElement] = []
    for g in elements:
        if g.n != p.n:
            raise DimensionMismatch("group and basis have different dimensions")
        q = p.act(g.matrix)
        if not any(points_equal(q, r, tol) for r in points):
            points.append(q)
            actions.append(g)
    return OrbitSet(tuple(points), tuple(actions))


def trivial_group(mubs: MubList) -> StabilizerGroup:
    n = mubs.n
    return StabilizerGroup(n, (projective_from_monomial(MonomialElement.identity(n)),), mubs)


def center_residual(H, A) -> float:
    """``max_i |[H^dagger A H]_ii - Tr(A)/n|`` for a diagonal unitary ``A``."""
    H = as_matrix(H)
    A = as_matrix(A)
    C = dagger(H) @ A @ H
    return float(np.max(np.abs(np.diag(C) - np.trace(A) / H.shape[0])))


def verify_center_proposition(H, trials: int = 100, tol: float = DEFAULT_TOL, seed: int = 0) -> bool:
    """Check that ``T^n`` meets ``H T^n H^dagger`` only in scalars, on random samples.

    For each random diagonal unitary ``A``, the diagonal of ``H^dagger A H``
    must equal ``Tr(A)/n`` and, for non-scalar ``A``, some off-diagonal entry
    must exceed ``tol``. Scalar ``A`` must conjugate to itself.
    """
    tol = check_tol(tol)
    H = as_matrix(H)
    if not is_hadamard_matrix(H, max(tol, 1e-9)):
        raise NotHadamard("center proposition applies to complex Hadamard matrices")
    n = H.shape[0]
    rng = np.random.default_rng(seed)
    scalar = np.exp(2j * np.pi * rng.random()) * np.eye(n)
    if np.max(np.abs(dagger(H) @ scalar @ H - scalar)) > tol:
        return False
    for _ in range(trials):
        A = np.diag(np.exp(2j * np.pi * rng.random(n)))
        if center_residual(H, A) > tol:
            return False
        C = dagger(H) @ A @ H
        off = np.abs(C - np.diag(np.diag(C)))
        if n > 1 and np.max(off) <= tol:
            return False
    return True
