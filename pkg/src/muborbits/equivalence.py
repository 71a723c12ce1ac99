"""Dephasing, standard forms and equivalence decisions for MUB lists."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .basis import BasisPoint, is_hadamard_matrix, is_unbiased, points_equal
from .errors import DimensionMismatch, DimensionTooLarge, LengthMismatch, NotAMubList, NotHadamard
from .linalg import DEFAULT_TOL, as_matrix, check_tol, dagger, is_unitary
from .monomial import GROUP_TOL, MonomialElement, invert_perm

MAX_SEARCH_DIM = 6


@dataclass(frozen=True, eq=False)
class MubList:
    """Ordered list of pairwise mutually unbiased bases."""

    bases: tuple[BasisPoint, ...]

    def __init__(self, bases: Sequence, tol: float = DEFAULT_TOL, validate: bool = True):
        pts = tuple(b if isinstance(b, BasisPoint) else BasisPoint(b) for b in bases)
        if not pts:
            raise NotAMubList("a MUB list needs at least one basis")
        n = pts[0].n
        if any(p.n != n for p in pts):
            raise DimensionMismatch("all bases of a list must share the dimension")
        if validate:
            if len(pts) > n + 1:
                raise NotAMubList(f"at most {n + 1} MUBs exist in dimension {n}, got {len(pts)}")
            for i, j in itertools.combinations(range(len(pts)), 2):
                if not is_unbiased(pts[i], pts[j], tol):
                    raise NotAMubList(f"bases {i} and {j} are not mutually unbiased")
        object.__setattr__(self, "bases", pts)

    @property
    def n(self) -> int:
        return self.bases[0].n

    def __len__(self):
        return len(self.bases)

    def __getitem__(self, i):
        return self.bases[i]

    def __iter__(self):
        return iter(self.bases)

    def act(self, U) -> "MubList":
        return MubList([b.act(U) for b in self.bases], validate=False)


@dataclass(frozen=True, eq=False)
class EquivalenceWitness:
    """A unitary ``U`` with ``U . source[i] == target[i]`` for every ``i``."""

    U: np.ndarray
    source: MubList
    target: MubList

    @property
    def maps(self) -> str:
        return f"U . a_i = b_i for i = 1..{len(self.source)}"

    def verify(self, tol: float = GROUP_TOL) -> bool:
        if not is_unitary(self.U, tol):
            return False
        return all(points_equal(a.act(self.U), b, tol) for a, b in zip(self.source, self.target))


def _unit(z):
    return z / np.abs(z)


def dephase(H, tol: float = DEFAULT_TOL):
    """Return ``(Hd, L, R)`` with ``Hd = L H R`` and constant first row and column.

    ``L`` and ``R`` are diagonal monomials; ``R`` makes the first row real
    positive and ``L`` then does the same for the first column.
    """
    H = as_matrix(H)
    if not is_hadamard_matrix(H, tol):
        raise NotHadamard("dephase needs a complex Hadamard matrix")
    r = np.conj(_unit(H[0, :]))
    HR = H * r[None, :]
    l = np.conj(_unit(HR[:, 0]))
    Hd = l[:, None] * HR
    return Hd, MonomialElement.diagonal(l), MonomialElement.diagonal(r)


def standard_form(mubs: MubList | Sequence, tol: float = DEFAULT_TOL):
    """Bring a MUB list to standard form; returns ``(list, witness)``.

    The result starts with the standard basis, the remaining representatives
    are Hadamard matrices with constant first row, and the second one also
    has a constant first column.
    """
    if not isinstance(mubs, MubList):
        mubs = MubList(mubs, tol)
    n = mubs.n
    W = dagger(mubs[0].rep)
    hs = [W @ b.rep for b in mubs.bases[1:]]
    for i, H in enumerate(hs):
        if not is_hadamard_matrix(H, max(tol, 1e-9) * 10):
            raise NotAMubList(f"basis {i + 1} is not unbiased to basis 0")
    # dephase rows via the right action; it leaves each point unchanged
    hs = [H * np.conj(_unit(H[0, :]))[None, :] for H in hs]
    if hs:
        d = np.conj(_unit(hs[0][:, 0]))
        hs = [d[:, None] * H for H in hs]
        W = d[:, None] * W
    reps = [np.eye(n, dtype=np.complex128)] + hs
    out = MubList(reps, validate=False)
    return out, EquivalenceWitness(W, mubs, out)


def _check_search_dim(n: int):
    if n > MAX_SEARCH_DIM:
        raise DimensionTooLarge(
            f"permutation search is limited to n <= {MAX_SEARCH_DIM}, got n = {n}")


def hadamard_equivalent(H1, H2, tol: float = DEFAULT_TOL):
    """Search for monomials ``(M1, M2)`` with ``H1 = M1 H2 M2``.

    Permutation pairs are tried in lexicographic order and the first match is
    returned, so the result is deterministic. For each pair the diagonal
    phases are propagated from the first row and column and then checked on
    every entry. Returns ``None`` when the matrices are inequivalent.
    """
    tol = check_tol(tol)
    H1, H2 = as_matrix(H1), as_matrix(H2)
    if H1.shape != H2.shape:
        raise DimensionMismatch("Hadamard matrices differ in size")
    for H in (H1, H2):
        if not is_hadamard_matrix(H, max(tol, 1e-9)):
            raise NotHadamard("hadamard_equivalent needs complex Hadamard matrices")
    n = H1.shape[0]
    _check_search_dim(n)

    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    P1 = _unit(H1)
    for p1 in perms:
        # K[b] = P(p1) H2 P(q_b^-1), i.e. K[b, i, j] = H2[p1[i], q_b[j]]
        K = np.transpose(H2[p1][:, perms], (1, 0, 2))
        r = P1[None] * np.conj(_unit(K))
        d2 = r[:, 0, :]
        d1 = r[:, :, 0] * np.conj(d2[:, :1])
        pred = d1[:, :, None] * K * d2[:, None, :]
        ok = np.max(np.abs(pred - H1[None]), axis=(1, 2)) <= 10 * tol
        hits = np.flatnonzero(ok)
        if hits.size:
            q = perms[hits[0]]
            M1 = MonomialElement(tuple(p1), _unit(d1[hits[0]]))
            phases = np.empty(n, dtype=np.complex128)
            phases[q] = _unit(d2[hits[0]])
            M2 = MonomialElement(invert_perm(q), phases)
            return M1, M2
    return None


def lists_equivalent(a: MubList | Sequence, b: MubList | Sequence, tol: float = DEFAULT_TOL):
    """Decide whether two ordered MUB lists are equivalent.

    Returns an :class:`EquivalenceWitness` or ``None``. Lists of length one
    are always equivalent. Longer lists are put in standard form, the first
    pair is aligned through a Hadamard equivalence, and the pair stabilizer
    of the target then enumerates every remaining candidate alignment.
    """
    from .stabilizer import pair_stabilizer

    tol = check_tol(tol)
    a = a if isinstance(a, MubList) else MubList(a, tol)
    b = b if isinstance(b, MubList) else MubList(b, tol)
    if a.n != b.n:
        raise DimensionMismatch("lists live in different dimensions")
    if len(a) != len(b):
        raise LengthMismatch(f"lists have lengths {len(a)} and {len(b)}")
    if len(a) == 1:
        return EquivalenceWitness(b[0].rep @ dagger(a[0].rep), a, b)
    _check_search_dim(a.n)

    sa, wa = standard_form(a, tol)
    sb, wb = standard_form(b, tol)
    found = hadamard_equivalent(sb[1].rep, sa[1].rep, tol)
    if found is None:
        return None
    W0 = found[0].to_matrix()
    if len(a) == 2:
        candidates = [W0]
    else:
        G = pair_stabilizer(sb[1].rep, tol)
        candidates = [g.matrix @ W0 for g in G.elements]
        for j in range(2, len(a)):
            candidates = [C for C in candidates if points_equal(sa[j].act(C), sb[j], tol)]
            if not candidates:
                return None
    U = dagger(wb.U) @ candidates[0] @ wa.U
    return EquivalenceWitness(U, a, b)


def sets_equivalent(a: MubList | Sequence, b: MubList | Sequence, tol: float = DEFAULT_TOL):
    """Order-insensitive variant: tries every reordering of ``b`` (at most 5 bases).

    Goes beyond list equivalence, under which reordered lists can be
    inequivalent. Returns ``(witness, order)`` or ``None``.
    """
    b = b if isinstance(b, MubList) else MubList(b, tol)
    if len(b) > 5:
        raise ValueError("unordered comparison is limited to 5 bases")
    for order in itertools.permutations(range(len(b))):
        w = lists_equivalent(a, MubList([b[i] for i in order], validate=False), tol)
        if w is not None:
            return w, order
    return None
