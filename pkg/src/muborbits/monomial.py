"""The monomial group C_n (permutation times phases) and projective elements.

Permutation convention, used everywhere in the package: a permutation is a
0-based tuple ``perm`` and its matrix has the nonzero of row ``i`` in column
``perm[i]``. With this convention ``R(a) @ R(b) == R(compose_perms(a, b))``
where ``compose_perms(a, b)[i] == b[a[i]]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatch, NotMonomial
from .linalg import DEFAULT_TOL, as_matrix, dagger

GROUP_TOL = 1e-7
_UNIT_TOL = 1e-12


def perm_matrix(perm: Sequence[int]) -> np.ndarray:
    n = len(perm)
    M = np.zeros((n, n), dtype=np.complex128)
    M[np.arange(n), list(perm)] = 1.0
    return M


def compose_perms(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Permutation of the matrix product ``R(a) @ R(b)``."""
    return tuple(b[a[i]] for i in range(len(a)))


def invert_perm(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def perm_from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """Build a permutation from 1-based cycles, e.g. ``[(1, 3), (2, 4)]``."""
    perm = list(range(n))
    for cyc in cycles:
        for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
            perm[a - 1] = b - 1
    return tuple(perm)


def cycle_string(perm: Sequence[int]) -> str:
    """1-based cycle notation; ``"id"`` for the identity."""
    seen, out = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, i = [], start
        while i not in seen:
            seen.add(i)
            cyc.append(i + 1)
            i = perm[i]
        out.append("(" + "".join(str(c) for c in cyc) + ")")
    return "".join(out) or "id"


@dataclass(frozen=True, eq=False)
class MonomialElement:
    perm: tuple[int, ...]
    phases: np.ndarray

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        phases = np.asarray(self.phases, dtype=np.complex128).reshape(-1)
        if sorted(perm) != list(range(len(perm))) or len(perm) < 1:
            raise ValueError(f"not a permutation: {perm}")
        if phases.shape != (len(perm),):
            raise DimensionMismatch("phases and permutation have different lengths")
        if np.max(np.abs(np.abs(phases) - 1.0)) > _UNIT_TOL:
            raise ValueError("phases must have unit modulus")
        phases.setflags(write=False)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "phases", phases)

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "MonomialElement":
        return cls(tuple(range(n)), np.ones(n))

    @classmethod
    def diagonal(cls, phases) -> "MonomialElement":
        phases = np.asarray(phases, dtype=np.complex128)
        return cls(tuple(range(len(phases))), phases)

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "MonomialElement":
        return cls(tuple(perm), np.ones(len(perm)))

    def to_matrix(self) -> np.ndarray:
        M = np.zeros((self.n, self.n), dtype=np.complex128)
        M[np.arange(self.n), list(self.perm)] = self.phases
        return M

    def compose(self, other: "MonomialElement") -> "MonomialElement":
        return compose(self, other)

    def inverse(self) -> "MonomialElement":
        return inverse(self)

    def __matmul__(self, other):
        if isinstance(other, MonomialElement):
            return compose(self, other)
        return NotImplemented

    def is_diagonal(self) -> bool:
        return self.perm == tuple(range(self.n))

    def allclose(self, other: "MonomialElement", tol: float = _UNIT_TOL) -> bool:
        return self.perm == other.perm and bool(np.max(np.abs(self.phases - other.phases)) <= tol)

    def __repr__(self):
        ph = ", ".join(f"{z.real:.6g}{z.imag:+.6g}j" for z in self.phases)
        return f"MonomialElement({cycle_string(self.perm)}, [{ph}])"


def compose(a: MonomialElement, b: MonomialElement) -> MonomialElement:
    """Group law: ``to_matrix(compose(a, b)) == a.to_matrix() @ b.to_matrix()``."""
    if a.n != b.n:
        raise DimensionMismatch(f"cannot compose elements of C_{a.n} and C_{b.n}")
    perm = compose_perms(a.perm, b.perm)
    phases = a.phases * b.phases[list(a.perm)]
    return MonomialElement(perm, phases)


def inverse(a: MonomialElement) -> MonomialElement:
    inv = invert_perm(a.perm)
    phases = np.empty(a.n, dtype=np.complex128)
    phases[list(a.perm)] = np.conj(a.phases)
    return MonomialElement(inv, phases)


def random_monomial(n: int, rng) -> MonomialElement:
    """Uniformly random permutation with uniformly random phases."""
    return MonomialElement(tuple(int(i) for i in rng.permutation(n)),
                           np.exp(2j * np.pi * rng.random(n)))


def monomial_decompose(M, tol: float = DEFAULT_TOL) -> MonomialElement:
    """Split ``M`` into permutation and phases, or raise :class:`NotMonomial`.

    Every row and column must carry exactly one entry of modulus at least
    ``1 - tol``; every other entry must be at most ``tol`` in modulus.
    """
    M = as_matrix(M)
    absM = np.abs(M)
    big = absM >= 1.0 - tol
    small = absM <= tol
    if not np.all(big | small):
        raise NotMonomial("matrix has entries that are neither ~0 nor ~unimodular")
    if not (np.all(big.sum(axis=1) == 1) and np.all(big.sum(axis=0) == 1)):
        raise NotMonomial("matrix does not have exactly one nonzero per row and column")
    perm = tuple(int(j) for j in np.argmax(big, axis=1))
    vals = M[np.arange(M.shape[0]), list(perm)]
    return MonomialElement(perm, vals / np.abs(vals))


def is_monomial(M, tol: float = DEFAULT_TOL) -> bool:
    try:
        monomial_decompose(M, tol)
    except NotMonomial:
        return False
    return True


def _anchor_phase(M: np.ndarray, tol: float) -> complex:
    flat = M.reshape(-1)
    idx = int(np.argmax(np.abs(flat) > tol))
    z = flat[idx]
    return np.conj(z) / abs(z)


@dataclass(frozen=True, eq=False)
class ProjectiveElement:
    """A unitary modulo global phase, stored in normalised form.

    The first entry (row-major) with modulus above the tolerance is real
    positive. ``monomial`` is filled in when the element lies in C_n.
    """

    matrix: np.ndarray
    monomial: MonomialElement | None = None

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def compose(self, other: "ProjectiveElement") -> "ProjectiveElement":
        if self.monomial is not None and other.monomial is not None:
            return projective_from_monomial(compose(self.monomial, other.monomial))
        return projective_normalize(self.matrix @ other.matrix)

    def __matmul__(self, other):
        if isinstance(other, ProjectiveElement):
            return self.compose(other)
        return NotImplemented

    def inverse(self) -> "ProjectiveElement":
        if self.monomial is not None:
            return projective_from_monomial(inverse(self.monomial))
        return projective_normalize(dagger(self.matrix))

    def conjugate_by(self, U: np.ndarray) -> "ProjectiveElement":
        """``U @ g @ U^dagger`` as a projective element."""
        return projective_normalize(U @ self.matrix @ dagger(U))

    def equals(self, other: "ProjectiveElement", tol: float = GROUP_TOL) -> bool:
        return self.n == other.n and bool(np.max(np.abs(self.matrix - other.matrix)) <= tol)

    def is_identity(self, tol: float = GROUP_TOL) -> bool:
        return bool(np.max(np.abs(self.matrix - np.eye(self.n))) <= tol)

    def key(self, decimals: int = 7) -> tuple:
        r = np.round(self.matrix, decimals) + (0.0 + 0.0j)
        return (self.n,) + tuple(np.concatenate([r.real.ravel(), r.imag.ravel()]).tolist())


def projective_normalize(M, tol: float = DEFAULT_TOL) -> ProjectiveElement:
    """Remove the global phase of a unitary by anchoring its first nonzero entry."""
    M = as_matrix(M)
    N = M * _anchor_phase(M, tol)
    mono = None
    try:
        mono = monomial_decompose(N, tol=max(tol, 1e-9))
    except NotMonomial:
        pass
    if mono is not None:
        return projective_from_monomial(mono)
    N.setflags(write=False)
    return ProjectiveElement(N, None)


def projective_from_monomial(m: MonomialElement) -> ProjectiveElement:
    # first nonzero in row-major order sits in row 0
    mono = MonomialElement(m.perm, m.phases * np.conj(m.phases[0]))
    M = mono.to_matrix()
    M.setflags(write=False)
    return ProjectiveElement(M, mono)


class ProjectiveSet:
    """Insertion-ordered set of projective elements.

    Lookup hashes entries rounded to 7 decimals and falls back to a linear
    scan, so elements straddling a rounding boundary are still found.
    """

    def __init__(self, elements: Iterable[ProjectiveElement] = (), tol: float = GROUP_TOL):
        self.tol = tol
        self._items: list[ProjectiveElement] = []
        self._index: dict[tuple, list[int]] = {}
        for g in elements:
            self.add(g)

    def __len__(self):
        return len(self._items)

    def __iter__(self):
        return iter(self._items)

    def __getitem__(self, i):
        return self._items[i]

    def find(self, g: ProjectiveElement) -> int:
        for i in self._index.get(g.key(), ()):
            if self._items[i].equals(g, self.tol):
                return i
        for i, h in enumerate(self._items):
            if h.equals(g, self.tol):
                return i
        return -1

    def __contains__(self, g: ProjectiveElement) -> bool:
        return self.find(g) >= 0

    def add(self, g: ProjectiveElement) -> bool:
        """Insert ``g``; returns False if an equal element was already present."""
        if self.find(g) >= 0:
            return False
        self._index.setdefault(g.key(), []).append(len(self._items))
        self._items.append(g)
        return True

    def same_as(self, other: Iterable[ProjectiveElement]) -> bool:
        other = other if isinstance(other, ProjectiveSet) else ProjectiveSet(other, self.tol)
        return len(other) == len(self) and all(g in other for g in self)


def generate_group(generators: Sequence[ProjectiveElement], limit: int = 100_000) -> ProjectiveSet:
    """Closure of ``generators`` under composition (finite groups only)."""
    if not generators:
        raise ValueError("need at least one generator")
    n = generators[0].n
    ident = projective_from_monomial(MonomialElement.identity(n))
    group = ProjectiveSet([ident])
    frontier = [ident]
    while frontier:
        new = []
        for g in frontier:
            for s in generators:
                h = g.compose(s)
                if group.add(h):
                    new.append(h)
        if len(group) > limit:
            raise RuntimeError("group closure exceeded the size limit; is the group finite?")
        frontier = new
    return group
