"""Closed-form dimension-4 objects and their cross-check against the generic machinery.

Covers the Hadamard family F4(x), the third-basis family H4(y, z) unbiased
to both the standard basis and F4(0), the diagonal group D_a, the
permutation group B and the closed-form orbit of H4(y, z).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .basis import BasisPoint, points_equal
from .equivalence import MubList
from .errors import MubError
from .linalg import DEFAULT_TOL
from .monomial import (
    GROUP_TOL,
    MonomialElement,
    ProjectiveSet,
    compose,
    generate_group,
    perm_from_cycles,
    projective_from_monomial,
)
from .stabilizer import StabilizerGroup, list_stabilizer, orbit

PI = math.pi


def _mod_pi(a: float) -> float:
    r = math.fmod(a, PI)
    if r < 0:
        r += PI
    return 0.0 if r >= PI else r


@dataclass(frozen=True)
class TripleParams:
    """Parameters ``(y, z)`` of H4, reduced mod pi into ``[0, pi)``."""

    y: float
    z: float

    def __post_init__(self):
        object.__setattr__(self, "y", _mod_pi(float(self.y)))
        object.__setattr__(self, "z", _mod_pi(float(self.z)))

    def distance(self, other: "TripleParams") -> float:
        return max(angular_distance(self.y, other.y), angular_distance(self.z, other.z))


def angular_distance(a: float, b: float) -> float:
    """Distance on the circle R / pi Z, so 0 and pi coincide."""
    d = abs(_mod_pi(a) - _mod_pi(b))
    return min(d, PI - d)


def f4(x: float) -> np.ndarray:
    w = 1j * np.exp(1j * math.fmod(x, 2 * PI))
    return 0.5 * np.array([
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, w, -w],
        [1, -1, -w, w],
    ], dtype=np.complex128)


def h4(p: TripleParams | tuple[float, float]) -> np.ndarray:
    if not isinstance(p, TripleParams):
        p = TripleParams(*p)
    ey, ez = np.exp(1j * p.y), np.exp(1j * p.z)
    return 0.5 * np.array([
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [-ey, ey, ez, -ez],
        [ey, -ey, ez, -ez],
    ], dtype=np.complex128)


_D_DIAGONALS = (
    (1, 1, 1, 1),
    (1, -1, 1j, -1j),
    (1, 1, -1, -1),
    (1, -1, -1j, 1j),
)


def d_matrix(a: int) -> MonomialElement:
    """``D_a``, realising Z_4 with ``D_a D_b = D_{a+b mod 4}``."""
    if a not in range(4):
        raise ValueError(f"D_a is defined for a in 0..3, got {a}")
    return MonomialElement.diagonal(_D_DIAGONALS[a])


B_CYCLES = (
    (),
    ((1, 2),),
    ((3, 4),),
    ((1, 2), (3, 4)),
    ((1, 3), (2, 4)),
    ((1, 3, 2, 4),),
    ((1, 4, 2, 3),),
    ((1, 4), (2, 3)),
)


def group_b() -> list[tuple[int, ...]]:
    return [perm_from_cycles(4, c) for c in B_CYCLES]


def r_matrix(*cycles) -> MonomialElement:
    """Permutation element from 1-based cycles, e.g. ``r_matrix((1, 3), (2, 4))``."""
    return MonomialElement.permutation(perm_from_cycles(4, cycles))


def standard_pair() -> MubList:
    return MubList([np.eye(4), f4(0.0)])


def standard_triple(p) -> MubList:
    return MubList([np.eye(4), f4(0.0), h4(p)])


def dim4_group() -> StabilizerGroup:
    """The 32 projective elements ``R_pi D_a`` for ``pi`` in B."""
    elems = ProjectiveSet()
    for perm in group_b():
        for a in range(4):
            elems.add(projective_from_monomial(compose(MonomialElement.permutation(perm), d_matrix(a))))
    return StabilizerGroup(4, tuple(sorted(elems, key=lambda g: g.key())), standard_pair())


def triple_generators():
    """``D_2``, ``R_(12)`` and ``R_(34)`` as projective elements."""
    return [projective_from_monomial(m) for m in (d_matrix(2), r_matrix((1, 2)), r_matrix((3, 4)))]


def _dedupe_params(items, tol):
    out: list[TripleParams] = []
    for q in items:
        if not any(q.distance(r) <= tol for r in out):
            out.append(q)
    return out


def orbit_map(p: TripleParams | tuple[float, float], tol: float = DEFAULT_TOL) -> list[TripleParams]:
    """Closed-form orbit of ``h_{y,z}``, deduplicated (size 4 generically)."""
    if not isinstance(p, TripleParams):
        p = TripleParams(*p)
    y, z = p.y, p.z
    images = [
        TripleParams(y, z),
        TripleParams(z + PI / 2, y + PI / 2),
        TripleParams(3 * PI / 2 - y, 3 * PI / 2 - z),
        TripleParams(PI - z, PI - y),
    ]
    return _dedupe_params(images, tol)


def triple_equivalent(p, q, tol: float = DEFAULT_TOL) -> bool:
    """Whether the triples ``(e, f0, h_p)`` and ``(e, f0, h_q)`` are equivalent."""
    q = q if isinstance(q, TripleParams) else TripleParams(*q)
    return any(q.distance(r) <= tol for r in orbit_map(p, tol))


def h4_parameters(point: BasisPoint, tol: float = 1e-7) -> TripleParams:
    """Recover ``(y, z)`` with ``point == h4(y, z) C_4``.

    Raises :class:`MubError` when the basis is not of that form.
    """
    V = point.rep
    if V.shape != (4, 4):
        raise MubError("h4 parameters need a 4-dimensional basis")
    V = V * (np.conj(V[0]) / np.abs(V[0]))[None, :] * 2.0
    plus = [j for j in range(4) if abs(V[1, j] - 1) <= 1e-6]
    minus = [j for j in range(4) if abs(V[1, j] + 1) <= 1e-6]
    if len(plus) != 2 or len(minus) != 2:
        raise MubError("basis is not of the form h4(y, z) C_4")
    y = float(np.angle(V[3, plus[0]]))
    z = float(np.angle(V[2, minus[0]]))
    params = TripleParams(y, z)
    if not points_equal(BasisPoint(h4(params)), point, tol):
        raise MubError("basis is not of the form h4(y, z) C_4")
    return params


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    degenerate: bool = False


@dataclass
class Dim4Report:
    params: TripleParams
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def degenerate(self) -> bool:
        return any(c.degenerate for c in self.checks)

    def mismatches(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]


def verify_dim4(p: TripleParams | tuple[float, float], tol: float = GROUP_TOL) -> Dim4Report:
    """Cross-check the closed-form orbit and stabilizer against the generic search.

    (a) orbit of h4(p) under the catalog group equals the closed-form images;
    (b) the triple stabilizer contains D_2, R_(12), R_(34), holds the group
    they generate and has order 32 / |orbit| (8 at generic points);
    (c) the orbit has 4 points, flagged degenerate rather than failed when
    closed-form images coincide.
    """
    if not isinstance(p, TripleParams):
        p = TripleParams(*p)
    report = Dim4Report(p)
    G = dim4_group()
    seed = BasisPoint(h4(p))
    numeric = orbit(G, seed, tol)
    closed = orbit_map(p, tol)
    closed_pts = [BasisPoint(h4(q)) for q in closed]

    matched = len(numeric) == len(closed_pts) and all(
        any(points_equal(a, b, tol) for b in numeric.points) for a in closed_pts)
    report.checks.append(Check(
        "orbit", matched,
        f"numeric orbit size {len(numeric)}, closed-form size {len(closed_pts)}"))

    try:
        stab = list_stabilizer(standard_triple(p))
        stab_set = stab.as_set(tol)
        gens = triple_generators()
        sub = generate_group(gens)
        has_gens = all(g in stab_set for g in gens) and all(g in stab_set for g in sub)
        order_ok = len(stab) * len(numeric) == len(G)
        generic_ok = len(closed) != 4 or (len(stab) == 8 and sub.same_as(stab_set))
        report.checks.append(Check(
            "stabilizer", has_gens and order_ok and generic_ok,
            f"order {len(stab)}, contains <D2, R(12), R(34)>: {has_gens}"))
    except MubError as exc:
        report.checks.append(Check("stabilizer", False, f"{type(exc).__name__}: {exc}"))

    if len(closed) == 4:
        report.checks.append(Check("orbit-size", len(numeric) == 4, f"orbit size {len(numeric)}"))
    else:
        report.checks.append(Check(
            "orbit-size", len(numeric) == len(closed),
            f"degenerate point: orbit size {len(numeric)}", degenerate=True))
    return report
