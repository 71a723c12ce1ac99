"""Acceptance suite: one test per criterion, summary printed by conftest."""
import itertools
import math

import numpy as np
import pytest

from muborbits.basis import BasisPoint, is_hadamard_matrix, mubness, points_equal
from muborbits.cli import fourier
from muborbits.dim4 import (
    TripleParams,
    d_matrix,
    dim4_group,
    f4,
    group_b,
    h4,
    h4_parameters,
    orbit_map,
    r_matrix,
    standard_pair,
    standard_triple,
    triple_equivalent,
    triple_generators,
)
from muborbits.equivalence import MubList, hadamard_equivalent, lists_equivalent, standard_form
from muborbits.linalg import random_unitary
from muborbits.monomial import (
    ProjectiveSet,
    compose,
    generate_group,
    is_monomial,
    projective_from_monomial,
    random_monomial,
)
from muborbits.stabilizer import center_residual, list_stabilizer, orbit, verify_center_proposition

PI = math.pi
EPS_SET = 1e-7
SEED = 7


@pytest.fixture(scope="module")
def G():
    return list_stabilizer(standard_pair())


def _generic_params(rng, count, margin=1e-3):
    out = []
    while len(out) < count:
        p = TripleParams(*(rng.random(2) * PI))
        images = orbit_map(p)
        gaps = [a.distance(b) for a, b in itertools.combinations(images, 2)]
        if len(images) == 4 and min(gaps) > margin:
            out.append(p)
    return out


def _scramble(H, rng):
    n = H.shape[0]
    return random_monomial(n, rng).to_matrix() @ H @ random_monomial(n, rng).to_matrix()


def _witness_residual(H1, H2, found):
    M1, M2 = found
    return np.max(np.abs(H1 - M1.to_matrix() @ H2 @ M2.to_matrix()))


def test_criterion_01_pair_stabilizer_order(G):
    assert len(G) == 32
    perms = [g.monomial.perm for g in G]
    assert set(perms) == set(group_b()) and len(set(group_b())) == 8
    for g in G:
        assert points_equal(BasisPoint(f4(0.0)).act(g.matrix), BasisPoint(f4(0.0)))
        assert is_monomial(g.matrix)


def test_criterion_02_structure_products(G):
    built = ProjectiveSet(dim4_group().elements, EPS_SET)
    assert len(built) == 32
    assert built.same_as(G.elements)
    for cycles in [((1, 2),), ((3, 4),), ((1, 3), (2, 4))]:
        for a in range(4):
            g = projective_from_monomial(compose(r_matrix(*cycles), d_matrix(a)))
            assert g in built


def test_criterion_03_triple_stabilizer():
    rng = np.random.default_rng(SEED)
    generated = generate_group(triple_generators())
    for _ in range(20):
        y, z = rng.random(2) * PI
        S = list_stabilizer(standard_triple((y, z)))
        assert len(S) == 8
        for g in S:
            assert (g @ g).is_identity()
        assert S.as_set().same_as(generated)


def test_criterion_04_orbit_formulas(G):
    rng = np.random.default_rng(SEED + 1)
    for p in _generic_params(rng, 50):
        orb = orbit(G, BasisPoint(h4(p)), EPS_SET)
        closed = orbit_map(p)
        assert len(orb) == 4 == len(closed)
        for q in closed:
            assert BasisPoint(h4(q)) in orb
        for pt in orb.points:
            assert any(points_equal(pt, BasisPoint(h4(q)), EPS_SET) for q in closed)
            found = h4_parameters(pt)
            assert min(found.distance(q) for q in closed) <= 1e-6


def test_criterion_05_triple_proposition():
    rng = np.random.default_rng(SEED + 2)
    related = []
    for p in _generic_params(rng, 20):
        images = orbit_map(p)
        related.append((p, images[int(rng.integers(len(images)))]))
    unrelated = [(TripleParams(*(rng.random(2) * PI)), TripleParams(*(rng.random(2) * PI)))
                 for _ in range(20)]
    for (p, q), expect in [(pair, True) for pair in related] + [(pair, False) for pair in unrelated]:
        assert triple_equivalent(p, q) is expect
        a = standard_triple(p).act(random_unitary(4, rng=rng))
        b = standard_triple(q).act(random_unitary(4, rng=rng))
        w = lists_equivalent(a, b)
        assert (w is not None) is expect
        if w is not None:
            assert w.verify()


@pytest.mark.parametrize("name,H", [
    ("F4(0)", f4(0.0)), ("F4(1)", f4(1.0)), ("F4(pi)", f4(PI)),
    ("F2", fourier(2)), ("F3", fourier(3)), ("F4", fourier(4)), ("F5", fourier(5)), ("F6", fourier(6)),
])
def test_criterion_06_center_proposition(name, H):
    assert verify_center_proposition(H, trials=100, tol=1e-9)
    rng = np.random.default_rng(SEED + 3)
    n = H.shape[0]
    for _ in range(100):
        A = np.diag(np.exp(2j * PI * rng.random(n)))
        assert center_residual(H, A) <= 1e-9


def test_criterion_07_metric_properties():
    rng = np.random.default_rng(SEED + 4)
    for n in (2, 3, 4, 5):
        bound = math.sqrt(n - 1) + 1e-9
        for _ in range(100):
            p = BasisPoint(random_unitary(n, rng=rng))
            q = BasisPoint(random_unitary(n, rng=rng))
            U = random_unitary(n, rng=rng)
            d = mubness(p, q)
            assert mubness(p, p) <= 1e-9
            assert abs(d - mubness(q, p)) == 0
            assert 0 <= d <= bound
            assert abs(mubness(p.act(U), q.act(U)) - d) <= 1e-9


def test_criterion_08_single_class_dimensions():
    rng = np.random.default_rng(SEED + 5)
    for n in (2, 3, 5):
        F = fourier(n)
        for _ in range(20):
            S = _scramble(F, rng)
            found = hadamard_equivalent(S, F)
            assert found is not None
            assert _witness_residual(S, F, found) <= 1e-9


def test_criterion_09_f4_family_separation():
    assert hadamard_equivalent(f4(0.0), f4(1.0)) is None
    rng = np.random.default_rng(SEED + 6)
    for _ in range(10):
        x = rng.random() * PI
        S = _scramble(f4(x), rng)
        found = hadamard_equivalent(f4(x), S)
        assert found is not None
        assert _witness_residual(f4(x), S, found) <= 1e-9


def test_criterion_10_standard_form():
    rng = np.random.default_rng(SEED + 7)
    s = 0.5
    for k in (2, 3):
        for _ in range(20):
            y, z = rng.random(2) * PI
            base = [np.eye(4), f4(rng.random() * PI), h4((y, z))][:k]
            if k == 3:
                base[1] = f4(0.0)
            mubs = MubList(base).act(random_unitary(4, rng=rng))
            std, w = standard_form(mubs)
            assert np.max(np.abs(std[0].rep - np.eye(4))) <= 1e-9
            for b in std.bases[1:]:
                assert is_hadamard_matrix(b.rep, 1e-9)
                assert np.max(np.abs(b.rep[0, :] - s)) <= 1e-9
            assert np.max(np.abs(std[1].rep[:, 0] - s)) <= 1e-9
            assert w.verify()
