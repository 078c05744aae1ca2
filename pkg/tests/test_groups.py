import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from univsub.errors import ParentMismatch, UnsupportedGroup
from univsub.groups import (
    SU2,
    SU3,
    AlgebraElement,
    Complexified,
    Product,
    SU2Extension,
    Torus,
    UpperTriangular,
    adjoint_action,
    build_root_system,
    exp_map,
    positive_systems,
    sample_group_element,
    weyl_group,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)


@pytest.mark.parametrize("spec", [SU2(), SU3(), Torus(2), Product((SU2(), SU3()))])
def test_random_elements_are_in_the_group(spec):
    rng = np.random.default_rng(3)
    for _ in range(20):
        assert sample_group_element(spec, rng).check()


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_su3_samples_unitary_with_unit_determinant(seed):
    m = sample_group_element(SU3(), np.random.default_rng(seed)).matrix
    assert np.allclose(m.conj().T @ m, np.eye(3), atol=1e-10)
    assert abs(np.linalg.det(m) - 1) < 1e-10


def test_upper_triangular_samples():
    spec = UpperTriangular(4)
    rng = np.random.default_rng(1)
    for _ in range(10):
        g = sample_group_element(spec, rng)
        assert g.check()
        assert np.allclose(g.inverse_matrix() @ g.matrix, np.eye(4))


def test_su2_extension_shape():
    spec = SU2Extension()
    g = sample_group_element(spec, np.random.default_rng(2))
    m = g.matrix
    assert np.allclose(m[2:, :2], 0)
    assert np.allclose(m[:2, :2], m[2:, 2:])
    assert np.allclose(m[:2, :2].conj().T @ m[:2, :2], np.eye(2))


def test_complexified_is_not_compact():
    assert not Complexified(SU2()).compact
    assert SU2().compact


def test_exp_of_su2_algebra_lands_in_su2():
    X = AlgebraElement(np.array([[1j, 2 + 1j], [-2 + 1j, -1j]]) * 0.7, SU2())
    assert X.check()
    g = exp_map(X)
    assert g.check()


def test_adjoint_action_preserves_algebra():
    rng = np.random.default_rng(5)
    g = sample_group_element(SU3(), rng)
    for b in SU3().algebra_basis():
        Y = adjoint_action(g, AlgebraElement(b, SU3()))
        assert Y.check()


def test_adjoint_action_rejects_other_group():
    g = sample_group_element(SU3(), np.random.default_rng(0))
    with pytest.raises(ParentMismatch):
        adjoint_action(g, AlgebraElement(SU2().algebra_basis()[0], SU2()))


def test_root_systems():
    a1 = build_root_system(SU2())
    assert a1.positive_roots == ((2,),)
    a2 = build_root_system(SU3())
    assert len(a2.roots) == 6
    assert set(a2.positive_roots) == {(1, -1), (1, 2), (2, 1)}
    with pytest.raises(UnsupportedGroup):
        build_root_system(UpperTriangular(3))


def _brute_force_closure(gens, rank):
    # multiply out words until nothing new appears
    eye = tuple(map(tuple, np.eye(rank, dtype=int)))
    seen = {eye}
    frontier = [np.eye(rank, dtype=int)]
    while frontier:
        nxt = []
        for w, s in itertools.product(frontier, gens):
            v = w @ s
            k = tuple(map(tuple, v))
            if k not in seen:
                seen.add(k)
                nxt.append(v)
        frontier = nxt
    return seen


@pytest.mark.parametrize("spec,order", [(SU2(), 2), (SU3(), 6), (Product((SU2(), SU2())), 4)])
def test_weyl_group_matches_brute_force(spec, order):
    rs = build_root_system(spec)
    W = weyl_group(rs)
    gens = [np.eye(rs.rank, dtype=int) - np.outer(a, c) for a, c in zip(rs.simple_roots, rs.simple_coroots)]
    assert W.order == order
    assert set(W.elements) == _brute_force_closure(gens, rs.rank)


def test_weyl_group_permutes_roots():
    rs = build_root_system(SU3())
    W = weyl_group(rs)
    for w in W.elements:
        assert {W.act(w, a) for a in rs.roots} == set(rs.roots)


def test_positive_systems_of_a2():
    systems = positive_systems(build_root_system(SU3()))
    assert len(systems) == 6
    assert all(len(p) == 3 for p in systems)


@pytest.mark.parametrize("spec", [SU2(), SU3()], ids=lambda s: s.label)
def test_sampling_invariants_many(spec):
    rng = np.random.default_rng(123)
    mats = np.array([sample_group_element(spec, rng).matrix for _ in range(10_000)])
    n = mats.shape[1]
    gram = np.einsum("kji,kjl->kil", mats.conj(), mats)
    assert np.abs(gram - np.eye(n)).max() < 1e-12
    assert np.abs(np.linalg.det(mats) - 1).max() < 1e-12


def test_adjoint_action_is_a_homomorphism():
    rng = np.random.default_rng(6)
    su2 = SU2()
    X = AlgebraElement(su2.algebra_basis()[1], su2)
    for _ in range(100):
        g, h = sample_group_element(su2, rng), sample_group_element(su2, rng)
        gh = su2.element(su2.from_matrix(g.matrix @ h.matrix))
        lhs = adjoint_action(gh, X).matrix
        rhs = adjoint_action(g, adjoint_action(h, X)).matrix
        assert np.abs(lhs - rhs).max() < 1e-10


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_weyl_order_of_a1_powers(k):
    spec = SU2() if k == 1 else Product(tuple(SU2() for _ in range(k)))
    assert weyl_group(build_root_system(spec)).order == 2**k


def test_exp_map_examples():
    su2 = SU2()
    assert np.allclose(exp_map(AlgebraElement(np.zeros((2, 2), dtype=complex), su2)).matrix, np.eye(2))
    theta = 0.37
    g = exp_map(AlgebraElement(np.diag([1j * theta, -1j * theta]), su2))
    assert np.allclose(g.matrix, np.diag([np.exp(1j * theta), np.exp(-1j * theta)]))
    # a quarter turn about a transverse axis lands in N(T) minus T
    w = exp_map(AlgebraElement(np.pi / 2 * np.array([[0, 1], [-1, 0]], dtype=complex), su2)).matrix
    assert np.allclose(w, [[0, 1], [-1, 0]])
    t = np.diag([np.exp(0.5j), np.exp(-0.5j)])
    conj = w @ t @ w.conj().T
    assert np.allclose(conj, np.diag(np.diag(conj)))
    assert not np.allclose(w, np.diag(np.diag(w)))  # w is not in T
