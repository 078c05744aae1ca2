from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from univsub.groups import SU2, SU3, Product, Torus, sample_group_element
from univsub.representations import (
    Projector,
    Subspace,
    adjoint,
    complexified_adjoint,
    compress,
    defining,
    direct_sum,
    rational_unit_quaternion,
    su2_irrep,
    t_invariant_hyperplanes,
    twist,
    weight_decomposition,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)

REPS = [
    su2_irrep(1),
    su2_irrep(4),
    complexified_adjoint(SU2()),
    complexified_adjoint(SU3()),
    adjoint(SU3()),
    defining(SU3()),
    twist(defining(SU2()), 3),
    direct_sum([su2_irrep(2), complexified_adjoint(SU2())], group=Product((SU2(), SU2()))),
]


def _compose(G, g, h):
    if isinstance(G, Product):
        params = [f.from_matrix(a.matrix @ b.matrix) for f, a, b in zip(G.factors, g.components(), h.components())]
        return G.element(np.concatenate(params))
    return G.element(G.from_matrix(g.matrix @ h.matrix))


@pytest.mark.parametrize("rep", REPS, ids=lambda r: r.label)
def test_homomorphism(rep):
    rng = np.random.default_rng(11)
    G = rep.group
    for _ in range(5):
        g, h = sample_group_element(G, rng), sample_group_element(G, rng)
        assert np.allclose(rep(_compose(G, g, h)), rep(g) @ rep(h), atol=1e-10)


@pytest.mark.parametrize("rep", REPS, ids=lambda r: r.label)
def test_unitary_for_inner_product(rep):
    rng = np.random.default_rng(4)
    M = rep.inner_product
    for _ in range(5):
        R = rep(sample_group_element(rep.group, rng))
        assert np.allclose(R.conj().T @ M @ R, M, atol=1e-10)


@pytest.mark.parametrize("rep", [r for r in REPS if r.weights is not None], ids=lambda r: r.label)
def test_weights_match_torus_action(rep):
    rng = np.random.default_rng(8)
    theta = rng.uniform(-np.pi, np.pi, rep.group.rank)
    R = rep(rep.group.torus_element(theta))
    expected = np.diag([np.exp(1j * np.dot(w, theta)) for w in rep.weights])
    assert np.allclose(R, expected, atol=1e-10)


def test_irrep_weights():
    assert su2_irrep(3).weights == ((-3,), (-1,), (1,), (3,))
    assert weight_decomposition(su2_irrep(2)).weights() == [(-2,), (0,), (2,)]


def test_binary_form_action_by_transpose():
    # f(x, y) = x^2 y in U_3; (g.f)(v) = f(g^T v)
    rng = np.random.default_rng(0)
    g = sample_group_element(SU2(), rng)
    coeffs = np.zeros(4, dtype=complex)
    coeffs[2] = 1
    new = su2_irrep(3)(g) @ coeffs
    v = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    w = g.matrix.T @ v
    lhs = sum(new[i] * v[0] ** i * v[1] ** (3 - i) for i in range(4))
    assert np.isclose(lhs, w[0] ** 2 * w[1])


@given(st.tuples(*[st.fractions(min_value=-5, max_value=5, max_denominator=7)] * 3), seeds)
@settings(max_examples=25, deadline=None)
def test_exact_irrep_matches_float(u, _seed):
    q = rational_unit_quaternion(u)
    assert sum(x * x for x in q) == 1
    rep = su2_irrep(3)
    exact = rep.realize_exact(q)
    g = SU2().element(np.array([float(x) for x in q]))
    approx = rep(g)
    num = np.array([[complex(float(z.x), float(z.y)) for z in row] for row in exact])
    assert np.allclose(num, approx, atol=1e-12)


def test_twist_weights_carry_central_part():
    rep = twist(defining(SU2()), 2)
    assert rep.weights == ((2, 1), (2, -1))
    assert isinstance(rep.group, Product) and isinstance(rep.group.factors[0], Torus)


def test_hyperplanes_and_weights():
    planes = t_invariant_hyperplanes(5)
    assert len(planes) == 6
    assert [k for _, k in planes] == [-5, -3, -1, 1, 3, 5]
    assert all(V.dim == 5 for V, _ in planes)


def test_compress_onto_invariant_subspace():
    rep = direct_sum([defining(SU2()), defining(SU2())])
    basis = np.eye(4, dtype=complex)[:, 2:]
    sub = compress(rep, basis)
    g = sample_group_element(SU2(), np.random.default_rng(1))
    assert np.allclose(sub(g), g.matrix)


@given(seeds, st.floats(min_value=1e-3, max_value=1e3))
@settings(max_examples=30, deadline=None)
def test_normalized_distance_scale_invariant(seed, scale):
    rng = np.random.default_rng(seed)
    rep = su2_irrep(4)
    V = Subspace.weight_complement(rep, [1, 3])
    P = Projector(V)
    v = rng.standard_normal(5) + 1j * rng.standard_normal(5)
    d = P.normalized_distance(v)
    assert 0 <= d <= 1 + 1e-12
    assert np.isclose(P.normalized_distance(scale * np.exp(1j * seed) * v), d, rtol=1e-9)


def test_distance_for_weight_complement_uses_gram_matrix():
    rep = su2_irrep(2)
    V = Subspace.weight_complement(rep, [1])
    v = np.array([0, 1, 0], dtype=complex)
    assert np.isclose(Projector(V).normalized_distance(v), 1.0)
    assert Projector(V).normalized_distance(np.array([1, 0, 0], dtype=complex)) == 0.0


def test_subspace_validation():
    rep = su2_irrep(2)
    with pytest.raises(ValueError):
        Subspace.span(rep, [[1, 0, 0], [2, 0, 0]])
    with pytest.raises(ValueError):
        Subspace.weight_complement(rep, [3])
    assert Subspace.coordinate_span(rep, [0]).dim == 1
    assert not Subspace.span(rep, np.eye(3)).is_proper
    assert Subspace.weight_complement(rep, [0]).contains_exact([0, Fraction(1, 2), 3])


@pytest.mark.parametrize("n", range(1, 13))
def test_irrep_unitary_up_to_12(n):
    rep = su2_irrep(n)
    M = rep.inner_product
    rng = np.random.default_rng(n)
    for _ in range(100):
        u = rng.standard_normal(n + 1) + 1j * rng.standard_normal(n + 1)
        v = rep(sample_group_element(SU2(), rng)) @ u
        assert abs(np.vdot(v, M @ v).real - np.vdot(u, M @ u).real) < 1e-10 * np.vdot(u, M @ u).real


@given(st.fractions(min_value=-3, max_value=3, max_denominator=9), st.integers(1, 8))
@settings(max_examples=30, deadline=None)
def test_hyperplanes_torus_stable_exactly(s, n):
    # rational torus point e^{i theta} = (re, im); the exact action is diagonal
    from univsub.representations import rational_torus_point

    re, im = rational_torus_point(s)
    q = (re, Fraction(0), Fraction(0), im)
    M = su2_irrep(n).realize_exact(q)
    for i, row in enumerate(M):
        for j, z in enumerate(row):
            if i != j:
                assert not z
    for V, _ in t_invariant_hyperplanes(n):
        (i,) = V.excluded
        coords = [Fraction(1)] * (n + 1)
        coords[i] = Fraction(0)
        image = [sum(M[r][c] * coords[c] for c in range(n + 1)) for r in range(n + 1)]
        assert V.contains_exact(image)
