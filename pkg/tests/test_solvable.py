from fractions import Fraction

import numpy as np
import pytest
import scipy.linalg
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from univsub.errors import NotProper, NotSolvable, UnsupportedGroup
from univsub.groups import SU2, UpperTriangular
from univsub.representations import Projector, Subspace, defining
from univsub.solvable import (
    _Exact,
    certificate_spread,
    derived_series_dims,
    lie_algebra_action,
    random_hyperplane,
    search_against_certificate,
    solvable_flag,
    solvable_witness,
)
from univsub.universality import SearchConfig

seeds = st.integers(min_value=0, max_value=2**32 - 1)


def _unit(n, i, j):
    m = np.zeros((n, n))
    m[i, j] = 1
    return m


def _borel(n):
    return [_unit(n, i, j) for i in range(n) for j in range(i, n)]


def _nilpotent(n):
    return [_unit(n, i, j) for i in range(n) for j in range(i + 1, n)]


def _same_span(a, b, tol=1e-9):
    return np.linalg.matrix_rank(np.hstack([a, b]), tol=tol) == a.shape[1] == b.shape[1]


def test_heisenberg_flag_against_joint_kernel():
    gens = [_unit(3, 0, 1), _unit(3, 1, 2), _unit(3, 0, 2)]
    flag = solvable_flag(gens)
    assert flag.check()
    # oracle: the first flag line is the joint kernel of the generators
    kernel = scipy.linalg.null_space(np.vstack(gens))
    assert kernel.shape[1] == 1
    assert _same_span(flag.filtration[0], kernel)
    assert _same_span(flag.filtration[1], np.eye(3)[:, :2])
    assert all(abs(c) < 1e-12 for row in flag.characters for c in row)


def test_upper_triangular_2x2_flag_is_standard():
    rep = defining(UpperTriangular(2))
    flag = solvable_flag(lie_algebra_action(rep))
    assert _same_span(flag.filtration[0], np.eye(2)[:, :1])


def test_diagonal_flag_and_characters():
    gens = [np.diag([1.0, 2.0, 3.0]), np.diag([0.0, 5.0, -1.0])]
    flag = solvable_flag(gens)
    assert flag.check()
    # the lexicographically first flag is the coordinate flag
    for j in range(3):
        assert _same_span(flag.filtration[j], np.eye(3)[:, : j + 1])
    assert np.allclose(np.array(flag.characters), [[1, 0], [2, 5], [3, -1]])


def test_sl2_is_not_solvable():
    with pytest.raises(NotSolvable):
        solvable_flag([_unit(2, 0, 1), _unit(2, 1, 0)])


def test_derived_series_of_borel():
    be = _Exact()
    basis = [be.matrix(m) for m in _borel(3)]
    assert derived_series_dims(be, basis) == [6, 3, 1, 0]


@given(seeds, st.sampled_from(["borel", "nilpotent"]))
@settings(max_examples=12, deadline=None)
def test_conjugated_algebras(seed, kind):
    rng = np.random.default_rng(seed)
    n = 4
    P = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Pinv = np.linalg.inv(P)
    base = _borel(n) if kind == "borel" else _nilpotent(n)
    gens = [P @ m @ Pinv for m in base]
    flag = solvable_flag(gens)
    assert flag.check()
    # conjugating back gives the standard flag
    for j in range(n):
        assert _same_span(Pinv @ flag.filtration[j], np.eye(n)[:, : j + 1], tol=1e-6)


def test_exact_mode_on_rational_input():
    P = sympy.Matrix([[1, 2, 0], [0, 1, 3], [1, 0, 1]])
    Pinv = P.inv()
    gens = [P * sympy.Matrix(m.astype(int)) * Pinv for m in _borel(3)]
    flag = solvable_flag(gens, exact=True)
    assert flag.exact
    assert flag.check()
    first = flag.exact_vectors[0]
    # exact check: the first vector is a common eigenvector of every generator
    for g in gens:
        image = g * first
        assert sympy.Matrix.hstack(first, image).rank() == 1


def test_fraction_entries_count_as_rational():
    gens = [np.array([[Fraction(1, 3), Fraction(1, 7)], [0, Fraction(2, 5)]], dtype=object)]
    assert solvable_flag(gens, exact=True).exact


def test_witness_for_line_and_coordinate_spaces():
    rep = defining(UpperTriangular(2))
    w = solvable_witness(rep, Subspace.span(rep, [[1, 0]]))
    assert w.level == 2
    assert abs(abs(w.vector[1]) - 1) < 1e-9
    w = solvable_witness(rep, Subspace.span(rep, [[0, 1]]))
    assert w.level == 1
    assert w.certificate == pytest.approx(1.0)


def test_witness_errors():
    rep = defining(UpperTriangular(2))
    with pytest.raises(NotProper):
        solvable_witness(rep, Subspace.span(rep, np.eye(2)))
    with pytest.raises(UnsupportedGroup):
        solvable_witness(defining(SU2()), Subspace.span(defining(SU2()), [[1, 0]]))


@given(seeds)
@settings(max_examples=8, deadline=None)
def test_random_hyperplane_witness_is_certified(seed):
    rep = defining(UpperTriangular(3))
    rng = np.random.default_rng(seed)
    V = random_hyperplane(rep, rng)
    w = solvable_witness(rep, V)
    assert w.level == 1
    assert 0 < w.certificate <= 1
    # the witness really lies outside V
    assert Projector(V).normalized_distance(w.vector) > 0
    assert certificate_spread(w, 200, seed=seed) < 1e-10


def test_hyperplane_through_flag_line_gives_deeper_witness():
    rep = defining(UpperTriangular(3))
    rng = np.random.default_rng(2)
    V = random_hyperplane(rep, rng, containing=np.eye(3)[0])
    w = solvable_witness(rep, V)
    assert w.level == 2 and w.depth == 1
    assert certificate_spread(w, 200) < 1e-10


def test_search_never_beats_certificate():
    rep = defining(UpperTriangular(3))
    V = random_hyperplane(rep, np.random.default_rng(9))
    w = solvable_witness(rep, V)
    cfg = SearchConfig(restarts=16)
    assert search_against_certificate(w, cfg) >= w.certificate - cfg.tolerance
