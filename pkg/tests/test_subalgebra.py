import numpy as np
import pytest
import sympy

from univsub.errors import InvalidRoots
from univsub.groups import SU2, SU3, Complexified, Torus, build_root_system
from univsub.obstruction import euler_characteristic_quotient
from univsub.subalgebra import (
    SubalgebraSpec,
    closedness_criterion,
    contains_positive_system,
    irrational_line,
    is_closed_root_set,
    is_maximal_rank,
    normalizer_subalgebra,
    rank_of_compact_subalgebra,
    sl3_root_subsets,
    subalgebra_catalog,
    t_stable_subalgebra,
)

A1 = build_root_system(SU2())
A2 = build_root_system(SU3())
I = sympy.I


def _normalizer_dim_exact(g_basis, h_basis):
    """dim {X = sum c_k g_k, c real : [X, h_j] = sum d_jl h_l} by an exact null space.

    Unknowns are the real c's and d's; each matrix equation splits into real
    and imaginary parts.  The d's are determined by X since h is a basis.
    """
    c = sympy.symbols(f"c0:{len(g_basis)}", real=True)
    d = sympy.symbols(f"d0:{len(h_basis) ** 2}", real=True)
    X = sum((ci * g for ci, g in zip(c, g_basis)), sympy.zeros(*g_basis[0].shape))
    eqs = []
    for j, hj in enumerate(h_basis):
        rhs = sum((d[j * len(h_basis) + l] * hl for l, hl in enumerate(h_basis)), sympy.zeros(*hj.shape))
        for entry in X * hj - hj * X - rhs:
            entry = sympy.expand(entry)
            eqs += [sympy.re(entry), sympy.im(entry)]
    A, _ = sympy.linear_eq_to_matrix(eqs, list(c) + list(d))
    return len(A.nullspace())


SU2_BASIS = [sympy.Matrix([[I, 0], [0, -I]]), sympy.Matrix([[0, 1], [-1, 0]]), sympy.Matrix([[0, I], [I, 0]])]


def _np(ms):
    return [np.array(m.evalf(), dtype=complex) for m in ms]


def test_normalizer_of_torus_in_su2():
    h = SubalgebraSpec(SU2(), tuple(_np(SU2_BASIS[:1])))
    assert len(normalizer_subalgebra(_np(SU2_BASIS), h)) == _normalizer_dim_exact(SU2_BASIS, SU2_BASIS[:1]) == 1
    assert closedness_criterion(_np(SU2_BASIS), h)


def test_normalizer_of_borel_in_sl2():
    # real basis of sl(2, C): su(2) and i su(2)
    g = SU2_BASIS + [I * m for m in SU2_BASIS]
    b = [sympy.Matrix([[1, 0], [0, -1]]), sympy.Matrix([[I, 0], [0, -I]]),
         sympy.Matrix([[0, 1], [0, 0]]), sympy.Matrix([[0, I], [0, 0]])]
    h = SubalgebraSpec(Complexified(SU2()), tuple(_np(b)))
    assert len(normalizer_subalgebra(_np(g), h)) == _normalizer_dim_exact(g, b) == 4
    assert closedness_criterion(_np(g), h)


def test_normalizer_of_block_su2_in_su3():
    entry = next(e for e in subalgebra_catalog() if e.name == "su(2)" and isinstance(e.ambient, SU3))
    h = entry.subalgebra
    N = normalizer_subalgebra(SU3(), h)
    assert len(N) == 4  # u(2)
    assert SubalgebraSpec(SU3(), tuple(N)).contains(h.basis)
    assert not closedness_criterion(SU3(), h)


def test_normalizer_of_whole_algebra():
    h = SubalgebraSpec(SU3(), tuple(SU3().algebra_basis()))
    assert len(normalizer_subalgebra(SU3(), h)) == 8


def test_irrational_line():
    entry = irrational_line()
    assert len(normalizer_subalgebra(Torus(2), entry.subalgebra)) == 2
    assert not closedness_criterion(Torus(2), entry.subalgebra)


def test_subalgebra_validation():
    with pytest.raises(ValueError):
        SubalgebraSpec(SU2(), tuple(_np(SU2_BASIS[:2])))  # bracket leaves the span
    with pytest.raises(ValueError):
        SubalgebraSpec(SU2(), tuple(_np([SU2_BASIS[0], 2 * SU2_BASIS[0]])))


def test_ranks():
    ranks = {(e.ambient.label, e.name): rank_of_compact_subalgebra(e.subalgebra) for e in subalgebra_catalog()}
    assert ranks[(SU3().label, "t")] == 2
    assert ranks[(SU3().label, "u(2)")] == 2
    assert ranks[(SU3().label, "su(2)")] == 1
    assert ranks[(SU3().label, "su(3)")] == 2
    assert ranks[(SU2().label, "su(2)")] == 1


def test_rank_is_seed_independent():
    h = subalgebra_catalog()[-1].subalgebra
    assert {rank_of_compact_subalgebra(h, seed) for seed in range(5)} == {2}


def test_catalog_predicates_agree():
    for e in subalgebra_catalog():
        chi = euler_characteristic_quotient(e.ambient, e.subalgebra.subgroup, strict=False)
        assert is_maximal_rank(e.ambient, e.subalgebra) == (chi > 0), e.name


def test_contains_positive_system_examples():
    assert contains_positive_system(A1, [(2,)])
    assert not contains_positive_system(A2, [(1, -1), (-1, 1)])
    assert contains_positive_system(A2, [(1, -1), (1, 2), (2, 1), (-1, 1)])
    assert contains_positive_system(A2, A2.negative_roots)
    with pytest.raises(InvalidRoots):
        contains_positive_system(A2, [(3, 0)])


def test_root_subsets_are_closed_subalgebras():
    for name, roots in sl3_root_subsets(A2):
        assert is_closed_root_set(A2, roots), name
        h = t_stable_subalgebra(SU3(), roots, name)
        assert h.dim == 2 * (2 + len(roots))
        assert h.closure_residual() < 1e-10


def test_non_closed_root_set_rejected():
    assert not is_closed_root_set(A2, [(1, -1), (1, 2)])  # misses the sum (2, 1)
    with pytest.raises(ValueError):
        t_stable_subalgebra(SU3(), [(1, -1), (1, 2)])
