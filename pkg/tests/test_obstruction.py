import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from univsub.errors import NotMaximalRank, RankMismatch, UnsupportedFactor
from univsub.groups import SU2, SU3, Product, build_root_system
from univsub.obstruction import (
    CohomologyValue,
    euler_characteristic_quotient,
    flag_report,
    kunneth_top_chern,
    localization_number,
    product_obstruction_report,
    su2_obstruction_report,
    subgroup_descriptor,
    tangent_weights,
)
from univsub.representations import Subspace, complexified_adjoint

A1 = build_root_system(SU2())
A2 = build_root_system(SU3())


def _euler_of_complex(faces):
    """V - E + F for a 2-dimensional simplicial complex given by its triangles."""
    verts = {v for f in faces for v in f}
    edges = {frozenset(e) for f in faces for e in itertools.combinations(f, 2)}
    return len(verts) - len(edges) + len(faces)


# six-vertex projective plane (antipodal quotient of the icosahedron)
RP2_FACES = [
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 6, 2),
    (2, 3, 5), (3, 4, 6), (4, 5, 2), (5, 6, 3), (6, 2, 4),
]
OCTAHEDRON = [(a, b, c) for a in (1, 2) for b in (3, 4) for c in (5, 6)]


def test_triangulation_oracles():
    assert _euler_of_complex(RP2_FACES) == 1
    assert _euler_of_complex(OCTAHEDRON) == 2


def test_euler_characteristics_against_triangulations():
    # SU(2)/T is S^2 and SU(2)/N(T) is RP^2
    assert euler_characteristic_quotient(SU2(), "T") == _euler_of_complex(OCTAHEDRON)
    assert euler_characteristic_quotient(SU2(), "N(T)") == _euler_of_complex(RP2_FACES)


def test_euler_characteristic_table():
    assert euler_characteristic_quotient(SU3(), "T") == 6
    assert euler_characteristic_quotient(SU3(), "N(T)") == 1
    assert euler_characteristic_quotient(SU3(), "U(2)") == 3
    assert euler_characteristic_quotient(SU3(), "G") == 1
    pr = Product((SU2(), SU2()))
    assert euler_characteristic_quotient(pr, "T") == 4
    assert euler_characteristic_quotient(pr, "T x N(T)") == 2


def test_below_maximal_rank():
    with pytest.raises(NotMaximalRank) as err:
        euler_characteristic_quotient(SU3(), "SU(2)")
    assert err.value.euler_characteristic == 0
    assert euler_characteristic_quotient(Product((SU2(), SU2())), "diag SU(2)", strict=False) == 0


def test_unknown_subgroup():
    with pytest.raises(ValueError):
        subgroup_descriptor(SU3(), "Sp(1)")


@pytest.mark.parametrize("k", range(-20, 21))
def test_a1_localization_closed_form(k):
    # sum over W = {1, -1} of k X / (2 X) is k
    assert localization_number(A1, [(k,)]) == k


@given(st.integers(0, 10**6))
@settings(max_examples=25, deadline=None)
def test_localization_independent_of_evaluation_point(seed):
    assert localization_number(A2, tangent_weights(A2), seed=seed) == -6


def test_tangent_localization_matches_euler_characteristic():
    assert localization_number(A1, tangent_weights(A1)) == -2
    for spec in (SU2(), SU3(), Product((SU2(), SU2()))):
        rs = build_root_system(spec)
        chi = euler_characteristic_quotient(spec, "T")
        assert abs(localization_number(rs, tangent_weights(rs))) == chi
        # reversing all signs multiplies by (-1)^(dim_C G/T)
        assert localization_number(rs, rs.positive_roots) == (-1) ** len(rs.positive_roots) * localization_number(
            rs, tangent_weights(rs)
        )


def test_localization_is_symmetric_in_the_weights():
    w = [(1, -1), (0, 3), (2, 1)]
    values = {localization_number(A2, p) for p in itertools.permutations(w)}
    assert len(values) == 1


def test_localization_dimension_condition():
    with pytest.raises(RankMismatch):
        localization_number(A2, [(1, 0)])


def test_flag_report():
    rep = flag_report(SU3())
    assert rep.class_value.coordinates == (-6,)
    assert not rep.vanishes


def test_kunneth_engine():
    assert kunneth_top_chern([("S2", 3), ("S2", -2)]) == CohomologyValue(1, (), (-6,))
    assert kunneth_top_chern([("S2", 2), ("RP2", "complexified-tautological")]).is_zero
    assert kunneth_top_chern([("S2", 1), ("RP2", "complexified-tautological")]).coordinates == (1,)
    assert kunneth_top_chern([("S2", 5), ("RP2", "trivial")]).is_zero
    assert kunneth_top_chern([("RP2", "complexified-tautological")]).torsion == (2,)
    with pytest.raises(UnsupportedFactor):
        kunneth_top_chern([("T2", 1)])


@given(st.integers(1, 20).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n))))
@settings(max_examples=60, deadline=None)
def test_su2_obstruction_pattern(ni):
    n, i = ni
    rep = su2_obstruction_report(n, i)
    if 2 * i != n:
        assert rep.base_space == ("S2",)
        assert rep.class_value.coordinates == (2 * i - n,)
    else:
        # the Weyl element acts on x^m y^m by (-1)^m
        assert rep.base_space == ("RP2",)
        assert rep.vanishes == (n % 4 == 0)


def test_product_counterexample_class():
    sl2 = complexified_adjoint(SU2())
    parts = [(sl2, Subspace.weight_complement(sl2, [2])), (sl2, Subspace.weight_complement(sl2, [1]))]
    report, infos = product_obstruction_report(parts)
    assert report.base_space == ("S2", "RP2")
    assert report.vanishes
    assert report.class_value.torsion == (2,)
    assert abs(report.bundle[0].degree) == 2
    assert report.bundle[1].kind == "complexified-tautological"
    assert [info["quotient_weight"] for info in infos] == [-2, 0]
