"""Topological side: Euler characteristics, localization numbers, top Chern classes.

The cohomology engine only knows finite products of S^2 and RP^2:
H^2(S^2; Z) = Z and H^2(RP^2; Z) = Z/2, with cross products following
Z (x) Z = Z and Z (x) Z/2 = Z/2 (x) Z/2 = Z/2.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import (
    GenericityFailure,
    IndexOutOfRange,
    NotMaximalRank,
    RankMismatch,
    UnsupportedFactor,
    UnsupportedGroup,
)
from .groups import SU2, SU3, GroupSpec, Product, RootSystem, Torus, build_root_system, weyl_group
from .representations import Representation, Subspace, su2_irrep

S2 = "S2"
RP2 = "RP2"
TRIVIAL = "trivial"
TAUTOLOGICAL = "complexified-tautological"


@dataclass(frozen=True)
class CohomologyValue:
    """An element of Z^free_rank + sum Z/torsion[k]."""

    free_rank: int
    torsion: tuple[int, ...]
    coordinates: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coordinates)
        if len(coords) != self.free_rank + len(self.torsion):
            raise ValueError("coordinate vector does not match the group")
        free = coords[: self.free_rank]
        tors = tuple(c % m for c, m in zip(coords[self.free_rank :], self.torsion))
        object.__setattr__(self, "coordinates", free + tors)
        object.__setattr__(self, "torsion", tuple(self.torsion))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coordinates)

    def group_name(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{m}" for m in self.torsion]
        return " + ".join(parts) if parts else "0"

    def __str__(self):
        return f"{', '.join(map(str, self.coordinates))} in {self.group_name()}"

    def to_dict(self):
        return {"group": self.group_name(), "free_rank": self.free_rank, "torsion": list(self.torsion),
                "coordinates": list(self.coordinates)}


@dataclass(frozen=True)
class LineBundle:
    """A complex line bundle over S^2 (by degree) or RP^2 (trivial or complexified tautological)."""

    space: str
    degree: int | None = None
    kind: str = "character"

    def describe(self) -> str:
        if self.space == S2:
            return f"O({self.degree}) on S2"
        return f"{self.kind} on RP2"


@dataclass(frozen=True)
class ObstructionReport:
    base_space: tuple[str, ...]
    bundle: tuple[LineBundle, ...]
    class_value: CohomologyValue
    notes: tuple[str, ...] = field(default_factory=tuple)

    @property
    def vanishes(self) -> bool:
        return self.class_value.is_zero

    def to_dict(self):
        return {
            "base_space": " x ".join(self.base_space),
            "bundle": [asdict(b) for b in self.bundle],
            "class_value": self.class_value.to_dict(),
            "vanishes": self.vanishes,
            "notes": list(self.notes),
        }


# ---------------------------------------------------------------------------
# Euler characteristics of G/H for maximal-rank H
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupDescriptor:
    """Closed subgroup H by the data the Euler characteristic needs.

    ``weyl_order`` is |W(H°)|, ``components`` is |H/H°| and ``rank`` the rank
    of H°.
    """

    name: str
    rank: int
    weyl_order: int
    components: int = 1


def _factor_catalog(spec: GroupSpec) -> dict[str, SubgroupDescriptor]:
    if isinstance(spec, SU2):
        return {
            "T": SubgroupDescriptor("T", 1, 1, 1),
            "N(T)": SubgroupDescriptor("N(T)", 1, 1, 2),
            "G": SubgroupDescriptor("G", 1, 2, 1),
            "1": SubgroupDescriptor("1", 0, 1, 1),
        }
    if isinstance(spec, SU3):
        return {
            "T": SubgroupDescriptor("T", 2, 1, 1),
            "N(T)": SubgroupDescriptor("N(T)", 2, 1, 6),
            "U(2)": SubgroupDescriptor("U(2)", 2, 2, 1),
            "SU(2)": SubgroupDescriptor("SU(2)", 1, 2, 1),
            "G": SubgroupDescriptor("G", 2, 6, 1),
            "1": SubgroupDescriptor("1", 0, 1, 1),
        }
    if isinstance(spec, Torus):
        return {"T": SubgroupDescriptor("T", spec.k, 1, 1), "G": SubgroupDescriptor("G", spec.k, 1, 1),
                "1": SubgroupDescriptor("1", 0, 1, 1)}
    raise UnsupportedGroup(f"no subgroup catalog for {spec.label}")


def subgroup_descriptor(spec: GroupSpec, name: str) -> SubgroupDescriptor:
    """Look up a catalog subgroup; products take names like ``"T x N(T)"``.

    ``"diag SU(2)"`` names the diagonal copy of SU(2) in SU(2) x SU(2).
    """
    name = name.strip()
    if isinstance(spec, Product):
        if name == "diag SU(2)" and all(isinstance(f, SU2) for f in spec.factors) and len(spec.factors) == 2:
            return SubgroupDescriptor(name, 1, 2, 1)
        if name in ("T", "G", "N(T)"):
            parts = [name] * len(spec.factors)
        else:
            parts = [p.strip() for p in name.split(" x ")]
        if len(parts) != len(spec.factors):
            raise ValueError(f"subgroup {name!r} does not match {spec.label}")
        descs = [subgroup_descriptor(f, p) for f, p in zip(spec.factors, parts)]
        return SubgroupDescriptor(
            name,
            sum(d.rank for d in descs),
            int(np.prod([d.weyl_order for d in descs])),
            int(np.prod([d.components for d in descs])),
        )
    catalog = _factor_catalog(spec)
    if name not in catalog:
        raise ValueError(f"unknown subgroup {name!r} of {spec.label}; known: {sorted(catalog)}")
    return catalog[name]


def euler_characteristic_quotient(g_spec: GroupSpec, h: SubgroupDescriptor | str, strict: bool = True) -> int:
    """chi(G/H) = |W_G| / (|W_H°| |H/H°|) for maximal-rank H, and 0 below maximal rank.

    Below maximal rank ``NotMaximalRank`` is raised (carrying chi = 0) unless
    ``strict`` is False, in which case 0 is returned.
    """
    if isinstance(h, str):
        h = subgroup_descriptor(g_spec, h)
    if h.rank < g_spec.rank:
        if strict:
            raise NotMaximalRank(f"{h.name} has rank {h.rank} < {g_spec.rank}", euler_characteristic=0)
        return 0
    order = weyl_group(build_root_system(g_spec)).order
    den = h.weyl_order * h.components
    if order % den:
        raise ValueError(f"|W_G| = {order} is not divisible by {den}")
    return order // den


# ---------------------------------------------------------------------------
# localization over G/T
# ---------------------------------------------------------------------------


def _generic_point(rank, rng):
    return [Fraction(int(rng.integers(-10**6, 10**6)), int(rng.integers(1, 10**3))) for _ in range(rank)]


def _pair(weight, X):
    return sum(int(a) * x for a, x in zip(weight, X))


def _weyl_sum(W, rs, weights, X):
    total = Fraction(0)
    for w in W.matrices():
        wX = [sum(int(w[r, c]) * X[r] for r in range(rs.rank)) for c in range(rs.rank)]
        num = Fraction(1)
        for mu in weights:
            num *= _pair(mu, wX)
        den = Fraction(1)
        for a in rs.positive_roots:
            v = _pair(a, wX)
            if v == 0:
                return None
            den *= v
        total += num / den
    return total


def localization_number(
    rs: RootSystem, quotient_weights: Sequence[Sequence[int]], seed: int = 0, draws: int = 2, retries: int = 8
) -> int:
    """Evaluate <e(E_W), [G/T]> as a Weyl-group sum at generic rational points.

    sum_w prod_j (w mu_j)(X) / prod_{alpha > 0} (w alpha)(X), in exact arithmetic.
    The value must be an integer and must not depend on X; ``draws`` points
    are compared.
    """
    weights = [tuple(int(c) for c in mu) for mu in quotient_weights]
    if len(weights) != len(rs.positive_roots):
        raise RankMismatch(
            f"dimension condition violated: {len(weights)} quotient weights "
            f"but dim_C G/T = {len(rs.positive_roots)}"
        )
    if any(len(mu) != rs.rank for mu in weights):
        raise ValueError("weight length does not match the rank")
    W = weyl_group(rs)
    rng = np.random.default_rng(seed)
    values = []
    for _ in range(draws):
        for _attempt in range(retries):
            val = _weyl_sum(W, rs, weights, _generic_point(rs.rank, rng))
            if val is not None:
                break
        else:
            raise GenericityFailure(f"no generic point found in {retries} attempts")
        values.append(val)
    if any(v != values[0] for v in values):
        raise ArithmeticError(f"localization sum depends on the evaluation point: {values}")
    if values[0].denominator != 1:
        raise ArithmeticError(f"localization sum {values[0]} is not an integer")
    return int(values[0])


def tangent_weights(rs: RootSystem) -> list[tuple[int, ...]]:
    """Torus weights of T_{eT}(G/T) = g_C / b, i.e. the negative roots."""
    return list(rs.negative_roots)


# ---------------------------------------------------------------------------
# products of S^2 and RP^2
# ---------------------------------------------------------------------------


def _first_chern(space, descriptor):
    """c1 of a line bundle as (value, modulus); modulus 0 means Z."""
    if space == S2:
        if isinstance(descriptor, bool) or not isinstance(descriptor, (int, np.integer)):
            raise UnsupportedFactor(f"S2 factor needs an integer degree, got {descriptor!r}")
        return int(descriptor), 0
    if space == RP2:
        if descriptor == TRIVIAL:
            return 0, 2
        if descriptor == TAUTOLOGICAL:
            return 1, 2
        raise UnsupportedFactor(f"RP2 line bundle must be {TRIVIAL!r} or {TAUTOLOGICAL!r}, got {descriptor!r}")
    raise UnsupportedFactor(f"unsupported base factor {space!r}")


def kunneth_top_chern(factors: Sequence[tuple[str, object]]) -> CohomologyValue:
    """Top Chern class of the external sum of line bundles over a product of S^2's and RP^2's.

    By Whitney it is the cross product of the factor classes c1(E_k); the
    product lands in Z when every factor is S^2 and in Z/2 otherwise.
    """
    value, torsion = 1, False
    for space, desc in factors:
        c, mod = _first_chern(space, desc)
        value *= c
        torsion = torsion or mod == 2
    if torsion:
        return CohomologyValue(0, (2,), (value,))
    return CohomologyValue(1, (), (value,))


# ---------------------------------------------------------------------------
# line quotients for SU(2)
# ---------------------------------------------------------------------------


def line_quotient_bundle(rep: Representation, V: Subspace) -> tuple[str, object, dict]:
    """Classify E_W for an SU(2)-representation and a torus-stable hyperplane V.

    The quotient line is spanned by the excluded weight vector.  Nonzero weight:
    G_V = T and the base is S^2 with degree given by localization.  Zero weight:
    the Weyl element stabilizes the line, G_V = N(T), base RP^2, and the sign
    of w on the line decides between the trivial bundle and the complexified
    tautological bundle.
    """
    if not isinstance(rep.group, SU2) or rep.weights is None:
        raise UnsupportedGroup("line quotients are classified for SU(2) weight bases only")
    if V.excluded is None or len(V.excluded) != 1:
        raise ValueError("V must be the complement of a single weight vector")
    j = V.excluded[0]
    k = rep.weights[j][0]
    w = SU2().element(SU2().weyl_params())
    col = rep.realize(w)[:, j]
    target = int(np.argmax(np.abs(col)))
    info = {"quotient_weight": k, "weyl_image_index": target, "weyl_sign": None}
    if k != 0:
        c1 = localization_number(build_root_system(SU2()), [(k,)])
        return S2, c1, info
    if target != j:
        raise ArithmeticError("zero-weight line is not stabilized by the Weyl element")
    sign = int(np.rint(col[j].real))
    info["weyl_sign"] = sign
    return RP2, (TRIVIAL if sign == 1 else TAUTOLOGICAL), info


def line_bundle(space, desc) -> LineBundle:
    if space == S2:
        return LineBundle(S2, int(desc), "character")
    return LineBundle(RP2, None, desc)


def su2_obstruction_report(n: int, i: int) -> ObstructionReport:
    """Obstruction for the hyperplane of U_n killing the x^i y^(n-i) coefficient."""
    if n < 1:
        raise IndexOutOfRange("need n >= 1")
    if not 0 <= i <= n:
        raise IndexOutOfRange(f"index {i} outside 0..{n}")
    rep = su2_irrep(n)
    V = Subspace.weight_complement(rep, [i])
    space, desc, info = line_quotient_bundle(rep, V)
    notes = [f"quotient weight {info['quotient_weight']}"]
    if space == S2:
        value = CohomologyValue(1, (), (desc,))
        notes.append("G_V = T")
    else:
        value = kunneth_top_chern([(space, desc)])
        notes.append("G_V = N(T)")
        if desc == TAUTOLOGICAL:
            notes.append("mod 2 reduction is w1^2 != 0")
        else:
            notes.append("W descends to the trivial line bundle")
    return ObstructionReport((space,), (line_bundle(space, desc),), value, tuple(notes))


def product_obstruction_report(parts: Sequence[tuple[Representation, Subspace]]) -> tuple[ObstructionReport, list]:
    """Top class for a product of SU(2) factors each with a line quotient."""
    factors, bundles, spaces, infos = [], [], [], []
    for rep, V in parts:
        space, desc, info = line_quotient_bundle(rep, V)
        factors.append((space, desc))
        bundles.append(line_bundle(space, desc))
        spaces.append(space)
        infos.append(info)
    value = kunneth_top_chern(factors)
    notes = []
    for (space, desc) in factors:
        notes.append(f"c1 on {space}: {kunneth_top_chern([(space, desc)])}")
    return ObstructionReport(tuple(spaces), tuple(bundles), value, tuple(notes)), infos


def flag_report(g_spec: GroupSpec) -> ObstructionReport:
    """Euler class of T(G/T) via localization."""
    rs = build_root_system(g_spec)
    c = localization_number(rs, tangent_weights(rs))
    return ObstructionReport((f"{g_spec.label}/T",), (), CohomologyValue(1, (), (c,)),
                             (f"|C_V| = {abs(c)}",))
