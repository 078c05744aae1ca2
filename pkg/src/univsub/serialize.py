"""Plain-data (JSON/YAML) forms of groups, representations, subspaces and subalgebras.

Scalars: integers and decimals as numbers, exact rationals as "p/q" strings,
complex numbers as [re, im] pairs whose parts follow the same rules.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import ConfigError
from .groups import SU2, SU3, Complexified, GroupSpec, Product, SU2Extension, Torus, UpperTriangular
from .representations import (
    Representation,
    Subspace,
    adjoint,
    complexified_adjoint,
    defining,
    direct_sum,
    su2_irrep,
    twist,
)

SCHEMA_VERSION = "1.0"


# ---------------------------------------------------------------------------
# scalars
# ---------------------------------------------------------------------------


def parse_scalar(x):
    """Number, "p/q" string or [re, im] pair -> int, Fraction, float or complex."""
    if isinstance(x, bool):
        raise ConfigError(f"boolean is not a scalar: {x!r}")
    if isinstance(x, (int, float, Fraction)):
        return x
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ConfigError(f"cannot read {x!r} as a rational") from exc
    if isinstance(x, (list, tuple)) and len(x) == 2:
        re, im = parse_scalar(x[0]), parse_scalar(x[1])
        if isinstance(re, complex) or isinstance(im, complex):
            raise ConfigError(f"nested complex value {x!r}")
        return complex(float(re), float(im)) if im != 0 else re
    raise ConfigError(f"cannot read scalar {x!r}")


def scalar_to_data(z):
    if isinstance(z, Fraction):
        return str(z) if z.denominator != 1 else z.numerator
    if isinstance(z, (bool, np.bool_)):
        return bool(z)
    if isinstance(z, (int, np.integer)):
        return int(z)
    if isinstance(z, (complex, np.complexfloating)):
        z = complex(z)
        return [float(z.real), float(z.imag)] if z.imag != 0 else float(z.real)
    return float(z)


def to_plain(obj):
    """Recursively convert numpy / Fraction / complex values into JSON-ready data."""
    if isinstance(obj, dict):
        return {str(k): to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return to_plain(obj.tolist())
    if isinstance(obj, GroupSpec):
        return group_to_dict(obj)
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, float, complex, Fraction, np.number)):
        return scalar_to_data(obj)
    if hasattr(obj, "to_dict"):
        return to_plain(obj.to_dict())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _matrix(data, name="matrix") -> np.ndarray:
    if not isinstance(data, (list, tuple)) or not data:
        raise ConfigError(f"{name} must be a non-empty list of rows")
    rows = [[complex(parse_scalar(z)) for z in row] for row in data]
    if len({len(r) for r in rows}) != 1:
        raise ConfigError(f"{name} rows have different lengths")
    return np.array(rows, dtype=complex)


def matrix_to_data(m) -> list:
    return [[scalar_to_data(complex(z)) for z in row] for row in np.asarray(m)]


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

_GROUP_NAMES = {
    "su2": "su2",
    "su(2)": "su2",
    "su3": "su3",
    "su(3)": "su3",
    "torus": "torus",
    "upper_triangular": "upper_triangular",
    "complexified": "complexified",
    "su2_extension": "su2_extension",
    "product": "product",
}


def group_from_dict(d) -> GroupSpec:
    if isinstance(d, str):
        d = {"kind": d}
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError(f"group needs a 'kind': {d!r}")
    kind = _GROUP_NAMES.get(str(d["kind"]).lower())
    try:
        if kind == "su2":
            return SU2()
        if kind == "su3":
            return SU3()
        if kind == "torus":
            return Torus(int(d.get("k", 1)))
        if kind == "upper_triangular":
            return UpperTriangular(int(d.get("n", 2)), float(d.get("box", 3.0)), float(d.get("log_modulus_bound", 2.0)))
        if kind == "complexified":
            return Complexified(group_from_dict(d.get("base", "su2")), float(d.get("box", 3.0)))
        if kind == "su2_extension":
            return SU2Extension(float(d.get("box", 10.0)))
        if kind == "product":
            factors = d.get("factors")
            if not factors:
                raise ConfigError("product group needs 'factors'")
            return Product(tuple(group_from_dict(f) for f in factors))
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad group parameters {d!r}: {exc}") from exc
    raise ConfigError(f"unknown group kind {d['kind']!r}")


def group_to_dict(spec: GroupSpec) -> dict:
    if isinstance(spec, SU2):
        return {"kind": "su2"}
    if isinstance(spec, SU3):
        return {"kind": "su3"}
    if isinstance(spec, Torus):
        return {"kind": "torus", "k": spec.k}
    if isinstance(spec, UpperTriangular):
        return {"kind": "upper_triangular", "n": spec.n, "box": spec.box, "log_modulus_bound": spec.log_modulus_bound}
    if isinstance(spec, Complexified):
        return {"kind": "complexified", "base": group_to_dict(spec.base), "box": spec.box}
    if isinstance(spec, SU2Extension):
        return {"kind": "su2_extension", "box": spec.box}
    if isinstance(spec, Product):
        return {"kind": "product", "factors": [group_to_dict(f) for f in spec.factors]}
    raise TypeError(f"no serialization for {type(spec).__name__}")


# ---------------------------------------------------------------------------
# representations
# ---------------------------------------------------------------------------


def representation_from_dict(d, group: GroupSpec) -> Representation:
    """Build a representation from its descriptor.

    kinds: irrep (n), adjoint, complexified_adjoint, defining,
    twist (weight, rep) and direct_sum (summands, optional external flag).
    """
    if isinstance(d, str):
        d = {"kind": d}
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError(f"representation needs a 'kind': {d!r}")
    kind = str(d["kind"]).lower()
    try:
        if kind in ("irrep", "su2_irrep"):
            if not isinstance(group, SU2):
                raise ConfigError("irrep descriptors are for SU(2)")
            return su2_irrep(int(d["n"]))
        if kind == "adjoint":
            return adjoint(group)
        if kind == "complexified_adjoint":
            return complexified_adjoint(group)
        if kind == "defining":
            return defining(group)
        if kind == "twist":
            if not isinstance(group, Product) or len(group.factors) != 2 or not isinstance(group.factors[0], Torus):
                raise ConfigError("twist needs a group of the form torus(1) x G")
            return twist(representation_from_dict(d["rep"], group.factors[1]), int(d["weight"]))
        if kind == "direct_sum":
            summands = d.get("summands")
            if not summands:
                raise ConfigError("direct_sum needs 'summands'")
            if d.get("external"):
                if not isinstance(group, Product) or len(group.factors) != len(summands):
                    raise ConfigError("external sums need a product group with one factor per summand")
                reps = [representation_from_dict(s, f) for s, f in zip(summands, group.factors)]
                return direct_sum(reps, group=group)
            return direct_sum([representation_from_dict(s, group) for s in summands])
        if kind == "matrices":
            raise ConfigError("'matrices' descriptors carry Lie algebra generators; use them with the flag analysis")
    except KeyError as exc:
        raise ConfigError(f"representation {kind!r} is missing {exc}") from exc
    except ConfigError:
        raise
    except Exception as exc:  # library errors become configuration errors here
        raise ConfigError(f"cannot build representation {d!r}: {exc}") from exc
    raise ConfigError(f"unknown representation kind {d['kind']!r}")


def representation_to_dict(rep: Representation) -> dict:
    return to_plain(rep.descriptor)


def generators_from_dict(d) -> list[np.ndarray]:
    gens = d.get("generators") if isinstance(d, dict) else None
    if not gens:
        raise ConfigError("'matrices' representation needs a non-empty 'generators' list")
    return [_matrix(g, "generator") for g in gens]


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


def subspace_from_dict(d, rep: Representation) -> Subspace:
    """kinds: weight_complement (indices), coordinate_span (indices), span (vectors), roots (root list)."""
    if not isinstance(d, dict) or "kind" not in d:
        raise ConfigError(f"subspace needs a 'kind': {d!r}")
    kind = str(d["kind"]).lower()
    label = str(d.get("label", ""))
    try:
        if kind == "weight_complement":
            return Subspace.weight_complement(rep, [int(i) for i in d["indices"]], label)
        if kind == "coordinate_span":
            return Subspace.coordinate_span(rep, [int(i) for i in d["indices"]], label)
        if kind == "span":
            vecs = d["vectors"]
            rows = [[complex(parse_scalar(z)) for z in v] for v in vecs] if vecs else []
            return Subspace.span(rep, np.array(rows, dtype=complex).reshape(len(rows), rep.dimension),
                                 bool(d.get("complex", True)), label)
        if kind == "roots":
            from .subalgebra import root_subspace

            if rep.weights is None:
                raise ConfigError("root subspaces need a weight basis")
            return root_subspace(rep, [tuple(int(c) for c in a) for a in d["roots"]], label)
    except KeyError as exc:
        raise ConfigError(f"subspace {kind!r} is missing {exc}") from exc
    except ValueError as exc:
        raise ConfigError(f"bad subspace {d!r}: {exc}") from exc
    raise ConfigError(f"unknown subspace kind {d['kind']!r}")


def subspace_to_dict(V: Subspace) -> dict:
    out = {"dimension": V.dim, "ambient_dimension": V.ambient.dimension, "label": V.label}
    if V.excluded is not None:
        out.update(kind="weight_complement", indices=list(V.excluded))
    else:
        out.update(kind="span", complex=V.complex_flag, vectors=[[scalar_to_data(z) for z in v] for v in V.vectors])
    return out


# ---------------------------------------------------------------------------
# subalgebras
# ---------------------------------------------------------------------------


def subalgebra_from_dict(d):
    from .subalgebra import SubalgebraSpec, t_stable_subalgebra

    if not isinstance(d, dict):
        raise ConfigError("subalgebra must be a mapping")
    ambient = group_from_dict(d.get("ambient", "su2"))
    try:
        if "roots" in d:
            base = ambient.base if isinstance(ambient, Complexified) else ambient
            return t_stable_subalgebra(base, [tuple(int(c) for c in a) for a in d["roots"]], str(d.get("label", "")))
        basis = [_matrix(m, "basis matrix") for m in d.get("basis", [])]
        return SubalgebraSpec(ambient, tuple(basis), None, str(d.get("label", "")), d.get("subgroup"))
    except ValueError as exc:
        raise ConfigError(f"bad subalgebra: {exc}") from exc


def subalgebra_to_dict(h) -> dict:
    out = {"ambient": group_to_dict(h.ambient), "label": h.label,
           "basis": [matrix_to_data(m) for m in h.basis]}
    if h.t_stable_root_set is not None:
        out["roots"] = [list(a) for a in sorted(h.t_stable_root_set)]
    if h.subgroup:
        out["subgroup"] = h.subgroup
    return out
