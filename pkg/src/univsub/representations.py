"""Concrete matrix representations, weight data and linear subspaces."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Sequence

import numpy as np
from sympy.polys.domains import QQ_I

from .errors import GroupMismatch, UnsupportedGroup
from .groups import (
    SU2,
    SU3,
    GroupElement,
    GroupSpec,
    Product,
    Torus,
    UpperTriangular,
    SU2Extension,
    _block_diag,
)

Weight = tuple[int, ...]


@dataclass(frozen=True, eq=False)
class Representation:
    """A group acting on C^dimension (or R^dimension when ``real_form``) by matrices.

    ``weights[j]`` is the torus character of basis vector j, or ``None`` when the
    basis is not a weight basis.  ``inner_product`` is the Gram matrix of the
    basis; the compact groups act unitarily for it.
    """

    group: GroupSpec
    dimension: int
    basis_labels: tuple[str, ...]
    realize: Callable[[GroupElement], np.ndarray]
    weights: tuple[Weight, ...] | None
    inner_product: np.ndarray
    real_form: bool = False
    label: str = ""
    descriptor: dict = field(default_factory=dict)
    realize_exact: Callable | None = None

    def __call__(self, g: GroupElement) -> np.ndarray:
        return self.realize(g)


# ---------------------------------------------------------------------------
# SU(2) irreducibles on binary forms
# ---------------------------------------------------------------------------


def _irrep_tables(n):
    """Index/coefficient tables for (a x + c y)^i (b x + d y)^(n-i) expanded in x^k y^(n-k)."""
    k, i, j = np.meshgrid(np.arange(n + 1), np.arange(n + 1), np.arange(n + 1), indexing="ij")
    valid = (j <= i) & (k - j >= 0) & (k - j <= n - i)
    coef = np.zeros(k.shape)
    for kk, ii, jj in zip(*np.nonzero(valid)):
        coef[kk, ii, jj] = comb(int(ii), int(jj)) * comb(n - int(ii), int(kk - jj))
    ea = np.where(valid, j, 0)
    ec = np.where(valid, i - j, 0)
    eb = np.where(valid, k - j, 0)
    ed = np.where(valid, n - i - k + j, 0)
    return coef, ea, ec, eb, ed


def _powers(z, n):
    out = np.empty(n + 1, dtype=complex)
    out[0] = 1.0
    for p in range(1, n + 1):
        out[p] = out[p - 1] * z
    return out


def _binary_form_matrix(n, tables, m):
    coef, ea, ec, eb, ed = tables
    a, b, c, d = m[0, 0], m[0, 1], m[1, 0], m[1, 1]
    vals = coef * _powers(a, n)[ea] * _powers(c, n)[ec] * _powers(b, n)[eb] * _powers(d, n)[ed]
    return vals.sum(axis=2)


def binary_form_matrix_exact(n: int, m) -> list[list]:
    """Exact version of the SU(2) irrep matrix; ``m`` is a 2x2 nested list over QQ_I."""
    (a, b), (c, d) = m
    zero = QQ_I(0)
    out = [[zero] * (n + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        for j in range(i + 1):
            for kj in range(n - i + 1):
                k = j + kj
                term = QQ_I(comb(i, j) * comb(n - i, kj))
                term = term * a**j * c ** (i - j) * b**kj * d ** (n - i - kj)
                out[k][i] = out[k][i] + term
    return out


def su2_matrix_exact(q: Sequence[Fraction]) -> list[list]:
    """SU(2) matrix over QQ_I for a rational unit quaternion (same convention as ``SU2``)."""
    q0, q1, q2, q3 = (QQ_I(Fraction(v).numerator, 0) / QQ_I(Fraction(v).denominator, 0) for v in q)
    i = QQ_I(0, 1)
    a = q0 + i * q3
    b = q2 + i * q1
    conj = lambda z: QQ_I(z.x, -z.y)  # noqa: E731
    return [[a, b], [-conj(b), conj(a)]]


def su2_irrep(n: int) -> Representation:
    """Degree-n binary forms, basis x^i y^(n-i), with (rho(g) f)(v) = f(g^T v)."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    tables = _irrep_tables(n)

    def realize(g):
        return _binary_form_matrix(n, tables, g.matrix)

    def realize_exact(q):
        return binary_form_matrix_exact(n, su2_matrix_exact(q))

    return Representation(
        group=SU2(),
        dimension=n + 1,
        basis_labels=tuple(f"x^{i} y^{n - i}" for i in range(n + 1)),
        realize=realize,
        weights=tuple((2 * i - n,) for i in range(n + 1)),
        inner_product=np.diag([1.0 / comb(n, i) for i in range(n + 1)]).astype(complex),
        label=f"U_{n}",
        descriptor={"kind": "su2_irrep", "n": n},
        realize_exact=realize_exact,
    )


# ---------------------------------------------------------------------------
# adjoint representations
# ---------------------------------------------------------------------------


def _unit(n, i, j):
    e = np.zeros((n, n), dtype=complex)
    e[i, j] = 1
    return e


def _sl_basis(spec):
    """Weight basis of the complexified Lie algebra of SU(2) or SU(3)."""
    if isinstance(spec, SU2):
        h = np.diag([1.0, -1.0]).astype(complex)
        return [_unit(2, 0, 1), h, _unit(2, 1, 0)], ["E", "H", "F"], [(2,), (0,), (-2,)]
    if isinstance(spec, SU3):
        eps = [(1, 0), (0, 1), (-1, -1)]
        mats = [np.diag([1.0, -1.0, 0.0]).astype(complex), np.diag([0.0, 1.0, -1.0]).astype(complex)]
        labels = ["H1", "H2"]
        weights = [(0, 0), (0, 0)]
        for i, j in [(0, 1), (1, 2), (0, 2), (1, 0), (2, 1), (2, 0)]:
            mats.append(_unit(3, i, j))
            labels.append(f"E{i + 1}{j + 1}")
            weights.append(tuple(a - b for a, b in zip(eps[i], eps[j])))
        return mats, labels, weights
    raise UnsupportedGroup(f"complexified adjoint not available for {spec.label}")


def _conjugation_rep(spec, mats, labels, weights, real_form, label, descriptor):
    B = np.array([m.ravel() for m in mats]).T
    coords = np.linalg.pinv(B)
    gram = B.conj().T @ B

    def realize(g):
        m = g.matrix
        minv = g.inverse_matrix()
        img = np.einsum("ij,kjl,lm->kim", m, np.array(mats), minv).reshape(len(mats), -1).T
        out = coords @ img
        return out.real.astype(complex) if real_form else out

    return Representation(
        group=spec,
        dimension=len(mats),
        basis_labels=tuple(labels),
        realize=realize,
        weights=None if weights is None else tuple(map(tuple, weights)),
        inner_product=gram,
        real_form=real_form,
        label=label,
        descriptor=descriptor,
    )


def complexified_adjoint(spec: GroupSpec) -> Representation:
    if isinstance(spec, Product):
        return direct_sum([complexified_adjoint(f) for f in spec.factors], group=spec)
    mats, labels, weights = _sl_basis(spec)
    return _conjugation_rep(
        spec, mats, labels, weights, False, f"Lie({spec.label})_C", {"kind": "complexified_adjoint", "group": spec}
    )


def _orthonormal_real_basis(mats):
    """Gram-Schmidt for the real inner product Re tr(X^* Y)."""
    out = []
    for m in mats:
        v = m.astype(complex)
        for e in out:
            v = v - np.real(np.vdot(e, v)) * e
        nrm = np.sqrt(np.real(np.vdot(v, v)))
        if nrm > 1e-12:
            out.append(v / nrm)
    return out


def adjoint(spec: GroupSpec) -> Representation:
    """Real adjoint representation on the compact Lie algebra, in an orthonormal basis."""
    if not spec.compact:
        raise UnsupportedGroup("real adjoint is built only for compact groups")
    mats = _orthonormal_real_basis(spec.algebra_basis())
    labels = [f"X{k}" for k in range(len(mats))]
    return _conjugation_rep(spec, mats, labels, None, True, f"Lie({spec.label})", {"kind": "adjoint", "group": spec})


def algebra_basis_orthonormal(spec: GroupSpec) -> list[np.ndarray]:
    """The matrices whose coordinates ``adjoint(spec)`` uses."""
    return _orthonormal_real_basis(spec.algebra_basis())


# ---------------------------------------------------------------------------
# defining representations, twists, sums
# ---------------------------------------------------------------------------


def defining(spec: GroupSpec) -> Representation:
    n = spec.matrix_size
    weights = None
    if isinstance(spec, SU2):
        weights = ((1,), (-1,))
    elif isinstance(spec, SU3):
        weights = ((1, 0), (0, 1), (-1, -1))
    elif isinstance(spec, Torus):
        weights = tuple(tuple(int(i == j) for i in range(n)) for j in range(n))
    elif not isinstance(spec, (UpperTriangular, SU2Extension)):
        raise UnsupportedGroup(f"no defining representation registered for {spec.label}")
    return Representation(
        group=spec,
        dimension=n,
        basis_labels=tuple(f"e{j + 1}" for j in range(n)),
        realize=lambda g: np.asarray(g.matrix, dtype=complex),
        weights=weights,
        inner_product=np.eye(n, dtype=complex),
        label=f"C^{n}",
        descriptor={"kind": "defining", "group": spec},
    )


def zero_representation(spec: GroupSpec) -> Representation:
    return Representation(spec, 0, (), lambda g: np.zeros((0, 0), dtype=complex), (), np.zeros((0, 0)), label="0")


def twist(rep: Representation, central_weight: int) -> Representation:
    """U(1) x G acting by z^central_weight * rho(g)."""
    group = Product((Torus(1), rep.group))

    def realize(g):
        z, h = g.components()
        return z.matrix[0, 0] ** central_weight * rep.realize(h)

    weights = None if rep.weights is None else tuple((central_weight, *w) for w in rep.weights)
    return Representation(
        group=group,
        dimension=rep.dimension,
        basis_labels=rep.basis_labels,
        realize=realize,
        weights=weights,
        inner_product=rep.inner_product,
        real_form=rep.real_form,
        label=f"z^{central_weight} {rep.label}",
        descriptor={"kind": "twist", "weight": central_weight, "rep": rep.descriptor},
    )


def _lift(rep, group, idx, ranks):
    def realize(g):
        return rep.realize(g.components()[idx])

    weights = None
    if rep.weights is not None:
        before, after = sum(ranks[:idx]), sum(ranks[idx + 1 :])
        weights = tuple((0,) * before + tuple(w) + (0,) * after for w in rep.weights)
    return realize, weights


def direct_sum(reps: Sequence[Representation], group: GroupSpec | None = None) -> Representation:
    """Block-diagonal sum.

    With ``group`` a ``Product`` whose factors are the summands' groups (or when
    the summands live on different groups) the sum is external: factor k acts
    on summand k only.  Otherwise all summands must share one group.
    """
    reps = [r for r in reps]
    nonempty = [r for r in reps if r.dimension > 0]
    if not reps:
        raise GroupMismatch("empty direct sum")
    groups = [r.group for r in reps]
    external = False
    if group is None:
        if all(g == groups[0] for g in groups):
            group = groups[0]
        else:
            group = Product(tuple(groups))
            external = True
    elif isinstance(group, Product) and tuple(group.factors) == tuple(groups) and group != groups[0]:
        external = True
    elif not all(g == group for g in groups):
        raise GroupMismatch("summands do not share the requested group")

    if not external:
        if len(nonempty) == 1:
            return nonempty[0]
        realizers = [r.realize for r in nonempty]
        weights = None if any(r.weights is None for r in nonempty) else sum((r.weights for r in nonempty), ())
    else:
        ranks = [g.rank for g in group.factors]
        realizers, wlist = [], []
        for idx, r in enumerate(reps):
            if r.dimension == 0:
                continue
            fn, w = _lift(r, group, idx, ranks)
            realizers.append(fn)
            wlist.append(w)
        weights = None if any(w is None for w in wlist) else sum(wlist, ())

    def realize(g):
        return _block_diag([fn(g) for fn in realizers])

    labels = []
    for k, r in enumerate(nonempty):
        labels += [f"{lab}[{k}]" for lab in r.basis_labels]
    return Representation(
        group=group,
        dimension=sum(r.dimension for r in nonempty),
        basis_labels=tuple(labels),
        realize=realize,
        weights=weights,
        inner_product=_block_diag([r.inner_product for r in nonempty]),
        real_form=all(r.real_form for r in nonempty),
        label=" + ".join(r.label for r in nonempty),
        descriptor={"kind": "direct_sum", "summands": [r.descriptor for r in reps], "external": external},
    )


def compress(rep: Representation, basis: np.ndarray, label: str = "") -> Representation:
    """Action on span(basis)^perp-coordinates of an invariant flag quotient, or on an invariant subspace.

    ``basis`` has orthonormal columns (for ``rep.inner_product``) spanning a
    subspace S.  The returned representation acts by P_S rho(g) restricted to S,
    which is the subrepresentation when S is invariant and the quotient
    U / S^perp when S^perp is invariant.
    """
    basis = np.asarray(basis, dtype=complex)
    M = rep.inner_product
    left = basis.conj().T @ M

    def realize(g):
        return left @ rep.realize(g) @ basis

    k = basis.shape[1]
    return Representation(
        group=rep.group,
        dimension=k,
        basis_labels=tuple(f"f{j + 1}" for j in range(k)),
        realize=realize,
        weights=None,
        inner_product=np.eye(k, dtype=complex),
        real_form=rep.real_form,
        label=label or f"compressed {rep.label}",
        descriptor={"kind": "compressed", "rep": rep.descriptor},
    )


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Subspace:
    """Either the span of given vectors or the set of vectors whose coordinates
    at ``excluded`` vanish."""

    ambient: Representation
    vectors: np.ndarray | None = None
    excluded: tuple[int, ...] | None = None
    complex_flag: bool = True
    label: str = ""

    @classmethod
    def span(cls, ambient, vectors, complex_flag=True, label=""):
        vecs = np.atleast_2d(np.asarray(vectors, dtype=complex))
        if vecs.size == 0:
            vecs = np.zeros((0, ambient.dimension), dtype=complex)
        if vecs.shape[1] != ambient.dimension:
            raise ValueError("vector length does not match the representation")
        if np.linalg.matrix_rank(vecs, tol=1e-10) != vecs.shape[0]:
            raise ValueError("spanning vectors are linearly dependent")
        return cls(ambient, vecs, None, complex_flag, label)

    @classmethod
    def weight_complement(cls, ambient, indices, label=""):
        idx = tuple(sorted(set(int(i) for i in indices)))
        if any(i < 0 or i >= ambient.dimension for i in idx):
            raise ValueError("basis index out of range")
        return cls(ambient, None, idx, True, label)

    @classmethod
    def coordinate_span(cls, ambient, indices, label=""):
        keep = set(int(i) for i in indices)
        return cls.weight_complement(ambient, [j for j in range(ambient.dimension) if j not in keep], label)

    @property
    def dim(self) -> int:
        if self.excluded is not None:
            return self.ambient.dimension - len(self.excluded)
        return self.vectors.shape[0]

    @property
    def is_proper(self) -> bool:
        return self.dim < self.ambient.dimension

    def basis_matrix(self) -> np.ndarray:
        """Columns spanning the subspace."""
        n = self.ambient.dimension
        if self.excluded is not None:
            keep = [j for j in range(n) if j not in self.excluded]
            return np.eye(n, dtype=complex)[:, keep]
        return self.vectors.T.copy()

    def contains_exact(self, coords) -> bool:
        if self.excluded is None:
            raise ValueError("exact membership is available for weight complements only")
        # truthiness, since sympy Gaussian rationals never compare equal to int 0
        return not any(coords[j] for j in self.excluded)

    def to_dict(self):
        from .serialize import subspace_to_dict

        return subspace_to_dict(self)


class Projector:
    """Orthogonal projection onto a subspace for the representation's inner product.

    Vectors are mapped to orthonormal coordinates y = L^* v (M = L L^*), where
    the subspace becomes span(Q) with orthonormal Q.
    """

    def __init__(self, subspace: Subspace):
        rep = subspace.ambient
        M = np.asarray(rep.inner_product, dtype=complex)
        self.Lh = np.linalg.cholesky(M).conj().T if rep.dimension else np.zeros((0, 0))
        B = self.Lh @ subspace.basis_matrix()
        if B.shape[1]:
            q, _ = np.linalg.qr(B)
            self.Q = q[:, : np.linalg.matrix_rank(B)]
        else:
            self.Q = np.zeros((rep.dimension, 0), dtype=complex)

    def residual(self, v: np.ndarray) -> tuple[np.ndarray, float]:
        """Component of v orthogonal to the subspace (orthonormal coords) and |v|."""
        y = self.Lh @ v
        r = y - self.Q @ (self.Q.conj().T @ y)
        return r, float(np.linalg.norm(y))

    def normalized_distance(self, v: np.ndarray) -> float:
        r, nrm = self.residual(v)
        return float(np.linalg.norm(r) / nrm)

    def distance(self, v: np.ndarray) -> float:
        return float(np.linalg.norm(self.residual(v)[0]))

    def norm(self, v: np.ndarray) -> float:
        return float(np.linalg.norm(self.Lh @ v))


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WeightDecomposition:
    blocks: tuple[tuple[Weight, tuple[int, ...]], ...]

    def weights(self):
        return [w for w, _ in self.blocks]


def weight_decomposition(rep: Representation, coordinates: Sequence[int] | None = None) -> WeightDecomposition:
    """Group basis indices by torus weight.

    ``coordinates`` selects a subtorus (for instance the central U(1) factor of
    U(1) x SU(2)); by default the full standard maximal torus is used.
    """
    if rep.weights is None:
        raise ValueError(f"{rep.label} does not carry a weight basis")
    groups: dict[Weight, list[int]] = {}
    for j, w in enumerate(rep.weights):
        key = tuple(w) if coordinates is None else tuple(w[c] for c in coordinates)
        groups.setdefault(key, []).append(j)
    if rep.dimension == 0:
        return WeightDecomposition(())
    return WeightDecomposition(tuple((w, tuple(ix)) for w, ix in sorted(groups.items())))


def character_value(weight: Sequence[int], theta: np.ndarray) -> complex:
    return complex(np.exp(1j * float(np.dot(weight, theta))))


def t_invariant_hyperplanes(n: int) -> list[tuple[Subspace, int]]:
    """The n+1 torus-stable hyperplanes of U_n: coefficient of x^i y^(n-i) vanishes."""
    if n < 1:
        raise ValueError("need n >= 1")
    rep = su2_irrep(n)
    return [(Subspace.weight_complement(rep, [i], label=f"V_{i}"), 2 * i - n) for i in range(n + 1)]


def rational_torus_point(s: Fraction) -> tuple[Fraction, Fraction]:
    """A rational point (re, im) on the unit circle."""
    s = Fraction(s)
    den = 1 + s * s
    return (1 - s * s) / den, 2 * s / den


def rational_unit_quaternion(u: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Inverse stereographic projection of a rational point of R^3 onto S^3."""
    u = [Fraction(v) for v in u]
    s = sum(v * v for v in u)
    return ((s - 1) / (s + 1), *(2 * v / (s + 1) for v in u))
