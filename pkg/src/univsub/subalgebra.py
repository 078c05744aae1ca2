"""Lie subalgebras: normalizers, rank, Borel containment and closedness.

Subalgebras are real spans of matrices inside the matrix Lie algebra of a
catalog group (complex subalgebras of sl(n, C) are listed with both X and iX).
All linear algebra is over R on the vectorization (Re, Im).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
import numpy as np
import scipy.linalg

from .errors import DegenerateDraws, InvalidRoots, UnsupportedGroup
from .groups import SU2, SU3, AlgebraElement, GroupSpec, Product, RootSystem, Torus, positive_systems
from .representations import Representation, Subspace, algebra_basis_orthonormal

CLOSURE_TOL = 1e-10


def _vec(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex).ravel()
    return np.concatenate([m.real, m.imag])


def _mat(v, n) -> np.ndarray:
    half = v.size // 2
    return (v[:half] + 1j * v[half:]).reshape(n, n)


def _orth(mats) -> np.ndarray:
    """Orthonormal columns spanning the real span of ``mats``."""
    if not mats:
        return np.zeros((0, 0))
    A = np.array([_vec(m) for m in mats]).T
    return scipy.linalg.orth(A, rcond=1e-10)


def _bracket(a, b):
    return a @ b - b @ a


def _matrices(items) -> list[np.ndarray]:
    return [np.asarray(x.matrix if isinstance(x, AlgebraElement) else x, dtype=complex) for x in items]


@dataclass(frozen=True, eq=False)
class SubalgebraSpec:
    """A real Lie subalgebra of the ambient matrix Lie algebra, by a basis.

    ``t_stable_root_set`` is set for Cartan-plus-root-space subalgebras of the
    complexified algebra.
    """

    ambient: GroupSpec
    basis: tuple
    t_stable_root_set: frozenset | None = None
    label: str = ""
    subgroup: str | None = field(default=None, compare=False)

    def __post_init__(self):
        mats = _matrices(self.basis)
        object.__setattr__(self, "basis", tuple(mats))
        if mats:
            A = np.array([_vec(m) for m in mats]).T
            if np.linalg.matrix_rank(A, tol=1e-10) != len(mats):
                raise ValueError("basis is not linearly independent")
        worst = self.closure_residual()
        if worst > CLOSURE_TOL:
            raise ValueError(f"span is not closed under the bracket (residual {worst:.2e})")

    @property
    def dim(self) -> int:
        return len(self.basis)

    def closure_residual(self) -> float:
        Q = _orth(list(self.basis))
        worst = 0.0
        for i, a in enumerate(self.basis):
            for b in self.basis[i + 1 :]:
                v = _vec(_bracket(a, b))
                r = v - Q @ (Q.T @ v) if Q.size else v
                worst = max(worst, float(np.linalg.norm(r)))
        return worst

    def contains(self, mats, tol=1e-9) -> bool:
        Q = _orth(list(self.basis))
        for m in _matrices(mats):
            v = _vec(m)
            r = v - Q @ (Q.T @ v) if Q.size else v
            if np.linalg.norm(r) > tol * max(1.0, np.linalg.norm(v)):
                return False
        return True


def _ambient_basis(g_basis) -> list[np.ndarray]:
    if isinstance(g_basis, GroupSpec):
        return _matrices(g_basis.algebra_basis())
    return _matrices(g_basis)


def normalizer_subalgebra(g_basis, h: SubalgebraSpec) -> list[np.ndarray]:
    """Basis of {X in g : [X, h] in h}, from a real linear solve."""
    G = _ambient_basis(g_basis)
    n = G[0].shape[0]
    Q = _orth(list(h.basis))
    P = np.eye(2 * n * n) - (Q @ Q.T if Q.size else 0)
    blocks = []
    for b in h.basis:
        blocks.append(P @ np.array([_vec(_bracket(g, b)) for g in G]).T)
    if not blocks:
        return _independent(G)
    M = np.vstack(blocks)
    _, sv, vh = np.linalg.svd(M)
    scale = max(1.0, max(np.linalg.norm(g) for g in G) * max(np.linalg.norm(b) for b in h.basis))
    rank = int(np.sum(sv > 1e-10 * scale))
    out = [sum(c * g for c, g in zip(col, G)) for col in vh[rank:]]
    return _independent(out)


def _independent(mats) -> list[np.ndarray]:
    Q = _orth(mats)
    n = mats[0].shape[0] if mats else 0
    return [_mat(q, n) for q in Q.T]


def _centralizer_dim(X, basis) -> int:
    if not basis:
        return 0
    M = np.array([_vec(_bracket(X, b)) for b in basis]).T
    return basis.__len__() - np.linalg.matrix_rank(M, tol=1e-9 * max(1.0, np.linalg.norm(M)))


def _rational_coefficients(rng, k) -> list[Fraction]:
    return [Fraction(int(rng.integers(-999, 1000)), int(rng.integers(1, 100))) for _ in range(k)]


def rank_of_compact_subalgebra(h: SubalgebraSpec, seed: int = 0, draws: int = 3, retries: int = 8) -> int:
    """Dimension of the centralizer in h of a generic element of h.

    Generic elements have seeded rational coefficients; ``draws`` of them must
    agree, otherwise the round is repeated up to ``retries`` times.
    """
    if h.dim == 0:
        return 0
    rng = np.random.default_rng([seed, 2711])
    for _ in range(retries):
        dims = []
        for _ in range(draws):
            coeffs = _rational_coefficients(rng, h.dim)
            X = sum(float(c) * b for c, b in zip(coeffs, h.basis))
            dims.append(_centralizer_dim(X, list(h.basis)))
        if len(set(dims)) == 1:
            return min(dims)
    raise DegenerateDraws(f"centralizer dimensions disagree after {retries} rounds: {dims}")


def is_maximal_rank(g_spec: GroupSpec, h: SubalgebraSpec, seed: int = 0) -> bool:
    return rank_of_compact_subalgebra(h, seed) == g_spec.rank


def contains_positive_system(rs: RootSystem, root_set) -> bool:
    """True if some Weyl image of the standard positive roots lies in ``root_set``."""
    roots = {tuple(int(c) for c in a) for a in root_set}
    unknown = roots - set(rs.roots)
    if unknown:
        raise InvalidRoots(f"not roots of {rs.label}: {sorted(unknown)}")
    return any(ps <= roots for ps in positive_systems(rs))


def closedness_criterion(g_spec, h: SubalgebraSpec) -> bool:
    """dim N_g(h) == dim h, the Lie-algebra shadow of h = Lie(N_G(h)°)."""
    return len(normalizer_subalgebra(g_spec, h)) == h.dim


# ---------------------------------------------------------------------------
# T-stable subalgebras of sl(n, C)
# ---------------------------------------------------------------------------


def _root_vectors(spec) -> tuple[dict, list]:
    """Root vectors keyed by root, and the Cartan basis."""
    from .representations import _sl_basis

    mats, _labels, weights = _sl_basis(spec)
    return {tuple(w): m for m, w in zip(mats, weights) if any(w)}, [m for m, w in zip(mats, weights) if not any(w)]


def is_closed_root_set(rs: RootSystem, root_set) -> bool:
    roots = {tuple(a) for a in root_set}
    for a in roots:
        for b in roots:
            s = tuple(x + y for x, y in zip(a, b))
            if s in rs.roots and s not in roots:
                return False
    return True


def t_stable_subalgebra(spec: GroupSpec, root_set, label: str = "") -> SubalgebraSpec:
    """Cartan subalgebra of sl(n, C) plus the root spaces of ``root_set`` (as a real algebra)."""
    from .groups import Complexified, build_root_system

    if not isinstance(spec, (SU2, SU3)):
        raise UnsupportedGroup("T-stable subalgebras are built inside sl(2,C) and sl(3,C)")
    rs = build_root_system(spec)
    roots = frozenset(tuple(int(c) for c in a) for a in root_set)
    if roots - set(rs.roots):
        raise InvalidRoots(f"not roots of {rs.label}: {sorted(roots - set(rs.roots))}")
    if not is_closed_root_set(rs, roots):
        raise ValueError("root set is not closed; its span is not a subalgebra")
    vectors, cartan = _root_vectors(spec)
    mats = []
    for m in cartan + [vectors[a] for a in sorted(roots)]:
        mats += [m, 1j * m]
    return SubalgebraSpec(Complexified(spec), tuple(mats), roots, label or f"t + {len(roots)} roots")


def root_subspace(rep: Representation, root_set, label: str = "") -> Subspace:
    """Cartan plus root spaces inside the complexified adjoint representation."""
    roots = {tuple(int(c) for c in a) for a in root_set}
    keep = [j for j, w in enumerate(rep.weights) if not any(w) or tuple(w) in roots]
    return Subspace.coordinate_span(rep, keep, label=label)


def sl3_root_subsets(rs: RootSystem) -> list[tuple[str, frozenset]]:
    """Named closed root subsets used for the Borel-containment comparison."""
    a1, a2 = rs.simple_roots
    a12 = tuple(x + y for x, y in zip(a1, a2))
    neg = lambda a: tuple(-x for x in a)  # noqa: E731
    pos = frozenset(rs.positive_roots)
    return [
        ("empty", frozenset()),
        ("a1 and -a1", frozenset({a1, neg(a1)})),
        ("standard Borel", pos),
        ("parabolic -a1", pos | {neg(a1)}),
        ("parabolic -a2", pos | {neg(a2)}),
        ("all roots", frozenset(rs.roots)),
        ("negative roots", frozenset(rs.negative_roots)),
        ("a1 and a1+a2", frozenset({a1, a12})),
        ("a1", frozenset({a1})),
    ]


# ---------------------------------------------------------------------------
# compact subalgebra catalog
# ---------------------------------------------------------------------------


def _u(n, i, j):
    e = np.zeros((n, n), dtype=complex)
    e[i, j] = 1
    return e


def _su2_block(n, i, j):
    """Compact su(2) on coordinates i, j of C^n."""
    h = 1j * (_u(n, i, i) - _u(n, j, j))
    return [h, _u(n, i, j) - _u(n, j, i), 1j * (_u(n, i, j) + _u(n, j, i))]


def _embed(blocks_per_factor, sizes):
    """Block-diagonal matrices from per-factor blocks (None = zero block)."""
    out = []
    for blocks in blocks_per_factor:
        parts = [b if b is not None else np.zeros((s, s), dtype=complex) for b, s in zip(blocks, sizes)]
        out.append(scipy.linalg.block_diag(*parts))
    return out


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    subalgebra: SubalgebraSpec

    @property
    def ambient(self) -> GroupSpec:
        return self.subalgebra.ambient


def subalgebra_catalog() -> list[CatalogEntry]:
    """Subalgebras of su(2), su(2)+su(2), su(3) and the torus algebra R^2.

    ``subalgebra.subgroup`` names the matching closed subgroup for Euler
    characteristics; the irrational line has none.
    """
    out = []
    su2 = SU2()
    t2, s2 = _su2_block(2, 0, 1)[0], _su2_block(2, 0, 1)
    out.append(CatalogEntry("t", SubalgebraSpec(su2, (t2,), label="t in su(2)", subgroup="T")))
    out.append(CatalogEntry("n(t)", SubalgebraSpec(su2, (t2,), label="Lie N(T) in su(2)", subgroup="N(T)")))
    out.append(CatalogEntry("su(2)", SubalgebraSpec(su2, tuple(s2), label="su(2)", subgroup="G")))

    pr = Product((SU2(), SU2()))
    sizes = (2, 2)
    out.append(CatalogEntry("t+t", SubalgebraSpec(pr, tuple(_embed([(t2, None), (None, t2)], sizes)),
                                                  label="t + t", subgroup="T x T")))
    out.append(CatalogEntry("diag su(2)", SubalgebraSpec(pr, tuple(_embed([(x, x) for x in s2], sizes)),
                                                         label="diagonal su(2)", subgroup="diag SU(2)")))
    out.append(CatalogEntry("su(2)+t", SubalgebraSpec(
        pr, tuple(_embed([(x, None) for x in s2] + [(None, t2)], sizes)), label="su(2) + t", subgroup="G x T")))
    out.append(CatalogEntry("su(2)+su(2)", SubalgebraSpec(
        pr, tuple(_embed([(x, None) for x in s2] + [(None, x) for x in s2], sizes)),
        label="su(2) + su(2)", subgroup="G x G")))

    su3 = SU3()
    t3 = [1j * (_u(3, 0, 0) - _u(3, 1, 1)), 1j * (_u(3, 1, 1) - _u(3, 2, 2))]
    blk = _su2_block(3, 0, 1)
    out.append(CatalogEntry("t", SubalgebraSpec(su3, tuple(t3), label="t in su(3)", subgroup="T")))
    out.append(CatalogEntry("n(t)", SubalgebraSpec(su3, tuple(t3), label="Lie N(T) in su(3)", subgroup="N(T)")))
    out.append(CatalogEntry("u(2)", SubalgebraSpec(su3, tuple(t3[1:] + blk), label="block u(2)", subgroup="U(2)")))
    out.append(CatalogEntry("su(2)", SubalgebraSpec(su3, tuple(blk), label="block su(2)", subgroup="SU(2)")))
    out.append(CatalogEntry("su(3)", SubalgebraSpec(su3, tuple(_matrices(su3.algebra_basis())), label="su(3)",
                                                    subgroup="G")))
    return out


def irrational_line(slope: float = np.sqrt(2)) -> CatalogEntry:
    """The line through (1, slope) in the Lie algebra of the 2-torus."""
    spec = Torus(2)
    X = 1j * np.diag([1.0, slope])
    return CatalogEntry("irrational line", SubalgebraSpec(spec, (X,), label=f"line of slope {slope:.6g}"))


def adjoint_subspace(rep: Representation, h: SubalgebraSpec, label: str = "") -> Subspace:
    """h as a real subspace of the adjoint representation's coordinates."""
    frame = algebra_basis_orthonormal(rep.group)
    coords = np.array([[np.real(np.vdot(e, b)) for e in frame] for b in h.basis])
    return Subspace.span(rep, coords, complex_flag=False, label=label or h.label)
