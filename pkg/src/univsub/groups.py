"""Matrix models, root data and Weyl groups for the catalog of groups.

Every group is described by a frozen ``GroupSpec`` subclass that knows how to
turn a flat real parameter vector into a matrix, how to draw random parameters
and how to move a parameter vector by a small chart displacement.  The chart
moves are what the orbit optimizer differentiates through.

Weights are integer vectors ``mu`` with respect to a fixed torus
parametrization ``theta -> torus_matrix(theta)``: the character attached to
``mu`` is ``exp(i * mu . theta)``.  For SU(2) the torus is
``diag(e^{i theta}, e^{-i theta})`` so the positive root is 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
import scipy.linalg
import sympy

from .errors import ParentMismatch, UnsupportedGroup

UNITARY_TOL = 1e-12
ALGEBRA_TOL = 1e-10


def _block_diag(blocks):
    return scipy.linalg.block_diag(*blocks).astype(complex)


def _polar_unitary(m):
    u, _, vh = np.linalg.svd(m)
    return u @ vh


class GroupSpec:
    """Base class; concrete kinds below."""

    label: str = "?"
    compact: bool = True

    # sizes -----------------------------------------------------------------
    @property
    def matrix_size(self) -> int:
        raise NotImplementedError

    @property
    def param_size(self) -> int:
        raise NotImplementedError

    @property
    def chart_dim(self) -> int:
        raise NotImplementedError

    @property
    def rank(self) -> int:
        raise NotImplementedError

    # parametrization ---------------------------------------------------------
    def identity_params(self) -> np.ndarray:
        raise NotImplementedError

    def random_params(self, rng: np.random.Generator) -> np.ndarray:
        raise NotImplementedError

    def to_matrix(self, params: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def move(self, params: np.ndarray, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def algebra_basis(self) -> list[np.ndarray]:
        """Real basis of the Lie algebra as complex matrices."""
        raise NotImplementedError

    def torus_params(self, theta) -> np.ndarray:
        raise UnsupportedGroup(f"{self.label} has no compact maximal torus model")

    def element(self, params) -> "GroupElement":
        params = np.asarray(params, dtype=float)
        return GroupElement(self.to_matrix(params), self, params)

    def identity(self) -> "GroupElement":
        return self.element(self.identity_params())

    def torus_element(self, theta) -> "GroupElement":
        return self.element(self.torus_params(np.atleast_1d(np.asarray(theta, dtype=float))))


def _su2_matrix(q):
    a = q[0] + 1j * q[3]
    b = q[2] + 1j * q[1]
    return np.array([[a, b], [-np.conj(b), np.conj(a)]])


def _su2_params(m):
    q = np.array([m[0, 0].real, m[0, 1].imag, m[0, 1].real, m[0, 0].imag])
    return q / np.linalg.norm(q)


_SU2_BASIS = [
    np.array([[0, 1j], [1j, 0]]),
    np.array([[0, 1], [-1, 0]], dtype=complex),
    np.array([[1j, 0], [0, -1j]]),
]


def _su2_exp(x):
    """exp(sum x_k tau_k) in closed form; (x . tau)^2 = -|x|^2 I."""
    theta = float(np.sqrt(x @ x))
    X = x[0] * _SU2_BASIS[0] + x[1] * _SU2_BASIS[1] + x[2] * _SU2_BASIS[2]
    if theta < 1e-300:
        return np.eye(2, dtype=complex) + X
    return np.cos(theta) * np.eye(2) + (np.sin(theta) / theta) * X


@dataclass(frozen=True)
class SU2(GroupSpec):
    label: str = "SU(2)"

    matrix_size = property(lambda self: 2)
    param_size = property(lambda self: 4)
    chart_dim = property(lambda self: 3)
    rank = property(lambda self: 1)

    def identity_params(self):
        return np.array([1.0, 0.0, 0.0, 0.0])

    def random_params(self, rng):
        q = rng.standard_normal(4)
        return q / np.linalg.norm(q)

    def to_matrix(self, params):
        return _su2_matrix(params)

    def move(self, params, x):
        return _su2_params(_su2_matrix(params) @ _su2_exp(np.asarray(x, dtype=float)))

    def from_matrix(self, m):
        return _su2_params(m)

    def algebra_basis(self):
        return [b.copy() for b in _SU2_BASIS]

    def torus_params(self, theta):
        t = float(theta[0])
        return np.array([np.cos(t), 0.0, 0.0, np.sin(t)])

    def weyl_params(self):
        """Parameters of w = [[0, -1], [1, 0]], which sends x -> y -> -x on linear forms."""
        return np.array([0.0, 0.0, -1.0, 0.0])


def _gell_mann():
    lam = np.zeros((8, 3, 3), dtype=complex)
    lam[0][0, 1] = lam[0][1, 0] = 1
    lam[1][0, 1], lam[1][1, 0] = -1j, 1j
    lam[2][0, 0], lam[2][1, 1] = 1, -1
    lam[3][0, 2] = lam[3][2, 0] = 1
    lam[4][0, 2], lam[4][2, 0] = -1j, 1j
    lam[5][1, 2] = lam[5][2, 1] = 1
    lam[6][1, 2], lam[6][2, 1] = -1j, 1j
    lam[7] = np.diag([1, 1, -2]) / np.sqrt(3)
    return [1j * m for m in lam]


_SU3_BASIS = _gell_mann()
_SU3_HERM = np.array([-1j * m for m in _SU3_BASIS])


@dataclass(frozen=True)
class SU3(GroupSpec):
    label: str = "SU(3)"

    matrix_size = property(lambda self: 3)
    param_size = property(lambda self: 18)
    chart_dim = property(lambda self: 8)
    rank = property(lambda self: 2)

    def identity_params(self):
        return self._pack(np.eye(3, dtype=complex))

    @staticmethod
    def _pack(m):
        return np.concatenate([m.real.ravel(), m.imag.ravel()])

    def random_params(self, rng):
        z = (rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))) / np.sqrt(2)
        q, r = np.linalg.qr(z)
        d = np.diag(r)
        q = q * (d / np.abs(d))
        q = q / np.linalg.det(q) ** (1.0 / 3.0)
        return self._pack(q)

    def to_matrix(self, params):
        return params[:9].reshape(3, 3) + 1j * params[9:].reshape(3, 3)

    def move(self, params, x):
        h = np.tensordot(np.asarray(x, dtype=float), _SU3_HERM, axes=1)
        w, v = np.linalg.eigh(h)
        step = (v * np.exp(1j * w)) @ v.conj().T
        m = _polar_unitary(self.to_matrix(params) @ step)
        m = m / np.linalg.det(m) ** (1.0 / 3.0)
        return self._pack(m)

    def from_matrix(self, m):
        return self._pack(np.asarray(m, dtype=complex))

    def algebra_basis(self):
        return [b.copy() for b in _SU3_BASIS]

    def torus_params(self, theta):
        t1, t2 = float(theta[0]), float(theta[1])
        return self._pack(np.diag(np.exp(1j * np.array([t1, t2, -t1 - t2]))))


@dataclass(frozen=True)
class Torus(GroupSpec):
    k: int = 1
    label: str = ""

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("Torus(k) needs k >= 1")
        if not self.label:
            object.__setattr__(self, "label", f"U(1)^{self.k}" if self.k > 1 else "U(1)")

    matrix_size = property(lambda self: self.k)
    param_size = property(lambda self: self.k)
    chart_dim = property(lambda self: self.k)
    rank = property(lambda self: self.k)

    def identity_params(self):
        return np.zeros(self.k)

    def random_params(self, rng):
        return rng.uniform(0.0, 2 * np.pi, self.k)

    def to_matrix(self, params):
        return np.diag(np.exp(1j * np.asarray(params, dtype=float)))

    def move(self, params, x):
        return np.asarray(params, dtype=float) + x

    def from_matrix(self, m):
        return np.angle(np.diag(m))

    def algebra_basis(self):
        out = []
        for j in range(self.k):
            e = np.zeros((self.k, self.k), dtype=complex)
            e[j, j] = 1j
            out.append(e)
        return out

    def torus_params(self, theta):
        return np.asarray(theta, dtype=float).copy()


def _box_entries(raw, box):
    return box * np.tanh(raw)


@dataclass(frozen=True)
class UpperTriangular(GroupSpec):
    """Invertible upper-triangular complex n x n matrices inside a bounded box.

    Off-diagonal entries have real and imaginary parts in (-box, box); diagonal
    entries are r e^{i phi} with |log r| < log_modulus_bound.
    """

    n: int = 2
    box: float = 3.0
    log_modulus_bound: float = 2.0
    label: str = ""
    compact = False

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("UpperTriangular(n) needs n >= 2")
        if not self.label:
            object.__setattr__(self, "label", f"B({self.n},C)")

    @property
    def _m(self):
        return self.n * (self.n - 1) // 2

    matrix_size = property(lambda self: self.n)
    param_size = property(lambda self: 2 * self.n + 2 * self._m)
    chart_dim = property(lambda self: 2 * self.n + 2 * self._m)
    rank = property(lambda self: self.n)

    def identity_params(self):
        return np.zeros(self.param_size)

    def random_params(self, rng):
        return rng.uniform(-2.0, 2.0, self.param_size)

    def to_matrix(self, params):
        n, m = self.n, self._m
        p = np.asarray(params, dtype=float)
        diag = np.exp(self.log_modulus_bound * np.tanh(p[:n]) + 1j * p[n : 2 * n])
        off = _box_entries(p[2 * n : 2 * n + m], self.box) + 1j * _box_entries(p[2 * n + m :], self.box)
        out = np.diag(diag)
        out[np.triu_indices(n, 1)] = off
        return out

    def move(self, params, x):
        return np.asarray(params, dtype=float) + x

    def algebra_basis(self):
        out = []
        for i in range(self.n):
            for j in range(i, self.n):
                e = np.zeros((self.n, self.n), dtype=complex)
                e[i, j] = 1
                out.append(e)
                out.append(1j * e)
        return out


@dataclass(frozen=True)
class Complexified(GroupSpec):
    """SL(2,C) or SL(3,C), parametrized as k * b (compact part times Borel part)."""

    base: GroupSpec = field(default_factory=SU2)
    box: float = 3.0
    log_modulus_bound: float = 2.0
    label: str = ""
    compact = False

    def __post_init__(self):
        if not isinstance(self.base, (SU2, SU3)):
            raise UnsupportedGroup("Complexified applies only to SU(2) or SU(3)")
        if not self.label:
            object.__setattr__(self, "label", f"SL({self.base.matrix_size},C)")

    @property
    def _n(self):
        return self.base.matrix_size

    @property
    def _extra(self):
        n = self._n
        return (n - 1) + n * (n - 1)

    matrix_size = property(lambda self: self._n)
    param_size = property(lambda self: self.base.param_size + self._extra)
    chart_dim = property(lambda self: self.base.chart_dim + self._extra)
    rank = property(lambda self: self.base.rank)

    def identity_params(self):
        return np.concatenate([self.base.identity_params(), np.zeros(self._extra)])

    def random_params(self, rng):
        return np.concatenate([self.base.random_params(rng), rng.uniform(-2.0, 2.0, self._extra)])

    def _borel(self, raw):
        n = self._n
        logs = self.log_modulus_bound * np.tanh(raw[: n - 1])
        diag = np.exp(np.append(logs, -logs.sum()))
        m = n * (n - 1) // 2
        off = _box_entries(raw[n - 1 : n - 1 + m], self.box) + 1j * _box_entries(raw[n - 1 + m :], self.box)
        out = np.diag(diag).astype(complex)
        out[np.triu_indices(n, 1)] = off
        return out

    def to_matrix(self, params):
        p = self.base.param_size
        return self.base.to_matrix(params[:p]) @ self._borel(params[p:])

    def move(self, params, x):
        p, c = self.base.param_size, self.base.chart_dim
        return np.concatenate([self.base.move(params[:p], x[:c]), params[p:] + x[c:]])

    def algebra_basis(self):
        b = self.base.algebra_basis()
        return b + [1j * m for m in b]


@dataclass(frozen=True)
class SU2Extension(GroupSpec):
    """Block group {[[A, B], [0, A]] : A in SU(2), B in gl(2,C)} acting on C^4.

    B ranges over a box (real and imaginary parts in (-box, box)); the Levi
    factor is the diagonal copy of SU(2), the radical the unipotent B-part.
    """

    box: float = 10.0
    label: str = "SU(2) x| gl(2,C)"
    compact = False

    matrix_size = property(lambda self: 4)
    param_size = property(lambda self: 12)
    chart_dim = property(lambda self: 11)
    rank = property(lambda self: 1)

    def identity_params(self):
        return np.concatenate([SU2().identity_params(), np.zeros(8)])

    def random_params(self, rng):
        return np.concatenate([SU2().random_params(rng), rng.uniform(-1.0, 1.0, 8)])

    def to_matrix(self, params):
        a = _su2_matrix(params[:4])
        raw = params[4:]
        b = (_box_entries(raw[:4], self.box) + 1j * _box_entries(raw[4:], self.box)).reshape(2, 2)
        out = np.zeros((4, 4), dtype=complex)
        out[:2, :2] = a
        out[2:, 2:] = a
        out[:2, 2:] = b
        return out

    def move(self, params, x):
        return np.concatenate([SU2().move(params[:4], x[:3]), params[4:] + x[3:]])

    def levi_params(self, q):
        return np.concatenate([np.asarray(q, dtype=float), np.zeros(8)])

    def algebra_basis(self):
        out = []
        for b in _SU2_BASIS:
            m = np.zeros((4, 4), dtype=complex)
            m[:2, :2] = b
            m[2:, 2:] = b
            out.append(m)
        for i in range(2):
            for j in range(2):
                for s in (1, 1j):
                    m = np.zeros((4, 4), dtype=complex)
                    m[i, 2 + j] = s
                    out.append(m)
        return out


@dataclass(frozen=True)
class Product(GroupSpec):
    factors: tuple = ()
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("Product needs at least one factor")
        if not self.label:
            object.__setattr__(self, "label", " x ".join(f.label for f in self.factors))

    compact = property(lambda self: all(f.compact for f in self.factors))
    matrix_size = property(lambda self: sum(f.matrix_size for f in self.factors))
    param_size = property(lambda self: sum(f.param_size for f in self.factors))
    chart_dim = property(lambda self: sum(f.chart_dim for f in self.factors))
    rank = property(lambda self: sum(f.rank for f in self.factors))

    def _split(self, vec, attr):
        out, k = [], 0
        for f in self.factors:
            n = getattr(f, attr)
            out.append(vec[k : k + n])
            k += n
        return out

    def split_params(self, params):
        return self._split(np.asarray(params, dtype=float), "param_size")

    def identity_params(self):
        return np.concatenate([f.identity_params() for f in self.factors])

    def random_params(self, rng):
        return np.concatenate([f.random_params(rng) for f in self.factors])

    def to_matrix(self, params):
        return _block_diag([f.to_matrix(p) for f, p in zip(self.factors, self.split_params(params))])

    def move(self, params, x):
        xs = self._split(np.asarray(x, dtype=float), "chart_dim")
        return np.concatenate([f.move(p, d) for f, p, d in zip(self.factors, self.split_params(params), xs)])

    def algebra_basis(self):
        sizes = [f.matrix_size for f in self.factors]
        out = []
        for idx, f in enumerate(self.factors):
            for b in f.algebra_basis():
                blocks = [np.zeros((s, s), dtype=complex) for s in sizes]
                blocks[idx] = b
                out.append(_block_diag(blocks))
        return out

    def torus_params(self, theta):
        theta = np.asarray(theta, dtype=float)
        parts = self._split(theta, "rank")
        return np.concatenate([f.torus_params(t) for f, t in zip(self.factors, parts)])


# ---------------------------------------------------------------------------
# elements
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupElement:
    matrix: np.ndarray
    parent: GroupSpec
    params: np.ndarray | None = None

    def components(self) -> list["GroupElement"]:
        if not isinstance(self.parent, Product):
            return [self]
        return [f.element(p) for f, p in zip(self.parent.factors, self.parent.split_params(self.params))]

    def inverse_matrix(self):
        if self.parent.compact:
            return self.matrix.conj().T
        return np.linalg.inv(self.matrix)

    def check(self, tol=UNITARY_TOL) -> bool:
        m = self.matrix
        spec = self.parent
        if isinstance(spec, (SU2, SU3)):
            return (
                np.linalg.norm(m.conj().T @ m - np.eye(len(m))) < tol
                and abs(np.linalg.det(m) - 1) < tol
            )
        if isinstance(spec, Torus):
            return np.allclose(m, np.diag(np.diag(m)), atol=0) and np.allclose(np.abs(np.diag(m)), 1, atol=tol)
        if isinstance(spec, UpperTriangular):
            return np.allclose(np.tril(m, -1), 0, atol=0) and bool(np.all(np.abs(np.diag(m)) > 0))
        if isinstance(spec, Product):
            return all(c.check(tol) for c in self.components())
        return True


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    matrix: np.ndarray
    parent: GroupSpec
    real_form: bool = True

    def check(self, tol=UNITARY_TOL) -> bool:
        m = self.matrix
        if abs(np.trace(m)) > tol and isinstance(_compact_base(self.parent), (SU2, SU3)):
            return False
        if self.real_form and self.parent.compact:
            return np.linalg.norm(m + m.conj().T) < tol
        return True


def _compact_base(spec):
    return spec.base if isinstance(spec, Complexified) else spec


def sample_group_element(spec: GroupSpec, rng: np.random.Generator) -> GroupElement:
    return spec.element(spec.random_params(rng))


def adjoint_action(g: GroupElement, X: AlgebraElement) -> AlgebraElement:
    if _compact_base(g.parent) != _compact_base(X.parent):
        raise ParentMismatch(f"{g.parent.label} cannot act on an element of Lie({X.parent.label})")
    out = g.matrix @ X.matrix @ g.inverse_matrix()
    return AlgebraElement(out, X.parent, X.real_form and g.parent.compact)


def exp_map(X: AlgebraElement) -> GroupElement:
    m = scipy.linalg.expm(X.matrix)
    spec = X.parent
    if X.real_form and hasattr(spec, "from_matrix"):
        return GroupElement(m, spec, spec.from_matrix(m))
    return GroupElement(m, spec, None)


# ---------------------------------------------------------------------------
# root data
# ---------------------------------------------------------------------------

Weight = tuple[int, ...]


@dataclass(frozen=True)
class RootSystem:
    rank: int
    roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    simple_roots: tuple[Weight, ...]
    simple_coroots: tuple[Weight, ...]
    label: str = ""

    @property
    def negative_roots(self) -> tuple[Weight, ...]:
        return tuple(tuple(-c for c in a) for a in self.positive_roots)

    def simple_coefficients(self, root: Sequence[int]) -> tuple[int, ...]:
        """Coordinates of ``root`` in the basis of simple roots (exact)."""
        if not self.simple_roots:
            return ()
        A = sympy.Matrix([list(a) for a in self.simple_roots]).T
        sol, params = A.gauss_jordan_solve(sympy.Matrix(list(root)))
        if params.shape[0]:
            raise ValueError("simple roots are not independent")
        out = []
        for c in sol:
            if not c.is_integer:
                raise ValueError(f"{tuple(root)} is not in the root lattice")
            out.append(int(c))
        return tuple(out)


_A1 = ([(2,)], [(1,)])
_A2 = ([(1, -1), (1, 2)], [(1, -1), (0, 1)])


def _simple_data(spec) -> tuple[int, list, list]:
    if isinstance(spec, (SU2, Complexified)) and isinstance(_compact_base(spec), SU2):
        return 1, *_A1
    if isinstance(spec, (SU3, Complexified)):
        return 2, *_A2
    if isinstance(spec, Torus):
        return spec.k, [], []
    if isinstance(spec, Product):
        rank, simple, coroots = 0, [], []
        parts = [_simple_data(f) for f in spec.factors]
        total = sum(p[0] for p in parts)
        for r, s, c in parts:
            pad = lambda v: tuple([0] * rank + list(v) + [0] * (total - rank - r))  # noqa: E731
            simple += [pad(v) for v in s]
            coroots += [pad(v) for v in c]
            rank += r
        return total, simple, coroots
    raise UnsupportedGroup(f"no root system for {spec.label}")


def _reflection(alpha, coroot) -> np.ndarray:
    a = np.array(alpha, dtype=np.int64)
    c = np.array(coroot, dtype=np.int64)
    return np.eye(len(a), dtype=np.int64) - np.outer(a, c)


def build_root_system(spec: GroupSpec) -> RootSystem:
    rank, simple, coroots = _simple_data(spec)
    refl = [_reflection(a, c) for a, c in zip(simple, coroots)]
    seen = {tuple(a) for a in simple}
    queue = deque(seen)
    while queue:
        a = np.array(queue.popleft(), dtype=np.int64)
        for s in refl:
            b = tuple(int(v) for v in s @ a)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    roots = tuple(sorted(seen))
    rs = RootSystem(rank, roots, (), tuple(map(tuple, simple)), tuple(map(tuple, coroots)), spec.label)
    positive = tuple(a for a in roots if all(c >= 0 for c in rs.simple_coefficients(a)))
    return RootSystem(rank, roots, positive, rs.simple_roots, rs.simple_coroots, spec.label)


@dataclass(frozen=True)
class WeylGroup:
    elements: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def matrices(self) -> list[np.ndarray]:
        return [np.array(w, dtype=np.int64).reshape(len(w), -1) for w in self.elements]

    def act(self, w, weight) -> tuple[int, ...]:
        return tuple(int(v) for v in np.array(w, dtype=np.int64) @ np.array(weight, dtype=np.int64))


def weyl_group(rs: RootSystem) -> WeylGroup:
    def key(m):
        return tuple(tuple(int(v) for v in row) for row in m)

    eye = np.eye(rs.rank, dtype=np.int64)
    gens = [_reflection(a, c) for a, c in zip(rs.simple_roots, rs.simple_coroots)]
    seen = {key(eye): eye}
    order = [key(eye)]
    queue = deque([eye])
    while queue:
        w = queue.popleft()
        for s in gens:
            v = s @ w
            k = key(v)
            if k not in seen:
                seen[k] = v
                order.append(k)
                queue.append(v)
    return WeylGroup(tuple(order))


def positive_systems(rs: RootSystem) -> list[frozenset]:
    """All Weyl images of the standard positive system."""
    W = weyl_group(rs)
    out = []
    for w in W.elements:
        ps = frozenset(W.act(w, a) for a in rs.positive_roots)
        if ps not in out:
            out.append(ps)
    return out
