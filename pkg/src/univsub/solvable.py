"""Constructive Lie's theorem and certified non-universality witnesses.

A solvable Lie algebra acting on C^n has a common eigenvector.  The proof is
recursive: choose a codimension-one ideal I containing [L, L], find a joint
eigenspace W of I (which L preserves), and diagonalize the remaining element
z on W.  Repeating on quotients gives a full invariant flag.  The same code
runs in floating point or, on rational input, exactly with sympy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy.linalg
import sympy

from .errors import EigenvectorFailure, NotProper, NotSolvable, UnsupportedGroup
from .groups import AlgebraElement, GroupElement, GroupSpec
from .representations import Projector, Representation, Subspace, compress
from .universality import SearchConfig, normalized_orbit_distance

FLAG_TOL = 1e-10


# ---------------------------------------------------------------------------
# linear algebra backends
# ---------------------------------------------------------------------------


class _Numeric:
    exact = False

    def __init__(self, scale=1.0, null_rtol=1e-5):
        self.tol = 1e-8 * max(1.0, scale)
        self.null_rtol = null_rtol

    def matrix(self, m):
        return np.asarray(m, dtype=complex)

    def eye(self, n):
        return np.eye(n, dtype=complex)

    def zeros(self, r, c):
        return np.zeros((r, c), dtype=complex)

    def hstack(self, ms):
        return np.hstack(ms)

    def vstack(self, ms):
        return np.vstack(ms)

    def rank(self, m):
        if m.size == 0:
            return 0
        s = np.linalg.svd(m, compute_uv=False)
        return int(np.sum(s > self.tol))

    def null(self, m, ncols=None, rtol=None):
        """Orthonormal basis of the kernel of m."""
        n = m.shape[1] if m.size or ncols is None else ncols
        if m.shape[0] == 0:
            return np.eye(n, dtype=complex)
        # generous on purpose: an oversized eigenspace is cut down by later
        # chain elements, and the final vector is polished on the full stack
        _, s, vh = np.linalg.svd(m)
        rank = int(np.sum(s > (rtol or self.null_rtol) * max(1.0, s[0])))
        return vh[rank:].conj().T

    def eigenvalues(self, m):
        """Distinct eigenvalues, clustered, sorted by (real, imag).

        A defective eigenvalue of multiplicity k splits by about eps^(1/k);
        the mean of its cluster is accurate to working precision.
        """
        vals = np.linalg.eigvals(m)
        scale = max(1.0, float(np.linalg.norm(m)))
        out: list[list[complex]] = []
        for v in sorted(vals, key=lambda z: (round(z.real, 4), round(z.imag, 4))):
            for c in out:
                if abs(c[0] - v) < 1e-4 * scale:
                    c.append(v)
                    break
            else:
                out.append([v])
        return [complex(np.mean(c)) for c in out]

    def restrict(self, X, E):
        """Matrix of X on the X-invariant subspace spanned by the columns of E."""
        return np.linalg.lstsq(E, X @ E, rcond=None)[0]

    def complete(self, F):
        """Columns C with [F, C] a basis; orthonormal and as close to coordinate axes as possible."""
        n = F.shape[0]
        cols = [F[:, k] for k in range(F.shape[1])]
        extra = []
        for k in range(n):
            v = np.zeros(n, dtype=complex)
            v[k] = 1
            for c in cols + extra:
                v = v - np.vdot(c, v) * c
            nrm = np.linalg.norm(v)
            if nrm > 1e-6:
                extra.append(v / nrm)
            if len(cols) + len(extra) == n:
                break
        return np.array(extra).T if extra else np.zeros((n, 0), dtype=complex)

    def quotient(self, X, F, C):
        """Action on C^n / span(F) in the coordinates of C."""
        T = np.hstack([F, C])
        return np.linalg.solve(T, X @ C)[F.shape[1] :]

    def normalize(self, v):
        v = v / np.linalg.norm(v)
        k = int(np.flatnonzero(np.abs(v) > 1e-9)[-1])
        return v * (abs(v[k]) / v[k])

    def lam(self, X, v):
        return complex(np.vdot(v, X @ v) / np.vdot(v, v))

    def scalar(self, z):
        return complex(z)

    def polish(self, mats, w, rounds=6):
        """Refine a common eigenvector: project w onto the near-kernel of the stacked X - lambda(X)."""
        mats, _ = _span_basis(self, mats)
        mats = [X / np.linalg.norm(X) for X in mats]
        if not mats:
            return self.normalize(w)
        for _ in range(rounds):
            A = np.vstack([X - self.lam(X, w) * np.eye(len(w)) for X in mats])
            _, s, vh = np.linalg.svd(A)
            near = vh[s <= 1e-6 * max(1.0, s[0])]
            if len(near) == 0:
                near = vh[-1:]
            w = near.conj().T @ (near @ w)
            w = w / np.linalg.norm(w)
        return self.normalize(w)


class _Exact:
    exact = True
    tol = 0

    def matrix(self, m):
        return sympy.Matrix(m)

    def eye(self, n):
        return sympy.eye(n)

    def zeros(self, r, c):
        return sympy.zeros(r, c)

    def hstack(self, ms):
        return sympy.Matrix.hstack(*ms)

    def vstack(self, ms):
        return sympy.Matrix.vstack(*ms)

    def rank(self, m):
        return 0 if 0 in m.shape else m.rank(simplify=True)

    def null(self, m, ncols=None):
        n = m.shape[1]
        if m.shape[0] == 0:
            return sympy.eye(n)
        ns = m.nullspace(simplify=True)
        return sympy.Matrix.hstack(*ns) if ns else sympy.zeros(n, 0)

    def eigenvalues(self, m):
        vals = list(m.eigenvals(simplify=True).keys())
        return sorted(vals, key=lambda z: (float(sympy.re(z)), float(sympy.im(z))))

    def restrict(self, X, E):
        sol = (E.H * E).solve(E.H * (X * E))
        return sol.applyfunc(sympy.nsimplify)

    def complete(self, F):
        n = F.shape[0]
        cur = F
        extra = []
        for k in range(n):
            if cur.shape[1] == n:
                break
            e = sympy.zeros(n, 1)
            e[k] = 1
            cand = sympy.Matrix.hstack(cur, e)
            if cand.rank() > cur.rank():
                cur = cand
                extra.append(e)
        return sympy.Matrix.hstack(*extra) if extra else sympy.zeros(n, 0)

    def quotient(self, X, F, C):
        T = sympy.Matrix.hstack(F, C)
        return (T.inv() * (X * C))[F.shape[1] :, :]

    def normalize(self, v):
        k = max(i for i in range(v.shape[0]) if v[i] != 0)
        return (v / v[k]).applyfunc(sympy.simplify)

    def lam(self, X, v):
        k = next(i for i in range(v.shape[0]) if v[i] != 0)
        return sympy.simplify((X * v)[k] / v[k])

    def scalar(self, z):
        return complex(z)

    def polish(self, mats, w):
        return w


def _vec(be, m):
    if be.exact:
        return m.reshape(m.shape[0] * m.shape[1], 1)
    return m.reshape(-1, 1)


def _span_basis(be, mats):
    """Linearly independent subset (greedy) of a list of square matrices."""
    out, stack = [], None
    for m in mats:
        col = _vec(be, m)
        cand = col if stack is None else be.hstack([stack, col])
        if be.rank(cand) > (0 if stack is None else stack.shape[1]):
            out.append(m)
            stack = cand
    return out, stack


def _bracket(a, b):
    return a * b - b * a if isinstance(a, sympy.MatrixBase) else a @ b - b @ a


def lie_closure(be, generators):
    basis, _ = _span_basis(be, generators)
    changed = True
    while changed:
        changed = False
        new = [_bracket(a, b) for i, a in enumerate(basis) for b in basis[i + 1 :]]
        grown, _ = _span_basis(be, basis + new)
        if len(grown) > len(basis):
            basis, changed = grown, True
    return basis


def derived_series_dims(be, basis) -> list[int]:
    """Dimensions of L, [L, L], [[L, L], [L, L]], ... down to 0 or a fixed point."""
    dims = [len(basis)]
    cur = basis
    for _ in range(len(basis) + 1):
        if not cur:
            return dims
        nxt, _ = _span_basis(be, [_bracket(a, b) for i, a in enumerate(cur) for b in cur[i + 1 :]])
        dims.append(len(nxt))
        if len(nxt) == len(cur):
            raise NotSolvable(f"derived series stabilizes at dimension {len(nxt)}")
        cur = nxt
    return dims


def _split_ideal(be, basis):
    """(I, z): a codimension-one ideal containing [L, L], and an element outside it."""
    derived, _ = _span_basis(be, [_bracket(a, b) for i, a in enumerate(basis) for b in basis[i + 1 :]])
    full, _ = _span_basis(be, derived + list(basis))
    # full = derived followed by a complement taken from the basis
    return full[:-1], full[-1]


def _pivot(be, E):
    """Smallest m with E meeting span(e_1..e_m), and a vector of E there."""
    n, k = E.shape
    for m in range(1, n + 1):
        tail = E[m:, :]
        if be.rank(tail) < k:
            coeff = be.null(tail, k)
            v = E * coeff[:, 0] if be.exact else E @ coeff[:, 0]
            return m, v
    raise EigenvectorFailure("empty eigenspace")


def _ideal_chain(be, basis):
    """x_1, ..., x_d with span(x_1..x_k) a codimension-one ideal of span(x_1..x_{k+1})."""
    basis, _ = _span_basis(be, basis)
    if not basis:
        return []
    ideal, z = _split_ideal(be, basis)
    if not be.exact:
        # unit norm keeps the stacked kernels below well balanced
        z = z / np.linalg.norm(z)
    return _ideal_chain(be, ideal) + [z]


def _generic_candidates(be, basis, n, rtol=1e-8):
    """Shortcuts for nilpotent L and for L whose generic element has simple spectrum.

    Common eigenvectors are eigenvectors of every element, so with simple
    spectrum they are among the n eigenvectors of the generic element; each
    is tested directly.  Returns None when the spectrum is not simple.
    """
    basis, _ = _span_basis(be, basis)
    if not basis:
        return None
    mats = [b / np.linalg.norm(b) for b in basis]
    if all(np.linalg.norm(np.linalg.matrix_power(m, n)) < 1e-8 for m in mats):
        # nilpotent algebra: the only weight is zero
        E = be.null(np.vstack(mats), rtol=1e-9)
        return E if E.shape[1] else None
    rng = np.random.default_rng(20231)
    X = sum(c * m for c, m in zip(rng.uniform(0.5, 1.5, len(mats)), mats))
    vals, vecs = np.linalg.eig(X)
    gaps = [abs(a - b) for i, a in enumerate(vals) for b in vals[i + 1 :]]
    if gaps and min(gaps) < 1e-3:
        return None
    best = None
    for k in np.lexsort((vals.imag, vals.real)):
        w = vecs[:, k] / np.linalg.norm(vecs[:, k])
        if max(np.linalg.norm(m @ w - be.lam(m, w) * w) for m in mats) > rtol:
            continue
        E = w[:, None]
        key = _pivot(be, E)[0]
        if best is None or key < best[0]:
            best = (key, E)
    return None if best is None else best[1]


def _joint_eigenspace(be, basis, n):
    """Full joint eigenspace of L for one weight (chosen by earliest pivot).

    Along the ideal chain, W_k = W_{k-1} cap ker(x_k - mu_k) with mu_k an
    eigenvalue of x_k on W_{k-1}; W_{k-1} is x_k-invariant because it is a
    full joint eigenspace of an ideal.  Each W_k is recomputed as the kernel
    of the stacked x_j - mu_j, so numerical errors do not compound.
    """
    if not be.exact:
        E = _generic_candidates(be, basis, n)
        if E is not None:
            return E
    W = be.eye(n)
    shifted = []
    for x in _ideal_chain(be, basis):
        Z = be.restrict(x, W)
        best = None
        for mu in be.eigenvalues(Z):
            A = be.vstack(shifted + [x - mu * be.eye(n)])
            E = be.null(A)
            if E.shape[1] == 0:
                continue
            key = _pivot(be, E)[0]
            if best is None or key < best[0]:
                best = (key, mu, E)
        if best is None:
            raise EigenvectorFailure("no eigenvector found on the joint eigenspace")
        _, mu, W = best
        shifted.append(x - mu * be.eye(n))
    return W


@dataclass
class SolvableFlag:
    """Invariant flag U_1 < ... < U_n with the characters on each quotient line.

    ``filtration[j]`` has j+1 columns; ``characters[j][k]`` is the eigenvalue of
    generator k on U_{j+1}/U_j.
    """

    filtration: list[np.ndarray]
    characters: list[list[complex]]
    generators: list[np.ndarray]
    exact: bool = False
    exact_vectors: list | None = field(default=None, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.filtration)

    def vectors(self) -> np.ndarray:
        return self.filtration[-1] if self.filtration else np.zeros((0, 0))

    def residual(self) -> float:
        """Largest invariance defect of the flag over all generators."""
        worst = 0.0
        for j, U in enumerate(self.filtration):
            q, _ = np.linalg.qr(U)
            for X in self.generators:
                img = X @ q
                worst = max(worst, float(np.linalg.norm(img - q @ (q.conj().T @ img))))
        return worst

    def check(self, tol=FLAG_TOL) -> bool:
        dims_ok = all(U.shape[1] == j + 1 for j, U in enumerate(self.filtration))
        return dims_ok and self.residual() < tol * max(1.0, max(np.linalg.norm(X) for X in self.generators))

    def to_dict(self):
        def cpx(z):
            return [float(complex(z).real), float(complex(z).imag)]

        return {
            "dimension": self.dimension,
            "exact": self.exact,
            "flag_vectors": [[cpx(z) for z in col] for col in self.vectors().T],
            "characters": [[cpx(z) for z in row] for row in self.characters],
            "invariance_residual": self.residual(),
        }


def _as_matrix(g):
    return g.matrix if isinstance(g, AlgebraElement) else g


def _numeric_form(m) -> np.ndarray:
    if isinstance(m, sympy.MatrixBase):
        return np.array(m.evalf(), dtype=complex)
    arr = np.asarray(m)
    if arr.dtype == object:
        return np.vectorize(lambda z: complex(z), otypes=[complex])(arr)
    return arr.astype(complex)


def _rational(x, max_den=10**6):
    """Exact rational for x, snapping decimal input that agrees with a small fraction."""
    if isinstance(x, (int, Fraction)):
        return sympy.Rational(Fraction(x))
    x = float(x)
    f = Fraction(x).limit_denominator(max_den)
    if abs(float(f) - x) > 1e-13 * max(1.0, abs(x)):
        return None
    return sympy.Rational(f)


def _exact_form(m):
    """sympy matrix over Q(i), or None when some entry is not (close to) a small fraction."""
    if isinstance(m, sympy.MatrixBase):
        ok = all(sympy.re(z).is_rational and sympy.im(z).is_rational for z in m)
        return m if ok else None
    arr = np.asarray(m, dtype=object)
    out = sympy.zeros(*arr.shape)
    for (i, j), z in np.ndenumerate(arr):
        if isinstance(z, (int, Fraction, np.integer)):
            re, im = _rational(int(z) if isinstance(z, np.integer) else z), sympy.Integer(0)
        else:
            z = complex(z)
            re, im = _rational(z.real), _rational(z.imag)
        if re is None or im is None:
            return None
        out[i, j] = re + sympy.I * im
    return out


def _build_flag(be, gens, n):
    basis = lie_closure(be, gens)
    derived_series_dims(be, basis)
    F = be.zeros(n, 0)
    characters = []
    for _ in range(n):
        C = be.complete(F)
        q = [be.quotient(X, F, C) for X in basis]
        E = _joint_eigenspace(be, q, C.shape[1])
        _, w = _pivot(be, E)
        w = be.polish(q, be.normalize(w))
        v = C * w if be.exact else C @ w
        if not be.exact:
            # drop the component inside F so the columns stay orthonormal
            v = v - F @ (F.conj().T @ v)
            v = v / np.linalg.norm(v)
        characters.append([be.scalar(be.lam(be.matrix(Xq), w)) for Xq in (be.quotient(X, F, C) for X in gens)])
        F = be.hstack([F, v if be.exact else v[:, None]])
    return F, characters


def solvable_flag(generators: Sequence, exact: bool | None = None, tol: float = FLAG_TOL) -> SolvableFlag:
    """Full flag of subspaces invariant under every generator.

    Generators may be arrays, AlgebraElements or sympy matrices.  Entries
    that are fractions (or decimals equal to fractions with denominator at
    most 10^6) make the input rational.

    Raises NotSolvable when the generated Lie algebra is not solvable and
    EigenvectorFailure when the floating-point flag misses ``tol`` and the
    input is not rational (rational input is retried exactly).
    """
    raw = [_as_matrix(g) for g in generators]
    gens = [_numeric_form(g) for g in raw]
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].shape[0]
    if any(g.shape != (n, n) for g in gens):
        raise ValueError("generators must be square matrices of one size")
    exact_gens = [_exact_form(g) for g in raw]
    rational = all(g is not None for g in exact_gens)
    if not exact:
        scale = max(float(np.linalg.norm(g)) for g in gens)
        try:
            F, chars = _build_flag(_Numeric(scale), gens, n)
            flag = SolvableFlag([F[:, : j + 1] for j in range(n)], chars, gens)
            if flag.check(tol):
                return flag
            problem = f"flag invariance residual {flag.residual():.2e} exceeds {tol:.0e}"
        except EigenvectorFailure as exc:
            problem = str(exc)
        if exact is False or not rational:
            raise EigenvectorFailure(problem)
    if not rational:
        raise EigenvectorFailure("exact mode needs rational (Gaussian rational) generators")
    be = _Exact()
    F, chars = _build_flag(be, exact_gens, n)
    Fn = np.array(F.evalf(), dtype=complex)
    q, _ = np.linalg.qr(Fn)
    # orthonormalize column by column; span of the first j columns is unchanged
    return SolvableFlag([q[:, : j + 1] for j in range(n)], chars, gens, exact=True,
                        exact_vectors=[F[:, j] for j in range(n)])


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


def lie_algebra_action(rep: Representation, h: float = 1e-3) -> list[np.ndarray]:
    """Images of the group's Lie algebra basis under d rho.

    Exact for defining representations; otherwise a five-point difference
    quotient of t -> rho(exp(tX)).
    """
    spec = rep.group
    basis = spec.algebra_basis()
    if rep.descriptor.get("kind") == "defining":
        return [np.asarray(b, dtype=complex) for b in basis]
    out = []
    for X in basis:
        def r(t):
            return rep.realize(GroupElement(scipy.linalg.expm(t * X), spec, None))

        out.append((-r(2 * h) + 8 * r(h) - 8 * r(-h) + r(-2 * h)) / (12 * h))
    return out


@dataclass
class SolvableWitness:
    vector: np.ndarray
    level: int
    certificate: float
    quotient_basis: np.ndarray
    quotient_rep: Representation
    quotient_subspace: Subspace
    quotient_vector: np.ndarray
    flag: SolvableFlag

    @property
    def depth(self) -> int:
        """Number of flag steps that lay inside V before the witness line."""
        return self.level - 1

    def quotient_distance(self, g: GroupElement) -> float:
        """Normalized distance to V/U_{level-1} of the image of the witness."""
        return Projector(self.quotient_subspace).normalized_distance(self.quotient_rep.realize(g) @ self.quotient_vector)

    def to_dict(self):
        return {
            "level": self.level,
            "depth": self.depth,
            "certificate": self.certificate,
            "witness": [[float(z.real), float(z.imag)] for z in self.vector],
        }


def solvable_witness(rep: Representation, V: Subspace, flag: SolvableFlag | None = None) -> SolvableWitness:
    """A vector whose orbit provably misses V, for a connected solvable group.

    Walks the invariant flag: the first U_k not inside V gives the witness
    u in U_k \\ V.  Modulo U_{k-1} (which lies in V) the orbit of u stays on a
    line, so the quotient-level normalized distance is a constant certificate.
    """
    if rep.group.compact:
        raise UnsupportedGroup("solvable witnesses need a connected solvable group")
    if not V.is_proper:
        raise NotProper("V is the whole space")
    if flag is None:
        flag = solvable_flag(lie_algebra_action(rep))
    M = np.asarray(rep.inner_product, dtype=complex)
    Vb = V.basis_matrix()
    rank_v = np.linalg.matrix_rank(Vb, tol=1e-9)
    n = rep.dimension
    for k in range(1, n + 1):
        U = flag.filtration[k - 1]
        if np.linalg.matrix_rank(np.hstack([Vb, U]), tol=1e-9) > rank_v:
            break
    U_prev = flag.filtration[k - 2] if k > 1 else np.zeros((n, 0), dtype=complex)
    # orthonormal basis (rep inner product) of the complement of U_{k-1}
    Lh = np.linalg.cholesky(M).conj().T
    qy, _ = np.linalg.qr(Lh @ U_prev, mode="complete") if k > 1 else (np.eye(n, dtype=complex), None)
    comp = np.linalg.solve(Lh, qy[:, U_prev.shape[1] :])
    quotient = compress(rep, comp, label=f"quotient by U_{k - 1}")
    left = comp.conj().T @ M
    # V / U_{k-1}, realized inside the complement
    vq = left @ Vb
    keep = np.linalg.svd(vq, full_matrices=False)
    vq = keep[0][:, keep[1] > 1e-9 * max(1.0, keep[1][0])] if vq.shape[1] else vq
    Vq = Subspace.span(quotient, vq.T, label="V mod U")
    uq = left @ flag.filtration[k - 1][:, k - 1]
    u = comp @ uq
    u = u / np.sqrt(np.real(np.vdot(u, M @ u)))
    uq = left @ u
    cert = Projector(Vq).normalized_distance(uq)
    return SolvableWitness(u, k, float(cert), comp, quotient, Vq, uq, flag)


def certificate_spread(w: SolvableWitness, samples: int = 1000, seed: int = 0) -> float:
    """max - min of the quotient-level distance over sampled group elements."""
    spec = w.quotient_rep.group
    rng = np.random.default_rng([seed, 31])
    vals = [w.quotient_distance(spec.element(spec.random_params(rng))) for _ in range(samples)]
    return float(max(vals) - min(vals))


def search_against_certificate(w: SolvableWitness, cfg: SearchConfig | None = None, stream=(0,)) -> float:
    """Best quotient-level distance a full multi-start search reaches (no early stop)."""
    cfg = cfg or SearchConfig()
    res = normalized_orbit_distance(w.quotient_rep, w.quotient_vector, w.quotient_subspace, cfg, stream=stream,
                                    stop_at=-1.0)
    return res.min_normalized_distance


def random_hyperplane(rep: Representation, rng: np.random.Generator, containing=None) -> Subspace:
    """Kernel of a random functional (optionally vanishing on ``containing``)."""
    n = rep.dimension
    phi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if containing is not None:
        C = np.atleast_2d(np.asarray(containing, dtype=complex)).T
        phi = phi - C @ np.linalg.lstsq(C, phi, rcond=None)[0]
    # kernel of v -> phi^* v
    _, _, vh = np.linalg.svd(phi.conj()[None, :])
    return Subspace.span(rep, vh[1:], label="random hyperplane")
