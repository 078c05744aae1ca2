"""Numerical orbit search and universality verdicts.

The quantity minimized is the projective distance

    d(g) = dist(rho(g) u, V) / |rho(g) u|

over the group, by multi-start damped Gauss-Newton descent in the group chart
with central-difference Jacobians and step halving.  Verdicts built on it
are sampling evidence, never proofs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import NotBlockwise, NotCentral, ZeroVector
from .groups import GroupElement, GroupSpec
from .representations import Projector, Representation, Subspace, compress

log = logging.getLogger(__name__)

UNIVERSAL = "Universal"
NOT_UNIVERSAL = "NotUniversal"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 64
    tolerance: float = 1e-6
    samples: int = 100
    seed: int = 0
    max_iter: int = 500
    grad_tol: float = 1e-9
    fd_step: float = 1e-6
    stop_below: float = 1e-9
    max_step: float = np.pi
    stall_iters: int = 15
    stall_rtol: float = 1e-6

    def __post_init__(self):
        for name in ("restarts", "samples", "max_iter"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        for name in ("tolerance", "grad_tol", "fd_step", "stop_below", "max_step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")


@dataclass
class OrbitSearchResult:
    min_normalized_distance: float
    argmin: GroupElement
    restarts_used: int
    trace: list[float]
    converged: bool
    restart_minima: list[float] = field(default_factory=list)
    statuses: list[str] = field(default_factory=list)
    evaluations: int = 0

    def to_dict(self):
        return {
            "min_normalized_distance": self.min_normalized_distance,
            "restarts_used": self.restarts_used,
            "converged": self.converged,
            "trace": list(self.trace),
            "evaluations": self.evaluations,
        }


class OrbitObjective:
    """g -> normalized distance of rho(g) u to V, plus its real residual vector."""

    def __init__(self, rep: Representation, u, V: Subspace, group: GroupSpec | None = None):
        u = np.asarray(u, dtype=complex)
        if u.shape != (rep.dimension,):
            raise ValueError("vector length does not match the representation")
        self.rep = rep
        self.group = group or rep.group
        self.u = u
        self.projector = Projector(V)
        if self.projector.norm(u) == 0:
            raise ZeroVector("u must be nonzero")
        self.evaluations = 0

    def residual(self, params) -> np.ndarray:
        self.evaluations += 1
        v = self.rep.realize(self.group.element(params)) @ self.u
        r, nrm = self.projector.residual(v)
        r = r / nrm
        return np.concatenate([r.real, r.imag])

    def value(self, params) -> float:
        return float(np.linalg.norm(self.residual(params)))

    def at(self, g: GroupElement) -> float:
        return self.projector.normalized_distance(self.rep.realize(g) @ self.u)


def local_descent(obj: OrbitObjective, p0, cfg: SearchConfig) -> tuple[np.ndarray, float, list[float], str]:
    """One restart.  Returns (params, value, history, status); history is non-increasing."""
    spec = obj.group
    p = np.asarray(p0, dtype=float)
    r = obj.residual(p)
    f = float(np.linalg.norm(r))
    hist = [f]
    dim = spec.chart_dim
    h = cfg.fd_step
    eye = np.eye(dim)
    status = "budget"
    best_at_window = f
    for it in range(cfg.max_iter):
        if f < cfg.stop_below:
            status = "target"
            break
        J = np.empty((r.size, dim))
        for k in range(dim):
            J[:, k] = (obj.residual(spec.move(p, h * eye[k])) - obj.residual(spec.move(p, -h * eye[k]))) / (2 * h)
        grad = J.T @ r
        # gradient of d = |r| itself, so a transversal zero is not mistaken for a flat point
        if np.linalg.norm(grad) < cfg.grad_tol * f:
            status = "stationary"
            break
        A = J.T @ J
        mu = f * f + 1e-12 * (np.trace(A) / dim + 1.0)
        step = -np.linalg.solve(A + mu * eye, grad)
        nrm = np.linalg.norm(step)
        if nrm > cfg.max_step:
            step *= cfg.max_step / nrm
        t = 1.0
        accepted = False
        for _ in range(50):
            q = spec.move(p, t * step)
            rq = obj.residual(q)
            fq = float(np.linalg.norm(rq))
            if fq < f:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            status = "stalled"
            break
        p, r, f = q, rq, fq
        hist.append(f)
        if (it + 1) % cfg.stall_iters == 0:
            # no measurable progress over a window: treat as a stationary point
            if best_at_window - f <= cfg.stall_rtol * best_at_window:
                status = "stalled"
                break
            best_at_window = f
    return p, f, hist, status


def _stream(cfg: SearchConfig, stream: Sequence[int]) -> list[int]:
    return [int(cfg.seed), *map(int, stream)]


def normalized_orbit_distance(
    rep: Representation,
    u,
    V: Subspace,
    cfg: SearchConfig | None = None,
    stream: Sequence[int] = (0,),
    group: GroupSpec | None = None,
    stop_at: float | None = None,
) -> OrbitSearchResult:
    """Multi-start minimization of the projective distance from the orbit of u to V.

    The first restart starts at the identity; the others at random parameters
    drawn from an RNG keyed by (seed, stream, restart).  Restarts stop once the
    best value falls below ``stop_at`` (default: the tolerance).
    """
    cfg = cfg or SearchConfig()
    obj = OrbitObjective(rep, u, V, group)
    spec = obj.group
    stop_at = cfg.tolerance if stop_at is None else stop_at
    best, best_p = np.inf, None
    trace, minima, statuses = [], [], []
    for k in range(cfg.restarts):
        if k == 0:
            p0 = spec.identity_params()
        else:
            p0 = spec.random_params(np.random.default_rng(_stream(cfg, (*stream, k))))
        p, f, _hist, status = local_descent(obj, p0, cfg)
        minima.append(f)
        statuses.append(status)
        if f < best:
            best, best_p = f, p
        trace.append(best)
        if best < stop_at:
            break
    converged = best < cfg.tolerance or all(s != "budget" for s in statuses)
    if not converged:
        log.warning("orbit search hit the iteration budget (best %.3e)", best)
    return OrbitSearchResult(
        min_normalized_distance=float(min(max(best, 0.0), 1.0)),
        argmin=spec.element(best_p),
        restarts_used=len(minima),
        trace=trace,
        converged=converged,
        restart_minima=minima,
        statuses=statuses,
        evaluations=obj.evaluations,
    )


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------


@dataclass
class Verdict:
    kind: str
    samples: int
    tolerance: float
    witness: np.ndarray | None = None
    lower_bound: float | None = None
    max_distance: float = 0.0
    distances: list[float] = field(default_factory=list)
    certificate: dict | None = None
    label: str = ""
    evidence: str = "numerical sampling evidence"
    evaluations: int = 0
    restarts: int = 0
    budget_hits: int = 0

    @property
    def universal(self) -> bool:
        return self.kind == UNIVERSAL

    def to_dict(self):
        out = {
            "label": self.label,
            "kind": self.kind,
            "evidence": self.evidence,
            "samples": self.samples,
            "tolerance": self.tolerance,
            "max_min_distance": self.max_distance,
            "mean_min_distance": float(np.mean(self.distances)) if self.distances else 0.0,
            "budget_hits": self.budget_hits,
        }
        if self.witness is not None:
            out["witness"] = [[float(z.real), float(z.imag)] for z in self.witness]
            out["lower_bound"] = self.lower_bound
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def test_vectors(rep: Representation, cfg: SearchConfig, adversarial=()) -> list[np.ndarray]:
    """Weight-basis vectors first, then Gaussian samples, then user-supplied vectors."""
    vecs = [v for v in np.eye(rep.dimension, dtype=complex)]
    rng = np.random.default_rng([cfg.seed, 7919])
    for _ in range(cfg.samples):
        if rep.real_form:
            vecs.append(rng.standard_normal(rep.dimension).astype(complex))
        else:
            vecs.append((rng.standard_normal(rep.dimension) + 1j * rng.standard_normal(rep.dimension)) / np.sqrt(2))
    vecs += [np.asarray(a, dtype=complex) for a in adversarial]
    return vecs


test_vectors.__test__ = False  # keep pytest from collecting it when imported


def universality_verdict(
    rep: Representation,
    V: Subspace,
    cfg: SearchConfig | None = None,
    adversarial=(),
    group: GroupSpec | None = None,
    label: str = "",
) -> Verdict:
    """Universal if every test vector reaches distance < tolerance; NotUniversal
    once a vector stays >= 10 * tolerance through all restarts."""
    cfg = cfg or SearchConfig()
    distances = []
    inconclusive = False
    counts = {"evaluations": 0, "restarts": 0, "budget_hits": 0}
    vectors = test_vectors(rep, cfg, adversarial)
    for idx, u in enumerate(vectors):
        if np.linalg.norm(u) == 0:
            continue
        res = normalized_orbit_distance(rep, u, V, cfg, stream=(idx,), group=group)
        counts["evaluations"] += res.evaluations
        counts["restarts"] += res.restarts_used
        counts["budget_hits"] += int(not res.converged)
        d = res.min_normalized_distance
        distances.append(d)
        if d < cfg.tolerance:
            continue
        if d >= 10 * cfg.tolerance and res.restarts_used == cfg.restarts:
            return Verdict(NOT_UNIVERSAL, len(distances), cfg.tolerance, witness=u, lower_bound=d,
                           max_distance=max(distances), distances=distances, label=label, **counts)
        inconclusive = True
    kind = INCONCLUSIVE if inconclusive else UNIVERSAL
    return Verdict(kind, len(distances), cfg.tolerance, max_distance=max(distances, default=0.0),
                   distances=distances, label=label, **counts)


# ---------------------------------------------------------------------------
# Levi reduction for compact groups
# ---------------------------------------------------------------------------


@dataclass
class LeviBlock:
    character: complex
    basis: np.ndarray
    subspace_dim: int
    verdict: Verdict


@dataclass
class LeviReport:
    blocks: list[LeviBlock]
    levi_verdict: Verdict | None = None

    @property
    def universal(self) -> bool:
        return all(b.verdict.universal for b in self.blocks)

    def to_dict(self):
        return {
            "overall": UNIVERSAL if self.universal else NOT_UNIVERSAL,
            "blocks": [
                {"dimension": int(b.basis.shape[1]), "subspace_dimension": b.subspace_dim,
                 "verdict": b.verdict.to_dict()}
                for b in self.blocks
            ],
            "levi_on_whole_space": None if self.levi_verdict is None else self.levi_verdict.to_dict(),
        }


def _orthonormal_columns(m, tol=1e-9):
    if m.shape[1] == 0:
        return m
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    return u[:, s > tol * max(1.0, s[0])]


def _intersect(A, B, tol=1e-9):
    """Orthonormal basis of span(A) cap span(B) (columns, standard inner product)."""
    if A.shape[1] == 0 or B.shape[1] == 0:
        return np.zeros((A.shape[0], 0), dtype=complex)
    M = np.hstack([A, -B])
    _, s, vh = np.linalg.svd(M)
    rank = int(np.sum(s > tol * max(1.0, s[0])))
    null = vh[rank:].conj().T
    return _orthonormal_columns(A @ null[: A.shape[1]], tol)


def levi_restriction_check(
    rep: Representation,
    V: Subspace,
    radical_sampler: Callable[[np.random.Generator], np.ndarray],
    levi_rep: Representation,
    cfg: SearchConfig | None = None,
    central_tol: float = 1e-9,
    probes: int = 8,
    whole: bool = True,
) -> LeviReport:
    """Decompose U under the central radical R and test V cap U_alpha for the Levi factor S.

    ``radical_sampler(rng)`` returns the matrix of a random element of R acting
    on U; ``levi_rep`` is S acting on the same U.  With ``whole`` the verdict
    for S acting on all of U (diagonally across blocks) is recorded too.
    """
    cfg = cfg or SearchConfig()
    rng = np.random.default_rng([cfg.seed, 104729])
    G = rep.group
    for _ in range(probes):
        r = radical_sampler(rng)
        g = rep.realize(G.element(G.random_params(rng)))
        if np.linalg.norm(r @ g - g @ r) > central_tol * max(1.0, np.linalg.norm(r) * np.linalg.norm(g)):
            raise NotCentral("radical elements do not commute with the group")

    # joint eigenspaces of a generic radical element; R is a torus here
    M = np.asarray(rep.inner_product, dtype=complex)
    Lh = np.linalg.cholesky(M).conj().T
    Linv = np.linalg.inv(Lh)
    r = Lh @ radical_sampler(rng) @ Linv
    vals, vecs = np.linalg.eig(r)
    order = np.lexsort((vals.imag.round(8), vals.real.round(8)))
    vals, vecs = vals[order], vecs[:, order]
    groups: list[list[int]] = []
    for k in range(len(vals)):
        for grp in groups:
            if abs(vals[grp[0]] - vals[k]) < 1e-7:
                grp.append(k)
                break
        else:
            groups.append([k])

    Vcols = _orthonormal_columns(Lh @ V.basis_matrix())
    blocks = []
    total = 0
    for b, grp in enumerate(groups):
        E = _orthonormal_columns(vecs[:, grp])
        VE = _intersect(E, Vcols)
        total += VE.shape[1]
        blocks.append((vals[grp[0]], E, VE))
    if total != Vcols.shape[1]:
        raise NotBlockwise("V is not the direct sum of its intersections with the weight blocks")

    out = []
    for b, (char, E, VE) in enumerate(blocks):
        basis_u = Linv @ E  # orthonormal for the rep's inner product
        sub = compress(levi_rep, basis_u, label=f"block {b}")
        coords = E.conj().T @ VE
        Vb = Subspace.span(sub, coords.T) if coords.shape[1] else Subspace.span(sub, np.zeros((0, sub.dimension)))
        verdict = universality_verdict(sub, Vb, cfg, label=f"block {b}")
        out.append(LeviBlock(complex(char), basis_u, VE.shape[1], verdict))
    levi_verdict = None
    if whole:
        levi_verdict = universality_verdict(levi_rep, Subspace.span(levi_rep, V.basis_matrix().T), cfg,
                                            label="Levi factor on U")
    return LeviReport(out, levi_verdict)
