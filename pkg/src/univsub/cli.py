"""Command-line front end.

Exit codes: 0 consistent, 1 configuration error, 2 inconsistency between
topological and numerical results, 3 search budget exceeded.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from dataclasses import replace
from pathlib import Path

import numpy as np

from .config import RunConfig, load_config, search_config
from .errors import ConfigError, NotCentral, SearchBudgetExceeded, UnivsubError
from .groups import SU2, SU3, Product, SU2Extension, UpperTriangular, build_root_system
from .obstruction import (
    CohomologyValue,
    ObstructionReport,
    euler_characteristic_quotient,
    flag_report,
    localization_number,
    product_obstruction_report,
    su2_obstruction_report,
    subgroup_descriptor,
    tangent_weights,
)
from .report import EXIT_BUDGET, EXIT_CONFIG, Report
from .representations import (
    Subspace,
    adjoint,
    complexified_adjoint,
    defining,
    direct_sum,
    su2_irrep,
    t_invariant_hyperplanes,
    twist,
)
from .serialize import (
    generators_from_dict,
    representation_from_dict,
    subalgebra_from_dict,
    subspace_from_dict,
)
from .solvable import (
    certificate_spread,
    random_hyperplane,
    search_against_certificate,
    solvable_flag,
    solvable_witness,
)
from .subalgebra import (
    adjoint_subspace,
    closedness_criterion,
    contains_positive_system,
    rank_of_compact_subalgebra,
    root_subspace,
)
from .universality import (
    UNIVERSAL,
    SearchConfig,
    levi_restriction_check,
    normalized_orbit_distance,
    universality_verdict,
)

OUT_DIR_ENV = "UNIVSUB_OUT_DIR"
LEVI_VALUE = 1 / np.sqrt(2)
LEVI_TOL = 1e-4
MAX_N = 20

log = logging.getLogger("univsub")


def _echo(cfg: SearchConfig, **extra) -> dict:
    return {"restarts": cfg.restarts, "tolerance": cfg.tolerance, "samples": cfg.samples, "seed": cfg.seed, **extra}


def _stats(distances) -> dict:
    d = np.asarray(distances, dtype=float)
    if d.size == 0:
        return {"max": 0.0, "mean": 0.0, "median": 0.0}
    return {"max": float(d.max()), "mean": float(d.mean()), "median": float(np.median(d))}


# ---------------------------------------------------------------------------
# su2-classify
# ---------------------------------------------------------------------------


def cmd_su2_classify(n: int, cfg: SearchConfig) -> Report:
    """All n+1 torus-stable hyperplanes of the degree-n binary forms."""
    if not 1 <= n <= MAX_N:
        raise ConfigError(f"n must lie in 1..{MAX_N}")
    report = Report("su2-classify", _echo(cfg, n=n))
    rep = su2_irrep(n)
    rows = []
    for V, k in t_invariant_hyperplanes(n):
        i = V.excluded[0]
        obs = su2_obstruction_report(n, i)
        verdict = universality_verdict(rep, V, cfg, label=f"U_{n} / V_{i}")
        report.obstructions.append(obs)
        report.add_verdict(verdict)
        value = obs.class_value
        expect_vanish = n % 4 == 0 and 2 * i == n
        if k != 0:
            report.flag(f"n={n} i={i}: class equals 2i-n", value.coordinates == (k,) and value.free_rank == 1,
                        value=list(value.coordinates), expected=k)
        report.flag(f"n={n} i={i}: vanishes exactly when n = 0 mod 4 and i = n/2", obs.vanishes == expect_vanish)
        report.flag(f"n={n} i={i}: numerical verdict Universal", verdict.kind == UNIVERSAL, verdict=verdict.kind)
        rows.append(
            {
                "i": i,
                "quotient_weight": k,
                "base_space": obs.base_space[0],
                "class": str(value),
                "vanishes": obs.vanishes,
                "verdict": verdict.kind,
                "samples": verdict.samples,
                "max_min_distance": _stats(verdict.distances)["max"],
                "mean_min_distance": _stats(verdict.distances)["mean"],
            }
        )
    report.flag(f"n={n}: row count is n+1", len(rows) == n + 1)
    report.tables["classification"] = rows
    return report


# ---------------------------------------------------------------------------
# counterexample
# ---------------------------------------------------------------------------

COUNTEREXAMPLE_VARIANTS = ("default", "odd", "factor2")


def counterexample_setup(variant: str = "default"):
    """(rep, V, parts) for the product example and its variants.

    default: SU(2) x SU(2) on sl2 + sl2 with V = b + (zero-diagonal).
    odd:     factor 1 replaced by C^2 with V_1 the line of weight -1 (odd c1).
    factor2: the second factor alone, SU(2) on sl2 with zero-diagonal V.
    """
    sl2 = complexified_adjoint(SU2())
    zero_diag = Subspace.weight_complement(sl2, [1], label="zero diagonal")
    if variant == "factor2":
        return sl2, zero_diag, [(sl2, zero_diag)]
    if variant == "default":
        first, first_v = sl2, Subspace.weight_complement(sl2, [2], label="b")
    elif variant == "odd":
        first = su2_irrep(1)
        first_v = Subspace.weight_complement(first, [1], label="weight -1 line")
    else:
        raise ConfigError(f"unknown variant {variant!r}; choose from {COUNTEREXAMPLE_VARIANTS}")
    group = Product((SU2(), SU2()))
    rep = direct_sum([first, sl2], group=group)
    excluded = list(first_v.excluded) + [first.dimension + j for j in zero_diag.excluded]
    V = Subspace.weight_complement(rep, excluded, label=f"{first_v.label} + zero diagonal")
    return rep, V, [(first, first_v), (sl2, zero_diag)]


def cmd_counterexample(cfg: SearchConfig, variant: str = "default") -> Report:
    report = Report("counterexample", _echo(cfg, variant=variant))
    rep, V, parts = counterexample_setup(variant)
    obs, infos = product_obstruction_report(parts)
    report.obstructions.append(obs)
    verdict = universality_verdict(rep, V, cfg, label=f"counterexample ({variant})")
    report.add_verdict(verdict)
    components = []
    for (space, bundle), info in zip(zip(obs.base_space, obs.bundle), infos):
        entry = {"base": space, "bundle": bundle.describe(), "quotient_weight": info["quotient_weight"]}
        if space == "S2":
            entry.update(c1=bundle.degree, abs_c1=abs(bundle.degree))
        else:
            entry.update(c1_mod2=int(bundle.kind != "trivial"))
        components.append(entry)
    report.sections["components"] = components
    if variant == "default":
        report.flag("top class vanishes in H^4(S2 x RP2)", obs.vanishes, value=str(obs.class_value))
        report.flag("c1 on S2 is twice a generator", components[0].get("abs_c1") == 2)
        report.flag("c1 on RP2 is the torsion generator", components[1].get("c1_mod2") == 1)
    else:
        report.flag("top class is nonzero", not obs.vanishes, value=str(obs.class_value))
    report.flag("numerical verdict Universal", verdict.kind == UNIVERSAL, verdict=verdict.kind)
    return report


# ---------------------------------------------------------------------------
# levi-demo
# ---------------------------------------------------------------------------


def levi_setup():
    """(rep_G, rep_S, V_G, V_S, u) for the block group [[A, B], [0, A]] on C^4."""
    G = SU2Extension()
    rep_g = defining(G)
    rep_s = direct_sum([defining(SU2()), defining(SU2())])
    rows = [[1, 0, 0, 0], [0, 0, 1, 0]]
    u = np.array([1, 0, 0, 1], dtype=complex)
    return rep_g, rep_s, Subspace.span(rep_g, rows, label="Ce1 + Ce1"), Subspace.span(rep_s, rows), u


def compact_levi_setup():
    """U(1) x SU(2) on C^2 + C^2 with central weights 1 and 2, V = Ce1 + (block 2)."""
    su2 = SU2()
    rep = direct_sum([twist(defining(su2), 1), twist(defining(su2), 2)])
    V = Subspace.span(rep, [[1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], label="Ce1 + C^2")
    levi = direct_sum([defining(su2), defining(su2)])

    def radical(rng):
        z = np.exp(1j * rng.uniform(0, 2 * np.pi))
        return np.diag([z, z, z * z, z * z])

    return rep, V, levi, radical


def cmd_levi_demo(cfg: SearchConfig) -> Report:
    report = Report("levi-demo", _echo(cfg))
    rep_g, rep_s, V_g, V_s, u = levi_setup()
    full_cfg = replace(cfg, restarts=max(cfg.restarts, 64))
    levi = normalized_orbit_distance(rep_s, u, V_s, full_cfg, stop_at=-1.0)
    whole = normalized_orbit_distance(rep_g, u, V_g, cfg)
    report.count("evaluations", levi.evaluations + whole.evaluations)
    verdict_g = universality_verdict(rep_g, V_g, cfg, label="block group on C^4")
    report.add_verdict(verdict_g)
    report.sections["levi_witness"] = {
        "vector": [[1, 0], [0, 0], [0, 0], [1, 0]],
        "levi_min_distance": levi.min_normalized_distance,
        "levi_restarts": levi.restarts_used,
        "exact_value": float(LEVI_VALUE),
        "full_group_min_distance": whole.min_normalized_distance,
    }
    report.flag("Levi factor misses V: witness distance 1/sqrt(2)",
                abs(levi.min_normalized_distance - LEVI_VALUE) < LEVI_TOL, value=levi.min_normalized_distance)
    report.flag("full group reaches V from the witness", whole.min_normalized_distance < cfg.tolerance,
                value=whole.min_normalized_distance)
    report.flag("full group universal on samples", verdict_g.kind == UNIVERSAL, verdict=verdict_g.kind)

    def unipotent(rng):
        b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        return np.block([[np.eye(2), b], [np.zeros((2, 2)), np.eye(2)]])

    try:
        levi_restriction_check(rep_g, V_g, unipotent, rep_s, cfg)
        rejected = False
    except NotCentral:
        rejected = True
    report.flag("noncompact group rejected by the compact-case hypothesis check", rejected)

    rep_c, V_c, levi_c, radical = compact_levi_setup()
    blocks = levi_restriction_check(rep_c, V_c, radical, levi_c, cfg)
    global_verdict = universality_verdict(rep_c, V_c, cfg, label="U(1) x SU(2) on C^2 + C^2")
    report.add_verdict(global_verdict)
    for b in blocks.blocks:
        report.add_verdict(b.verdict)
    if blocks.levi_verdict is not None:
        report.add_verdict(blocks.levi_verdict)
    report.sections["compact_case"] = blocks.to_dict()
    report.flag("compact case: blockwise and global verdicts agree",
                blocks.universal == (global_verdict.kind == UNIVERSAL),
                blockwise=blocks.universal, global_verdict=global_verdict.kind)
    return report


# ---------------------------------------------------------------------------
# schur
# ---------------------------------------------------------------------------

GROUPS = {"su2": SU2, "su3": SU3}


def _group(name: str):
    key = name.lower().replace("(", "").replace(")", "")
    if key in GROUPS:
        return GROUPS[key]()
    if key in ("su2xsu2", "su2^2"):
        return Product((SU2(), SU2()))
    raise ConfigError(f"unknown group {name!r}; choose su2, su3 or su2xsu2")


def cmd_schur(group: str, cfg: SearchConfig) -> Report:
    spec = _group(group)
    if not isinstance(spec, (SU2, SU3)):
        raise ConfigError("schur runs on su2 or su3")
    report = Report("schur", _echo(cfg, group=group))
    rep = complexified_adjoint(spec)
    rs = build_root_system(spec)
    V = root_subspace(rep, rs.positive_roots, label="standard Borel")
    obs = flag_report(spec)
    report.obstructions.append(obs)
    verdict = universality_verdict(rep, V, cfg, label=f"Borel in {rep.label}")
    report.add_verdict(verdict)
    c = obs.class_value.coordinates[0]
    chi = euler_characteristic_quotient(spec, "T")
    report.flag("numerical verdict Universal", verdict.kind == UNIVERSAL, verdict=verdict.kind)
    report.flag("nonzero localization number implies Universal", c == 0 or verdict.kind == UNIVERSAL,
                localization=c)
    report.flag("|localization| equals chi(G/T)", abs(c) == chi, localization=c, euler_characteristic=chi)
    return report


# ---------------------------------------------------------------------------
# solvable
# ---------------------------------------------------------------------------


def cmd_solvable(size: int, trials: int, cfg: SearchConfig, samples: int = 1000) -> Report:
    if size < 2 or trials < 1:
        raise ConfigError("need size >= 2 and trials >= 1")
    report = Report("solvable", _echo(cfg, size=size, trials=trials, group_samples=samples))
    rep = defining(UpperTriangular(size))
    flag = solvable_flag(rep.group.algebra_basis())
    report.sections["flag"] = flag.to_dict()
    report.flag("flag is invariant", flag.check())
    rng = np.random.default_rng([cfg.seed, 17])
    rows = []
    e1 = np.eye(size, dtype=complex)[0]
    for k in range(trials + 1):
        # the last trial keeps the flag line inside V, forcing a deeper witness
        V = random_hyperplane(rep, rng, containing=e1 if k == trials else None)
        w = solvable_witness(rep, V, flag)
        spread = certificate_spread(w, samples, seed=cfg.seed + k)
        best = search_against_certificate(w, cfg, stream=(k,))
        rows.append({"trial": k, "contains_e1": k == trials, "level": w.level, "certificate": w.certificate, "spread": spread,
                     "search_min": best})
        report.flag(f"trial {k}: certificate constant", spread < 1e-10, spread=spread)
        report.flag(f"trial {k}: search does not beat the certificate", best >= w.certificate - cfg.tolerance,
                    certificate=w.certificate, search_min=best)
    report.flag("hyperplane containing e1 gives a level-2 witness", rows[-1]["level"] == 2, level=rows[-1]["level"])
    report.tables["witnesses"] = rows
    return report


# ---------------------------------------------------------------------------
# euler
# ---------------------------------------------------------------------------

EULER_SUBGROUPS = {
    "su2": ["T", "N(T)", "G", "1"],
    "su3": ["T", "N(T)", "U(2)", "SU(2)", "G", "1"],
    "su2xsu2": ["T", "N(T)", "G x T", "diag SU(2)", "G", "1 x 1"],
}


def cmd_euler(group: str, subgroup: str | None, cfg: SearchConfig) -> Report:
    spec = _group(group)
    key = "su2xsu2" if isinstance(spec, Product) else group.lower().replace("(", "").replace(")", "")
    names = [subgroup] if subgroup else EULER_SUBGROUPS[key]
    report = Report("euler", _echo(cfg, group=group, subgroup=subgroup))
    rs = build_root_system(spec)
    rows = []
    for name in names:
        try:
            desc = subgroup_descriptor(spec, name)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        chi = euler_characteristic_quotient(spec, desc, strict=False)
        row = {"subgroup": name, "rank": desc.rank, "maximal_rank": desc.rank == spec.rank,
               "euler_characteristic": chi, "localization": None}
        if name == "T":
            loc = localization_number(rs, tangent_weights(rs), seed=cfg.seed)
            row["localization"] = loc
            report.obstructions.append(ObstructionReport((f"{spec.label}/T",), (), CohomologyValue(1, (), (loc,)),
                                                         ("Euler class of the tangent bundle",)))
            report.flag(f"{spec.label}/{name}: |localization| equals chi", abs(loc) == chi,
                        localization=loc, euler_characteristic=chi)
        rows.append(row)
    report.tables["euler"] = rows
    return report


# ---------------------------------------------------------------------------
# run --config
# ---------------------------------------------------------------------------


def _quotient_weights(rep, V):
    if rep.weights is None or V.excluded is None:
        return None
    return [rep.weights[j] for j in V.excluded]


def cmd_run(config: RunConfig) -> Report:
    cfg = config.search
    report = Report("run", config.to_dict())
    rep = V = None
    if config.representation and config.representation.get("kind") != "matrices":
        rep = representation_from_dict(config.representation, config.group)
        if config.subspace is not None:
            V = subspace_from_dict(config.subspace, rep)
    verdict = None
    if "verdict" in config.analyses:
        verdict = universality_verdict(rep, V, cfg, label=V.label or rep.label)
        report.add_verdict(verdict)
    if "obstruction" in config.analyses:
        weights = _quotient_weights(rep, V)
        try:
            rs = build_root_system(config.group)
        except UnivsubError:
            rs = None
        if weights is None or rs is None:
            report.sections["obstruction_note"] = "no weight data for a localization computation"
        elif len(weights) != len(rs.positive_roots):
            report.sections["obstruction_note"] = (
                f"dimension condition fails: codim V = {len(weights)}, dim_C G/T = {len(rs.positive_roots)}")
        else:
            c = localization_number(rs, weights, seed=cfg.seed)
            report.obstructions.append(ObstructionReport((f"{config.group.label}/T",), (),
                                                         CohomologyValue(1, (), (c,)),
                                                         ("localization over G/T",)))
            if verdict is not None:
                report.flag("nonzero obstruction implies Universal", c == 0 or verdict.kind == UNIVERSAL,
                            localization=c, verdict=verdict.kind)
    if "subalgebra" in config.analyses:
        h = subalgebra_from_dict(config.subalgebra)
        _subalgebra_checks(report, h, cfg)
    if "flag" in config.analyses:
        if config.representation.get("kind") == "matrices":
            gens = generators_from_dict(config.representation)
        else:
            gens = rep.group.algebra_basis()
        flag = solvable_flag(gens)
        report.sections["flag"] = flag.to_dict()
        report.flag("flag is invariant", flag.check())
    if "witness" in config.analyses:
        w = solvable_witness(rep, V)
        spread = certificate_spread(w, 1000, seed=cfg.seed)
        report.sections["witness"] = {**w.to_dict(), "spread": spread}
        report.flag("certificate constant", spread < 1e-10, spread=spread)
    return report


def _subalgebra_checks(report: Report, h, cfg: SearchConfig) -> None:
    ambient = h.ambient
    info = {"label": h.label, "dimension": h.dim}
    if h.t_stable_root_set is not None:
        base = ambient.base
        rs = build_root_system(base)
        rep = complexified_adjoint(base)
        borel = contains_positive_system(rs, h.t_stable_root_set)
        verdict = universality_verdict(rep, root_subspace(rep, h.t_stable_root_set), cfg, label=h.label)
        report.add_verdict(verdict)
        info.update(contains_borel=borel, normalizer_condition=closedness_criterion(ambient, h))
        report.flag("Borel containment matches the numerical verdict", borel == (verdict.kind == UNIVERSAL),
                    contains_borel=borel, verdict=verdict.kind)
    else:
        rank = rank_of_compact_subalgebra(h, cfg.seed)
        maximal = rank == ambient.rank
        # dim N(h) == dim h; necessary for universality
        closed = closedness_criterion(ambient, h)
        rep = adjoint(ambient)
        verdict = universality_verdict(rep, adjoint_subspace(rep, h), cfg, label=h.label)
        report.add_verdict(verdict)
        info.update(rank=rank, maximal_rank=maximal, normalizer_condition=closed)
        universal = verdict.kind == UNIVERSAL
        report.flag("maximal rank matches the numerical verdict", maximal == universal,
                    maximal_rank=maximal, verdict=verdict.kind)
        if not closed:
            report.flag("failed normalizer condition implies not universal", not universal, verdict=verdict.kind)
        if h.subgroup:
            chi = euler_characteristic_quotient(ambient, h.subgroup, strict=False)
            info["euler_characteristic"] = chi
            report.flag("chi(G/H) > 0 matches maximal rank", (chi > 0) == maximal, euler_characteristic=chi)
    report.sections["subalgebra"] = info


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the configuration-error code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
    common.add_argument("--restarts", type=int, default=None, help="restarts per orbit search (default 64)")
    common.add_argument("--tol", type=float, default=None, help="distance tolerance for 'meets V' (default 1e-6)")
    common.add_argument("--samples", type=int, default=None, help="random test vectors per verdict (default 100)")
    common.add_argument("--out", default=None, help="report path (default: $%s/<command>.json or stdout)" % OUT_DIR_ENV)
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--timing", action="store_true", help="add wall-clock seconds (reports stop being reproducible)")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="univsub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = sub.add_parser("su2-classify", parents=[common], help="torus-stable hyperplanes of SU(2) irreducibles")
    p.add_argument("--n", type=int, required=True)
    p = sub.add_parser("counterexample", parents=[common], help="vanishing top class yet universal")
    p.add_argument("--variant", choices=COUNTEREXAMPLE_VARIANTS, default="default")
    sub.add_parser("levi-demo", parents=[common], help="Levi factor versus full group")
    p = sub.add_parser("schur", parents=[common], help="Borel subalgebras are universal")
    p.add_argument("--group", choices=("su2", "su3"), default="su2")
    p = sub.add_parser("solvable", parents=[common], help="certified witnesses for solvable groups")
    p.add_argument("--size", type=int, default=3)
    p.add_argument("--trials", type=int, default=50)
    p = sub.add_parser("euler", parents=[common], help="Euler characteristics and localization")
    p.add_argument("--group", default="su3")
    p.add_argument("--subgroup", default=None)
    p = sub.add_parser("run", parents=[common], help="general pipeline from a YAML config")
    p.add_argument("--config", required=True)
    return parser


def _search(args, base: SearchConfig | None = None) -> SearchConfig:
    values = {k: v for k, v in (("seed", args.seed), ("restarts", args.restarts), ("tolerance", args.tol),
                                ("samples", args.samples)) if v is not None}
    return search_config(values, base)


def dispatch(args) -> Report:
    if args.command == "run":
        config = load_config(args.config)
        config.search = _search(args, config.search)
        if args.out is None and config.output:
            args.out = config.output
        return cmd_run(config)
    cfg = _search(args)
    if args.command == "su2-classify":
        return cmd_su2_classify(args.n, cfg)
    if args.command == "counterexample":
        return cmd_counterexample(cfg, args.variant)
    if args.command == "levi-demo":
        return cmd_levi_demo(cfg)
    if args.command == "schur":
        return cmd_schur(args.group, cfg)
    if args.command == "solvable":
        return cmd_solvable(args.size, args.trials, cfg)
    if args.command == "euler":
        return cmd_euler(args.group, args.subgroup, cfg)
    raise ConfigError(f"unknown command {args.command!r}")


def _destination(args) -> Path | None:
    if args.out:
        return Path(args.out)
    out_dir = os.environ.get(OUT_DIR_ENV)
    if out_dir:
        suffix = "csv" if args.format == "csv" else "json"
        return Path(out_dir) / f"{args.command}.{suffix}"
    return None


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    start = time.perf_counter()
    try:
        report = dispatch(args)
    except ConfigError as exc:
        print(f"univsub: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SearchBudgetExceeded as exc:
        print(f"univsub: search budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except UnivsubError as exc:
        # the inputs were readable but do not fit the requested analysis
        print(f"univsub: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    if args.timing:
        report.timing["wall_seconds"] = round(time.perf_counter() - start, 3)
    dest = _destination(args)
    if dest is None:
        sys.stdout.write(report.table_csv() if args.format == "csv" else report.to_json())
    else:
        for path in report.write(dest, args.format):
            log.info("wrote %s", path)
    code = report.exit_code()
    if code:
        failed = [f["claim"] for f in report.consistency_flags if not f["agrees"]]
        print(f"univsub: {len(failed)} consistency check(s) failed: {'; '.join(failed[:5])}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
