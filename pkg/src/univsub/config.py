"""Run configuration files (YAML) for the ``run`` subcommand.

Example::

    group: {kind: su2}
    representation: {kind: irrep, n: 4}
    subspace: {kind: weight_complement, indices: [2]}
    search: {restarts: 64, tolerance: 1.0e-6, samples: 100, seed: 0}
    analyses: [verdict, obstruction]
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from pathlib import Path

import yaml

from .errors import ConfigError
from .groups import GroupSpec
from .serialize import group_from_dict, group_to_dict
from .universality import SearchConfig

ANALYSES = ("verdict", "obstruction", "subalgebra", "flag", "witness")
_SEARCH_KEYS = {"restarts": int, "tolerance": float, "samples": int, "seed": int, "max_iter": int}


@dataclass
class RunConfig:
    group: GroupSpec
    representation: dict
    subspace: dict | None = None
    search: SearchConfig = field(default_factory=SearchConfig)
    analyses: tuple[str, ...] = ("verdict",)
    subalgebra: dict | None = None
    output: str | None = None

    def to_dict(self) -> dict:
        s = self.search
        out = {
            "group": group_to_dict(self.group),
            "representation": self.representation,
            "subspace": self.subspace,
            "search": {"restarts": s.restarts, "tolerance": s.tolerance, "samples": s.samples, "seed": s.seed,
                       "max_iter": s.max_iter},
            "analyses": list(self.analyses),
        }
        if self.subalgebra is not None:
            out["subalgebra"] = self.subalgebra
        if self.output is not None:
            out["output"] = self.output
        return out


def search_config(data: dict | None, base: SearchConfig | None = None) -> SearchConfig:
    """SearchConfig from a mapping; every numeric value must be positive (seed >= 0)."""
    base = base or SearchConfig()
    data = data or {}
    if not isinstance(data, dict):
        raise ConfigError("'search' must be a mapping")
    unknown = set(data) - set(_SEARCH_KEYS)
    if unknown:
        raise ConfigError(f"unknown search keys: {sorted(unknown)}")
    values = {}
    for key, kind in _SEARCH_KEYS.items():
        if key not in data:
            continue
        try:
            values[key] = kind(data[key])
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"search.{key} must be a number") from exc
        if key == "seed":
            if values[key] < 0:
                raise ConfigError("search.seed must be non-negative")
        elif values[key] <= 0:
            raise ConfigError(f"search.{key} must be positive")
    try:
        return replace(base, **values)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def parse_config(data) -> RunConfig:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a mapping")
    if "group" not in data:
        raise ConfigError("configuration needs a 'group'")
    group = group_from_dict(data["group"])
    analyses = data.get("analyses", ["verdict"])
    if isinstance(analyses, str):
        analyses = [analyses]
    bad = [a for a in analyses if a not in ANALYSES]
    if bad:
        raise ConfigError(f"unknown analyses {bad}; choose from {list(ANALYSES)}")
    rep = data.get("representation")
    if rep is None and "subalgebra" not in analyses:
        raise ConfigError("configuration needs a 'representation'")
    if isinstance(rep, str):
        rep = {"kind": rep}
    needs_subspace = {"verdict", "obstruction", "witness"} & set(analyses)
    if needs_subspace and data.get("subspace") is None:
        raise ConfigError(f"analyses {sorted(needs_subspace)} need a 'subspace'")
    if "subalgebra" in analyses and data.get("subalgebra") is None:
        raise ConfigError("the subalgebra analysis needs a 'subalgebra' block")
    return RunConfig(
        group=group,
        representation=rep,
        subspace=data.get("subspace"),
        search=search_config(data.get("search")),
        analyses=tuple(analyses),
        subalgebra=data.get("subalgebra"),
        output=data.get("output"),
    )


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise ConfigError(f"{path} is not valid YAML: {exc}") from exc
    return parse_config(data)
