"""JSON context configs.

A config may describe a linear context, a simply laced one, or both::

    {
      "ring": {"construction": "matrix", "size": 4,
               "base": {"construction": "cyclic", "modulus": 8}},
      "crossed_module": {"kind": "inclusion", "scalar": 2},
      "idempotents": {"blocks": [[1], [2], [3], [4]]},
      "root_system": "D4",
      "orientation": [[1, 2], [2, 3], [2, 4]],
      "scalar": {"ring": {"construction": "cyclic", "modulus": 8},
                 "crossed_module": {"kind": "inclusion", "scalar": 2}},
      "elimination": {"root": [1, 2]},
      "generator_cap": 5000
    }

Ring constructions are ``cyclic``, ``matrix`` and ``semidirect`` (a base ring
with an ideal given by generators).  Crossed modules are ``inclusion``,
``homotope`` or ``zero``; a ``scalar`` value over a matrix ring is applied
entrywise to the base ring, explicit ``generators`` / ``element`` use
coordinates of the ring itself.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from .chevalley import ChevalleyContext
from .context import LinearContext
from .rings import (
    CrossedModule,
    FiniteRing,
    RingError,
    cyclic,
    diagonal_family,
    homotope,
    ideal_algebra,
    ideal_inclusion,
    matrix_crossed_module,
    matrix_ring,
    semidirect,
    zero_map,
)
from .roots import RootDatum, RootError

SUITES = ("relations", "elimination", "chevalley", "ft", "all")


class ConfigError(ValueError):
    pass


@dataclass
class JobConfig:
    context: dict
    suites: tuple[str, ...] = ()
    relations: tuple[str, ...] | None = None
    samples: int = 100
    seed: int = 0
    jobs: int = 1
    out: str | None = None
    extra: dict = field(default_factory=dict)


def build_ring(spec: dict) -> FiniteRing:
    kind = spec.get("construction")
    if kind == "cyclic":
        m = spec.get("modulus")
        if not isinstance(m, int) or m < 2:
            raise ConfigError("cyclic ring needs an integer modulus >= 2")
        return cyclic(m)
    if kind == "matrix":
        n = spec.get("size")
        if not isinstance(n, int) or n < 1:
            raise ConfigError("matrix ring needs a positive size")
        return matrix_ring(n, build_ring(_need(spec, "base")))
    if kind == "semidirect":
        base = build_ring(_need(spec, "base"))
        return semidirect(ideal_algebra(base, _need(spec, "ideal_generators")))
    raise ConfigError(f"unknown ring construction {kind!r}")


def _need(spec: dict, key: str) -> Any:
    if key not in spec:
        raise ConfigError(f"missing key {key!r}")
    return spec[key]


def build_crossed_module(ring: FiniteRing, spec: dict) -> CrossedModule:
    kind = spec.get("kind", "inclusion")
    if "scalar" in spec:
        s = int(spec["scalar"])
        base = getattr(ring, "matrix_base", None)
        if base is not None:
            return matrix_crossed_module(ring.matrix_size, build_crossed_module(base, spec))
        elem = (s * ring.one) % ring.modulus
        if kind == "inclusion":
            return ideal_inclusion(ring, [elem], name=f"{s}{ring.name}")
        if kind == "homotope":
            return homotope(ring, elem)
        if kind == "zero":
            return zero_map(ring, [elem])
        raise ConfigError(f"unknown crossed module kind {kind!r}")
    if kind == "inclusion":
        return ideal_inclusion(ring, _need(spec, "generators"))
    if kind == "homotope":
        return homotope(ring, _need(spec, "element"))
    if kind == "zero":
        return zero_map(ring, _need(spec, "generators"))
    raise ConfigError(f"unknown crossed module kind {kind!r}")


def build_linear_context(cfg: dict) -> LinearContext:
    try:
        ring = build_ring(_need(cfg, "ring"))
        cm = build_crossed_module(ring, cfg.get("crossed_module", {"kind": "inclusion", "scalar": 1}))
        report = cm.validate()
        bad = [k for k, v in report.items() if not v]
        if bad:
            raise ConfigError(f"crossed module axioms fail: {', '.join(bad)}")
        blocks = cfg.get("idempotents", {}).get("blocks")
        if getattr(cm.ring, "matrix_size", None) is None:
            raise ConfigError("idempotent families are only built for matrix rings")
        return LinearContext(cm, diagonal_family(cm.ring, blocks))
    except (RingError, ValueError, TypeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def build_chevalley_context(cfg: dict) -> ChevalleyContext:
    try:
        datum = RootDatum.from_name(_need(cfg, "root_system"))
        sc = cfg.get("scalar", {"ring": {"construction": "cyclic", "modulus": 8},
                                "crossed_module": {"kind": "inclusion", "scalar": 2}})
        ring = build_ring(_need(sc, "ring"))
        cm = build_crossed_module(ring, sc.get("crossed_module", {"kind": "inclusion", "scalar": 1}))
        orientation = cfg.get("orientation")
        if orientation is not None:
            orientation = [tuple(int(v) for v in e) for e in orientation]
        return ChevalleyContext(datum, cm, orientation)
    except (RingError, RootError, ValueError, TypeError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def load_config(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config must be a JSON object")
    return data
