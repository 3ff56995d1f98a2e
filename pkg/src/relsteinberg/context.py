"""Linear contexts: a crossed module d: A -> R together with idempotents of R.

All payloads and parameters are stored as coordinate tuples in the semidirect
ring S = A x| R, so that a in e_i A e_j and p in e_j R e_i multiply directly.
"""
from __future__ import annotations

import hashlib
from functools import cached_property
from typing import Hashable, Sequence

import numpy as np

from .rings import (
    CrossedModule,
    IdempotentFamily,
    RingError,
    SemidirectRing,
    lift_to_semidirect,
    semidirect,
)
from .zmod import Submodule, solve_mod

Coords = tuple[int, ...]
Label = Hashable


def _tup(x: np.ndarray) -> Coords:
    return tuple(int(v) for v in x)


class LinearContext:
    """Everything needed to build, evaluate and sample linear symbols."""

    def __init__(self, crossed: CrossedModule, family: IdempotentFamily,
                 semi: SemidirectRing | None = None, min_size: int = 3, check: bool = True):
        if family.ring is not crossed.ring and family.ring.dim != crossed.ring.dim:
            raise RingError("idempotent family lives in a different ring")
        if family.n < min_size:
            raise RingError(f"need at least {min_size} idempotents, got {family.n}")
        self.crossed = crossed
        self.family = family
        self.S = semi if semi is not None else semidirect(crossed)
        self.modulus = self.S.modulus
        self.dim = self.S.dim
        self.labels = family.labels
        self.n = family.n
        self._e = {lab: self.S.embed_r(family[lab]) for lab in self.labels}
        self._a_comp: dict = {}
        self._r_comp: dict = {}
        self._s_comp: dict = {}
        self.eval_cache: dict = {}
        if check:
            report = family.validate(min_size)
            bad = [k for k, v in report.items() if not v]
            if bad:
                raise RingError(f"invalid idempotent family: {', '.join(bad)} failed")

    def __repr__(self) -> str:
        return f"LinearContext({self.crossed.name}, labels={list(self.labels)})"

    # ------------------------------------------------------------ arithmetic
    @cached_property
    def zero(self) -> Coords:
        return (0,) * self.dim

    @cached_property
    def one(self) -> np.ndarray:
        return self.S.one

    def arr(self, x: Sequence[int]) -> np.ndarray:
        return np.asarray(x, dtype=np.int64)

    def mul(self, *xs: Sequence[int]) -> Coords:
        out = self.arr(xs[0])
        for x in xs[1:]:
            out = self.S.mul(out, self.arr(x))
        return _tup(out)

    def add(self, *xs: Sequence[int]) -> Coords:
        out = np.zeros(self.dim, dtype=np.int64)
        for x in xs:
            out = out + self.arr(x)
        return _tup(out % self.modulus)

    def neg(self, x: Sequence[int]) -> Coords:
        return _tup((-self.arr(x)) % self.modulus)

    def sub(self, x: Sequence[int], y: Sequence[int]) -> Coords:
        return _tup((self.arr(x) - self.arr(y)) % self.modulus)

    def scale(self, c: int, x: Sequence[int]) -> Coords:
        return _tup((c * self.arr(x)) % self.modulus)

    def d(self, a: Sequence[int]) -> Coords:
        """The structure map, applied to the ideal block of S."""
        return _tup(self.S.d(a))

    def e(self, label: Label) -> np.ndarray:
        return self._e[label]

    def peirce(self, i: Label, x: Sequence[int], j: Label) -> Coords:
        return _tup(self.S.mul(self.S.mul(self._e[i], self.arr(x)), self._e[j]))

    # ------------------------------------------------------------ components
    def a_component(self, i: Label, j: Label) -> Submodule:
        """e_i A e_j inside S."""
        key = (i, j)
        if key not in self._a_comp:
            gens = [self.peirce(i, g, j) for g in self.S.ideal.gens]
            self._a_comp[key] = Submodule.span(self.modulus, self.dim, gens)
        return self._a_comp[key]

    def r_component(self, i: Label, j: Label) -> Submodule:
        """e_i R e_j inside S (the R block)."""
        key = (i, j)
        if key not in self._r_comp:
            gens = [self.peirce(i, self.S.embed_r(g), j) for g in self.S.base.carrier.gens]
            self._r_comp[key] = Submodule.span(self.modulus, self.dim, gens)
        return self._r_comp[key]

    def s_component(self, i: Label, j: Label) -> Submodule:
        """e_i S e_j, parameters of the relativized group."""
        key = (i, j)
        if key not in self._s_comp:
            gens = [self.peirce(i, g, j) for g in self.S.carrier.gens]
            self._s_comp[key] = Submodule.span(self.modulus, self.dim, gens)
        return self._s_comp[key]

    def sample_a(self, i: Label, j: Label, rng: np.random.Generator) -> Coords:
        return _tup(self.a_component(i, j).sample(rng))

    def sample_r(self, i: Label, j: Label, rng: np.random.Generator) -> Coords:
        return _tup(self.r_component(i, j).sample(rng))

    def sample_s(self, i: Label, j: Label, rng: np.random.Generator) -> Coords:
        return _tup(self.s_component(i, j).sample(rng))

    def in_a(self, i: Label, j: Label, x: Sequence[int]) -> bool:
        return self.a_component(i, j).contains(x)

    def in_r(self, i: Label, j: Label, x: Sequence[int]) -> bool:
        return self.r_component(i, j).contains(x)

    def in_s(self, i: Label, j: Label, x: Sequence[int]) -> bool:
        return self.s_component(i, j).contains(x)

    # ------------------------------------------------------------ derived contexts
    def merge(self, l: Label, m: Label) -> "LinearContext":
        """Context for the family with e_l and e_m replaced by e_l + e_m."""
        return LinearContext(self.crossed, self.family.merge(l, m), semi=self.S,
                             min_size=2, check=False)

    @cached_property
    def opposite(self) -> "LinearContext":
        """The same data over R^op and A^op; coordinates are unchanged."""
        cm = self.crossed.opposite()
        return LinearContext(cm, self.family.on(cm.ring), min_size=2, check=False)

    @cached_property
    def relativized(self) -> "LinearContext":
        """A as a crossed module over S = A x| R with d(a) = a + 0."""
        lifted = lift_to_semidirect(self.crossed)
        return LinearContext(lifted, self.family.lift(self.S), min_size=2, check=False)

    def to_relativized(self, x: Sequence[int], ideal: bool) -> Coords:
        """Coordinates of an element of S in the relativized semidirect ring.

        Elements of A go to the new ideal block; parameters (elements of S)
        go to the new ring block."""
        rel = self.relativized.S
        if ideal:
            return _tup(rel.embed_a(self.S.a_part(x)))
        return _tup(rel.embed_r(x))

    def fullness_decomposition(self, x: Sequence[int], i: Label, j: Label, k: Label) -> list[tuple[Coords, Coords]]:
        """Write x in e_i A e_j as sum of u v with u in e_i A e_k, v in e_k R e_j."""
        key = ("full", tuple(int(v) for v in x), i, j, k)
        cached = self.eval_cache.get(key)
        if cached is not None:
            return cached
        if k in (i, j):
            raise RingError("auxiliary index must differ from i and j")
        if not any(int(v) % self.modulus for v in x):
            return []
        ua = self.a_component(i, k).gens
        vr = self.r_component(k, j).gens
        pairs = [(u, v) for u in ua for v in vr]
        prods = [self.mul(u, v) for u, v in pairs]
        coeffs = solve_mod(prods, x, self.modulus)
        if coeffs is None:
            raise RingError("fullness decomposition does not exist; idempotent not full")
        out = []
        for c, (u, v) in zip(coeffs, pairs):
            if c:
                out.append((self.scale(c, u), tuple(v)))
        self.eval_cache[key] = out
        return out

    # ------------------------------------------------------------ identity
    @cached_property
    def fingerprint(self) -> str:
        h = hashlib.sha256()
        h.update(str(self.modulus).encode())
        h.update(np.ascontiguousarray(self.S.table).tobytes())
        h.update(np.ascontiguousarray(self.crossed.dmap).tobytes())
        h.update(repr((self.S.carrier.hermite, self.S.ideal.hermite)).encode())
        for lab, e in zip(self.labels, self.family.elements):
            h.update(repr((lab, e)).encode())
        return h.hexdigest()[:16]

    def validate(self) -> dict[str, bool]:
        report = {f"crossed_module.{k}": v for k, v in self.crossed.validate().items()}
        report.update({f"ring.{k}": v for k, v in self.crossed.ring.validate().items()})
        report.update({f"family.{k}": v for k, v in self.family.validate().items()})
        return report
