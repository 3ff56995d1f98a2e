"""Finite rings, non-unital algebras, crossed modules and semidirect rings.

A ring or algebra lives on an ambient free module (Z/m)^k with a bilinear
structure-constant table; the actual carrier may be a submodule of it (an
ideal, a semidirect summand, ...).  Matrix rings use the matrix-unit basis
``E_ij (x) b_t`` in row-major order.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Sequence

import numpy as np

from .zmod import Submodule, solve_mod

Coords = tuple[int, ...]


class RingError(ValueError):
    pass


def _as_array(x: Sequence[int] | np.ndarray, m: int) -> np.ndarray:
    return np.asarray(x, dtype=np.int64) % m


class _Bilinear:
    """Sparse bilinear map (Z/m)^p x (Z/m)^q -> (Z/m)^r from a dense table."""

    def __init__(self, table: np.ndarray, modulus: int):
        self.table = np.asarray(table, dtype=np.int64) % modulus
        self.modulus = modulus
        self.out_dim = self.table.shape[2]
        idx = np.nonzero(self.table)
        self._i, self._j, self._l = idx
        self._c = self.table[idx]

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        w = x[self._i] * y[self._j] * self._c
        out = np.bincount(self._l, weights=w, minlength=self.out_dim)
        return out.astype(np.int64) % self.modulus


def _assoc_defect(t1: np.ndarray, t2: np.ndarray, t3: np.ndarray, t4: np.ndarray, m: int) -> bool:
    """True iff (x*y)*z == x*(y*z) on basis triples, with
    x*y given by t1, (.)*z by t2, y*z by t3 and x*(.) by t4."""
    left = np.einsum("stl,luv->stuv", t1.astype(np.float64), t2.astype(np.float64))
    right = np.einsum("tul,slv->stuv", t3.astype(np.float64), t4.astype(np.float64))
    return bool(np.all((left.astype(np.int64) - right.astype(np.int64)) % m == 0))


class FiniteRing:
    """A finite unital ring presented by structure constants over Z/m."""

    def __init__(self, modulus: int, table: np.ndarray, one: Sequence[int],
                 carrier: Submodule | None = None, name: str = "R",
                 basis_names: Sequence[str] | None = None):
        if modulus < 1:
            raise RingError("modulus must be positive")
        table = np.asarray(table, dtype=np.int64) % modulus
        k = table.shape[0]
        if table.shape != (k, k, k):
            raise RingError(f"table must have shape (k, k, k), got {table.shape}")
        self.modulus = modulus
        self.dim = k
        self.table = table
        self.one = _as_array(one, modulus)
        self.carrier = carrier if carrier is not None else Submodule.full(modulus, k)
        self.name = name
        self.basis_names = tuple(basis_names) if basis_names else tuple(f"b{t}" for t in range(k))
        self._mul = _Bilinear(table, modulus)

    def __repr__(self) -> str:
        return f"FiniteRing({self.name}, m={self.modulus}, dim={self.dim})"

    # raw array arithmetic, used by the evaluation hot path
    def mul(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        return self._mul(x, y)

    def prod(self, *xs: np.ndarray) -> np.ndarray:
        out = xs[0]
        for x in xs[1:]:
            out = self._mul(out, x)
        return out

    def zeros(self) -> np.ndarray:
        return np.zeros(self.dim, dtype=np.int64)

    def element(self, coords: Sequence[int]) -> "RingElement":
        return RingElement(self, tuple(int(c) % self.modulus for c in coords))

    @property
    def zero(self) -> "RingElement":
        return self.element([0] * self.dim)

    @property
    def unit(self) -> "RingElement":
        return self.element(self.one)

    def basis(self) -> list["RingElement"]:
        return [self.element(g) for g in self.carrier.gens]

    def contains(self, x: Sequence[int]) -> bool:
        return self.carrier.contains(x)

    def left_matrix(self, x: np.ndarray) -> np.ndarray:
        """Matrix of y -> x*y acting on row vectors: (x*y) = y @ L."""
        return np.tensordot(x, self.table, axes=(0, 0)) % self.modulus

    def inverse(self, x: Sequence[int]) -> np.ndarray | None:
        """Two-sided inverse of x, or None if x is not a unit."""
        x = _as_array(x, self.modulus)
        lm = self.left_matrix(x)
        c = solve_mod([list(map(int, r)) for r in lm], list(map(int, self.one)), self.modulus)
        if c is None:
            return None
        y = np.array(c, dtype=np.int64) % self.modulus
        if np.array_equal(self.mul(y, x), self.one) and np.array_equal(self.mul(x, y), self.one):
            return y
        return None

    def is_central(self, x: Sequence[int]) -> bool:
        x = _as_array(x, self.modulus)
        return all(np.array_equal(self.mul(x, np.array(g)), self.mul(np.array(g), x))
                   for g in self.carrier.gens)

    def ideal(self, gens: Iterable[Sequence[int]]) -> Submodule:
        """Two-sided ideal generated by ``gens`` (closure under both multiplications)."""
        basis = [np.array(g, dtype=np.int64) for g in self.carrier.gens]
        current = Submodule.span(self.modulus, self.dim, gens)
        while True:
            cur = [np.array(g, dtype=np.int64) for g in current.gens]
            new = [self.mul(b, g) for g in cur for b in basis]
            new += [self.mul(g, b) for g in cur for b in basis]
            nxt = Submodule.span(self.modulus, self.dim, list(current.gens) + new)
            if nxt == current:
                return current
            current = nxt

    def validate(self) -> dict[str, bool]:
        t = self.table
        m = self.modulus
        report = {"associative": _assoc_defect(t, t, t, t, m)}
        report["unit"] = all(
            np.array_equal(self.mul(self.one, e), e) and np.array_equal(self.mul(e, self.one), e)
            for e in np.eye(self.dim, dtype=np.int64))
        gens = [np.array(g) for g in self.carrier.gens]
        report["carrier_closed"] = self.carrier.contains(self.one) and all(
            self.carrier.contains(self.mul(x, y)) for x in gens for y in gens)
        return report

    def opposite(self) -> "FiniteRing":
        return FiniteRing(self.modulus, self.table.transpose(1, 0, 2), self.one,
                          self.carrier, name=f"{self.name}^op", basis_names=self.basis_names)


@dataclass(frozen=True, eq=False)
class RingElement:
    """Immutable element of a :class:`FiniteRing` in ambient coordinates."""

    ring: FiniteRing
    coords: Coords

    @cached_property
    def array(self) -> np.ndarray:
        return np.array(self.coords, dtype=np.int64)

    def _wrap(self, arr: np.ndarray) -> "RingElement":
        return RingElement(self.ring, tuple(int(v) for v in arr % self.ring.modulus))

    def _other(self, other: "RingElement | int") -> np.ndarray:
        if isinstance(other, RingElement):
            if other.ring is not self.ring:
                raise RingError("elements of different rings")
            return other.array
        return (int(other) * self.ring.one) % self.ring.modulus

    def __add__(self, other):
        return self._wrap(self.array + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._wrap(self.array - self._other(other))

    def __rsub__(self, other):
        return self._wrap(self._other(other) - self.array)

    def __neg__(self):
        return self._wrap(-self.array)

    def __mul__(self, other):
        if isinstance(other, int):
            return self._wrap(self.array * other)
        return self._wrap(self.ring.mul(self.array, self._other(other)))

    def __rmul__(self, other):
        if isinstance(other, int):
            return self._wrap(self.array * other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coords == tuple(int(v) for v in self._other(other))
        return isinstance(other, RingElement) and other.ring is self.ring and other.coords == self.coords

    def __hash__(self):
        return hash((id(self.ring), self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __repr__(self):
        terms = [f"{c}*{self.ring.basis_names[t]}" for t, c in enumerate(self.coords) if c]
        return " + ".join(terms) if terms else "0"


# ----------------------------------------------------------------- constructions

def cyclic(m: int) -> FiniteRing:
    """The ring Z/m."""
    return FiniteRing(m, np.ones((1, 1, 1), dtype=np.int64), [1], name=f"Z/{m}", basis_names=["1"])


def matrix_ring(n: int, base: FiniteRing) -> FiniteRing:
    """Mat(n, base) with basis E_ij (x) b_t, index ((i*n)+j)*kb + t (0-based)."""
    kb = base.dim
    k = n * n * kb
    table = np.zeros((k, k, k), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                s0 = (i * n + j) * kb
                t0 = (j * n + l) * kb
                o0 = (i * n + l) * kb
                table[s0:s0 + kb, t0:t0 + kb, o0:o0 + kb] = base.table
    one = np.zeros(k, dtype=np.int64)
    for i in range(n):
        one[(i * n + i) * kb:(i * n + i + 1) * kb] = base.one
    gens = []
    for i in range(n):
        for j in range(n):
            for g in base.carrier.gens:
                v = [0] * k
                v[(i * n + j) * kb:(i * n + j + 1) * kb] = g
                gens.append(v)
    names = [f"E{i + 1}{j + 1}" + (f"*{bn}" if kb > 1 else "")
             for i in range(n) for j in range(n) for bn in base.basis_names]
    ring = FiniteRing(base.modulus, table, one, Submodule.span(base.modulus, k, gens),
                      name=f"Mat({n},{base.name})", basis_names=names)
    ring.matrix_size = n
    ring.matrix_base = base
    return ring


def matrix_unit(ring: FiniteRing, i: int, j: int, x: Sequence[int] | None = None) -> np.ndarray:
    """Coordinates of ``x * E_ij`` (1-based indices) in a matrix ring or matrix algebra."""
    n = ring.matrix_size
    kb = ring.dim // (n * n)
    v = np.zeros(ring.dim, dtype=np.int64)
    block = np.asarray(x if x is not None else [1] + [0] * (kb - 1), dtype=np.int64)
    v[((i - 1) * n + (j - 1)) * kb:((i - 1) * n + j) * kb] = block
    return v % ring.modulus


def matrix_entry(ring: FiniteRing, x: np.ndarray, i: int, j: int) -> np.ndarray:
    n = ring.matrix_size
    kb = ring.dim // (n * n)
    return np.asarray(x)[((i - 1) * n + (j - 1)) * kb:((i - 1) * n + j) * kb]


class Algebra:
    """A non-unital R-algebra: ambient (Z/m)^kA with product and bimodule tables.

    ``left[s, t]`` is ``r_s * a_t`` and ``right[s, t]`` is ``a_s * r_t``.
    """

    def __init__(self, ring: FiniteRing, product: np.ndarray, left: np.ndarray,
                 right: np.ndarray, carrier: Submodule, name: str = "A"):
        m = ring.modulus
        self.ring = ring
        self.modulus = m
        self.dim = product.shape[0]
        self.product = np.asarray(product, dtype=np.int64) % m
        self.left = np.asarray(left, dtype=np.int64) % m
        self.right = np.asarray(right, dtype=np.int64) % m
        self.carrier = carrier
        self.name = name

    def __repr__(self) -> str:
        return f"Algebra({self.name} over {self.ring.name}, dim={self.dim})"

    def validate(self) -> dict[str, bool]:
        m = self.modulus
        a, l, r = self.product, self.left, self.right
        rt = self.ring.table
        report = {
            "associative": _assoc_defect(a, a, a, a, m),
            # p(ab) = (pa)b
            "left_compatible": _assoc_defect(l, a, a, l, m),
            # (ab)p = a(bp)
            "right_compatible": _assoc_defect(a, r, r, a, m),
            # (ap)b = a(pb)
            "middle_compatible": _assoc_defect(r, a, l, a, m),
            # (pq)a = p(qa), (ap)q = a(pq), (pa)q = p(aq)
            "left_module": _assoc_defect(rt, l, l, l, m),
            "right_module": _assoc_defect(r, r, rt, r, m),
            "bimodule": _assoc_defect(l, r, r, l, m),
        }
        gens = [np.array(g) for g in self.carrier.gens]
        rg = [np.array(g) for g in self.ring.carrier.gens]
        prod = _Bilinear(a, m)
        lact = _Bilinear(l, m)
        ract = _Bilinear(r, m)
        report["carrier_closed"] = all(self.carrier.contains(prod(x, y)) for x in gens for y in gens) and all(
            self.carrier.contains(lact(p, x)) and self.carrier.contains(ract(x, p)) for x in gens for p in rg)
        return report

    def opposite(self, ring_op: FiniteRing) -> "Algebra":
        return Algebra(ring_op, self.product.transpose(1, 0, 2), self.right.transpose(1, 0, 2),
                       self.left.transpose(1, 0, 2), self.carrier, name=f"{self.name}^op")


class CrossedModule:
    """A crossed module d: A -> R; ``dmap`` is the (kA x kR) matrix of d."""

    def __init__(self, algebra: Algebra, dmap: np.ndarray, name: str | None = None):
        self.algebra = algebra
        self.ring = algebra.ring
        self.dmap = np.asarray(dmap, dtype=np.int64) % algebra.modulus
        self.name = name or f"{algebra.name}->{algebra.ring.name}"

    def __repr__(self) -> str:
        return f"CrossedModule({self.name})"

    def d(self, a: np.ndarray) -> np.ndarray:
        return (np.asarray(a) @ self.dmap) % self.algebra.modulus

    def validate(self) -> dict[str, bool]:
        alg, ring = self.algebra, self.ring
        report = dict(alg.validate())
        prod = _Bilinear(alg.product, alg.modulus)
        lact = _Bilinear(alg.left, alg.modulus)
        ract = _Bilinear(alg.right, alg.modulus)
        gens = [np.array(g) for g in alg.carrier.gens]
        rg = [np.array(g) for g in ring.carrier.gens]
        eq = np.array_equal
        report["d_multiplicative"] = all(eq(self.d(prod(a, b)), ring.mul(self.d(a), self.d(b)))
                                         for a in gens for b in gens)
        report["d_equivariant"] = all(eq(self.d(lact(p, a)), ring.mul(p, self.d(a)))
                                      and eq(self.d(ract(a, p)), ring.mul(self.d(a), p))
                                      for a in gens for p in rg)
        report["peiffer"] = all(eq(prod(a, b), lact(self.d(a), b)) and eq(prod(a, b), ract(a, self.d(b)))
                                for a in gens for b in gens)
        return report

    def opposite(self) -> "CrossedModule":
        ring_op = self.ring.opposite()
        return CrossedModule(self.algebra.opposite(ring_op), self.dmap, name=f"{self.name}^op")


def ideal_algebra(ring: FiniteRing, gens: Iterable[Sequence[int]], name: str = "I") -> Algebra:
    """The two-sided ideal generated by ``gens``, as an algebra over ``ring``."""
    t = ring.table
    return Algebra(ring, t, t, t, ring.ideal(gens), name=name)


def ideal_inclusion(ring: FiniteRing, gens: Iterable[Sequence[int]], name: str = "I") -> CrossedModule:
    return CrossedModule(ideal_algebra(ring, gens, name), np.eye(ring.dim, dtype=np.int64))


def scalar_ideal(ring: FiniteRing, s: int) -> CrossedModule:
    """The ideal s*R with its inclusion."""
    return ideal_inclusion(ring, [(s * ring.one) % ring.modulus], name=f"{s}{ring.name}")


def homotope(ring: FiniteRing, s: Sequence[int]) -> CrossedModule:
    """R^(s) with a^(s) b^(s) = (asb)^(s) and d(a^(s)) = as; s must be central."""
    s = _as_array(s, ring.modulus)
    if not ring.is_central(s):
        raise RingError("homotope parameter must be central")
    k = ring.dim
    eye = np.eye(k, dtype=np.int64)
    prod = np.zeros((k, k, k), dtype=np.int64)
    dmap = np.zeros((k, k), dtype=np.int64)
    for u in range(k):
        dmap[u] = ring.mul(eye[u], s)
        for v in range(k):
            prod[u, v] = ring.mul(ring.mul(eye[u], s), eye[v])
    alg = Algebra(ring, prod, ring.table, ring.table, ring.carrier, name=f"{ring.name}^(s)")
    return CrossedModule(alg, dmap, name=f"{ring.name}^(s)")


def zero_map(ring: FiniteRing, gens: Iterable[Sequence[int]]) -> CrossedModule:
    """The ideal generated by ``gens`` as a bimodule with zero product, d = 0."""
    t = ring.table
    alg = Algebra(ring, np.zeros_like(t), t, t, ring.ideal(gens), name="M0")
    return CrossedModule(alg, np.zeros((ring.dim, ring.dim), dtype=np.int64), name="M0->R")


def matrix_crossed_module(n: int, cm: CrossedModule) -> CrossedModule:
    """Mat(n, A) -> Mat(n, K) for a crossed module A -> K, entrywise."""
    base = cm.ring
    alg = cm.algebra
    ring = matrix_ring(n, base)
    kb, ka = base.dim, alg.dim
    k = n * n * ka
    prod = np.zeros((k, k, k), dtype=np.int64)
    left = np.zeros((ring.dim, k, k), dtype=np.int64)
    right = np.zeros((k, ring.dim, k), dtype=np.int64)
    for i in range(n):
        for j in range(n):
            for l in range(n):
                a0, b0, o0 = (i * n + j) * ka, (j * n + l) * ka, (i * n + l) * ka
                prod[a0:a0 + ka, b0:b0 + ka, o0:o0 + ka] = alg.product
                r0 = (i * n + j) * kb
                left[r0:r0 + kb, b0:b0 + ka, o0:o0 + ka] = alg.left
                r1 = (j * n + l) * kb
                right[a0:a0 + ka, r1:r1 + kb, o0:o0 + ka] = alg.right
    dmap = np.zeros((k, ring.dim), dtype=np.int64)
    for e in range(n * n):
        dmap[e * ka:(e + 1) * ka, e * kb:(e + 1) * kb] = cm.dmap
    gens = []
    for e in range(n * n):
        for g in alg.carrier.gens:
            v = [0] * k
            v[e * ka:(e + 1) * ka] = g
            gens.append(v)
    malg = Algebra(ring, prod, left, right, Submodule.span(base.modulus, k, gens),
                   name=f"Mat({n},{alg.name})")
    malg.matrix_size = n
    return CrossedModule(malg, dmap, name=f"Mat({n},{cm.name})")


class SemidirectRing(FiniteRing):
    """A x| R with (a + p)(b + q) = (ab + aq + pb) + pq; A-block first."""

    def __init__(self, algebra: Algebra, crossed: CrossedModule | None = None):
        ring = algebra.ring
        ka, kr = algebra.dim, ring.dim
        k = ka + kr
        table = np.zeros((k, k, k), dtype=np.int64)
        table[:ka, :ka, :ka] = algebra.product
        table[:ka, ka:, :ka] = algebra.right
        table[ka:, :ka, :ka] = algebra.left
        table[ka:, ka:, ka:] = ring.table
        one = np.concatenate([np.zeros(ka, dtype=np.int64), ring.one])
        gens = [list(g) + [0] * kr for g in algebra.carrier.gens]
        gens += [[0] * ka + list(g) for g in ring.carrier.gens]
        names = [f"a:{t}" for t in range(ka)] + [f"r:{b}" for b in ring.basis_names]
        super().__init__(ring.modulus, table, one, Submodule.span(ring.modulus, k, gens),
                         name=f"{algebra.name}x|{ring.name}", basis_names=names)
        self.algebra = algebra
        self.base = ring
        self.crossed = crossed
        self.a_dim = ka
        self.ideal = Submodule.span(ring.modulus, k, [list(g) + [0] * kr for g in algebra.carrier.gens])

    def embed_a(self, a: Sequence[int]) -> np.ndarray:
        return np.concatenate([_as_array(a, self.modulus), np.zeros(self.base.dim, dtype=np.int64)])

    def embed_r(self, p: Sequence[int]) -> np.ndarray:
        return np.concatenate([np.zeros(self.a_dim, dtype=np.int64), _as_array(p, self.modulus)])

    def a_part(self, x: Sequence[int]) -> np.ndarray:
        return np.asarray(x, dtype=np.int64)[: self.a_dim]

    def r_part(self, x: Sequence[int]) -> np.ndarray:
        return np.asarray(x, dtype=np.int64)[self.a_dim:]

    def d(self, x: Sequence[int]) -> np.ndarray:
        """d on the A-block, landing in the R-block."""
        if self.crossed is None:
            raise RingError("no structure map: algebra is not a crossed module")
        return self.embed_r(self.crossed.d(self.a_part(x)))

    def in_ideal(self, x: Sequence[int]) -> bool:
        return self.ideal.contains(x)


def semidirect(obj: Algebra | CrossedModule) -> SemidirectRing:
    if isinstance(obj, CrossedModule):
        return SemidirectRing(obj.algebra, obj)
    return SemidirectRing(obj)


def lift_to_semidirect(cm: CrossedModule) -> CrossedModule:
    """A as a crossed module over A x| R, d(a) = a + 0."""
    s = semidirect(cm)
    alg = cm.algebra
    ka, kr = alg.dim, cm.ring.dim
    left = np.concatenate([alg.product, alg.left], axis=0)
    right = np.concatenate([alg.product, alg.right], axis=1)
    lifted = Algebra(s, alg.product, left, right, alg.carrier, name=alg.name)
    dmap = np.concatenate([np.eye(ka, dtype=np.int64), np.zeros((ka, kr), dtype=np.int64)], axis=1)
    return CrossedModule(lifted, dmap, name=f"{alg.name}->{s.name}")


def quasi_inverse(s: SemidirectRing, a: Sequence[int]) -> np.ndarray | None:
    """b in A with a + b + ab = a + b + ba = 0, found as (1 + a)^(-1) - 1."""
    a = _as_array(a, s.modulus)
    if not s.in_ideal(a):
        raise RingError("quasi_inverse expects an element of the ideal block")
    inv = s.inverse((s.one + a) % s.modulus)
    if inv is None:
        return None
    b = (inv - s.one) % s.modulus
    if not s.in_ideal(b):
        return None
    return b


# ------------------------------------------------------------- idempotent family

@dataclass(frozen=True, eq=False)
class IdempotentFamily:
    """Labelled idempotents e_i of a ring.  ``classes`` maps each label to the
    set of base labels it merges (singletons for an unmerged family)."""

    ring: FiniteRing
    labels: tuple[Hashable, ...]
    elements: tuple[Coords, ...]
    classes: tuple[frozenset, ...] = field(default=())

    def __post_init__(self):
        if not self.classes:
            object.__setattr__(self, "classes", tuple(frozenset([l]) for l in self.labels))

    @property
    def n(self) -> int:
        return len(self.labels)

    def __getitem__(self, label) -> np.ndarray:
        return np.array(self.elements[self.labels.index(label)], dtype=np.int64)

    def position(self, label) -> int:
        return self.labels.index(label)

    def peirce(self, i, x: Sequence[int], j) -> np.ndarray:
        r = self.ring
        return r.mul(r.mul(self[i], _as_array(x, r.modulus)), self[j])

    def validate(self, min_size: int = 3) -> dict[str, bool]:
        r = self.ring
        es = [np.array(e, dtype=np.int64) for e in self.elements]
        report = {
            "size": len(es) >= min_size,
            "idempotent": all(np.array_equal(r.mul(e, e), e) for e in es),
            "orthogonal": all(not np.any(r.mul(e, f)) for a, e in enumerate(es)
                              for b, f in enumerate(es) if a != b),
            "complete": np.array_equal(sum(es, r.zeros()) % r.modulus, r.one),
            "in_ring": all(r.contains(e) for e in es),
        }
        report["full"] = all(r.ideal([e]) == r.carrier for e in es)
        return report

    def is_valid(self, min_size: int = 3) -> bool:
        return all(self.validate(min_size).values())

    def merge(self, l, m) -> "IdempotentFamily":
        """Replace e_l, e_m by e_l + e_m, labelled by the union of base classes."""
        if l == m:
            raise RingError("cannot merge an index with itself")
        pl, pm = self.position(l), self.position(m)
        cls = self.classes[pl] | self.classes[pm]
        new_label = cls if len(cls) > 1 else next(iter(cls))
        merged = tuple((np.array(self.elements[pl]) + np.array(self.elements[pm])) % self.ring.modulus)
        labels, elems, classes = [], [], []
        for t, lab in enumerate(self.labels):
            if t == pl:
                labels.append(new_label)
                elems.append(tuple(int(v) for v in merged))
                classes.append(cls)
            elif t != pm:
                labels.append(lab)
                elems.append(self.elements[t])
                classes.append(self.classes[t])
        return IdempotentFamily(self.ring, tuple(labels), tuple(elems), tuple(classes))

    def lift(self, s: SemidirectRing) -> "IdempotentFamily":
        return IdempotentFamily(s, self.labels,
                                tuple(tuple(int(v) for v in s.embed_r(e)) for e in self.elements),
                                self.classes)

    def on(self, ring: FiniteRing) -> "IdempotentFamily":
        return IdempotentFamily(ring, self.labels, self.elements, self.classes)


def diagonal_family(ring: FiniteRing, blocks: Sequence[Sequence[int]] | None = None) -> IdempotentFamily:
    """Sums of diagonal matrix units over index blocks (default: singletons 1..n)."""
    n = ring.matrix_size
    if blocks is None:
        blocks = [[i] for i in range(1, n + 1)]
    elems = []
    for b in blocks:
        v = np.zeros(ring.dim, dtype=np.int64)
        for i in b:
            v = v + matrix_unit(ring, i, i, ring.matrix_base.one)
        elems.append(tuple(int(x) for x in v % ring.modulus))
    labels = tuple(range(1, len(blocks) + 1))
    return IdempotentFamily(ring, labels, tuple(elems))


def peirce(family: IdempotentFamily, i, x: Sequence[int], j) -> np.ndarray:
    """e_i x e_j."""
    return family.peirce(i, x, j)


def validate_idempotent_family(family: IdempotentFamily) -> dict[str, bool]:
    return family.validate()
