"""Simply laced root systems and the type-A combinatorics of index pairs.

Roots of a :class:`RootDatum` are integer coefficient vectors with respect to
the simple roots; inner products come from the Cartan matrix.  For linear
contexts a root e_i - e_j is simply the label pair ``(i, j)``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

import numpy as np

Pair = tuple[Hashable, Hashable]


class RootError(ValueError):
    pass


# ------------------------------------------------------------------ label pairs

def linear_sum(a: Pair, b: Pair) -> Pair | None:
    """(e_i - e_j) + (e_k - e_l) if that is a root."""
    i, j = a
    k, l = b
    if j == k and i != l:
        return (i, l)
    if l == i and k != j:
        return (k, j)
    return None


def linear_is_closed(sigma: Iterable[Pair]) -> bool:
    s = set(sigma)
    return all(linear_sum(a, b) in s for a in s for b in s if linear_sum(a, b) is not None)


def linear_is_special_closed(sigma: Iterable[Pair]) -> bool:
    s = set(sigma)
    if any((j, i) in s for i, j in s):
        return False
    return linear_is_closed(s)


def linear_closure(roots: Iterable[Pair]) -> set[Pair]:
    s = set(roots)
    while True:
        new = {linear_sum(a, b) for a in s for b in s} - {None} - s
        if not new:
            return s
        s |= new


def linear_extreme_roots(sigma: Iterable[Pair]) -> list[Pair]:
    s = set(sigma)
    sums = {linear_sum(a, b) for a in s for b in s}
    return [r for r in s if r not in sums]


def linear_order_key(labels: Sequence, r: Pair) -> tuple[int, int]:
    return labels.index(r[0]), labels.index(r[1])


# ------------------------------------------------------------------ Cartan data

def _chain(n: int) -> np.ndarray:
    c = 2 * np.eye(n, dtype=np.int64)
    for t in range(n - 1):
        c[t, t + 1] = c[t + 1, t] = -1
    return c


def cartan_matrix(kind: str, rank: int) -> np.ndarray:
    """Simply laced Cartan matrices, Bourbaki numbering."""
    if kind == "A":
        if rank < 1:
            raise RootError("A_l needs l >= 1")
        return _chain(rank)
    if kind == "D":
        if rank < 4:
            raise RootError("D_l needs l >= 4")
        c = _chain(rank)
        c[rank - 2, rank - 1] = c[rank - 1, rank - 2] = 0
        c[rank - 3, rank - 1] = c[rank - 1, rank - 3] = -1
        return c
    if kind == "E":
        if rank not in (6, 7, 8):
            raise RootError("E_l needs l in {6, 7, 8}")
        c = 2 * np.eye(rank, dtype=np.int64)
        # nodes 1-3-4-5-6-7-8 in a chain, node 2 attached to node 4
        chain = [0] + list(range(2, rank))
        for u, v in zip(chain, chain[1:]):
            c[u, v] = c[v, u] = -1
        c[1, 3] = c[3, 1] = -1
        return c
    raise RootError(f"unsupported type {kind!r} (simply laced only)")


def _block_diag(blocks: Sequence[np.ndarray]) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    t = 0
    for b in blocks:
        k = b.shape[0]
        out[t:t + k, t:t + k] = b
        t += k
    return out


_COMPONENT = re.compile(r"^([ADE])_?(\d+)$")


def parse_type(name: str) -> list[tuple[str, int]]:
    """'A3' -> [('A', 3)]; 'A1xA1' -> [('A', 1), ('A', 1)]."""
    parts = re.split(r"[x×*]", name.replace(" ", ""))
    out = []
    for part in parts:
        m = _COMPONENT.match(part.upper())
        if not m:
            raise RootError(f"cannot parse root system {name!r}")
        out.append((m.group(1), int(m.group(2))))
    return out


class RootDatum:
    """A simply laced root system.  Positive roots come first, then their negatives
    in the same order, so ``neg(t) = (t + N) mod 2N``."""

    def __init__(self, name: str, cartan: np.ndarray):
        self.name = name
        self.cartan = np.asarray(cartan, dtype=np.int64)
        self.rank = self.cartan.shape[0]
        pos = self._positive_roots()
        self.npos = len(pos)
        self.roots: tuple[tuple[int, ...], ...] = tuple(pos) + tuple(tuple(-c for c in r) for r in pos)
        self.index = {r: t for t, r in enumerate(self.roots)}
        coords = np.array(self.roots, dtype=np.int64).reshape(len(self.roots), self.rank)
        self.coords = coords
        self.gram = coords @ self.cartan @ coords.T

    @classmethod
    def from_name(cls, name: str) -> "RootDatum":
        comps = parse_type(name)
        cart = _block_diag([cartan_matrix(k, r) for k, r in comps])
        label = "x".join(f"{k}{r}" for k, r in comps)
        return cls(label, cart)

    def __repr__(self) -> str:
        return f"RootDatum({self.name}, {len(self.roots)} roots)"

    def __len__(self) -> int:
        return len(self.roots)

    def _positive_roots(self) -> list[tuple[int, ...]]:
        simple = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        seen = set(simple)
        order = list(simple)
        frontier = list(simple)
        while frontier:
            nxt = []
            for r in frontier:
                v = np.array(r) @ self.cartan
                for i in range(self.rank):
                    if v[i] == -1:
                        s = list(r)
                        s[i] += 1
                        s = tuple(s)
                        if s not in seen:
                            seen.add(s)
                            order.append(s)
                            nxt.append(s)
            frontier = nxt
        return sorted(order, key=lambda r: (sum(r), [-c for c in r]))

    # ---------------------------------------------------------------- queries
    def neg(self, t: int) -> int:
        return (t + self.npos) % (2 * self.npos)

    def is_positive(self, t: int) -> bool:
        return t < self.npos

    def height(self, t: int) -> int:
        return sum(self.roots[t])

    def inner(self, s: int, t: int) -> int:
        return int(self.gram[s, t])

    @cached_property
    def sum_table(self) -> np.ndarray:
        """sum_table[s, t] = index of root s + t, or -1."""
        n = len(self.roots)
        out = -np.ones((n, n), dtype=np.int64)
        for s in range(n):
            for t in range(n):
                if self.gram[s, t] == -1:
                    out[s, t] = self.index[tuple(a + b for a, b in zip(self.roots[s], self.roots[t]))]
        return out

    def add(self, s: int, t: int) -> int | None:
        v = int(self.sum_table[s, t])
        return None if v < 0 else v

    def sub(self, s: int, t: int) -> int | None:
        return self.add(s, self.neg(t))

    def root_index(self, coeffs: Sequence[int]) -> int:
        try:
            return self.index[tuple(int(c) for c in coeffs)]
        except KeyError:
            raise RootError(f"{tuple(coeffs)} is not a root of {self.name}") from None

    def is_closed(self, sigma: Iterable[int]) -> bool:
        s = set(sigma)
        return all(self.add(a, b) in s for a in s for b in s if self.add(a, b) is not None)

    def is_special_closed(self, sigma: Iterable[int]) -> bool:
        s = set(sigma)
        if any(self.neg(a) in s for a in s):
            return False
        return self.is_closed(s)

    def extreme_roots(self, sigma: Iterable[int]) -> list[int]:
        s = set(sigma)
        if not self.is_special_closed(s):
            raise RootError("extreme roots are defined for special closed subsets")
        sums = {self.add(a, b) for a in s for b in s}
        return sorted(r for r in s if r not in sums)

    def rank2_type(self, s: int, t: int) -> str:
        ip = self.inner(s, t)
        if abs(ip) == 2:
            return "collinear"
        if ip == 0:
            return "A1xA1"
        return "A2"

    def span_rank(self, roots: Iterable[int]) -> int:
        rows = [self.roots[t] for t in roots]
        if not rows:
            return 0
        return int(np.linalg.matrix_rank(np.array(rows, dtype=np.float64)))

    def subsystem_in_span(self, roots: Iterable[int]) -> frozenset[int]:
        """All roots in the rational span of ``roots``."""
        roots = list(roots)
        r0 = self.span_rank(roots)
        base = np.array([self.roots[t] for t in roots], dtype=np.float64)
        out = []
        for t, r in enumerate(self.roots):
            m = np.vstack([base, np.array(r, dtype=np.float64)])
            if np.linalg.matrix_rank(m) == r0:
                out.append(t)
        return frozenset(out)

    def dynkin_edges(self) -> list[tuple[int, int]]:
        """Edges i -> j (0-based) with i < j: the default orientation."""
        return [(i, j) for i in range(self.rank) for j in range(i + 1, self.rank) if self.cartan[i, j] == -1]

    # ---------------------------------------------------------------- type A
    @cached_property
    def is_type_a(self) -> bool:
        return self.name.startswith("A") and "x" not in self.name

    def pair(self, t: int) -> tuple[int, int]:
        """For A_l: the root e_i - e_j (1-based) as (i, j)."""
        if not self.is_type_a:
            raise RootError("index pairs exist for type A only")
        r = self.roots[t]
        nz = [k for k, c in enumerate(r) if c]
        lo, hi = nz[0], nz[-1]
        return (lo + 1, hi + 2) if r[lo] > 0 else (hi + 2, lo + 1)

    def from_pair(self, i: int, j: int) -> int:
        if not self.is_type_a:
            raise RootError("index pairs exist for type A only")
        lo, hi = min(i, j), max(i, j)
        v = [0] * self.rank
        for k in range(lo - 1, hi - 1):
            v[k] = 1 if i < j else -1
        return self.root_index(v)


def type_a(n: int) -> RootDatum:
    """A_{n-1}, the roots e_i - e_j of n indices."""
    return RootDatum.from_name(f"A{n - 1}")


# ------------------------------------------------------------------ quotients

@dataclass(frozen=True)
class SubsystemQuotient:
    parent: RootDatum
    psi: frozenset[int]
    classes: tuple[frozenset[int], ...]
    labels: tuple
    quotient: RootDatum | None

    def projection(self, t: int) -> tuple:
        """pi_Psi on a root outside Psi, as a pair of merged labels."""
        if t in self.psi:
            raise RootError("projection is defined outside Psi")
        i, j = self.parent.pair(t)
        return self.label_of(i), self.label_of(j)

    def label_of(self, i: int):
        for cls, lab in zip(self.classes, self.labels):
            if i in cls:
                return lab
        raise RootError(f"index {i} not in any class")


def class_label(cls: frozenset):
    return next(iter(cls)) if len(cls) == 1 else cls


def quotient(parent: RootDatum, psi: Iterable[int]) -> SubsystemQuotient:
    """Quotient of a type-A datum by a subsystem Psi: index classes and the
    type-A datum over the classes."""
    psi = frozenset(psi)
    if not parent.is_type_a:
        raise RootError("quotients are constructed for type A only")
    if any(parent.neg(t) not in psi for t in psi) or not parent.is_closed(psi):
        raise RootError("Psi must be closed and symmetric")
    n = parent.rank + 1
    parent_of = list(range(n + 1))

    def find(v):
        while parent_of[v] != v:
            parent_of[v] = parent_of[parent_of[v]]
            v = parent_of[v]
        return v

    for t in psi:
        i, j = parent.pair(t)
        parent_of[find(i)] = find(j)
    groups: dict[int, set[int]] = {}
    for i in range(1, n + 1):
        groups.setdefault(find(i), set()).add(i)
    classes = tuple(sorted((frozenset(g) for g in groups.values()), key=min))
    labels = tuple(class_label(c) for c in classes)
    quo = RootDatum.from_name(f"A{len(classes) - 1}") if len(classes) >= 2 else None
    return SubsystemQuotient(parent, psi, classes, labels, quo)


# ------------------------------------------------------------------ subsystem family

def a1_subsystems(datum: RootDatum) -> list[frozenset[int]]:
    return [frozenset({t, datum.neg(t)}) for t in range(datum.npos)]


def a3_subsystems(datum: RootDatum) -> list[frozenset[int]]:
    """Type A_3 subsystems, found from chains b1 - b2 - b3 of positive roots."""
    found = set()
    pos = range(datum.npos)
    for b1, b2 in combinations(pos, 2):
        if datum.inner(b1, b2) != -1:
            continue
        for b3 in range(datum.npos):
            for first, mid in ((b1, b2), (b2, b1)):
                if b3 in (first, mid):
                    continue
                if datum.inner(mid, b3) == -1 and datum.inner(first, b3) == 0:
                    sub = datum.subsystem_in_span([first, mid, b3])
                    if len(sub) == 12:
                        found.add(sub)
    return sorted(found, key=lambda s: sorted(s))


def subsystem_family_G(datum: RootDatum) -> list[frozenset[int]]:
    """All A_1 and A_3 subsystems."""
    return a1_subsystems(datum) + a3_subsystems(datum)


def covering_subsystem(datum: RootDatum, roots: Iterable[int],
                       family: Sequence[frozenset[int]] | None = None) -> frozenset[int] | None:
    roots = set(roots)
    family = family if family is not None else subsystem_family_G(datum)
    for sub in family:
        if roots <= sub:
            return sub
    return None
