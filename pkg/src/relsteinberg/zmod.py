"""Exact integer linear algebra over Z and Z/m.

Everything here works on plain Python ints so that intermediate values never
overflow.  Vectors are sequences of ints; matrices are lists of rows.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

IntMatrix = list[list[int]]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [0] * cols
        for t in range(inner):
            c = row[t]
            if c:
                brow = b[t]
                for j in range(cols):
                    acc[j] += c * brow[j]
        out.append(acc)
    return out


def row_echelon(rows: Sequence[Sequence[int]], ncols: int) -> tuple[IntMatrix, IntMatrix, list[int]]:
    """Integer row echelon form with unimodular transform.

    Returns ``(H, U, pivots)`` with ``U @ M == H``.  Pivot entries are positive
    and entries above a pivot are reduced into ``[0, pivot)``, so the nonzero
    rows of ``H`` are the Hermite normal form of the row lattice.
    """
    h = [list(map(int, r)) for r in rows]
    nrows = len(h)
    u = identity(nrows)
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        if r >= nrows:
            break
        while True:
            best = -1
            for i in range(r, nrows):
                v = h[i][col]
                if v and (best < 0 or abs(v) < abs(h[best][col])):
                    best = i
            if best < 0:
                break
            if best != r:
                h[r], h[best] = h[best], h[r]
                u[r], u[best] = u[best], u[r]
            piv = h[r][col]
            done = True
            for i in range(r + 1, nrows):
                v = h[i][col]
                if v:
                    q = v // piv
                    if q:
                        hi, hr = h[i], h[r]
                        for j in range(col, ncols):
                            hi[j] -= q * hr[j]
                        ui, ur = u[i], u[r]
                        for j in range(nrows):
                            ui[j] -= q * ur[j]
                    if h[i][col]:
                        done = False
            if done:
                break
        if r < nrows and h[r][col]:
            if h[r][col] < 0:
                h[r] = [-x for x in h[r]]
                u[r] = [-x for x in u[r]]
            piv = h[r][col]
            for i in range(r):
                q = h[i][col] // piv
                if q:
                    for j in range(col, ncols):
                        h[i][j] -= q * h[r][j]
                    for j in range(nrows):
                        u[i][j] -= q * u[r][j]
            pivots.append(col)
            r += 1
    return h, u, pivots


def solve_lattice(h: IntMatrix, pivots: list[int], target: Sequence[int]) -> list[int] | None:
    """Find integer ``x`` with ``x @ H == target`` for an echelon ``H``."""
    rest = list(map(int, target))
    x = [0] * len(h)
    for r, col in enumerate(pivots):
        v = rest[col]
        if v:
            piv = h[r][col]
            if v % piv:
                return None
            q = v // piv
            x[r] = q
            hr = h[r]
            for j in range(col, len(rest)):
                rest[j] -= q * hr[j]
    if any(rest):
        return None
    return x


def kernel_basis(rows: Sequence[Sequence[int]], ncols: int) -> IntMatrix:
    """Basis of the integer left kernel ``{c : c @ M == 0}``."""
    n = len(rows)
    aug = [list(map(int, r)) + [int(i == j) for j in range(n)] for i, r in enumerate(rows)]
    h, _, pivots = row_echelon(aug, ncols + n)
    rank = sum(1 for p in pivots if p < ncols)
    return [row[ncols:] for row in h[rank:] if any(row[ncols:])]


@dataclass(frozen=True)
class Submodule:
    """A submodule of (Z/m)^k given by a generating set.

    The canonical generators are the nonzero rows (mod m) of the Hermite form
    of ``rowspan(gens) + m Z^k``; two submodules are equal iff their Hermite
    forms coincide.
    """

    modulus: int
    dim: int
    hermite: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]

    @classmethod
    def span(cls, modulus: int, dim: int, gens: Iterable[Sequence[int]]) -> "Submodule":
        rows = [[int(x) % modulus for x in g] for g in gens]
        rows = [r for r in rows if any(r)]
        rows += [[modulus * int(i == j) for j in range(dim)] for i in range(dim)]
        h, _, piv = row_echelon(rows, dim)
        return cls(modulus, dim, tuple(tuple(r) for r in h[: len(piv)]), tuple(piv))

    @classmethod
    def full(cls, modulus: int, dim: int) -> "Submodule":
        return cls.span(modulus, dim, identity(dim))

    @classmethod
    def zero(cls, modulus: int, dim: int) -> "Submodule":
        return cls.span(modulus, dim, [])

    @cached_property
    def gens(self) -> tuple[tuple[int, ...], ...]:
        """Canonical generators, reduced mod m, zero rows dropped."""
        out = []
        for r in self.hermite:
            red = tuple(x % self.modulus for x in r)
            if any(red):
                out.append(red)
        return tuple(out)

    @cached_property
    def gen_array(self) -> np.ndarray:
        return np.array(self.gens, dtype=np.int64).reshape(len(self.gens), self.dim)

    @cached_property
    def relations(self) -> IntMatrix:
        """Integer relations among :attr:`gens` (a basis of the relation lattice)."""
        g = [list(r) for r in self.gens]
        rows = g + [[self.modulus * int(i == j) for j in range(self.dim)] for i in range(self.dim)]
        ker = kernel_basis(rows, self.dim)
        return [row[: len(g)] for row in ker if any(row[: len(g)])]

    @property
    def size(self) -> int:
        det = 1
        for r, c in enumerate(self.pivots):
            det *= self.hermite[r][c]
        return self.modulus ** self.dim // det

    @property
    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, v: Sequence[int]) -> bool:
        return solve_lattice([list(r) for r in self.hermite], list(self.pivots),
                             [int(x) % self.modulus for x in v]) is not None

    def coordinates(self, v: Sequence[int]) -> list[int] | None:
        """Some integer ``c`` with ``sum c_i gens_i == v (mod m)``, or None."""
        return solve_mod(self.gens, v, self.modulus)

    def sample(self, rng: np.random.Generator) -> np.ndarray:
        """Uniform random element (coefficients uniform in Z/m push forward uniformly)."""
        if not self.gens:
            return np.zeros(self.dim, dtype=np.int64)
        c = rng.integers(0, self.modulus, size=len(self.gens))
        return (c @ self.gen_array) % self.modulus

    def __le__(self, other: "Submodule") -> bool:
        return all(other.contains(g) for g in self.gens)


def solve_mod(gens: Sequence[Sequence[int]], target: Sequence[int], modulus: int) -> list[int] | None:
    """Solve ``sum c_i gens_i == target (mod m)`` for integer ``c`` in ``[0, m)``."""
    dim = len(target)
    g = [[int(x) for x in r] for r in gens]
    rows = g + [[modulus * int(i == j) for j in range(dim)] for i in range(dim)]
    h, u, piv = row_echelon(rows, dim)
    x = solve_lattice(h[: len(piv)], piv, [int(t) % modulus for t in target])
    if x is None:
        return None
    coeffs = [0] * len(g)
    for r, xr in enumerate(x):
        if xr:
            ur = u[r]
            for i in range(len(g)):
                coeffs[i] += xr * ur[i]
    return [c % modulus for c in coeffs]
