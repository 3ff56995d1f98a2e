"""Free-group words over generator symbols.

Three symbol kinds occur:

* ``Z(i, j, a, p)``  the relative generator z_ij(a, p); x_ij(a) is ``Z(i, j, a, 0)``;
* ``X(i, j, p)``     an absolute generator x_ij(p) of st(R), which acts on the
                     relative group by conjugation;
* ``ZC(root, a, p)`` the root-indexed generator z_alpha(a, p).

Payloads are coordinate tuples, so symbols are hashable values.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Iterator, Union

Coords = tuple[int, ...]


@dataclass(frozen=True)
class Z:
    i: Hashable
    j: Hashable
    a: Coords
    p: Coords

    def trivial(self) -> bool:
        return not any(self.a)

    def __repr__(self) -> str:
        if not any(self.p):
            return f"x_{_lab(self.i)},{_lab(self.j)}({_short(self.a)})"
        return f"z_{_lab(self.i)},{_lab(self.j)}({_short(self.a)}; {_short(self.p)})"


@dataclass(frozen=True)
class X:
    i: Hashable
    j: Hashable
    p: Coords

    def trivial(self) -> bool:
        return not any(self.p)

    def __repr__(self) -> str:
        return f"X_{_lab(self.i)},{_lab(self.j)}({_short(self.p)})"


@dataclass(frozen=True)
class ZC:
    root: int
    a: Coords
    p: Coords

    def trivial(self) -> bool:
        return not any(self.a)

    def __repr__(self) -> str:
        return f"z[{self.root}]({_short(self.a)}; {_short(self.p)})"


Symbol = Union[Z, X, ZC]


def _lab(x) -> str:
    if isinstance(x, frozenset):
        return "{" + "".join(str(v) for v in sorted(x)) + "}"
    return str(x)


def _short(c: Coords) -> str:
    nz = [(t, v) for t, v in enumerate(c) if v]
    return ",".join(f"{t}:{v}" for t, v in nz) or "0"


class Word:
    """An element of the free group: a tuple of (symbol, +-1) letters."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[tuple[Symbol, int]] = ()):
        self.letters = tuple(letters)

    @classmethod
    def of(cls, *symbols: Symbol) -> "Word":
        return cls((s, 1) for s in symbols)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[tuple[Symbol, int]]:
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, Word) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __repr__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(repr(s) + ("" if e == 1 else "^-1") for s, e in self.letters)

    def inverse(self) -> "Word":
        return Word((s, -e) for s, e in reversed(self.letters))

    def reduced(self) -> "Word":
        """Drop symbols with zero payload, then cancel adjacent inverse pairs."""
        stack: list[tuple[Symbol, int]] = []
        for s, e in self.letters:
            if s.trivial():
                continue
            if stack and stack[-1][0] == s and stack[-1][1] == -e:
                stack.pop()
            else:
                stack.append((s, e))
        return Word(stack)

    def map(self, f) -> "Word":
        """Apply a symbol -> Word substitution letterwise."""
        out: list[tuple[Symbol, int]] = []
        for s, e in self.letters:
            w = f(s)
            out.extend(w.letters if e == 1 else w.inverse().letters)
        return Word(out)

    def symbols(self) -> list[Symbol]:
        return [s for s, _ in self.letters]


EMPTY = Word()


def word(*parts: Symbol | Word) -> Word:
    letters: list[tuple[Symbol, int]] = []
    for p in parts:
        if isinstance(p, Word):
            letters.extend(p.letters)
        else:
            letters.append((p, 1))
    return Word(letters)


def commutator(g: Word, h: Word) -> Word:
    """[g, h] = g h g^-1 h^-1."""
    return g * h * g.inverse() * h.inverse()


def conjugate(g: Word, h: Word) -> Word:
    """^g h = g h g^-1."""
    return g * h * g.inverse()


def transpose(w: Word) -> Word:
    """Anti-isomorphism onto the opposite ring: reverse, swap indices, keep coordinates."""
    out = []
    for s, e in reversed(w.letters):
        if isinstance(s, Z):
            out.append((Z(s.j, s.i, s.a, s.p), e))
        elif isinstance(s, X):
            out.append((X(s.j, s.i, s.p), e))
        else:
            raise TypeError("transpose is defined for linear symbols only")
    return Word(out)
