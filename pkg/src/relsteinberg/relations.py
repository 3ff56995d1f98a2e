"""The catalog of identities between linear generators, as word pairs.

Each relation id has a fixed index arity, an index constraint, and a list of
parameters with the Peirce component each one lives in.  ``relation_instance``
checks these declarations; ``random_instances`` samples them uniformly.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from typing import Callable, Hashable, Sequence

import numpy as np

from .context import LinearContext
from .words import EMPTY, Word, X, Z, commutator, conjugate, word

Coords = tuple[int, ...]


class PreconditionError(ValueError):
    pass


# ------------------------------------------------------------------ formal sums

@dataclass(frozen=True)
class FormalSum:
    """A Z-linear combination of generator classes (abelian side)."""

    terms: tuple[tuple[Z, int], ...] = ()

    def __add__(self, other: "FormalSum") -> "FormalSum":
        return FormalSum(self.terms + other.terms)

    def __neg__(self) -> "FormalSum":
        return FormalSum(tuple((s, -c) for s, c in self.terms))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*{s!r}" for s, c in self.terms)


def bar(sym: Z, coef: int = 1) -> FormalSum:
    return FormalSum(((sym, coef),))


# ------------------------------------------------------------------ instances

@dataclass(frozen=True)
class RelationInstance:
    relation_id: str
    indices: tuple
    params: dict = field(hash=False)
    lhs: Word | FormalSum = EMPTY
    rhs: Word | FormalSum = EMPTY

    def to_json(self) -> dict:
        def enc(v):
            if isinstance(v, Word):
                return word_to_json(v)
            return list(v)
        return {
            "relation_id": self.relation_id,
            "indices": [label_json(i) for i in self.indices],
            "parameters": {k: enc(v) for k, v in self.params.items()},
            "lhs": side_to_json(self.lhs),
            "rhs": side_to_json(self.rhs),
        }


def label_json(lab):
    if isinstance(lab, frozenset):
        return sorted(lab)
    return lab


def symbol_to_json(s) -> dict:
    if isinstance(s, Z):
        return {"z": [label_json(s.i), label_json(s.j)], "a": list(s.a), "p": list(s.p)}
    if isinstance(s, X):
        return {"x": [label_json(s.i), label_json(s.j)], "p": list(s.p)}
    return {"root": s.root, "a": list(s.a), "p": list(s.p)}


def word_to_json(w: Word) -> list:
    return [[symbol_to_json(s), e] for s, e in w]


def side_to_json(side) -> list:
    if isinstance(side, FormalSum):
        return [[symbol_to_json(s), c] for s, c in side.terms]
    return word_to_json(side)


# ------------------------------------------------------------------ abbreviations

def x(ctx: LinearContext, i, j, a: Coords) -> Z:
    return Z(i, j, tuple(a), ctx.zero)


def z(i, j, a: Coords, p: Coords) -> Z:
    return Z(i, j, tuple(a), tuple(p))


def z2(ctx, i, j, k, a, b, p) -> Word:
    """z_{i,j[k]}(a, b; p) = z_ij(a, p) x_ik(b) x_jk(pb)."""
    return word(z(i, j, a, p), x(ctx, i, k, b), x(ctx, j, k, ctx.mul(p, b)))


def z2t(ctx, i, j, k, a, b, p) -> Word:
    """z_{[i]j,k}(a, b; p) = z_jk(b, p) x_ik(a) x_ij(-ap)."""
    return word(z(j, k, b, p), x(ctx, i, k, a), x(ctx, i, j, ctx.neg(ctx.mul(a, p))))


def z4(ctx, i, j, k, a, b, p, q) -> Word:
    """z_{i+j,k}(a, b; p, q) = z_{i,k[j]}(a, -aq; p) z_{j,k[i]}(b, -bp; q)."""
    return (z2(ctx, i, k, j, a, ctx.neg(ctx.mul(a, q)), p)
            * z2(ctx, j, k, i, b, ctx.neg(ctx.mul(b, p)), q))


def z4t(ctx, i, j, k, a, b, p, q) -> Word:
    """z_{i,j+k}(a, b; p, q) = z_{[k]i,j}(qa, a; p) z_{[j]i,k}(pb, b; q)."""
    return (z2t(ctx, k, i, j, ctx.mul(q, a), a, p)
            * z2t(ctx, j, i, k, ctx.mul(p, b), b, q))


ABBREVIATIONS = {"Z2": (z2, 1), "Z2t": (z2t, 1), "Z4": (z4, 2), "Z4t": (z4t, 2)}


def expand_abbreviation(ctx: LinearContext, tag: str, indices: Sequence, payloads: Sequence[Coords],
                        parameters: Sequence[Coords], check: bool = True) -> Word:
    """The defining word of Z2 / Z2t / Z4 / Z4t."""
    if tag not in ABBREVIATIONS:
        raise PreconditionError(f"unknown abbreviation {tag!r}")
    fn, nparams = ABBREVIATIONS[tag]
    i, j, k = indices
    if len({i, j, k}) != 3:
        raise PreconditionError("indices must be distinct")
    if len(payloads) != 2 or len(parameters) != nparams:
        raise PreconditionError(f"{tag} takes 2 payloads and {nparams} parameters")
    if check:
        comps = {
            "Z2": [("A", i, j), ("A", i, k), ("R", j, i)],
            "Z2t": [("A", i, k), ("A", j, k), ("R", k, j)],
            "Z4": [("A", i, k), ("A", j, k), ("R", k, i), ("R", k, j)],
            "Z4t": [("A", i, j), ("A", i, k), ("R", j, i), ("R", k, i)],
        }[tag]
        for (kind, u, v), val in zip(comps, list(payloads) + list(parameters)):
            _check_member(ctx, kind, u, v, val, tag)
    return fn(ctx, i, j, k, *payloads, *parameters).reduced()


def _check_member(ctx: LinearContext, kind: str, u, v, val, where: str) -> None:
    ok = {"A": ctx.in_a, "R": ctx.in_r, "S": ctx.in_s}[kind](u, v, val)
    if not ok:
        raise PreconditionError(f"{where}: value not in e_{u} {kind if kind != 'S' else 'S'} e_{v}")


# ------------------------------------------------------------------ catalog

Builder = Callable[[LinearContext, tuple, dict], tuple]


@dataclass(frozen=True)
class RelationSpec:
    rid: str
    arity: int
    params: tuple[tuple[str, str, int, int], ...]   # (name, 'A'|'R', index pos, index pos)
    build: Builder
    constraint: Callable[[tuple], str | None] | None = None
    word_params: tuple[str, ...] = ()


def _distinct(idx: tuple) -> str | None:
    return None if len(set(idx)) == len(idx) else "indices must be distinct"


def _st3_constraint(idx: tuple) -> str | None:
    i, j, k, l = idx
    if i == j or k == l:
        return "i != j and k != l required"
    if j == k or i == l:
        return "requires j != k and i != l"
    return None


def _b_st1(ctx, idx, P):
    i, j = idx
    return word(x(ctx, i, j, P["a"]), x(ctx, i, j, P["b"])), word(x(ctx, i, j, ctx.add(P["a"], P["b"])))


def _b_st2(ctx, idx, P):
    i, j, k = idx
    lhs = commutator(word(x(ctx, i, j, P["a"])), word(x(ctx, j, k, P["b"])))
    return lhs, word(x(ctx, i, k, ctx.mul(P["a"], P["b"])))


def _b_st3(ctx, idx, P):
    i, j, k, l = idx
    return commutator(word(x(ctx, i, j, P["a"])), word(x(ctx, k, l, P["b"]))), EMPTY


def _b_rel1(ctx, idx, P):
    i, j, k, l = idx
    return conjugate(word(X(i, j, P["p"])), word(x(ctx, k, l, P["a"]))), word(x(ctx, k, l, P["a"]))


def _b_rel2(ctx, idx, P):
    i, j, k = idx
    lhs = conjugate(word(X(i, j, P["p"])), word(x(ctx, j, k, P["a"])))
    return lhs, word(x(ctx, i, k, ctx.mul(P["p"], P["a"])), x(ctx, j, k, P["a"]))


def _b_rel2t(ctx, idx, P):
    i, j, k = idx
    lhs = conjugate(word(X(j, k, P["p"])), word(x(ctx, i, j, P["a"])))
    return lhs, word(x(ctx, i, j, P["a"]), x(ctx, i, k, ctx.neg(ctx.mul(P["a"], P["p"]))))


def _b_rel3(ctx, idx, P):
    i, j = idx
    g = P["g"]
    lhs = conjugate(word(X(i, j, ctx.d(P["a"]))), g)
    rhs = conjugate(word(x(ctx, i, j, P["a"])), g)
    return lhs, rhs


def _b_add1(ctx, idx, P):
    i, j = idx
    a, b, p = P["a"], P["a2"], P["p"]
    return word(z(i, j, ctx.add(a, b), p)), word(z(i, j, a, p), z(i, j, b, p))


def _b_add2(ctx, idx, P, f=z2):
    i, j, k = idx
    a, a2, b, b2, p = P["a"], P["a2"], P["b"], P["b2"], P["p"]
    lhs = f(ctx, i, j, k, ctx.add(a, a2), ctx.add(b, b2), p)
    return lhs, f(ctx, i, j, k, a, b, p) * f(ctx, i, j, k, a2, b2, p)


def _b_add2t(ctx, idx, P):
    return _b_add2(ctx, idx, P, f=z2t)


def _b_add3(ctx, idx, P, f=z4):
    i, j, k = idx
    a, a2, b, b2, p, q = P["a"], P["a2"], P["b"], P["b2"], P["p"], P["q"]
    lhs = f(ctx, i, j, k, ctx.add(a, a2), ctx.add(b, b2), p, q)
    return lhs, f(ctx, i, j, k, a, b, p, q) * f(ctx, i, j, k, a2, b2, p, q)


def _b_add3t(ctx, idx, P):
    return _b_add3(ctx, idx, P, f=z4t)


def _b_conj1(ctx, idx, P):
    i, j, k = idx
    c, p, a, b = P["c"], P["p"], P["a"], P["b"]
    m = ctx.mul
    lhs = conjugate(word(z(i, j, c, p)), word(x(ctx, i, k, a), x(ctx, j, k, b)))
    rhs = word(x(ctx, i, k, ctx.add(a, m(c, b), ctx.neg(m(c, p, a)))),
               x(ctx, j, k, ctx.add(b, m(p, c, b), ctx.neg(m(p, c, p, a)))))
    return lhs, rhs


def _b_conj1t(ctx, idx, P):
    i, j, k = idx
    c, p, a, b = P["c"], P["p"], P["a"], P["b"]
    m = ctx.mul
    lhs = conjugate(word(z(i, j, c, p)), word(x(ctx, k, i, a), x(ctx, k, j, b)))
    rhs = word(x(ctx, k, i, ctx.add(a, m(a, c, p), m(b, p, c, p))),
               x(ctx, k, j, ctx.sub(ctx.sub(b, m(a, c)), m(b, p, c))))
    return lhs, rhs


def _b_mult(ctx, idx, P):
    i, j, k = idx
    a, b, p = P["a"], P["b"], P["p"]
    g = word(x(ctx, j, k, ctx.mul(p, a)), x(ctx, i, k, a))
    h = word(x(ctx, k, j, b), x(ctx, k, i, ctx.neg(ctx.mul(b, p))))
    return commutator(g, h), word(z(i, j, ctx.mul(a, b), p))


def _b_dis(ctx, idx, P):
    i, j, k, l = idx
    return commutator(word(z(i, j, P["a"], P["p"])), word(z(k, l, P["b"], P["q"]))), EMPTY


def _b_sym(ctx, idx, P):
    i, j, k = idx
    a, b, p, q = P["a"], P["b"], P["p"], P["q"]
    return z4(ctx, i, j, k, a, b, p, q), z4(ctx, j, i, k, b, a, q, p)


def _b_symt(ctx, idx, P):
    i, j, k = idx
    a, b, p, q = P["a"], P["b"], P["p"], P["q"]
    return z4t(ctx, i, j, k, a, b, p, q), z4t(ctx, i, k, j, b, a, q, p)


def _conj2_payloads(ctx, P):
    m = ctx.mul
    a, b, c, r = P["a"], P["b"], P["c"], P["r"]
    a1 = ctx.add(a, m(c, b), ctx.neg(m(c, r, a)))
    b1 = ctx.add(b, m(r, c, b), ctx.neg(m(r, c, r, a)))
    return a1, b1


def _b_conj2(ctx, idx, P):
    i, j, k = idx
    m = ctx.mul
    a, b, c, p, q, r = P["a"], P["b"], P["c"], P["p"], P["q"], P["r"]
    lhs = conjugate(word(z(i, j, c, r)), z4(ctx, i, j, k, a, b, p, q))
    a1, b1 = _conj2_payloads(ctx, P)
    g = word(x(ctx, k, i, ctx.add(m(p, c, r), m(q, r, c, r))),
             x(ctx, k, j, ctx.neg(ctx.add(m(p, c), m(q, r, c)))))
    return lhs, conjugate(g, z4(ctx, i, j, k, a1, b1, p, q))


def _conj2t_payloads(ctx, P):
    m = ctx.mul
    a, b, c, r = P["a"], P["b"], P["c"], P["r"]
    a1 = ctx.add(a, m(a, c, r), m(b, r, c, r))
    b1 = ctx.sub(ctx.sub(b, m(a, c)), m(b, r, c))
    return a1, b1


def _b_conj2t(ctx, idx, P):
    i, j, k = idx
    m = ctx.mul
    a, b, c, p, q, r = P["a"], P["b"], P["c"], P["p"], P["q"], P["r"]
    lhs = conjugate(word(z(i, j, c, r)), z4t(ctx, k, i, j, a, b, p, q))
    a1, b1 = _conj2t_payloads(ctx, P)
    g = word(x(ctx, i, k, ctx.sub(m(c, q), m(c, r, p))),
             x(ctx, j, k, ctx.sub(m(r, c, q), m(r, c, r, p))))
    return lhs, conjugate(g, z4t(ctx, k, i, j, a1, b1, p, q))


def _b_conj2p(ctx, idx, P):
    i, j, k = idx
    m = ctx.mul
    a, b, c, p, q, r = P["a"], P["b"], P["c"], P["p"], P["q"], P["r"]
    lhs = conjugate(word(z(i, j, c, r)), z4(ctx, i, j, k, a, b, p, q))
    a1, b1 = _conj2_payloads(ctx, P)
    p1 = ctx.add(p, ctx.d(ctx.add(m(p, c, r), m(q, r, c, r))))
    q1 = ctx.sub(q, ctx.d(ctx.add(m(p, c), m(q, r, c))))
    return lhs, z4(ctx, i, j, k, a1, b1, p1, q1)


def _b_conj2pt(ctx, idx, P):
    i, j, k = idx
    m = ctx.mul
    a, b, c, p, q, r = P["a"], P["b"], P["c"], P["p"], P["q"], P["r"]
    lhs = conjugate(word(z(i, j, c, r)), z4t(ctx, k, i, j, a, b, p, q))
    a1, b1 = _conj2t_payloads(ctx, P)
    p1 = ctx.add(p, ctx.d(ctx.sub(m(c, q), m(c, r, p))))
    q1 = ctx.add(q, ctx.d(ctx.sub(m(r, c, q), m(r, c, r, p))))
    return lhs, z4t(ctx, k, i, j, a1, b1, p1, q1)


def _b_hw(ctx, idx, P):
    i, j, k = idx
    a, p, q, r = P["a"], P["p"], P["q"], P["r"]
    lhs = z4(ctx, i, j, k, a, ctx.mul(q, a), ctx.sub(r, ctx.mul(p, q)), p)
    rhs = z4t(ctx, i, j, k, ctx.neg(ctx.mul(a, p)), a, q, r)
    return lhs, rhs


def _b_rel4(ctx, idx, P):
    i, j = idx
    a, p, b = P["a"], P["p"], P["b"]
    lhs = word(z(i, j, a, ctx.add(p, ctx.d(b))))
    rhs = conjugate(word(x(ctx, j, i, b)), word(z(i, j, a, p)))
    return lhs, rhs


# abelian relations of the transvection quotient
def _b_ft1(ctx, idx, P):
    i, j = idx
    a, b, p = P["a"], P["a2"], P["p"]
    return bar(z(i, j, ctx.add(a, b), p)), bar(z(i, j, a, p)) + bar(z(i, j, b, p))


def _b_ft2(ctx, idx, P):
    i, j = idx
    a, p, q = P["a"], P["p"], P["q"]
    return bar(z(i, j, a, ctx.add(p, q))), bar(z(i, j, a, p)) + bar(z(i, j, a, q))


def _b_ft3(ctx, idx, P):
    i, j, k = idx
    return bar(z(i, j, ctx.mul(P["a"], P["b"]), P["p"])), FormalSum()


def _b_ft4(ctx, idx, P):
    i, j = idx
    return bar(z(i, j, P["a"], ctx.d(P["b"]))), FormalSum()


def _b_ft5(ctx, idx, P):
    i, j, k = idx
    a, p, q = P["a"], P["p"], P["q"]
    lhs = bar(z(i, j, a, ctx.mul(p, q)))
    rhs = bar(z(i, k, ctx.mul(a, p), q)) + bar(z(k, j, ctx.mul(q, a), p))
    return lhs, rhs


def _ft3_constraint(idx):
    i, j, k = idx
    return None if i != j else "i != j required"


_A, _R = "A", "R"
CATALOG: dict[str, RelationSpec] = {s.rid: s for s in [
    RelationSpec("St1", 2, (("a", _A, 0, 1), ("b", _A, 0, 1)), _b_st1),
    RelationSpec("St2", 3, (("a", _A, 0, 1), ("b", _A, 1, 2)), _b_st2),
    RelationSpec("St3", 4, (("a", _A, 0, 1), ("b", _A, 2, 3)), _b_st3, _st3_constraint),
    RelationSpec("Rel1", 4, (("p", _R, 0, 1), ("a", _A, 2, 3)), _b_rel1, _st3_constraint),
    RelationSpec("Rel2", 3, (("p", _R, 0, 1), ("a", _A, 1, 2)), _b_rel2),
    RelationSpec("Rel2t", 3, (("p", _R, 1, 2), ("a", _A, 0, 1)), _b_rel2t),
    RelationSpec("Rel3", 2, (("a", _A, 0, 1),), _b_rel3, word_params=("g",)),
    RelationSpec("Add1", 2, (("a", _A, 0, 1), ("a2", _A, 0, 1), ("p", _R, 1, 0)), _b_add1),
    RelationSpec("Add2", 3, (("a", _A, 0, 1), ("a2", _A, 0, 1), ("b", _A, 0, 2), ("b2", _A, 0, 2),
                             ("p", _R, 1, 0)), _b_add2),
    RelationSpec("Add2t", 3, (("a", _A, 0, 2), ("a2", _A, 0, 2), ("b", _A, 1, 2), ("b2", _A, 1, 2),
                              ("p", _R, 2, 1)), _b_add2t),
    RelationSpec("Add3", 3, (("a", _A, 0, 2), ("a2", _A, 0, 2), ("b", _A, 1, 2), ("b2", _A, 1, 2),
                             ("p", _R, 2, 0), ("q", _R, 2, 1)), _b_add3),
    RelationSpec("Add3t", 3, (("a", _A, 0, 1), ("a2", _A, 0, 1), ("b", _A, 0, 2), ("b2", _A, 0, 2),
                              ("p", _R, 1, 0), ("q", _R, 2, 0)), _b_add3t),
    RelationSpec("Conj1", 3, (("c", _A, 0, 1), ("p", _R, 1, 0), ("a", _A, 0, 2), ("b", _A, 1, 2)), _b_conj1),
    RelationSpec("Conj1t", 3, (("c", _A, 0, 1), ("p", _R, 1, 0), ("a", _A, 2, 0), ("b", _A, 2, 1)), _b_conj1t),
    RelationSpec("Mult", 3, (("a", _A, 0, 2), ("b", _A, 2, 1), ("p", _R, 1, 0)), _b_mult),
    RelationSpec("Dis", 4, (("a", _A, 0, 1), ("p", _R, 1, 0), ("b", _A, 2, 3), ("q", _R, 3, 2)), _b_dis),
    RelationSpec("Sym", 3, (("a", _A, 0, 2), ("b", _A, 1, 2), ("p", _R, 2, 0), ("q", _R, 2, 1)), _b_sym),
    RelationSpec("Symt", 3, (("a", _A, 0, 1), ("b", _A, 0, 2), ("p", _R, 1, 0), ("q", _R, 2, 0)), _b_symt),
    RelationSpec("Conj2", 3, (("c", _A, 0, 1), ("r", _R, 1, 0), ("a", _A, 0, 2), ("b", _A, 1, 2),
                              ("p", _R, 2, 0), ("q", _R, 2, 1)), _b_conj2),
    RelationSpec("Conj2t", 3, (("c", _A, 0, 1), ("r", _R, 1, 0), ("a", _A, 2, 0), ("b", _A, 2, 1),
                               ("p", _R, 0, 2), ("q", _R, 1, 2)), _b_conj2t),
    RelationSpec("Conj2'", 3, (("c", _A, 0, 1), ("r", _R, 1, 0), ("a", _A, 0, 2), ("b", _A, 1, 2),
                               ("p", _R, 2, 0), ("q", _R, 2, 1)), _b_conj2p),
    RelationSpec("Conj2't", 3, (("c", _A, 0, 1), ("r", _R, 1, 0), ("a", _A, 2, 0), ("b", _A, 2, 1),
                                ("p", _R, 0, 2), ("q", _R, 1, 2)), _b_conj2pt),
    RelationSpec("HW", 3, (("a", _A, 0, 2), ("p", _R, 2, 1), ("q", _R, 1, 0), ("r", _R, 2, 0)), _b_hw),
    RelationSpec("Rel4", 2, (("a", _A, 0, 1), ("p", _R, 1, 0), ("b", _A, 1, 0)), _b_rel4),
    RelationSpec("FT1", 2, (("a", _A, 0, 1), ("a2", _A, 0, 1), ("p", _R, 1, 0)), _b_ft1),
    RelationSpec("FT2", 2, (("a", _A, 0, 1), ("p", _R, 1, 0), ("q", _R, 1, 0)), _b_ft2),
    RelationSpec("FT3", 3, (("a", _A, 0, 2), ("b", _A, 2, 1), ("p", _R, 1, 0)), _b_ft3, _ft3_constraint),
    RelationSpec("FT4", 2, (("a", _A, 0, 1), ("b", _A, 1, 0)), _b_ft4),
    RelationSpec("FT5", 3, (("a", _A, 0, 1), ("p", _R, 1, 2), ("q", _R, 2, 0)), _b_ft5),
]}

GROUP_IDS = tuple(r for r in CATALOG if not r.startswith("FT"))
FT_IDS = tuple(r for r in CATALOG if r.startswith("FT"))
# ids that only involve relative symbols (no absolute st(R) generators)
RELATIVE_IDS = tuple(r for r in GROUP_IDS if not r.startswith("Rel") or r == "Rel4")
# defining relations of the presented group
DEFINING_IDS = ("Add1", "Dis", "Conj2", "Conj2t", "HW", "Rel4")


def relation_instance(ctx: LinearContext, rid: str, indices: Sequence[Hashable], params: dict,
                      param_kind: str = "R", check: bool = True) -> RelationInstance:
    """Build both sides of relation ``rid``; ``param_kind='S'`` allows
    parameters in the semidirect ring (relativized group)."""
    spec = CATALOG.get(rid)
    if spec is None:
        raise PreconditionError(f"unknown relation id {rid!r}")
    idx = tuple(indices)
    if len(idx) != spec.arity:
        raise PreconditionError(f"{rid}: expected {spec.arity} indices, got {len(idx)}")
    for lab in idx:
        if lab not in ctx.labels:
            raise PreconditionError(f"{rid}: unknown index {lab!r}")
    constraint = spec.constraint or _distinct
    msg = constraint(idx)
    if msg:
        raise PreconditionError(f"{rid}: {msg}")
    if rid == "Dis" and ctx.n < 4:
        raise PreconditionError("Dis: needs four distinct indices")
    P = {}
    for name, kind, u, v in spec.params:
        if name not in params:
            raise PreconditionError(f"{rid}: missing parameter {name!r}")
        val = tuple(int(t) % ctx.modulus for t in params[name])
        if check:
            _check_member(ctx, kind if kind == "A" else param_kind, idx[u], idx[v], val, f"{rid}.{name}")
        P[name] = val
    for name in spec.word_params:
        if name not in params:
            raise PreconditionError(f"{rid}: missing parameter {name!r}")
        P[name] = params[name]
    lhs, rhs = spec.build(ctx, idx, P)
    if isinstance(lhs, Word):
        lhs, rhs = lhs.reduced(), rhs.reduced()
    return RelationInstance(rid, idx, P, lhs, rhs)


def instance_rng(seed: int, rid: str) -> np.random.Generator:
    """Per-relation generator: independent of which other ids are requested."""
    return np.random.default_rng([int(seed), zlib.crc32(rid.encode())])


def sample_indices(labels: Sequence, arity: int, constraint, rng: np.random.Generator) -> tuple:
    n = len(labels)
    if constraint is None or constraint is _distinct:
        if arity > n:
            raise PreconditionError(f"need {arity} distinct indices, have {n}")
        pos = rng.choice(n, size=arity, replace=False)
        return tuple(labels[int(t)] for t in pos)
    for _ in range(10000):
        idx = tuple(labels[int(t)] for t in rng.integers(0, n, size=arity))
        if constraint(idx) is None:
            return idx
    raise PreconditionError("could not satisfy index constraint")


def random_symbol(ctx: LinearContext, rng: np.random.Generator, param_kind: str = "R") -> Z:
    i, j = sample_indices(ctx.labels, 2, None, rng)
    sampler = ctx.sample_s if param_kind == "S" else ctx.sample_r
    return Z(i, j, ctx.sample_a(i, j, rng), sampler(j, i, rng))


def random_word(ctx: LinearContext, rng: np.random.Generator, length: int, param_kind: str = "R") -> Word:
    letters = []
    for _ in range(length):
        letters.append((random_symbol(ctx, rng, param_kind), 1 if rng.random() < 0.5 else -1))
    return Word(letters)


def sample_params(ctx: LinearContext, spec: RelationSpec, idx: tuple, rng: np.random.Generator,
                  param_kind: str = "R") -> dict:
    sampler = {"R": ctx.sample_r, "S": ctx.sample_s}[param_kind]
    P = {}
    for name, kind, u, v in spec.params:
        P[name] = ctx.sample_a(idx[u], idx[v], rng) if kind == _A else sampler(idx[u], idx[v], rng)
    for name in spec.word_params:
        P[name] = random_word(ctx, rng, int(rng.integers(1, 4)), param_kind)
    return P


def random_instances(ctx: LinearContext, relation_ids: Sequence[str], count: int, seed: int,
                     param_kind: str = "R") -> list[RelationInstance]:
    """``count`` instances per id, reproducible from ``seed``."""
    out = []
    for rid in relation_ids:
        spec = CATALOG[rid]
        rng = instance_rng(seed, rid)
        for _ in range(count):
            idx = sample_indices(ctx.labels, spec.arity, spec.constraint, rng)
            P = sample_params(ctx, spec, idx, rng, param_kind)
            out.append(relation_instance(ctx, rid, idx, P, param_kind=param_kind, check=False))
    return out
