"""Evaluation of words in the unit group of A x| R.

z_ij(a, p) goes to (1 + p)(1 + a)(1 - p), the image of the conjugate of
x_ij(a) by x_ji(p); an absolute x_ij(p) goes to 1 + p.  Both a and p are
off-diagonal Peirce components, so they square to zero and the inverses are
obtained by negating the middle factor.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .context import LinearContext
from .relations import RelationInstance
from .roots import linear_is_special_closed, linear_order_key
from .rings import RingError
from .words import Word, X, Z


@dataclass(frozen=True, eq=False)
class Unit:
    value: np.ndarray
    inverse: np.ndarray

    def __eq__(self, other) -> bool:
        return isinstance(other, Unit) and np.array_equal(self.value, other.value)

    def __hash__(self):
        return hash(self.value.tobytes())

    def coords(self) -> list[int]:
        return [int(v) for v in self.value]


@dataclass
class Verdict:
    relation_id: str
    passed: bool
    instance: RelationInstance | None = None
    lhs_eval: list[int] | None = None
    rhs_eval: list[int] | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self, seed: int | None = None) -> dict:
        out = {"relation_id": self.relation_id, "pass": self.passed}
        if seed is not None:
            out["seed"] = seed
        if self.instance is not None:
            out["parameters"] = self.instance.to_json()["parameters"]
        if not self.passed:
            if self.instance is not None:
                out["instance"] = self.instance.to_json()
            out["lhs_eval"] = self.lhs_eval
            out["rhs_eval"] = self.rhs_eval
        out.update(self.extra)
        return out


_CACHE_LIMIT = 20000


def identity(ctx: LinearContext) -> Unit:
    return Unit(ctx.one.copy(), ctx.one.copy())


def eval_symbol(ctx: LinearContext, sym: Z | X) -> Unit:
    cache = ctx.eval_cache
    hit = cache.get(sym)
    if hit is not None:
        return hit
    S = ctx.S
    one = S.one
    if isinstance(sym, Z):
        p = np.asarray(sym.p, dtype=np.int64)
        a = np.asarray(sym.a, dtype=np.int64)
        left = (one + p) % S.modulus
        right = (one - p) % S.modulus
        u = S.mul(S.mul(left, (one + a) % S.modulus), right)
        v = S.mul(S.mul(left, (one - a) % S.modulus), right)
    elif isinstance(sym, X):
        p = np.asarray(sym.p, dtype=np.int64)
        u = (one + p) % S.modulus
        v = (one - p) % S.modulus
    else:
        raise TypeError(f"cannot evaluate {type(sym).__name__} in a linear context")
    out = Unit(u, v)
    if len(cache) > _CACHE_LIMIT:
        cache.clear()
    cache[sym] = out
    return out


def eval_word(ctx: LinearContext, w: Word) -> Unit:
    S = ctx.S
    val = ctx.one.copy()
    inv = ctx.one.copy()
    for sym, e in w:
        u = eval_symbol(ctx, sym)
        if e == 1:
            val = S.mul(val, u.value)
            inv = S.mul(u.inverse, inv)
        else:
            val = S.mul(val, u.inverse)
            inv = S.mul(u.value, inv)
    return Unit(val, inv)


def eval_value(ctx: LinearContext, w: Word) -> np.ndarray:
    """Just the value of ``w``; cheaper than :func:`eval_word`."""
    S = ctx.S
    val = ctx.one.copy()
    for sym, e in w:
        u = eval_symbol(ctx, sym)
        val = S.mul(val, u.value if e == 1 else u.inverse)
    return val


def verify_instance(ctx: LinearContext, inst: RelationInstance) -> Verdict:
    lhs = eval_value(ctx, inst.lhs)
    rhs = eval_value(ctx, inst.rhs)
    ok = bool(np.array_equal(lhs, rhs))
    if ok:
        return Verdict(inst.relation_id, True, inst)
    return Verdict(inst.relation_id, False, inst, [int(v) for v in lhs], [int(v) for v in rhs])


# ------------------------------------------------------------------ diagonal action

def is_diagonal(ctx: LinearContext, r: Sequence[int]) -> bool:
    return all(not any(ctx.peirce(i, r, j)) for i in ctx.labels for j in ctx.labels if i != j)


def diagonal_inverse(ctx: LinearContext, r: Sequence[int]) -> np.ndarray:
    r = np.asarray(r, dtype=np.int64) % ctx.modulus
    if not is_diagonal(ctx, r):
        raise RingError("element is not block diagonal")
    inv = ctx.S.inverse(r)
    if inv is None:
        raise RingError("element is not invertible")
    return inv


def diag_act(ctx: LinearContext, r: Sequence[int], sym: Z | X, r_inv: np.ndarray | None = None) -> Z | X:
    """^r z_ij(a, p) = z_ij(r a r^-1, r p r^-1) for a block diagonal unit r."""
    r = np.asarray(r, dtype=np.int64) % ctx.modulus
    if r_inv is None:
        r_inv = diagonal_inverse(ctx, r)
    if isinstance(sym, Z):
        return Z(sym.i, sym.j, ctx.mul(r, sym.a, r_inv), ctx.mul(r, sym.p, r_inv))
    return X(sym.i, sym.j, ctx.mul(r, sym.p, r_inv))


# ------------------------------------------------------------------ factorization

def _heights(sigma: Sequence[tuple]) -> dict:
    """A functional positive on a special closed set: longest path lengths in the
    acyclic graph i -> j for (i, j) in sigma."""
    nodes = {v for r in sigma for v in r}
    succ = {v: [] for v in nodes}
    for i, j in sigma:
        succ[i].append(j)
    depth: dict = {}

    def visit(v, stack=()):
        if v in depth:
            return depth[v]
        if v in stack:
            raise RingError("root set is not special closed")
        depth[v] = 1 + max((visit(w, stack + (v,)) for w in succ[v]), default=0)
        return depth[v]

    for v in nodes:
        visit(v)
    return depth


def unipotent_factorization(ctx: LinearContext, u: Unit | Sequence[int], sigma: Sequence[tuple]) -> dict | None:
    """Payloads a_alpha with prod_{alpha in sigma} (1 + a_alpha) = u, in the order
    given, or None if u is not such a product."""
    sigma = list(sigma)
    if not linear_is_special_closed(sigma):
        raise RingError("root set is not special closed")
    S = ctx.S
    target = u.value if isinstance(u, Unit) else np.asarray(u, dtype=np.int64) % ctx.modulus
    w = _heights(sigma)
    by_height = sorted(sigma, key=lambda r: (w[r[0]] - w[r[1]], linear_order_key(ctx.labels, r)))
    payload = {r: np.zeros(ctx.dim, dtype=np.int64) for r in sigma}

    def product(skip=None):
        val = ctx.one.copy()
        for r in sigma:
            if r == skip:
                continue
            val = S.mul(val, (ctx.one + payload[r]) % ctx.modulus)
        return val

    for r in by_height:
        diff = (target - product(skip=r)) % ctx.modulus
        payload[r] = np.asarray(ctx.peirce(r[0], diff, r[1]), dtype=np.int64)
    if not np.array_equal(product(), target):
        return None
    out = {}
    for r in sigma:
        if not ctx.in_a(r[0], r[1], payload[r]):
            return None
        out[r] = tuple(int(v) for v in payload[r])
    return out


def product_word(ctx: LinearContext, payloads: dict, order: Sequence[tuple]) -> Word:
    return Word((Z(i, j, tuple(payloads[(i, j)]), ctx.zero), 1) for i, j in order)
