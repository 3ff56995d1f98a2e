"""Conjugating unrelativized words by unipotent elements of st(R).

For g a product of absolute generators over a special closed set of roots and
h a word in x-symbols, ``conjugation_form`` produces a word in z-symbols for
^g{h}.  It strips an extreme root b = (k, l) of the support, g = g1 x_kl(p),
and rewrites

* ^g{x_ij(a)} = ^g1{x_ij(a)}                 if l != i and j != k,
* ^g{x_ij(a)} = ^g1{x_kj(pa) x_ij(a)}        if l = i,
* ^g{x_ij(a)} = ^g1{x_ij(a) x_il(-ap)}       if j = k,

until only the opposite root (j, i) is left, where ^{x_ji(p)}{x_ij(a)} = z_ij(a, p).
"""
from __future__ import annotations

from typing import Literal, Sequence

import numpy as np

from .context import LinearContext
from .rings import RingError
from .roots import linear_closure, linear_extreme_roots, linear_is_special_closed, linear_order_key
from .words import Word, X, Z

Strategy = Literal["least", "greatest"]


def unipotent_element(ctx: LinearContext, g: Sequence[X]) -> np.ndarray:
    """The image prod (1 + p) of a product of absolute generators."""
    S = ctx.S
    val = ctx.one.copy()
    for s in g:
        val = S.mul(val, (ctx.one + np.asarray(s.p, dtype=np.int64)) % ctx.modulus)
    return val


def conjugation_form(ctx: LinearContext, g: Sequence[X], h: Word,
                     sigma: Sequence[tuple] | None = None, strategy: Strategy = "least") -> Word:
    """A z-word equal to g h g^-1, for g over a special closed root set."""
    roots = {(s.i, s.j) for s in g if not s.trivial()}
    if sigma is None:
        sigma_set = linear_closure(roots)
    else:
        sigma_set = set(sigma)
        if not roots <= sigma_set:
            raise RingError("root of g outside the declared special closed set")
    if not linear_is_special_closed(sigma_set):
        raise RingError("support of g is not special closed")
    for s, _ in h:
        if not isinstance(s, Z) or any(s.p):
            raise RingError("h must be a word in x-symbols")
    gval = unipotent_element(ctx, g)
    letters = []
    for s, e in h:
        part = _conj_x(ctx, frozenset(sigma_set), gval, s.i, s.j, s.a, strategy)
        letters.extend(part if e == 1 else Word(part).inverse().letters)
    return Word(letters).reduced()


def _conj_x(ctx: LinearContext, sigma: frozenset, g: np.ndarray, i, j, a, strategy: Strategy) -> list:
    if not any(a):
        return []
    if not sigma:
        return [(Z(i, j, tuple(a), ctx.zero), 1)]
    cands = [b for b in linear_extreme_roots(sigma) if b != (j, i)]
    if not cands:
        # sigma == {(j, i)}
        p = ctx.peirce(j, g, i)
        return [(Z(i, j, tuple(a), p), 1)]
    cands.sort(key=lambda r: linear_order_key(ctx.labels, r), reverse=(strategy == "greatest"))
    k, l = cands[0]
    p = ctx.peirce(k, g, l)
    g1 = ctx.S.mul(g, (ctx.one - np.asarray(p, dtype=np.int64)) % ctx.modulus)
    rest = sigma - {(k, l)}
    if l != i and j != k:
        return _conj_x(ctx, rest, g1, i, j, a, strategy)
    if l == i:
        return (_conj_x(ctx, rest, g1, k, j, ctx.mul(p, a), strategy)
                + _conj_x(ctx, rest, g1, i, j, a, strategy))
    return (_conj_x(ctx, rest, g1, i, j, a, strategy)
            + _conj_x(ctx, rest, g1, i, l, ctx.neg(ctx.mul(a, p)), strategy))
