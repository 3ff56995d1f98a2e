"""Root elimination and relativization as word rewrites.

Merging e_l and e_m into e_inf = e_l + e_m gives a coarser family; ``F_alpha``
rewrites symbols of the coarse family as words of the fine one and
``G_alpha`` goes back.  ``relativize_xi`` and ``relativize_zeta`` translate
between the group over (R, A) and the group over (A x| R, A).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Sequence

import numpy as np

from .context import LinearContext
from .evaluation import eval_value
from .relations import x, z4, z4t
from .rings import RingError
from .words import Word, X, Z, conjugate, word


@dataclass(frozen=True, eq=False)
class MergedContext:
    """``parent`` with the idempotents labelled l and m merged."""

    parent: LinearContext
    l: Hashable
    m: Hashable
    merged: LinearContext = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "merged", self.parent.merge(self.l, self.m))

    @cached_property
    def inf(self) -> Hashable:
        fam = self.merged.family
        cls = self.parent.family.classes[self.parent.family.position(self.l)] | \
            self.parent.family.classes[self.parent.family.position(self.m)]
        return fam.labels[fam.classes.index(cls)]

    @cached_property
    def e_l(self) -> np.ndarray:
        return self.parent.e(self.l)

    @cached_property
    def e_m(self) -> np.ndarray:
        return self.parent.e(self.m)

    def validate(self) -> dict[str, bool]:
        return self.merged.family.validate(min_size=2)


def merge_context(ctx: LinearContext, l: Hashable, m: Hashable) -> MergedContext:
    if l not in ctx.labels or m not in ctx.labels or l == m:
        raise RingError("merge needs two distinct labels of the context")
    return MergedContext(ctx, l, m)


# ------------------------------------------------------------------ F

def F_alpha_symbol(mc: MergedContext, sym: Z | X) -> Word:
    P = mc.parent
    inf, l, m = mc.inf, mc.l, mc.m
    el, em = mc.e_l, mc.e_m
    if isinstance(sym, X):
        i, j, p = sym.i, sym.j, sym.p
        if i == inf:
            return word(X(l, j, P.mul(el, p)), X(m, j, P.mul(em, p))).reduced()
        if j == inf:
            return word(X(i, l, P.mul(p, el)), X(i, m, P.mul(p, em))).reduced()
        return word(sym)
    i, j, a, p = sym.i, sym.j, sym.a, sym.p
    if i == inf:
        return z4(P, l, m, j, P.mul(el, a), P.mul(em, a), P.mul(p, el), P.mul(p, em)).reduced()
    if j == inf:
        return z4t(P, i, l, m, P.mul(a, el), P.mul(a, em), P.mul(el, p), P.mul(em, p)).reduced()
    return word(sym)


def F_alpha(mc: MergedContext, w: Word | Z | X) -> Word:
    if not isinstance(w, Word):
        w = word(w)
    return w.map(lambda s: F_alpha_symbol(mc, s)).reduced()


def eliminate(ctx: LinearContext, pairs: Sequence[tuple]) -> list[MergedContext]:
    """Successive merges; each pair names labels of the previous context."""
    out = []
    cur = ctx
    for l, m in pairs:
        mc = merge_context(cur, l, m)
        out.append(mc)
        cur = mc.merged
    return out


def F_psi(chain: Sequence[MergedContext], w: Word) -> Word:
    """Composite of the F_alpha maps, from the coarsest family down to the finest."""
    for mc in reversed(chain):
        w = F_alpha(mc, w)
    return w


def elimination_orders(psi_pairs: Sequence[tuple]) -> list[list[tuple]]:
    """For a rank-2 subsystem given by two roots (as base label pairs), the two
    single-root elimination sequences alpha then pi_alpha(beta) and reverse."""
    if len(psi_pairs) != 2:
        raise RingError("expected two generating roots")
    a, b = psi_pairs

    def project(first, second):
        cls = frozenset(first)
        lab = lambda v: cls if v in cls else v
        return (lab(second[0]), lab(second[1]))

    return [[a, project(a, b)], [b, project(b, a)]]


# ------------------------------------------------------------------ G

def auxiliary_index(mc: MergedContext) -> Hashable:
    for k in mc.parent.labels:
        if k not in (mc.l, mc.m):
            return k
    raise RingError("no auxiliary index available")


def G_alpha_symbol(mc: MergedContext, sym: Z) -> Word:
    if not isinstance(sym, Z):
        raise RingError("G_alpha is defined on relative generators")
    P = mc.parent
    inf, l, m = mc.inf, mc.l, mc.m
    i, j, c, r = sym.i, sym.j, sym.a, sym.p
    pair = {l, m}
    if i not in pair and j not in pair:
        return word(sym)
    if i in pair and j not in pair:
        return word(Z(inf, j, c, r))
    if j in pair and i not in pair:
        return word(Z(i, inf, c, r))
    # {i, j} = {l, m}: split c through an outside index k
    k = auxiliary_index(mc)
    letters = Word()
    for u, v in P.fullness_decomposition(c, i, j, k):
        a = P.neg(u)          # z_ij(-a p, q) with a = -u, p = v
        p, q = v, r
        pay = P.add(a, P.mul(q, a))
        letters = letters * word(Z(inf, k, pay, P.sub(p, P.mul(p, q))), x(P, inf, k, P.neg(pay)))
    return letters.reduced()


def G_alpha(mc: MergedContext, w: Word | Z) -> Word:
    if not isinstance(w, Word):
        w = word(w)
    return w.map(lambda s: G_alpha_symbol(mc, s)).reduced()


# ------------------------------------------------------------------ relativization

def relativize_zeta(ctx: LinearContext, sym: Z) -> Z:
    """z_ij(a, p) -> z_ij(a, 0 + p) in the group over (A x| R, A)."""
    return Z(sym.i, sym.j, ctx.to_relativized(sym.a, ideal=True), ctx.to_relativized(sym.p, ideal=False))


def relativize_xi(ctx: LinearContext, sym: Z) -> Word:
    """z_ij(a, p_A + p_R) -> x_ji(p_A) z_ij(a, p_R) x_ji(-p_A)."""
    rel = ctx.relativized.S
    S = ctx.S
    a = tuple(int(v) for v in S.embed_a(rel.a_part(sym.a)))
    s = rel.r_part(sym.p)
    p_a = tuple(int(v) for v in S.embed_a(S.a_part(s)))
    p_r = tuple(int(v) for v in S.embed_r(S.r_part(s)))
    core = word(Z(sym.i, sym.j, a, p_r))
    return conjugate(word(x(ctx, sym.j, sym.i, p_a)), core).reduced()


def zeta_word(ctx: LinearContext, w: Word) -> Word:
    return w.map(lambda s: word(relativize_zeta(ctx, s)))


def xi_word(ctx: LinearContext, w: Word) -> Word:
    return w.map(lambda s: relativize_xi(ctx, s)).reduced()


# ------------------------------------------------------------------ commuting square

def rank2_subsystems(labels: Sequence) -> list[tuple[str, tuple]]:
    """Generating root pairs of every A2 and A1 x A1 subsystem of type A."""
    labels = list(labels)
    out = []
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            for c in range(b + 1, len(labels)):
                i, j, k = labels[a], labels[b], labels[c]
                out.append(("A2", ((i, j), (j, k))))
    for a, b, c, d in _four_subsets(len(labels)):
        for p, q in (((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))):
            out.append(("A1xA1", ((labels[p[0]], labels[p[1]]), (labels[q[0]], labels[q[1]]))))
    return out


def _four_subsets(n: int):
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                for d in range(c + 1, n):
                    yield a, b, c, d


def square_chains(ctx: LinearContext, psi_pairs: Sequence[tuple]) -> tuple[list[MergedContext], list[MergedContext]]:
    """Both single-root elimination sequences for a rank 2 subsystem; the two
    coarse contexts carry identical labels."""
    first, second = elimination_orders(psi_pairs)
    c1, c2 = eliminate(ctx, first), eliminate(ctx, second)
    if c1[-1].merged.labels != c2[-1].merged.labels:
        raise RingError("elimination orders disagree on the coarse labels")
    return c1, c2


def square_holds(ctx: LinearContext, chains: tuple[list[MergedContext], list[MergedContext]], w: Word) -> bool:
    """F along either order evaluates to the same unit."""
    c1, c2 = chains
    return bool(np.array_equal(eval_value(ctx, F_psi(c1, w)), eval_value(ctx, F_psi(c2, w))))
