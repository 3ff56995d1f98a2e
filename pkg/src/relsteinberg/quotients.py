"""The transvection quotient as a finitely presented abelian group.

Generators z_bar(a, p) are bilinear in (a, p), so the group on one root slot is
a quotient of A_slot (x)_Z R_slot: columns are indexed by pairs of additive
generators (a_s, p_t), and the additive relations of the two factors are
tensored against the other factor's generators.  The remaining relations
FT3, FT4 and FT5 are enumerated over generators and fed to Smith normal form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Sequence

import numpy as np

from .chevalley import ChevalleyContext, random_chevalley_instances
from .context import LinearContext
from .relations import CATALOG, RELATIVE_IDS, random_instances
from .snf import SNFResult, cokernel_coordinates, in_row_lattice, smith_normal_form
from .words import Word, X, Z, ZC
from .zmod import Submodule

DEFAULT_GENERATOR_CAP = 5000


class PresentationTooLarge(ValueError):
    pass


@dataclass
class Slot:
    """One root position: a-generators and p-generators, both in a common
    coordinate space, plus the submodules they generate."""

    key: Hashable
    a_mod: Submodule
    p_mod: Submodule
    offset: int = 0

    @property
    def a_gens(self):
        return self.a_mod.gens

    @property
    def p_gens(self):
        return self.p_mod.gens

    @property
    def size(self) -> int:
        return len(self.a_gens) * len(self.p_gens)


def _accumulate(slots: dict, out: list[int], key: Hashable, a: Sequence[int], p: Sequence[int], coeff: int) -> None:
    """Add coeff * z_bar_key(a, p) to ``out`` in canonical generator order."""
    if not any(a) or not any(p):
        return
    s = slots[key]
    ca = s.a_mod.coordinates(a)
    cp = s.p_mod.coordinates(p)
    if ca is None or cp is None:
        raise ValueError(f"payload or parameter outside slot {key!r}")
    npg = len(s.p_gens)
    for u, x in enumerate(ca):
        if x:
            for v, y in enumerate(cp):
                if y:
                    out[s.offset + u * npg + v] += coeff * x * y


@dataclass
class AbelianPresentation:
    """Generators and relation rows; ``perm`` maps column k to canonical column perm[k]."""

    scope: str
    fingerprint: str
    slots: list[Slot]
    generators: list[tuple]
    rows: list[list[int]]
    row_tags: list[str]
    perm: list[int] | None = None
    _snf: SNFResult | None = field(default=None, repr=False)

    def __post_init__(self):
        self._by_key = {s.key: s for s in self.slots}

    @property
    def ngens(self) -> int:
        return len(self.generators)

    @property
    def nrels(self) -> int:
        return len(self.rows)

    def _ordered(self, canon: list[int]) -> list[int]:
        return canon if self.perm is None else [canon[k] for k in self.perm]

    def vector(self, key: Hashable, a: Sequence[int], p: Sequence[int]) -> list[int]:
        """z_bar_key(a, p) in generator coordinates."""
        out = [0] * self.ngens
        _accumulate(self._by_key, out, key, a, p, 1)
        return self._ordered(out)

    def word_image(self, w: Word) -> list[int]:
        """Image of a relative word; x-symbols (zero parameter) map to 0."""
        out = [0] * self.ngens
        for sym, e in w:
            if isinstance(sym, Z):
                key = (sym.i, sym.j)
            elif isinstance(sym, ZC):
                key = sym.root
            elif isinstance(sym, X):
                raise ValueError("absolute generators have no image in the transvection quotient")
            else:
                raise TypeError(type(sym).__name__)
            _accumulate(self._by_key, out, key, sym.a, sym.p, e)
        return self._ordered(out)

    def snf(self) -> SNFResult:
        if self._snf is None:
            self._snf = smith_normal_form(self.rows, self.ngens)
        return self._snf

    def is_zero(self, vec: Sequence[int]) -> bool:
        return in_row_lattice(self.snf(), vec)

    def class_of(self, vec: Sequence[int]) -> tuple[int, ...]:
        return cokernel_coordinates(self.snf(), vec)

    def without_row(self, k: int) -> "AbelianPresentation":
        rows = self.rows[:k] + self.rows[k + 1:]
        tags = self.row_tags[:k] + self.row_tags[k + 1:]
        return AbelianPresentation(self.scope, self.fingerprint, self.slots, self.generators, rows, tags, self.perm)

    def to_json(self) -> dict:
        res = self.snf()
        return {"fingerprint": self.fingerprint, "scope": self.scope, "generators": self.ngens,
                "relations": self.nrels, "invariant_factors": list(res.invariant_factors),
                "free_rank": res.free_rank, "certified": res.certified}


# ------------------------------------------------------------------ builders

class _Builder:
    def __init__(self, slots: list[Slot], cap: int):
        total = 0
        for s in slots:
            s.offset = total
            total += s.size
        if total > cap:
            raise PresentationTooLarge(f"{total} generators exceed the cap of {cap}")
        self.slots = slots
        self.by_key = {s.key: s for s in slots}
        self.ngens = total
        self.rows: list[list[int]] = []
        self.tags: list[str] = []
        self.generators = [(s.key, a, p) for s in slots for a in s.a_gens for p in s.p_gens]

    def add_row(self, tag: str, terms: Sequence[tuple[Hashable, Sequence[int], Sequence[int], int]]) -> None:
        row = [0] * self.ngens
        for key, a, p, c in terms:
            _accumulate(self.by_key, row, key, a, p, c)
        if any(row):
            self.rows.append(row)
            self.tags.append(tag)

    def additive_rows(self) -> None:
        """Tensor relations: sum c_s a_s = 0 gives sum c_s (a_s, p_t) = 0 for all t."""
        for s in self.slots:
            npg = len(s.p_gens)
            for rel in s.a_mod.relations:
                for v in range(npg):
                    row = [0] * self.ngens
                    for u, c in enumerate(rel):
                        row[s.offset + u * npg + v] += c
                    self.rows.append(row)
                    self.tags.append("tensor_a")
            for rel in s.p_mod.relations:
                for u in range(len(s.a_gens)):
                    row = [0] * self.ngens
                    for v, c in enumerate(rel):
                        row[s.offset + u * npg + v] += c
                    self.rows.append(row)
                    self.tags.append("tensor_p")

    def finish(self, scope: str, fingerprint: str, shuffle: np.random.Generator | None) -> AbelianPresentation:
        if shuffle is None:
            return AbelianPresentation(scope, fingerprint, self.slots, self.generators, self.rows, self.tags)
        perm = [int(k) for k in shuffle.permutation(self.ngens)]
        order = [int(k) for k in shuffle.permutation(len(self.rows))]
        rows = [[self.rows[r][k] for k in perm] for r in order]
        tags = [self.tags[r] for r in order]
        gens = [self.generators[k] for k in perm]
        return AbelianPresentation(scope, fingerprint, self.slots, gens, rows, tags, perm)


def _linear_presentation(ctx: LinearContext, cap: int, shuffle) -> AbelianPresentation:
    labels = list(ctx.labels)
    slots = [Slot((i, j), ctx.a_component(i, j), ctx.r_component(j, i))
             for i in labels for j in labels if i != j]
    b = _Builder(slots, cap)
    b.additive_rows()
    for i in labels:
        for j in labels:
            if i == j:
                continue
            ps = ctx.r_component(j, i).gens
            # FT3: z_ij(a b, p) = 0 for a in e_i A, b in A e_j
            for k in labels:
                for a in ctx.a_component(i, k).gens:
                    for c in ctx.a_component(k, j).gens:
                        ab = ctx.mul(a, c)
                        for p in ps:
                            b.add_row("FT3", [((i, j), ab, p, 1)])
            # FT4: z_ij(a, d(c)) = 0
            for a in ctx.a_component(i, j).gens:
                for c in ctx.a_component(j, i).gens:
                    b.add_row("FT4", [((i, j), a, ctx.d(c), 1)])
            # FT5: z_ij(a, pq) = z_ik(ap, q) + z_kj(qa, p)
            for k in labels:
                if k in (i, j):
                    continue
                for a in ctx.a_component(i, j).gens:
                    for p in ctx.r_component(j, k).gens:
                        for q in ctx.r_component(k, i).gens:
                            b.add_row("FT5", [((i, j), a, ctx.mul(p, q), 1),
                                              ((i, k), ctx.mul(a, p), q, -1),
                                              ((k, j), ctx.mul(q, a), p, -1)])
    return b.finish("linear", ctx.fingerprint, shuffle)


def _chevalley_presentation(ch: ChevalleyContext, cap: int, shuffle) -> AbelianPresentation:
    if ch.datum.rank < 3:
        raise ValueError("the chevalley transvection quotient needs rank at least 3")
    s = ch.scalar
    S = s.S
    a_mod = S.ideal
    k_mod = Submodule.span(s.modulus, s.dim, [S.embed_r(g) for g in S.base.carrier.gens])
    slots = [Slot(t, a_mod, k_mod) for t in range(len(ch.datum))]
    b = _Builder(slots, cap)
    b.additive_rows()
    d = ch.datum
    for t in range(len(d)):
        for a in a_mod.gens:
            for p in k_mod.gens:
                for c in a_mod.gens:                                  # FT3
                    b.add_row("FT3", [(t, s.mul(a, c), p, 1)])
            for c in a_mod.gens:                                      # FT4
                b.add_row("FT4", [(t, a, s.d(c), 1)])
    for al in range(len(d)):                                          # FT5
        for be in range(len(d)):
            ab = d.add(al, be)
            if ab is None:
                continue
            for a in a_mod.gens:
                for p in k_mod.gens:
                    for q in k_mod.gens:
                        b.add_row("FT5", [(ab, a, s.mul(p, q), 1), (al, s.mul(a, p), q, -1),
                                          (be, s.mul(q, a), p, -1)])
    return b.finish("chevalley", ch.fingerprint, shuffle)


def ft_presentation(context: LinearContext | ChevalleyContext, scope: str | None = None,
                    cap: int = DEFAULT_GENERATOR_CAP, shuffle_seed: int | None = None) -> AbelianPresentation:
    """Presentation of the transvection quotient; ``shuffle_seed`` permutes the
    generator and relation order (the group must not depend on it)."""
    if scope is None:
        scope = "chevalley" if isinstance(context, ChevalleyContext) else "linear"
    shuffle = None if shuffle_seed is None else np.random.default_rng(shuffle_seed)
    if scope == "linear":
        if not isinstance(context, LinearContext):
            raise TypeError("linear scope needs a LinearContext")
        return _linear_presentation(context, cap, shuffle)
    if scope == "chevalley":
        if not isinstance(context, ChevalleyContext):
            raise TypeError("chevalley scope needs a ChevalleyContext")
        return _chevalley_presentation(context, cap, shuffle)
    raise ValueError(f"unknown scope {scope!r}")


# ------------------------------------------------------------------ quotient map

@dataclass
class QuotientVerdict:
    passed: bool
    counts: dict
    failures: list[dict]

    def to_json(self) -> dict:
        return {"pass": self.passed, "counts": self.counts, "failures": self.failures}


def verify_quotient_map(context: LinearContext | ChevalleyContext, relation_ids: Sequence[str] | None,
                        samples: int, seed: int = 0,
                        presentation: AbelianPresentation | None = None) -> QuotientVerdict:
    """Sampled defining-relation instances must have lhs - rhs = 0 in the quotient."""
    pres = presentation if presentation is not None else ft_presentation(context)
    if isinstance(context, ChevalleyContext):
        ids = list(relation_ids) if relation_ids is not None else ["Add1", "Dis", "Conj2", "HW", "Rel4"]
        instances = random_chevalley_instances(context, ids, samples, seed)
    else:
        if relation_ids is None:
            ids = [r for r in ("Add1", "Dis", "Conj2", "Conj2t", "HW", "Rel4") if CATALOG[r].arity <= context.n]
        else:
            ids = list(relation_ids)
        bad = [r for r in ids if r not in RELATIVE_IDS]
        if bad:
            raise ValueError(f"relations with absolute generators have no image: {bad}")
        instances = random_instances(context, ids, samples, seed)
    counts: dict = {}
    failures = []
    for inst in instances:
        diff = [x - y for x, y in zip(pres.word_image(inst.lhs), pres.word_image(inst.rhs))]
        ok = pres.is_zero(diff)
        c = counts.setdefault(inst.relation_id, {"pass": 0, "fail": 0})
        c["pass" if ok else "fail"] += 1
        if not ok:
            failures.append({"relation_id": inst.relation_id, "instance": inst.to_json(),
                             "class": list(pres.class_of(diff))})
    return QuotientVerdict(not failures, counts, failures)
