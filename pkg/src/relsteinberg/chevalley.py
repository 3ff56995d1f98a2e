"""Simply laced Steinberg data over a scalar crossed module d: a -> K.

Structure constants come from a bimultiplicative asymmetry function of an
oriented Dynkin diagram.  Relations between root generators z_alpha(a, p) are
checked by transporting them into the linear model Mat(4, a) -> Mat(4, K)
through a sign-twisted embedding of the (rank <= 3, type A) root subsystem
their support spans.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .context import LinearContext
from .evaluation import Verdict, eval_value
from .relations import PreconditionError, RelationInstance, instance_rng
from .rings import CrossedModule, diagonal_family, matrix_crossed_module, matrix_unit, semidirect
from .roots import RootDatum, RootError, subsystem_family_G
from .words import EMPTY, Word, Z, ZC, commutator, conjugate, word
from .zmod import solve_mod

Coords = tuple[int, ...]


class ConstantsError(ValueError):
    pass


# ------------------------------------------------------------------ constants

@dataclass(frozen=True, eq=False)
class StructureConstants:
    datum: RootDatum
    orientation: tuple[tuple[int, int], ...]   # directed Dynkin edges, 1-based
    table: dict = field(hash=False)            # (s, t) -> +-1 for s + t a root

    def N(self, s: int, t: int) -> int:
        try:
            return self.table[(s, t)]
        except KeyError:
            raise ConstantsError(f"roots {s}, {t} do not sum to a root") from None

    def mutated(self, s: int, t: int) -> "StructureConstants":
        table = dict(self.table)
        table[(s, t)] = -table[(s, t)]
        return StructureConstants(self.datum, self.orientation, table)


def default_orientation(datum: RootDatum) -> tuple[tuple[int, int], ...]:
    """Every Dynkin edge directed toward the higher node index."""
    return tuple((i + 1, j + 1) for i, j in datum.dynkin_edges())


def reversed_orientation(datum: RootDatum) -> tuple[tuple[int, int], ...]:
    return tuple((j, i) for i, j in default_orientation(datum))


def asymmetry_matrix(datum: RootDatum, orientation: Sequence[tuple[int, int]]) -> np.ndarray:
    """B with eps(a, b) = (-1)^(a B b): B_ii = 1 and B_ij = 1 for an edge i -> j."""
    b = np.eye(datum.rank, dtype=np.int64)
    edges = {tuple(sorted((i - 1, j - 1))) for i, j in orientation}
    if edges != set(datum.dynkin_edges()):
        raise ConstantsError("orientation must direct every Dynkin edge exactly once")
    for i, j in orientation:
        b[i - 1, j - 1] = 1
    return b


def build_constants(datum: RootDatum, orientation: Sequence[tuple[int, int]] | None = None,
                    check: bool = True) -> StructureConstants:
    """N_ab = eta_a eta_b eta_(a+b) eps(a, b), with eta = +1 on positive roots and
    -1 on negative ones.  The eta factor makes N_(-a,-b) = -N_ab hold."""
    orientation = tuple(orientation) if orientation is not None else default_orientation(datum)
    bmat = asymmetry_matrix(datum, orientation)
    c = datum.coords
    parity = (c @ bmat @ c.T) % 2
    eta = np.where(np.arange(len(datum)) < datum.npos, 1, -1)
    table = {}
    st = datum.sum_table
    for s, t in zip(*np.nonzero(st >= 0)):
        u = int(st[s, t])
        eps = -1 if parity[s, t] else 1
        table[(int(s), int(t))] = int(eps * eta[s] * eta[t] * eta[u])
    consts = StructureConstants(datum, orientation, table)
    if check:
        v = verify_n_rel(consts)
        if not v["pass"]:
            raise ConstantsError(f"structure constants fail the sign identities: {v['failures'][:3]}")
    return consts


def verify_n_rel(consts: StructureConstants) -> dict:
    """N_ab = -N_ba = -N_(-a,-b) = N_(-b,-a) = N_(b,-a-b) = N_(-a-b,a)."""
    d = consts.datum
    failures = []
    checked = 0
    for (s, t), n in consts.table.items():
        u = d.add(s, t)
        ns, nt, nu = d.neg(s), d.neg(t), d.neg(u)
        others = {
            "-N_ba": -consts.N(t, s),
            "-N_-a-b": -consts.N(ns, nt),
            "N_-b-a": consts.N(nt, ns),
            "N_b,-a-b": consts.N(t, nu),
            "N_-a-b,a": consts.N(nu, s),
        }
        checked += 1
        for name, v in others.items():
            if v not in (-1, 1) or v != n:
                failures.append({"pair": [s, t], "identity": name})
    return {"pass": not failures, "pairs": checked, "failures": failures}


# ------------------------------------------------------------------ scalar arithmetic

class ScalarArith:
    """Arithmetic of the semidirect ring a x| K for a scalar crossed module."""

    def __init__(self, cm: CrossedModule):
        self.crossed = cm
        self.S = semidirect(cm)
        self.modulus = self.S.modulus
        self.dim = self.S.dim
        self.zero = (0,) * self.dim

    def _a(self, x):
        return np.asarray(x, dtype=np.int64)

    def mul(self, *xs) -> Coords:
        out = self._a(xs[0])
        for x in xs[1:]:
            out = self.S.mul(out, self._a(x))
        return tuple(int(v) for v in out)

    def add(self, *xs) -> Coords:
        return tuple(int(v) for v in sum((self._a(x) for x in xs), np.zeros(self.dim, dtype=np.int64)) % self.modulus)

    def neg(self, x) -> Coords:
        return tuple(int(v) for v in (-self._a(x)) % self.modulus)

    def sub(self, x, y) -> Coords:
        return tuple(int(v) for v in (self._a(x) - self._a(y)) % self.modulus)

    def scale(self, c: int, x) -> Coords:
        return tuple(int(v) for v in (c * self._a(x)) % self.modulus)

    def d(self, a) -> Coords:
        return tuple(int(v) for v in self.S.d(a))

    def sample_a(self, rng) -> Coords:
        return tuple(int(v) for v in self.S.embed_a(self.crossed.algebra.carrier.sample(rng)))

    def sample_k(self, rng) -> Coords:
        return tuple(int(v) for v in self.S.embed_r(self.crossed.ring.carrier.sample(rng)))

    def in_a(self, x) -> bool:
        return self.S.ideal.contains(x)

    def in_k(self, x) -> bool:
        return self.S.contains(self.S.embed_r(self.S.r_part(x))) and not any(self.S.a_part(x))


# ------------------------------------------------------------------ embeddings

@dataclass(frozen=True, eq=False)
class SubsystemEmbedding:
    """A type-A subsystem with root -> (i, j) labels in 1..4 and sign twists."""

    roots: frozenset[int]
    kind: str
    labels: dict = field(hash=False)
    chi: dict = field(hash=False)


def linear_constant(p: tuple[int, int], q: tuple[int, int]) -> int:
    """N for the linear model: [x_ij, x_jk] = x_ik, [x_jk, x_ij] = x_ik^-1."""
    if p[1] == q[0] and p[0] != q[1]:
        return 1
    if q[1] == p[0] and q[0] != p[1]:
        return -1
    raise ConstantsError("pairs do not sum to a root")


def _classify(datum: RootDatum, sub: frozenset[int]) -> str:
    size = len(sub)
    rank = datum.span_rank(sub)
    kinds = {(2, 1): "A1", (4, 2): "A1xA1", (6, 2): "A2", (12, 3): "A3"}
    kind = kinds.get((size, rank))
    if kind is None:
        raise RootError(f"subsystem of size {size}, rank {rank} is not A1, A1xA1, A2 or A3")
    return kind


def _simple_system(datum: RootDatum, sub: frozenset[int]) -> list[int]:
    """Simple roots of the positive part of ``sub`` (w.r.t. the ambient order)."""
    pos = [t for t in sub if datum.is_positive(t)]
    sums = {datum.add(a, b) for a in pos for b in pos}
    return sorted(t for t in pos if t not in sums)


def embed_subsystem(consts: StructureConstants, sub: frozenset[int] | Sequence[int]) -> SubsystemEmbedding:
    """Label a type A_1 / A_1 x A_1 / A_2 / A_3 subsystem by index pairs and solve
    chi_a chi_b N^lin = N_ab chi_(a+b) over Z/2."""
    datum = consts.datum
    sub = frozenset(sub)
    kind = _classify(datum, sub)
    simple = _simple_system(datum, sub)
    # order the simple roots into a chain (A1xA1: the two are orthogonal)
    if kind == "A1xA1":
        chain_pairs = {simple[0]: (1, 2), simple[1]: (3, 4)}
    else:
        ends = [s for s in simple if sum(datum.inner(s, t) == -1 for t in simple) <= 1]
        chain = [min(ends)]
        while len(chain) < len(simple):
            nxt = [t for t in simple if t not in chain and datum.inner(chain[-1], t) == -1]
            chain.append(nxt[0])
        chain_pairs = {s: (k + 1, k + 2) for k, s in enumerate(chain)}
    labels = {}
    simple_idx = list(chain_pairs)
    for t in sub:
        coeffs = _coeffs_in(datum, t, simple_idx)
        nz = [k for k, c in enumerate(coeffs) if c]
        lo = min(chain_pairs[simple_idx[k]][0] for k in nz)
        hi = max(chain_pairs[simple_idx[k]][1] for k in nz)
        labels[t] = (lo, hi) if coeffs[nz[0]] > 0 else (hi, lo)
    roots = sorted(sub)
    pos = {t: k for k, t in enumerate(roots)}
    eqs, rhs = [], []
    for s in roots:
        for t in roots:
            u = datum.add(s, t)
            if u is None:
                continue
            row = [0] * len(roots)
            for v in (s, t, u):
                row[pos[v]] ^= 1
            sign = consts.N(s, t) * linear_constant(labels[s], labels[t])
            eqs.append(row)
            rhs.append(0 if sign == 1 else 1)
    if eqs:
        gens = [[eqs[e][v] for e in range(len(eqs))] for v in range(len(roots))]
        sol = solve_mod(gens, rhs, 2)
        if sol is None:
            raise ConstantsError("sign twist system is unsolvable")
    else:
        sol = [0] * len(roots)
    chi = {t: (-1 if sol[pos[t]] else 1) for t in roots}
    return SubsystemEmbedding(sub, kind, labels, chi)


def _coeffs_in(datum: RootDatum, t: int, simple: Sequence[int]) -> list[int]:
    m = np.array([datum.roots[s] for s in simple], dtype=np.float64).T
    sol, *_ = np.linalg.lstsq(m, np.array(datum.roots[t], dtype=np.float64), rcond=None)
    out = [int(round(v)) for v in sol]
    if not np.allclose(m @ np.array(out), datum.roots[t]):
        raise RootError("root not in the span of the simple system")
    return out


# ------------------------------------------------------------------ context

class ChevalleyContext:
    """Root datum, constants, scalar crossed module and the linear model."""

    def __init__(self, datum: RootDatum, cm: CrossedModule,
                 orientation: Sequence[tuple[int, int]] | None = None):
        if cm.ring.dim != 1 and not _commutative(cm):
            raise ConstantsError("scalar rings must be commutative")
        self.datum = datum
        self.constants = build_constants(datum, orientation)
        self.scalar = ScalarArith(cm)
        self.crossed = cm
        mcm = matrix_crossed_module(4, cm)
        self.model = LinearContext(mcm, diagonal_family(mcm.ring))
        self._emb_cache: dict = {}
        self.modulus = self.scalar.modulus

    def __repr__(self) -> str:
        return f"ChevalleyContext({self.datum.name}, {self.crossed.name})"

    @cached_property
    def family_G(self) -> list[frozenset[int]]:
        return subsystem_family_G(self.datum)

    @cached_property
    def fingerprint(self) -> str:
        return f"{self.datum.name}:{self.constants.orientation}:{self.model.fingerprint}"

    def N(self, s: int, t: int) -> int:
        return self.constants.N(s, t)

    def support_subsystem(self, roots) -> frozenset[int]:
        roots = set(roots)
        if not roots:
            return frozenset()
        return self.datum.subsystem_in_span(roots)

    def embedding(self, sub: frozenset[int]) -> SubsystemEmbedding:
        hit = self._emb_cache.get(sub)
        if hit is None:
            hit = embed_subsystem(self.constants, sub)
            self._emb_cache[sub] = hit
        return hit

    def transport_symbol(self, emb: SubsystemEmbedding, sym: ZC) -> Z:
        """z_alpha(a, p) -> z_ij(chi_alpha a E_ij, chi_-alpha p E_ji)."""
        i, j = emb.labels[sym.root]
        S = self.scalar.S
        M = self.model
        a = S.a_part(sym.a)
        p = S.r_part(sym.p)
        ca = emb.chi[sym.root]
        cp = emb.chi[self.datum.neg(sym.root)]
        alg = M.crossed.algebra
        a_lin = M.S.embed_a(matrix_unit(alg, i, j, (ca * a) % self.modulus))
        p_lin = M.S.embed_r(matrix_unit(M.crossed.ring, j, i, (cp * p) % self.modulus))
        return Z(i, j, tuple(int(v) for v in a_lin), tuple(int(v) for v in p_lin))

    def transport(self, emb: SubsystemEmbedding, w: Word) -> Word:
        return w.map(lambda s: word(self.transport_symbol(emb, s)))

    def rank_one_image(self, emb: SubsystemEmbedding, root: int, a: Coords, p: Coords) -> tuple:
        """Sign-normalized 2x2 block of the transported z_root(a, p)."""
        M = self.model
        z = self.transport_symbol(emb, ZC(root, tuple(a), tuple(p)))
        u = eval_value(M, word(z))
        i, j = emb.labels[root]
        S = M.S
        ka = S.a_dim
        n = 4
        kb = ka // (n * n)

        def entry(r, c):
            return tuple(int(v) for v in u[((r - 1) * n + (c - 1)) * kb:((r - 1) * n + c) * kb])

        ca, cp = emb.chi[root], emb.chi[self.datum.neg(root)]
        scale = lambda c, v: tuple((c * t) % self.modulus for t in v)
        return (entry(i, i), scale(ca, entry(i, j)), scale(cp, entry(j, i)), entry(j, j))


def _commutative(cm: CrossedModule) -> bool:
    t = cm.ring.table
    return bool(np.array_equal(t, t.transpose(1, 0, 2)))


# ------------------------------------------------------------------ catalog

def zc(root: int, a: Coords, p: Coords) -> ZC:
    return ZC(root, tuple(a), tuple(p))


def xc(ch: ChevalleyContext, root: int, a: Coords) -> ZC:
    return ZC(root, tuple(a), ch.scalar.zero)


def c_z2(ch: ChevalleyContext, al: int, be: int, a, b, p) -> Word:
    """z_{a[b]}(a, b; p) = z_a(a, p) x_b(b) x_(b-a)(N_(-a,b) bp), for a - b a root."""
    d, s = ch.datum, ch.scalar
    bma = d.sub(be, al)
    if bma is None:
        raise PreconditionError("Z2 needs alpha - beta to be a root")
    n = ch.N(d.neg(al), be)
    return word(zc(al, a, p), xc(ch, be, b), xc(ch, bma, s.scale(n, s.mul(b, p))))


def c_z4(ch: ChevalleyContext, al: int, be: int, a, b, p, q) -> Word:
    """z_{a+b}(a, b; p, q) = z_{a[a-b]}(a, N_(-b,a) aq; p) z_{b[b-a]}(b, N_(-a,b) bp; q)."""
    d, s = ch.datum, ch.scalar
    amb, bma = d.sub(al, be), d.sub(be, al)
    if amb is None:
        raise PreconditionError("Z4 needs alpha - beta to be a root")
    n1 = ch.N(d.neg(be), al)
    n2 = ch.N(d.neg(al), be)
    return (c_z2(ch, al, amb, a, s.scale(n1, s.mul(a, q)), p)
            * c_z2(ch, be, bma, b, s.scale(n2, s.mul(b, p)), q))


@dataclass(frozen=True)
class ChevalleySpec:
    rid: str
    roots: str          # 'one', 'diff', 'sum', 'orth'
    params: tuple[tuple[str, str], ...]   # (name, 'a'|'K')
    build: object


def _c_add1(ch, al, be, P):
    s = ch.scalar
    return word(zc(al, s.add(P["a"], P["a2"]), P["p"])), word(zc(al, P["a"], P["p"]), zc(al, P["a2"], P["p"]))


def _c_add2(ch, al, be, P):
    s = ch.scalar
    lhs = c_z2(ch, al, be, s.add(P["a"], P["a2"]), s.add(P["b"], P["b2"]), P["p"])
    return lhs, c_z2(ch, al, be, P["a"], P["b"], P["p"]) * c_z2(ch, al, be, P["a2"], P["b2"], P["p"])


def _c_add3(ch, al, be, P):
    s = ch.scalar
    lhs = c_z4(ch, al, be, s.add(P["a"], P["a2"]), s.add(P["b"], P["b2"]), P["p"], P["q"])
    rhs = c_z4(ch, al, be, P["a"], P["b"], P["p"], P["q"]) * c_z4(ch, al, be, P["a2"], P["b2"], P["p"], P["q"])
    return lhs, rhs


def _c_conj1(ch, al, be, P):
    s, d = ch.scalar, ch.datum
    ab = d.add(al, be)
    e = ch.N(al, be)
    a, b, c, r = P["a"], P["b"], P["c"], P["r"]
    m = s.mul
    lhs = conjugate(word(zc(al, c, r)), word(xc(ch, ab, a), xc(ch, be, b)))
    rhs = word(xc(ch, ab, s.add(a, s.scale(e, m(b, c)), s.neg(m(a, c, r)))),
               xc(ch, be, s.add(b, m(b, c, r), s.scale(-e, m(a, c, r, r)))))
    return lhs, rhs


def _c_mult(ch, al, be, P):
    s, d = ch.scalar, ch.datum
    e = ch.N(al, be)
    a, b, p = P["a"], P["b"], P["p"]
    g = word(xc(ch, d.neg(be), s.scale(e, s.mul(a, p))), xc(ch, al, a))
    h = word(xc(ch, be, b), xc(ch, d.neg(al), s.scale(-e, s.mul(b, p))))
    return commutator(g, h), word(zc(d.add(al, be), s.mul(a, b), p))


def _c_dis(ch, al, be, P):
    return commutator(word(zc(al, P["a"], P["p"])), word(zc(be, P["b"], P["q"]))), EMPTY


def _c_sym(ch, al, be, P):
    a, b, p, q = P["a"], P["b"], P["p"], P["q"]
    return c_z4(ch, al, be, a, b, p, q), c_z4(ch, be, al, b, a, q, p)


def _conj2_common(ch, al, be, P):
    s = ch.scalar
    e = ch.N(al, be)
    m = s.mul
    a, b, c, p, q, r = P["a"], P["b"], P["c"], P["p"], P["q"], P["r"]
    a1 = s.add(a, s.scale(e, m(b, c)), s.neg(m(a, c, r)))
    b1 = s.add(b, m(b, c, r), s.scale(-e, m(a, c, r, r)))
    u = s.add(m(c, p, r), s.scale(e, m(c, q, r, r)))          # cpr + e c q r^2
    v = s.add(s.scale(e, m(c, p)), m(c, q, r))                # e c p + c q r
    return e, a1, b1, u, v


def _c_conj2(ch, al, be, P):
    d = ch.datum
    ab = d.add(al, be)
    e, a1, b1, u, v = _conj2_common(ch, al, be, P)
    lhs = conjugate(word(zc(al, P["c"], P["r"])), c_z4(ch, ab, be, P["a"], P["b"], P["p"], P["q"]))
    g = word(xc(ch, d.neg(ab), u), xc(ch, d.neg(be), ch.scalar.neg(v)))
    return lhs, conjugate(g, c_z4(ch, ab, be, a1, b1, P["p"], P["q"]))


def _c_conj2p(ch, al, be, P):
    s, d = ch.scalar, ch.datum
    ab = d.add(al, be)
    e, a1, b1, u, v = _conj2_common(ch, al, be, P)
    lhs = conjugate(word(zc(al, P["c"], P["r"])), c_z4(ch, ab, be, P["a"], P["b"], P["p"], P["q"]))
    p1 = s.add(P["p"], s.d(u))
    q1 = s.sub(P["q"], s.d(v))
    return lhs, c_z4(ch, ab, be, a1, b1, p1, q1)


def _c_hw(ch, al, be, P):
    s, d = ch.scalar, ch.datum
    ab = d.add(al, be)
    e = ch.N(al, be)
    a, p, q, r = P["a"], P["p"], P["q"], P["r"]
    lhs = c_z4(ch, ab, be, a, s.scale(e, s.mul(a, q)), s.sub(r, s.scale(e, s.mul(p, q))), p)
    rhs = c_z4(ch, al, ab, s.scale(-e, s.mul(a, p)), a, q, r)
    return lhs, rhs


def _c_rel4(ch, al, be, P):
    s, d = ch.scalar, ch.datum
    a, p, b = P["a"], P["p"], P["b"]
    lhs = word(zc(al, a, s.add(p, s.d(b))))
    rhs = conjugate(word(xc(ch, d.neg(al), b)), word(zc(al, a, p)))
    return lhs, rhs


_a, _K = "a", "K"
CHEVALLEY_CATALOG: dict[str, ChevalleySpec] = {s.rid: s for s in [
    ChevalleySpec("Add1", "one", (("a", _a), ("a2", _a), ("p", _K)), _c_add1),
    ChevalleySpec("Add2", "diff", (("a", _a), ("a2", _a), ("b", _a), ("b2", _a), ("p", _K)), _c_add2),
    ChevalleySpec("Add3", "diff", (("a", _a), ("a2", _a), ("b", _a), ("b2", _a), ("p", _K), ("q", _K)), _c_add3),
    ChevalleySpec("Conj1", "sum", (("c", _a), ("r", _K), ("a", _a), ("b", _a)), _c_conj1),
    ChevalleySpec("Mult", "sum", (("a", _a), ("b", _a), ("p", _K)), _c_mult),
    ChevalleySpec("Dis", "orth", (("a", _a), ("p", _K), ("b", _a), ("q", _K)), _c_dis),
    ChevalleySpec("Sym", "diff", (("a", _a), ("b", _a), ("p", _K), ("q", _K)), _c_sym),
    ChevalleySpec("Conj2", "sum", (("c", _a), ("r", _K), ("a", _a), ("b", _a), ("p", _K), ("q", _K)), _c_conj2),
    ChevalleySpec("Conj2'", "sum", (("c", _a), ("r", _K), ("a", _a), ("b", _a), ("p", _K), ("q", _K)), _c_conj2p),
    ChevalleySpec("HW", "sum", (("a", _a), ("p", _K), ("q", _K), ("r", _K)), _c_hw),
    ChevalleySpec("Rel4", "one", (("a", _a), ("p", _K), ("b", _a)), _c_rel4),
]}
CHEVALLEY_IDS = tuple(CHEVALLEY_CATALOG)


def _root_condition(datum: RootDatum, kind: str, al: int, be: int | None) -> str | None:
    if kind == "one":
        return None
    if be is None:
        return "second root required"
    if kind == "sum":
        return None if datum.add(al, be) is not None else "alpha + beta must be a root"
    if kind == "diff":
        return None if datum.sub(al, be) is not None else "alpha - beta must be a root"
    if kind == "orth":
        if al == be or datum.inner(al, be) != 0:
            return "alpha and beta must be orthogonal"
        return None
    raise ValueError(kind)


def chevalley_instance(ch: ChevalleyContext, rid: str, roots: Sequence[int], params: dict,
                       check: bool = True) -> RelationInstance:
    spec = CHEVALLEY_CATALOG.get(rid)
    if spec is None:
        raise PreconditionError(f"unknown relation id {rid!r}")
    al = roots[0]
    be = roots[1] if len(roots) > 1 else None
    msg = _root_condition(ch.datum, spec.roots, al, be)
    if msg:
        raise PreconditionError(f"{rid}: {msg}")
    P = {}
    for name, kind in spec.params:
        if name not in params:
            raise PreconditionError(f"{rid}: missing parameter {name!r}")
        val = tuple(int(v) % ch.modulus for v in params[name])
        if check:
            ok = ch.scalar.in_a(val) if kind == _a else ch.scalar.in_k(val)
            if not ok:
                raise PreconditionError(f"{rid}.{name}: value not in {'a' if kind == _a else 'K'}")
        P[name] = val
    lhs, rhs = spec.build(ch, al, be, P)
    idx = (al,) if spec.roots == "one" else (al, be)
    return RelationInstance(rid, idx, P, lhs.reduced(), rhs.reduced())


def _sample_roots(ch: ChevalleyContext, kind: str, rng: np.random.Generator) -> tuple[int, ...]:
    d = ch.datum
    n = len(d)
    al = int(rng.integers(0, n))
    if kind == "one":
        return (al,)
    cands = [t for t in range(n) if _root_condition(d, kind, al, t) is None]
    while not cands:
        al = int(rng.integers(0, n))
        cands = [t for t in range(n) if _root_condition(d, kind, al, t) is None]
    return (al, cands[int(rng.integers(0, len(cands)))])


def random_chevalley_instances(ch: ChevalleyContext, relation_ids: Sequence[str], count: int,
                               seed: int) -> list[RelationInstance]:
    out = []
    for rid in relation_ids:
        spec = CHEVALLEY_CATALOG[rid]
        rng = instance_rng(seed, "chevalley:" + rid)
        for _ in range(count):
            roots = _sample_roots(ch, spec.roots, rng)
            P = {name: (ch.scalar.sample_a(rng) if kind == _a else ch.scalar.sample_k(rng))
                 for name, kind in spec.params}
            out.append(chevalley_instance(ch, rid, roots, P, check=False))
    return out


def instance_support(inst: RelationInstance) -> set[int]:
    return {s.root for s in inst.lhs.symbols() + inst.rhs.symbols()} | set(inst.indices)


def verify_chevalley_instance(ch: ChevalleyContext, inst: RelationInstance) -> Verdict:
    """Transport through the subsystem spanned by the support and evaluate."""
    support = instance_support(inst)
    sub = ch.support_subsystem(support)
    try:
        emb = ch.embedding(sub)
    except (RootError, ConstantsError) as exc:
        return Verdict(inst.relation_id, False, inst, extra={"error": str(exc)})
    extra = {"support": emb.kind}
    if ch.datum.rank >= 3 and not any(sub <= g for g in ch.family_G if len(g) == 12):
        return Verdict(inst.relation_id, False, inst, extra={"error": "support not inside an A3 subsystem"})
    M = ch.model
    lhs = eval_value(M, ch.transport(emb, inst.lhs))
    rhs = eval_value(M, ch.transport(emb, inst.rhs))
    if np.array_equal(lhs, rhs):
        return Verdict(inst.relation_id, True, inst, extra=extra)
    return Verdict(inst.relation_id, False, inst, [int(v) for v in lhs], [int(v) for v in rhs], extra)


def shadow_images(ch: ChevalleyContext, root: int, a: Coords, p: Coords) -> dict:
    """Sign-normalized images of z_root(a, p) under every A3 subsystem holding root."""
    out = {}
    for sub in ch.family_G:
        if len(sub) == 12 and root in sub:
            out[sub] = ch.rank_one_image(ch.embedding(sub), root, a, p)
    return out


def shadow_agrees(ch: ChevalleyContext, root: int, a: Coords, p: Coords) -> bool:
    images = set(shadow_images(ch, root, a, p).values())
    return len(images) <= 1
