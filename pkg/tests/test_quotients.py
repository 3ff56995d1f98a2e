from __future__ import annotations

import itertools

import numpy as np
import pytest
from conftest import chev_context, mat_context, sa, sr

from relsteinberg.quotients import AbelianPresentation, PresentationTooLarge, ft_presentation, verify_quotient_map
from relsteinberg.words import X, Z, word


# ------------------------------------------------------------------ oracle

def _gf2_rank(rows: np.ndarray) -> int:
    m = rows.copy() % 2
    rank = 0
    for col in range(m.shape[1]):
        piv = next((r for r in range(rank, m.shape[0]) if m[r, col]), None)
        if piv is None:
            continue
        m[[rank, piv]] = m[[piv, rank]]
        for r in range(m.shape[0]):
            if r != rank and m[r, col]:
                m[r] ^= m[rank]
        rank += 1
    return rank


def _ft_equations(name: str, m: int, ideal: int):
    """Linear equations (mod m) on f(root, a, p) over every element, with
    a in ideal*Z/m and p in Z/m, from additivity and the relations FT3-FT5."""
    d = chev_context(name, m, ideal).datum
    A = sorted({(ideal * t) % m for t in range(m)})
    K = list(range(m))
    var = {key: n for n, key in enumerate(itertools.product(range(len(d)), A, K))}
    eqs = []

    def row(*terms):
        r = np.zeros(len(var), dtype=np.int64)
        for c, key in terms:
            r[var[key]] += c
        eqs.append(r % m)

    for t in range(len(d)):
        for a, b, p in itertools.product(A, A, K):
            row((1, (t, (a + b) % m, p)), (-1, (t, a, p)), (-1, (t, b, p)))
            row((1, (t, (a * b) % m, p)))                                   # FT3
            row((1, (t, a, b)))                                             # FT4, d is inclusion
        for a, p, q in itertools.product(A, K, K):
            row((1, (t, a, (p + q) % m)), (-1, (t, a, p)), (-1, (t, a, q)))
    for al, be in itertools.product(range(len(d)), repeat=2):
        ab = d.add(al, be)
        if ab is None:
            continue
        for a, p, q in itertools.product(A, K, K):                          # FT5
            row((1, (ab, a, (p * q) % m)), (-1, (al, (a * p) % m, q)), (-1, (be, (q * a) % m, p)))
    return np.array(eqs), len(var)


def hom_count_z2(name: str, m: int, ideal: int) -> int:
    eqs, n = _ft_equations(name, m, ideal)
    return 2 ** (n - _gf2_rank(eqs % 2))


def hom_count_z4(name: str, m: int, ideal: int) -> int:
    """|Hom(G, Z/4)|: lift each solution mod 2 and test solvability of the carry."""
    eqs, n = _ft_equations(name, m, ideal)
    e2 = eqs % 2
    rank = _gf2_rank(e2)
    basis = _gf2_null_basis(e2)
    liftable = 0
    for coeffs in itertools.product((0, 1), repeat=len(basis)):
        x0 = sum((c * b for c, b in zip(coeffs, basis)), np.zeros(n, dtype=np.int64)) % 2
        carry = (eqs @ x0 % 4) // 2
        if _gf2_rank(np.column_stack([e2, carry])) == rank:
            liftable += 1
    return liftable * 2 ** (n - rank)


def _gf2_null_basis(rows: np.ndarray) -> list[np.ndarray]:
    m = rows.copy() % 2
    n = m.shape[1]
    pivots, r = [], 0
    for col in range(n):
        piv = next((k for k in range(r, m.shape[0]) if m[k, col]), None)
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        for k in range(m.shape[0]):
            if k != r and m[k, col]:
                m[k] ^= m[r]
        pivots.append(col)
        r += 1
    basis = []
    for free in (c for c in range(n) if c not in pivots):
        v = np.zeros(n, dtype=np.int64)
        v[free] = 1
        for k, col in enumerate(pivots):
            v[col] = m[k, free]
        basis.append(v)
    return basis


def _hom_count(factors, k: int) -> int:
    out = 1
    for f in factors:
        out *= int(np.gcd(f, k))
    return out


# ------------------------------------------------------------------ tests

def test_oracle_counts_for_a3_over_z4():
    # [DERIVED] brute-force counts over all elements, frozen
    assert hom_count_z2("A3", 4, 2) == 8
    assert hom_count_z4("A3", 4, 2) == 8


def test_chevalley_quotient_a3_matches_oracle():
    pres = ft_presentation(chev_context("A3", 4, 2))
    res = pres.snf()
    assert res.certified and res.free_rank == 0
    assert res.invariant_factors == (2, 2, 2)
    assert _hom_count(res.invariant_factors, 2) == hom_count_z2("A3", 4, 2)
    assert _hom_count(res.invariant_factors, 4) == hom_count_z4("A3", 4, 2)


def test_chevalley_quotient_d4():
    res = ft_presentation(chev_context("D4")).snf()
    assert res.certified and res.invariant_factors == (2, 2, 2, 2) and res.free_rank == 0


def test_linear_quotient_mat4():
    res = ft_presentation(mat_context(4, 8, 2)).snf()
    assert res.certified and res.invariant_factors == (2, 2, 2) and res.free_rank == 0


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_quotient_is_independent_of_generator_order(seed):
    ch = chev_context("A3", 4, 2)
    base = ft_presentation(ch)
    shuffled = ft_presentation(ch, shuffle_seed=seed)
    assert shuffled.perm is not None
    assert shuffled.snf().invariant_factors == base.snf().invariant_factors
    a = ch.scalar.S.embed_a([2])
    p = ch.scalar.S.embed_r([1])
    for t in range(len(ch.datum)):
        v0, v1 = base.vector(t, a, p), shuffled.vector(t, a, p)
        assert base.is_zero(v0) == shuffled.is_zero(v1)
        two = [2 * x for x in v1]
        assert shuffled.is_zero(two)


def test_zero_ideal_gives_trivial_quotient():
    pres = ft_presentation(mat_context(3, 4, 0))
    assert pres.ngens == 0 and pres.snf().is_trivial


def test_surjective_structure_map_gives_trivial_quotient():
    res = ft_presentation(mat_context(3, 4, 1)).snf()
    assert res.certified and res.is_trivial


def test_defining_relations_vanish():
    for ctx in (mat_context(3, 4, 2), mat_context(4, 8, 2)):
        v = verify_quotient_map(ctx, None, 30, seed=1)
        assert v.passed, v.failures[:1]
    v = verify_quotient_map(chev_context("A3", 4, 2), None, 30, seed=1)
    assert v.passed


def test_deleting_ft5_rows_breaks_hw():
    ctx = mat_context(4, 8, 2)
    pres = ft_presentation(ctx)
    keep = [k for k, t in enumerate(pres.row_tags) if t != "FT5"]
    weak = AbelianPresentation(pres.scope, pres.fingerprint, pres.slots, pres.generators,
                               [pres.rows[k] for k in keep], [pres.row_tags[k] for k in keep])
    v = verify_quotient_map(ctx, ["HW"], 40, seed=0, presentation=weak)
    assert not v.passed and v.counts["HW"]["fail"] > 0
    assert any(c for f in v.failures for c in f["class"])


def test_without_row_drops_exactly_one_row():
    pres = ft_presentation(mat_context(3, 4, 2))
    assert pres.without_row(0).nrels == pres.nrels - 1


def test_ft5_is_independent_of_the_middle_index():
    ctx = mat_context(4, 8, 2)
    pres = ft_presentation(ctx)
    i, j = 1, 2
    a = sa(ctx, i, j, 2)
    pq = ctx.mul(sr(ctx, j, 3, 1), sr(ctx, 3, i, 1))
    lhs = pres.vector((i, j), a, pq)
    for k in (3, 4):
        p, q = sr(ctx, j, k, 1), sr(ctx, k, i, 1)
        assert ctx.mul(p, q) == pq
        rhs = [x + y for x, y in zip(pres.vector((i, k), ctx.mul(a, p), q), pres.vector((k, j), ctx.mul(q, a), p))]
        assert pres.is_zero([x - y for x, y in zip(lhs, rhs)])


def test_generators_are_nonzero_of_order_two():
    ctx = mat_context(4, 8, 2)
    pres = ft_presentation(ctx)
    v = pres.vector((1, 2), sa(ctx, 1, 2, 2), sr(ctx, 2, 1, 1))
    assert not pres.is_zero(v)
    assert pres.is_zero([2 * x for x in v])


def test_absolute_generators_have_no_image():
    ctx = mat_context(3, 4, 2)
    pres = ft_presentation(ctx)
    assert pres.word_image(word(Z(1, 2, sa(ctx, 1, 2, 2), ctx.zero))) == [0] * pres.ngens
    with pytest.raises(ValueError):
        pres.word_image(word(X(1, 2, sr(ctx, 1, 2, 1))))
    with pytest.raises(ValueError):
        verify_quotient_map(ctx, ["Rel1"], 1)


def test_generator_cap():
    with pytest.raises(PresentationTooLarge):
        ft_presentation(mat_context(4, 8, 2), cap=5)


def test_rank_two_chevalley_scope_rejected():
    with pytest.raises(ValueError):
        ft_presentation(chev_context("A2"))
