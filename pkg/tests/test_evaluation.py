from __future__ import annotations

import numpy as np
import pytest
from conftest import as_matrix, sa, sr

from relsteinberg.evaluation import (
    diag_act,
    eval_symbol,
    eval_value,
    eval_word,
    product_word,
    unipotent_factorization,
    verify_instance,
)
from relsteinberg.relations import GROUP_IDS, RelationInstance, random_instances, random_word, relation_instance
from relsteinberg.rings import RingError
from relsteinberg.roots import linear_closure
from relsteinberg.words import X, Z, Word, word


def _as_r(ctx, u):
    """Image of an element of S in R under d + id, as a matrix."""
    ring = ctx.crossed.ring
    img = (ctx.crossed.d(ctx.S.a_part(u)) + ctx.S.r_part(u)) % ring.modulus
    return as_matrix(ring, img)


def test_z12_corner_value(ctx3):
    # [DERIVED] (1 + E21)(1 + 2 E12)(1 - E21) over Z/4 by direct matrix products
    a, p = sa(ctx3, 1, 2, 2), sr(ctx3, 2, 1, 1)
    img = _as_r(ctx3, eval_symbol(ctx3, Z(1, 2, a, p)).value)
    eye = np.eye(3, dtype=np.int64)
    A = np.zeros((3, 3), dtype=np.int64)
    A[0, 1] = 2
    P = np.zeros((3, 3), dtype=np.int64)
    P[1, 0] = 1
    oracle = (eye + P) @ (eye + A) @ (eye - P) % 4
    assert np.array_equal(img, oracle)
    assert img[:2, :2].tolist() == [[3, 2], [2, 3]]
    assert img[2].tolist() == [0, 0, 1]


def test_absolute_symbol_is_elementary(ctx3):
    u = eval_symbol(ctx3, X(1, 3, sr(ctx3, 1, 3, 3))).value
    assert _as_r(ctx3, u).tolist() == [[1, 0, 3], [0, 1, 0], [0, 0, 1]]
    assert not any(ctx3.S.a_part(u))


def test_word_inverse_tracks_value(ctx4, rng):
    for _ in range(100):
        w = random_word(ctx4, rng, 5)
        u = eval_word(ctx4, w)
        assert np.array_equal(ctx4.S.mul(u.value, u.inverse), ctx4.one)
        assert np.array_equal(eval_value(ctx4, w * w.inverse()), ctx4.one)


def test_evaluation_is_a_homomorphism(ctx4, rng):
    for _ in range(20):
        v, w = random_word(ctx4, rng, 4), random_word(ctx4, rng, 3)
        lhs = eval_value(ctx4, v * w)
        rhs = ctx4.S.mul(eval_value(ctx4, v), eval_value(ctx4, w))
        assert np.array_equal(lhs, rhs)


def test_st2_commutator_example(ctx3):
    a, b = sa(ctx3, 1, 2, 2), sa(ctx3, 2, 3, 2)
    inst = relation_instance(ctx3, "St2", (1, 2, 3), {"a": a, "b": b})
    assert verify_instance(ctx3, inst).passed


def test_rel4_with_zero_b(ctx3):
    params = {"a": sa(ctx3, 1, 2, 2), "p": sr(ctx3, 2, 1, 1), "b": ctx3.zero}
    inst = relation_instance(ctx3, "Rel4", (1, 2), params)
    assert verify_instance(ctx3, inst).passed


@pytest.mark.parametrize("rid", GROUP_IDS)
def test_every_relation_holds_on_a_few_samples(ctx4, rid):
    for inst in random_instances(ctx4, [rid], 10, seed=3):
        v = verify_instance(ctx4, inst)
        assert v.passed, v.to_json(3)


def test_corrupted_hw_is_detected(ctx3):
    params = {"a": sa(ctx3, 1, 3, 2), "p": sr(ctx3, 3, 2, 1), "q": sr(ctx3, 2, 1, 1), "r": sr(ctx3, 3, 1, 1)}
    inst = relation_instance(ctx3, "HW", (1, 2, 3), params)
    assert verify_instance(ctx3, inst).passed
    s, e = inst.rhs.letters[0]
    bumped = Z(s.i, s.j, ctx3.add(s.a, s.a), s.p)
    bad = RelationInstance("HW", inst.indices, inst.params, inst.lhs,
                           Word(((bumped, e),) + inst.rhs.letters[1:]))
    v = verify_instance(ctx3, bad)
    assert not v.passed
    dump = v.to_json(0)
    assert dump["lhs_eval"] != dump["rhs_eval"] and "instance" in dump


def _diag(ctx, entries):
    ring = ctx.crossed.ring
    m = np.diag(entries).astype(np.int64) % ring.modulus
    return ctx.S.embed_r(m.reshape(-1))


def test_diag_act_is_equivariant(ctx4, rng):
    r = _diag(ctx4, [3, 1, 5, 7])
    r_inv = ctx4.S.inverse(r)
    for _ in range(20):
        w = random_word(ctx4, rng, 3)
        acted = Word((diag_act(ctx4, r, s), e) for s, e in w)
        lhs = eval_value(ctx4, acted)
        rhs = ctx4.S.mul(ctx4.S.mul(r, eval_value(ctx4, w)), r_inv)
        assert np.array_equal(lhs, rhs)


def test_diag_act_is_multiplicative(ctx4, rng):
    r1, r2 = _diag(ctx4, [3, 1, 5, 7]), _diag(ctx4, [5, 5, 3, 1])
    r12 = ctx4.S.mul(r1, r2)
    for _ in range(10):
        s = word(random_word(ctx4, rng, 1).symbols()[0]).symbols()[0]
        assert diag_act(ctx4, r12, s) == diag_act(ctx4, r1, diag_act(ctx4, r2, s))


def test_diag_act_rejects_non_diagonal(ctx4):
    r = ctx4.S.embed_r(np.eye(4, dtype=np.int64).reshape(-1) + np.eye(4, k=1, dtype=np.int64).reshape(-1))
    with pytest.raises(RingError):
        diag_act(ctx4, r, Z(1, 2, sa(ctx4, 1, 2, 2), ctx4.zero))


SIGMA = [(1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4)]


def test_factorization_round_trip(ctx4, rng):
    for _ in range(100):
        payloads = {r: ctx4.sample_a(r[0], r[1], rng) for r in SIGMA}
        order = list(rng.permutation(len(SIGMA)))
        order = [SIGMA[t] for t in order]
        u = eval_value(ctx4, product_word(ctx4, payloads, order))
        found = unipotent_factorization(ctx4, u, order)
        assert found is not None
        assert np.array_equal(eval_value(ctx4, product_word(ctx4, found, order)), u)


def test_factorization_rejects_outside_elements(ctx4):
    u = eval_value(ctx4, word(Z(2, 1, sa(ctx4, 2, 1, 2), ctx4.zero)))
    assert unipotent_factorization(ctx4, u, SIGMA) is None
    with pytest.raises(RingError):
        unipotent_factorization(ctx4, u, [(1, 2), (2, 1)])


def test_factorization_round_trip_over_random_special_closed_sets(ctx4, rng):
    labels = list(ctx4.labels)
    for _ in range(500):
        order = [labels[int(t)] for t in rng.permutation(4)]
        pos = [(order[a], order[b]) for a in range(4) for b in range(a + 1, 4)]
        sigma = sorted(linear_closure([r for r in pos if rng.random() < 0.5] or [pos[0]]))
        sigma = [sigma[int(t)] for t in rng.permutation(len(sigma))]
        payloads = {r: ctx4.sample_a(r[0], r[1], rng) for r in sigma}
        u = eval_value(ctx4, product_word(ctx4, payloads, sigma))
        found = unipotent_factorization(ctx4, u, sigma)
        assert found == {r: tuple(payloads[r]) for r in sigma}
