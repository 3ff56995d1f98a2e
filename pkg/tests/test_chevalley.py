from __future__ import annotations

import copy
import time

import numpy as np
import pytest
from conftest import chev_context

from relsteinberg.chevalley import (
    CHEVALLEY_IDS,
    ConstantsError,
    build_constants,
    chevalley_instance,
    default_orientation,
    embed_subsystem,
    linear_constant,
    random_chevalley_instances,
    reversed_orientation,
    shadow_agrees,
    shadow_images,
    verify_chevalley_instance,
    verify_n_rel,
)
from relsteinberg.relations import PreconditionError
from relsteinberg.roots import RootDatum
from relsteinberg.words import EMPTY


@pytest.mark.parametrize("name", ["A2", "A3", "D4", "D5", "E6"])
@pytest.mark.parametrize("flip", [False, True])
def test_n_rel_holds_for_both_orientations(name, flip):
    d = RootDatum.from_name(name)
    orient = reversed_orientation(d) if flip else default_orientation(d)
    res = verify_n_rel(build_constants(d, orient))
    assert res["pass"], res["failures"][:3]


def test_n_rel_pair_counts():
    # ordered pairs (s, t) with s + t a root
    assert verify_n_rel(build_constants(RootDatum.from_name("A1xA1")))["pairs"] == 0
    assert verify_n_rel(build_constants(RootDatum.from_name("A2")))["pairs"] == 12
    assert verify_n_rel(build_constants(RootDatum.from_name("A3")))["pairs"] == 48


def test_constants_are_signs_on_root_sums():
    c = build_constants(RootDatum.from_name("D4"))
    assert set(c.table.values()) <= {-1, 1}
    with pytest.raises(ConstantsError):
        c.N(0, 0)


def test_mutation_is_detected():
    d = RootDatum.from_name("A3")
    c = build_constants(d)
    s, t = next(iter(c.table))
    bad = c.mutated(s, t)
    res = verify_n_rel(bad)
    assert not res["pass"] and res["failures"]
    with pytest.raises(ConstantsError):
        embed_subsystem(bad, d.subsystem_in_span([s, t]))


def test_mutated_constants_break_relations():
    ch = copy.copy(chev_context("A2"))
    ch.constants = ch.constants.mutated(0, 1)
    ch._emb_cache = {}
    insts = random_chevalley_instances(ch, ["Mult"], 10, seed=1)
    assert not any(verify_chevalley_instance(ch, i).passed for i in insts)


def test_bad_orientation_rejected():
    d = RootDatum.from_name("A3")
    with pytest.raises(ConstantsError):
        build_constants(d, [(1, 2)])


def test_linear_constant_signs():
    assert linear_constant((1, 2), (2, 3)) == 1
    assert linear_constant((2, 3), (1, 2)) == -1
    with pytest.raises(ConstantsError):
        linear_constant((1, 2), (3, 4))


def test_a2_embedding_labels():
    d = RootDatum.from_name("A2")
    emb = embed_subsystem(build_constants(d), range(len(d)))
    assert emb.kind == "A2"
    assert {emb.labels[t] for t in range(len(d))} == {(1, 2), (2, 3), (1, 3), (2, 1), (3, 2), (3, 1)}
    for t in range(len(d)):
        assert emb.labels[d.neg(t)] == emb.labels[t][::-1]
        assert emb.chi[t] * emb.chi[d.neg(t)] == 1


def test_embedding_solves_sign_twists_on_e6_subsystem():
    ch = chev_context("E6")
    sub = next(g for g in ch.family_G if len(g) == 12)
    emb = ch.embedding(sub)
    d = ch.datum
    assert emb.kind == "A3"
    for s in sub:
        for t in sub:
            u = d.add(s, t)
            if u is not None:
                lhs = emb.chi[s] * emb.chi[t] * linear_constant(emb.labels[s], emb.labels[t])
                assert lhs == ch.N(s, t) * emb.chi[u]


@pytest.mark.parametrize("name", ["A3", "D4"])
@pytest.mark.parametrize("rid", CHEVALLEY_IDS)
def test_chevalley_relations_hold(name, rid):
    ch = chev_context(name)
    for inst in random_chevalley_instances(ch, [rid], 15, seed=2):
        v = verify_chevalley_instance(ch, inst)
        assert v.passed, v.to_json(2)


def test_relations_hold_for_reversed_orientation():
    d = RootDatum.from_name("D4")
    ch = chev_context("D4", orientation=reversed_orientation(d))
    for inst in random_chevalley_instances(ch, list(CHEVALLEY_IDS), 5, seed=4):
        assert verify_chevalley_instance(ch, inst).passed


def test_support_audit_reports_subsystem_kind():
    ch = chev_context("E6")
    kinds = set()
    for inst in random_chevalley_instances(ch, list(CHEVALLEY_IDS), 5, seed=9):
        v = verify_chevalley_instance(ch, inst)
        assert v.passed
        kinds.add(v.extra["support"])
    assert kinds <= {"A1", "A1xA1", "A2", "A3"}


def _s(ch, a=None, k=None):
    S = ch.scalar.S
    if a is not None:
        return tuple(int(v) for v in S.embed_a([a]))
    return tuple(int(v) for v in S.embed_r([k]))


def test_dis_with_zero_payload_is_empty():
    ch = chev_context("D4")
    d = ch.datum
    al = 0
    be = next(t for t in range(len(d)) if t != al and d.inner(al, t) == 0)
    z = ch.scalar.zero
    inst = chevalley_instance(ch, "Dis", (al, be), {"a": z, "p": _s(ch, k=1), "b": _s(ch, a=2), "q": _s(ch, k=3)})
    assert inst.lhs == EMPTY and inst.rhs == EMPTY


def test_hw_zero_and_rel4_zero_b():
    ch = chev_context("A3")
    d = ch.datum
    al, be = next((s, t) for s in range(len(d)) for t in range(len(d)) if d.add(s, t) is not None)
    z = ch.scalar.zero
    hw = chevalley_instance(ch, "HW", (al, be), {"a": z, "p": _s(ch, k=1), "q": _s(ch, k=5), "r": _s(ch, k=2)})
    assert hw.lhs == EMPTY and hw.rhs == EMPTY
    r4 = chevalley_instance(ch, "Rel4", (al,), {"a": _s(ch, a=2), "p": _s(ch, k=3), "b": z})
    assert r4.lhs == r4.rhs


def test_instance_preconditions():
    ch = chev_context("A3")
    z = ch.scalar.zero
    with pytest.raises(PreconditionError):
        chevalley_instance(ch, "Dis", (0, 0), {"a": z, "p": z, "b": z, "q": z})
    with pytest.raises(PreconditionError):
        chevalley_instance(ch, "Add1", (0,), {"a": _s(ch, k=1), "a2": z, "p": z})
    with pytest.raises(PreconditionError):
        chevalley_instance(ch, "Nope", (0,), {})


def test_instances_are_reproducible():
    ch = chev_context("D4")
    a = random_chevalley_instances(ch, ["Conj2", "HW"], 4, seed=3)
    b = random_chevalley_instances(ch, ["HW"], 4, seed=3)
    assert [i.to_json() for i in a[4:]] == [i.to_json() for i in b]


@pytest.mark.parametrize("name,count", [("D4", 6), ("E6", 45)])
def test_rank_one_shadow_agrees_across_a3_subsystems(name, count, rng):
    ch = chev_context(name)
    root = 0
    a, p = ch.scalar.sample_a(rng), ch.scalar.sample_k(rng)
    assert len(shadow_images(ch, root, a, p)) == count
    assert shadow_agrees(ch, root, a, p)


def test_n_rel_is_fast_on_e6():
    start = time.perf_counter()
    for name in ("A3", "D4", "D5", "E6"):
        d = RootDatum.from_name(name)
        for orient in (default_orientation(d), reversed_orientation(d)):
            assert verify_n_rel(build_constants(d, orient))["pass"]
    assert time.perf_counter() - start < 10.0


def test_scalar_context_rejects_noncommutative_rings():
    from relsteinberg.chevalley import ChevalleyContext
    from relsteinberg.rings import cyclic, ideal_inclusion, matrix_ring
    ring = matrix_ring(2, cyclic(2))
    with pytest.raises(ConstantsError):
        ChevalleyContext(RootDatum.from_name("A2"), ideal_inclusion(ring, [ring.one]))


def test_scalar_arith_matches_modular_arithmetic():
    ch = chev_context("A2")
    s = ch.scalar
    x, y = _s(ch, a=2), _s(ch, k=3)
    assert np.array_equal(s.mul(x, y), _s(ch, a=6))
    assert s.in_a(x) and not s.in_a(y) and s.in_k(y)
