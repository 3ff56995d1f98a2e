from __future__ import annotations

import numpy as np
import pytest
from conftest import sa, sr
from hypothesis import given, settings
from hypothesis import strategies as st

from relsteinberg.evaluation import eval_value
from relsteinberg.relations import (
    CATALOG,
    GROUP_IDS,
    expand_abbreviation,
    PreconditionError,
    random_instances,
    random_word,
    relation_instance,
)
from relsteinberg.words import EMPTY, X, Z, Word, commutator, conjugate, transpose, word


def _sym(k: int) -> Z:
    a = (0,) * 17 + (k,)
    return Z(1, 2, a, (0,) * 18)


def test_reduced_cancels_adjacent_pairs():
    s, t = _sym(1), _sym(2)
    w = Word([(s, 1), (t, 1), (t, -1), (s, -1), (s, 1)])
    assert w.reduced() == Word([(s, 1)])


def test_reduced_drops_zero_payload():
    zero = Z(1, 2, (0,) * 18, (1,) + (0,) * 17)
    assert word(zero, zero).reduced() == EMPTY
    assert X(1, 2, (0,) * 18).trivial()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(1, 3), st.sampled_from([1, -1])), max_size=12))
def test_reduction_is_idempotent_and_free(letters):
    w = Word([(_sym(k), e) for k, e in letters])
    r = w.reduced()
    assert r.reduced() == r
    assert (w * w.inverse()).reduced() == EMPTY
    assert all(not (r.letters[t][0] == r.letters[t + 1][0] and r.letters[t][1] == -r.letters[t + 1][1])
               for t in range(len(r) - 1))


def test_commutator_and_conjugate_shapes():
    g, h = word(_sym(1)), word(_sym(2))
    assert len(commutator(g, h)) == 4
    assert conjugate(g, h) == Word([(_sym(1), 1), (_sym(2), 1), (_sym(1), -1)])


def test_transpose_is_an_involution(ctx3, rng):
    w = random_word(ctx3, rng, 6)
    assert transpose(transpose(w)) == w
    first = transpose(w).letters[-1][0]
    assert (first.i, first.j) == (w.letters[0][0].j, w.letters[0][0].i)


def test_map_respects_inverse_letters():
    s = _sym(1)
    doubled = Word([(s, -1)]).map(lambda t: word(t, t))
    assert doubled == Word([(s, -1), (s, -1)])


def test_z2_expansion(ctx3):
    a, b, p = sa(ctx3, 1, 2, 2), sa(ctx3, 1, 3, 2), sr(ctx3, 2, 1, 1)
    w = expand_abbreviation(ctx3, "Z2", (1, 2, 3), [a, b], [p])
    assert [(s.i, s.j) for s in w.symbols()] == [(1, 2), (1, 3), (2, 3)]
    assert w.symbols()[2].a == ctx3.mul(p, b)


def test_z4_expansion_is_two_z2_words(ctx4):
    a, b = sa(ctx4, 1, 3, 2), sa(ctx4, 2, 3, 2)
    p, q = sr(ctx4, 3, 1, 1), sr(ctx4, 3, 2, 1)
    w = expand_abbreviation(ctx4, "Z4", (1, 2, 3), [a, b], [p, q])
    assert len(w) == 6
    assert w.symbols()[0] == Z(1, 3, a, p)


def test_abbreviation_rejects_wrong_component(ctx3):
    a, b, p = sa(ctx3, 1, 2, 2), sa(ctx3, 1, 3, 2), sr(ctx3, 1, 2, 1)
    with pytest.raises(PreconditionError):
        expand_abbreviation(ctx3, "Z2", (1, 2, 3), [a, b], [p])
    with pytest.raises(PreconditionError):
        expand_abbreviation(ctx3, "Z2", (1, 1, 3), [a, b], [sr(ctx3, 2, 1, 1)])
    with pytest.raises(PreconditionError):
        expand_abbreviation(ctx3, "Z9", (1, 2, 3), [a, b], [p])


def test_st1_with_zero_payloads_is_empty(ctx3):
    z = ctx3.zero
    inst = relation_instance(ctx3, "St1", (1, 2), {"a": z, "b": z})
    assert inst.lhs == EMPTY and inst.rhs == EMPTY


def test_hw_with_zero_payload_is_empty(ctx3):
    z = ctx3.zero
    params = {"a": z, "p": sr(ctx3, 3, 2, 1), "q": sr(ctx3, 2, 1, 1), "r": sr(ctx3, 3, 1, 1)}
    inst = relation_instance(ctx3, "HW", (1, 2, 3), params)
    assert inst.lhs == EMPTY and inst.rhs == EMPTY


def test_dis_needs_four_indices(ctx3, ctx4):
    params = {"a": sa(ctx4, 1, 2, 2), "p": sr(ctx4, 2, 1, 1), "b": sa(ctx4, 3, 4, 2), "q": sr(ctx4, 4, 3, 1)}
    inst = relation_instance(ctx4, "Dis", (1, 2, 3, 4), params)
    assert np.array_equal(eval_value(ctx4, inst.lhs), eval_value(ctx4, inst.rhs))
    with pytest.raises(PreconditionError):
        relation_instance(ctx3, "Dis", (1, 2, 3, 1), params)


def test_membership_is_checked(ctx3):
    with pytest.raises(PreconditionError):
        relation_instance(ctx3, "St1", (1, 2), {"a": sr(ctx3, 1, 2, 1), "b": ctx3.zero})
    with pytest.raises(PreconditionError):
        relation_instance(ctx3, "St1", (1, 1), {"a": ctx3.zero, "b": ctx3.zero})
    with pytest.raises(PreconditionError):
        relation_instance(ctx3, "St1", (1, 2), {"a": ctx3.zero})
    with pytest.raises(PreconditionError):
        relation_instance(ctx3, "Nope", (1, 2), {})


def test_random_instances_are_reproducible(ctx3):
    ids = ["Add1", "Conj2", "HW"]
    first = random_instances(ctx3, ids, 5, seed=7)
    again = random_instances(ctx3, ids, 5, seed=7)
    assert [i.to_json() for i in first] == [i.to_json() for i in again]
    alone = random_instances(ctx3, ["HW"], 5, seed=7)
    assert [i.to_json() for i in first[10:]] == [i.to_json() for i in alone]
    assert random_instances(ctx3, ids, 0, seed=7) == []


def test_sampled_parameters_lie_in_their_components(ctx4):
    for inst in random_instances(ctx4, [r for r in GROUP_IDS if r != "Rel3"], 3, seed=1):
        spec = CATALOG[inst.relation_id]
        for name, kind, u, v in spec.params:
            check = ctx4.in_a if kind == "A" else ctx4.in_r
            assert check(inst.indices[u], inst.indices[v], inst.params[name])


def test_transpose_involution_on_100_words(ctx4, rng):
    for _ in range(100):
        w = random_word(ctx4, rng, int(rng.integers(0, 8)))
        assert transpose(transpose(w)) == w


def test_reduction_confluent_under_random_insertions(ctx3, rng):
    for _ in range(50):
        w = random_word(ctx3, rng, 5)
        normal = w.reduced()
        letters = list(w.letters)
        for _ in range(4):
            pos = int(rng.integers(0, len(letters) + 1))
            s = random_word(ctx3, rng, 1).letters[0]
            letters[pos:pos] = [s, (s[0], -s[1])]
        assert Word(letters).reduced() == normal


def test_hw_stream_of_ten_is_reproducible(ctx4):
    a = random_instances(ctx4, ["HW"], 10, seed=123)
    b = random_instances(ctx4, ["HW"], 10, seed=123)
    assert len(a) == 10 and [i.to_json() for i in a] == [i.to_json() for i in b]
