from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relsteinberg.context import LinearContext
from relsteinberg.rings import (
    IdempotentFamily,
    RingError,
    cyclic,
    diagonal_family,
    homotope,
    ideal_inclusion,
    lift_to_semidirect,
    matrix_crossed_module,
    matrix_ring,
    peirce,
    quasi_inverse,
    scalar_ideal,
    semidirect,
    validate_idempotent_family,
    zero_map,
)

from conftest import as_matrix, mat_context, unit_matrix


def test_cyclic_and_matrix_rings_validate():
    for ring in (cyclic(4), cyclic(8), matrix_ring(3, cyclic(4)), matrix_ring(2, matrix_ring(2, cyclic(2)))):
        assert all(ring.validate().values())


def test_matrix_ring_matches_numpy_products(rng):
    ring = matrix_ring(3, cyclic(8))
    for _ in range(50):
        x, y = rng.integers(0, 8, 9), rng.integers(0, 8, 9)
        expect = (as_matrix(ring, x) @ as_matrix(ring, y)) % 8
        assert np.array_equal(as_matrix(ring, ring.mul(x, y)), expect)


def test_peirce_zero_and_unit(mat3_z4):
    fam = diagonal_family(mat3_z4)
    assert not np.any(peirce(fam, 1, mat3_z4.zeros(), 2))
    assert not np.any(peirce(fam, 1, mat3_z4.one, 2))


def test_peirce_all_ones_matrix(mat3_z4):
    fam = diagonal_family(mat3_z4)
    ones = np.ones(9, dtype=np.int64)
    assert np.array_equal(peirce(fam, 1, ones, 2), unit_matrix(mat3_z4, 1, 2))


def test_peirce_is_idempotent_and_additive(mat3_z4, rng):
    fam = diagonal_family(mat3_z4)
    for _ in range(20):
        x, y = rng.integers(0, 4, 9), rng.integers(0, 4, 9)
        px = peirce(fam, 2, x, 3)
        assert np.array_equal(peirce(fam, 2, px, 3), px)
        assert np.array_equal(peirce(fam, 2, (x + y) % 4, 3), (px + peirce(fam, 2, y, 3)) % 4)


def test_peirce_rejects_foreign_label(mat3_z4):
    fam = diagonal_family(mat3_z4)
    with pytest.raises((ValueError, KeyError)):
        peirce(fam, 7, mat3_z4.one, 1)


def test_diagonal_family_validates(mat3_z4):
    report = validate_idempotent_family(diagonal_family(mat3_z4))
    assert report and all(report.values())


def test_family_of_size_one_rejected():
    ring = cyclic(4)
    fam = IdempotentFamily(ring, (1,), (tuple(int(v) for v in ring.one),))
    assert not fam.validate()["size"]


def test_incomplete_family_fails_completeness(mat3_z4):
    e1 = tuple(int(v) for v in unit_matrix(mat3_z4, 1, 1))
    e2 = tuple(int(v) for v in unit_matrix(mat3_z4, 2, 2))
    report = IdempotentFamily(mat3_z4, (1, 2), (e1, e2)).validate(min_size=2)
    assert report["idempotent"] and report["orthogonal"]
    assert not report["complete"]
    # E_11 together with E_22 + E_33 does sum to 1
    e23 = tuple(int(v) for v in (unit_matrix(mat3_z4, 2, 2) + unit_matrix(mat3_z4, 3, 3)))
    assert IdempotentFamily(mat3_z4, (1, 2), (e1, e23)).validate(min_size=2)["complete"]


def test_non_full_idempotent_detected():
    # in Z/4 x Z/4 (block diagonal) the block idempotents are not full
    ring = matrix_ring(2, cyclic(4))
    fam = diagonal_family(ring)
    assert fam.validate(min_size=2)["full"]
    prod_ring = cyclic(4)
    e = tuple(int(v) for v in prod_ring.one)
    zero = (0,)
    report = IdempotentFamily(prod_ring, (1, 2, 3), (e, zero, zero)).validate()
    assert not report["full"]


def test_context_requires_three_idempotents():
    cm = matrix_crossed_module(2, scalar_ideal(cyclic(4), 2))
    with pytest.raises(RingError):
        LinearContext(cm, diagonal_family(cm.ring))


def test_semidirect_of_zero_algebra_is_ring():
    ring = cyclic(4)
    S = semidirect(zero_map(ring, []))
    assert S.ideal.is_zero
    assert S.carrier.size == ring.carrier.size
    assert all(S.validate().values())
    for x in range(4):
        for y in range(4):
            assert [int(v) for v in S.r_part(S.mul(S.embed_r([x]), S.embed_r([y])))] == [x * y % 4]


def test_semidirect_square_in_z4():
    S = semidirect(scalar_ideal(cyclic(4), 2))
    x = (S.embed_a([2]) + S.embed_r([1])) % 4
    assert [int(v) for v in S.mul(x, x)] == [int(v) for v in S.embed_r([1])]


def test_semidirect_ideal_products(rng):
    cm = matrix_crossed_module(3, scalar_ideal(cyclic(4), 2))
    S = semidirect(cm)
    A = cm.algebra
    for _ in range(20):
        a, b = A.carrier.sample(rng), A.carrier.sample(rng)
        ab = S.mul(S.embed_a(a), S.embed_a(b))
        assert not np.any(S.r_part(ab))
        assert S.in_ideal(ab)
        p = S.base.carrier.sample(rng)
        assert S.in_ideal(S.mul(S.embed_r(p), S.embed_a(a)))


def test_semidirect_projection_is_homomorphism(rng):
    cm = matrix_crossed_module(3, scalar_ideal(cyclic(8), 2))
    S = semidirect(cm)
    R = cm.ring
    for _ in range(30):
        x, y = S.carrier.sample(rng), S.carrier.sample(rng)
        assert np.array_equal(S.r_part(S.mul(x, y)), R.mul(S.r_part(x), S.r_part(y)))


def test_homotope_degenerate_parameters():
    ring = cyclic(8)
    h0 = homotope(ring, [0])
    assert not np.any(h0.algebra.product) and not np.any(h0.dmap)
    h1 = homotope(ring, [1])
    assert np.array_equal(h1.dmap % 8, np.eye(1, dtype=np.int64))
    assert np.array_equal(h1.algebra.product, ring.table)


def test_homotope_values_in_z8():
    h = homotope(cyclic(8), [2])
    assert all(h.validate().values())
    assert [int(v) for v in h.d(np.array([3]))] == [6]
    prod = np.einsum("i,j,ijk->k", np.array([3]), np.array([5]), h.algebra.product) % 8
    assert [int(v) for v in prod] == [6]


def test_homotope_rejects_non_central():
    ring = matrix_ring(2, cyclic(4))
    with pytest.raises(RingError):
        homotope(ring, unit_matrix(ring, 1, 2))


def test_crossed_modules_validate():
    ring = matrix_ring(3, cyclic(4))
    for cm in (scalar_ideal(cyclic(8), 2), ideal_inclusion(ring, [unit_matrix(ring, 1, 2, 2)]),
               matrix_crossed_module(3, scalar_ideal(cyclic(4), 2)), homotope(cyclic(8), [4]),
               zero_map(cyclic(4), [[2]])):
        assert all(cm.validate().values()), cm


def test_relativized_crossed_module_validates(ctx3):
    assert all(lift_to_semidirect(ctx3.crossed).validate().values())


def test_quasi_inverse_examples():
    S = semidirect(scalar_ideal(cyclic(4), 2))
    assert [int(v) for v in quasi_inverse(S, S.embed_a([0]))] == [0, 0]
    assert [int(v) for v in quasi_inverse(S, S.embed_a([2]))] == [2, 0]


def test_quasi_inverse_off_diagonal_is_negation(ctx3, rng):
    for i, j in ((1, 2), (3, 1), (2, 3)):
        a = ctx3.sample_a(i, j, rng)
        b = quasi_inverse(ctx3.S, a)
        assert [int(v) for v in b] == list(ctx3.neg(a))


def test_quasi_inverse_is_involutive(ctx3, rng):
    for _ in range(30):
        a = ctx3.S.ideal.sample(rng)
        b = quasi_inverse(ctx3.S, a)
        assert b is not None
        assert np.array_equal(quasi_inverse(ctx3.S, b), a % ctx3.modulus)
        s = (a + b + ctx3.S.mul(a, b)) % ctx3.modulus
        assert not np.any(s)


def test_fullness_decomposition_examples(ctx3):
    R = ctx3.crossed.ring
    S = ctx3.S
    x = tuple(int(v) for v in S.embed_a(unit_matrix(R, 1, 2, 2)))
    assert ctx3.fullness_decomposition(ctx3.zero, 1, 2, 3) == []
    pairs = ctx3.fullness_decomposition(x, 1, 2, 3)
    assert pairs == [(tuple(int(v) for v in S.embed_a(unit_matrix(R, 1, 3, 2))),
                      tuple(int(v) for v in S.embed_r(unit_matrix(R, 3, 2))))]


def test_fullness_decomposition_round_trip(rng):
    ctx = mat_context(4, 8, 2)
    for _ in range(50):
        i, j, k = (int(t) + 1 for t in rng.choice(4, 3, replace=False))
        x = ctx.sample_a(i, j, rng)
        total = ctx.add(*(ctx.mul(u, v) for u, v in ctx.fullness_decomposition(x, i, j, k))) \
            if any(x) else ctx.zero
        assert total == x


def test_fullness_decomposition_needs_outside_index(ctx3):
    with pytest.raises(RingError):
        ctx3.fullness_decomposition(ctx3.zero, 1, 2, 2)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 7), min_size=9, max_size=9),
       st.lists(st.integers(0, 7), min_size=9, max_size=9),
       st.lists(st.integers(0, 7), min_size=9, max_size=9))
def test_matrix_ring_axioms_hold(x, y, z):
    ring = matrix_ring(3, cyclic(8))
    x, y, z = (np.array(v) for v in (x, y, z))
    assert np.array_equal(ring.mul(ring.mul(x, y), z), ring.mul(x, ring.mul(y, z)))
    assert np.array_equal(ring.mul(x, (y + z) % 8), (ring.mul(x, y) + ring.mul(x, z)) % 8)
    assert np.array_equal(ring.mul(ring.one, x), x % 8)
