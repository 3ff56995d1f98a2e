from __future__ import annotations

from functools import lru_cache

import numpy as np
import pytest

from relsteinberg.chevalley import ChevalleyContext
from relsteinberg.context import LinearContext
from relsteinberg.rings import cyclic, diagonal_family, matrix_crossed_module, matrix_ring, scalar_ideal
from relsteinberg.roots import RootDatum


@lru_cache(maxsize=None)
def mat_context(n: int, m: int, s: int) -> LinearContext:
    """Mat(n, sZ/m) -> Mat(n, Z/m) with diagonal idempotents."""
    cm = matrix_crossed_module(n, scalar_ideal(cyclic(m), s))
    return LinearContext(cm, diagonal_family(cm.ring))


@lru_cache(maxsize=None)
def chev_context(name: str, m: int = 8, s: int = 2, orientation=None) -> ChevalleyContext:
    return ChevalleyContext(RootDatum.from_name(name), scalar_ideal(cyclic(m), s), orientation)


def unit_matrix(ring, i, j, value=1):
    """E_ij scaled, as coordinates of a matrix ring over Z/m."""
    n = ring.matrix_size
    v = np.zeros(ring.dim, dtype=np.int64)
    v[(i - 1) * n + (j - 1)] = value % ring.modulus
    return v


def as_matrix(ring, x):
    n = ring.matrix_size
    return np.asarray(x, dtype=np.int64).reshape(n, n)


@pytest.fixture(scope="session")
def ctx4():
    return mat_context(4, 8, 2)


@pytest.fixture(scope="session")
def ctx3():
    return mat_context(3, 4, 2)


@pytest.fixture(scope="session")
def mat3_z4():
    return matrix_ring(3, cyclic(4))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def sa(ctx, i, j, value):
    """value * E_ij as an element of the ideal block of S, for matrix contexts."""
    return tuple(int(v) for v in ctx.S.embed_a(unit_matrix(ctx.crossed.ring, i, j, value)))


def sr(ctx, i, j, value):
    """value * E_ij in the ring block of S."""
    return tuple(int(v) for v in ctx.S.embed_r(unit_matrix(ctx.crossed.ring, i, j, value)))


ACCEPTANCE: dict[int, str] = {}


def record(criterion: int, ok: bool, title: str, detail: str) -> bool:
    ACCEPTANCE[criterion] = f"criterion {criterion} ({title}): {'PASS' if ok else 'FAIL'} - {detail}"
    print(ACCEPTANCE[criterion])
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
