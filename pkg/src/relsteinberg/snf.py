"""Smith normal form over Z with unimodular transforms.

``smith_normal_form(M)`` returns U, V unimodular and D diagonal with
U M V = D and d_1 | d_2 | ...; the product is re-multiplied and compared
before anything is returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .zmod import IntMatrix, identity, matmul


class SNFError(ArithmeticError):
    pass


@dataclass(frozen=True)
class SNFResult:
    nrows: int
    ncols: int
    diagonal: tuple[int, ...]        # nonzero diagonal entries, d_1 | d_2 | ...
    U: tuple[tuple[int, ...], ...]
    V: tuple[tuple[int, ...], ...]
    certified: bool

    @property
    def rank(self) -> int:
        return len(self.diagonal)

    @property
    def free_rank(self) -> int:
        """Rank of the free part of the cokernel Z^ncols / rowspace(M)."""
        return self.ncols - self.rank

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Torsion invariants of the cokernel (entries equal to 1 dropped)."""
        return tuple(d for d in self.diagonal if d != 1)

    @property
    def order(self) -> int | None:
        """Order of the cokernel, or None if it is infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.diagonal:
            out *= d
        return out

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank,
                "rank": self.rank, "certified": self.certified}


def _swap_rows(m, a, b):
    m[a], m[b] = m[b], m[a]


def _swap_cols(m, a, b):
    for row in m:
        row[a], row[b] = row[b], row[a]


SparseRow = dict


def _axpy(dst: SparseRow, src: SparseRow, q: int) -> None:
    """dst += q * src on sparse rows."""
    for k, x in src.items():
        y = dst.get(k, 0) + q * x
        if y:
            dst[k] = y
        else:
            dst.pop(k, None)


def _sparse(m: Sequence) -> list[SparseRow]:
    if m and isinstance(m[0], dict):
        return [dict(r) for r in m]
    return [{k: int(x) for k, x in enumerate(r) if x} for r in m]


def _sparse_matmul(a: list[SparseRow], b: list[SparseRow]) -> list[SparseRow]:
    out = []
    for row in a:
        acc: SparseRow = {}
        for k, x in row.items():
            _axpy(acc, b[k], x)
        out.append(acc)
    return out


def _is_identity(rows: list[SparseRow]) -> bool:
    return all(r == {i: 1} for i, r in enumerate(rows))


def smith_normal_form(matrix: Sequence[Sequence[int]], ncols: int | None = None) -> SNFResult:
    """Diagonalize an integer matrix; the result is certified by re-multiplication."""
    m = [list(map(int, r)) for r in matrix]
    nrows = len(m)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    if any(len(r) != ncols for r in m):
        raise SNFError("ragged matrix")
    d = [r[:] for r in m]
    # row transforms are sparse; U^-1 is kept transposed so its updates are row updates
    u = [{i: 1} for i in range(nrows)]
    u_inv_t = [{i: 1} for i in range(nrows)]
    v, v_inv = identity(ncols), identity(ncols)

    def row_swap(a, b):
        _swap_rows(d, a, b)
        _swap_rows(u, a, b)
        _swap_rows(u_inv_t, a, b)

    def col_swap(a, b):
        _swap_cols(d, a, b)
        _swap_cols(v, a, b)
        _swap_rows(v_inv, a, b)

    t = 0
    while t < min(nrows, ncols):
        # smallest nonzero entry of the remaining block as pivot
        best = None
        for i in range(t, nrows):
            row = d[i]
            for j in range(t, ncols):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, pi, pj = best
        if pi != t:
            row_swap(pi, t)
        if pj != t:
            col_swap(pj, t)
        while True:
            piv = d[t][t]
            clean = True
            # clear the column below the pivot
            for i in range(t + 1, nrows):
                x = d[i][t]
                if x:
                    q = x // piv
                    di, dt = d[i], d[t]
                    for j in range(t, ncols):
                        di[j] -= q * dt[j]
                    _axpy(u[i], u[t], -q)
                    _axpy(u_inv_t[t], u_inv_t[i], q)
                    if d[i][t]:
                        clean = False
            # clear the row right of the pivot
            for j in range(t + 1, ncols):
                x = d[t][j]
                if x:
                    q = x // piv
                    for row in d:
                        if row[t]:
                            row[j] -= q * row[t]
                    for row in v:
                        if row[t]:
                            row[j] -= q * row[t]
                    v_inv[t] = [a + q * b for a, b in zip(v_inv[t], v_inv[j])]
                    if d[t][j]:
                        clean = False
            if not clean:
                # move the smallest remaining entry of row/column t to the pivot
                cand = [(abs(d[i][t]), i, t) for i in range(t, nrows) if d[i][t]]
                cand += [(abs(d[t][j]), t, j) for j in range(t, ncols) if d[t][j]]
                _, ci, cj = min(cand)
                if ci != t:
                    row_swap(ci, t)
                if cj != t:
                    col_swap(cj, t)
                continue
            # divisibility: pivot must divide the remaining block
            bad = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if d[i][j] % piv:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            # add the offending row to row t and repeat
            d[t] = [a + b for a, b in zip(d[t], d[bad])]
            _axpy(u[t], u[bad], 1)
            _axpy(u_inv_t[bad], u_inv_t[t], -1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = {k: -x for k, x in u[t].items()}
            u_inv_t[t] = {k: -x for k, x in u_inv_t[t].items()}
        t += 1
    diag = tuple(d[i][i] for i in range(min(nrows, ncols)) if d[i][i])
    u_inv: list[SparseRow] = [{} for _ in range(nrows)]
    for j, col in enumerate(u_inv_t):
        for k, x in col.items():
            u_inv[k][j] = x
    certified = certify(m, u, v, d, u_inv, v_inv)
    if not certified:
        raise SNFError("U M V != D")
    dense_u = tuple(tuple(r.get(k, 0) for k in range(nrows)) for r in u)
    return SNFResult(nrows, ncols, diag, dense_u, tuple(map(tuple, v)), certified)


def certify(m: IntMatrix, u, v: IntMatrix, d: IntMatrix, u_inv=None, v_inv: IntMatrix | None = None) -> bool:
    """Re-multiply U M V and compare with a diagonal, divisibility-chained D.
    With the inverses given, also check U U^-1 = I and V V^-1 = I, so both
    transforms are unimodular.  U and U^-1 may be dense or sparse (dict) rows."""
    nrows = len(m)
    ncols = len(v)
    if nrows and len(m[0]) != ncols:
        return False
    su = _sparse(u)
    if u_inv is not None and not _is_identity(_sparse_matmul(su, _sparse(u_inv))):
        return False
    if v_inv is not None and matmul(v, v_inv) != identity(ncols):
        return False
    um = _sparse_matmul(su, _sparse(m))
    prod = matmul([[r.get(k, 0) for k in range(ncols)] for r in um], v) if nrows else []
    if prod != [list(r) for r in d]:
        return False
    diag = []
    for i in range(nrows):
        for j in range(ncols):
            if i != j and d[i][j]:
                return False
        if i < ncols and d[i][i]:
            if d[i][i] < 0:
                return False
            diag.append(d[i][i])
    if any(diag[k + 1] % diag[k] for k in range(len(diag) - 1)):
        return False
    # trailing zeros after nonzeros only
    seen_zero = False
    for i in range(min(nrows, ncols)):
        if d[i][i] == 0:
            seen_zero = True
        elif seen_zero:
            return False
    return True


def in_row_lattice(snf: SNFResult, vec: Sequence[int]) -> bool:
    """Is ``vec`` an integer combination of the rows of M?

    With U M V = D, rowspace(M) V = rowspace(D), so vec V must have entries
    divisible by d_k in the first rank positions and zeros after."""
    w = matmul([list(map(int, vec))], [list(r) for r in snf.V])[0]
    for k, c in enumerate(w):
        if k < snf.rank:
            if c % snf.diagonal[k]:
                return False
        elif c:
            return False
    return True


def cokernel_coordinates(snf: SNFResult, vec: Sequence[int]) -> tuple[int, ...]:
    """Canonical coordinates of the class of ``vec`` in Z^n / rowspace(M):
    the entries of vec V reduced mod the diagonal (free coordinates kept)."""
    w = matmul([list(map(int, vec))], [list(r) for r in snf.V])[0]
    out = []
    for k, c in enumerate(w):
        if k < snf.rank:
            dk = snf.diagonal[k]
            if dk != 1:
                out.append(c % dk)
        else:
            out.append(c)
    return tuple(out)
