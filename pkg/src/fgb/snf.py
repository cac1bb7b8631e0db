"""Exact Smith normal form over the integers and finitely generated abelian groups."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

__all__ = ["smith_normal_form", "AbelianGroupShape", "matmul"]

Matrix = list[list[int]]


def _eye(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    bt = list(zip(*b)) if b else [()] * cols
    return [[sum(x * y for x, y in zip(row, c)) for c in bt] for row in a]


def smith_normal_form(M: Sequence[Sequence[int]], transforms: bool = True):
    """Return ``(D, U, V)`` with ``U · M · V == D``, U and V unimodular.

    Pivot choice is the entry of smallest absolute value in the remaining block.
    ``D`` is diagonal with nonnegative entries and ``D[i][i] | D[i+1][i+1]``.
    With ``transforms=False``, ``U`` and ``V`` are returned as None.
    """
    A = [[int(x) for x in row] for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U = _eye(m) if transforms else None
    V = _eye(n) if transforms else None

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst -= q * row_src
        if q:
            rs, rd = A[src], A[dst]
            for c in range(n):
                if rs[c]:
                    rd[c] -= q * rs[c]
            if U is not None:
                us, ud = U[src], U[dst]
                for c in range(m):
                    if us[c]:
                        ud[c] -= q * us[c]

    def add_col(src, dst, q):  # col_dst -= q * col_src
        if q:
            for row in A:
                if row[src]:
                    row[dst] -= q * row[src]
            if V is not None:
                for row in V:
                    if row[src]:
                        row[dst] -= q * row[src]

    def negate_row(i):
        A[i] = [-x for x in A[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, A[i][t] // p)
                    if A[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, A[t][j] // p)
                    if A[t][j]:
                        dirty = True
            if dirty:
                # a nonzero remainder is smaller than the pivot; move it in
                r = min(((abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]), default=None)
                c = min(((abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]), default=None)
                cand = min(x for x in (r, c) if x is not None)
                if cand[2] == t:
                    swap_rows(t, cand[1])
                else:
                    swap_cols(t, cand[2])
                continue
            # divisibility: fold in any entry of the block not divisible by the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, -1)
        if A[t][t] < 0:
            negate_row(t)
        t += 1
    if U is not None:
        assert matmul(matmul(U, [list(map(int, r)) for r in M]), V) == A, "SNF reconstruction failed"
    return A, U, V


@dataclass(frozen=True)
class AbelianGroupShape:
    """``Z^free_rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_r`` with ``d_i | d_{i+1}``."""

    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"torsion {self.torsion} is not a divisibility chain")
        if any(d < 2 for d in self.torsion):
            raise ValueError("torsion entries must be at least 2")

    @classmethod
    def cokernel(cls, rows: Sequence[Sequence[int]], ncols: int, verify: bool = True) -> "AbelianGroupShape":
        """``Z^ncols`` modulo the row span."""
        if not rows:
            return cls(ncols, ())
        D, _, _ = smith_normal_form(rows, transforms=verify)
        diag = [D[i][i] for i in range(min(len(D), ncols))]
        nonzero = [d for d in diag if d]
        return cls(ncols - len(nonzero), tuple(d for d in nonzero if d > 1))

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    def __str__(self):
        parts = ([f"Z^{self.free_rank}"] if self.free_rank else []) + [f"Z/{d}" for d in self.torsion]
        return " ⊕ ".join(parts) or "0"
