"""Sparse exact Gaussian elimination over the scalar field."""

from __future__ import annotations

from typing import Hashable, Mapping, Sequence

from .scalars import ONE, Scalar


def _cost(c: Scalar) -> int:
    return len(c.num.terms) + len(c.den.terms)


def _axpy(target: dict, f: Scalar, src: Mapping) -> None:
    """target -= f * src, dropping zeros."""
    for k, v in src.items():
        x = target.get(k)
        y = -(f * v) if x is None else x - f * v
        if y.is_zero():
            target.pop(k, None)
        else:
            target[k] = y


class LinearSystem:
    """Reduced row echelon form of ``A`` given column by column.

    ``columns[j]`` maps an equation key to the coefficient of unknown ``j``.
    The row operations are recorded so that many right-hand sides can be
    solved against one elimination.
    """

    def __init__(self, columns: Sequence[Mapping[Hashable, Scalar]]):
        self.ncols = len(columns)
        self.keys: dict[Hashable, int] = {}
        rows: list[dict] = []
        for j, col in enumerate(columns):
            for k, c in col.items():
                if c.is_zero():
                    continue
                i = self.keys.get(k)
                if i is None:
                    i = self.keys[k] = len(rows)
                    rows.append({})
                rows[i][j] = c
        trans = [{i: ONE} for i in range(len(rows))]
        pivots: dict[int, int] = {}
        free = []
        used: set[int] = set()
        for j in range(self.ncols):
            cands = [i for i, row in enumerate(rows) if i not in used and j in row]
            if not cands:
                free.append(j)
                continue
            p = min(cands, key=lambda i: (_cost(rows[i][j]), len(rows[i]), i))
            inv = rows[p][j].inv()
            rows[p] = {k: v * inv for k, v in rows[p].items()}
            trans[p] = {k: v * inv for k, v in trans[p].items()}
            for i, row in enumerate(rows):
                if i != p and j in row:
                    f = row[j]
                    _axpy(row, f, rows[p])
                    _axpy(trans[i], f, trans[p])
            used.add(p)
            pivots[j] = p
        self.rows, self.trans, self.pivots, self.free = rows, trans, pivots, free
        self.rank = len(pivots)

    def kernel(self) -> list[dict[int, Scalar]]:
        """Basis of the null space, one vector per free column."""
        basis = []
        for f in self.free:
            vec = {f: ONE}
            for j, p in self.pivots.items():
                c = self.rows[p].get(f)
                if c is not None:
                    vec[j] = -c
            basis.append(vec)
        return basis

    def inconsistency(self, rhs: Mapping[Hashable, Scalar]) -> tuple[dict[int, Scalar], int]:
        """Particular solution (free unknowns 0) and the number of violated equations."""
        if any(not c.is_zero() for k, c in rhs.items() if k not in self.keys):
            bad = sum(1 for k, c in rhs.items() if k not in self.keys and not c.is_zero())
        else:
            bad = 0
        b = {self.keys[k]: c for k, c in rhs.items() if k in self.keys and not c.is_zero()}
        pivot_rows = {p: j for j, p in self.pivots.items()}
        x: dict[int, Scalar] = {}
        for i, t in enumerate(self.trans):
            val = None
            for k, c in t.items():
                bk = b.get(k)
                if bk is not None:
                    val = c * bk if val is None else val + c * bk
            if val is None or val.is_zero():
                continue
            if i in pivot_rows:
                x[pivot_rows[i]] = val
            else:
                bad += 1
        return x, bad

    def solve(self, rhs: Mapping[Hashable, Scalar]) -> dict[int, Scalar] | None:
        """Solution with all free unknowns set to zero, or None if inconsistent."""
        x, bad = self.inconsistency(rhs)
        return None if bad else x


def rank(rows: Sequence[Mapping[Hashable, Scalar]]) -> int:
    """Rank of a matrix given as sparse rows."""
    work = [dict(r) for r in rows if r]
    r = 0
    while work:
        row = work.pop()
        row = {k: v for k, v in row.items() if not v.is_zero()}
        if not row:
            continue
        col = min(row, key=lambda k: (_cost(row[k]), repr(k)))
        inv = row[col].inv()
        row = {k: v * inv for k, v in row.items()}
        for other in work:
            if col in other:
                _axpy(other, other[col], row)
        r += 1
        work = [w for w in work if w]
    return r
