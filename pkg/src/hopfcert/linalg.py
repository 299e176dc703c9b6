"""Small exact linear algebra over a FieldSpec.

Sparse rows are ``dict[col, FieldScalar]`` with no stored zeros. Dense
matrices are lists of rows.
"""

from __future__ import annotations

from .scalars import FieldSpec

SparseRow = dict


def rref_sparse(rows, ncols: int | None = None):
    """Reduced row echelon form of sparse rows.

    Returns ``(reduced, pivots)``; ``reduced[i]`` has a 1 in column
    ``pivots[i]``, pivots increase, and every other reduced row is 0 there.
    Pivot columns are chosen left to right.
    """
    work = [dict(r) for r in rows if r]
    pivot_rows: dict[int, dict] = {}
    for row in work:
        # pivot rows are fully reduced, so one pass clears every pivot column
        for col in [c for c in row if c in pivot_rows]:
            f = row.get(col)
            if f is not None:
                _axpy(row, -f, pivot_rows[col])
        if not row:
            continue
        col = min(row)
        inv = row[col].inverse()
        row = {c: v * inv for c, v in row.items()}
        for prow in pivot_rows.values():
            f = prow.get(col)
            if f is not None:
                _axpy(prow, -f, row)
        pivot_rows[col] = row
    pivots = sorted(pivot_rows)
    return [pivot_rows[p] for p in pivots], pivots


def _axpy(target: dict, factor, source: dict) -> None:
    for c, v in source.items():
        nv = target.get(c)
        nv = factor * v if nv is None else nv + factor * v
        if nv:
            target[c] = nv
        else:
            target.pop(c, None)


def rank_sparse(rows) -> int:
    return len(rref_sparse(rows)[1])


def dense_to_sparse(matrix):
    return [{j: v for j, v in enumerate(row) if v} for row in matrix]


def sparse_to_dense(rows, ncols: int, field: FieldSpec):
    zero = field.zero
    return [[r.get(j, zero) for j in range(ncols)] for r in rows]


def rank(matrix) -> int:
    return rank_sparse(dense_to_sparse(matrix))


def identity(n: int, field: FieldSpec):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def matmul(a, b, field: FieldSpec):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [field.zero] * cols
        for k in range(inner):
            x = row[k]
            if x:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] = acc[j] + x * bk[j]
        out.append(acc)
    return out


def transpose(a):
    return [list(col) for col in zip(*a)]


def inverse(matrix, field: FieldSpec):
    """Inverse of a square matrix; raises ZeroDivisionError when singular."""
    n = len(matrix)
    aug = [
        {**{j: v for j, v in enumerate(row) if v}, **({n + i: field.one})}
        for i, row in enumerate(matrix)
    ]
    reduced, pivots = rref_sparse(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return [[reduced[i].get(n + j, field.zero) for j in range(n)] for i in range(n)]


def is_invertible(matrix) -> bool:
    return bool(matrix) and len(matrix) == len(matrix[0]) and rank(matrix) == len(matrix)


def in_span(basis_rows, target: dict) -> bool:
    reduced, pivots = rref_sparse(basis_rows)
    rest = dict(target)
    for p, row in zip(pivots, reduced):
        f = rest.get(p)
        if f is not None:
            _axpy(rest, -f, row)
    return not rest


class SparseOp:
    """Linear operator on k^dim stored as sparse columns (col -> {row: value})."""

    __slots__ = ("dim", "cols")

    def __init__(self, dim: int, cols):
        self.dim = dim
        self.cols = cols

    @classmethod
    def identity(cls, dim: int, field: FieldSpec) -> SparseOp:
        return cls(dim, [{j: field.one} for j in range(dim)])

    @classmethod
    def zero(cls, dim: int) -> SparseOp:
        return cls(dim, [{} for _ in range(dim)])

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for j, x in vec.items():
            _axpy(out, x, self.cols[j])
        return out

    def __matmul__(self, other: SparseOp) -> SparseOp:
        return SparseOp(self.dim, [self.apply(col) for col in other.cols])

    def __add__(self, other: SparseOp) -> SparseOp:
        out = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            _axpy(col, 1, b)
            out.append(col)
        return SparseOp(self.dim, out)

    def __sub__(self, other: SparseOp) -> SparseOp:
        out = []
        for a, b in zip(self.cols, other.cols):
            col = dict(a)
            _axpy(col, -1, b)
            out.append(col)
        return SparseOp(self.dim, out)

    def __eq__(self, other) -> bool:
        return isinstance(other, SparseOp) and self.cols == other.cols

    __hash__ = None

    def rows(self) -> list:
        """Row-sparse view: row i -> {col: value}."""
        out = [dict() for _ in range(self.dim)]
        for j, col in enumerate(self.cols):
            for i, v in col.items():
                out[i][j] = v
        return out

    def entry(self, i: int, j: int, field: FieldSpec):
        return self.cols[j].get(i, field.zero)

    def is_zero(self) -> bool:
        return not any(self.cols)

    def rank(self) -> int:
        return rank_sparse(self.rows())
