"""Solutions of the braid equation on V (x) V and non-degenerate bilinear forms.

Index convention used throughout the package:
``c(x_i (x) x_j) = sum_{k,l} c[i][j][k][l] x_k (x) x_l`` (0-based internally,
1-based whenever printed).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import linalg
from .linalg import SparseOp
from .scalars import FieldScalar, FieldSpec


class BraidingError(ValueError):
    pass


@dataclass
class BraidCheck:
    ok: bool
    witness: tuple | None = None  # 1-based (i, j, k, a, b, c): input basis and output coordinate
    lhs: FieldScalar | None = None
    rhs: FieldScalar | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class RigidityCheck:
    ok: bool
    invertible: bool
    flat_invertible: bool
    criterion: str = (
        "c invertible on V(x)V and the flat map (c^-1)^b: V*(x)V -> V(x)V*, "
        "(c^-1)^b(f^i (x) x_j) = sum_{b,l} (c^-1)_{jl}^{ib} x_b (x) f^l, invertible"
    )

    def __bool__(self) -> bool:
        return self.ok

    def diagnostics(self) -> str:
        if self.ok:
            return "rigid"
        failed = []
        if not self.invertible:
            failed.append("c is not invertible")
        if not self.flat_invertible:
            failed.append("flat map of c^-1 is not invertible")
        return "; ".join(failed)


class Braiding:
    """Linear map c on V (x) V with exact entries c_{ij}^{kl}."""

    def __init__(self, n: int, field: FieldSpec, entries):
        if n < 1:
            raise BraidingError("dimension must be positive")
        self.n = n
        self.field = field
        self.entries = [
            [[[field(entries[i][j][k][l]) for l in range(n)] for k in range(n)] for j in range(n)]
            for i in range(n)
        ]

    # --- constructors ----------------------------------------------------------
    @classmethod
    def from_function(cls, n: int, field: FieldSpec, f) -> Braiding:
        return cls(n, field, [[[[f(i, j, k, l) for l in range(n)] for k in range(n)]
                               for j in range(n)] for i in range(n)])

    @classmethod
    def flip(cls, n: int, field: FieldSpec) -> Braiding:
        return cls.from_function(n, field, lambda i, j, k, l: int(k == j and l == i))

    @classmethod
    def flip_scaled(cls, n: int, field: FieldSpec, q) -> Braiding:
        q = field(q)
        return cls.from_function(n, field, lambda i, j, k, l: q if (k == j and l == i) else 0)

    @classmethod
    def diagonal(cls, field: FieldSpec, qmatrix) -> Braiding:
        """c(x_i (x) x_j) = q_ij x_j (x) x_i."""
        n = len(qmatrix)
        qm = [[field(v) for v in row] for row in qmatrix]
        return cls.from_function(n, field, lambda i, j, k, l: qm[i][j] if (k == j and l == i) else 0)

    @classmethod
    def dense(cls, n: int, field: FieldSpec, data) -> Braiding:
        """Either n^4 scalars ordered by (i, j, k, l), or n^2 rows (i, j) of n^2 entries (k, l)."""
        flat = []
        if len(data) == n * n and all(isinstance(r, (list, tuple)) for r in data):
            for row in data:
                if len(row) != n * n:
                    raise BraidingError(f"dense rows must have {n * n} entries")
                flat.extend(row)
        else:
            flat = list(data)
        if len(flat) != n ** 4:
            raise BraidingError(f"dense braiding needs {n ** 4} entries, got {len(flat)}")
        return cls.from_function(n, field, lambda i, j, k, l: flat[((i * n + j) * n + k) * n + l])

    # --- views -----------------------------------------------------------------
    def coef(self, i: int, j: int, k: int, l: int) -> FieldScalar:
        return self.entries[i][j][k][l]

    def matrix(self):
        """n^2 x n^2 operator matrix acting on column vectors: M[(k,l)][(i,j)]."""
        n = self.n
        return [[self.entries[i][j][k][l] for i in range(n) for j in range(n)]
                for k in range(n) for l in range(n)]

    def local_images(self):
        """For each input pair index i*n+j, the sparse image {k*n+l: coefficient}."""
        n = self.n
        out = []
        for i in range(n):
            for j in range(n):
                out.append({k * n + l: self.entries[i][j][k][l]
                            for k in range(n) for l in range(n) if self.entries[i][j][k][l]})
        return out

    def operator(self, k: int, pos: int) -> SparseOp:
        """c acting on tensor factors pos, pos+1 of V^(x)k (0-based positions)."""
        n = self.n
        local = self.local_images()
        dim = n ** k
        left = n ** pos
        right = n ** (k - pos - 2)
        cols = []
        for idx in range(dim):
            hi, rest = divmod(idx, n * n * right)
            pair, lo = divmod(rest, right)
            base = hi * n * n * right + lo
            cols.append({base + kl * right: v for kl, v in local[pair].items()})
        assert left * n * n * right == dim
        return SparseOp(dim, cols)

    def scaled(self, q) -> Braiding:
        return scale(self, q)

    def __eq__(self, other) -> bool:
        return isinstance(other, Braiding) and self.n == other.n and self.entries == other.entries

    __hash__ = None

    def __repr__(self) -> str:
        return f"Braiding(n={self.n}, field={self.field.describe()})"


def scale(c: Braiding, q) -> Braiding:
    q = c.field(q)
    if not q:
        raise BraidingError("scaling factor must be non-zero")
    return Braiding.from_function(c.n, c.field, lambda i, j, k, l: q * c.entries[i][j][k][l])


def check_braid(c: Braiding) -> BraidCheck:
    """(c(x)id)(id(x)c)(c(x)id) == (id(x)c)(c(x)id)(id(x)c) on V^(x)3."""
    c1 = c.operator(3, 0)
    c2 = c.operator(3, 1)
    lhs = c1 @ (c2 @ c1)
    rhs = c2 @ (c1 @ c2)
    n = c.n
    zero = c.field.zero
    for col in range(n ** 3):
        a, b = lhs.cols[col], rhs.cols[col]
        if a == b:
            continue
        for row in sorted(set(a) | set(b)):
            x, y = a.get(row, zero), b.get(row, zero)
            if x != y:
                inp = _digits(col, n, 3)
                out = _digits(row, n, 3)
                return BraidCheck(False, tuple(v + 1 for v in inp + out), x, y)
    return BraidCheck(True)


def _digits(idx: int, n: int, k: int) -> tuple:
    out = []
    for _ in range(k):
        idx, r = divmod(idx, n)
        out.append(r)
    return tuple(reversed(out))


def check_rigid(c: Braiding) -> RigidityCheck:
    M = c.matrix()
    field = c.field
    n = c.n
    if not linalg.is_invertible(M):
        return RigidityCheck(False, False, False)
    Minv = linalg.inverse(M, field)

    def inv(i, j, k, l):
        return Minv[k * n + l][i * n + j]

    # flat[(b, l)][(i, j)] = (c^-1)_{jl}^{ib}
    flat = [[inv(j, l, i, b) for i in range(n) for j in range(n)]
            for b in range(n) for l in range(n)]
    ok_flat = linalg.is_invertible(flat)
    return RigidityCheck(ok_flat, True, ok_flat)


class BilinearForm:
    """Non-degenerate bilinear form b_{mu nu} = b(x_mu, x_nu) with its inverse matrix."""

    def __init__(self, field: FieldSpec, B):
        self.field = field
        self.n = len(B)
        self.B = [[field(v) for v in row] for row in B]
        if any(len(row) != self.n for row in self.B):
            raise BraidingError("bilinear form matrix must be square")
        try:
            self.Binv = linalg.inverse(self.B, field)
        except ZeroDivisionError:
            raise BraidingError("bilinear form is degenerate (singular matrix)") from None
        ident = linalg.identity(self.n, field)
        assert linalg.matmul(self.B, self.Binv, field) == ident
        assert linalg.matmul(self.Binv, self.B, field) == ident

    def __repr__(self) -> str:
        return f"BilinearForm({[[str(v) for v in row] for row in self.B]})"


def all_index_tuples(n: int, k: int):
    return product(range(n), repeat=k)
