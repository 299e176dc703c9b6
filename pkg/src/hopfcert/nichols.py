"""Nichols algebra B(V, c) degree by degree via quantum symmetrizers.

B^k = V^(x)k / ker S_k where S_k = sum_{w in S_k} T_w and T_w is the lift of w
through a reduced word, with c acting on adjacent tensor positions.
Tensor basis index of x_{i_1} ... x_{i_k} is the base-n number i_1 ... i_k.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations, product

from . import linalg
from .braiding import Braiding, check_braid, scale
from .linalg import SparseOp, rref_sparse
from .scalars import FieldScalar


class NicholsError(RuntimeError):
    """A structural fact about finite-dimensional Nichols algebras failed."""


class PairingError(NicholsError):
    pass


# --- braid lifts -----------------------------------------------------------------

def reduced_word(perm, strategy: str = "first") -> list[int]:
    """A reduced word (s_i = swap of positions i, i+1, 0-based) for ``perm``.

    ``perm = s_{w[0]} s_{w[1]} ...`` where the product composes as functions.
    """
    w = list(perm)
    word: list[int] = []
    while True:
        descents = [i for i in range(len(w) - 1) if w[i] > w[i + 1]]
        if not descents:
            break
        i = descents[0] if strategy == "first" else descents[-1]
        w[i], w[i + 1] = w[i + 1], w[i]
        word.append(i)
    word.reverse()
    return word


def braid_lift(c: Braiding, k: int, word) -> SparseOp:
    """T = c_{word[0]} c_{word[1]} ... as an operator on V^(x)k."""
    op = SparseOp.identity(c.n ** k, c.field)
    for i in reversed(list(word)):
        op = c.operator(k, i) @ op
    return op


def symmetrizer_bruteforce(c: Braiding, k: int) -> SparseOp:
    """Sum of braid lifts over all k! permutations."""
    total = SparseOp.zero(c.n ** k)
    for perm in permutations(range(k)):
        total = total + braid_lift(c, k, reduced_word(perm))
    return total


def unshuffle(c: Braiding, k: int) -> SparseOp:
    """U_k = sum_m c_{k-2} c_{k-3} ... c_m, so that S_k = (S_{k-1} (x) id) U_k.

    Read with the last tensor factor split off, U_k is the (k-1, 1) component of
    the braided comultiplication on the tensor algebra.
    """
    dim = c.n ** k
    total = SparseOp.identity(dim, c.field)
    acc = SparseOp.identity(dim, c.field)
    for m in range(k - 2, -1, -1):
        acc = acc @ c.operator(k, m)
        total = total + acc
    return total


def _tensor_id(op: SparseOp, n: int) -> SparseOp:
    """op (x) id_V."""
    cols = []
    for idx in range(op.dim * n):
        I, j = divmod(idx, n)
        cols.append({row * n + j: v for row, v in op.cols[I].items()})
    return SparseOp(op.dim * n, cols)


def symmetrizer(c: Braiding, k: int) -> SparseOp:
    """S_k via the factorisation S_k = (S_{k-1} (x) id) U_k."""
    op = SparseOp.identity(1, c.field)
    for m in range(1, k + 1):
        op = _tensor_id(op, c.n) @ unshuffle(c, m)
    return op


# --- graded data ------------------------------------------------------------------

@dataclass
class GradedComponent:
    degree: int
    dim: int
    basis_words: list  # multi-indices (0-based) whose classes form the basis
    proj_cols: list  # tensor index -> {basis position: coefficient}
    projection_rows: list = field(repr=False, default_factory=list)

    def project(self, vec: dict) -> dict:
        out: dict = {}
        for j, x in vec.items():
            for a, v in self.proj_cols[j].items():
                nv = out.get(a)
                nv = x * v if nv is None else nv + x * v
                if nv:
                    out[a] = nv
                else:
                    del out[a]
        return out


@dataclass
class NicholsData:
    braiding: Braiding  # the scaled braiding qc whose symmetrizers define B
    q: FieldScalar
    degrees: list
    top: int
    hilbert: list

    @property
    def n(self) -> int:
        return self.braiding.n

    @property
    def field(self):
        return self.braiding.field

    @property
    def b_vector(self) -> list:
        return [self.field.one]

    @property
    def b_word(self) -> tuple:
        return self.degrees[self.top].basis_words[0]

    def component(self, k: int) -> GradedComponent | None:
        return self.degrees[k] if 0 <= k <= self.top else None

    def word_index(self, word) -> int:
        idx = 0
        for i in word:
            idx = idx * self.n + i
        return idx

    def representative(self, k: int, coords: dict) -> dict:
        """Tensor representative sum coords[a] x_{basis_words[a]}."""
        comp = self.degrees[k]
        return {self.word_index(comp.basis_words[a]): v for a, v in coords.items() if v}

    def multiply(self, p: int, u: dict, q: int, v: dict) -> dict:
        """Product in B of degree-p coords ``u`` and degree-q coords ``v``."""
        if p + q > self.top:
            return {}
        ru, rv = self.representative(p, u), self.representative(q, v)
        shift = self.n ** q
        vec: dict = {}
        for I, x in ru.items():
            for J, y in rv.items():
                vec[I * shift + J] = vec.get(I * shift + J, self.field.zero) + x * y
        vec = {k: val for k, val in vec.items() if val}
        return self.degrees[p + q].project(vec)


@dataclass
class NotFiniteWithinBound:
    hilbert_prefix: list
    max_degree: int
    q: FieldScalar | None = None

    def __bool__(self) -> bool:
        return False


def graded_component(c: Braiding, k: int) -> GradedComponent:
    S = symmetrizer(c, k)
    reduced, pivots = rref_sparse(S.rows())
    dim = c.n ** k
    proj_cols: list = [dict() for _ in range(dim)]
    for a, row in enumerate(reduced):
        for j, v in row.items():
            proj_cols[j][a] = v
    words = [_digits(p, c.n, k) for p in pivots]
    return GradedComponent(k, len(pivots), words, proj_cols, reduced)


def _digits(idx: int, n: int, k: int) -> tuple:
    out = []
    for _ in range(k):
        idx, r = divmod(idx, n)
        out.append(r)
    return tuple(reversed(out))


def nichols_compute(c: Braiding, q, max_degree: int):
    """B(V, qc) up to ``max_degree``; NotFiniteWithinBound if no degree vanishes."""
    q = c.field(q)
    if not q:
        raise ValueError("the scalar q must be non-zero")
    if max_degree < 2:
        raise ValueError("max_degree must be at least 2")
    cq = scale(c, q)
    if not check_braid(cq):
        raise ValueError("input is not a solution of the braid equation")
    comps = []
    for k in range(0, max_degree + 1):
        comp = graded_component(cq, k)
        if comp.dim == 0:
            top = k - 1
            hilbert = [g.dim for g in comps] + [0]
            if comps[top].dim != 1:
                raise NicholsError(f"top degree {top} has dimension {comps[top].dim}, expected 1")
            return NicholsData(cq, q, comps, top, hilbert)
        comps.append(comp)
    return NotFiniteWithinBound([g.dim for g in comps], max_degree, q)


def check_poincare(N: NicholsData) -> bool:
    dims = N.hilbert[: N.top + 1]
    return dims == dims[::-1]


# --- pairing and coevaluation ---------------------------------------------------------

@dataclass
class PairingData:
    omega_basis: list  # coords of omega^j in the B^{top-1} basis (one dict per j)
    omega_hat_basis: list
    pairing_matrix: list  # x_i * omega_a = L[i][a] b, omega_a the raw basis
    m_matrix: list  # omega^i x_j = m[i][j] b
    coev_matrix_raw: list  # coev(b) = sum M[a][j] omega_a (x) x_j
    coev_matrix: list  # coev(b) = sum coev[i][j] omegahat^i (x) x_j (identity once normalised)
    dual_basis_ok: bool = True
    coev_normalised_ok: bool = True


def _b_coefficient(vec: dict, field) -> FieldScalar:
    return vec.get(0, field.zero)


def coevaluation_raw(N: NicholsData) -> list:
    """Matrix of (pi_{top-1} (x) id) U_top applied to a representative of b."""
    k, n, field = N.top, N.n, N.field
    rep = N.representative(k, {0: field.one})
    image = unshuffle(N.braiding, k).apply(rep)
    comp = N.degrees[k - 1]
    M = [[field.zero] * n for _ in range(comp.dim)]
    for idx, v in image.items():
        I, j = divmod(idx, n)
        for a, p in comp.proj_cols[I].items():
            M[a][j] = M[a][j] + v * p
    return M


def pairing_data(N: NicholsData) -> PairingData:
    k, n, field = N.top, N.n, N.field
    if k < 1:
        raise PairingError("pairing needs top degree >= 1")
    lower = N.degrees[k - 1]
    if lower.dim != n:
        raise PairingError(f"dim B^(top-1) = {lower.dim} differs from dim V = {n}")
    L = [[_b_coefficient(N.multiply(1, {i: field.one}, k - 1, {a: field.one}), field)
          for a in range(n)] for i in range(n)]
    try:
        W = linalg.inverse(L, field)
    except ZeroDivisionError:
        raise PairingError("multiplication pairing V (x) B^(top-1) -> B^top is degenerate") from None
    omega = [{a: W[a][j] for a in range(n) if W[a][j]} for j in range(n)]
    dual_ok = all(
        _b_coefficient(N.multiply(1, {i: field.one}, k - 1, omega[j]), field) == (1 if i == j else 0)
        for i in range(n) for j in range(n)
    )
    m = [[_b_coefficient(N.multiply(k - 1, omega[i], 1, {j: field.one}), field) for j in range(n)]
         for i in range(n)]
    M = coevaluation_raw(N)
    if not linalg.is_invertible(M):
        raise PairingError("coevaluation matrix is singular")
    omega_hat = [{a: M[a][j] for a in range(n) if M[a][j]} for j in range(n)]
    # re-express coev(b) in the omega-hat basis: M = Omegahat * coev  =>  coev = Omegahat^-1 M
    Oh = [[omega_hat[j].get(a, field.zero) for j in range(n)] for a in range(n)]
    coev = linalg.matmul(linalg.inverse(Oh, field), M, field)
    coev_ok = coev == linalg.identity(n, field)
    return PairingData(omega, omega_hat, L, m, M, coev, dual_ok, coev_ok)


def integral_coefficient(N: NicholsData, element: dict) -> FieldScalar:
    """Coefficient of b in ``element`` given as {degree: coords}."""
    top = element.get(N.top, {})
    return top.get(0, N.field.zero)


def matsumoto_consistent(c: Braiding, k: int) -> bool:
    """Lifts along the 'first descent' and 'last descent' reduced words agree."""
    for perm in permutations(range(k)):
        w1, w2 = reduced_word(perm, "first"), reduced_word(perm, "last")
        if w1 != w2 and braid_lift(c, k, w1) != braid_lift(c, k, w2):
            return False
    return True


def all_words(n: int, k: int):
    return product(range(n), repeat=k)
