"""The A(c)-coaction on the Nichols algebra, the quantum determinant and the
corepresentation matrices T, That on B^(top-1).

rho(x_i) = sum_j t_ij (x) x_j, extended multiplicatively. A-side results are
kept unreduced; only the verification functions take normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import linalg
from .bialgebra import PresentedBialgebra, check_grouplike
from .freealg import NcPoly
from .nichols import NicholsData, PairingData, coevaluation_raw
from .report import CERTIFIED, FAILED, Stage


class CorepError(RuntimeError):
    pass


def _word_t(n: int, I, J) -> tuple:
    return tuple(i * n + j for i, j in zip(I, J))


def coaction(A: PresentedBialgebra, N: NicholsData, k: int, v: dict) -> list:
    """rho(v) for v in B^k (coords in the degree-k basis).

    Returns the A-coefficients, one NcPoly per basis element of B^k.
    """
    comp = N.component(k)
    if comp is None:
        raise CorepError(f"degree {k} is outside 0..{N.top}")
    if A.n != N.n:
        raise CorepError("bialgebra and Nichols algebra act on spaces of different dimension")
    for a in v:
        if not 0 <= a < comp.dim:
            raise CorepError(f"coordinate {a} out of range for B^{k}")
    n, field = N.n, N.field
    out = [dict() for _ in range(comp.dim)]
    rep = N.representative(k, v)
    for I_idx, x in rep.items():
        I = _digits(I_idx, n, k)
        for J in product(range(n), repeat=k):
            proj = comp.proj_cols[N.word_index(J)]
            if not proj:
                continue
            w = _word_t(n, I, J)
            for a, p in proj.items():
                c = x * p
                old = out[a].get(w)
                nv = c if old is None else old + c
                if nv:
                    out[a][w] = nv
                else:
                    out[a].pop(w, None)
    return [NcPoly._raw(A.alphabet, field, terms) for terms in out]


def _digits(idx: int, n: int, k: int) -> tuple:
    out = []
    for _ in range(k):
        idx, r = divmod(idx, n)
        out.append(r)
    return tuple(reversed(out))


def quantum_determinant(A: PresentedBialgebra, N: NicholsData, b=None, check: bool = True) -> NcPoly:
    """D with rho(b) = D (x) b. ``b`` is an optional non-zero rescaling of the top basis vector."""
    field = N.field
    lam = field.one if b is None else field(b)
    if not lam:
        raise CorepError("the top-degree vector must be non-zero")
    coeffs = coaction(A, N, N.top, {0: lam})
    if len(coeffs) != 1:
        raise CorepError("top degree is not one-dimensional")
    D = coeffs[0].scale(lam.inverse())
    if check:
        g = check_grouplike(A, D)
        if not g:
            raise CorepError(f"quantum determinant is not group-like: residual {g.residual}, eps = {g.counit}")
    return D


@dataclass
class CorepData:
    D: NcPoly
    T: list  # rho(omega^j) = sum_k T[j][k] (x) omega^k
    That: list  # rho(omegahat^j) = sum_k That[j][k] (x) omegahat^k
    t_matrix: list


def _reexpress(ys: list, basis_cols, field) -> list:
    """Coordinates over a new basis whose vectors are columns of ``basis_cols``."""
    inv = linalg.inverse(basis_cols, field)
    n = len(inv)
    out = []
    for k in range(n):
        acc = None
        for a in range(n):
            f = inv[k][a]
            if f:
                term = ys[a].scale(f)
                acc = term if acc is None else acc + term
        out.append(acc if acc is not None else ys[0].scale(0))
    return out


def _basis_matrix(vectors: list, dim: int, field) -> list:
    return [[vectors[j].get(a, field.zero) for j in range(len(vectors))] for a in range(dim)]


def corep_matrices(A: PresentedBialgebra, N: NicholsData, P: PairingData, D: NcPoly | None = None) -> CorepData:
    field = N.field
    k = N.top - 1
    dim = N.degrees[k].dim
    if D is None:
        D = quantum_determinant(A, N)
    Om = _basis_matrix(P.omega_basis, dim, field)
    Oh = _basis_matrix(P.omega_hat_basis, dim, field)
    T = [_reexpress(coaction(A, N, k, P.omega_basis[j]), Om, field) for j in range(dim)]
    That = [_reexpress(coaction(A, N, k, P.omega_hat_basis[j]), Oh, field) for j in range(dim)]
    return CorepData(D, T, That, A.t_matrix())


def determinant_residuals(C: CorepData, A: PresentedBialgebra):
    """Unreduced entries of t T^tr - D Id and That^tr t - D Id."""
    n = A.n
    t = C.t_matrix
    right, left = {}, {}
    for i in range(n):
        for j in range(n):
            acc = C.D.scale(-1) if i == j else A.zero()
            for k in range(n):
                acc = acc + t[i][k] * C.T[j][k]
            right[(i, j)] = acc
    for j in range(n):
        for k in range(n):
            acc = C.D.scale(-1) if j == k else A.zero()
            for i in range(n):
                acc = acc + C.That[i][j] * t[i][k]
            left[(j, k)] = acc
    return right, left


def verify_determinant_identities(C: CorepData, A: PresentedBialgebra) -> Stage:
    R = A.rewrite
    right, left = determinant_residuals(C, A)
    failures = {}
    max_deg = 0
    for label, table in (("t*T^tr - D*Id", right), ("That^tr*t - D*Id", left)):
        for (i, j), p in sorted(table.items()):
            max_deg = max(max_deg, p.degree)
            nf = R.reduce_poly(p)
            if nf:
                failures[f"{label} ({i + 1},{j + 1})"] = nf.render()
    witness = {"rules": len(R.rules), "entries": 2 * A.n * A.n, "max_entry_degree": max_deg}
    if failures:
        witness.update(failures)
        return Stage("determinant identities", FAILED, R.complete_below, witness)
    return Stage("determinant identities", CERTIFIED, R.complete_below, witness,
                 f"t*T^tr = D*Id = That^tr*t verified up to degree {R.complete_below}")


def check_colinearity(A: PresentedBialgebra, N: NicholsData, P: PairingData, D: NcPoly) -> Stage:
    """Multiplication V (x) B^(top-1) -> B^top and coev are comodule maps."""
    R = A.rewrite
    n, field, k = N.n, N.field, N.top
    lower = N.degrees[k - 1].dim
    failures = {}
    checks = 0
    rho_x = [coaction(A, N, 1, {i: field.one}) for i in range(n)]
    rho_w = [coaction(A, N, k - 1, {a: field.one}) for a in range(lower)]
    for i in range(n):
        for a in range(lower):
            prod = N.multiply(1, {i: field.one}, k - 1, {a: field.one})
            lhs = coaction(A, N, k, prod)[0] if prod else A.zero()
            rhs = A.zero()
            for i2 in range(n):
                for a2 in range(lower):
                    m = N.multiply(1, {i2: field.one}, k - 1, {a2: field.one}).get(0)
                    if m:
                        rhs = rhs + (rho_x[i][i2] * rho_w[a][a2]).scale(m)
            checks += 1
            nf = R.reduce_poly(lhs - rhs)
            if nf:
                failures[f"mult x_{i + 1}*w_{a + 1}"] = nf.render()
    # rho(coev(b)) against (1 (x) coev) rho(b) = D (x) coev(b)
    M = coevaluation_raw(N)
    for a2 in range(lower):
        for j2 in range(n):
            lhs = A.zero()
            for a in range(lower):
                for j in range(n):
                    if M[a][j]:
                        lhs = lhs + (rho_w[a][a2] * rho_x[j][j2]).scale(M[a][j])
            rhs = D.scale(M[a2][j2]) if M[a2][j2] else A.zero()
            checks += 1
            nf = R.reduce_poly(lhs - rhs)
            if nf:
                failures[f"coev w_{a2 + 1} (x) x_{j2 + 1}"] = nf.render()
    witness = {"checks": checks}
    if failures:
        witness.update(failures)
        return Stage("colinearity", FAILED, R.complete_below, witness)
    return Stage("colinearity", CERTIFIED, R.complete_below, witness)
