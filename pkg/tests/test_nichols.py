from __future__ import annotations

from itertools import permutations

import pytest

from conftest import Q, Z3, drinfeld_jimbo
from hopfcert.braiding import Braiding, scale
from hopfcert.linalg import SparseOp, rref_sparse
from hopfcert.nichols import (
    NicholsError,
    NotFiniteWithinBound,
    PairingError,
    braid_lift,
    check_poincare,
    coevaluation_raw,
    graded_component,
    integral_coefficient,
    matsumoto_consistent,
    nichols_compute,
    pairing_data,
    reduced_word,
    symmetrizer,
    symmetrizer_bruteforce,
)
from hopfcert.scalars import FieldSpec
from oracles import nichols_dims_bruteforce

Z4 = FieldSpec.cyclotomic(4)


def test_small_symmetrizers(flip2):
    c = scale(flip2, -1)
    S2 = symmetrizer(c, 2)
    assert S2 == SparseOp.identity(4, Q) + c.operator(2, 0)
    assert S2.rank() == 1
    assert symmetrizer(flip2, 3).rank() == 4
    assert symmetrizer(c, 0).dim == 1 and symmetrizer(c, 1) == SparseOp.identity(2, Q)


@pytest.mark.parametrize("k", [2, 3, 4])
def test_factorised_symmetrizer_equals_sum_over_lifts(dj3, k):
    c = scale(dj3, -Z3.gen() ** 2)
    assert symmetrizer(c, k) == symmetrizer_bruteforce(c, k)


@pytest.mark.parametrize("k", [3, 4])
def test_matsumoto_consistency(dj3, k):
    assert matsumoto_consistent(dj3, k)
    longest = tuple(range(k - 1, -1, -1))
    w1, w2 = reduced_word(longest, "first"), reduced_word(longest, "last")
    assert w1 != w2 and len(w1) == k * (k - 1) // 2
    assert braid_lift(dj3, k, w1) == braid_lift(dj3, k, w2)


def test_reduced_words_are_reduced_and_correct():
    for perm in permutations(range(4)):
        inversions = sum(1 for i in range(4) for j in range(i + 1, 4) if perm[i] > perm[j])
        for strategy in ("first", "last"):
            w = reduced_word(perm, strategy)
            assert len(w) == inversions
            arr = list(range(4))
            for i in w:
                arr[i], arr[i + 1] = arr[i + 1], arr[i]
            assert tuple(arr) == perm


def test_rank_one_examples():
    N = nichols_compute(Braiding.diagonal(Q, [[1]]), -1, 6)
    assert N.hilbert == [1, 1, 0] and N.top == 1
    z = Z3.gen()
    N3 = nichols_compute(Braiding.diagonal(Z3, [[1]]), z, 6)
    assert N3.hilbert == [1, 1, 1, 0] and N3.top == 2
    N4 = nichols_compute(Braiding.diagonal(Z4, [[1]]), Z4.gen(), 6)
    assert N4.hilbert == [1, 1, 1, 1, 0]


def test_braided_factorial_for_cube_root():
    z = Z3.gen()
    c = Braiding.diagonal(Z3, [[z]])
    assert symmetrizer(c, 2).entry(0, 0, Z3) == 1 + z
    assert symmetrizer(c, 3).is_zero()


def test_exterior_algebra(flip2):
    N = nichols_compute(flip2, -1, 6)
    assert N.hilbert == [1, 2, 1, 0] and N.top == 2
    assert N.b_word == (0, 1)
    P = pairing_data(N)
    assert P.omega_basis == [{1: Q(1)}, {0: Q(-1)}]
    assert P.dual_basis_ok and P.coev_normalised_ok


def test_infinite_returns_structured_result(flip2):
    res = nichols_compute(flip2, 1, 6)
    assert isinstance(res, NotFiniteWithinBound) and not res
    assert res.hilbert_prefix == [1, 2, 3, 4, 5, 6, 7]


def test_argument_errors(flip2):
    with pytest.raises(ValueError):
        nichols_compute(flip2, 0, 6)
    with pytest.raises(ValueError):
        nichols_compute(flip2, -1, 1)


def test_partially_infinite_case():
    # x_1 is nilpotent but x_2 generates a polynomial ring
    c = Braiding.diagonal(Q, [[-1, 1], [1, 1]])
    res = nichols_compute(c, 1, 5)
    assert isinstance(res, NotFiniteWithinBound)
    assert res.hilbert_prefix == [1, 2, 2, 2, 2, 2]


FINITE_CASES = [
    ("exterior", lambda: (Braiding.flip(2, Q), -1)),
    ("exterior3", lambda: (Braiding.flip(3, Q), -1)),
    ("rank1_z3", lambda: (Braiding.diagonal(Z3, [[1]]), Z3.gen())),
    ("diag_z3", lambda: (Braiding.diagonal(Z3, [[Z3.gen(), 1], [1, Z3.gen()]]), 1)),
    ("quantum_plane", lambda: (drinfeld_jimbo(Z3, Z3.gen()), -Z3.gen() ** 2)),
    ("skew", lambda: (Braiding.diagonal(Z3, [[-1, Z3.gen()], [Z3.gen() ** 2, -1]]), 1)),
]


@pytest.mark.parametrize("name, make", FINITE_CASES)
def test_structural_invariants(name, make):
    c, q = make()
    N = nichols_compute(c, q, 8)
    assert N
    assert N.hilbert[0] == 1 and N.hilbert[1] == c.n
    assert N.degrees[N.top].dim == 1
    assert check_poincare(N)
    P = pairing_data(N)
    assert P.dual_basis_ok and P.coev_normalised_ok
    F = c.field
    for i in range(c.n):
        for j in range(c.n):
            prod = N.multiply(1, {i: F.one}, N.top - 1, P.omega_basis[j])
            assert prod.get(0, F.zero) == (1 if i == j else 0)


@pytest.mark.parametrize("name, make", [FINITE_CASES[0], FINITE_CASES[4], FINITE_CASES[5]])
def test_dimensions_match_bruteforce(name, make):
    c, q = make()
    qc = scale(c, q)
    N = nichols_compute(c, q, 4)
    expected = nichols_dims_bruteforce(qc, 4)
    got = [N.degrees[k].dim if k <= N.top else 0 for k in range(5)]
    assert got == expected


def test_bruteforce_dims_of_infinite_case(flip2):
    res = nichols_compute(flip2, 1, 4)
    assert res.hilbert_prefix[:5] == nichols_dims_bruteforce(flip2, 4)


def _kernel(op, F) -> list:
    reduced, pivots = rref_sparse(op.rows())
    free = [j for j in range(op.dim) if j not in set(pivots)]
    out = []
    for f in free:
        v = {f: F.one}
        for row, p in zip(reduced, pivots):
            if f in row:
                v[p] = -row[f]
        out.append(v)
    return out


@pytest.mark.parametrize("name, make", [FINITE_CASES[3], FINITE_CASES[5]])
def test_kernel_of_symmetrizer_is_an_ideal(name, make):
    """Products in B do not depend on the representative modulo ker S_2."""
    c, q = make()
    N = nichols_compute(c, q, 8)
    F, n = c.field, c.n
    kernel = _kernel(symmetrizer(N.braiding, 2), F)
    assert kernel
    deg3 = graded_component(N.braiding, 3)
    for kv in kernel:
        assert not symmetrizer(N.braiding, 2).apply(kv)
        assert not N.degrees[2].project(kv)
        for i in range(n):
            left = {i * n * n + idx: x for idx, x in kv.items()}
            right = {idx * n + i: x for idx, x in kv.items()}
            assert not deg3.project(left)
            assert not deg3.project(right)


def test_coevaluation_exterior(flip2):
    # U_2(x_1 (x) x_2) = x_1 (x) x_2 - x_2 (x) x_1
    N = nichols_compute(flip2, -1, 6)
    assert coevaluation_raw(N) == [[Q(0), Q(1)], [Q(-1), Q(0)]]


def test_integral_coefficient(flip2):
    N = nichols_compute(flip2, -1, 6)
    assert integral_coefficient(N, {0: {0: Q(3)}, 2: {0: Q(-5)}}) == -5
    assert integral_coefficient(N, {1: {0: Q(1)}}) == 0


def test_nichols_error_type():
    assert issubclass(PairingError, NicholsError)
