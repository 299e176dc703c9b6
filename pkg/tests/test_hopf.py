from __future__ import annotations

import pytest

from conftest import Q, Z3, drinfeld_jimbo
from hopfcert.bialgebra import dvl_bialgebra, frt_bialgebra
from hopfcert.braiding import BilinearForm, Braiding
from hopfcert.hopf import (
    NOT_IMPLIED,
    PROBE_INCONCLUSIVE,
    REDUNDANT,
    LocalizationError,
    antipode_residuals,
    dvl_antipode,
    localize,
    opposite_relation_residuals,
    redundancy_probe,
    verify_hopf,
)
from pipelines import run
from test_corep import CASES


def test_localize_polynomial_ring():
    A = frt_bialgebra(Braiding.diagonal(Q, [[1]]), 4)
    t = A.t(0, 0)
    L = localize(A, t)
    T, Ti = L.t(0, 0), L.dinv_poly
    assert L.rewrite.reduce_poly(T * T * T * Ti) == T * T
    assert not L.rewrite.reduce_poly(Ti * T - 1)


def test_localize_exterior_commutes_dinv(flip2):
    A = frt_bialgebra(flip2, 6)
    D = A.t(0, 0) * A.t(1, 1) - A.t(0, 1) * A.t(1, 0)
    L = localize(A, D)
    R = L.rewrite
    assert not R.reduce_poly(L.dinv_poly * L.D - 1)
    assert not R.reduce_poly(L.D * L.dinv_poly - 1)
    for i in range(2):
        for j in range(2):
            assert not R.reduce_poly(L.dinv_poly * L.t(i, j) - L.t(i, j) * L.dinv_poly)


def test_localize_rejects_bad_elements(flip2):
    A = frt_bialgebra(flip2, 4)
    with pytest.raises(LocalizationError):
        localize(A, A.zero())
    with pytest.raises(LocalizationError):
        localize(A, A.t(0, 0) + A.t(0, 1))


def test_exterior_antipode():
    r = run(*CASES["exterior"]())
    L, S = r.L, r.S
    assert S.image("t[1][1]") == L.t(1, 1) * L.dinv_poly
    assert S.image("t[1][2]") == -(L.t(0, 1) * L.dinv_poly)
    assert S.image("Dinv") == L.D
    assert not L.rewrite.reduce_poly(S(L.D) - L.dinv_poly)


def test_rank_one_antipodes_are_inverses():
    for name in ("rank1_minus1", "rank1_z3"):
        r = run(*CASES[name]())
        L, S = r.L, r.S
        t = L.t(0, 0)
        assert not L.rewrite.reduce_poly(S(t) * t - 1)
        assert not L.rewrite.reduce_poly(t * S(t) - 1)


@pytest.mark.parametrize("name", sorted(CASES))
def test_verify_hopf_on_corpus(name):
    r = run(*CASES[name]())
    stage = verify_hopf(r.L, r.S)
    assert stage.ok, stage.witness
    residuals = antipode_residuals(r.L, r.S)
    assert len([k for k in residuals if k.startswith("sum_k")]) == 2 * r.L.n ** 2
    opposite = opposite_relation_residuals(r.L, r.S)
    assert len([k for k in opposite if k.startswith("opposite")]) == r.L.n ** 4


def test_opposite_relations_in_quantum_plane():
    r = run(*CASES["quantum_plane"]())
    for label, p in opposite_relation_residuals(r.L, r.S).items():
        assert not r.L.rewrite.reduce_poly(p), label


def test_swapped_images_fail():
    r = run(*CASES["exterior"]())
    S = r.S.corrupted("t[1][1]", r.S.image("t[2][2]")).corrupted("t[2][2]", r.S.image("t[1][1]"))
    stage = verify_hopf(r.L, S)
    assert not stage.ok
    assert any(k.startswith("sum_k") for k in stage.witness)


@pytest.mark.parametrize("B", [[[1]], [[1, 0], [0, 1]], [[0, 1], [-1, 0]], [[2, 1], [1, 1]]])
def test_dvl_antipodes(B):
    b = BilinearForm(Q, B)
    A = dvl_bialgebra(b, 6)
    S, stage = dvl_antipode(A, b)
    assert stage.ok, stage.witness
    n = b.n
    for i in range(n):
        for j in range(n):
            acc = A.zero()
            for k in range(n):
                for l in range(n):
                    f = b.B[i][k] * b.Binv[l][j]
                    if f:
                        acc = acc + A.t(l, k).scale(f)
            assert S.images[i * n + j] == acc


def test_dvl_identity_antipode_is_transpose():
    b = BilinearForm(Q, [[1, 0], [0, 1]])
    A = dvl_bialgebra(b, 6)
    S, _ = dvl_antipode(A, b)
    assert S.image("t[1][2]") == A.t(1, 0)


def test_dvl_family1_alone_does_not_certify():
    b = BilinearForm(Q, [[1, 0], [0, 1]])
    A = dvl_bialgebra(b, 6, families=("family1",))
    _, stage = dvl_antipode(A, b)
    assert not stage.ok


def test_probe_rank_one_redundant():
    res = redundancy_probe(BilinearForm(Q, [[1]]), 6)
    assert res.summary == REDUNDANT.format(d=6)
    assert res.to_stage().ok


VOCAB = {REDUNDANT.format(d=6), NOT_IMPLIED.format(d=6), PROBE_INCONCLUSIVE}


@pytest.mark.parametrize("B, F", [
    ([[1, 0], [0, 1]], Q),
    ([[0, 1], [Z3.gen(), 0]], Z3),
    ([[0, 1], [-1, 0]], Q),
])
def test_probe_reports(B, F):
    res = redundancy_probe(BilinearForm(F, B), 6)
    assert res.summary in VOCAB
    assert len(res.entries) == 4
    for e in res.entries:
        assert e["status"] in VOCAB
        assert (e["normal_form"] == "0") == (e["status"] == REDUNDANT.format(d=6))


def test_grouplike_images_in_residuals():
    r = run(*CASES["rank1_z3"]())
    labels = set(antipode_residuals(r.L, r.S))
    assert {"Dinv*S(Dinv) - 1", "S(Dinv)*Dinv - 1", "D*S(D) - 1", "S(D) - Dinv"} <= labels


def test_drinfeld_jimbo_quantum_determinant():
    r = run(drinfeld_jimbo(Z3, Z3.gen()), -Z3.gen() ** 2)
    z = Z3.gen()
    t = lambda i, j: r.A.t(i - 1, j - 1)  # noqa: E731
    # the q-determinant t11 t22 - q^-1 t12 t21, with 1 + z = -z^2 = -q^-1
    expected = t(1, 1) * t(2, 2) + (t(1, 2) * t(2, 1)).scale(1 + z)
    assert r.D == expected
