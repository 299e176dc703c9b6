from __future__ import annotations

import pytest

from hopfcert.braiding import Braiding
from hopfcert.scalars import FieldSpec

Q = FieldSpec.rationals()
Z3 = FieldSpec.cyclotomic(3)


def drinfeld_jimbo(F: FieldSpec, q) -> Braiding:
    """Standard two-dimensional Hecke-type braiding with parameter q."""
    q = F(q)
    qinv = q.inverse()

    def f(i, j, k, l):
        if i == j:
            return q if (k, l) == (i, i) else 0
        if (k, l) == (j, i):
            return 1
        if i > j and (k, l) == (i, j):
            return q - qinv
        return 0

    return Braiding.from_function(2, F, f)


@pytest.fixture
def flip2():
    return Braiding.flip(2, Q)


@pytest.fixture
def dj3():
    return drinfeld_jimbo(Z3, Z3.gen())


_ACCEPTANCE: list = []


def record_acceptance(line: str) -> None:
    _ACCEPTANCE.append(line)


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
