"""Exact arithmetic in the rationals and in cyclotomic fields Q(z), z = exp(2*pi*i/m).

Elements of Q(z) are stored in the power basis 1, z, ..., z^(phi(m)-1), reduced
modulo the m-th cyclotomic polynomial, so equality is coefficientwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Union

__all__ = [
    "FieldSpec",
    "FieldScalar",
    "FieldMismatchError",
    "cyclotomic_polynomial",
    "primitive_root",
    "parse_scalar",
    "render_scalar",
]

RATIONALS = "Rationals"
CYCLOTOMIC = "Cyclotomic"


class FieldMismatchError(ValueError):
    """Raised when scalars from two different fields are combined."""


# --- dense univariate polynomials over Q, ascending coefficient lists --------

def _trim(p: list[Fraction]) -> list[Fraction]:
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _pdivmod(a, b):
    a = list(a)
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(_trim(a)) >= len(b):
        shift = len(a) - len(b)
        f = a[-1] / lead
        q[shift] = f
        for i, y in enumerate(b):
            a[shift + i] -= f * y
        a.pop()
    return _trim(q), _trim(a)


def _psub(a, b):
    n = max(len(a), len(b))
    return _trim([(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    """Phi_m as an ascending tuple of (integral) coefficients."""
    if m < 1:
        raise ValueError(f"cyclotomic order must be positive, got {m}")
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _pdivmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(num)


def _euler_phi(m: int) -> int:
    return sum(1 for k in range(1, m + 1) if gcd(k, m) == 1)


@lru_cache(maxsize=None)
def _reduction_table(m: int) -> tuple[tuple[Fraction, ...], ...]:
    # row k holds z^(phi + k) in the power basis, for k = 0 .. phi - 2
    phi_poly = cyclotomic_polynomial(m)
    phi = len(phi_poly) - 1
    rows = []
    cur = [-c for c in phi_poly[:-1]]  # z^phi
    for _ in range(max(phi - 1, 0)):
        rows.append(tuple(cur))
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            cur = [c + top * r for c, r in zip(cur, rows[0])]
    return tuple(rows)


@dataclass(frozen=True)
class FieldSpec:
    """Ground field: Q (order 1) or the cyclotomic field of conductor ``order``."""

    kind: str = RATIONALS
    order: int = 1

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("field order must be >= 1")
        if self.kind not in (RATIONALS, CYCLOTOMIC):
            raise ValueError(f"unknown field kind {self.kind!r}")
        if self.kind == CYCLOTOMIC and self.order <= 2:
            object.__setattr__(self, "kind", RATIONALS)
            object.__setattr__(self, "order", 1)
        if self.kind == RATIONALS and self.order != 1:
            raise ValueError("the rational field has order 1")

    @classmethod
    def rationals(cls) -> FieldSpec:
        return cls(RATIONALS, 1)

    @classmethod
    def cyclotomic(cls, m: int) -> FieldSpec:
        return cls(CYCLOTOMIC, m)

    @property
    def degree(self) -> int:
        return 1 if self.kind == RATIONALS else _euler_phi(self.order)

    def __call__(self, value) -> FieldScalar:
        return FieldScalar.coerce(self, value)

    @property
    def zero(self) -> FieldScalar:
        return FieldScalar(self, (Fraction(0),) * self.degree)

    @property
    def one(self) -> FieldScalar:
        return FieldScalar(self, (Fraction(1),) + (Fraction(0),) * (self.degree - 1))

    def gen(self) -> FieldScalar:
        """The power-basis generator z (equal to -1 over Q)."""
        if self.kind == RATIONALS:
            return FieldScalar(self, (Fraction(-1),))
        return FieldScalar.from_poly(self, [0, 1])

    def describe(self) -> str:
        return "Q" if self.kind == RATIONALS else f"Q(zeta_{self.order})"


Number = Union[int, Fraction]


class FieldScalar:
    """Immutable element of a :class:`FieldSpec`."""

    __slots__ = ("spec", "coeffs", "_hash")

    def __init__(self, spec: FieldSpec, coeffs):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != spec.degree:
            raise ValueError(f"expected {spec.degree} coordinates, got {len(coeffs)}")
        self.spec = spec
        self.coeffs = coeffs
        self._hash = None

    @classmethod
    def from_poly(cls, spec: FieldSpec, poly) -> FieldScalar:
        """Reduce an arbitrary polynomial in z modulo Phi_m."""
        poly = [Fraction(c) for c in poly]
        phi = spec.degree
        if spec.kind == RATIONALS:
            # z is read as -1 here so that primitive_root(2) round-trips
            return cls(spec, (sum(c * (-1) ** k for k, c in enumerate(poly)),))
        m = spec.order
        # z^m = 1 first, then fold the top phi-1 powers
        folded = [Fraction(0)] * m
        for k, c in enumerate(poly):
            folded[k % m] += c
        _, rem = _pdivmod(folded, list(cyclotomic_polynomial(m)))
        rem = rem + [Fraction(0)] * (phi - len(rem))
        return cls(spec, rem)

    @classmethod
    def coerce(cls, spec: FieldSpec, value) -> FieldScalar:
        if isinstance(value, FieldScalar):
            if value.spec != spec:
                raise FieldMismatchError(f"{value.spec.describe()} vs {spec.describe()}")
            return value
        if isinstance(value, str):
            return parse_scalar(value, spec)
        if isinstance(value, (int, Fraction)):
            return cls(spec, (Fraction(value),) + (Fraction(0),) * (spec.degree - 1))
        raise TypeError(f"cannot coerce {type(value).__name__} to a field scalar")

    def _other(self, other) -> FieldScalar | None:
        if isinstance(other, FieldScalar):
            if other.spec is not self.spec and other.spec != self.spec:
                raise FieldMismatchError(f"{self.spec.describe()} vs {other.spec.describe()}")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldScalar.coerce(self.spec, other)
        return None

    # --- predicates ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldScalar):
            return self.spec == other.spec and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs[0]) if self.is_rational() else hash(self.coeffs)
        return self._hash

    # --- arithmetic ----------------------------------------------------------
    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldScalar(self.spec, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldScalar(self.spec, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return FieldScalar(self.spec, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        phi = len(a)
        if phi == 1:
            return FieldScalar(self.spec, (a[0] * b[0],))
        prod = [Fraction(0)] * (2 * phi - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        low = prod[:phi]
        for k, row in enumerate(_reduction_table(self.spec.order)):
            c = prod[phi + k]
            if c:
                for i in range(phi):
                    low[i] += c * row[i]
        return FieldScalar(self.spec, low)

    __rmul__ = __mul__

    def inverse(self) -> FieldScalar:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero field element")
        if len(self.coeffs) == 1:
            return FieldScalar(self.spec, (1 / self.coeffs[0],))
        # extended Euclid: s*a + t*Phi = g, g a nonzero constant
        modulus = list(cyclotomic_polynomial(self.spec.order))
        r0, r1 = modulus, _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        g = r1[0]
        return FieldScalar.from_poly(self.spec, [c / g for c in s1])

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        out = self.spec.one
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __repr__(self) -> str:
        return f"FieldScalar({self.spec.describe()}, {render_scalar(self)!r})"

    def __str__(self) -> str:
        return render_scalar(self)


def primitive_root(spec: FieldSpec, order: int | None = None) -> FieldScalar:
    """An element of exact multiplicative order ``order`` (default: the conductor).

    For the cyclotomic field of conductor m and order m this is z itself.
    """
    if order is None:
        order = spec.order if spec.kind == CYCLOTOMIC else 2
    if order < 1:
        raise ValueError("root order must be positive")
    if order == 1:
        return spec.one
    if spec.kind == RATIONALS:
        if order == 2:
            return -spec.one
        raise ValueError(f"Q has no primitive root of unity of order {order}")
    if order == spec.order:
        return spec.gen()
    z = spec.gen()
    for sign in (1, -1):
        for j in range(spec.order):
            cand = z ** j * sign
            if multiplicative_order(cand, limit=2 * spec.order) == order:
                return cand
    raise ValueError(f"{spec.describe()} contains no primitive root of unity of order {order}")


def multiplicative_order(a: FieldScalar, limit: int = 1000) -> int | None:
    if a.is_zero():
        return None
    p = a
    for k in range(1, limit + 1):
        if p == 1:
            return k
        p = p * a
    return None


# --- text format ---------------------------------------------------------------

def render_scalar(a: FieldScalar) -> str:
    """Power-basis text such as ``1 - z + 1/2*z^3``; parse_scalar reads it back."""
    parts = []
    for k, c in enumerate(a.coeffs):
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            power = "z" if k == 1 else f"z^{k}"
            body = power if mag == 1 else f"{mag}*{power}"
        if not parts:
            parts.append(f"-{body}" if c < 0 else body)
        else:
            parts.append(f"- {body}" if c < 0 else f"+ {body}")
    return " ".join(parts) if parts else "0"


_TOKEN = re.compile(r"\s*(?:(\d+)|(z)|(\*\*|[-+*/^()]))")


def parse_scalar(text: str, spec: FieldSpec) -> FieldScalar:
    """Parse arithmetic in integers and ``z`` (+, -, *, /, ^, parentheses)."""
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"bad scalar syntax at {text[pos:]!r} in {text!r}")
        num, sym, op = m.groups()
        tokens.append(("num", int(num)) if num else ("z", None) if sym else ("op", "^" if op == "**" else op))
        pos = m.end()
    if not tokens:
        raise ValueError("empty scalar")
    if spec.kind == RATIONALS and any(t[0] == "z" for t in tokens):
        raise ValueError(f"symbol z used in a rational field: {text!r}")
    p = _Parser(tokens, spec)
    val = p.expr()
    if p.i != len(tokens):
        raise ValueError(f"trailing input in scalar {text!r}")
    return val


class _Parser:
    def __init__(self, tokens, spec):
        self.t, self.i, self.spec = tokens, 0, spec

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self, op):
        if self.peek() == ("op", op):
            self.i += 1
            return True
        return False

    def expr(self):
        val = self.term()
        while True:
            if self.take("+"):
                val = val + self.term()
            elif self.take("-"):
                val = val - self.term()
            else:
                return val

    def term(self):
        val = self.unary()
        while True:
            if self.take("*"):
                val = val * self.unary()
            elif self.take("/"):
                val = val / self.unary()
            else:
                return val

    def unary(self):
        if self.take("-"):
            return -self.unary()
        if self.take("+"):
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.take("^"):
            neg = self.take("-")
            kind, val = self.peek()
            if kind != "num":
                raise ValueError("exponent must be an integer literal")
            self.i += 1
            return base ** (-val if neg else val)
        return base

    def atom(self):
        kind, val = self.peek()
        if kind == "num":
            self.i += 1
            return self.spec(val)
        if kind == "z":
            self.i += 1
            return self.spec.gen()
        if self.take("("):
            v = self.expr()
            if not self.take(")"):
                raise ValueError("unbalanced parentheses")
            return v
        raise ValueError(f"unexpected token {val!r}")
