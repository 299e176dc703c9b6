"""Presented bialgebras on matrix generators t[i][j].

Delta(t_ij) = sum_k t_ik (x) t_kj and eps(t_ij) = delta_ij on every builder.
Tensor squares are encoded in a doubled alphabet: primed letters (left factor)
followed by double-primed letters (right factor), with rules moving every
double-primed letter to the right of every primed one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Mapping

from .braiding import BilinearForm, Braiding, BraidingError, check_braid
from .freealg import (
    GROUPLIKE,
    GROUPLIKE_INVERSE,
    MATRIX,
    Alphabet,
    GenSymbol,
    MonomialOrder,
    NcPoly,
    RewriteSystem,
    complete,
)
from .scalars import FieldSpec


@dataclass
class LinearMapSpec:
    """f: V^(x)n1 -> V^(x)n2 with f(x_I) = sum_J coeffs[I][J] x_J (0-based multi-indices)."""

    n: int
    n1: int
    n2: int
    coeffs: Mapping  # I -> {J: scalar}
    label: str = "f"

    def __post_init__(self):
        for I, row in self.coeffs.items():
            if len(I) != self.n1 or any(not 0 <= i < self.n for i in I):
                raise ValueError(f"bad source multi-index {I} for {self.label}")
            for J in row:
                if len(J) != self.n2 or any(not 0 <= j < self.n for j in J):
                    raise ValueError(f"bad target multi-index {J} for {self.label}")

    def entry(self, I, J):
        return self.coeffs.get(tuple(I), {}).get(tuple(J), 0)

    @classmethod
    def from_braiding(cls, c: Braiding) -> LinearMapSpec:
        n = c.n
        coeffs = {}
        for i, j in product(range(n), repeat=2):
            coeffs[(i, j)] = {(k, l): c.entries[i][j][k][l]
                              for k, l in product(range(n), repeat=2) if c.entries[i][j][k][l]}
        return cls(n, 2, 2, coeffs, "c")

    @classmethod
    def evaluation(cls, b: BilinearForm) -> LinearMapSpec:
        """x_i (x) x_j -> b_ij."""
        n = b.n
        coeffs = {(i, j): ({(): b.B[i][j]} if b.B[i][j] else {}) for i, j in product(range(n), repeat=2)}
        return cls(n, 2, 0, coeffs, "b")

    @classmethod
    def coevaluation(cls, b: BilinearForm) -> LinearMapSpec:
        """1 -> sum_ij b^ij x_i (x) x_j."""
        n = b.n
        row = {(i, j): b.Binv[i][j] for i, j in product(range(n), repeat=2) if b.Binv[i][j]}
        return cls(n, 0, 2, {(): row}, "i_b")

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> LinearMapSpec:
        return cls(n, 1, 1, {(i,): {(i,): field.one} for i in range(n)}, "id")


@dataclass
class PresentedBialgebra:
    n: int
    field: FieldSpec
    alphabet: Alphabet
    relations: list
    rewrite: RewriteSystem
    comul_degree_bound: int
    kind: str = "universal"
    families: dict = field(default_factory=dict)
    flags: list = field(default_factory=list)
    braiding: Braiding | None = None
    bilinear_form: BilinearForm | None = None

    def t(self, i: int, j: int) -> NcPoly:
        """Generator t[i+1][j+1] (0-based arguments)."""
        return NcPoly._raw(self.alphabet, self.field, {(i * self.n + j,): self.field.one})

    def t_matrix(self):
        return [[self.t(i, j) for j in range(self.n)] for i in range(self.n)]

    def one(self) -> NcPoly:
        return NcPoly.one(self.alphabet, self.field)

    def zero(self) -> NcPoly:
        return NcPoly.zero(self.alphabet, self.field)

    def reduce(self, p: NcPoly) -> NcPoly:
        return self.rewrite.reduce_poly(p)


def _word_gens(n: int, I, J):
    return tuple(i * n + j for i, j in zip(I, J))


def ideal_generators(f: LinearMapSpec, alphabet: Alphabet, field: FieldSpec) -> list:
    """sum_J (t_I^J f_J^K - f_I^J t_J^K) for every (I, K), zero elements dropped."""
    n = f.n
    out = []
    for I in product(range(n), repeat=f.n1):
        for K in product(range(n), repeat=f.n2):
            terms: dict = {}
            for J in product(range(n), repeat=f.n1):
                v = f.entry(J, K)
                if v:
                    _acc(terms, _word_gens(n, I, J), field(v))
            for J in product(range(n), repeat=f.n2):
                v = f.entry(I, J)
                if v:
                    _acc(terms, _word_gens(n, J, K), -field(v))
            p = NcPoly._raw(alphabet, field, terms)
            if p:
                out.append(((I, K), p))
    return out


def _acc(terms: dict, w, c) -> None:
    old = terms.get(w)
    nv = c if old is None else old + c
    if nv:
        terms[w] = nv
    else:
        terms.pop(w, None)


def universal_bialgebra(maps, d: int, n: int | None = None, field: FieldSpec | None = None,
                        order: MonomialOrder | None = None) -> PresentedBialgebra:
    maps = list(maps)
    flags = []
    if maps:
        n = maps[0].n
        if any(f.n != n for f in maps):
            raise ValueError("all maps must act on the same space V")
    elif n is None or field is None:
        raise ValueError("n and field are required when no maps are given")
    if field is None:
        field = _infer_field(maps)
    if not maps:
        flags.append("no maps given: free bialgebra")
    need = max((max(f.n1, f.n2) for f in maps), default=0)
    if d < need:
        raise ValueError(f"truncation degree {d} is below the relation degree {need}")
    alphabet = Alphabet.matrix(n)
    families = {}
    relations = []
    for f in maps:
        gens = ideal_generators(f, alphabet, field)
        families[f.label] = gens
        relations.extend(p for _, p in gens)
    R = complete(relations, d, order or MonomialOrder(), alphabet, field)
    return PresentedBialgebra(n, field, alphabet, relations, R, d, "universal", families, flags)


def _infer_field(maps) -> FieldSpec:
    for f in maps:
        for row in f.coeffs.values():
            for v in row.values():
                if hasattr(v, "spec"):
                    return v.spec
    return FieldSpec.rationals()


def frt_relations(c: Braiding, alphabet: Alphabet) -> list:
    """sum t_ik t_jl c_kl^rs - sum c_ij^kl t_kr t_ls for each (i, j, r, s); zeros dropped."""
    n, field = c.n, c.field
    out = []
    for i, j, r, s in product(range(n), repeat=4):
        terms: dict = {}
        for k, l in product(range(n), repeat=2):
            v = c.entries[k][l][r][s]
            if v:
                _acc(terms, (i * n + k, j * n + l), v)
            v = c.entries[i][j][k][l]
            if v:
                _acc(terms, (k * n + r, l * n + s), -v)
        p = NcPoly._raw(alphabet, field, terms)
        if p:
            out.append(((i, j, r, s), p))
    return out


def frt_bialgebra(c: Braiding, d: int, order: MonomialOrder | None = None) -> PresentedBialgebra:
    chk = check_braid(c)
    if not chk:
        raise BraidingError(f"not a solution of the braid equation; witness {chk.witness}")
    if d < 2:
        raise ValueError("truncation degree must be at least 2")
    alphabet = Alphabet.matrix(c.n)
    gens = frt_relations(c, alphabet)
    relations = [p for _, p in gens]
    R = complete(relations, d, order or MonomialOrder(), alphabet, c.field)
    return PresentedBialgebra(c.n, c.field, alphabet, relations, R, d, "frt", {"c": gens},
                              [], c)


def dvl_families(b: BilinearForm, alphabet: Alphabet):
    """Family (1): sum b_mn t_lm t_rn - b_lr; family (2): sum b^mn t_ml t_nr - b^lr."""
    n, field = b.n, b.field
    fam1, fam2 = [], []
    for lam, rho in product(range(n), repeat=2):
        t1: dict = {}
        t2: dict = {}
        for mu, nu in product(range(n), repeat=2):
            if b.B[mu][nu]:
                _acc(t1, (lam * n + mu, rho * n + nu), b.B[mu][nu])
            if b.Binv[mu][nu]:
                _acc(t2, (mu * n + lam, nu * n + rho), b.Binv[mu][nu])
        if b.B[lam][rho]:
            _acc(t1, (), -b.B[lam][rho])
        if b.Binv[lam][rho]:
            _acc(t2, (), -b.Binv[lam][rho])
        fam1.append(((lam, rho), NcPoly._raw(alphabet, field, t1)))
        fam2.append(((lam, rho), NcPoly._raw(alphabet, field, t2)))
    return fam1, fam2


def dvl_bialgebra(b: BilinearForm, d: int, families=("family1", "family2"),
                  order: MonomialOrder | None = None) -> PresentedBialgebra:
    if d < 2:
        raise ValueError("truncation degree must be at least 2")
    alphabet = Alphabet.matrix(b.n)
    fam1, fam2 = dvl_families(b, alphabet)
    fams = {"family1": fam1, "family2": fam2}
    relations = [p for name in families for _, p in fams[name] if p]
    R = complete(relations, d, order or MonomialOrder(), alphabet, b.field)
    return PresentedBialgebra(b.n, b.field, alphabet, relations, R, d, "dvl", fams,
                              bilinear_form=b)


# --- counit, comultiplication, tensor square ---------------------------------

def counit_letter(sym: GenSymbol, field: FieldSpec):
    if sym.sort == MATRIX:
        i, j = sym.index
        return field.one if i == j else field.zero
    if sym.sort in (GROUPLIKE, GROUPLIKE_INVERSE):
        return field.one
    raise ValueError(f"counit undefined on auxiliary symbol {sym.name}")


def counit(p: NcPoly):
    field = p.field
    vals = [counit_letter(s, field) for s in p.alphabet.symbols]
    total = field.zero
    for w, c in p.terms.items():
        v = c
        for g in w:
            v = v * vals[g]
            if not v:
                break
        total = total + v
    return total


def doubled_alphabet(alphabet: Alphabet) -> Alphabet:
    left = [GenSymbol(_prime(s.name, "'"), s.sort, s.index) for s in alphabet.symbols]
    right = [GenSymbol(_prime(s.name, "''"), s.sort, s.index) for s in alphabet.symbols]
    return Alphabet(tuple(left + right))


def _prime(name: str, mark: str) -> str:
    head, sep, tail = name.partition("[")
    return f"{head}{mark}{sep}{tail}"


def tensor_square(R: RewriteSystem) -> RewriteSystem:
    """Rewrite system for A (x) A from a system for A.

    The copies' rules plus the commutation rules form a system with no new
    unresolved overlaps, certified to the same degree as ``R``.
    """
    N = len(R.alphabet)
    alpha2 = doubled_alphabet(R.alphabet)
    rules: dict = {}
    for lead, tail in R.rules.items():
        for shift in (0, N):
            rules[tuple(g + shift for g in lead)] = {
                tuple(g + shift for g in w): c for w, c in tail.items()
            }
    one = R.field.one
    for a in range(N):
        for b in range(N, 2 * N):
            rules[(b, a)] = {(a, b): one}
    ranks = None
    if R.order.ranks is not None:
        ranks = tuple(R.order.ranks) + tuple(r + N for r in R.order.ranks)
    return RewriteSystem(alpha2, R.field, rules, MonomialOrder(ranks), R.truncation_degree,
                         R.complete_below, R.truncated, R.homogeneous, R.aborted)


def comultiply(p: NcPoly, alpha2: Alphabet | None = None) -> NcPoly:
    """Delta(p) in the doubled alphabet."""
    alphabet = p.alphabet
    N = len(alphabet)
    alpha2 = alpha2 or doubled_alphabet(alphabet)
    field = p.field
    images = {}
    n = _matrix_size(alphabet)
    for g, sym in enumerate(alphabet.symbols):
        if sym.sort == MATRIX:
            i, j = sym.index
            terms = {}
            for k in range(1, n + 1):
                a = alphabet.position(f"t[{i}][{k}]")
                b = alphabet.position(f"t[{k}][{j}]")
                terms[(a, b + N)] = field.one
            images[g] = NcPoly._raw(alpha2, field, terms)
        elif sym.sort in (GROUPLIKE, GROUPLIKE_INVERSE):
            images[g] = NcPoly._raw(alpha2, field, {(g, g + N): field.one})
        else:
            raise ValueError(f"comultiplication undefined on auxiliary symbol {sym.name}")
    return p.substitute(images, target=alpha2)


def _matrix_size(alphabet: Alphabet) -> int:
    return max((s.index[0] for s in alphabet.symbols if s.sort == MATRIX), default=0)


def left_copy(p: NcPoly, alpha2: Alphabet) -> NcPoly:
    return NcPoly._raw(alpha2, p.field, dict(p.terms))


def right_copy(p: NcPoly, alpha2: Alphabet) -> NcPoly:
    N = len(p.alphabet)
    return NcPoly._raw(alpha2, p.field, {tuple(g + N for g in w): c for w, c in p.terms.items()})


@dataclass
class ComulCheck:
    ok: bool
    certified: bool
    offending: int | None = None
    witness: str | None = None
    checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def check_comul_welldefined(A: PresentedBialgebra, relations=None) -> ComulCheck:
    """Delta(r) lies in I(x)A + A(x)I for every relation r (up to the certified degree)."""
    rels = A.relations if relations is None else relations
    R2 = tensor_square(A.rewrite)
    certified = True
    for idx, r in enumerate(rels):
        d2 = comultiply(r, R2.alphabet)
        certified = certified and d2.degree <= R2.complete_below
        nf = R2.reduce_poly(d2)
        if nf:
            return ComulCheck(False, certified, idx, nf.render(), idx + 1)
    return ComulCheck(True, certified, None, None, len(rels))


@dataclass
class GrouplikeCheck:
    ok: bool
    certified: bool
    counit: str
    residual: str

    def __bool__(self) -> bool:
        return self.ok


def check_grouplike(A, g: NcPoly, rewrite: RewriteSystem | None = None) -> GrouplikeCheck:
    R = rewrite or A.rewrite
    R2 = tensor_square(R)
    diff = comultiply(g, R2.alphabet) - left_copy(g, R2.alphabet) * right_copy(g, R2.alphabet)
    nf = R2.reduce_poly(diff)
    e = counit(g)
    return GrouplikeCheck(not nf and e == 1, 2 * g.degree <= R2.complete_below, str(e), nf.render())
