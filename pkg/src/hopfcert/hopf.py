"""Localisation A[D^-1], antipodes on generators, and the DVL redundancy probe.

An antipode candidate S is an anti-algebra map given on letters; it is
certified when the generator-level antipode identities and the reversed
defining relations all reduce to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .bialgebra import PresentedBialgebra, check_grouplike, dvl_families
from .braiding import BilinearForm
from .corep import CorepData
from .freealg import (
    GROUPLIKE,
    GROUPLIKE_INVERSE,
    Alphabet,
    GenSymbol,
    MonomialOrder,
    NcPoly,
    RewriteSystem,
    complete,
)
from .report import CERTIFIED, FAILED, INCONCLUSIVE, Stage

DINV = "Dinv"


class LocalizationError(ValueError):
    pass


class AntipodeError(RuntimeError):
    pass


@dataclass
class LocalizedAlgebra:
    base: PresentedBialgebra
    D: NcPoly  # in the localised alphabet
    dinv: GenSymbol
    alphabet: Alphabet
    rewrite: RewriteSystem
    relations: list = field(default_factory=list)

    @property
    def n(self) -> int:
        return self.base.n

    @property
    def field(self):
        return self.base.field

    @property
    def dinv_poly(self) -> NcPoly:
        return NcPoly.gen(self.alphabet, self.field, self.dinv.name)

    def t(self, i: int, j: int) -> NcPoly:
        return self.base.t(i, j).embed(self.alphabet)

    def lift(self, p: NcPoly) -> NcPoly:
        return p if p.alphabet == self.alphabet else p.embed(self.alphabet)

    def one(self) -> NcPoly:
        return NcPoly.one(self.alphabet, self.field)

    def zero(self) -> NcPoly:
        return NcPoly.zero(self.alphabet, self.field)


def localize(A: PresentedBialgebra, D: NcPoly, d: int | None = None, check: bool = True) -> LocalizedAlgebra:
    """Adjoin D^-1 with D D^-1 = 1 = D^-1 D and re-complete to degree d."""
    if D.is_zero():
        raise LocalizationError("cannot invert 0 (eps(0) = 0, not group-like)")
    if check:
        g = check_grouplike(A, D)
        if not g:
            raise LocalizationError(f"D is not group-like: residual {g.residual}, eps(D) = {g.counit}")
    if d is None:
        d = max(A.rewrite.truncation_degree, 2 * D.degree + 2)
    dinv = GenSymbol(DINV, GROUPLIKE_INVERSE)
    alphabet = A.alphabet.extend(dinv)
    Dl = D.embed(alphabet)
    di = NcPoly.gen(alphabet, A.field, DINV)
    loc_rels = [Dl * di - 1, di * Dl - 1]
    base_rules = [p.embed(alphabet) for p in A.rewrite.rule_polys()]
    order = A.rewrite.order
    if order.ranks is not None:
        order = MonomialOrder(tuple(order.ranks) + (max(order.ranks) + 1,))
    R = complete(base_rules + loc_rels, d, order, alphabet, A.field)
    relations = [p.embed(alphabet) for p in A.relations] + loc_rels
    return LocalizedAlgebra(A, Dl, dinv, alphabet, R, relations)


@dataclass
class AntipodeMap:
    alphabet: Alphabet
    images: dict  # generator index -> NcPoly

    def __call__(self, p: NcPoly) -> NcPoly:
        if p.alphabet != self.alphabet:
            p = p.embed(self.alphabet)
        return p.substitute(self.images, target=self.alphabet, anti=True)

    def image(self, name: str) -> NcPoly:
        return self.images[self.alphabet.position(name)]

    def render(self) -> dict:
        return {self.alphabet.symbols[g].name: self.images[g].render() for g in sorted(self.images)}

    def corrupted(self, name: str, poly: NcPoly) -> AntipodeMap:
        images = dict(self.images)
        images[self.alphabet.position(name)] = poly
        return AntipodeMap(self.alphabet, images)


def build_antipode(L: LocalizedAlgebra, C: CorepData) -> tuple[AntipodeMap, Stage]:
    """S(t_ij) = (T^tr D^-1)_ij, S(D^-1) = D; certifies T^tr D^-1 = D^-1 That^tr."""
    n = L.n
    di = L.dinv_poly
    R = L.rewrite
    images = {}
    failures = {}
    for i, j in product(range(n), repeat=2):
        right = L.lift(C.T[j][i]) * di
        left = di * L.lift(C.That[j][i])
        images[i * n + j] = right
        nf = R.reduce_poly(right - left)
        if nf:
            failures[f"({i + 1},{j + 1})"] = nf.render()
    images[L.alphabet.position(L.dinv.name)] = L.D
    S = AntipodeMap(L.alphabet, images)
    witness = {"entries": n * n}
    if failures:
        witness.update(failures)
        return S, Stage("left/right inverse agreement", FAILED, R.complete_below, witness)
    return S, Stage("left/right inverse agreement", CERTIFIED, R.complete_below, witness,
                    f"T^tr*D^-1 = D^-1*That^tr verified up to degree {R.complete_below}")


def _delta(i: int, j: int, one: NcPoly) -> NcPoly:
    return one if i == j else one.scale(0)


def antipode_residuals(H, S: AntipodeMap) -> dict:
    """Generator-level antipode identities, unreduced, keyed by a label."""
    alphabet = H.alphabet
    n = H.n
    one = NcPoly.one(alphabet, H.field)
    t = [[NcPoly.gen(alphabet, H.field, f"t[{i + 1}][{j + 1}]") for j in range(n)] for i in range(n)]
    St = [[S.images[i * n + j] for j in range(n)] for i in range(n)]
    out = {}
    for i, j in product(range(n), repeat=2):
        right = -_delta(i, j, one)
        left = -_delta(i, j, one)
        for k in range(n):
            right = right + t[i][k] * St[k][j]
            left = left + St[i][k] * t[k][j]
        out[f"sum_k t[{i + 1}][k]*S(t[k][{j + 1}]) - delta"] = right
        out[f"sum_k S(t[{i + 1}][k])*t[k][{j + 1}] - delta"] = left
    for g, sym in enumerate(alphabet.symbols):
        if sym.sort in (GROUPLIKE, GROUPLIKE_INVERSE):
            x = NcPoly.gen(alphabet, H.field, sym.name)
            out[f"{sym.name}*S({sym.name}) - 1"] = x * S.images[g] - 1
            out[f"S({sym.name})*{sym.name} - 1"] = S.images[g] * x - 1
    D = getattr(H, "D", None)
    if D is not None:
        SD = S(D)
        out["D*S(D) - 1"] = D * SD - 1
        out["S(D)*D - 1"] = SD * D - 1
        out["S(D) - Dinv"] = SD - NcPoly.gen(alphabet, H.field, DINV)
    return out


def opposite_relation_residuals(H, S: AntipodeMap) -> dict:
    """Reversed defining relations evaluated on the S-images."""
    out = {}
    base = H.base if isinstance(H, LocalizedAlgebra) else H
    c = base.braiding
    n = H.n
    if c is not None:
        u = [[S.images[i * n + j] for j in range(n)] for i in range(n)]
        zero = NcPoly.zero(H.alphabet, H.field)
        for i, j, r, s in product(range(n), repeat=4):
            acc = zero
            for k, l in product(range(n), repeat=2):
                if c.entries[i][j][k][l]:
                    acc = acc + (u[l][s] * u[k][r]).scale(c.entries[i][j][k][l])
                if c.entries[k][l][r][s]:
                    acc = acc - (u[j][l] * u[i][k]).scale(c.entries[k][l][r][s])
            out[f"opposite FRT ({i + 1},{j + 1},{r + 1},{s + 1})"] = acc
        # the FRT part is covered above; only the localisation relations remain
        extra = H.relations[len(base.relations):] if isinstance(H, LocalizedAlgebra) else []
    else:
        extra = H.relations
    for idx, r in enumerate(extra):
        out[f"S(relation {idx + 1})"] = S(r)
    return out


def verify_hopf(H, S: AntipodeMap) -> Stage:
    R = H.rewrite
    failures = {}
    residuals = antipode_residuals(H, S)
    opposite = opposite_relation_residuals(H, S)
    for label, p in list(residuals.items()) + list(opposite.items()):
        nf = R.reduce_poly(p)
        if nf:
            failures[label] = nf.render()
    witness = {"antipode identities": len(residuals), "opposite relations": len(opposite),
               "rules": len(R.rules)}
    if failures:
        witness.update(failures)
        return Stage("antipode axioms", FAILED, R.complete_below, witness)
    return Stage("antipode axioms", CERTIFIED, R.complete_below, witness,
                 f"antipode identities on generators verified up to degree {R.complete_below}")


def dvl_antipode(A: PresentedBialgebra, b: BilinearForm) -> tuple[AntipodeMap, Stage]:
    """S(t) = B t^tr B^-1 on the DVL algebra (no localisation needed)."""
    n = b.n
    images = {}
    for i, j in product(range(n), repeat=2):
        acc = A.zero()
        for k, l in product(range(n), repeat=2):
            f = b.B[i][k] * b.Binv[l][j]
            if f:
                acc = acc + A.t(l, k).scale(f)
        images[i * n + j] = acc
    S = AntipodeMap(A.alphabet, images)
    return S, verify_hopf(A, S)


# --- redundancy probe --------------------------------------------------------------

REDUNDANT = "redundant up to degree {d}"
NOT_IMPLIED = "not implied up to degree {d}"
PROBE_INCONCLUSIVE = "inconclusive"


@dataclass
class ProbeResult:
    d: int
    entries: list  # dicts: index, relation, normal_form, status
    summary: str
    system: dict

    def to_stage(self) -> Stage:
        status = CERTIFIED
        if self.summary == PROBE_INCONCLUSIVE:
            status = INCONCLUSIVE
        witness = {"summary": self.summary, "system": self.system,
                   "entries": self.entries}
        return Stage("redundancy probe", status, self.d, witness,
                     "family (2) inside the ideal of family (1): " + self.summary)


def redundancy_probe(b: BilinearForm, d: int) -> ProbeResult:
    alphabet = Alphabet.matrix(b.n)
    fam1, fam2 = dvl_families(b, alphabet)
    rels = [p for _, p in fam1 if p]
    R = complete(rels, d, alphabet=alphabet, field=b.field)
    entries = []
    for (lam, rho), p in fam2:
        nf = R.reduce_poly(p)
        if not nf:
            status = REDUNDANT.format(d=d)
        elif not R.aborted and p.degree <= R.complete_below:
            status = NOT_IMPLIED.format(d=d)
        else:
            status = PROBE_INCONCLUSIVE
        entries.append({"index": f"({lam + 1},{rho + 1})", "relation": p.render(),
                        "normal_form": nf.render(), "status": status})
    statuses = {e["status"] for e in entries}
    if statuses == {REDUNDANT.format(d=d)}:
        summary = REDUNDANT.format(d=d)
    elif NOT_IMPLIED.format(d=d) in statuses:
        summary = NOT_IMPLIED.format(d=d)
    else:
        summary = PROBE_INCONCLUSIVE
    return ProbeResult(d, entries, summary, R.summary())
