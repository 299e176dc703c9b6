"""Noncommutative polynomials and degree-truncated two-sided rewriting completion.

Words are tuples of generator indices into an :class:`Alphabet`. The monomial
order is degree-lexicographic; the generator order is the alphabet order unless
overridden with explicit ranks.
"""

from __future__ import annotations

import heapq
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .scalars import FieldScalar, FieldSpec

Word = tuple

MATRIX = "matrix-generator"
GROUPLIKE = "grouplike"
GROUPLIKE_INVERSE = "grouplike-inverse"
AUXILIARY = "auxiliary"


class AlphabetMismatchError(ValueError):
    pass


@dataclass(frozen=True)
class GenSymbol:
    name: str
    sort: str = AUXILIARY
    index: tuple | None = None


def matrix_symbol(i: int, j: int, prefix: str = "t") -> GenSymbol:
    return GenSymbol(f"{prefix}[{i}][{j}]", MATRIX, (i, j))


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple

    def __post_init__(self):
        names = [s.name for s in self.symbols]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        object.__setattr__(self, "_pos", {s.name: k for k, s in enumerate(self.symbols)})

    @classmethod
    def matrix(cls, n: int, extra: Iterable[GenSymbol] = (), prefix: str = "t") -> Alphabet:
        """Row-major t[1][1] < t[1][2] < ... < t[n][n], then ``extra``."""
        syms = [matrix_symbol(i, j, prefix) for i in range(1, n + 1) for j in range(1, n + 1)]
        return cls(tuple(syms) + tuple(extra))

    def __len__(self) -> int:
        return len(self.symbols)

    def position(self, name: str) -> int:
        try:
            return self._pos[name]
        except KeyError:
            raise KeyError(f"no generator named {name!r}") from None

    def extend(self, *extra: GenSymbol) -> Alphabet:
        return Alphabet(self.symbols + tuple(extra))

    def names(self) -> list[str]:
        return [s.name for s in self.symbols]


@dataclass(frozen=True)
class MonomialOrder:
    """Degree-lexicographic order; ``ranks[g]`` overrides the generator order."""

    ranks: tuple | None = None

    def key(self, word: Word):
        if self.ranks is None:
            return (len(word), word)
        return (len(word), tuple(self.ranks[g] for g in word))

    def heap_key(self, word: Word):
        # min-heap key that pops the largest word first
        r = word if self.ranks is None else tuple(self.ranks[g] for g in word)
        return (-len(word), tuple(-x for x in r))

    def describe(self, alphabet: Alphabet) -> dict:
        order = list(range(len(alphabet)))
        if self.ranks is not None:
            order.sort(key=lambda g: self.ranks[g])
        return {"type": "deglex", "generators": [alphabet.symbols[g].name for g in order]}


DEGLEX = MonomialOrder()


# --- raw term dictionaries ---------------------------------------------------

def _add_into(acc: dict, word: Word, coeff) -> None:
    old = acc.get(word)
    if old is None:
        acc[word] = coeff
    else:
        new = old + coeff
        if new:
            acc[word] = new
        else:
            del acc[word]


def _mul_terms(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            _add_into(out, wa + wb, ca * cb)
    return out


class NcPoly:
    """Element of the free algebra k<alphabet> with FieldScalar coefficients."""

    __slots__ = ("alphabet", "field", "terms")

    def __init__(self, alphabet: Alphabet, field: FieldSpec, terms: Mapping | None = None):
        self.alphabet = alphabet
        self.field = field
        self.terms = {}
        if terms:
            for w, c in terms.items():
                c = field(c) if not isinstance(c, FieldScalar) else c
                if c:
                    _add_into(self.terms, tuple(w), c)

    @classmethod
    def _raw(cls, alphabet, field, terms: dict) -> NcPoly:
        p = cls.__new__(cls)
        p.alphabet, p.field, p.terms = alphabet, field, terms
        return p

    @classmethod
    def zero(cls, alphabet, field) -> NcPoly:
        return cls._raw(alphabet, field, {})

    @classmethod
    def one(cls, alphabet, field) -> NcPoly:
        return cls._raw(alphabet, field, {(): field.one})

    @classmethod
    def constant(cls, alphabet, field, c) -> NcPoly:
        return cls(alphabet, field, {(): c})

    @classmethod
    def gen(cls, alphabet, field, name: str) -> NcPoly:
        return cls._raw(alphabet, field, {(alphabet.position(name),): field.one})

    @classmethod
    def word(cls, alphabet, field, names: Iterable[str], coeff=1) -> NcPoly:
        return cls(alphabet, field, {tuple(alphabet.position(n) for n in names): coeff})

    def _check(self, other: NcPoly) -> None:
        if other.alphabet != self.alphabet:
            raise AlphabetMismatchError(
                f"alphabets differ: {self.alphabet.names()} vs {other.alphabet.names()}"
            )
        if other.field != self.field:
            raise AlphabetMismatchError("polynomials live over different fields")

    def _coerce(self, other) -> NcPoly | None:
        if isinstance(other, NcPoly):
            self._check(other)
            return other
        if isinstance(other, (int, FieldScalar)) or hasattr(other, "denominator"):
            return NcPoly.constant(self.alphabet, self.field, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for w, c in o.terms.items():
            _add_into(out, w, c)
        return NcPoly._raw(self.alphabet, self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw(self.alphabet, self.field, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, NcPoly):
            self._check(other)
            return NcPoly._raw(self.alphabet, self.field, _mul_terms(self.terms, other.terms))
        if isinstance(other, (int, FieldScalar)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, FieldScalar)) or hasattr(other, "denominator"):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, e: int):
        out = NcPoly.one(self.alphabet, self.field)
        for _ in range(e):
            out = out * self
        return out

    def scale(self, c) -> NcPoly:
        c = self.field(c)
        if not c:
            return NcPoly.zero(self.alphabet, self.field)
        return NcPoly._raw(self.alphabet, self.field, {w: v * c for w, v in self.terms.items()})

    def __eq__(self, other) -> bool:
        o = self._coerce(other) if not isinstance(other, NcPoly) else other
        if not isinstance(o, NcPoly):
            return NotImplemented
        return o.alphabet == self.alphabet and o.field == self.field and o.terms == self.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def degree(self) -> int:
        return max((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def leading_word(self, order: MonomialOrder = DEGLEX) -> Word:
        return max(self.terms, key=order.key)

    def coefficient(self, word: Word) -> FieldScalar:
        return self.terms.get(tuple(word), self.field.zero)

    def substitute(self, images: Mapping, target=None, anti: bool = False) -> NcPoly:
        """Algebra (or anti-algebra) map defined letter by letter.

        ``images`` maps generator index to an NcPoly over ``target``'s alphabet;
        missing letters map to themselves (same index in the target alphabet).
        """
        tgt_alpha = target if target is not None else self.alphabet
        out: dict = {}
        cache: dict = {}
        for w, c in self.terms.items():
            acc = {(): c}
            letters = reversed(w) if anti else w
            for g in letters:
                img = cache.get(g)
                if img is None:
                    img = images[g].terms if g in images else {(g,): self.field.one}
                    cache[g] = img
                acc = _mul_terms(acc, img)
            for ww, cc in acc.items():
                _add_into(out, ww, cc)
        return NcPoly._raw(tgt_alpha, self.field, out)

    def embed(self, alphabet: Alphabet) -> NcPoly:
        """Reinterpret in a larger alphabet that starts with this one's letters."""
        if alphabet.symbols[: len(self.alphabet)] != self.alphabet.symbols:
            raise AlphabetMismatchError("target alphabet does not extend the source alphabet")
        return NcPoly._raw(alphabet, self.field, dict(self.terms))

    def render(self, order: MonomialOrder = DEGLEX) -> str:
        return render_terms(self.terms, self.alphabet, order)

    def __str__(self) -> str:
        return self.render()

    def __repr__(self) -> str:
        return f"NcPoly({self.render()!r})"


def render_word(word: Word, alphabet: Alphabet) -> str:
    return "*".join(alphabet.symbols[g].name for g in word) if word else "1"


def render_terms(terms: Mapping, alphabet: Alphabet, order: MonomialOrder = DEGLEX) -> str:
    if not terms:
        return "0"
    parts = []
    for w in sorted(terms, key=order.key, reverse=True):
        c = terms[w]
        nonzero = [x for x in c.coeffs if x]
        # a single power-basis term carries its own sign; sums need brackets
        neg = len(nonzero) == 1 and nonzero[0] < 0
        mag = -c if neg else c
        ctext = str(mag) if len(nonzero) == 1 else f"({mag})"
        wtext = render_word(w, alphabet)
        if not w:
            body = ctext
        elif mag == 1:
            body = wtext
        else:
            body = f"{ctext}*{wtext}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


# --- rewriting ------------------------------------------------------------------

@dataclass
class Reduction:
    """Normal form together with whether its degree lies in the certified range."""

    poly: NcPoly
    certified: bool
    input_degree: int

    def is_zero(self) -> bool:
        return self.poly.is_zero()


@dataclass
class RewriteSystem:
    alphabet: Alphabet
    field: FieldSpec
    rules: dict  # leading word -> tail terms; lead - tail lies in the ideal
    order: MonomialOrder = DEGLEX
    truncation_degree: int = 0
    complete_below: int = 0
    truncated: bool = False  # some ambiguity above the truncation degree was skipped
    homogeneous: bool = True
    aborted: bool = False
    stats: dict = field(default_factory=dict)

    def __post_init__(self):
        self._index()

    def _index(self) -> None:
        self._lengths = sorted({len(w) for w in self.rules})

    def find_reducible(self, word: Word, rng: random.Random | None = None):
        """(position, lead length) of a rule occurrence in ``word``, or None."""
        rules = self.rules
        if self._lengths and self._lengths[0] == 0:
            return 0, 0  # the ideal contains 1
        hits = [] if rng is not None else None
        n = len(word)
        for i in range(n):
            for L in self._lengths:
                if i + L > n:
                    break
                if word[i:i + L] in rules:
                    if hits is None:
                        return i, L
                    hits.append((i, L))
        if hits:
            return rng.choice(hits)
        return None

    def reduce_terms(self, terms: Mapping, rng: random.Random | None = None) -> dict:
        order = self.order
        work = dict(terms)
        heap = [(order.heap_key(w), w) for w in work]
        heapq.heapify(heap)
        out: dict = {}
        rules = self.rules
        while heap:
            _, w = heapq.heappop(heap)
            c = work.pop(w, None)
            if c is None:
                continue
            hit = self.find_reducible(w, rng)
            if hit is None:
                out[w] = c
                continue
            i, L = hit
            u, v = w[:i], w[i + L:]
            for tw, tc in rules[w[i:i + L]].items():
                nw = u + tw + v
                old = work.get(nw)
                if old is None:
                    work[nw] = c * tc
                    heapq.heappush(heap, (order.heap_key(nw), nw))
                else:
                    nv = old + c * tc
                    if nv:
                        work[nw] = nv
                    else:
                        del work[nw]
        return out

    def reduce_poly(self, p: NcPoly, rng: random.Random | None = None) -> NcPoly:
        if p.alphabet != self.alphabet:
            raise AlphabetMismatchError("polynomial and rewrite system use different alphabets")
        return NcPoly._raw(self.alphabet, self.field, self.reduce_terms(p.terms, rng))

    def is_certified_for(self, p: NcPoly) -> bool:
        return p.degree <= self.complete_below

    def rule_polys(self) -> list[NcPoly]:
        out = []
        for lead in sorted(self.rules, key=self.order.key):
            terms = {lead: self.field.one}
            for w, c in self.rules[lead].items():
                _add_into(terms, w, -c)
            out.append(NcPoly._raw(self.alphabet, self.field, terms))
        return out

    def rule_set(self) -> frozenset:
        return frozenset(
            (lead, frozenset(tail.items())) for lead, tail in self.rules.items()
        )

    def render_rules(self) -> list[str]:
        return [
            f"{render_word(lead, self.alphabet)} -> {render_terms(self.rules[lead], self.alphabet, self.order)}"
            for lead in sorted(self.rules, key=self.order.key)
        ]

    def summary(self) -> dict:
        return {
            "order": self.order.describe(self.alphabet),
            "rules": len(self.rules),
            "truncation_degree": self.truncation_degree,
            "complete_below": self.complete_below,
            "truncated": self.truncated,
            "homogeneous": self.homogeneous,
            "aborted": self.aborted,
        }

    def irreducible_words(self, k: int):
        """Yield the words of length k containing no leading word, in lex order."""
        rules, lengths = self.rules, self._lengths
        n = len(self.alphabet)

        def extend(prefix):
            if len(prefix) == k:
                yield prefix
                return
            for g in range(n):
                w = prefix + (g,)
                # only suffixes ending at the new letter can be new obstructions
                if any(L <= len(w) and w[len(w) - L:] in rules for L in lengths):
                    continue
                yield from extend(w)

        yield from extend(())


def _monic(terms: dict, order: MonomialOrder):
    lead = max(terms, key=order.key)
    inv = terms[lead].inverse()
    tail = {w: -c * inv for w, c in terms.items() if w != lead}
    return lead, tail


def _overlaps(a: Word, b: Word):
    """Proper overlaps a = u s, b = s v (s nonempty, u and v nonempty)."""
    for k in range(1, min(len(a), len(b))):
        if a[-k:] == b[:k]:
            yield k


def complete(
    relations: Iterable[NcPoly],
    d: int,
    order: MonomialOrder = DEGLEX,
    alphabet: Alphabet | None = None,
    field: FieldSpec | None = None,
    max_rules: int = 50000,
) -> RewriteSystem:
    """Overlap completion resolving every ambiguity of degree <= d."""
    relations = [r for r in relations]
    if alphabet is None or field is None:
        if not relations:
            raise ValueError("alphabet and field are required for an empty relation list")
        alphabet, field = relations[0].alphabet, relations[0].field
    for r in relations:
        if r.alphabet != alphabet:
            raise AlphabetMismatchError("relations use different alphabets")
    max_rel = max((r.degree for r in relations), default=0)
    if d < max_rel:
        raise ValueError(f"truncation degree {d} is below the relation degree {max_rel}")
    homogeneous = all(r.is_homogeneous() for r in relations)

    system = RewriteSystem(alphabet, field, {}, order, d, d, False, homogeneous)
    rules = system.rules
    ids: dict = {}  # lead -> rule id; ids are never reused
    next_id = [0]
    ambiguities: list = []
    pending = [dict(r.terms) for r in relations if r.terms]
    pending.sort(key=lambda t: order.key(max(t, key=order.key)))
    stats = {"relations": len(pending), "ambiguities": 0, "resolved_to_zero": 0, "discarded": 0}

    def push_overlaps(lead: Word) -> None:
        rid = ids[lead]
        for other in list(rules):
            oid = ids[other]
            for a, b, aid, bid in ((lead, other, rid, oid), (other, lead, oid, rid)):
                for k in _overlaps(a, b):
                    w = a + b[k:]
                    if len(w) > d:
                        system.truncated = True
                        stats["discarded"] += 1
                        continue
                    heapq.heappush(ambiguities, (order.key(w), aid, bid, k, a, b))
                if a == b:
                    break

    def insert(terms: dict) -> None:
        red = system.reduce_terms(terms)
        if not red:
            return
        lead, tail = _monic(red, order)
        # rules whose leads contain the new lead are re-queued
        doomed = [w for w in rules if len(w) >= len(lead) and _contains(w, lead)]
        for w in doomed:
            old_tail = rules.pop(w)
            ids.pop(w)
            t = {w: field.one}
            for tw, tc in old_tail.items():
                _add_into(t, tw, -tc)
            pending.append(t)
        rules[lead] = tail
        ids[lead] = next_id[0]
        next_id[0] += 1
        system._index()
        push_overlaps(lead)

    def drain() -> None:
        while pending:
            insert(pending.pop(0))

    drain()
    while ambiguities:
        if len(rules) > max_rules:
            system.aborted = True
            system.complete_below = ambiguities[0][0][0] - 1
            break
        key, aid, bid, k, a, b = heapq.heappop(ambiguities)
        if ids.get(a) != aid or ids.get(b) != bid:
            continue
        stats["ambiguities"] += 1
        # a*v = u*b with a = u s, b = s v
        u, v = a[: len(a) - k], b[k:]
        s_terms: dict = {}
        for w, c in rules[a].items():
            _add_into(s_terms, w + v, c)
        for w, c in rules[b].items():
            _add_into(s_terms, u + w, -c)
        if not s_terms or not system.reduce_terms(s_terms):
            stats["resolved_to_zero"] += 1
            continue
        pending.append(s_terms)
        drain()

    # final interreduction of tails
    for lead in sorted(rules, key=order.key):
        rules[lead] = system.reduce_terms(rules[lead])
    ordered = {lead: rules[lead] for lead in sorted(rules, key=order.key)}
    system.rules = ordered
    system._index()
    stats["rules"] = len(ordered)
    system.stats = stats
    return system


def _contains(word: Word, sub: Word) -> bool:
    L = len(sub)
    return any(word[i:i + L] == sub for i in range(len(word) - L + 1))


def normal_form(p: NcPoly, R: RewriteSystem, rng: random.Random | None = None) -> Reduction:
    return Reduction(R.reduce_poly(p, rng), R.is_certified_for(p), p.degree)


def graded_dimension(R: RewriteSystem, k: int) -> int:
    """Number of irreducible words of length k (homogeneous systems only)."""
    if not R.homogeneous:
        raise ValueError("graded dimension is undefined for an inhomogeneous ideal")
    if k > R.complete_below:
        raise ValueError(f"degree {k} exceeds the certified range {R.complete_below}")
    return sum(1 for _ in R.irreducible_words(k))
