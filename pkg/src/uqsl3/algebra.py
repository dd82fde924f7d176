"""PBW normal forms for skew-commutation presentations.

A signature fixes an ordered list of generators and, for every out-of-order
adjacent pair ``g_b g_a`` (b after a), a rewrite ``g_b g_a -> q g_a g_b + tail``.
Products of normal monomials are computed one letter at a time and memoised
on the signature; rules for inverse letters are derived from the positive ones.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .linalg import LinearSystem, rank
from .scalars import ONE, R, S, ZERO, Scalar, scalar_from_rs

Monomial = tuple[int, ...]
Letter = tuple[int, int]  # (generator index, +1 or -1)
RawWord = Sequence[tuple[str, int]]
RawSum = Sequence[tuple[object, RawWord]]


class AlgebraError(ValueError):
    pass


class InvertibilityError(AlgebraError):
    """Negative power of a generator that is not invertible in the signature."""


class SignatureMismatch(AlgebraError):
    pass


@dataclass(frozen=True)
class Generator:
    symbol: str
    invertible: bool = False
    weight: int = 1


def _add_into(acc: dict, mono: Monomial, c: Scalar) -> None:
    x = acc.get(mono)
    if x is None:
        acc[mono] = c
    else:
        x = x + c
        if x.is_zero():
            del acc[mono]
        else:
            acc[mono] = x


class AlgebraSignature:
    """A presentation: generators in normal order plus rewrite rules.

    ``rules`` maps symbol pairs ``(b, a)`` with ``b`` after ``a`` to
    ``(q, tail)``, where ``tail`` is a mapping from exponent vectors to scalars
    already in normal form.
    """

    def __init__(self, name: str, generators: Sequence[Generator], rules, relations=()):
        self.name = name
        self.generators = tuple(generators)
        self.index = {g.symbol: i for i, g in enumerate(self.generators)}
        if len(self.index) != len(self.generators):
            raise AlgebraError("duplicate generator symbol")
        self.n = len(self.generators)
        self.weights = tuple(g.weight for g in self.generators)
        self._rules: dict[tuple[Letter, Letter], tuple[Scalar, dict]] = {}
        for (b, a), (q, tail) in rules.items():
            ib, ia = self.index[b], self.index[a]
            if ib <= ia:
                raise AlgebraError(f"rule {b}{a} is not an out-of-order pair")
            self._rules[(ib, 1), (ia, 1)] = (Scalar.coerce(q), {tuple(m): Scalar.coerce(c) for m, c in tail.items()})
        self._relations = tuple(relations)
        self._letter_cache: dict = {}
        self._mono_cache: dict = {}
        self._validate()

    def __repr__(self) -> str:
        return f"AlgebraSignature({self.name!r})"

    # structure

    def _validate(self) -> None:
        for lo, hi in itertools.combinations(range(self.n), 2):
            key = ((hi, 1), (lo, 1))
            if key not in self._rules:
                raise AlgebraError(
                    f"missing rule for {self.generators[hi].symbol}{self.generators[lo].symbol}"
                )
            q, tail = self._rules[key]
            if q.is_zero():
                raise AlgebraError("rule scalar must be nonzero")
            top = [0] * self.n
            top[lo] += 1
            top[hi] += 1
            for m in tail:
                if self.order_key(m) >= self.order_key(tuple(top)):
                    raise AlgebraError("rule tail is not strictly smaller than its head")
                self.check_monomial(m)

    def symbols(self) -> list[str]:
        return [g.symbol for g in self.generators]

    def rules(self) -> dict[tuple[str, str], tuple[Scalar, "Element"]]:
        """Positive rewrite rules keyed by symbol pairs, tails as Elements."""
        out = {}
        for ((ib, eb), (ia, ea)), (q, tail) in self._rules.items():
            if eb != 1 or ea != 1:
                continue
            out[self.generators[ib].symbol, self.generators[ia].symbol] = (q, Element(self, tail))
        return out

    def weighted_degree(self, mono: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, mono))

    def order_key(self, mono: Monomial):
        return (self.weighted_degree(mono), mono)

    def check_monomial(self, mono: Monomial) -> None:
        if len(mono) != self.n:
            raise AlgebraError(f"exponent vector of length {len(mono)} in {self.name}")
        for g, e in zip(self.generators, mono):
            if e < 0 and not g.invertible:
                raise InvertibilityError(f"{g.symbol} is not invertible in {self.name}")

    @property
    def unit(self) -> Monomial:
        return (0,) * self.n

    # elements

    def one(self) -> "Element":
        return Element(self, {self.unit: ONE})

    def zero(self) -> "Element":
        return Element(self, {})

    def scalar(self, c) -> "Element":
        c = Scalar.coerce(c)
        return Element(self, {self.unit: c} if c else {})

    def gen(self, symbol: str, power: int = 1) -> "Element":
        if symbol not in self.index:
            raise AlgebraError(f"unknown generator {symbol!r} in {self.name}")
        mono = [0] * self.n
        mono[self.index[symbol]] = power
        mono = tuple(mono)
        self.check_monomial(mono)
        return Element(self, {mono: ONE})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Element":
        """The normal-ordered monomial with the given exponent vector."""
        mono = tuple(int(e) for e in exps)
        self.check_monomial(mono)
        c = Scalar.coerce(coeff)
        return Element(self, {mono: c} if c else {})

    def relations(self) -> list[tuple[str, RawSum]]:
        return list(self._relations)

    # rewriting engine

    def _rule(self, y: Letter, x: Letter) -> tuple[Scalar, dict]:
        """``y x -> q x y + tail`` for letters with y's generator after x's."""
        key = (y, x)
        hit = self._rules.get(key)
        if hit is not None:
            return hit
        (ib, eb), (ia, ea) = y, x
        q, tail = self._rules[(ib, 1), (ia, 1)]
        if not tail:
            out = (q ** (eb * ea), {})
        elif (eb, ea) == (1, -1):
            # b a^-1 = q^-1 a^-1 b - q^-1 a^-1 t a^-1
            ainv = self._letter_mono(ia, -1)
            acc: dict = {}
            for m, c in tail.items():
                for m2, c2 in self._mul_mono(ainv, m).items():
                    for m3, c3 in self._mul_letter(m2, ia, -1).items():
                        _add_into(acc, m3, -c * c2 * c3 / q)
            out = (q.inv(), acc)
        elif (eb, ea) == (-1, 1):
            # b^-1 a = q^-1 a b^-1 - q^-1 b^-1 t b^-1
            binv = self._letter_mono(ib, -1)
            acc = {}
            for m, c in tail.items():
                for m2, c2 in self._mul_mono(binv, m).items():
                    for m3, c3 in self._mul_letter(m2, ib, -1).items():
                        _add_into(acc, m3, -c * c2 * c3 / q)
            out = (q.inv(), acc)
        else:
            raise AlgebraError("inverse-inverse reordering with a tail is not supported")
        self._rules[key] = out
        return out

    def _letter_mono(self, i: int, e: int) -> Monomial:
        m = [0] * self.n
        m[i] = e
        return tuple(m)

    def _mul_letter(self, mono: Monomial, g: int, e: int) -> dict:
        key = (mono, g, e)
        hit = self._letter_cache.get(key)
        if hit is not None:
            return hit
        j = self.n - 1
        while j > g and mono[j] == 0:
            j -= 1
        if j <= g:
            new = list(mono)
            new[g] += e
            if new[g] < 0 and not self.generators[g].invertible:
                raise InvertibilityError(f"{self.generators[g].symbol} is not invertible in {self.name}")
            out = {tuple(new): ONE}
        else:
            ej = 1 if mono[j] > 0 else -1
            prefix = list(mono)
            prefix[j] -= ej
            prefix = tuple(prefix)
            q, tail = self._rule((j, ej), (g, e))
            out = {}
            for m, c in self._mul_letter(prefix, g, e).items():
                for m2, c2 in self._mul_letter(m, j, ej).items():
                    _add_into(out, m2, q * c * c2)
            for tm, tc in tail.items():
                for m2, c2 in self._mul_mono(prefix, tm).items():
                    _add_into(out, m2, tc * c2)
        self._letter_cache[key] = out
        return out

    def _mul_mono(self, m1: Monomial, m2: Monomial) -> dict:
        key = (m1, m2)
        hit = self._mono_cache.get(key)
        if hit is not None:
            return hit
        if not any(m2):
            out = {m1: ONE}
        elif not any(m1):
            out = {m2: ONE}
        else:
            # peel the last letter of m2
            j = self.n - 1
            while m2[j] == 0:
                j -= 1
            ej = 1 if m2[j] > 0 else -1
            rest = list(m2)
            rest[j] -= ej
            out = {}
            for m, c in self._mul_mono(m1, tuple(rest)).items():
                for m3, c3 in self._mul_letter(m, j, ej).items():
                    _add_into(out, m3, c * c3)
        self._mono_cache[key] = out
        return out

    def word_element(self, word: RawWord) -> "Element":
        """Normal form of a product of generator powers, left to right."""
        acc = {self.unit: ONE}
        for sym, e in word:
            if sym not in self.index:
                raise AlgebraError(f"unknown generator {sym!r} in {self.name}")
            g = self.index[sym]
            if e < 0 and not self.generators[g].invertible:
                raise InvertibilityError(f"{sym} is not invertible in {self.name}")
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                nxt: dict = {}
                for m, c in acc.items():
                    for m2, c2 in self._mul_letter(m, g, step).items():
                        _add_into(nxt, m2, c * c2)
                acc = nxt
        return Element(self, acc)


class Element:
    """Finite scalar combination of normal-ordered monomials."""

    __slots__ = ("sig", "terms", "_hash")

    def __init__(self, sig: AlgebraSignature, terms: Mapping[Monomial, Scalar] | None = None):
        self.sig = sig
        self.terms = {m: c for m, c in (terms or {}).items() if not c.is_zero()}
        self._hash = None

    # coercion helpers

    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            if other.sig is not self.sig:
                raise SignatureMismatch(f"cannot combine {self.sig.name} and {other.sig.name} elements")
            return other
        return self.sig.scalar(other)

    # arithmetic

    def __add__(self, other) -> "Element":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self.terms)
        for m, c in other.terms.items():
            _add_into(acc, m, c)
        return Element(self.sig, acc)

    __radd__ = __add__

    def __neg__(self) -> "Element":
        return Element(self.sig, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Element":
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Element":
        return self._coerce(other) - self

    def scale(self, c) -> "Element":
        c = Scalar.coerce(c)
        if c.is_zero():
            return self.sig.zero()
        return Element(self.sig, {m: c * x for m, x in self.terms.items()})

    def __mul__(self, other) -> "Element":
        if not isinstance(other, Element):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        if other.sig is not self.sig:
            raise SignatureMismatch(f"cannot multiply {self.sig.name} by {other.sig.name}")
        acc: dict = {}
        mul = self.sig._mul_mono
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = c1 * c2
                for m, c in mul(m1, m2).items():
                    _add_into(acc, m, c12 * c)
        return Element(self.sig, acc)

    def __rmul__(self, other) -> "Element":
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __pow__(self, k: int) -> "Element":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = self.sig.one()
        for _ in range(k):
            out = out * self
        return out

    def inverse(self) -> "Element":
        """Inverse of ``c * monomial`` whose generators are all invertible."""
        if len(self.terms) != 1:
            raise InvertibilityError("only single-term elements can be inverted")
        (mono, c), = self.terms.items()
        for g, e in zip(self.sig.generators, mono):
            if e and not g.invertible:
                raise InvertibilityError(f"{g.symbol} is not invertible in {self.sig.name}")
        word = [(self.sig.generators[i].symbol, -e) for i, e in reversed(list(enumerate(mono))) if e]
        return self.sig.word_element(word).scale(c.inv())

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.sig is other.sig and self.terms == other.terms
        try:
            return self == self.sig.scalar(other)
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.sig.name, frozenset(self.terms.items())))
        return self._hash

    # queries

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self) -> Scalar:
        return self.terms.get(self.sig.unit, ZERO)

    def degree(self) -> int:
        """Largest weighted degree of a term (-1 for zero)."""
        return max((self.sig.weighted_degree(m) for m in self.terms), default=-1)

    def coeff(self, exps: Sequence[int]) -> Scalar:
        return self.terms.get(tuple(exps), ZERO)

    def sorted_terms(self) -> list[tuple[Monomial, Scalar]]:
        """Terms in decreasing monomial order."""
        return sorted(self.terms.items(), key=lambda t: self.sig.order_key(t[0]), reverse=True)

    def __str__(self) -> str:
        from .parser import render

        return render(self)

    def __repr__(self) -> str:
        return f"Element[{self.sig.name}]({self})"

    def to_json(self) -> dict:
        return {
            "algebra": self.sig.name,
            "terms": [{"coeff": c.to_json(), "exps": list(m)} for m, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "Element":
        sig = preset(data["algebra"])
        terms = {}
        for t in data["terms"]:
            mono = tuple(int(e) for e in t["exps"])
            sig.check_monomial(mono)
            terms[mono] = Scalar.from_json(t["coeff"])
        return Element(sig, terms)


# ---------------------------------------------------------------- operations


def normal_form(sig: AlgebraSignature, raw: RawSum) -> Element:
    """Normal form of a raw sum of words ``[(coeff, [(symbol, exp), ...]), ...]``."""
    out = sig.zero()
    for c, word in raw:
        out = out + sig.word_element(word).scale(c)
    return out


def mul(x: Element, y: Element) -> Element:
    return x * y


# -------------------------------------------------------------------- presets

_r, _s = R, S
_ri, _si = R.inv(), S.inv()


def _e_rules() -> dict:
    # normal order E1, E3, E2; tails are keyed by symbol until _materialize
    return {
        ("E3", "E1"): (_ri, {}),
        ("E2", "E3"): (_ri, {}),
        ("E2", "E1"): (_si, {"E3": -_si}),
    }


def _materialize(symbols: Sequence[str], rules: dict) -> dict:
    out = {}
    for pair, (q, tail) in rules.items():
        t = {}
        for sym, c in tail.items():
            mono = [0] * len(symbols)
            mono[symbols.index(sym)] = 1
            t[tuple(mono)] = c
        out[pair] = (q, t)
    return out


def _serre_relations() -> list[tuple[str, RawSum]]:
    e1, e2 = ("E1", 1), ("E2", 1)
    return [
        ("serre1", [(1, [e1, e1, e2]), (-(_r + _s), [e1, e2, e1]), (_r * _s, [e2, e1, e1])]),
        ("serre2", [(1, [e1, e2, e2]), (-(_r + _s), [e2, e1, e2]), (_r * _s, [e2, e2, e1])]),
    ]


def _e3_definition() -> tuple[str, RawSum]:
    return ("E3-def", [(1, [("E3", 1)]), (-1, [("E1", 1), ("E2", 1)]), (_s, [("E2", 1), ("E1", 1)])])


# scalar q with  K E = q E K  (K-E commutation of the augmented algebra)
K_E_SCALARS = {
    ("K1", "E1"): scalar_from_rs("1/3", "-2/3"),
    ("K1", "E2"): scalar_from_rs("1/3", "1/3"),
    ("K2", "E1"): scalar_from_rs("-1/3", "-1/3"),
    ("K2", "E2"): scalar_from_rs("2/3", "-1/3"),
}

W_E_SCALARS = {
    ("W1", "E1"): _r * _si,
    ("W1", "E2"): _s,
    ("W2", "E1"): _ri,
    ("W2", "E2"): _r * _si,
}


def _grouplike_preset(name: str, table: dict, glike: Sequence[str]) -> AlgebraSignature:
    symbols = [*glike, "E1", "E3", "E2"]
    gens = [Generator(k, True, 0) for k in glike] + [
        Generator("E1", False, 1),
        Generator("E3", False, 2),
        Generator("E2", False, 1),
    ]
    rules = _materialize(symbols, _e_rules())
    rules[glike[1], glike[0]] = (ONE, {})
    relations: list = []
    for k in glike:
        q3 = table[k, "E1"] * table[k, "E2"]
        scal = {"E1": table[k, "E1"], "E2": table[k, "E2"], "E3": q3}
        for e, q in scal.items():
            # K E = q E K  =>  E K -> q^-1 K E
            rules[e, k] = (q.inv(), {})
        relations.append((f"{k}*{k}^-1", [(1, [(k, 1), (k, -1)]), (-1, [])]))
    relations.append((f"{glike[0]}{glike[1]}-commute", [(1, [(glike[0], 1), (glike[1], 1)]), (-1, [(glike[1], 1), (glike[0], 1)])]))
    for (k, e), q in table.items():
        relations.append((f"{k}{e}", [(1, [(k, 1), (e, 1)]), (-q, [(e, 1), (k, 1)])]))
    relations += _serre_relations()
    relations.append(_e3_definition())
    return AlgebraSignature(name, gens, rules, relations)


def _uplus_like(name: str, invertible: Sequence[str]) -> AlgebraSignature:
    symbols = ["E1", "E3", "E2"]
    gens = [
        Generator("E1", "E1" in invertible, 1),
        Generator("E3", "E3" in invertible, 2),
        Generator("E2", "E2" in invertible, 1),
    ]
    relations = _serre_relations() + [_e3_definition()]
    for g in invertible:
        relations.append((f"{g}*{g}^-1", [(1, [(g, 1), (g, -1)]), (-1, [])]))
    return AlgebraSignature(name, gens, _materialize(symbols, _e_rules()), relations)


def _quantum_torus() -> AlgebraSignature:
    gens = [Generator(f"T{i}", True, 1) for i in (1, 2, 3)]
    rules = {
        ("T2", "T1"): (_si, {}),
        ("T3", "T1"): (_ri, {}),
        ("T3", "T2"): (_r, {}),
    }
    t1, t2, t3 = ("T1", 1), ("T2", 1), ("T3", 1)
    relations = [
        ("T1T2", [(1, [t1, t2]), (-_s, [t2, t1])]),
        ("T1T3", [(1, [t1, t3]), (-_r, [t3, t1])]),
        ("T2T3", [(1, [t2, t3]), (-_ri, [t3, t2])]),
    ] + [(f"T{i}*T{i}^-1", [(1, [(f"T{i}", 1), (f"T{i}", -1)]), (-1, [])]) for i in (1, 2, 3)]
    return AlgebraSignature("Q3", gens, rules, relations)


_PRESET_BUILDERS = {
    "Uplus": lambda: _uplus_like("Uplus", ()),
    "UcheckGE0": lambda: _grouplike_preset("UcheckGE0", K_E_SCALARS, ("K1", "K2")),
    "UW": lambda: _grouplike_preset("UW", W_E_SCALARS, ("W1", "W2")),
    "A3": lambda: _uplus_like("A3", ("E1",)),
    "A2": lambda: _uplus_like("A2", ("E1", "E3")),
    "Q3": _quantum_torus,
}
PRESETS = tuple(_PRESET_BUILDERS)
_PRESET_CACHE: dict[str, AlgebraSignature] = {}

# localisation chain on identical generator sets
CHAIN = ("Uplus", "A3", "A2")


def preset(name: str) -> AlgebraSignature:
    """Return the (shared) signature for one of :data:`PRESETS`."""
    if name not in _PRESET_BUILDERS:
        raise AlgebraError(f"unknown algebra preset {name!r}; choose from {', '.join(PRESETS)}")
    sig = _PRESET_CACHE.get(name)
    if sig is None:
        sig = _PRESET_CACHE[name] = _PRESET_BUILDERS[name]()
    return sig


def promote(x: Element, target: AlgebraSignature) -> Element:
    """View ``x`` in the next localisation along Uplus -> A3 -> A2."""
    src = x.sig.name
    if src not in CHAIN or target.name not in CHAIN or CHAIN.index(target.name) != CHAIN.index(src) + 1:
        raise AlgebraError(f"{src} -> {target.name} is not a chain-adjacent promotion")
    return Element(target, dict(x.terms))


def promote_chain(x: Element, target: AlgebraSignature) -> Element:
    while x.sig is not target:
        if x.sig.name not in CHAIN or CHAIN.index(x.sig.name) + 1 >= len(CHAIN):
            raise AlgebraError(f"cannot promote {x.sig.name} to {target.name}")
        x = promote(x, preset(CHAIN[CHAIN.index(x.sig.name) + 1]))
    return x


# ------------------------------------------------------------ PBW bookkeeping


def pbw_monomials(sig: AlgebraSignature, max_degree: int, box: int = 1, min_degree: int = 0) -> list[Monomial]:
    """Normal monomials with weighted degree in ``[min_degree, max_degree]``.

    Invertible generators range over ``[-box, box]``; weight-0 generators do
    not count towards the degree, the others count with their weight.
    """
    out = []

    def rec(i: int, deg: int, acc: list) -> None:
        if i == sig.n:
            if deg >= min_degree:
                out.append(tuple(acc))
            return
        g = sig.generators[i]
        if g.invertible:
            rng = range(-box, box + 1)
        else:
            rng = range(0, (max_degree - deg) // g.weight + 1) if g.weight else range(0, box + 1)
        for e in rng:
            d = deg + abs(e) * g.weight
            if d <= max_degree:
                rec(i + 1, d, acc + [e])

    rec(0, 0, [])
    return sorted(out, key=sig.order_key)


def graded_dimension(sig: AlgebraSignature, d: int) -> int:
    """Number of PBW monomials of weighted degree exactly ``d``."""
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if any(g.invertible for g in sig.generators):
        raise AlgebraError("graded dimension needs a signature without invertible generators")
    return sum(1 for m in pbw_monomials(sig, d, 0) if sig.weighted_degree(m) == d)


def free_algebra_graded_dimension(d: int) -> int:
    """Dimension of the degree-``d`` part of <E1, E2> / (both Serre relations).

    Independent of the rewriting engine: the ideal's degree-``d`` component is
    spanned by ``u * rel * w`` over all words u, w, and its rank is computed by
    exact elimination over Q(u, v).
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    words = list(itertools.product((1, 2), repeat=d))
    if d < 3:
        return len(words)
    serre = []
    for _, raw in _serre_relations():
        serre.append([(Scalar.coerce(c), tuple(1 if s == "E1" else 2 for s, _ in w)) for c, w in raw])
    rows = []
    for k in range(d - 2):
        for left in itertools.product((1, 2), repeat=k):
            for right in itertools.product((1, 2), repeat=d - 3 - k):
                rows.extend({left + w + right: c for c, w in rel} for rel in serre)
    return len(words) - rank(rows)


@dataclass
class Report:
    ok: bool
    checked: int = 0
    failure: str | None = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def verify_skew_presentation(degree_bound: int = 4) -> Report:
    """Check the Ore-extension tower C[E1][E3; tau2, delta2][E2; tau3, delta3].

    ``E3 a = tau2(a) E3 + delta2(a)`` for a in span{E1^i} and
    ``E2 a = tau3(a) E2 + delta3(a)`` for a in span{E1^i E3^j}, with the twisted
    maps extended from their generator values by the skew Leibniz rule.
    """
    sig = preset("Uplus")
    e3, e2 = sig.gen("E3"), sig.gen("E2")
    tau2 = {"E1": _ri}
    delta2 = {"E1": sig.zero()}
    tau3 = {"E1": _si, "E3": _ri}
    delta3 = {"E1": e3.scale(-_si), "E3": sig.zero()}

    def twisted(word: list[str], tau: dict, delta: dict) -> tuple[Scalar, Element]:
        # tau is diagonal on letters; delta(x1..xn) = sum tau(x1..x_{k-1}) delta(x_k) x_{k+1}..x_n
        lam = ONE
        total = sig.zero()
        for k, x in enumerate(word):
            rest = sig.word_element([(y, 1) for y in word[k + 1:]])
            prefix = sig.word_element([(y, 1) for y in word[:k]]).scale(lam)
            total = total + prefix * delta[x] * rest
            lam = lam * tau[x]
        lam_full = ONE
        for x in word:
            lam_full = lam_full * tau[x]
        return lam_full, total

    checked = 0
    for i in range(degree_bound + 1):
        word = ["E1"] * i
        a = sig.word_element([(x, 1) for x in word])
        lam, d = twisted(word, tau2, delta2)
        lhs, rhs = e3 * a, a.scale(lam) * e3 + d
        checked += 1
        if lhs != rhs:
            return Report(False, checked, f"E3*E1^{i}: {lhs} != {rhs}")
    for i in range(degree_bound + 1):
        for j in range((degree_bound - i) // 2 + 1):
            word = ["E1"] * i + ["E3"] * j
            a = sig.word_element([(x, 1) for x in word])
            lam, d = twisted(word, tau3, delta3)
            lhs, rhs = e2 * a, a.scale(lam) * e2 + d
            checked += 1
            if lhs != rhs:
                return Report(False, checked, f"E2*E1^{i}E3^{j}: {lhs} != {rhs}")
    return Report(True, checked)


# -------------------------------------------------------- random test inputs

COEFF_POOL = (
    ONE,
    Scalar(2),
    Scalar(-1),
    Scalar(1) / 2,
    R,
    S,
    R * S,
    R.inv(),
    scalar_from_rs("1/3", "-2/3"),
    R + S,
)


def random_element(
    sig: AlgebraSignature,
    rng: random.Random,
    max_degree: int = 3,
    n_terms: int = 3,
    box: int = 1,
    pool: Sequence[Scalar] = COEFF_POOL,
) -> Element:
    monos = _pbw_cache(sig, max_degree, box)
    terms: dict = {}
    for _ in range(n_terms):
        _add_into(terms, rng.choice(monos), rng.choice(pool))
    return Element(sig, terms)


_PBW_CACHE: dict = {}


def _pbw_cache(sig: AlgebraSignature, d: int, box: int) -> list[Monomial]:
    key = (sig.name, d, box)
    if key not in _PBW_CACHE:
        _PBW_CACHE[key] = pbw_monomials(sig, d, box)
    return _PBW_CACHE[key]


def find_right_inverse(x: Element, max_degree: int = 3, box: int = 1) -> Element | None:
    """Search y with ``x * y = 1`` among PBW monomials up to the given size."""
    sig = x.sig
    basis = pbw_monomials(sig, max_degree, box)
    columns = [(x * sig.monomial(m)).terms for m in basis]
    sol = LinearSystem(columns).solve({sig.unit: ONE})
    if sol is None:
        return None
    return Element(sig, {basis[j]: c for j, c in sol.items()})
