"""Tensor powers of the augmented algebra and its Hopf structure maps."""

from __future__ import annotations

import random
from typing import Callable, Mapping

from .algebra import (
    AlgebraError,
    AlgebraSignature,
    Element,
    Report,
    _add_into,
    pbw_monomials,
    preset,
    random_element,
)
from .parser import render_monomial
from .scalars import ONE, S, Scalar


class TensorElement:
    """Scalar combination of ``m_1 (x) ... (x) m_k`` with normal monomials.

    Multiplication is slot-wise without any braiding twist.
    """

    __slots__ = ("sig", "arity", "terms")

    def __init__(self, sig: AlgebraSignature, arity: int, terms: Mapping | None = None):
        self.sig = sig
        self.arity = arity
        self.terms = {k: c for k, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def pure(cls, *factors: Element) -> "TensorElement":
        sig = factors[0].sig
        acc = {(): ONE}
        for f in factors:
            if f.sig is not sig:
                raise AlgebraError("tensor factors must share a signature")
            acc = {k + (m,): c * x for k, c in acc.items() for m, x in f.terms.items()}
        return cls(sig, len(factors), acc)

    def _check(self, other: "TensorElement") -> None:
        if other.sig is not self.sig or other.arity != self.arity:
            raise AlgebraError("tensor shape mismatch")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        acc = dict(self.terms)
        for k, c in other.terms.items():
            _add_into(acc, k, c)
        return TensorElement(self.sig, self.arity, acc)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.sig, self.arity, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        c = Scalar.coerce(c)
        return TensorElement(self.sig, self.arity, {k: c * x for k, x in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        self._check(other)
        mul = self.sig._mul_mono
        acc: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                cur = {(): c1 * c2}
                for a, b in zip(k1, k2):
                    prod = mul(a, b)
                    cur = {k + (m,): c * x for k, c in cur.items() for m, x in prod.items()}
                for k, c in cur.items():
                    _add_into(acc, k, c)
        return TensorElement(self.sig, self.arity, acc)

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorElement)
            and other.sig is self.sig
            and other.arity == self.arity
            and other.terms == self.terms
        )

    def __hash__(self) -> int:
        return hash((self.sig.name, self.arity, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        key = self.sig.order_key
        return sorted(self.terms.items(), key=lambda t: [key(m) for m in t[0]], reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, c in self.sorted_terms():
            neg, mag = c.signed_parts()
            slots = " (x) ".join(render_monomial(self.sig, m) or "1" for m in k)
            if mag.is_one():
                body = slots
            else:
                text = mag.to_text()
                if mag.den.is_one() and not mag.num.is_term():
                    text = f"({text})"
                body = f"{text}*{slots}" if len(k) == 1 else f"{text}*({slots})"
            out.append(("-" if neg else "") + body if not out else (" - " if neg else " + ") + body)
        return "".join(out)

    def __repr__(self) -> str:
        return f"TensorElement[{self.sig.name}]({self})"

    def to_json(self) -> dict:
        return {
            "algebra": self.sig.name,
            "arity": self.arity,
            "terms": [{"coeff": c.to_json(), "exps": [list(m) for m in k]} for k, c in self.sorted_terms()],
        }


def tensor_map(t: TensorElement, slot: int, f: Callable[[Element], object]) -> TensorElement:
    """Apply ``f`` to one tensor slot; ``f`` may return an Element or a TensorElement."""
    sig = t.sig
    acc: dict = {}
    arity = None
    for k, c in t.terms.items():
        img = f(Element(sig, {k[slot]: ONE}))
        if isinstance(img, Element):
            img_terms = {(m,): x for m, x in img.terms.items()}
            width = 1
        else:
            img_terms, width = img.terms, img.arity
        arity = t.arity - 1 + width
        for kk, x in img_terms.items():
            _add_into(acc, k[:slot] + kk + k[slot + 1:], c * x)
    if arity is None:
        arity = t.arity
    return TensorElement(sig, arity, acc)


def multiply(t: TensorElement) -> Element:
    """Multiplication map A (x) A -> A (and its iterates)."""
    out = t.sig.zero()
    for k, c in t.terms.items():
        x = t.sig.one()
        for m in k:
            x = x * Element(t.sig, {m: ONE})
        out = out + x.scale(c)
    return out


# ------------------------------------------------------------- Hopf structure

# exponent vectors of the group-like attached to E1 and E2
GROUPLIKES = {
    "UcheckGE0": ((2, -1), (-1, 2)),
    "UW": ((1, 0), (0, 1)),
}


def _hopf_sig(x) -> AlgebraSignature:
    sig = x if isinstance(x, AlgebraSignature) else x.sig
    if sig.name not in GROUPLIKES:
        raise AlgebraError(f"no Hopf structure registered for {sig.name}")
    return sig


def _grouplike(sig: AlgebraSignature, which: int, sign: int = 1) -> Element:
    a, b = GROUPLIKES[sig.name][which]
    return sig.monomial((sign * a, sign * b, 0, 0, 0))


def _k_names(sig: AlgebraSignature) -> tuple[str, str]:
    return sig.generators[0].symbol, sig.generators[1].symbol


_DELTA_CACHE: dict = {}


def _delta_generators(sig: AlgebraSignature) -> dict[str, TensorElement]:
    key = ("gens", sig.name)
    if key not in _DELTA_CACHE:
        k1, k2 = _k_names(sig)
        one = sig.one()
        out = {}
        for k in (k1, k2):
            for e in (1, -1):
                g = sig.gen(k, e)
                out[k, e] = TensorElement.pure(g, g)
        for which, e in ((0, "E1"), (1, "E2")):
            ge = sig.gen(e)
            out[e, 1] = TensorElement.pure(ge, one) + TensorElement.pure(_grouplike(sig, which), ge)
        out["E3", 1] = out["E1", 1] * out["E2", 1] - (out["E2", 1] * out["E1", 1]).scale(S)
        _DELTA_CACHE[key] = out
    return _DELTA_CACHE[key]


def _delta_monomial(sig: AlgebraSignature, mono) -> TensorElement:
    key = (sig.name, mono)
    hit = _DELTA_CACHE.get(key)
    if hit is not None:
        return hit
    gens = _delta_generators(sig)
    one = sig.one()
    out = TensorElement.pure(one, one)
    for g, e in zip(sig.generators, mono):
        step = 1 if e > 0 else -1
        for _ in range(abs(e)):
            out = out * gens[g.symbol, step]
    _DELTA_CACHE[key] = out
    return out


def coproduct(x: Element) -> TensorElement:
    """Algebra-map extension of the coproduct on generators."""
    sig = _hopf_sig(x)
    out = TensorElement(sig, 2)
    for m, c in x.terms.items():
        out = out + _delta_monomial(sig, m).scale(c)
    return out


def counit(x: Element) -> Scalar:
    """Group-likes go to 1, every monomial containing an E goes to 0."""
    _hopf_sig(x)
    total = Scalar(0)
    for m, c in x.terms.items():
        if not any(m[2:]):
            total = total + c
    return total


def default_antipode_images(sig: AlgebraSignature) -> dict[str, Element]:
    """``S(E_i) = -w_i^-1 E_i`` with ``w_i`` the group-like in the coproduct of E_i."""
    return {
        "E1": -(_grouplike(sig, 0, -1) * sig.gen("E1")),
        "E2": -(_grouplike(sig, 1, -1) * sig.gen("E2")),
    }


def rejected_antipode_images() -> dict[str, Element]:
    """Candidate images ``S(E1) = -K1^2 K2^-1 E1`` and ``S(E2) = -K1^-1 K2^2 E1``.

    They violate the antipode law; kept as a regression fixture.
    """
    sig = preset("UcheckGE0")
    return {
        "E1": -(sig.monomial((2, -1, 0, 0, 0)) * sig.gen("E1")),
        "E2": -(sig.monomial((-1, 2, 0, 0, 0)) * sig.gen("E1")),
    }


def antipode(x: Element, images: Mapping[str, Element] | None = None) -> Element:
    """Anti-multiplicative extension: ``S(x y) = S(y) S(x)``."""
    sig = _hopf_sig(x)
    img = dict(default_antipode_images(sig) if images is None else images)
    img["E3"] = img["E2"] * img["E1"] - (img["E1"] * img["E2"]).scale(S)
    k1, k2 = _k_names(sig)
    for k in (k1, k2):
        img[k] = sig.gen(k, -1)
        img[k + "^-1"] = sig.gen(k)
    out = sig.zero()
    for m, c in x.terms.items():
        y = sig.one()
        for g, e in zip(sig.generators, m):
            key = g.symbol if e >= 0 else g.symbol + "^-1"
            for _ in range(abs(e)):
                y = img[key] * y
        out = out + y.scale(c)
    return out


def _tensor_unit(sig: AlgebraSignature, x: Element) -> Element:
    return sig.scalar(counit(x))


def verify_hopf_axioms(
    degree_bound: int = 3,
    sig: AlgebraSignature | None = None,
    antipode_images: Mapping[str, Element] | None = None,
    box: int = 1,
    random_pairs: int = 20,
    seed: int = 0,
) -> Report:
    """Coassociativity, counit and antipode laws, plus multiplicativity of the
    coproduct and counit, on every PBW monomial up to ``degree_bound`` with
    group-like exponents in ``[-box, box]`` and on seeded random products.
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    sig = sig or preset("UcheckGE0")
    checked = 0

    def S_(y: Element) -> Element:
        return antipode(y, antipode_images)

    def fail(what: str, x) -> Report:
        return Report(False, checked, f"{what} fails on {x}")

    for mono in pbw_monomials(sig, degree_bound, box):
        x = sig.monomial(mono)
        d = coproduct(x)
        if tensor_map(d, 0, coproduct) != tensor_map(d, 1, coproduct):
            return fail("coassociativity", x)
        if multiply(tensor_map(d, 0, lambda y: _tensor_unit(sig, y))) != x:
            return fail("left counit law", x)
        if multiply(tensor_map(d, 1, lambda y: _tensor_unit(sig, y))) != x:
            return fail("right counit law", x)
        unit = sig.scalar(counit(x))
        if multiply(tensor_map(d, 0, S_)) != unit:
            return fail("antipode law m(S (x) id)D", x)
        if multiply(tensor_map(d, 1, S_)) != unit:
            return fail("antipode law m(id (x) S)D", x)
        checked += 1

    letters = [sig.gen(g.symbol, e) for g in sig.generators for e in ((1, -1) if g.invertible else (1,))]
    pairs = [(a, b) for a in letters for b in letters]
    rng = random.Random(seed)
    pairs += [
        (random_element(sig, rng, degree_bound - 1, 2), random_element(sig, rng, degree_bound - 1, 2))
        for _ in range(random_pairs)
    ]
    for a, b in pairs:
        if coproduct(a * b) != coproduct(a) * coproduct(b):
            return fail("multiplicativity of the coproduct", f"{a} * {b}")
        if counit(a * b) != counit(a) * counit(b):
            return fail("multiplicativity of the counit", f"{a} * {b}")
        checked += 1
    return Report(True, checked)
