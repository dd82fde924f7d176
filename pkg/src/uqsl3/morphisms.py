"""Monomial endomorphisms of the augmented algebra and their classification.

A candidate map is determined by nonzero scalars a1, a2, b1, b2, integers
a, b, c, d and an optional swap sigma of the indices 1, 2::

    K_l  -> a_l K_sigma(l)
    E1   -> b1 K1^a K2^b E_sigma(1)
    E2   -> b2 K1^c K2^d E_sigma(2)
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace

from .algebra import Element, preset
from .hopf import TensorElement, coproduct, counit, tensor_map
from .scalars import ONE, R, S, Scalar


@dataclass(frozen=True)
class AutParams:
    a1: Scalar = ONE
    a2: Scalar = ONE
    b1: Scalar = ONE
    b2: Scalar = ONE
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0
    swap: bool = False

    def __post_init__(self):
        for name in ("a1", "a2", "b1", "b2"):
            v = Scalar.coerce(getattr(self, name))
            if v.is_zero():
                raise ValueError(f"{name} must be nonzero")
            object.__setattr__(self, name, v)

    @property
    def exponents(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def constraints(self) -> dict[str, bool]:
        return {"b_eq_c": self.b == self.c, "sum_zero": self.a + self.b + self.d == 0}

    def is_valid(self) -> bool:
        """The closed-form answer: no swap, b = c and a + b + d = 0."""
        return not self.swap and all(self.constraints().values())

    def to_json(self) -> dict:
        return {
            "a1": self.a1.to_text(),
            "a2": self.a2.to_text(),
            "b1": self.b1.to_text(),
            "b2": self.b2.to_text(),
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "d": self.d,
            "swap": self.swap,
        }


IDENTITY = AutParams()


@dataclass
class Verdict:
    ok: bool
    witness: str | None = None
    residue: Element | None = None

    def __bool__(self) -> bool:
        return self.ok


# ---------------------------------------------------------------------- apply


class _Images:
    """Generator and monomial images of one parameter set, memoised."""

    _cache: dict = {}

    def __new__(cls, p: AutParams):
        hit = cls._cache.get(p)
        if hit is None:
            hit = super().__new__(cls)
            hit._init(p)
            cls._cache[p] = hit
        return hit

    def _init(self, p: AutParams) -> None:
        sig = self.sig = preset("UcheckGE0")
        k = ("K2", "K1") if p.swap else ("K1", "K2")
        e = ("E2", "E1") if p.swap else ("E1", "E2")
        img = {
            ("K1", 1): sig.gen(k[0]).scale(p.a1),
            ("K1", -1): sig.gen(k[0], -1).scale(p.a1.inv()),
            ("K2", 1): sig.gen(k[1]).scale(p.a2),
            ("K2", -1): sig.gen(k[1], -1).scale(p.a2.inv()),
            ("E1", 1): sig.monomial((p.a, p.b, 0, 0, 0)) * sig.gen(e[0]).scale(p.b1),
            ("E2", 1): sig.monomial((p.c, p.d, 0, 0, 0)) * sig.gen(e[1]).scale(p.b2),
        }
        img["E3", 1] = img["E1", 1] * img["E2", 1] - (img["E2", 1] * img["E1", 1]).scale(S)
        self.letters = img
        self.monos: dict = {}

    def word(self, word) -> Element:
        out = self.sig.one()
        for sym, e in word:
            step = 1 if e > 0 else -1
            for _ in range(abs(e)):
                out = out * self.letters[sym, step]
        return out

    def monomial(self, mono) -> Element:
        hit = self.monos.get(mono)
        if hit is None:
            word = [(g.symbol, e) for g, e in zip(self.sig.generators, mono) if e]
            hit = self.monos[mono] = self.word(word)
        return hit


def apply(params: AutParams, x: Element) -> Element:
    """Multiplicative, linear extension of the generator images."""
    im = _Images(params)
    if x.sig is not im.sig:
        raise ValueError("automorphisms act on UcheckGE0 elements")
    out = im.sig.zero()
    for m, c in x.terms.items():
        out = out + im.monomial(m).scale(c)
    return out


def _defining_relations():
    return [(n, r) for n, r in preset("UcheckGE0").relations() if n != "E3-def"]


def respects_relations(params: AutParams) -> Verdict:
    """Do the images satisfy every defining relation of the augmented algebra?"""
    im = _Images(params)
    for name, raw in _defining_relations():
        residue = im.sig.zero()
        for c, word in raw:
            residue = residue + im.word(word).scale(c)
        if not residue.is_zero():
            return Verdict(False, f"relation {name} has residue {residue}", residue)
    return Verdict(True)


def classify_box(bound: int, scalars: AutParams = IDENTITY) -> list[tuple[int, int, int, int, bool]]:
    """All ``(a, b, c, d, swap)`` in the box whose candidate map respects the relations."""
    if bound < 0:
        raise ValueError("bound must be nonnegative")
    out = []
    rng = range(-bound, bound + 1)
    for swap in (False, True):
        for a, b, c, d in itertools.product(rng, repeat=4):
            p = replace(scalars, a=a, b=b, c=c, d=d, swap=swap)
            if respects_relations(p):
                out.append((a, b, c, d, swap))
            _Images._cache.pop(p, None)
    return sorted(out)


def expected_box(bound: int) -> list[tuple[int, int, int, int, bool]]:
    """Closed-form answer for :func:`classify_box`."""
    rng = range(-bound, bound + 1)
    return sorted(
        (a, b, c, d, False)
        for a, b, c, d in itertools.product(rng, repeat=4)
        if b == c and a + b + d == 0
    )


# ---------------------------------------------------------------- group law


def compose(p: AutParams, q: AutParams) -> AutParams:
    """Parameters of ``p o q`` (apply q first)."""
    if not (p.is_valid() and q.is_valid()):
        raise ValueError("compose is defined on valid (classified) parameters only")
    return AutParams(
        a1=p.a1 * q.a1,
        a2=p.a2 * q.a2,
        b1=p.b1 * q.b1 * p.a1 ** q.a * p.a2 ** q.b,
        b2=p.b2 * q.b2 * p.a1 ** q.c * p.a2 ** q.d,
        a=p.a + q.a,
        b=p.b + q.b,
        c=p.c + q.c,
        d=p.d + q.d,
    )


def inverse(p: AutParams) -> AutParams:
    if not p.is_valid():
        raise ValueError("inverse is defined on valid parameters only")
    return AutParams(
        a1=p.a1.inv(),
        a2=p.a2.inv(),
        b1=p.b1.inv() * p.a1**p.a * p.a2**p.b,
        b2=p.b2.inv() * p.a1**p.c * p.a2**p.d,
        a=-p.a,
        b=-p.b,
        c=-p.c,
        d=-p.d,
    )


# ------------------------------------------------------------ Hopf condition


def _theta_tensor(params: AutParams, t: TensorElement) -> TensorElement:
    f = lambda y: apply(params, y)  # noqa: E731
    return tensor_map(tensor_map(t, 0, f), 1, f)


def is_hopf_automorphism(params: AutParams) -> Verdict:
    """``Delta o theta = (theta (x) theta) o Delta`` and ``eps o theta = eps`` on generators."""
    if not respects_relations(params):
        raise ValueError("parameters do not define an algebra endomorphism")
    sig = preset("UcheckGE0")
    for g in ("K1", "K2", "E1", "E2"):
        x = sig.gen(g)
        lhs = coproduct(apply(params, x))
        rhs = _theta_tensor(params, coproduct(x))
        if lhs != rhs:
            return Verdict(False, f"coproduct mismatch on {g}")
        if counit(apply(params, x)) != counit(x):
            return Verdict(False, f"counit mismatch on {g}")
    return Verdict(True)


# ------------------------------------------------------------ exponent matrix


@dataclass(frozen=True)
class ExponentMatrix:
    rows: tuple[tuple[int, int], tuple[int, int]] = field(default=((1, 0), (0, 1)))

    @property
    def det(self) -> int:
        (x, y), (z, w) = self.rows
        return x * w - y * z

    def inverse(self) -> "ExponentMatrix":
        (x, y), (z, w) = self.rows
        det = self.det
        if det not in (1, -1):
            raise ValueError("matrix is not invertible over Z")
        return ExponentMatrix(((w * det, -y * det), (-z * det, x * det)))

    def in_gl2_nonneg(self) -> bool:
        """Invertible over Z with nonnegative entries."""
        return self.det in (1, -1) and all(e >= 0 for row in self.rows for e in row)

    def is_permutation(self) -> bool:
        return self.rows in (((1, 0), (0, 1)), ((0, 1), (1, 0)))


def exponent_matrix(params: AutParams) -> ExponentMatrix:
    """Row l holds the K1, K2 exponents of theta(K_l)."""
    sig = preset("UcheckGE0")
    rows = []
    for g in ("K1", "K2"):
        (mono,) = apply(params, sig.gen(g)).terms
        rows.append((mono[0], mono[1]))
    return ExponentMatrix(tuple(rows))


def permutation_matrix_property(max_entry: int = 3) -> tuple[bool, list[ExponentMatrix]]:
    """Brute force over 2x2 matrices with entries in ``[0, max_entry]``.

    Returns whether every matrix M with M and M^-1 both nonnegative and
    integral is a permutation matrix, together with those matrices.
    """
    found = []
    for x, y, z, w in itertools.product(range(max_entry + 1), repeat=4):
        m = ExponentMatrix(((x, y), (z, w)))
        if m.in_gl2_nonneg() and m.inverse().in_gl2_nonneg():
            found.append(m)
    return all(m.is_permutation() for m in found), found


# sample values for a_l, b_l in randomised checks: 1, 2, r, s, rs
SCALAR_SAMPLES = (ONE, Scalar(2), R, S, R * S)
