"""Derivations of U+ and the quantum-torus embedding.

Every derivation is recovered as ``ad_t + mu1 D1 + mu2 D2`` by exact linear
algebra over PBW coordinates; ``D1`` scales E1 (and E3), ``D2`` scales E2 (and
E3).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .algebra import (
    AlgebraError,
    Element,
    Report,
    _add_into,
    pbw_monomials,
    preset,
)
from .linalg import LinearSystem
from .scalars import ONE, R, S, ZERO, Scalar


class DerivationError(AlgebraError):
    pass


def _uplus():
    return preset("Uplus")


@dataclass(eq=False)
class Derivation:
    """A derivation of U+ given by the images of E1 and E2."""

    e1: Element
    e2: Element
    _memo: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        sig = _uplus()
        if self.e1.sig is not sig or self.e2.sig is not sig:
            raise DerivationError("derivation images must be U+ elements")

    @property
    def e3(self) -> Element:
        sig = _uplus()
        E1, E2 = sig.gen("E1"), sig.gen("E2")
        return self.e1 * E2 + E1 * self.e2 - (self.e2 * E1 + E2 * self.e1).scale(S)

    def images(self) -> dict[str, Element]:
        return {"E1": self.e1, "E2": self.e2, "E3": self.e3}

    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.e1 + other.e1, self.e2 + other.e2)

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.e1 - other.e1, self.e2 - other.e2)

    def scale(self, c) -> "Derivation":
        return Derivation(self.e1.scale(c), self.e2.scale(c))

    __rmul__ = scale

    def __eq__(self, other) -> bool:
        return isinstance(other, Derivation) and self.e1 == other.e1 and self.e2 == other.e2

    def __hash__(self) -> int:
        return hash((self.e1, self.e2))

    def serre_residues(self) -> dict[str, Element]:
        """Leibniz expansion of each defining relation; all zero iff well defined."""
        sig = _uplus()
        img = {"E1": self.e1, "E2": self.e2}
        out = {}
        for name, raw in sig.relations():
            if name == "E3-def":
                continue
            total = sig.zero()
            for c, word in raw:
                letters = [sym for sym, e in word for _ in range(e)]
                for k, sym in enumerate(letters):
                    left = sig.word_element([(x, 1) for x in letters[:k]])
                    right = sig.word_element([(x, 1) for x in letters[k + 1:]])
                    total = total + (left * img[sym] * right).scale(c)
            out[name] = total
        return out

    def is_well_defined(self) -> bool:
        return all(r.is_zero() for r in self.serre_residues().values())

    def _on_monomial(self, mono) -> Element:
        hit = self._memo.get(mono)
        if hit is not None:
            return hit
        sig = _uplus()
        if not any(mono):
            return sig.zero()
        j = max(i for i, e in enumerate(mono) if e)
        prefix = list(mono)
        prefix[j] -= 1
        prefix = tuple(prefix)
        letter = sig.generators[j].symbol
        # D(M y) = D(M) y + M D(y)
        y = sig.gen(letter)
        m = sig.monomial(prefix)
        img = self._memo.get("images")
        if img is None:
            img = self._memo["images"] = self.images()
        out = self._on_monomial(prefix) * y + m * img[letter]
        self._memo[mono] = out
        return out


def apply_derivation(D: Derivation, x: Element, check: bool = False) -> Element:
    """Linear extension of ``D`` by the Leibniz rule."""
    if check and not D.is_well_defined():
        raise DerivationError("derivation does not annihilate the Serre relations")
    if x.sig is not _uplus():
        raise DerivationError("derivations act on U+ elements")
    out = x.sig.zero()
    for m, c in x.terms.items():
        out = out + D._on_monomial(m).scale(c)
    return out


def inner(t: Element) -> Derivation:
    """``ad_t : x -> t x - x t``."""
    sig = _uplus()
    E1, E2 = sig.gen("E1"), sig.gen("E2")
    return Derivation(t * E1 - E1 * t, t * E2 - E2 * t)


def basis_derivation(i: int) -> Derivation:
    """D1 (E1 -> E1, E2 -> 0) or D2 (E1 -> 0, E2 -> E2)."""
    sig = _uplus()
    if i == 1:
        return Derivation(sig.gen("E1"), sig.zero())
    if i == 2:
        return Derivation(sig.zero(), sig.gen("E2"))
    raise ValueError("basis derivations are D1 and D2")


D1 = basis_derivation(1)
D2 = basis_derivation(2)


# ---------------------------------------------------------- torus embedding


def _embed_images() -> dict[tuple[str, int], Element]:
    q3 = preset("Q3")
    c = (R - S).inv()
    T1, T3 = q3.gen("T1"), q3.gen("T3")
    return {
        ("E1", 1): T1,
        ("E1", -1): q3.gen("T1", -1),
        ("E3", 1): T3,
        ("E3", -1): q3.gen("T3", -1),
        ("E2", 1): q3.gen("T2") + (T3 * q3.gen("T1", -1)).scale(c),
    }


_EMBED_CACHE: dict = {}


def torus_embed(x: Element) -> Element:
    """Algebra map into Q3: E1 -> T1, E2 -> T2 + (r - s)^-1 T3 T1^-1, E3 -> T3.

    Accepts U+ elements and elements of its localisations A3, A2.
    """
    if x.sig.name not in ("Uplus", "A3", "A2"):
        raise DerivationError(f"cannot embed {x.sig.name} elements into Q3")
    if not _EMBED_CACHE:
        _EMBED_CACHE["gens"] = _embed_images()
    img = _EMBED_CACHE["gens"]
    q3 = preset("Q3")
    out = q3.zero()
    for mono, c in x.terms.items():
        key = mono
        y = _EMBED_CACHE.get(key)
        if y is None:
            y = q3.one()
            for g, e in zip(x.sig.generators, mono):
                step = 1 if e > 0 else -1
                for _ in range(abs(e)):
                    y = y * img[g.symbol, step]
            _EMBED_CACHE[key] = y
        out = out + y.scale(c)
    return out


def embed_raw(raw) -> Element:
    """Image in Q3 of a raw word sum in E1, E2, E3."""
    img = _EMBED_CACHE.get("gens") or _embed_images()
    q3 = preset("Q3")
    out = q3.zero()
    for c, word in raw:
        y = q3.one()
        for sym, e in word:
            for _ in range(e):
                y = y * img[sym, 1]
        out = out + y.scale(c)
    return out


def torus_coordinates_in_A3() -> tuple[Element, Element, Element]:
    """T1, T2, T3 written in A3 = U+[E1^-1]."""
    a3 = preset("A3")
    E1, E2, E3 = a3.gen("E1"), a3.gen("E2"), a3.gen("E3")
    return E1, E2 - (E3 * a3.gen("E1", -1)).scale((R - S).inv()), E3


def check_embedding() -> Report:
    """Serre images vanish in Q3 and the T-relations hold inside A3."""
    details = {}
    for name, raw in _uplus().relations():
        if name == "E3-def":
            continue
        img = embed_raw(raw)
        details[f"I({name})"] = str(img)
        if not img.is_zero():
            return Report(False, len(details), f"image of {name} is {img}", details)
    E1E2 = [(1, [("E1", 1), ("E2", 1)]), (-S, [("E2", 1), ("E1", 1)])]
    if embed_raw(E1E2) != preset("Q3").gen("T3"):
        return Report(False, len(details), "I(E1 E2 - s E2 E1) != T3", details)
    T1, T2, T3 = torus_coordinates_in_A3()
    checks = {
        "T1T2 - s T2T1": T1 * T2 - (T2 * T1).scale(S),
        "T1T3 - r T3T1": T1 * T3 - (T3 * T1).scale(R),
        "T2T3 - r^-1 T3T2": T2 * T3 - (T3 * T2).scale(R.inv()),
    }
    for name, val in checks.items():
        details[name] = str(val)
        if not val.is_zero():
            return Report(False, len(details), f"{name} = {val} in A3", details)
    return Report(True, len(details) + 1, None, details)


@dataclass(frozen=True)
class CentralTorusDerivation:
    """Diagonal derivation of Q3 with ``T_i -> alpha_i T_i``."""

    alpha1: Scalar = ZERO
    alpha2: Scalar = ZERO
    alpha3: Scalar = ZERO

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "alpha3"):
            object.__setattr__(self, name, Scalar.coerce(getattr(self, name)))

    def __call__(self, x: Element) -> Element:
        if x.sig is not preset("Q3"):
            raise DerivationError("central derivations act on Q3")
        alphas = (self.alpha1, self.alpha2, self.alpha3)
        terms = {}
        for m, c in x.terms.items():
            w = sum((a * e for a, e in zip(alphas, m)), ZERO)
            _add_into(terms, m, c * w)
        return Element(x.sig, terms)


def central_action_residue(delta: CentralTorusDerivation) -> Element:
    """``delta(I(E2)) - alpha2 I(E2)``; equals ``(alpha3 - alpha1 - alpha2)/(r - s) T3 T1^-1``."""
    iE2 = torus_embed(_uplus().gen("E2"))
    return delta(iE2) - iE2.scale(delta.alpha2)


def spectrum(i: int) -> CentralTorusDerivation:
    """Torus spectrum matching D1 = (1, 0, 1) or D2 = (0, 1, 1)."""
    return CentralTorusDerivation(1, 0, 1) if i == 1 else CentralTorusDerivation(0, 1, 1)


# -------------------------------------------------------------- decomposition


@dataclass
class Decomposition:
    t: Element
    mu1: Scalar
    mu2: Scalar
    bound: int
    kernel_dim: int

    def reconstruct(self) -> Derivation:
        return inner(self.t) + D1.scale(self.mu1) + D2.scale(self.mu2)


class _DecompositionSystem:
    """Linear map (t, mu1, mu2) -> (ad_t + mu1 D1 + mu2 D2)(E1, E2) at a degree bound."""

    _cache: dict = {}

    def __new__(cls, bound: int):
        hit = cls._cache.get(bound)
        if hit is None:
            hit = super().__new__(cls)
            hit._init(bound)
            cls._cache[bound] = hit
        return hit

    def _init(self, bound: int) -> None:
        sig = _uplus()
        self.basis = pbw_monomials(sig, bound)
        E = {1: sig.gen("E1"), 2: sig.gen("E2")}
        cols = []
        for m in self.basis:
            x = sig.monomial(m)
            col = {}
            for i, g in E.items():
                for mono, c in (x * g - g * x).terms.items():
                    col[i, mono] = c
            cols.append(col)
        cols.append({(1, (1, 0, 0)): ONE})
        cols.append({(2, (0, 0, 1)): ONE})
        self.system = LinearSystem(cols)


def decomposition_kernel_dim(bound: int) -> int:
    """Dimension of ``{(t, mu1, mu2) : ad_t + mu1 D1 + mu2 D2 = 0}`` with deg t <= bound."""
    return len(_DecompositionSystem(bound).system.kernel())


def decompose(D: Derivation, degree_bound: int | None = None) -> Decomposition:
    """Write ``D = ad_t + mu1 D1 + mu2 D2`` with ``t`` of zero constant term."""
    if not D.is_well_defined():
        raise DerivationError("derivation does not annihilate the Serre relations")
    if degree_bound is None:
        degree_bound = 2 + max(D.e1.degree(), D.e2.degree(), 0)
    ds = _DecompositionSystem(degree_bound)
    rhs = {}
    for i, img in ((1, D.e1), (2, D.e2)):
        for mono, c in img.terms.items():
            rhs[i, mono] = c
    x, bad = ds.system.inconsistency(rhs)
    if bad:
        raise DerivationError(
            f"no decomposition with deg t <= {degree_bound}: {bad} equation(s) inconsistent"
        )
    n = len(ds.basis)
    sig = _uplus()
    t = Element(sig, {ds.basis[j]: c for j, c in x.items() if j < n})
    # constant column is zero, so it is free and set to 0 by the solver
    assert t.constant_term().is_zero()
    return Decomposition(t, x.get(n, ZERO), x.get(n + 1, ZERO), degree_bound, len(ds.system.kernel()))


# ------------------------------------------------------------------- centre


def center_probe(degree_bound: int, algebra: str = "Uplus") -> list[Element]:
    """Basis of the elements commuting with every generator, within a box.

    For U+ the box is weighted degree ``<= degree_bound``; for Q3 it is the
    Laurent cube ``[-degree_bound, degree_bound]^3``.
    """
    if degree_bound < 0:
        raise ValueError("degree_bound must be nonnegative")
    sig = preset(algebra)
    if algebra == "Uplus":
        basis = pbw_monomials(sig, degree_bound)
        gens = [sig.gen("E1"), sig.gen("E2")]
    elif algebra == "Q3":
        rng = range(-degree_bound, degree_bound + 1)
        basis = list(itertools.product(rng, repeat=3))
        gens = [sig.gen(f"T{i}") for i in (1, 2, 3)]
    else:
        raise DerivationError(f"center probe is implemented for Uplus and Q3, not {algebra}")
    cols = []
    for m in basis:
        x = sig.monomial(m)
        col = {}
        for i, g in enumerate(gens):
            for mono, c in (x * g - g * x).terms.items():
                col[i, mono] = c
        cols.append(col)
    kernel = LinearSystem(cols).kernel()
    return [Element(sig, {basis[j]: c for j, c in vec.items()}) for vec in kernel]
