"""Exact coefficient field Q(u, v) with u = r^(1/3) and v = s^(1/3).

Every power r^(a/3) s^(b/3) becomes the Laurent monomial u^a v^b, so all
exponents are integers.  A :class:`Scalar` is a reduced fraction of Laurent
polynomials kept in a canonical form, which makes ``==`` decide equality in
the field.
"""

from __future__ import annotations

import cmath
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

from sympy import QQ
from sympy.polys.rings import ring

_QQ_RING, _U, _V = ring("u,v", QQ)

Exp = tuple[int, int]


class LaurentPoly:
    """Finite map from exponent pairs ``(m, n)`` to nonzero rationals."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        self.terms = {e: Fraction(c) for e, c in terms.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "LaurentPoly":
        # caller guarantees Fraction coefficients and no zeros
        obj = cls.__new__(cls)
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        c = Fraction(c)
        return cls._raw({(0, 0): c} if c else {})

    @classmethod
    def monomial(cls, m: int, n: int, c=1) -> "LaurentPoly":
        return cls._raw({(m, n): Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms.get((0, 0)) == 1

    def is_term(self) -> bool:
        return len(self.terms) == 1

    def min_exponents(self) -> Exp:
        return (min(m for m, _ in self.terms), min(n for _, n in self.terms))

    def leading(self) -> tuple[Exp, Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def shift(self, dm: int, dn: int) -> "LaurentPoly":
        if dm == 0 and dn == 0:
            return self
        return LaurentPoly._raw({(m + dm, n + dn): c for (m, n), c in self.terms.items()})

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return LaurentPoly._raw({})
        if c == 1:
            return self
        return LaurentPoly._raw({e: x * c for e, x in self.terms.items()})

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self.terms)
        for e, c in other.terms.items():
            x = out.get(e)
            if x is None:
                out[e] = c
            else:
                x += c
                if x:
                    out[e] = x
                else:
                    del out[e]
        return LaurentPoly._raw(out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        a, b = self.terms, other.terms
        if len(a) == 1 and len(b) == 1:
            ((e1, c1),) = a.items()
            ((e2, c2),) = b.items()
            return LaurentPoly._raw({(e1[0] + e2[0], e1[1] + e2[1]): c1 * c2})
        out: dict = {}
        for (m1, n1), c1 in a.items():
            for (m2, n2), c2 in b.items():
                e = (m1 + m2, n1 + n2)
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: c for e, c in out.items() if c})

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.terms!r})"

    def to_sympy(self):
        return _QQ_RING({e: QQ(c.numerator, c.denominator) for e, c in self.terms.items()})

    @classmethod
    def from_sympy(cls, p) -> "LaurentPoly":
        return cls._raw(
            {tuple(e): Fraction(int(c.numerator), int(c.denominator)) for e, c in p.terms()}
        )

    def evaluate(self, u, v):
        total = 0
        for (m, n), c in self.terms.items():
            total += c * u**m * v**n
        return total


_ZERO_POLY = LaurentPoly._raw({})
_ONE_POLY = LaurentPoly._raw({(0, 0): Fraction(1)})


def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return _ZERO_POLY, _ONE_POLY
    if den.is_term():
        ((m, n), c), = den.terms.items()
        return num.shift(-m, -n).scale(1 / c), _ONE_POLY
    dm, dn = den.min_exponents()
    den = den.shift(-dm, -dn)
    nm, nn = num.min_exponents()
    num = num.shift(-nm, -nn)
    g = num.to_sympy().gcd(den.to_sympy())
    if not g.is_ground:
        num = LaurentPoly.from_sympy(num.to_sympy().exquo(g))
        den = LaurentPoly.from_sympy(den.to_sympy().exquo(g))
    lc = den.leading()[1]
    num = num.shift(nm - dm, nn - dn).scale(1 / lc)
    den = den.scale(1 / lc)
    if den.is_term():
        # gcd removed every non-monomial factor
        ((m, n), c), = den.terms.items()
        return num.shift(-m, -n).scale(1 / c), _ONE_POLY
    return num, den


class Scalar:
    """Element of Q(u, v) stored as a canonical reduced fraction.

    The denominator is either 1 or a polynomial with no monomial factor and
    leading coefficient 1 (leading = lexicographically largest exponent).
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=0, den=None):
        if not isinstance(num, LaurentPoly):
            num = LaurentPoly.const(num)
        if den is None:
            self.num, self.den = num, _ONE_POLY
        else:
            if not isinstance(den, LaurentPoly):
                den = LaurentPoly.const(den)
            self.num, self.den = _canonical(num, den)
        self._hash = None

    @classmethod
    def _make(cls, num: LaurentPoly, den: LaurentPoly) -> "Scalar":
        obj = cls.__new__(cls)
        obj.num, obj.den = _canonical(num, den)
        obj._hash = None
        return obj

    @classmethod
    def _poly(cls, num: LaurentPoly) -> "Scalar":
        obj = cls.__new__(cls)
        obj.num, obj.den = num, _ONE_POLY
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, (int, Rational)):
            return cls._poly(LaurentPoly.const(Fraction(x)))
        raise TypeError(f"cannot coerce {type(x).__name__} to Scalar")

    @classmethod
    def monomial(cls, m: int, n: int, c=1) -> "Scalar":
        """``c * u^m * v^n``."""
        return cls._poly(LaurentPoly.monomial(m, n, c))

    # predicates

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.den.is_one() and self.num.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and all(e == (0, 0) for e in self.num.terms)

    def is_monomial(self) -> bool:
        """True for ``c * u^m * v^n`` with c a nonzero rational."""
        return self.den.is_one() and self.num.is_term()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    # arithmetic

    def __add__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return Scalar._poly(self.num + other.num)
        if self.den == other.den:
            return Scalar._make(self.num + other.num, self.den)
        return Scalar._make(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        obj = Scalar.__new__(Scalar)
        obj.num, obj.den, obj._hash = -self.num, self.den, None
        return obj

    def __sub__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Scalar":
        return Scalar.coerce(other) - self

    def __mul__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return Scalar._poly(self.num * other.num)
        return Scalar._make(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero scalar")
        return Scalar._make(self.den, self.num)

    def __truediv__(self, other) -> "Scalar":
        try:
            other = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other) -> "Scalar":
        return Scalar.coerce(other) * self.inv()

    def __pow__(self, k: int) -> "Scalar":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        if self.is_monomial():
            ((m, n), c), = self.num.terms.items()
            return Scalar.monomial(m * k, n * k, c**k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Scalar):
            try:
                other = Scalar.coerce(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __repr__(self) -> str:
        return f"Scalar({self.to_text()})"

    def __str__(self) -> str:
        return self.to_text()

    # rendering

    def to_text(self) -> str:
        """Render in r, s; parseable by :mod:`uqsl3.parser`."""
        num = _poly_text(self.num)
        if self.den.is_one():
            return num
        if not self.num.is_term():
            num = f"({num})"
        return f"{num}/({_poly_text(self.den)})"

    def signed_parts(self) -> tuple[bool, "Scalar"]:
        """Split off a leading minus sign for display: ``(negative, |x|)``."""
        if self.den.is_one() and self.num.is_term():
            c = next(iter(self.num.terms.values()))
            if c < 0:
                return True, -self
        return False, self

    def to_json(self) -> dict:
        return {"num": _poly_json(self.num), "den": _poly_json(self.den)}

    @classmethod
    def from_json(cls, data: dict) -> "Scalar":
        return cls._make(_poly_from_json(data["num"]), _poly_from_json(data["den"]))

    # evaluation

    def eval_uv(self, u, v):
        """Substitute values for u and v directly (exact if they are rationals)."""
        d = self.den.evaluate(u, v)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at sample point")
        return self.num.evaluate(u, v) / d


def _fmt_exp(sym: str, e: int) -> str:
    if e % 3 == 0:
        k = e // 3
        return sym if k == 1 else f"{sym}^{k}"
    return f"{sym}^({Fraction(e, 3)})"


def _term_text(e: Exp, c: Fraction) -> str:
    parts = [_fmt_exp(sym, k) for sym, k in zip("rs", e) if k]
    if not parts:
        return str(c)
    if c == 1:
        return "*".join(parts)
    if c == -1:
        return "-" + "*".join(parts)
    return "*".join([str(c)] + parts)


def _poly_text(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    out = ""
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        if not out:
            out = _term_text(e, c)
        elif c < 0:
            out += " - " + _term_text(e, -c)
        else:
            out += " + " + _term_text(e, c)
    return out


def _poly_json(p: LaurentPoly) -> list:
    return [[m, n, str(c)] for (m, n), c in sorted(p.terms.items())]


def _poly_from_json(data: list) -> LaurentPoly:
    return LaurentPoly({(int(m), int(n)): Fraction(c) for m, n, c in data})


ZERO = Scalar(0)
ONE = Scalar(1)
U = Scalar.monomial(1, 0)
V = Scalar.monomial(0, 1)
R = Scalar.monomial(3, 0)
S = Scalar.monomial(0, 3)


def _third(x) -> int:
    f = Fraction(x) if not isinstance(x, str) else Fraction(x.strip())
    k = f * 3
    if k.denominator != 1:
        raise ValueError(f"exponent {f} is not an integer multiple of 1/3")
    return int(k)


def scalar_from_rs(exp_r, exp_s, coeff=1) -> Scalar:
    """``coeff * r^exp_r * s^exp_s`` for exponents in (1/3)Z."""
    return Scalar.monomial(_third(exp_r), _third(exp_s), coeff)


@lru_cache(maxsize=None)
def _exact_cube_root(x: Fraction):
    def icbrt(n: int):
        k = round(abs(n) ** (1 / 3))
        for c in (k - 1, k, k + 1):
            if c >= 0 and c**3 == abs(n):
                return c if n >= 0 else -c
        return None

    a, b = icbrt(x.numerator), icbrt(x.denominator)
    if a is None or b is None:
        return None
    return Fraction(a, b)


def cube_root(x):
    """Real cube root for rationals (exact when possible), principal root otherwise."""
    if isinstance(x, (int, Rational)):
        exact = _exact_cube_root(Fraction(x))
        if exact is not None:
            return exact
        x = float(x)
        return -((-x) ** (1 / 3)) if x < 0 else x ** (1 / 3)
    return cmath.exp(cmath.log(complex(x)) / 3)


def eval_numeric(x: Scalar, r_val, s_val):
    """Evaluate at r = r_val, s = s_val using fixed cube-root choices for u, v.

    Exact whenever ``x`` only involves integral powers of r and s, or both
    samples are rational cubes.
    """
    exps = list(x.num.terms) + list(x.den.terms)
    if all(m % 3 == 0 and n % 3 == 0 for m, n in exps):
        r_val = Fraction(r_val) if isinstance(r_val, Rational) else r_val
        s_val = Fraction(s_val) if isinstance(s_val, Rational) else s_val
        d = _eval_rs(x.den, r_val, s_val)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at sample point")
        return _eval_rs(x.num, r_val, s_val) / d
    return x.eval_uv(cube_root(r_val), cube_root(s_val))


def _eval_rs(p: LaurentPoly, r_val, s_val):
    return sum((c * r_val ** (m // 3) * s_val ** (n // 3) for (m, n), c in p.terms.items()), 0)


def as_scalar(x) -> Scalar:
    return Scalar.coerce(x)
