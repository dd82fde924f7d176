"""Scripted checks behind ``uqsl3 reproduce``, one per theorem identifier."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable

from .algebra import (
    Element,
    free_algebra_graded_dimension,
    graded_dimension,
    preset,
    random_element,
    verify_skew_presentation,
)
from .derivations import (
    D1,
    D2,
    CentralTorusDerivation,
    apply_derivation,
    center_probe,
    central_action_residue,
    check_embedding,
    decompose,
    decomposition_kernel_dim,
    inner,
)
from .hopf import rejected_antipode_images, verify_hopf_axioms
from .morphisms import SCALAR_SAMPLES, AutParams, classify_box, expected_box, is_hopf_automorphism
from .scalars import ONE, R, S, ZERO, Scalar


@dataclass
class Outcome:
    ident: str
    ok: bool
    summary: str
    seconds: float = 0.0

    def line(self) -> str:
        return f"{self.ident}: {'pass' if self.ok else 'FAIL'} ({self.summary}) [{self.seconds:.2f}s]"

    def to_json(self) -> dict:
        return {"id": self.ident, "ok": self.ok, "summary": self.summary, "seconds": round(self.seconds, 3)}


def _skew(seed: int) -> tuple[bool, str]:
    rep = verify_skew_presentation(4)
    return rep.ok, f"Ore tower relations, {rep.checked} checks" if rep.ok else rep.failure


def _pbw(seed: int) -> tuple[bool, str]:
    sig = preset("Uplus")
    dims = [graded_dimension(sig, d) for d in range(6)]
    oracle = [free_algebra_graded_dimension(d) for d in range(6)]
    ok = dims == oracle == [1, 2, 4, 6, 9, 12]
    return ok, f"graded dimensions {dims}, oracle {oracle}"


def _hopf(seed: int) -> tuple[bool, str]:
    rep = verify_hopf_axioms(3, seed=seed)
    bad = verify_hopf_axioms(1, antipode_images=rejected_antipode_images(), seed=seed)
    ok = rep.ok and not bad.ok
    return ok, f"axioms on {rep.checked} inputs; rejected antipode candidate fails: {bad.failure}"


def _aut(seed: int) -> tuple[bool, str]:
    got = classify_box(3)
    ok = got == expected_box(3)
    return ok, f"classify_box(3) gives {len(got)} tuples, matches b = c and a + b + d = 0"


def hopf_sweep(bound: int = 2, samples=SCALAR_SAMPLES) -> tuple[bool, int, int]:
    """Hopf automorphisms inside classify_box(bound) x samples^4.

    Returns (agrees with a1 = a2 = 1 and zero exponents, candidates, hits).
    """
    n = hits = 0
    ok = True
    for a, b, c, d, swap in classify_box(bound):
        for a1, a2, b1, b2 in itertools.product(samples, repeat=4):
            p = AutParams(a1, a2, b1, b2, a, b, c, d, swap)
            got = bool(is_hopf_automorphism(p))
            want = a1.is_one() and a2.is_one() and (a, b, c, d) == (0, 0, 0, 0)
            ok &= got == want
            hits += got
            n += 1
    return ok, n, hits


def _aut_hopf(seed: int) -> tuple[bool, str]:
    ok, n, hits = hopf_sweep()
    return ok, f"{hits} of {n} candidates are Hopf, exactly those with a1 = a2 = 1, a = b = c = d = 0"


def _embedding(seed: int) -> tuple[bool, str]:
    rep = check_embedding()
    return rep.ok, "three T-relations in A3, Serre images vanish in Q3" if rep.ok else rep.failure


def _center(seed: int) -> tuple[bool, str]:
    u = center_probe(4)
    q = center_probe(3, "Q3")
    ok = all(x.is_scalar() for x in u + q) and len(u) == len(q) == 1
    return ok, f"central basis in U+ (deg <= 4): {[str(x) for x in u]}; in Q3 box [-3,3]^3: {[str(x) for x in q]}"


RESIDUE_SAMPLES = (ZERO, ONE, Scalar(2), R, S)


def residue_grid(samples=RESIDUE_SAMPLES) -> tuple[bool, int]:
    ok = True
    n = 0
    for a1, a2, a3 in itertools.product(samples, repeat=3):
        res = central_action_residue(CentralTorusDerivation(a1, a2, a3))
        ok &= res.is_zero() == (a3 == a1 + a2)
        n += 1
    return ok, n


def _central(seed: int) -> tuple[bool, str]:
    ok, n = residue_grid()
    return ok, f"residue vanishes iff alpha3 = alpha1 + alpha2 on {n} triples"


def random_round_trip(rng: random.Random, bound: int = 3) -> tuple[bool, Element, Scalar, Scalar]:
    sig = preset("Uplus")
    t = random_element(sig, rng, bound, rng.randint(1, 4))
    t = t - sig.scalar(t.constant_term())
    pool = (ZERO, ONE, Scalar(-3), R, S, R * S.inv())
    mu1, mu2 = rng.choice(pool), rng.choice(pool)
    dec = decompose(inner(t) + D1.scale(mu1) + D2.scale(mu2), bound)
    return (dec.t == t and dec.mu1 == mu1 and dec.mu2 == mu2), t, mu1, mu2


def _roundtrip(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    n = 20
    ok = all(random_round_trip(rng)[0] for _ in range(n))
    return ok, f"{n} seeded decompose round trips recover (t, mu1, mu2)"


def _hh1(seed: int) -> tuple[bool, str]:
    dims = {b: decomposition_kernel_dim(b) for b in (2, 3, 4)}
    d1, d2 = decompose(D1), decompose(D2)
    ok = (
        set(dims.values()) == {1}
        and d1.t.is_zero() and (d1.mu1, d1.mu2) == (ONE, ZERO)
        and d2.t.is_zero() and (d2.mu1, d2.mu2) == (ZERO, ONE)
        and apply_derivation(D1, preset("Uplus").gen("E3")) == preset("Uplus").gen("E3")
    )
    return ok, f"kernel dimension {dims}; D1, D2 are outer and independent"


CHECKS: dict[str, tuple[str, Callable[[int], tuple[bool, str]]]] = {
    "thm1.4": ("iterated skew polynomial presentation", _skew),
    "cor1.5": ("PBW basis", _pbw),
    "prop1.6-hopf": ("Hopf structure", _hopf),
    "thm2.6": ("automorphism classification", _aut),
    "thm2.7": ("Hopf automorphisms", _aut_hopf),
    "prop3.1": ("quantum torus embedding", _embedding),
    "thm3.5-center": ("trivial center", _center),
    "lem3.6": ("central derivations of Q3", _central),
    "thm3.7": ("derivation decomposition", _roundtrip),
    "thm3.8": ("first Hochschild cohomology", _hh1),
}


def reproduce(ident: str, seed: int = 0) -> Outcome:
    if ident not in CHECKS:
        raise KeyError(f"unknown theorem identifier {ident!r}; choose from {', '.join(CHECKS)}")
    start = time.perf_counter()
    ok, summary = CHECKS[ident][1](seed)
    return Outcome(ident, bool(ok), summary, time.perf_counter() - start)
