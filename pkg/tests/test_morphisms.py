import itertools
import random

import pytest

from uqsl3.algebra import preset, random_element
from uqsl3.morphisms import (
    IDENTITY,
    SCALAR_SAMPLES,
    AutParams,
    ExponentMatrix,
    apply,
    classify_box,
    compose,
    expected_box,
    exponent_matrix,
    inverse,
    is_hopf_automorphism,
    permutation_matrix_property,
    respects_relations,
)
from uqsl3.scalars import R, S, Scalar

SIG = preset("UcheckGE0")
K1, K2, E1, E2, E3 = (SIG.gen(g) for g in ("K1", "K2", "E1", "E2", "E3"))
GENS = (K1, K2, E1, E2)


def random_valid(rng: random.Random, bound: int = 2) -> AutParams:
    a, b = rng.randint(-bound, bound), rng.randint(-bound, bound)
    return AutParams(
        *(rng.choice(SCALAR_SAMPLES) for _ in range(4)),
        a=a,
        b=b,
        c=b,
        d=-a - b,
    )


def test_identity_apply():
    assert apply(IDENTITY, E1 * E3) == E1 * E3


def test_apply_monomial_form():
    assert apply(AutParams(a=1, d=-1), E1) == K1 * E1


def test_swap_moves_k1():
    p = AutParams(a1=Scalar(2), swap=True)
    assert apply(p, K1) == K2.scale(2)


def test_respects_relations_valid():
    for a1, b2 in [(Scalar(1), Scalar(1)), (R, S), (Scalar(2), R * S)]:
        assert respects_relations(AutParams(a1=a1, b2=b2, a=1, d=-1))


def test_respects_relations_witness_is_serre():
    v = respects_relations(AutParams(a=1))
    assert not v
    assert v.witness.startswith("relation serre1")
    assert not v.residue.is_zero()


def test_swap_rejected():
    v = respects_relations(AutParams(swap=True))
    assert not v and v.witness.startswith("relation K1E1")


def test_classify_box_zero():
    assert classify_box(0) == [(0, 0, 0, 0, False)]


def test_classify_box_one():
    got = classify_box(1)
    assert got == expected_box(1)
    # the familiar five tuples are present
    for t in [(0, 0, 0, 0), (1, 0, 0, -1), (-1, 0, 0, 1), (-1, 1, 1, 0), (1, -1, -1, 0)]:
        assert (*t, False) in got
    # b = c = +-1 with a = 0 also satisfies the constraints
    assert (0, 1, 1, -1, False) in got and (0, -1, -1, 1, False) in got
    assert len(got) == 7


def test_classify_box_with_generic_scalars():
    p = AutParams(a1=R, a2=Scalar(2), b1=S, b2=R * S)
    assert classify_box(1, p) == expected_box(1)


def test_closed_form_matches_is_valid():
    for a, b, c, d in itertools.product(range(-1, 2), repeat=4):
        p = AutParams(a=a, b=b, c=c, d=d)
        assert p.is_valid() == bool(respects_relations(p))


def test_compose_identity():
    q = AutParams(a1=R, b1=S, a=1, d=-1)
    assert compose(IDENTITY, q) == q


def test_compose_square():
    p = AutParams(a=1, d=-1)
    assert compose(p, p).exponents == (2, 0, 0, -2)


def test_compose_inverse():
    p = AutParams(a1=R, a2=Scalar(2), b1=S, b2=R * S, a=1, b=-1, c=-1, d=0)
    assert compose(p, inverse(p)) == IDENTITY
    assert compose(inverse(p), p) == IDENTITY


def test_compose_matches_function_composition():
    rng = random.Random(5)
    for _ in range(100):
        p, q = random_valid(rng), random_valid(rng)
        pq = compose(p, q)
        for g in GENS:
            assert apply(pq, g) == apply(p, apply(q, g))


def test_apply_is_multiplicative():
    rng = random.Random(9)
    for _ in range(4):
        p = random_valid(rng)
        for _ in range(25):
            x, y = random_element(SIG, rng, 2, 2), random_element(SIG, rng, 2, 2)
            assert apply(p, x * y) == apply(p, x) * apply(p, y)


def test_hopf_automorphisms():
    assert is_hopf_automorphism(AutParams(b1=R, b2=Scalar(2)))
    v = is_hopf_automorphism(AutParams(a1=Scalar(2)))
    assert not v and v.witness == "coproduct mismatch on K1"
    v = is_hopf_automorphism(AutParams(a=1, d=-1))
    assert not v and v.witness == "coproduct mismatch on E1"


def test_hopf_check_needs_endomorphism():
    with pytest.raises(ValueError):
        is_hopf_automorphism(AutParams(a=1))


def test_exponent_matrices():
    assert exponent_matrix(IDENTITY).rows == ((1, 0), (0, 1))
    assert exponent_matrix(AutParams(swap=True)).rows == ((0, 1), (1, 0))
    rng = random.Random(1)
    for _ in range(20):
        m = exponent_matrix(random_valid(rng))
        assert m.rows == ((1, 0), (0, 1))
        assert m.in_gl2_nonneg() and m.inverse().in_gl2_nonneg()


def test_permutation_matrix_property():
    ok, found = permutation_matrix_property(3)
    assert ok
    assert {m.rows for m in found} == {((1, 0), (0, 1)), ((0, 1), (1, 0))}


def test_exponent_matrix_inverse():
    m = ExponentMatrix(((2, 1), (1, 1)))
    assert m.inverse().rows == ((1, -1), (-1, 2))
    assert m.in_gl2_nonneg() and not m.inverse().in_gl2_nonneg()
    with pytest.raises(ValueError):
        ExponentMatrix(((2, 0), (0, 1))).inverse()


def test_zero_scalar_rejected():
    with pytest.raises(ValueError):
        AutParams(b1=Scalar(0))


def test_json_report_fields():
    p = AutParams(a=1, b=1, c=0, d=0)
    assert p.constraints() == {"b_eq_c": False, "sum_zero": False}
    assert p.to_json()["a"] == 1
