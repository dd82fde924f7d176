import random

import pytest

from uqsl3.algebra import AlgebraError, preset, random_element
from uqsl3.hopf import (
    TensorElement,
    antipode,
    coproduct,
    counit,
    multiply,
    rejected_antipode_images,
    tensor_map,
    verify_hopf_axioms,
)
from uqsl3.scalars import ONE, R, S

SIG = preset("UcheckGE0")
K1, K2, E1, E2, E3 = (SIG.gen(g) for g in ("K1", "K2", "E1", "E2", "E3"))
one = SIG.one()


def pure(a, b):
    return TensorElement.pure(a, b)


def test_grouplike_coproduct():
    assert coproduct(K1 * K2) == pure(K1 * K2, K1 * K2)


def test_e1_coproduct():
    w1 = SIG.monomial((2, -1, 0, 0, 0))
    assert coproduct(E1) == pure(E1, one) + pure(w1, E1)


def test_e3_coproduct_frozen():
    # expansion of D(E1)D(E2) - s D(E2)D(E1), middle term folded
    w2 = SIG.monomial((-1, 2, 0, 0, 0))
    expected = pure(E3, one) + pure(w2 * E1, E2).scale(R - S) + pure(K1 * K2, E3)
    assert coproduct(E3) == expected
    assert str(coproduct(E3)) == "E3 (x) 1 + (r - s)*(K1^-1*K2^2*E1 (x) E2) + K1*K2 (x) E3"


def test_counit():
    assert counit(K1**3 * K2**-1) == ONE
    assert counit(E1 * E2) == 0
    assert counit(5 + E3) == 5


def test_antipode_values():
    assert antipode(K1 * K2) == SIG.monomial((-1, -1, 0, 0, 0))
    assert antipode(one) == one
    assert antipode(E1) == -SIG.monomial((-2, 1, 1, 0, 0))


def test_coassociativity_on_e1():
    d = coproduct(E1)
    lhs = tensor_map(d, 0, coproduct)
    assert lhs == tensor_map(d, 1, coproduct)
    assert len(lhs.terms) == 3


def test_antipode_law_on_k1():
    assert multiply(tensor_map(coproduct(K1), 0, antipode)) == one


def test_antipode_law_on_e2_candidate_vs_forced():
    d = coproduct(E2)
    candidate = rejected_antipode_images()
    bad = multiply(tensor_map(d, 0, lambda y: antipode(y, candidate)))
    assert bad != SIG.zero()
    assert multiply(tensor_map(d, 0, antipode)) == SIG.zero()


def test_hopf_axioms_degree_three():
    rep = verify_hopf_axioms(3)
    assert rep.ok, rep.failure


def test_rejected_images_fail():
    rep = verify_hopf_axioms(3, antipode_images=rejected_antipode_images())
    assert not rep.ok
    assert "antipode law" in rep.failure


def test_uw_hopf_structure():
    rep = verify_hopf_axioms(2, preset("UW"), random_pairs=5)
    assert rep.ok, rep.failure


def test_no_hopf_structure_on_uplus():
    with pytest.raises(AlgebraError):
        coproduct(preset("Uplus").gen("E1"))


def test_multiplicativity_random():
    rng = random.Random(3)
    for _ in range(60):
        x, y = random_element(SIG, rng, 2, 2), random_element(SIG, rng, 2, 2)
        assert coproduct(x * y) == coproduct(x) * coproduct(y)
        assert antipode(x * y) == antipode(y) * antipode(x)
        assert counit(antipode(x)) == counit(x)


def test_tensor_render_and_json():
    t = pure(E1, one) + pure(K1, E2).scale(S)
    assert str(t) == "E1 (x) 1 + s*(K1 (x) E2)"
    data = t.to_json()
    assert data["arity"] == 2 and len(data["terms"]) == 2


def test_tensor_shape_mismatch():
    with pytest.raises(AlgebraError):
        pure(E1, one) + TensorElement.pure(E1, one, one)
