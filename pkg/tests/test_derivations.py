import random

import pytest

from uqsl3.algebra import preset, random_element
from uqsl3.derivations import (
    D1,
    D2,
    CentralTorusDerivation,
    Derivation,
    DerivationError,
    apply_derivation,
    center_probe,
    central_action_residue,
    check_embedding,
    decompose,
    decomposition_kernel_dim,
    inner,
    spectrum,
    torus_coordinates_in_A3,
    torus_embed,
)
from uqsl3.reproduce import random_round_trip, residue_grid
from uqsl3.scalars import ONE, R, S, ZERO, Scalar

U = preset("Uplus")
Q = preset("Q3")
E1, E2, E3 = U.gen("E1"), U.gen("E2"), U.gen("E3")
T1, T2, T3 = Q.gen("T1"), Q.gen("T2"), Q.gen("T3")


def test_basis_derivations():
    assert apply_derivation(D1, E1 * E2) == E1 * E2
    assert apply_derivation(D2, E3) == E3
    assert apply_derivation(D1, E3) == E3
    assert apply_derivation(D2, U.one()).is_zero()


def test_inner_examples():
    assert inner(U.one()) == Derivation(U.zero(), U.zero())
    assert apply_derivation(inner(E3), E1) == (E1 * E3).scale(R.inv() - 1)
    assert apply_derivation(inner(E1), E2) == E1 * E2 - (E1 * E2 - E3).scale(S.inv())


def test_well_definedness():
    rng = random.Random(2)
    assert D1.is_well_defined() and D2.is_well_defined()
    for _ in range(10):
        assert inner(random_element(U, rng, 3, 3)).is_well_defined()
    bad = Derivation(E2, U.zero())
    assert not bad.is_well_defined()
    with pytest.raises(DerivationError):
        decompose(bad)
    with pytest.raises(DerivationError):
        apply_derivation(bad, E1, check=True)


def test_leibniz_random():
    rng = random.Random(4)
    for i in range(300):
        D = (D1, D2, None)[i % 3] or inner(random_element(U, rng, 2, 2))
        x, y = random_element(U, rng, 2, 2), random_element(U, rng, 2, 2)
        assert apply_derivation(D, x * y) == apply_derivation(D, x) * y + x * apply_derivation(D, y)


def test_derivation_linear_structure():
    D = D1 + D2.scale(R)
    assert apply_derivation(D, E3) == E3.scale(1 + R)
    assert (D - D1) == D2.scale(R)


def test_torus_embedding_examples():
    assert torus_embed(E1) == T1
    assert torus_embed(E3) == T3
    assert torus_embed(E1 * E2 - (E2 * E1).scale(S)) == T3
    assert torus_embed(U.one()) == Q.one()
    a3 = preset("A3")
    assert torus_embed(a3.gen("E1", -1)) == Q.gen("T1", -1)


def test_torus_embedding_is_multiplicative():
    rng = random.Random(8)
    for _ in range(300):
        x, y = random_element(U, rng, 4, 2), random_element(U, rng, 4, 2)
        assert torus_embed(x * y) == torus_embed(x) * torus_embed(y)


def test_check_embedding():
    rep = check_embedding()
    assert rep.ok, rep.failure
    assert rep.details["I(serre1)"] == "0"


def test_torus_coordinates_in_a3():
    T1a, T2a, T3a = torus_coordinates_in_A3()
    assert T1a * T2a == (T2a * T1a).scale(S)
    assert torus_embed(T2a) == T2


def test_central_action_residue():
    assert central_action_residue(CentralTorusDerivation(1, 0, 1)).is_zero()
    assert central_action_residue(CentralTorusDerivation(0, 1, 1)).is_zero()
    res = central_action_residue(CentralTorusDerivation(0, 0, 1))
    assert res == (T3 * Q.gen("T1", -1)).scale((R - S).inv())
    ok, n = residue_grid()
    assert ok and n == 125


def test_spectral_consistency():
    for i, D in ((1, D1), (2, D2)):
        delta = spectrum(i)
        for x in (E1, E2, E3):
            assert torus_embed(apply_derivation(D, x)) == delta(torus_embed(x))


def test_decompose_examples():
    d = decompose(D1)
    assert d.t.is_zero() and (d.mu1, d.mu2) == (ONE, ZERO)
    d = decompose(inner(E3))
    assert d.t == E3 and (d.mu1, d.mu2) == (ZERO, ZERO)
    d = decompose(inner(E1 * E2) + D1.scale(2) + D2.scale(3), 3)
    assert d.t == E1 * E2 and (d.mu1, d.mu2) == (Scalar(2), Scalar(3))
    assert d.reconstruct() == inner(E1 * E2) + D1.scale(2) + D2.scale(3)


def test_decompose_normalises_constant():
    d = decompose(inner(E1 + 5))
    assert d.t == E1


def test_decompose_reports_infeasibility():
    with pytest.raises(DerivationError, match="inconsistent"):
        decompose(inner(E1 * E2 * E2 * E1), 1)


def test_decompose_round_trips():
    rng = random.Random(12)
    for _ in range(25):
        ok, t, mu1, mu2 = random_round_trip(rng)
        assert ok, (t, mu1, mu2)


@pytest.mark.parametrize("bound", [2, 3, 4])
def test_kernel_dimension_one(bound):
    assert decomposition_kernel_dim(bound) == 1


def test_center_probe():
    assert [str(x) for x in center_probe(0)] == ["1"]
    basis = center_probe(4)
    assert len(basis) == 1 and basis[0].is_scalar()
    q = center_probe(3, "Q3")
    assert len(q) == 1 and q[0].is_scalar()


def test_center_probe_rejects_other_algebras():
    with pytest.raises(DerivationError):
        center_probe(2, "UcheckGE0")


def test_derivation_requires_uplus():
    with pytest.raises(DerivationError):
        Derivation(preset("A3").gen("E1"), preset("A3").zero())
