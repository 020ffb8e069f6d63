import pytest

from motivic_steenrod.algebra import AElement, BaseScalar
from motivic_steenrod.bsigma import (
    BSigmaElement, BSigmaTensor, cartan_v_rule_check, psi_r_bsigma, q_on_bsigma, q_v_power, q_vector_bsigma,
    sq_bsigma, verify_coaction_ring_map,
)

u, v = BSigmaElement.u(), BSigmaElement.v()
T, X = AElement.tau_gen, AElement.xi_gen
TAU, RHO = BaseScalar([(1, 0)]), BaseScalar([(0, 1)])


def test_u_squared():
    assert u * u == v * TAU + u * RHO


def test_negative_powers_need_inversion():
    with pytest.raises(ValueError):
        BSigmaElement({(0, -1): BaseScalar.one()})
    assert BSigmaElement.v(-1) * v == BSigmaElement.one()


def test_bidegrees():
    assert u.bidegree().p == -1 and u.bidegree().q == -1
    assert v.bidegree().p == -2 and v.bidegree().q == -1


def test_right_coaction_on_generators():
    pu = psi_r_bsigma(u, (0, 8))
    assert pu.coeff(1, 0) == AElement.one()
    assert [pu.coeff(0, 2 ** i) for i in range(4)] == [T(i) for i in range(4)]
    pv = psi_r_bsigma(v, (0, 8))
    assert [pv.coeff(0, 2 ** i) for i in range(4)] == [X(i) for i in range(4)]
    assert pv.coeff(0, 3) == AElement.zero()


def test_right_coaction_of_inverse_v():
    p = psi_r_bsigma(BSigmaElement.v(-1), (-1, 6))
    assert p.coeff(0, -1) == AElement.one()
    assert p.coeff(0, 0) == X(1)
    assert p.coeff(0, 1) == X(1) ** 2
    assert p.coeff(0, 2) == X(1) ** 3 + X(2)


def test_coefficients_above_precision_raise():
    p = psi_r_bsigma(v, (0, 4))
    with pytest.raises(Exception):
        p.coeff(0, 5)


def test_coaction_is_a_ring_map():
    assert verify_coaction_ring_map(16, 4).passed


def test_operations_on_generators():
    assert q_on_bsigma(-1, u) == v
    assert q_on_bsigma(0, u) == u
    assert q_on_bsigma(-2, v) == v * v
    assert q_on_bsigma(0, v) == v
    assert q_on_bsigma(-4, v) == BSigmaElement.zero()
    assert sq_bsigma(1, u) == v
    assert sq_bsigma(2, v) == v * v


def test_operations_on_scalar_multiples():
    # Sq^1 tau = rho
    assert sq_bsigma(1, u * TAU) == u * RHO + v * TAU
    assert sq_bsigma(1, v * TAU) == v * RHO


def test_cartan_on_u_squared():
    q = q_vector_bsigma(u * u)
    assert q[-2] == v * v * TAU
    assert q[-3] == v * v * RHO


def test_closed_form_for_v_powers():
    for m in range(1, 6):
        qv = q_vector_bsigma(BSigmaElement.v(m))
        for n2 in range(-2 * m, 1, 2):
            assert qv.get(n2, BSigmaElement.zero()) == q_v_power(n2, m), (m, n2)


def test_cartan_v_rule():
    assert cartan_v_rule_check(12, 3).passed


def test_json_round_trip():
    x = u * BSigmaElement.v(-3) * TAU + v * RHO
    assert BSigmaElement.from_json(x.to_json()) == x
