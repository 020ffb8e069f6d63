import pytest

from motivic_steenrod.algebra import AElement, BaseScalar
from motivic_steenrod.bsigma import BSigmaElement
from motivic_steenrod.ops import (
    OpsElement, counit_check, e_degree, psi_l, psi_l_ops, switched_right_coaction, t_map, verify_ops_compat,
)
from motivic_steenrod.series import TruncationError

T, X = AElement.tau_gen, AElement.xi_gen
RHO = BaseScalar([(0, 1)])
W = (-10, 20)


def test_class_degrees():
    assert tuple(e_degree(4)) == (4, 2)
    assert tuple(e_degree(5)) == (5, 3)
    assert tuple(e_degree(-1)) == (-1, 0)


def test_t_map_values():
    assert t_map(BSigmaElement.v(-1)) == OpsElement.e(1, suspended=True)
    assert t_map(BSigmaElement.u()) == OpsElement({-2: BaseScalar.one(), -1: RHO}, True)
    assert not t_map(BSigmaElement.zero())


@pytest.mark.parametrize("i", range(-4, 5))
def test_t_map_u_multiplication(i):
    x = t_map(BSigmaElement.monomial(1, i)) + t_map(BSigmaElement.v(i)).scale(RHO)
    assert x == OpsElement.e(-2 * i - 2, suspended=True)


def test_t_map_preserves_degree():
    for i in range(-3, 4):
        for f in (0, 1):
            x = BSigmaElement.monomial(f, i)
            assert t_map(x).bidegrees() == x.bidegrees()


def test_left_coaction_values():
    odd = psi_l_ops(0, 1, (-3, 20))
    assert odd.coeff(1) == AElement.one()
    assert odd.coeff(-1) == X(1)
    assert odd.coeff(-3) == X(1) ** 2
    even = psi_l_ops(0, 0, (-3, 20))
    assert even.coeff(1) == AElement.zero()
    assert even.coeff(-1) == T(0)
    assert even.coeff(0) == AElement.one()


def test_left_coaction_window_is_enforced():
    t = psi_l_ops(0, 1, (-3, 20))
    with pytest.raises(TruncationError):
        t.coeff(-9)
    with pytest.raises(TruncationError):
        psi_l_ops(30, 0, (-3, 20))


def test_counit_and_degrees():
    assert counit_check((-6, 6), W).passed


def test_compatibility_for_inverse_v():
    x = BSigmaElement.v(-1)
    left = psi_l(t_map(x), (-8, 20)).restrict(-16)
    assert left == switched_right_coaction(x, (-8, 20))


def test_compatibility_sweep():
    r = verify_ops_compat((-4, 4), W)
    assert r.passed, r.summary()


def test_json():
    x = t_map(BSigmaElement.u())
    assert OpsElement.from_json(x.to_json()) == x
    assert x.to_json()["suspended"] is True
