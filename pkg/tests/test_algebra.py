import pytest
from hypothesis import given, settings

from motivic_steenrod import _packing as pk
from motivic_steenrod.algebra import (
    AElement, BaseScalar, Bidegree, Caps, InhomogeneousError, TensorElement, basis_enumerate, chi, counit,
    eta_L, eta_R, psi, psi_tau, psi_xi, set_psi_rules,
)
from motivic_steenrod.hopf import verify_hopf_axioms, verify_relation_consistency
from motivic_steenrod.parser import eval_text

from strategies import elements

T = AElement.tau_gen
X = AElement.xi_gen
tau, rho = AElement.tau(), AElement.rho()


def test_generator_degrees():
    assert T(0).bidegree() == Bidegree(1, 0)
    assert T(2).bidegree() == Bidegree(7, 3)
    assert X(1).bidegree() == Bidegree(2, 1)
    assert X(3).bidegree() == Bidegree(14, 7)
    assert tau.bidegree() == Bidegree(0, -1)
    assert rho.bidegree() == Bidegree(-1, -1)


def test_tau_square_relation():
    assert T(0) * T(0) == tau * X(1) + rho * T(1) + rho * T(0) * X(1)
    assert T(1) ** 2 == tau * X(2) + rho * T(2) + rho * T(0) * X(2)


def test_relation_is_applied_recursively():
    # tau_0^2 tau_1 needs a second rewrite of tau_1^2
    lhs = T(0) * T(0) * T(1)
    rhs = tau * X(1) * T(1) + rho * (T(1) * T(1)) + rho * T(0) * T(1) * X(1)
    assert lhs == rhs


def test_inhomogeneous_bidegree_raises():
    with pytest.raises(InhomogeneousError):
        (T(0) + X(1)).bidegree()


def test_packing_overflow_is_reported():
    big = X(1) ** 100
    with pytest.raises(pk.PackingOverflow):
        big * big


def test_coproduct_on_generators():
    assert psi(X(1)) == psi_xi(1)
    assert str(psi(X(2))) == "X2 (x) 1 + X1^2 (x) X1 + 1 (x) X2"
    assert str(psi(T(1))) == "T1 (x) 1 + X1 (x) T0 + 1 (x) T1"
    assert psi(T(2)) == (TensorElement.pure(T(2), AElement.one()) + TensorElement.pure(X(2), T(0))
                         + TensorElement.pure(X(1) ** 2, T(1)) + TensorElement.pure(AElement.one(), T(2)))


def test_coproduct_pushes_scalars_through_right_unit():
    # psi(tau) = tau (x) 1; tau on the right factor becomes eta_R(tau) on the left
    right_tau = TensorElement.pure(AElement.one(), AElement.one()) * TensorElement({0: tau})
    assert right_tau == TensorElement({0: tau})
    assert eta_R(tau) == tau + rho * T(0)
    assert eta_R(rho) == rho
    assert eta_L(tau) == tau


def test_antipode_values():
    assert chi(T(1)) == T(1) + T(0) * X(1)
    assert chi(X(2)) == X(2) + X(1) ** 3
    assert chi(T(2)) == T(2) + T(0) * X(1) ** 3 + T(0) * X(2) + T(1) * X(1) ** 2
    assert chi(tau) == tau + rho * T(0)
    assert chi(rho * T(0)) == rho * T(0)


def test_counit():
    assert counit(X(1)) == BaseScalar()
    assert counit(tau + X(2)) == BaseScalar([(1, 0)])


@given(elements(), elements())
@settings(max_examples=60, deadline=None)
def test_commutative_ring(a, b):
    assert a * b == b * a
    assert a + b == b + a
    assert a + a == AElement.zero()


@given(elements(max_terms=3), elements(max_terms=3), elements(max_terms=3))
@settings(max_examples=40, deadline=None)
def test_associative_and_distributive(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(elements(max_terms=3), elements(max_terms=3))
@settings(max_examples=40, deadline=None)
def test_coproduct_and_antipode_are_ring_maps(a, b):
    assert psi(a * b) == psi(a) * psi(b)
    assert psi(a + b) == psi(a) + psi(b)
    assert chi(a * b) == chi(a) * chi(b)
    assert chi(chi(a)) == a


@given(elements(max_terms=4), elements(max_terms=4))
@settings(max_examples=40, deadline=None)
def test_products_are_bihomogeneous(a, b):
    if not a or not b or len(a.bidegrees()) != 1 or len(b.bidegrees()) != 1:
        return
    p = a * b
    if p:
        assert p.bidegree() == a.bidegree() + b.bidegree()


def test_hopf_axioms_small_bound_with_scalars():
    r = verify_hopf_axioms(10, scalars=((0, 0), (1, 0), (0, 1), (1, 1)))
    assert r.passed, r.summary()
    assert r.details["monomials"] > 0


def test_relation_consistency():
    assert verify_relation_consistency(4).passed


def test_fault_injection_is_caught():
    def broken_xi(i):
        good = psi_xi(i)
        return good + TensorElement.pure(AElement.one(), AElement.one()) if i == 1 else good

    set_psi_rules(xi=broken_xi)
    try:
        r = verify_hopf_axioms(4)
    finally:
        set_psi_rules()
    assert not r.passed
    assert r.failures[0]["monomial"] == "X1"
    assert verify_hopf_axioms(4).passed


def test_basis_enumerate():
    def names(d, caps):
        return {str(AElement.monomial(a, b) * AElement(frozenset([m.key]))) for (a, b), m in basis_enumerate(d, caps)}

    plain = Caps(tau_exp=0, rho_exp=0)
    assert names((1, 0), plain) == {"T0"}
    assert names((2, 1), plain) == {"X1"}
    assert names((3, 1), plain) == {"T1", "T0*X1"}
    # allowing rho brings in rho-multiples of higher classes
    assert names((1, 0), Caps(1, 1)) == {"T0", "rho*X1"}
    assert names((3, 1), Caps(1, 1)) == {"T1", "T0*X1", "rho*X1^2"}
    assert names((0, -1), Caps(2, 2)) == {"tau", "rho*T0", "rho^2*X1"}


def test_basis_is_a_basis_of_the_degree():
    rows = basis_enumerate((5, 2), Caps(2, 2))
    keys = [pk.scalar_key(a, b) + m.key for (a, b), m in rows]
    assert len(set(keys)) == len(keys)
    for k in keys:
        assert pk.bidegree(k) == (5, 2)


def test_json_round_trip():
    x = T(0) * T(0) + tau * X(3) ** 2 + rho * T(1) * T(2)
    assert AElement.from_json(x.to_json()) == x
    t = psi(T(2))
    assert TensorElement.from_json(t.to_json()) == t


def test_printing_reparses():
    for x in (T(0) * T(0), chi(T(3)), psi(X(2)).parts[0], tau * rho ** 2 * X(1) ** 3 + AElement.one()):
        assert eval_text(str(x)) == x
