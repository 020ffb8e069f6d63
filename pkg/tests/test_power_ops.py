import pytest

from motivic_steenrod.algebra import AElement, Bidegree, chi
from motivic_steenrod.power_ops import (
    UnsupportedInputError, lowest_index, q_element, q_gen_series, q_generator,
    recurrence_series, shifted_bidegree, sq, vanishes, verify_additivity_and_cartan, verify_conishida,
    verify_conishida_product, verify_conjugate_reach, verify_q_properties, verify_recurrences,
    verify_spot_values,
)

import oracle

T, X = AElement.tau_gen, AElement.xi_gen
ZERO = AElement.zero()


def _as_element(p) -> AElement:
    out = ZERO
    for e in p:
        out = out + AElement.monomial(xis={i: r for i, r in enumerate(e, start=1) if r})
    return out


def test_spot_values():
    assert q_generator(0, ("tau", 0)) == ZERO
    assert q_generator(1, ("tau", 0)) == X(1)
    assert q_generator(2, ("tau", 0)) == T(1) + X(1) * T(0)
    assert q_generator(2, ("xi", 1)) == X(1) ** 2
    assert q_generator(4, ("xi", 1)) == X(1) ** 3 + X(2)
    for n in range(1, 4):
        for r in range(-10, 20):
            assert q_generator(2 * r + 1, ("xi", n)) == ZERO


@pytest.mark.parametrize("n", [1, 2, 3])
def test_even_ops_on_xi_match_naive_oracle(n):
    top = 12
    naive = oracle.q_even_xi(n, top)
    for r in range(-2 ** n, top + 1):
        assert q_generator(2 * r, ("xi", n)) == _as_element(naive.get(r, frozenset())), (n, r)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_odd_ops_on_tau_match_naive_oracle(n):
    top = 12
    naive = oracle.q_odd_tau(n, top)
    for r in range(-2 ** n, top + 1):
        assert q_generator(2 * r + 1, ("tau", n)) == _as_element(naive.get(r, frozenset())), (n, r)


def test_vanishing_region():
    assert lowest_index(Bidegree(1, 0)) == 1  # Q^1(tau_0) = xi_1 is the first nonzero value
    for p, q in [(1, 0), (3, 1), (2, 1), (6, 3), (7, 3)]:
        lo = lowest_index(Bidegree(p, q))
        assert vanishes(Bidegree(p, q), lo - 1)
        assert not vanishes(Bidegree(p, q), lo)


def test_degree_shift():
    for i in range(0, 9):
        val = q_element(i, T(0))
        if val:
            assert val.bidegree() == shifted_bidegree(Bidegree(1, 0), i)


def test_squaring_on_even_degree_classes():
    # Q^{2q}(x) = x^2 when |x| = (2q, q)
    assert q_element(2, X(1)) == X(1) ** 2
    assert q_element(6, X(2)) == X(2) ** 2
    assert q_element(4, X(1) ** 2) == X(1) ** 4


def test_conjugate_reach():
    for k in range(1, 5):
        assert q_generator(2 ** (k + 1) - 2, ("tau", 0)) == chi(T(k))
        assert q_generator(2 ** (k + 1) - 3, ("tau", 0)) == chi(X(k))
    assert verify_conjugate_reach(4).passed


def test_scalar_inputs_are_rejected():
    with pytest.raises(UnsupportedInputError):
        q_element(1, AElement.tau() * T(0))


def test_sq_is_reindexed_q():
    assert sq(-2, T(0)) == q_element(2, T(0))


def test_monomial_values():
    assert q_element(4, T(0) * X(1)) == T(0) * X(1) ** 3 + T(1) * X(1) ** 2


def test_recurrences_agree_with_closed_forms():
    r = verify_recurrences(3, (-20, 20))
    assert r.passed, r.summary()
    rec = recurrence_series(2, 16)
    for key, series in rec.items():
        kind, n, parity = key
        closed = q_gen_series((kind, n), parity, 16)
        assert series.agrees(closed, -2 ** n - 2, 16) == []


def test_property_sweeps():
    assert verify_q_properties(8).passed
    r = verify_additivity_and_cartan(40, seed=11, max_degree=8)
    assert r.passed, r.summary()


def test_spot_value_suite():
    assert verify_spot_values().passed


@pytest.mark.parametrize("x", ["u", "v"])
def test_conishida_generators(x):
    r = verify_conishida(x, (-4, 4), 12, (-20, 20))
    assert r.passed, r.summary()
    assert r.details["lowest contributing n"] == -1


@pytest.mark.parametrize("factors", [("u", "u"), ("u", "v"), ("v", "v")])
def test_conishida_products(factors):
    r = verify_conishida_product(factors, (-3, 3), 6)
    assert r.passed, r.summary()


def test_cartan_constant_is_pinned_by_products():
    from motivic_steenrod.algebra import eta_R
    r = verify_conishida_product(("u", "u"), (-3, 3), 6, tau_const=eta_R((1, 0)))
    assert not r.passed
    w = r.failures[0]
    assert (w["v"], w["t"], w["s"]) == (2, -1, 0)
