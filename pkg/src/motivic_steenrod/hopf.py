"""Hopf algebroid axiom checks for the coproduct, counit and antipode."""

from __future__ import annotations

from . import _packing as pk
from .algebra import (
    AElement, TensorElement, _acc_add, _split_scalar, chi, counit, eta_L, eta_R, eta_R_times,
    monomials_up_to, psi,
)
from .report import Report, timed


def _psi_then_left(x: AElement) -> dict:
    """(psi (x) id) psi(x) as {(g2, g3): left}."""
    acc: dict = {}
    for g3, left in psi(x).items():
        for g2, l1 in psi(left).items():
            _acc_add(acc, (g2, g3), l1)
    return {k: v for k, v in acc.items() if v}


def _psi_then_right(x: AElement) -> dict:
    """(id (x) psi) psi(x) as {(g2, g3): left}; middle scalars pass left via eta_R."""
    acc: dict = {}
    for g, left in psi(x).items():
        for g3, mid in psi(AElement(frozenset([g]))).items():
            for k in mid.terms:
                s, g2 = _split_scalar(k)
                _acc_add(acc, (g2, g3), eta_R_times(s, left))
    return {k: v for k, v in acc.items() if v}


def counit_left(t: TensorElement) -> AElement:
    """(eps (x) id): sum of eps(left) * right."""
    out = AElement.zero()
    for g, left in t.items():
        out = out + AElement.scalar(counit(left)) * AElement(frozenset([g]))
    return out


def counit_right(t: TensorElement) -> AElement:
    """(id (x) eps): only the empty right monomial survives."""
    return t.parts.get(0, AElement.zero())


def antipode_right(t: TensorElement) -> AElement:
    """m (id (x) chi)."""
    out = AElement.zero()
    for g, left in t.items():
        out = out + left * chi(AElement(frozenset([g])))
    return out


def antipode_left(t: TensorElement) -> AElement:
    """m (chi (x) id)."""
    out = AElement.zero()
    for g, left in t.items():
        out = out + chi(left) * AElement(frozenset([g]))
    return out


def check_monomial(x: AElement, report: Report) -> None:
    label = str(x)
    px = psi(x)
    report.check(_psi_then_left(x) == _psi_then_right(x), axiom="coassociativity", monomial=label)
    report.check(counit_left(px) == x, axiom="left counit", monomial=label, got=str(counit_left(px)))
    report.check(counit_right(px) == x, axiom="right counit", monomial=label, got=str(counit_right(px)))
    eps = counit(x)
    got = antipode_right(px)
    report.check(got == eta_L(eps), axiom="antipode m(id x chi)psi = eta_L eps", monomial=label, got=str(got))
    got = antipode_left(px)
    report.check(got == eta_R(eps), axiom="antipode m(chi x id)psi = eta_R eps", monomial=label, got=str(got))
    report.check(chi(chi(x)) == x, axiom="chi^2 = id", monomial=label)


def verify_hopf_axioms(bound: int, scalars=((0, 0),), max_index: int = 8) -> Report:
    """Check all axioms on every generator monomial of topological degree <= bound.

    ``scalars`` lists extra base-scalar multipliers tau^a rho^b to include.
    """
    if bound < 0:
        raise ValueError("bound must be non-negative")
    report = Report("hopf")
    with timed(report):
        mons = monomials_up_to(bound, max_index)
        for a, b in scalars:
            s = pk.scalar_key(a, b)
            for g in mons:
                check_monomial(AElement(frozenset([s + g])), report)
        report.details["monomials"] = len(mons) * len(scalars)
    return report


def verify_relation_consistency(i_max: int = 4) -> Report:
    """psi(tau_i)^2 equals psi applied to the rewritten tau_i^2."""
    report = Report("relation-consistency")
    with timed(report):
        for i in range(i_max + 1):
            t = AElement.tau_gen(i)
            lhs = psi(t) * psi(t)
            rhs = psi(t * t)
            report.check(lhs == rhs, i=i, lhs=str(lhs), rhs=str(rhs))
    return report
