"""Acceptance criteria: one PASS/FAIL line per criterion, each under its time limit.

Run with ``pytest tests/test_acceptance.py -v`` or directly as a script.
Memo tables are cleared before every criterion so the timings are cold.
"""

from __future__ import annotations

import sys
import time

import pytest

from motivic_steenrod import power_ops, series
from motivic_steenrod.algebra import AElement, chi
from motivic_steenrod.bsigma import cartan_v_rule_check
from motivic_steenrod.hopf import verify_hopf_axioms, verify_relation_consistency
from motivic_steenrod.ops import verify_ops_compat
from motivic_steenrod.report import Report
from motivic_steenrod.steinberger import ClosureCaps, closure_report, verify_tau_relation, verify_xi_identity

T, X = AElement.tau_gen, AElement.xi_gen
WINDOW = (-40, 40)


def _cold():
    power_ops.clear_memo()
    power_ops.q_gen_series.cache_clear()
    power_ops._xi_inverse.cache_clear()


def hopf_suite():
    r = verify_hopf_axioms(24, scalars=((0, 0), (1, 0), (0, 1), (1, 1)))
    return r.passed, f"{r.details['monomials']} monomials, {r.checks} checks", r


def relation_consistency():
    r = verify_relation_consistency(4)
    return r.passed, f"i <= 4, {r.checks} checks", r


def comp_inv():
    r = series.verify_comp_inv(33, WINDOW)
    return r.passed, "through t^33", r


def inversion_trick():
    r = series.verify_inversion_trick((-5, 5), (-16, 16), WINDOW)
    return r.passed, f"{r.checks} bracket comparisons", r


def spot_values():
    ok = (power_ops.q_generator(0, ("tau", 0)) == AElement.zero()
          and power_ops.q_generator(1, ("tau", 0)) == X(1)
          and power_ops.q_generator(2, ("tau", 0)) == T(1) + X(1) * T(0)
          and power_ops.q_generator(2, ("xi", 1)) == X(1) ** 2
          and power_ops.q_generator(4, ("xi", 1)) == X(1) ** 3 + X(2))
    ok = ok and all(not power_ops.q_generator(2 * r + 1, ("xi", n))
                    for n in range(1, 4) for r in range(WINDOW[0], WINDOW[1] + 1))
    r = power_ops.verify_spot_values(3, WINDOW)
    return ok and r.passed, f"listed values + {r.checks} cross-path checks", r


def conjugate_reach():
    ok = all(power_ops.q_generator(2 ** (k + 1) - 2, ("tau", 0)) == chi(T(k))
             and power_ops.q_generator(2 ** (k + 1) - 3, ("tau", 0)) == chi(X(k)) for k in range(1, 5))
    return ok, "k = 1..4", None


def recurrences():
    r = power_ops.verify_recurrences(4, WINDOW)
    return r.passed, f"n <= 4, {r.checks} coefficients", r


def conishida():
    total = Report("conishida")
    for x in ("u", "v"):
        total.merge(power_ops.verify_conishida(x, (-8, 8), 32, WINDOW))
    return total.passed, f"x in {{u, v}}, {total.checks} coefficients", total


def steinberger():
    a = verify_tau_relation(4, WINDOW)
    b = verify_xi_identity(4, WINDOW)
    rep = closure_report(T(0), ClosureCaps(p_max=15))
    want = ("tau_1", "tau_2", "xi_1", "xi_2")
    closure_ok = all(rep["targets"][n]["status"] == "yes" and rep["targets"][n]["verified"] for n in want)
    return a.passed and b.passed and closure_ok, f"relations i = 1..4, closure reached {rep['reached']} elements", a.merge(b)


def ops_compat():
    r = verify_ops_compat((-8, 8), WINDOW)
    return r.passed, f"i in [-8, 8], {r.checks} coefficients", r


def property_sweeps():
    total = Report("properties")
    total.merge(power_ops.verify_q_properties(12))
    total.merge(power_ops.verify_additivity_and_cartan(200, seed=2024, max_degree=12))
    total.merge(cartan_v_rule_check())
    return total.passed, f"{total.checks} checks", total


CRITERIA = [
    (1, "Hopf algebroid axioms, degree <= 24", hopf_suite, 30),
    (2, "relation consistency psi(tau_i)^2", relation_consistency, 5),
    (3, "generating-function composition inverses", comp_inv, 5),
    (4, "inversion trick brackets", inversion_trick, 10),
    (5, "closed-form spot values (two code paths)", spot_values, 5),
    (6, "conjugate reach from tau_0", conjugate_reach, 10),
    (7, "recurrence suite", recurrences, 30),
    (8, "co-Nishida identity for u and v", conishida, 60),
    (9, "generation relations and closure", steinberger, 60),
    (10, "ops left/right coaction compatibility", ops_compat, 30),
    (11, "squaring, vanishing, additivity, Cartan sweeps", property_sweeps, 30),
]


def evaluate(number: int):
    _, title, fn, limit = CRITERIA[number - 1]
    _cold()
    t0 = time.perf_counter()
    ok, info, report = fn()
    elapsed = time.perf_counter() - t0
    passed = ok and elapsed < limit
    line = f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}: {info}; {elapsed:.2f}s (limit {limit}s)"
    if report is not None and report.failures:
        line += f"\n    first witness: {report.failures[0]}"
    return passed, line


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA])
def test_criterion(number, capsys):
    passed, line = evaluate(number)
    with capsys.disabled():
        print("\n" + line)
    assert passed, line


if __name__ == "__main__":
    results = [evaluate(n) for n, *_ in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
