"""Generation of the dual Steenrod algebra from tau_0 under products and Q^i.

Two kinds of evidence are produced here.  The relation checks evaluate the
identities expressing tau_i and xi_i through power operations on lower
generators.  The closure engine saturates a seed under products and Q^i inside
a topological-degree cap and then decides, per bidegree, whether each target
generator is an M-linear combination of reached elements.  Every positive
answer carries a witness that is replayed from the seed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import _packing as pk
from .algebra import AElement, Bidegree, Caps, InhomogeneousError, format_key, tau_degree
from .power_ops import DEFAULT_WINDOW, lowest_index, q_element, q_gen_series, q_generator
from .report import Report, timed
from .series import TruncationError

_ZERO = AElement.zero()


def _q_checked(i: int, gen, window) -> AElement:
    """Q^i on a generator, cross-checked against a fresh series at the window."""
    r, parity = divmod(i, 2)
    if r > window[1]:
        raise TruncationError(f"Q^{i} needs t^{r}, outside window {window}")
    val = q_generator(i, gen)
    if r >= window[0]:
        direct = q_gen_series(tuple(gen), parity, window[1]).coeff(r)
        if direct != val:
            raise AssertionError(f"memoized Q^{i}{gen} disagrees with series: {val} vs {direct}")
    return val


def tau_relation_residual(i: int, window=DEFAULT_WINDOW) -> AElement:
    """Q^{2(2^i-1)}(tau_0) + tau_i + sum_{k<i} tau_k Q^{2(2^i-2^k-1)+1}(tau_0)."""
    out = _q_checked(2 * (2 ** i - 1), ("tau", 0), window) + AElement.tau_gen(i)
    for k in range(i):
        out = out + AElement.tau_gen(k) * _q_checked(2 * (2 ** i - 2 ** k - 1) + 1, ("tau", 0), window)
    return out


def verify_tau_relation(i_max: int = 4, window=DEFAULT_WINDOW) -> Report:
    report = Report("tau-relation")
    with timed(report):
        report.notes.append("i = 0 skipped: the relation degenerates to an empty statement")
        for i in range(1, i_max + 1):
            res = tau_relation_residual(i, window)
            report.check(not res, i=i, residual=str(res))
    return report


def xi_identity_terms(i: int, window=DEFAULT_WINDOW):
    """(xi_i, Q^{-1}(tau_i) + Q^{2^i-1}(tau_{i-1})); for i = 0 the v-coefficient 1 = 1 + Q^{-1}(tau_0)."""
    if i == 0:
        return AElement.one(), AElement.one() + _q_checked(-1, ("tau", 0), window)
    rhs = _q_checked(-1, ("tau", i), window) + _q_checked(2 ** i - 1, ("tau", i - 1), window)
    return AElement.xi_gen(i), rhs


def verify_xi_identity(i_max: int = 4, window=DEFAULT_WINDOW) -> Report:
    report = Report("xi-identity")
    with timed(report):
        for i in range(0, i_max + 1):
            lhs, rhs = xi_identity_terms(i, window)
            report.check(lhs == rhs, i=i, lhs=str(lhs), rhs=str(rhs))
    return report


# closure engine

@dataclass(frozen=True)
class ClosureCaps:
    """Bounds for saturation.

    ``p_max`` caps the topological degree of reached elements, ``scalars``
    caps the tau/rho exponents of M-multipliers, ``max_steps`` limits the
    number of saturation rounds (None = until nothing new appears) and
    ``max_elements`` is a safety budget.
    """

    p_max: int = 15
    scalars: Caps = Caps()
    max_steps: int | None = None
    max_elements: int = 20000
    products: bool = True

    def to_json(self) -> dict:
        return {
            "p_max": self.p_max,
            "tau_exp": self.scalars.tau_exp,
            "rho_exp": self.scalars.rho_exp,
            "max_steps": self.max_steps,
            "max_elements": self.max_elements,
            "products": self.products,
        }


@dataclass
class Reached:
    value: AElement
    degree: Bidegree
    step: int
    how: tuple  # ("seed",) | ("Q", i, parent) | ("mul", a, b)


def constructive_indices(p_max: int) -> list:
    """Q-indices used by the explicit generation argument, in ascending order."""
    out = set()
    i = 1
    while 2 ** i <= p_max + 2:
        out.add(2 * (2 ** i - 1))
        for k in range(i):
            out.add(2 * (2 ** i - 2 ** k - 1) + 1)
        i += 1
    k = 1
    while 2 ** (k + 1) - 3 <= p_max:
        out.update((2 ** (k + 1) - 2, 2 ** (k + 1) - 3))
        k += 1
    return sorted(x for x in out if x >= 0)


class _Echelon:
    """F_2 row echelon form over sets of monomial keys, tracking combinations.

    Rows are (vector, combo) where both are Python ints used as bitsets: the
    vector over an index of monomial keys, the combo over caller tags.
    """

    def __init__(self):
        self.index: dict = {}
        self.rows: dict = {}  # pivot bit -> (vector, combo)

    def _vec(self, keys) -> int:
        v = 0
        for k in keys:
            b = self.index.get(k)
            if b is None:
                b = self.index[k] = len(self.index)
            v ^= 1 << b
        return v

    def reduce(self, vec: int, combo: int = 0):
        while vec:
            top = vec.bit_length() - 1
            row = self.rows.get(top)
            if row is None:
                break
            vec ^= row[0]
            combo ^= row[1]
        return vec, combo

    def add(self, keys, tag_bit: int) -> bool:
        """Insert; returns False when the vector was already in the span."""
        vec, combo = self.reduce(self._vec(keys), tag_bit)
        if not vec:
            return False
        self.rows[vec.bit_length() - 1] = (vec, combo)
        return True

    def solve(self, keys):
        """Combination of tags summing to keys, or None."""
        vec, combo = self.reduce(self._vec(keys), 0)
        return None if vec else combo


@dataclass
class ClosureState:
    seed: AElement
    caps: ClosureCaps
    reached: list = field(default_factory=list)
    complete: bool = True
    stop_reason: str = "saturated"
    steps: int = 0

    def expression(self, idx: int) -> str:
        """Replayable expression for reached element idx, in CLI syntax."""
        memo: dict = {}

        def go(j):
            if j in memo:
                return memo[j]
            how = self.reached[j].how
            if how[0] == "seed":
                s = f"({self.seed})"
            elif how[0] == "Q":
                s = f"Q[{how[1]}]({go(how[2])})"
            else:
                s = f"({go(how[1])})*({go(how[2])})"
            memo[j] = s
            return s

        return go(idx)

    def replay(self, idx: int) -> AElement:
        """Recompute element idx from the seed following its derivation."""
        memo: dict = {}

        def go(j):
            if j in memo:
                return memo[j]
            how = self.reached[j].how
            if how[0] == "seed":
                v = self.seed
            elif how[0] == "Q":
                v = q_element(how[1], go(how[2]))
            else:
                v = go(how[1]) * go(how[2])
            memo[j] = v
            return v

        return go(idx)

    def by_degree(self) -> dict:
        out: dict = {}
        for j, r in enumerate(self.reached):
            out.setdefault(r.degree, []).append(j)
        return out


def _homogeneous_degree(x: AElement) -> Bidegree:
    try:
        return x.bidegree()
    except InhomogeneousError:
        raise ValueError(f"closure seed must be bihomogeneous, got {x}") from None


def closure_generate(seed: AElement, caps: ClosureCaps = ClosureCaps()) -> ClosureState:
    """Saturate {seed} under products and Q^i within the degree cap.

    Elements are kept only when new modulo the F_2-span of elements already
    reached in the same bidegree; since Q is additive on F_2-combinations and
    products are bilinear, the discarded ones add nothing.  Q is applied only
    to F_2-combinations.  Degrees of F_2 elements never drop under Q (the
    lowest nonvanishing index is >= 0), so capping p is a complete search.
    """
    state = ClosureState(seed, caps)
    if not seed:
        return state
    d0 = _homogeneous_degree(seed)
    echelons: dict = {}
    cons = constructive_indices(caps.p_max)

    def admit(val: AElement, how: tuple, step: int) -> int | None:
        if not val:
            return None
        d = val.bidegree()
        if d.p > caps.p_max:
            return None
        ech = echelons.setdefault(d, _Echelon())
        j = len(state.reached)
        if not ech.add(val.terms, 1 << j):
            return None
        state.reached.append(Reached(val, d, step, how))
        return j

    admit(seed, ("seed",), 0)
    if d0.p > caps.p_max:
        state.stop_reason = "seed above degree cap"
        return state
    frontier = [0]
    step = 0
    while frontier:
        if caps.max_steps is not None and step >= caps.max_steps:
            state.complete = False
            state.stop_reason = f"stopped after {step} steps"
            break
        step += 1
        new: list = []
        in_frontier = set(frontier)
        for j in frontier:
            x = state.reached[j]
            if x.value.is_f2():
                lo = lowest_index(x.degree)
                top = caps.p_max - x.degree.p
                order = [i for i in cons if lo <= i <= top]
                first = set(order)
                order += [i for i in range(lo, top + 1) if i not in first]
                for i in order:
                    k = admit(q_element(i, x.value), ("Q", i, j), step)
                    if k is not None:
                        new.append(k)
            if caps.products:
                for other in range(len(state.reached)):
                    if other > j and other in in_frontier:
                        continue  # pair handled when other is processed
                    y = state.reached[other]
                    if x.degree.p + y.degree.p > caps.p_max:
                        continue
                    k = admit(x.value * y.value, ("mul", j, other), step)
                    if k is not None:
                        new.append(k)
            if len(state.reached) > caps.max_elements:
                state.complete = False
                state.stop_reason = f"element budget {caps.max_elements} exhausted"
                frontier = []
                break
        else:
            frontier = sorted(set(new))
        state.steps = step
    return state


def _scalar_multiplier(target: Bidegree, d: Bidegree):
    """The unique (a, b) with tau^a rho^b * (class of degree d) in degree target."""
    b = d.p - target.p
    a = d.q - target.q - b
    return a, b


def membership(state: ClosureState, target: AElement) -> dict:
    """Decide whether target lies in the M-span of the reached elements.

    Returns {"status": "yes" | "no-within-caps" | "undecided", ...}; "yes"
    comes with a witness list of (scalar, expression) that has been replayed.
    """
    caps = state.caps
    td = _homogeneous_degree(target) if target else None
    if not target:
        return {"status": "yes", "witness": [], "verified": True}
    ech = _Echelon()
    tags: list = []
    for j, r in enumerate(state.reached):
        a, b = _scalar_multiplier(td, r.degree)
        if not (0 <= a <= caps.scalars.tau_exp and 0 <= b <= caps.scalars.rho_exp):
            continue
        try:
            scaled = AElement.monomial(a, b) * r.value
        except pk.PackingOverflow:
            continue
        if not scaled:
            continue
        ech.add(scaled.terms, 1 << len(tags))
        tags.append((j, a, b))
    combo = ech.solve(target.terms)
    if combo is None:
        decided = state.complete and td.p + caps.scalars.rho_exp <= caps.p_max
        return {"status": "no-within-caps" if decided else "undecided"}
    picks = [tags[t] for t in range(len(tags)) if combo >> t & 1]
    total = _ZERO
    witness = []
    for j, a, b in picks:
        total = total + AElement.monomial(a, b) * state.replay(j)
        witness.append({"scalar": format_key(pk.scalar_key(a, b)), "element": state.expression(j),
                        "value": str(state.reached[j].value), "step": state.reached[j].step})
    return {"status": "yes", "witness": witness, "verified": total == target}


def default_targets(p_max: int) -> list:
    out = []
    i = 0
    while tau_degree(i).p <= p_max:
        out.append((f"tau_{i}", AElement.tau_gen(i)))
        if i:
            out.append((f"xi_{i}", AElement.xi_gen(i)))
        i += 1
    return out


def closure_report(seed: AElement, caps: ClosureCaps = ClosureCaps(), targets=None) -> dict:
    state = closure_generate(seed, caps)
    if targets is None:
        targets = default_targets(caps.p_max)
    return {
        "seed": str(seed),
        "caps": caps.to_json(),
        "reached": len(state.reached),
        "steps": state.steps,
        "complete": state.complete,
        "stop_reason": state.stop_reason,
        "targets": {name: membership(state, t) for name, t in targets},
    }


def verify_closure(caps: ClosureCaps = ClosureCaps(),
                   expected=("tau_1", "tau_2", "xi_1", "xi_2")) -> Report:
    """Seed tau_0 reaches the expected generators with replayed witnesses."""
    report = Report("steinberger-closure")
    with timed(report):
        rep = closure_report(AElement.tau_gen(0), caps)
        for name in expected:
            verdict = rep["targets"].get(name, {"status": "missing"})
            report.check(verdict["status"] == "yes" and verdict.get("verified", False),
                         target=name, status=verdict["status"])
        report.details["closure"] = rep
    return report


def verify_conjugate_steps(k_max: int = 4) -> Report:
    """chi(tau_k), chi(xi_k) appear after one step from tau_0 (Q applications only)."""
    from .algebra import chi
    report = Report("steinberger-conjugates")
    with timed(report):
        p_max = 2 ** (k_max + 1) - 1
        state = closure_generate(AElement.tau_gen(0), ClosureCaps(p_max=p_max, max_steps=1, products=False))
        values = {r.value: r for r in state.reached}
        for k in range(1, k_max + 1):
            for name, target in ((f"chi(tau_{k})", chi(AElement.tau_gen(k))),
                                 (f"chi(xi_{k})", chi(AElement.xi_gen(k)))):
                hit = values.get(target)
                report.check(hit is not None and hit.step == 1, target=name)
    return report


def verify_steinberger(i_max: int = 4, window=DEFAULT_WINDOW, caps: ClosureCaps = ClosureCaps()) -> Report:
    report = Report("steinberger")
    for sub in (verify_tau_relation(i_max, window), verify_xi_identity(i_max, window),
                verify_closure(caps), verify_conjugate_steps(i_max)):
        report.merge(sub)
        report.details[sub.name] = sub.details if sub.details else sub.passed
    return report


def dumps(rep: dict) -> str:
    return json.dumps(rep, indent=2, sort_keys=True)
