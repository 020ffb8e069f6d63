"""Pure-Python product kernel for F_2-combinations of packed monomials.

An element is a frozenset of packed keys (see ``_packing``); addition is
symmetric difference.  The only nontrivial rule is the relation

    tau_i^2 = tau * xi_{i+1} + rho * tau_{i+1} + rho * tau_0 * xi_{i+1}

which is applied whenever two factors share a tau_i.
"""

from functools import lru_cache

from . import _packing as pk

_EMASK_CLEAR = ~pk.EMASK_FIELD


def _times_tau(key: int, i: int, out: set) -> None:
    """Toggle the reduced terms of key * tau_i into ``out``."""
    t = pk.tau_key(i)
    if not key & t:
        _toggle(out, key | t)
        return
    base = key ^ t
    xi_next = pk.xi_key(i + 1)
    # tau * xi_{i+1}
    _toggle(out, pk.check(base + pk.ONE_TAU + xi_next))
    # rho * tau_{i+1}
    _times_tau(pk.check(base + pk.ONE_RHO), i + 1, out)
    # rho * tau_0 * xi_{i+1}
    _times_tau(pk.check(base + pk.ONE_RHO + xi_next), 0, out)


def _toggle(out: set, key: int) -> None:
    if key in out:
        out.remove(key)
    else:
        out.add(key)


@lru_cache(maxsize=None)
def tau_product(m1: int, m2: int) -> frozenset:
    """Reduced product of the tau-monomials with bitmasks m1 and m2."""
    terms = {m1 << pk.EMASK_SHIFT}
    for i in range(pk.MAX_TAU + 1):
        if m2 >> i & 1:
            nxt: set = set()
            for k in terms:
                _times_tau(k, i, nxt)
            terms = nxt
    return frozenset(terms)


def mul_terms(xs, ys) -> frozenset:
    """F_2 product of two collections of packed keys, fully reduced."""
    if not xs or not ys:
        return frozenset()
    if len(xs) < len(ys):
        xs, ys = ys, xs
    out: set = set()
    add, discard = out.add, out.discard
    guard = pk.GUARD
    emask_shift = pk.EMASK_SHIFT
    for y in ys:
        my = (y >> emask_shift) & 0xFF
        if not my:
            for x in xs:
                k = x + y
                if k in out:
                    discard(k)
                else:
                    add(k)
            continue
        yb = y & _EMASK_CLEAR
        for x in xs:
            mx = (x >> emask_shift) & 0xFF
            if not mx & my:
                k = x + y
                if k in out:
                    discard(k)
                else:
                    add(k)
            else:
                base = (x & _EMASK_CLEAR) + yb
                if base & guard:
                    raise pk.PackingOverflow("monomial exponent exceeds the packed field range")
                for t in tau_product(mx, my):
                    k = base + t
                    if k in out:
                        discard(k)
                    else:
                        add(k)
    for k in out:
        if k & guard:
            raise pk.PackingOverflow("monomial exponent exceeds the packed field range")
    return frozenset(out)
