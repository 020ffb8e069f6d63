"""Hypothesis strategies for random algebra elements."""

from hypothesis import strategies as st

from motivic_steenrod.algebra import AElement, monomials_up_to
from motivic_steenrod import _packing as pk

_MONOS = monomials_up_to(14, 4)


def monomial_keys(scalars: bool = True):
    mono = st.sampled_from(_MONOS)
    if not scalars:
        return mono
    return st.tuples(mono, st.integers(0, 2), st.integers(0, 2)).map(
        lambda t: t[0] + pk.scalar_key(t[1], t[2]))


def elements(scalars: bool = True, max_terms: int = 5):
    return st.frozensets(monomial_keys(scalars), max_size=max_terms).map(AElement)


def homogeneous_f2(max_terms: int = 4):
    """Nonzero F_2-combinations of monomials sharing one bidegree."""
    by_degree: dict = {}
    for k in _MONOS:
        by_degree.setdefault(pk.bidegree(k), []).append(k)
    groups = [v for v in by_degree.values()]
    return st.sampled_from(groups).flatmap(
        lambda g: st.frozensets(st.sampled_from(g), min_size=1, max_size=max_terms)).map(AElement)
