import random

import pytest
from hypothesis import given, settings, strategies as st

from motivic_steenrod import _packing as pk, kernel
from motivic_steenrod.algebra import monomials_up_to

from strategies import monomial_keys

compiled = kernel.compiled_mul_terms()
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernel not built")


@given(st.frozensets(monomial_keys(), max_size=8), st.frozensets(monomial_keys(), max_size=8))
@settings(max_examples=150, deadline=None)
@needs_compiled
def test_compiled_matches_python(xs, ys):
    assert compiled(xs, ys) == kernel.python_mul_terms(xs, ys)


@needs_compiled
def test_compiled_matches_python_on_large_inputs():
    rng = random.Random(7)
    mons = monomials_up_to(24)
    xs, ys = frozenset(rng.sample(mons, 150)), frozenset(rng.sample(mons, 150))
    assert compiled(xs, ys) == kernel.python_mul_terms(xs, ys)


@pytest.mark.parametrize("fn", [kernel.python_mul_terms, compiled] if compiled else [kernel.python_mul_terms])
def test_overflow_raises(fn):
    x = frozenset([pk.xi_key(1, 100)])
    with pytest.raises(pk.PackingOverflow):
        fn(x, x)


def test_pack_round_trip():
    k = pk.pack(3, 2, (0, 4), {1: 5, 7: 1})
    assert pk.unpack(k) == (3, 2, (0, 4), {1: 5, 7: 1})


def test_backend_name():
    assert kernel.BACKEND in ("python", "cython")
