"""A deliberately naive second implementation used to cross-check the engine.

Polynomials in xi_1, xi_2, ... over F_2 are sets of exponent tuples; Laurent
series in t are dicts {power: polynomial}.  Nothing here is shared with the
package, so agreement is meaningful.
"""

from __future__ import annotations

NVARS = 6


def var(i: int, r: int = 1) -> frozenset:
    e = [0] * NVARS
    e[i - 1] = r
    return frozenset([tuple(e)])


ONE = frozenset([(0,) * NVARS])


def padd(a: frozenset, b: frozenset) -> frozenset:
    return a ^ b


def pmul(a: frozenset, b: frozenset) -> frozenset:
    out: set = set()
    for x in a:
        for y in b:
            out ^= {tuple(i + j for i, j in zip(x, y))}
    return frozenset(out)


def sadd(f: dict, g: dict) -> dict:
    out = dict(f)
    for k, v in g.items():
        out[k] = padd(out.get(k, frozenset()), v)
    return {k: v for k, v in out.items() if v}


def smul(f: dict, g: dict, top: int) -> dict:
    out: dict = {}
    for i, a in f.items():
        for j, b in g.items():
            if i + j <= top:
                out[i + j] = padd(out.get(i + j, frozenset()), pmul(a, b))
    return {k: v for k, v in out.items() if v}


def shift(f: dict, n: int) -> dict:
    return {k + n: v for k, v in f.items()}


def xi(top: int) -> dict:
    """xi(t) = t + xi_1 t^2 + xi_2 t^4 + ..."""
    out = {1: ONE}
    i = 1
    while 2 ** i <= top:
        out[2 ** i] = var(i)
        i += 1
    return out


def xi_inverse(top: int) -> dict:
    """1/xi(t) = t^{-1} * sum_k a^k with a = xi(t)/t - 1, computed by repeated multiplication."""
    a = {k - 1: v for k, v in xi(top + 2).items() if k > 1}
    acc = {0: ONE}
    power = {0: ONE}
    for _ in range(top + 2):
        power = smul(power, a, top + 1)
        if not power:
            break
        acc = sadd(acc, power)
    return shift(acc, -1)


def q_even_xi(n: int, top: int) -> dict:
    """sum_r Q^{2r}(xi_n) t^r up to t^top."""
    big = top + 2 ** n
    s = {2 ** i: (var(i) if i else ONE) for i in range(n + 1)}
    sq = {2 ** (i + 1): (var(i, 2) if i else ONE) for i in range(n)}
    inner = sadd(s, smul(xi_inverse(big), sq, big))
    return {k: v for k, v in shift(inner, -2 ** n).items() if k <= top}


def q_odd_tau(n: int, top: int) -> dict:
    """sum_r Q^{2r+1}(tau_n) t^r up to t^top."""
    big = top + 2 ** n
    s = {2 ** i: (var(i) if i else ONE) for i in range(n + 1)}
    inner = sadd(smul(xi_inverse(big), s, big), {0: ONE})
    return {k: v for k, v in shift(inner, -2 ** n).items() if k <= top}


def to_text(p: frozenset) -> set:
    """Polynomial as a set of 'X1^2*X3'-style monomial strings."""
    out = set()
    for e in p:
        bits = []
        for i, r in enumerate(e, start=1):
            if r:
                bits.append(f"X{i}" if r == 1 else f"X{i}^{r}")
        out.add("*".join(bits) or "1")
    return out
