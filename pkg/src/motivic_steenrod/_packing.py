"""Fixed-width packing of monomials tau^a rho^b tau_E xi^R into one integer.

Sixteen 8-bit fields in 128 bits:

    field 0      a, the exponent of the base class tau
    field 1      b, the exponent of rho
    field 2      bitmask E of the tau_i present (i = 0..7)
    field 2 + i  r_i, the exponent of xi_i (i = 1..13)

Exponents are limited to 0..127 so the top bit of every exponent field is a
guard: a product of two valid keys is formed by integer addition and a set
guard bit means an exponent left the representable range.  Fields never carry
into each other, so the low and high 64-bit halves can be added independently
(the compiled kernel relies on this).
"""

WIDTH = 8
NFIELDS = 16
FIELD_MASK = (1 << WIDTH) - 1
MAX_EXP = 127
MAX_TAU = 7
MAX_XI = NFIELDS - 3

TAU_SHIFT = 0
RHO_SHIFT = WIDTH
EMASK_SHIFT = 2 * WIDTH
EMASK_FIELD = FIELD_MASK << EMASK_SHIFT

_GUARD_BIT = 1 << (WIDTH - 1)
GUARD = sum(_GUARD_BIT << (WIDTH * f) for f in range(NFIELDS) if f != 2)

SCALAR_FIELDS = (1 << (2 * WIDTH)) - 1
GEN_FIELDS = ((1 << (WIDTH * NFIELDS)) - 1) ^ SCALAR_FIELDS

ONE_TAU = 1 << TAU_SHIFT
ONE_RHO = 1 << RHO_SHIFT


class PackingOverflow(OverflowError):
    pass


def xi_shift(i: int) -> int:
    return WIDTH * (2 + i)


def tau_key(i: int) -> int:
    if not 0 <= i <= MAX_TAU:
        raise PackingOverflow(f"tau_{i} is outside the packed range tau_0..tau_{MAX_TAU}")
    return 1 << (EMASK_SHIFT + i)


def xi_key(i: int, r: int = 1) -> int:
    if not 1 <= i <= MAX_XI:
        raise PackingOverflow(f"xi_{i} is outside the packed range xi_1..xi_{MAX_XI}")
    if not 0 <= r <= MAX_EXP:
        raise PackingOverflow(f"exponent {r} of xi_{i} exceeds {MAX_EXP}")
    return r << xi_shift(i)


def scalar_key(a: int, b: int) -> int:
    if not (0 <= a <= MAX_EXP and 0 <= b <= MAX_EXP):
        raise PackingOverflow(f"scalar exponents ({a}, {b}) exceed {MAX_EXP}")
    return a | (b << RHO_SHIFT)


def pack(a: int, b: int, taus, xis) -> int:
    """Pack tau^a rho^b prod(tau_i for i in taus) prod(xi_i^r for i, r in xis)."""
    key = scalar_key(a, b)
    for i in taus:
        t = tau_key(i)
        if key & t:
            raise ValueError(f"tau_{i} repeated; monomial keys are admissible")
        key |= t
    for i, r in dict(xis).items():
        if r:
            key += xi_key(i, r)
    check(key)
    return key


def check(key: int) -> int:
    if key & GUARD:
        raise PackingOverflow("monomial exponent exceeds the packed field range")
    return key


def scalar_part(key: int):
    return key & FIELD_MASK, (key >> RHO_SHIFT) & FIELD_MASK


def emask(key: int) -> int:
    return (key >> EMASK_SHIFT) & FIELD_MASK


def tau_indices(key: int):
    m = emask(key)
    return tuple(i for i in range(MAX_TAU + 1) if m >> i & 1)


def xi_exponents(key: int):
    """Return {i: r_i} for the nonzero xi exponents."""
    out = {}
    rest = key >> xi_shift(1)
    i = 1
    while rest:
        r = rest & FIELD_MASK
        if r:
            out[i] = r
        rest >>= WIDTH
        i += 1
    return out


def unpack(key: int):
    a, b = scalar_part(key)
    return a, b, tau_indices(key), xi_exponents(key)


def gen_part(key: int) -> int:
    return key & GEN_FIELDS


def bidegree(key: int):
    """Homological bidegree (p, q): tau is (0,-1), rho is (-1,-1)."""
    a, b, taus, xis = unpack(key)
    p = -b
    q = -a - b
    for i in taus:
        p += 2 ** (i + 1) - 1
        q += 2 ** i - 1
    for i, r in xis.items():
        p += r * 2 * (2 ** i - 1)
        q += r * (2 ** i - 1)
    return p, q
