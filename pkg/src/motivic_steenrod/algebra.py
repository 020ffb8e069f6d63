"""Sparse arithmetic in the motivic mod-2 dual Steenrod algebra.

Elements are F_2-combinations of monomials tau^a rho^b tau_E xi^R, stored as
frozensets of packed integer keys (``_packing``).  The base ring is
M = F_2[tau, rho]; the algebra is M[tau_0, tau_1, ..., xi_1, xi_2, ...] modulo

    tau_i^2 = tau xi_{i+1} + rho tau_{i+1} + rho tau_0 xi_{i+1}.

Bidegrees are homological: |tau_i| = (2^{i+1}-1, 2^i-1), |xi_i| = (2^{i+1}-2,
2^i-1), |tau| = (0,-1), |rho| = (-1,-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from . import _packing as pk
from .kernel import mul_terms


class InhomogeneousError(ValueError):
    def __init__(self, degrees):
        self.degrees = sorted(degrees)
        super().__init__(f"element is not homogeneous; bidegrees found: {self.degrees}")


@dataclass(frozen=True, order=True)
class Bidegree:
    p: int
    q: int

    def __add__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "Bidegree") -> "Bidegree":
        return Bidegree(self.p - other.p, self.q - other.q)

    def to_json(self):
        return [self.p, self.q]

    @classmethod
    def from_json(cls, data) -> "Bidegree":
        return cls(int(data[0]), int(data[1]))

    def __iter__(self):
        yield self.p
        yield self.q


def tau_degree(i: int) -> Bidegree:
    return Bidegree(2 ** (i + 1) - 1, 2 ** i - 1)


def xi_degree(i: int) -> Bidegree:
    return Bidegree(2 * (2 ** i - 1), 2 ** i - 1)


TAU_DEGREE = Bidegree(0, -1)
RHO_DEGREE = Bidegree(-1, -1)


class BaseScalar:
    """An element of M = F_2[tau, rho] as a set of exponent pairs (a, b)."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable = ()):
        acc: set = set()
        for t in terms:
            t = (int(t[0]), int(t[1]))
            if t[0] < 0 or t[1] < 0:
                raise ValueError(f"negative exponent in base scalar {t}")
            acc ^= {t}
        self.terms = frozenset(acc)

    @classmethod
    def one(cls) -> "BaseScalar":
        return cls([(0, 0)])

    def __add__(self, other: "BaseScalar") -> "BaseScalar":
        return BaseScalar(self.terms ^ other.terms)

    def __mul__(self, other: "BaseScalar") -> "BaseScalar":
        acc: set = set()
        for a, b in self.terms:
            for c, d in other.terms:
                acc ^= {(a + c, b + d)}
        return BaseScalar(acc)

    def __eq__(self, other):
        return isinstance(other, BaseScalar) and self.terms == other.terms

    def __hash__(self):
        return hash(("BaseScalar", self.terms))

    def __bool__(self):
        return bool(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms))

    def __repr__(self):
        return f"BaseScalar({sorted(self.terms)})"

    def __str__(self):
        return str(AElement.scalar(self))

    def to_json(self):
        return [list(t) for t in sorted(self.terms)]

    @classmethod
    def from_json(cls, data) -> "BaseScalar":
        return cls(tuple(t) for t in data)


@dataclass(frozen=True)
class GenMonomial:
    """tau_E xi^R with each tau_i appearing at most once."""

    taus: tuple = ()
    xis: tuple = ()  # sorted (i, r) pairs with r >= 1

    @classmethod
    def from_key(cls, key: int) -> "GenMonomial":
        return cls(pk.tau_indices(key), tuple(sorted(pk.xi_exponents(key).items())))

    @property
    def key(self) -> int:
        return pk.pack(0, 0, self.taus, self.xis)

    def bidegree(self) -> Bidegree:
        return Bidegree(*pk.bidegree(self.key))

    def __str__(self):
        return format_key(self.key)


class AElement:
    """Immutable F_2-combination of packed monomials."""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[int] = ()):
        if isinstance(terms, frozenset):
            self.terms = terms
        else:
            acc: set = set()
            for k in terms:
                acc ^= {k}
            self.terms = frozenset(acc)
        self._hash = None

    # constructors
    @classmethod
    def zero(cls) -> "AElement":
        return _ZERO

    @classmethod
    def one(cls) -> "AElement":
        return _ONE

    @classmethod
    def tau_gen(cls, i: int) -> "AElement":
        return cls(frozenset([pk.tau_key(i)]))

    @classmethod
    def xi_gen(cls, i: int, r: int = 1) -> "AElement":
        if i == 0:
            return _ONE
        return cls(frozenset([pk.xi_key(i, r)]))

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, taus=(), xis=()) -> "AElement":
        return cls(frozenset([pk.pack(a, b, taus, xis)]))

    @classmethod
    def scalar(cls, c) -> "AElement":
        if isinstance(c, tuple):
            c = BaseScalar([c])
        return cls(pk.scalar_key(a, b) for a, b in c.terms)

    @classmethod
    def tau(cls) -> "AElement":
        return cls(frozenset([pk.ONE_TAU]))

    @classmethod
    def rho(cls) -> "AElement":
        return cls(frozenset([pk.ONE_RHO]))

    # arithmetic
    def __add__(self, other: "AElement") -> "AElement":
        return AElement(self.terms ^ other.terms)

    __sub__ = __add__

    def __mul__(self, other: "AElement") -> "AElement":
        if not isinstance(other, AElement):
            return NotImplemented
        return AElement(mul_terms(self.terms, other.terms))

    def __pow__(self, k: int) -> "AElement":
        if k < 0:
            raise ValueError("negative powers are not defined in the dual Steenrod algebra")
        result, base = _ONE, self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        return isinstance(other, AElement) and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __repr__(self):
        return f"AElement({self})"

    def __str__(self):
        return format_terms(self.terms)

    # inspection
    def bidegrees(self) -> set:
        return {Bidegree(*pk.bidegree(k)) for k in self.terms}

    def bidegree(self) -> Bidegree:
        degs = self.bidegrees()
        if len(degs) != 1:
            raise InhomogeneousError(degs)
        return next(iter(degs))

    def is_f2(self) -> bool:
        """True when no term carries a tau or rho factor."""
        return all(not (k & pk.SCALAR_FIELDS) for k in self.terms)

    def by_monomial(self) -> dict:
        """Group terms as {generator key: BaseScalar}."""
        out: dict = {}
        for k in self.terms:
            out.setdefault(pk.gen_part(k), []).append(pk.scalar_part(k))
        return {g: BaseScalar(v) for g, v in out.items()}

    def scalar_part(self) -> BaseScalar:
        return BaseScalar(pk.scalar_part(k) for k in self.terms if not pk.gen_part(k))

    def to_json(self):
        out = []
        for g, c in sorted(self.by_monomial().items()):
            xis = pk.xi_exponents(g)
            out.append({
                "tau_set": list(pk.tau_indices(g)),
                "xi_exps": {str(i): r for i, r in sorted(xis.items())},
                "scalar": c.to_json(),
            })
        return out

    @classmethod
    def from_json(cls, data) -> "AElement":
        keys = []
        for term in data:
            g = pk.pack(0, 0, term["tau_set"], {int(i): int(r) for i, r in term["xi_exps"].items()})
            for a, b in term["scalar"]:
                keys.append(g + pk.scalar_key(a, b))
        return cls(keys)


_ZERO = AElement(frozenset())
_ONE = AElement(frozenset([0]))


# printing

def _term_sort_key(key: int):
    a, b, taus, xis = pk.unpack(key)
    gens = tuple((0, i, 1) for i in taus) + tuple((1, i, r) for i, r in sorted(xis.items()))
    return (a + b, b, len(taus) + len(xis), gens)


def format_key(key: int) -> str:
    a, b, taus, xis = pk.unpack(key)
    parts = []
    if a:
        parts.append("tau" if a == 1 else f"tau^{a}")
    if b:
        parts.append("rho" if b == 1 else f"rho^{b}")
    parts.extend(f"T{i}" for i in taus)
    parts.extend(f"X{i}" if r == 1 else f"X{i}^{r}" for i, r in sorted(xis.items()))
    return "*".join(parts) or "1"


def format_terms(terms) -> str:
    if not terms:
        return "0"
    return " + ".join(format_key(k) for k in sorted(terms, key=_term_sort_key))


# plain operations

def elem_add(a: AElement, b: AElement) -> AElement:
    return a + b


def elem_mul(a: AElement, b: AElement) -> AElement:
    return a * b


def bidegree_of(a: AElement) -> Bidegree:
    return a.bidegree()


def counit(a: AElement) -> BaseScalar:
    return a.scalar_part()


def _split_scalar(key: int):
    return key & pk.SCALAR_FIELDS, key & pk.GEN_FIELDS


@lru_cache(maxsize=None)
def _eta_r_key(skey: int) -> AElement:
    a, b = pk.scalar_part(skey)
    base = AElement.tau() + AElement.monomial(0, 1, (0,))
    return base ** a * AElement.monomial(0, b)


def eta_R(c) -> AElement:
    """Right unit: tau -> tau + rho tau_0, rho -> rho."""
    if isinstance(c, AElement):
        if any(pk.gen_part(k) for k in c.terms):
            raise ValueError("eta_R takes a base scalar")
        c = c.scalar_part()
    if isinstance(c, tuple):
        c = BaseScalar([c])
    out = _ZERO
    for a, b in c.terms:
        out = out + _eta_r_key(pk.scalar_key(a, b))
    return out


def eta_L(c) -> AElement:
    """Left unit: the inclusion of base scalars."""
    if isinstance(c, AElement):
        if any(pk.gen_part(k) for k in c.terms):
            raise ValueError("eta_L takes a base scalar")
        return c
    if isinstance(c, tuple):
        c = BaseScalar([c])
    return AElement.scalar(c)


def eta_R_times(key_scalar: int, x: AElement) -> AElement:
    if not key_scalar:
        return x
    return _eta_r_key(key_scalar) * x


# antipode

_CHI_MEMO: dict = {}


def chi_xi(r: int) -> AElement:
    if r == 0:
        return _ONE
    hit = _CHI_MEMO.get(("xi", r))
    if hit is None:
        hit = AElement.xi_gen(r)
        for i in range(1, r):
            hit = hit + AElement.xi_gen(r - i, 2 ** i) * chi_xi(i)
        _CHI_MEMO[("xi", r)] = hit
    return hit


def chi_tau(r: int) -> AElement:
    hit = _CHI_MEMO.get(("tau", r))
    if hit is None:
        hit = AElement.tau_gen(r)
        for i in range(r):
            hit = hit + AElement.xi_gen(r - i, 2 ** i) * chi_tau(i)
        _CHI_MEMO[("tau", r)] = hit
    return hit


def chi_table() -> dict:
    """The antipode on generators computed so far, keyed like ("xi", 3)."""
    return dict(_CHI_MEMO)


def load_chi_table(table: dict) -> None:
    _CHI_MEMO.update(table)
    _chi_gen_key.cache_clear()


@lru_cache(maxsize=65536)
def _chi_gen_key(g: int) -> AElement:
    out = _ONE
    for i in pk.tau_indices(g):
        out = out * chi_tau(i)
    for i, r in pk.xi_exponents(g).items():
        out = out * chi_xi(i) ** r
    return out


def chi(a: AElement) -> AElement:
    """Antipode; chi(c m) = eta_R(c) chi(m)."""
    out: set = set()
    for k in a.terms:
        s, g = _split_scalar(k)
        out ^= eta_R_times(s, _chi_gen_key(g)).terms
    return AElement(frozenset(out))


# tensors

class TensorElement:
    """Element of A (x)_M A, stored as {right generator key: left AElement}.

    The right factor is always scalar-free: m (x) c.n is rewritten to
    m.eta_R(c) (x) n.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: dict | None = None):
        self.parts = {g: v for g, v in (parts or {}).items() if v}

    @classmethod
    def pure(cls, left: AElement, right: AElement) -> "TensorElement":
        return tensor_normalize([(left, right)])

    def __add__(self, other: "TensorElement") -> "TensorElement":
        out = dict(self.parts)
        for g, v in other.parts.items():
            out[g] = out.get(g, _ZERO) + v
        return TensorElement(out)

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        acc: dict = {}
        for g1, l1 in self.parts.items():
            for g2, l2 in other.parts.items():
                left = l1 * l2
                for k in _key_product(g1, g2):
                    s, g = _split_scalar(k)
                    _acc_add(acc, g, eta_R_times(s, left))
        return TensorElement(acc)

    def __pow__(self, k: int) -> "TensorElement":
        result = TensorElement({0: _ONE})
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def scale_left(self, a: AElement) -> "TensorElement":
        return TensorElement({g: a * v for g, v in self.parts.items()})

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.parts == other.parts

    def __hash__(self):
        return hash(frozenset(self.parts.items()))

    def __bool__(self):
        return bool(self.parts)

    def items(self):
        return self.parts.items()

    def total_bidegrees(self) -> set:
        out = set()
        for g, v in self.parts.items():
            gd = Bidegree(*pk.bidegree(g))
            out |= {d + gd for d in v.bidegrees()}
        return out

    def __str__(self):
        if not self.parts:
            return "0"
        pieces = []
        for g in sorted(self.parts, key=_term_sort_key):
            left = self.parts[g]
            lt = str(left)
            if len(left) > 1:
                lt = f"({lt})"
            pieces.append(f"{lt} (x) {format_key(g)}")
        return " + ".join(pieces)

    __repr__ = __str__

    def to_json(self):
        return [{"left": v.to_json(), "right": AElement(frozenset([g])).to_json()}
                for g, v in sorted(self.parts.items())]

    @classmethod
    def from_json(cls, data) -> "TensorElement":
        return tensor_normalize([(AElement.from_json(t["left"]), AElement.from_json(t["right"]))
                                 for t in data])


@lru_cache(maxsize=262144)
def _key_product(g1: int, g2: int) -> frozenset:
    return mul_terms((g1,), (g2,))


def _acc_add(acc: dict, g, v: AElement) -> None:
    cur = acc.get(g)
    acc[g] = v if cur is None else cur + v


def tensor_normalize(raw) -> TensorElement:
    """Build a canonical tensor from (left, right) AElement pairs."""
    acc: dict = {}
    for left, right in raw:
        for k in right.terms:
            s, g = _split_scalar(k)
            _acc_add(acc, g, eta_R_times(s, left))
    return TensorElement(acc)


@lru_cache(maxsize=None)
def psi_tau(r: int) -> TensorElement:
    out = tensor_normalize([(AElement.tau_gen(r), _ONE), (_ONE, AElement.tau_gen(r))])
    for i in range(r):
        out = out + TensorElement({pk.tau_key(i): AElement.xi_gen(r - i, 2 ** i)})
    return out


@lru_cache(maxsize=None)
def psi_xi(r: int) -> TensorElement:
    parts = {0: AElement.xi_gen(r)}
    for i in range(1, r + 1):
        parts[pk.xi_key(i)] = AElement.xi_gen(r - i, 2 ** i)
    return TensorElement(parts)


class _PsiRules:
    """Generator formulas for the coproduct; swappable for fault injection."""

    tau = staticmethod(psi_tau)
    xi = staticmethod(psi_xi)


_rules = _PsiRules()


def set_psi_rules(tau=None, xi=None) -> None:
    """Replace the generator coproduct formulas (used to test the verifier)."""
    _rules.tau = staticmethod(tau or psi_tau)
    _rules.xi = staticmethod(xi or psi_xi)
    _psi_gen_key.cache_clear()


@lru_cache(maxsize=65536)
def _psi_gen_key(g: int) -> TensorElement:
    out = TensorElement({0: _ONE})
    for i in pk.tau_indices(g):
        out = out * _rules.tau(i)
    for i, r in pk.xi_exponents(g).items():
        out = out * _rules.xi(i) ** r
    return out


def psi(a: AElement) -> TensorElement:
    """Coproduct; base scalars stay on the left factor."""
    acc: dict = {}
    for k in a.terms:
        s, g = _split_scalar(k)
        sc = AElement(frozenset([s]))
        for rg, left in _psi_gen_key(g).items():
            _acc_add(acc, rg, left * sc if s else left)
    return TensorElement(acc)


# basis enumeration

@dataclass(frozen=True)
class Caps:
    tau_exp: int = 8
    rho_exp: int = 8
    max_index: int = 8


def _gen_monomials(pmax: int, max_index: int):
    """All generator keys of topological degree <= pmax, with their degrees."""
    gens = []
    for i in range(max_index + 1):
        if 2 ** (i + 1) - 1 <= pmax and i <= pk.MAX_TAU:
            gens.append(("t", i, tau_degree(i)))
    for i in range(1, max_index + 1):
        if 2 * (2 ** i - 1) <= pmax and i <= pk.MAX_XI:
            gens.append(("x", i, xi_degree(i)))
    out = []

    def rec(idx, key, deg):
        if idx == len(gens):
            out.append((key, deg))
            return
        kind, i, d = gens[idx]
        if kind == "t":
            rec(idx + 1, key, deg)
            if deg.p + d.p <= pmax:
                rec(idx + 1, key | pk.tau_key(i), deg + d)
        else:
            r = 0
            while deg.p + r * d.p <= pmax and r <= pk.MAX_EXP:
                rec(idx + 1, key + (pk.xi_key(i, r) if r else 0), Bidegree(deg.p + r * d.p, deg.q + r * d.q))
                r += 1

    rec(0, 0, Bidegree(0, 0))
    return out


def monomials_up_to(pmax: int, max_index: int = 8) -> list:
    """Generator monomials with 0 <= topological degree <= pmax, sorted by degree."""
    mons = _gen_monomials(pmax, max_index)
    mons.sort(key=lambda kd: (kd[1].p, kd[1].q, kd[0]))
    return [k for k, _ in mons]


def basis_enumerate(d, caps: Caps = Caps()) -> list:
    """Basis monomials tau^a rho^b tau_E xi^R of bidegree d within caps.

    Returns sorted (scalar (a, b), GenMonomial) pairs.
    """
    d = Bidegree(*d)
    out = []
    for g, gd in _gen_monomials(d.p + caps.rho_exp, caps.max_index):
        b = gd.p - d.p
        a = gd.q - d.q - b
        if 0 <= a <= caps.tau_exp and 0 <= b <= caps.rho_exp:
            out.append(((a, b), GenMonomial.from_key(g)))
    out.sort(key=lambda t: (t[0][0] + t[0][1], t[0][1], _term_sort_key(t[1].key)))
    return out


def basis_keys(d, caps: Caps = Caps()) -> list:
    return [pk.scalar_key(a, b) + m.key for (a, b), m in basis_enumerate(d, caps)]
