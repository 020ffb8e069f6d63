"""Homotopy of the spectrum of operations: the free module on classes e_i.

|e_{2n}| = (2n, n) and |e_{2n+1}| = (2n+1, n+1).  The t-map sends the
v-inverted cohomology of B Sigma_2 to the suspension of this module, and the
left coaction is read off powers of xi(t) and tau(t).  ``verify_ops_compat``
checks that the left coaction agrees with the antipode-switched right coaction
of B Sigma_2 pushed through t.
"""

from __future__ import annotations

from functools import lru_cache

from .algebra import AElement, BaseScalar, Bidegree, chi
from .bsigma import BSigmaElement, psi_r_bsigma
from .report import Report, timed
from .series import TruncationError, series_int_pow, tau_series, xi_series

_ZERO = AElement.zero()
DEFAULT_WINDOW = (-40, 40)


def e_degree(i: int) -> Bidegree:
    n, odd = divmod(i, 2)
    return Bidegree(2 * n + 1, n + 1) if odd else Bidegree(2 * n, n)


class OpsElement:
    """Sparse M-combination of e_i, optionally suspended (degree shift (1, 0))."""

    __slots__ = ("parts", "suspended")

    def __init__(self, parts: dict | None = None, suspended: bool = False):
        self.parts = {i: c for i, c in (parts or {}).items() if c}
        self.suspended = suspended

    @classmethod
    def e(cls, i: int, c=None, suspended: bool = False) -> "OpsElement":
        return cls({i: c if c is not None else BaseScalar.one()}, suspended)

    def __add__(self, other: "OpsElement") -> "OpsElement":
        if self.parts and other.parts and self.suspended != other.suspended:
            raise ValueError("cannot add suspended and unsuspended classes")
        out = dict(self.parts)
        for i, c in other.parts.items():
            out[i] = out[i] + c if i in out else c
        return OpsElement(out, self.suspended or other.suspended)

    def scale(self, c: BaseScalar) -> "OpsElement":
        return OpsElement({i: c * x for i, x in self.parts.items()}, self.suspended)

    def __eq__(self, other):
        if not isinstance(other, OpsElement):
            return NotImplemented
        return self.parts == other.parts and (not self.parts or self.suspended == other.suspended)

    def __hash__(self):
        return hash((frozenset(self.parts.items()), self.suspended))

    def __bool__(self):
        return bool(self.parts)

    def bidegrees(self) -> set:
        shift = 1 if self.suspended else 0
        out = set()
        for i, c in self.parts.items():
            d = e_degree(i)
            for a, b in c:
                out.add(Bidegree(d.p + shift - b, d.q - a - b))
        return out

    def __str__(self):
        if not self.parts:
            return "0"
        pre = "S" if self.suspended else ""
        bits = []
        for i in sorted(self.parts, reverse=True):
            c = self.parts[i]
            cs = str(c)
            bits.append(f"{pre}e[{i}]" if cs == "1" else f"({cs})*{pre}e[{i}]")
        return " + ".join(bits)

    def to_json(self):
        return {"suspended": self.suspended,
                "terms": [{"e": i, "scalar": c.to_json()} for i, c in sorted(self.parts.items())]}

    @classmethod
    def from_json(cls, data) -> "OpsElement":
        return cls({t["e"]: BaseScalar.from_json(t["scalar"]) for t in data["terms"]}, data["suspended"])


class OpsTensor:
    """Element of A (x) pi Ops as {i: A-coefficient of e_i}."""

    __slots__ = ("parts", "suspended", "index_lo")

    def __init__(self, parts: dict | None = None, suspended: bool = False, index_lo: int | None = None):
        self.parts = {i: a for i, a in (parts or {}).items() if a}
        self.suspended = suspended
        self.index_lo = index_lo  # coefficients below this e-index are not computed

    def coeff(self, i: int) -> AElement:
        if self.index_lo is not None and i < self.index_lo:
            raise TruncationError(f"e[{i}] lies below the computed index window {self.index_lo}")
        return self.parts.get(i, _ZERO)

    def __add__(self, other: "OpsTensor") -> "OpsTensor":
        out = dict(self.parts)
        for i, a in other.parts.items():
            out[i] = out[i] + a if i in out else a
        return OpsTensor(out, self.suspended or other.suspended, _max_opt(self.index_lo, other.index_lo))

    def scale_left(self, a: AElement) -> "OpsTensor":
        return OpsTensor({i: a * x for i, x in self.parts.items()}, self.suspended, self.index_lo)

    def restrict(self, lo: int) -> "OpsTensor":
        return OpsTensor({i: a for i, a in self.parts.items() if i >= lo}, self.suspended,
                         _max_opt(self.index_lo, lo))

    def items(self):
        return self.parts.items()

    def __eq__(self, other):
        if not isinstance(other, OpsTensor):
            return NotImplemented
        return self.parts == other.parts

    def __str__(self):
        if not self.parts:
            return "0"
        pre = "S" if self.suspended else ""
        bits = [f"({self.parts[i]}) (x) {pre}e[{i}]" for i in sorted(self.parts, reverse=True)]
        tail = f" + O(e[<{self.index_lo}])" if self.index_lo is not None else ""
        return " + ".join(bits) + tail

    def to_json(self):
        return {"suspended": self.suspended, "index_lo": self.index_lo,
                "terms": [{"e": i, "coeff": a.to_json()} for i, a in sorted(self.parts.items())]}


def _max_opt(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return max(a, b)


# t-map

def t_basis(f: int, m: int) -> OpsElement:
    """t(v^m) = S e_{-2m-1};  t(u v^m) = S e_{-2m-2} + rho S e_{-2m-1}."""
    if f == 0:
        return OpsElement.e(-2 * m - 1, suspended=True)
    if f == 1:
        return OpsElement({-2 * m - 2: BaseScalar.one(), -2 * m - 1: BaseScalar([(0, 1)])}, True)
    raise ValueError("t is defined on the basis v^m, u v^m")


def t_map(x: BSigmaElement) -> OpsElement:
    out = OpsElement(suspended=True)
    for (f, m), c in x.items():
        out = out + t_basis(f, m).scale(c)
    return out


# left coaction

@lru_cache(maxsize=None)
def _xi_power_coeff(j: int, k: int) -> AElement:
    """[xi(t)^j]_{t^k}."""
    if j > k:
        return _ZERO
    if j == 0:
        return AElement.one() if k == 0 else _ZERO
    base = xi_series((-1, max(k - j + 2, 2)))
    return series_int_pow(base, j, k).coeff(k)


@lru_cache(maxsize=None)
def _tau_xi_power_coeff(j: int, k: int) -> AElement:
    """[tau(t) xi(t)^j]_{t^k}."""
    if j + 1 > k:
        return _ZERO
    hi = max(k - j + 2, 2)
    taus = tau_series((-1, hi))
    if j == 0:
        return taus.coeff(k)
    return series_int_pow(xi_series((-1, hi)), j, k - 1).mul(taus, k).coeff(k)


def psi_l_ops(k: int, parity: int, t_window=DEFAULT_WINDOW, suspended: bool = False) -> OpsTensor:
    """psi_L(e_{2k+parity}), with j running over [t_window[0], k]."""
    j_lo = t_window[0]
    if k > t_window[1]:
        raise TruncationError(f"t^{k} lies outside the window {t_window}")
    out = {}
    for j in range(j_lo, k + 1):
        a = _xi_power_coeff(j, k)
        if parity:
            if a:
                out[2 * j + 1] = a
            continue
        if a:
            out[2 * j] = a
        b = _tau_xi_power_coeff(j, k)
        if b:
            out[2 * j + 1] = b
    return OpsTensor(out, suspended, 2 * j_lo + 1 if parity else 2 * j_lo)


def psi_l(x: OpsElement, t_window=DEFAULT_WINDOW) -> OpsTensor:
    """Left coaction of an element; base scalars act through the left unit."""
    out = OpsTensor({}, x.suspended)
    for i, c in x.parts.items():
        k, parity = divmod(i, 2)
        out = out + psi_l_ops(k, parity, t_window, x.suspended).scale_left(AElement.scalar(c))
    return out


def switched_right_coaction(x: BSigmaElement, t_window=DEFAULT_WINDOW) -> OpsTensor:
    """sum chi(a_j) (x) t(m_j) over psi_R(x) = sum m_j (x) a_j.

    The e-indices produced by v^m are -2m-1 and -2m-2, so m runs up to the
    bound that covers e-indices >= 2 t_window[0].
    """
    e_lo = 2 * t_window[0]
    vmax = -t_window[0]
    v_lo = min([m for _, m in x.parts] + [0])
    rhs = psi_r_bsigma(x, (v_lo, vmax))
    out = OpsTensor({}, True)
    for (f, m), a in rhs.items():
        ca = chi(a)
        for i, c in t_basis(f, m).parts.items():
            # scalars from t sit between the factors; rho is central so it moves left unchanged
            out = out + OpsTensor({i: ca * AElement.scalar(c)}, True)
    return out.restrict(e_lo)


def verify_ops_compat(index_range=(-8, 8), window=DEFAULT_WINDOW) -> Report:
    """psi_L(t(x)) against the switched right coaction for x = v^i, u v^i."""
    report = Report("ops-compat")
    with timed(report):
        e_lo = 2 * window[0]
        for i in range(index_range[0], index_range[1] + 1):
            for f in (0, 1):
                x = BSigmaElement.monomial(f, i)
                left = psi_l(t_map(x), window).restrict(e_lo)
                right = switched_right_coaction(x, window)
                name = f"u v^{i}" if f else f"v^{i}"
                keys = set(left.parts) | set(right.parts)
                for j in sorted(keys):
                    a, b = left.parts.get(j, _ZERO), right.parts.get(j, _ZERO)
                    report.check(a == b, x=name, e=j, left=str(a), right=str(b))
        report.details["window"] = list(window)
    return report


def counit_check(k_range=(-8, 8), window=DEFAULT_WINDOW) -> Report:
    """(epsilon (x) id) psi_L(e_k) = e_k, and every term has total bidegree |e_k|."""
    from .algebra import counit
    report = Report("ops-counit")
    with timed(report):
        for i in range(k_range[0], k_range[1] + 1):
            k, parity = divmod(i, 2)
            t = psi_l_ops(k, parity, window)
            for j, a in t.items():
                c = counit(a)
                report.check(c == (BaseScalar.one() if j == i else BaseScalar()), e=i, term=j, counit=str(c))
                d = e_degree(j)
                for deg in a.bidegrees():
                    report.check(deg + d == e_degree(i), e=i, term=j, degree=str(deg))
    return report
