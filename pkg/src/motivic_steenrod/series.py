"""Truncated Laurent series in t with coefficients in the dual Steenrod algebra.

A series carries two bounds.  ``lo`` is a valuation bound: every coefficient
below it is known to be zero.  ``hi`` is the precision: coefficients above it
are unknown, and asking for one raises ``TruncationError``.  Arithmetic
propagates both bounds so every stored coefficient is exact.

An optional marker ``s`` with s^2 = 0 is carried in the coefficient key:
coeffs maps (j, e) -> AElement for the term a t^j s^e, e in {0, 1}.
"""

from __future__ import annotations

from .algebra import AElement, chi, chi_tau, chi_xi
from .report import Report, timed

EXACT = 1 << 40  # precision marker for series known to all orders


class TruncationError(ValueError):
    pass


class NotInvertibleError(ValueError):
    pass


_ZERO = AElement.zero()
_ONE = AElement.one()


class LaurentSeries:
    __slots__ = ("coeffs", "lo", "hi")

    def __init__(self, coeffs: dict | None = None, hi: int = EXACT, lo: int | None = None):
        hi = min(int(hi), EXACT)
        clean = {}
        for (j, e), a in (coeffs or {}).items():
            if e not in (0, 1):
                raise ValueError("s-degree must be 0 or 1")
            if a and j <= hi:
                clean[(j, e)] = a
        self.coeffs = clean
        vals = [j for j, _ in clean]
        low = min(vals) if vals else hi + 1
        if lo is None:
            lo = low
        elif low < lo:
            raise ValueError(f"coefficient at t^{low} lies below the declared valuation {lo}")
        self.lo = lo
        self.hi = hi

    # constructors
    @classmethod
    def constant(cls, a: AElement, e: int = 0) -> "LaurentSeries":
        return cls({(0, e): a})

    @classmethod
    def monomial(cls, j: int, a: AElement = _ONE, e: int = 0) -> "LaurentSeries":
        return cls({(j, e): a})

    @classmethod
    def one(cls) -> "LaurentSeries":
        return cls({(0, 0): _ONE})

    @classmethod
    def zero(cls, hi: int = EXACT) -> "LaurentSeries":
        return cls({}, hi=hi)

    # inspection
    @property
    def window(self):
        return (self.lo, self.hi)

    @property
    def exact(self) -> bool:
        return self.hi >= EXACT

    def valuation(self) -> int:
        vals = [j for j, _ in self.coeffs]
        return min(vals) if vals else self.hi + 1

    def coeff(self, j: int, e: int = 0) -> AElement:
        if j > self.hi:
            raise TruncationError(f"coefficient t^{j} requested beyond precision t^{self.hi}")
        return self.coeffs.get((j, e), _ZERO)

    def has_s(self) -> bool:
        return any(e for _, e in self.coeffs)

    def s_part(self, e: int) -> "LaurentSeries":
        return LaurentSeries({(j, 0): a for (j, f), a in self.coeffs.items() if f == e}, self.hi,
                             min(self.lo, self.hi + 1))

    def lead(self):
        """(valuation, s^0 coefficient, s^1 coefficient) at the lowest order."""
        v = self.valuation()
        return v, self.coeffs.get((v, 0), _ZERO), self.coeffs.get((v, 1), _ZERO)

    def __eq__(self, other):
        return (isinstance(other, LaurentSeries) and self.coeffs == other.coeffs
                and self.hi == other.hi)

    def __hash__(self):
        return hash((frozenset(self.coeffs.items()), self.hi))

    def agrees(self, other: "LaurentSeries", lo: int, hi: int) -> list:
        """Exponents (j, e) in [lo, hi] where the two series differ."""
        bad = []
        for j in range(lo, hi + 1):
            for e in (0, 1):
                if self.coeff(j, e) != other.coeff(j, e):
                    bad.append((j, e))
        return bad

    # arithmetic
    def __add__(self, other: "LaurentSeries") -> "LaurentSeries":
        hi = min(self.hi, other.hi)
        out = dict(self.coeffs)
        for k, a in other.coeffs.items():
            cur = out.get(k)
            out[k] = a if cur is None else cur + a
        return LaurentSeries(out, hi, min(self.lo, other.lo, hi + 1))

    __sub__ = __add__

    def mul(self, other: "LaurentSeries", hi: int | None = None) -> "LaurentSeries":
        """Cauchy product, optionally computing only coefficients up to ``hi``."""
        va, vb = self.valuation(), other.valuation()
        top = min(self.hi + vb, other.hi + va, EXACT)
        if hi is not None:
            top = min(top, hi)
        acc: dict = {}
        for (j1, e1), a in self.coeffs.items():
            if j1 + vb > top:
                continue
            for (j2, e2), b in other.coeffs.items():
                j = j1 + j2
                if j > top or e1 & e2:
                    continue
                k = (j, e1 | e2)
                p = a * b
                cur = acc.get(k)
                acc[k] = p if cur is None else cur + p
        return LaurentSeries(acc, top, min(self.lo + other.lo, top + 1))

    def __mul__(self, other):
        if isinstance(other, AElement):
            return self.scale(other)
        return self.mul(other)

    __rmul__ = __mul__

    def scale(self, a: AElement) -> "LaurentSeries":
        return LaurentSeries({k: a * c for k, c in self.coeffs.items()}, self.hi, self.lo)

    def shift(self, k: int) -> "LaurentSeries":
        """Multiply by t^k."""
        hi = self.hi if self.exact else self.hi + k
        return LaurentSeries({(j + k, e): a for (j, e), a in self.coeffs.items()}, hi, self.lo + k)

    def times_s(self) -> "LaurentSeries":
        return LaurentSeries({(j, 1): a for (j, e), a in self.coeffs.items() if e == 0},
                             self.hi, self.lo)

    def truncate(self, hi: int) -> "LaurentSeries":
        return LaurentSeries(self.coeffs, min(hi, self.hi), min(self.lo, hi + 1))

    def map_coeffs(self, fn) -> "LaurentSeries":
        return LaurentSeries({k: fn(a) for k, a in self.coeffs.items()}, self.hi, self.lo)

    def frobenius(self) -> "LaurentSeries":
        """Square; in characteristic 2 this doubles exponents and kills s."""
        hi = EXACT if self.exact else 2 * self.hi + 1
        return LaurentSeries({(2 * j, 0): a * a for (j, e), a in self.coeffs.items() if e == 0},
                             hi, 2 * self.lo)

    def inverse(self, hi: int | None = None) -> "LaurentSeries":
        """Multiplicative inverse; the lowest s^0 coefficient must be 1."""
        v, c0, c1 = self.lead()
        if v > self.hi or c0 != _ONE:
            raise NotInvertibleError(f"leading coefficient {c0} at t^{v} is not 1")
        lead_inv = (_ONE, c1)
        if self.exact and all(j == v for j, _ in self.coeffs):
            top = EXACT
            n_max = 0
        else:
            top = self.hi - 2 * v if not self.exact else None
            if hi is not None:
                top = hi if top is None else min(top, hi)
            if top is None:
                raise TruncationError("inverting an exact polynomial needs an explicit precision")
            n_max = top + v
        f = {}
        for (j, e), a in self.coeffs.items():
            n = j - v
            if n <= n_max:
                pair = f.setdefault(n, [_ZERO, _ZERO])
                pair[e] = a
        g = [lead_inv]
        for m in range(1, n_max + 1):
            s0, s1 = _ZERO, _ZERO
            for k in range(1, m + 1):
                fk = f.get(k)
                if fk is None:
                    continue
                g0, g1 = g[m - k]
                if g0:
                    s0 = s0 + fk[0] * g0
                    s1 = s1 + fk[1] * g0
                if g1 and fk[0]:
                    s1 = s1 + fk[0] * g1
            g.append((s0, s1 + lead_inv[1] * s0 if s0 else s1))
        out = {}
        for m, (g0, g1) in enumerate(g):
            if g0:
                out[(m - v, 0)] = g0
            if g1:
                out[(m - v, 1)] = g1
        return LaurentSeries(out, top if top is not None else EXACT, -v)

    def __pow__(self, k: int) -> "LaurentSeries":
        return series_int_pow(self, k)

    def compose(self, g: "LaurentSeries", hi: int | None = None) -> "LaurentSeries":
        return series_compose(self, g, hi)

    # display / serialization
    def __str__(self):
        if not self.coeffs:
            return f"0 + O(t^{self.hi + 1})" if not self.exact else "0"
        parts = []
        for (j, e) in sorted(self.coeffs):
            a = self.coeffs[(j, e)]
            mon = "" if j == 0 else ("t" if j == 1 else f"t^{j}")
            if e:
                mon = (mon + "*s") if mon else "s"
            ac = str(a)
            if len(a) > 1:
                ac = f"({ac})"
            if mon and ac == "1":
                parts.append(mon)
            elif mon:
                parts.append(f"{ac}*{mon}")
            else:
                parts.append(ac)
        tail = "" if self.exact else f" + O(t^{self.hi + 1})"
        return " + ".join(parts) + tail

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "window": [self.lo, None if self.exact else self.hi],
            "terms": [{"t": j, "s": e, "coeff": self.coeffs[(j, e)].to_json()}
                      for (j, e) in sorted(self.coeffs)],
        }

    @classmethod
    def from_json(cls, data) -> "LaurentSeries":
        lo, hi = data["window"]
        coeffs = {(int(t["t"]), int(t["s"])): AElement.from_json(t["coeff"]) for t in data["terms"]}
        return cls(coeffs, EXACT if hi is None else hi, lo)


# module-level operations

def series_add(f: LaurentSeries, g: LaurentSeries) -> LaurentSeries:
    out = f + g
    if out.hi < out.lo and (f.coeffs or g.coeffs):
        raise TruncationError("sum has an empty exactness window")
    return out


def series_mul(f: LaurentSeries, g: LaurentSeries, hi: int | None = None) -> LaurentSeries:
    out = f.mul(g, hi)
    if out.hi < min(f.valuation(), f.hi + 1) + min(g.valuation(), g.hi + 1) and hi is None:
        raise TruncationError("product has an empty exactness window")
    return out


def series_int_pow(f: LaurentSeries, k: int, hi: int | None = None) -> LaurentSeries:
    """f^k for any integer k; negative k requires leading coefficient 1.

    With ``hi`` only coefficients up to t^hi are computed; by default the
    result keeps the relative precision of f.
    """
    if k == 0:
        return LaurentSeries.one()
    n = total = abs(k)
    if k > 0:
        base = f
    else:
        v = f.valuation()
        base = f.inverse(None if hi is None else hi + (total - 1) * v)
    v = base.valuation()
    if hi is None:
        # relative precision of the base carries over to the power
        hi = total * v + (base.hi - v) if not base.exact else None

    def bound(b: int):
        # a factor of exponent b meets further factors of valuation >= (total - b) v
        return None if hi is None else max(hi - (total - b) * v, total * v - 1)

    def cap(series: LaurentSeries, b: int) -> LaurentSeries:
        c = bound(b)
        return series.truncate(c) if c is not None and series.hi > c else series

    b = done = 1
    base = cap(base, b)
    result = None
    while True:
        if n & 1:
            if result is None:
                result, done = base, b
            else:
                done += b
                result = result.mul(base, bound(done))
        n >>= 1
        if not n:
            break
        base = base.frobenius()
        b *= 2
        base = cap(base, b)
    if hi is not None and result.hi > hi:
        result = result.truncate(hi)
    return result


def series_compose(f: LaurentSeries, g: LaurentSeries, hi: int | None = None) -> LaurentSeries:
    """f(g(t)) for s-free g of valuation >= 1.

    Negative powers of t in f need a leading coefficient 1 in g.
    """
    if g.has_s():
        raise ValueError("the inner series must not involve s")
    w, c0, _ = g.lead()
    if w < 1 or w > g.hi:
        raise ValueError(f"inner series must have valuation >= 1 (found {w})")
    needs_neg = any(j < 0 for j, _ in f.coeffs)
    if needs_neg and c0 != _ONE:
        raise NotInvertibleError("negative powers need a unit leading coefficient")
    top = EXACT if f.exact else (f.hi + 1) * w - 1
    if hi is not None:
        top = min(top, hi)
    if top >= EXACT and not g.exact:
        top = EXACT - 1
    powers: dict = {1: g, 0: LaurentSeries.one()}
    if needs_neg:
        g_inv = g.inverse(None if not g.exact else top)

    def power(j: int) -> LaurentSeries:
        p = powers.get(j)
        if p is not None:
            return p
        if j < 0:
            # negative valuations: intermediate truncation would lose terms
            p = series_int_pow(g_inv, -j)
        elif j % 2 == 0:
            p = power(j // 2).frobenius()
        else:
            p = power(j - 1).mul(g, top)
        if p.hi > top:
            p = p.truncate(top)
        powers[j] = p
        return p

    acc = LaurentSeries.zero(top)
    for (j, e), a in sorted(f.coeffs.items()):
        if j * w > top and j > 0:
            continue
        term = power(j).scale(a)
        if e:
            term = term.times_s()
        acc = acc + term
    return acc


def series_coeff(f: LaurentSeries, j: int, s_deg: int = 0) -> AElement:
    return f.coeff(j, s_deg)


# generating functions

def _powers_of_two(hi: int):
    i = 0
    while 2 ** i <= hi:
        yield i
        i += 1


def _window_hi(window) -> int:
    lo, hi = window
    if not lo <= 1 <= hi:
        raise ValueError("the window must contain t^1")
    return hi


def xi_series(window=(-40, 40)) -> LaurentSeries:
    hi = _window_hi(window)
    return LaurentSeries({(2 ** i, 0): AElement.xi_gen(i) for i in _powers_of_two(hi)}, hi, 1)


def tau_series(window=(-40, 40)) -> LaurentSeries:
    hi = _window_hi(window)
    return LaurentSeries({(2 ** i, 0): AElement.tau_gen(i) for i in _powers_of_two(hi)}, hi, 1)


def xi_bar_series(window=(-40, 40)) -> LaurentSeries:
    hi = _window_hi(window)
    return LaurentSeries({(2 ** i, 0): chi_xi(i) for i in _powers_of_two(hi)}, hi, 1)


def tau_bar_series(window=(-40, 40)) -> LaurentSeries:
    hi = _window_hi(window)
    return LaurentSeries({(2 ** i, 0): chi_tau(i) for i in _powers_of_two(hi)}, hi, 1)


def conjugate(f: LaurentSeries) -> LaurentSeries:
    """Apply the antipode coefficientwise."""
    return f.map_coeffs(chi)


# verifiers

def verify_comp_inv(t_max: int = 33, window=(-40, 40)) -> Report:
    """xi(xibar(t)) = t, tau(xibar(t)) = taubar(t), taubar(xi(t)) = tau(t) through t^t_max."""
    report = Report("comp-inv")
    with timed(report):
        hi = max(window[1], t_max)
        xi, tau = xi_series((window[0], hi)), tau_series((window[0], hi))
        xib, taub = xi_bar_series((window[0], hi)), tau_bar_series((window[0], hi))
        t = LaurentSeries.monomial(1)
        cases = [
            ("xi(xibar(t)) = t", series_compose(xi, xib, t_max), t),
            ("xibar(xi(t)) = t", series_compose(xib, xi, t_max), t),
            ("tau(xibar(t)) = taubar(t)", series_compose(tau, xib, t_max), taub),
            ("taubar(xi(t)) = tau(t)", series_compose(taub, xi, t_max), tau),
        ]
        for name, lhs, rhs in cases:
            if lhs.hi < t_max:
                report.check(False, identity=name, error=f"precision only reaches t^{lhs.hi}")
                continue
            for j, e in lhs.agrees(rhs, 1, t_max):
                report.check(False, identity=name, t=j, lhs=str(lhs.coeff(j, e)), rhs=str(rhs.coeff(j, e)))
            report.checks += t_max
    return report


def verify_inversion_trick(r_range=(-5, 5), s_range=(-16, 16), window=(-40, 40)) -> Report:
    """[xi^r tau]_{t^s} = [taubar xibar^{-s-1}]_{t^{-r-1}} and [xi^r]_{t^s} = [xibar^{-s-1}]_{t^{-r-1}}."""
    report = Report("inversion-trick")
    with timed(report):
        r0, r1 = r_range
        s0, s1 = s_range
        xi, tau = xi_series(window), tau_series(window)
        xib, taub = xi_bar_series(window), tau_bar_series(window)
        need_right = -r0 - 1
        xi_pows = {r: series_int_pow(xi, r, s1) for r in range(r0, r1 + 1)}
        xib_pows = {s: series_int_pow(xib, -s - 1, need_right) for s in range(s0, s1 + 1)}
        for r in range(r0, r1 + 1):
            left_plain = xi_pows[r]
            left_tau = left_plain.mul(tau, s1)
            for s in range(s0, s1 + 1):
                right_plain = xib_pows[s]
                right_tau = right_plain.mul(taub, need_right)
                try:
                    a, b = left_plain.coeff(s), right_plain.coeff(-r - 1)
                    report.check(a == b, identity="[xi^r]", r=r, s=s, lhs=str(a), rhs=str(b))
                    a, b = left_tau.coeff(s), right_tau.coeff(-r - 1)
                    report.check(a == b, identity="[xi^r tau]", r=r, s=s, lhs=str(a), rhs=str(b))
                except TruncationError as exc:
                    report.check(False, r=r, s=s, error=str(exc))
    return report
