"""Truncated power series over p-adic scalars or (alpha, beta)-linear forms.

Only the first ``tail_order`` coefficients are stored.  The unknown ones are
covered by a lower bound on their valuation,

    v(c_m) >= tail_valuation + tail_slope * (m - tail_order) - 10 * tail_log_loss * floor(log_p m)

(all in tenths), valid for every ``m >= tail_order``.  The slope term absorbs
substitutions ``t -> pi**k t``; the logarithmic term absorbs the divisions by
``m`` introduced by formal integration.  A series with ``tail_valuation=None``
is an exact polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from math import inf
from typing import Optional, Sequence, Union

from .errors import NoConvergence, NonUnitLeadingTerm, RamifiedExponent, TailUnbounded
from .padic import DEFAULT_PRECISION, LinearForm, PadicNumber

DEFAULT_ORDER = 24

Coefficient = Union[PadicNumber, LinearForm]


def flog(m: int, p: int) -> int:
    """floor(log_p m) for m >= 1."""
    k = 0
    while m >= p:
        m //= p
        k += 1
    return k


def _zero(kind: str, p: int) -> Coefficient:
    return PadicNumber.zero(p) if kind == "scalar" else LinearForm.zero(p)


def _is_exact_zero(c: Coefficient) -> bool:
    return c.is_exact_zero


@dataclass(frozen=True)
class TruncatedSeries:
    p: int
    coefficients: tuple
    kind: str = "scalar"
    tail_valuation_tenths: Optional[int] = None
    tail_slope_tenths: int = 0
    tail_log_loss: int = 0

    def __post_init__(self):
        if self.kind not in ("scalar", "linear_form"):
            raise ValueError(f"unknown coefficient kind {self.kind!r}")
        want = PadicNumber if self.kind == "scalar" else LinearForm
        for c in self.coefficients:
            if not isinstance(c, want):
                raise TypeError(f"{self.kind} series got coefficient {c!r}")
            if c.p != self.p:
                raise ValueError("coefficient prime mismatch")

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_values(cls, p: int, values: Sequence, precision: int = DEFAULT_PRECISION,
                    tail_valuation_tenths: Optional[int] = None, **tail) -> "TruncatedSeries":
        """Scalar series from ints/Fractions (or ready PadicNumbers)."""
        coeffs = tuple(v if isinstance(v, PadicNumber) else PadicNumber.from_rational(p, v, precision)
                       for v in values)
        return cls(p, coeffs, "scalar", tail_valuation_tenths, **tail)

    @classmethod
    def constant(cls, c: PadicNumber) -> "TruncatedSeries":
        return cls(c.p, (c,))

    @classmethod
    def monomial(cls, c: Coefficient, m: int) -> "TruncatedSeries":
        kind = "scalar" if isinstance(c, PadicNumber) else "linear_form"
        return cls(c.p, (_zero(kind, c.p),) * m + (c,), kind)

    # -- inspection -------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.tail_valuation_tenths is None

    @property
    def tail_order(self) -> float:
        return inf if self.is_exact else len(self.coefficients)

    def coefficient(self, m: int) -> Coefficient:
        if m < len(self.coefficients):
            return self.coefficients[m]
        if self.is_exact:
            return _zero(self.kind, self.p)
        raise IndexError(f"coefficient {m} is beyond the truncation order {len(self.coefficients)}")

    def tail_bound(self, m: int) -> float:
        """Lower bound on v(c_m) for an index in the unknown tail."""
        if self.is_exact:
            return inf
        o = len(self.coefficients)
        return (self.tail_valuation_tenths + self.tail_slope_tenths * (m - o)
                - 10 * self.tail_log_loss * flog(max(m, 1), self.p))

    def lower_bound(self, m: int) -> float:
        if m < len(self.coefficients):
            return self.coefficients[m].lower_valuation
        return self.tail_bound(m)

    def order_of_vanishing(self) -> float:
        """Index of the first coefficient that is not an exact zero."""
        for i, c in enumerate(self.coefficients):
            if not _is_exact_zero(c):
                return i
        return len(self.coefficients) if not self.is_exact else inf

    def __len__(self):
        return len(self.coefficients)

    def __add__(self, other):
        return series_add(self, other)

    def __sub__(self, other):
        return series_add(self, series_scale(other, -1))

    def __neg__(self):
        return series_scale(self, -1)

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return series_mul(self, other)
        return series_scale(self, other)

    __rmul__ = __mul__

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coefficients):
            if not _is_exact_zero(c):
                terms.append(f"[{c}] t^{i}")
        if self.is_exact:
            tail = ""
        else:
            tail = f" + O(t^{len(self.coefficients)}; v >= {self.tail_valuation_tenths}"
            if self.tail_slope_tenths:
                tail += f" + {self.tail_slope_tenths}*(m-{len(self.coefficients)})"
            if self.tail_log_loss:
                tail += f" - {10 * self.tail_log_loss}*log_p(m)"
            tail += ")"
        return (" + ".join(terms) or "0") + tail


# -- tail helpers ---------------------------------------------------------------

def _floor_from(s: TruncatedSeries, start: int, slope: int, loss: int) -> float:
    """Largest V with v(c_m) >= V + slope*(m - start) - 10*loss*flog(m) for m >= start.

    Assumes ``slope <= s.tail_slope_tenths`` and ``loss >= s.tail_log_loss``.
    """
    best = inf
    for i in range(start, len(s.coefficients)):
        lb = s.coefficients[i].lower_valuation
        if lb < inf:
            best = min(best, lb - slope * (i - start) + 10 * loss * flog(max(i, 1), s.p))
    if not s.is_exact:
        o = len(s.coefficients)
        best = min(best, s.tail_valuation_tenths - slope * (o - start))
    return best


def _global_floor(s: TruncatedSeries, slope: int) -> float:
    """Largest G with v(c_m) >= G + slope*m for every m >= 0 (requires no log loss)."""
    return _floor_from(s, 0, slope, 0)


def _finish(p, coeffs, kind, V, slope, loss) -> TruncatedSeries:
    if V == inf:
        # all remaining coefficients are exact zeros
        return TruncatedSeries(p, tuple(coeffs), kind)
    return TruncatedSeries(p, tuple(coeffs), kind, int(V), slope, loss)


def _slope_of(*series: TruncatedSeries) -> int:
    tailed = [s.tail_slope_tenths for s in series if not s.is_exact]
    return min(tailed) if tailed else 0


# -- ring operations --------------------------------------------------------------

def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    if a.p != b.p:
        raise ValueError("prime mismatch")
    if a.kind != b.kind:
        raise TypeError("cannot add scalar and linear-form series")
    if a.is_exact and b.is_exact:
        n = max(len(a), len(b))
        return TruncatedSeries(a.p, tuple(a.coefficient(i) + b.coefficient(i) for i in range(n)), a.kind)
    o = int(min(a.tail_order, b.tail_order))
    coeffs = [a.coefficient(i) + b.coefficient(i) for i in range(o)]
    slope = _slope_of(a, b)
    loss = max(a.tail_log_loss, b.tail_log_loss)
    V = min(_floor_from(a, o, slope, loss), _floor_from(b, o, slope, loss))
    return _finish(a.p, coeffs, a.kind, V, slope, loss)


def _times(x: Coefficient, y: Coefficient) -> Coefficient:
    if isinstance(x, LinearForm):
        return x.scale(y)
    if isinstance(y, LinearForm):
        return y.scale(x)
    return x * y


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    if a.p != b.p:
        raise ValueError("prime mismatch")
    if a.kind == "linear_form" and b.kind == "linear_form":
        raise TypeError("product of two linear-form series is not linear")
    if a.tail_log_loss or b.tail_log_loss:
        raise ValueError("multiplying integrated series is not supported")
    kind = "linear_form" if "linear_form" in (a.kind, b.kind) else "scalar"
    p = a.p
    oa, ob = a.order_of_vanishing(), b.order_of_vanishing()
    if oa == inf or ob == inf:
        return TruncatedSeries(p, (), kind)
    if a.is_exact and b.is_exact:
        n = len(a) + len(b) - 1
    else:
        n = int(min(a.tail_order + ob, b.tail_order + oa))

    def known(s, i):
        if i < len(s.coefficients):
            c = s.coefficients[i]
            return None if _is_exact_zero(c) else c
        return None  # either an exact zero or excluded by the choice of n

    coeffs = []
    for m in range(n):
        acc = _zero(kind, p)
        for i in range(m + 1):
            x = known(a, i)
            if x is None:
                continue
            y = known(b, m - i)
            if y is None:
                continue
            acc = acc + _times(x, y)
        coeffs.append(acc)
    if a.is_exact and b.is_exact:
        return TruncatedSeries(p, tuple(coeffs), kind)
    slope = _slope_of(a, b)
    V = _global_floor(a, slope) + _global_floor(b, slope) + slope * n
    return _finish(p, coeffs, kind, V, slope, 0)


def _as_scalar(p: int, c) -> Coefficient:
    if isinstance(c, (PadicNumber, LinearForm)):
        return c
    return PadicNumber.from_rational(p, c)


def series_scale(s: TruncatedSeries, c) -> TruncatedSeries:
    """Multiply every coefficient by a scalar (or by a LinearForm, for scalar series)."""
    c = _as_scalar(s.p, c)
    if isinstance(c, LinearForm) and s.kind == "linear_form":
        raise TypeError("linear form times linear-form series")
    kind = "linear_form" if isinstance(c, LinearForm) or s.kind == "linear_form" else "scalar"
    coeffs = tuple(_times(x, c) for x in s.coefficients)
    if s.is_exact:
        return TruncatedSeries(s.p, coeffs, kind)
    if c.is_exact_zero:
        return TruncatedSeries(s.p, tuple(_zero(kind, s.p) for _ in coeffs), kind)
    return TruncatedSeries(s.p, coeffs, kind, int(s.tail_valuation_tenths + c.lower_valuation),
                           s.tail_slope_tenths, s.tail_log_loss)


def series_truncate(s: TruncatedSeries, order: int) -> TruncatedSeries:
    if order >= len(s.coefficients):
        return s
    slope = s.tail_slope_tenths
    loss = s.tail_log_loss
    V = _floor_from(s, order, slope, loss)
    return _finish(s.p, s.coefficients[:order], s.kind, V, slope, loss)


def series_shift(s: TruncatedSeries, n: int) -> TruncatedSeries:
    """Multiply by t**n (n may be negative if the low coefficients are exact zeros)."""
    if n >= 0:
        coeffs = (_zero(s.kind, s.p),) * n + s.coefficients
        if s.is_exact:
            return TruncatedSeries(s.p, coeffs, s.kind)
        return replace(s, coefficients=coeffs)
    k = -n
    if any(not _is_exact_zero(c) for c in s.coefficients[:k]) or len(s) < k:
        raise ZeroDivisionError(f"series is not divisible by t^{k}")
    coeffs = s.coefficients[k:]
    if s.is_exact:
        return TruncatedSeries(s.p, coeffs, s.kind)
    # flog(m + k) <= flog(m) + 1 once m >= k
    V = s.tail_valuation_tenths - 10 * s.tail_log_loss
    return TruncatedSeries(s.p, coeffs, s.kind, V, s.tail_slope_tenths, s.tail_log_loss)


def series_derivative(s: TruncatedSeries) -> TruncatedSeries:
    coeffs = tuple(_times(s.coefficients[m], PadicNumber.from_rational(s.p, m))
                   for m in range(1, len(s.coefficients)))
    if s.is_exact:
        return TruncatedSeries(s.p, coeffs, s.kind)
    V = s.tail_valuation_tenths - 10 * s.tail_log_loss
    return TruncatedSeries(s.p, coeffs, s.kind, V, s.tail_slope_tenths, s.tail_log_loss)


def series_integrate(s: TruncatedSeries) -> TruncatedSeries:
    """Termwise antiderivative with zero constant term.

    Dividing by m+1 costs 10*v_p(m+1) tenths of absolute precision on each known
    coefficient; the unknown tail gains one unit of logarithmic loss.
    """
    p = s.p
    coeffs = [_zero(s.kind, p)]
    for m, c in enumerate(s.coefficients):
        coeffs.append(_times(c, PadicNumber.from_rational(p, Fraction(1, m + 1))))
    if s.is_exact:
        return TruncatedSeries(p, tuple(coeffs), s.kind)
    return TruncatedSeries(p, tuple(coeffs), s.kind, s.tail_valuation_tenths,
                           s.tail_slope_tenths, s.tail_log_loss + 1)


def series_substitute(s: TruncatedSeries, tenths: int) -> TruncatedSeries:
    """The series in t obtained from T = pi**tenths * t."""
    coeffs = tuple(c.shift_tenths(tenths * m) for m, c in enumerate(s.coefficients))
    if s.is_exact:
        return TruncatedSeries(s.p, coeffs, s.kind)
    o = len(coeffs)
    return TruncatedSeries(s.p, coeffs, s.kind, s.tail_valuation_tenths + tenths * o,
                           s.tail_slope_tenths + tenths, s.tail_log_loss)


def series_shift_valuation(s: TruncatedSeries, tenths: int) -> TruncatedSeries:
    """Multiply every coefficient by pi**tenths."""
    coeffs = tuple(c.shift_tenths(tenths) for c in s.coefficients)
    if s.is_exact:
        return TruncatedSeries(s.p, coeffs, s.kind)
    return replace(s, coefficients=coeffs, tail_valuation_tenths=s.tail_valuation_tenths + tenths)


def evaluate_linear_form(s: TruncatedSeries, alpha, beta) -> TruncatedSeries:
    """Scalar series obtained by fixing (alpha, beta)."""
    if s.kind != "linear_form":
        raise TypeError("expected a linear-form series")
    alpha, beta = _as_scalar(s.p, alpha), _as_scalar(s.p, beta)
    coeffs = tuple(c.evaluate(alpha, beta) for c in s.coefficients)
    if s.is_exact:
        return TruncatedSeries(s.p, coeffs)
    shift = min(alpha.lower_valuation, beta.lower_valuation)
    if shift == inf:
        return TruncatedSeries(s.p, tuple(PadicNumber.zero(s.p) for _ in coeffs))
    return TruncatedSeries(s.p, coeffs, "scalar", int(s.tail_valuation_tenths + shift),
                           s.tail_slope_tenths, s.tail_log_loss)


def linear_form_component(s: TruncatedSeries, which: str) -> TruncatedSeries:
    """The scalar series multiplying alpha (``which='alpha'``) or beta."""
    one, zero = 1, 0
    return evaluate_linear_form(s, one, zero) if which == "alpha" else evaluate_linear_form(s, zero, one)


# -- binomial series ------------------------------------------------------------

def binomial(e: Fraction, j: int) -> Fraction:
    out = Fraction(1)
    for i in range(j):
        out = out * (e - i) / (i + 1)
    return out


def series_binomial_root(s: TruncatedSeries, order: int, e) -> TruncatedSeries:
    """``s**e`` for ``s = 1 + O(t)`` via the binomial series, to ``order`` terms.

    ``e`` is a rational whose denominator must be prime to p (so that every
    binomial coefficient lies in Z_p).
    """
    e = Fraction(e)
    p = s.p
    if s.kind != "scalar":
        raise TypeError("binomial root of a linear-form series")
    if e.denominator % p == 0:
        raise RamifiedExponent(f"exponent {e} has denominator divisible by {p}")
    c0 = s.coefficient(0)
    if not c0.agrees_with(1) or c0.is_exact_zero:
        raise NonUnitLeadingTerm("series must start with 1")
    one = TruncatedSeries.constant(PadicNumber.from_rational(p, 1))
    u = series_add(s, series_scale(one, -1))
    if not u.is_exact or len(u) > 0:
        u = TruncatedSeries(p, (PadicNumber.zero(p),) + u.coefficients[1:], "scalar",
                            u.tail_valuation_tenths, u.tail_slope_tenths, u.tail_log_loss)
    if u.tail_log_loss:
        raise ValueError("binomial root of an integrated series is not supported")
    n = int(min(order, u.tail_order))
    ord_u = u.order_of_vanishing()
    # known coefficients
    result = [PadicNumber.zero(p)] * n
    result[0] = PadicNumber.from_rational(p, 1)
    power = [PadicNumber.from_rational(p, 1)] + [PadicNumber.zero(p)] * (n - 1)
    j = 0
    while True:
        j += 1
        if ord_u == inf or j * ord_u >= n:
            break
        nxt = [PadicNumber.zero(p)] * n
        for i, x in enumerate(power):
            if x.is_exact_zero:
                continue
            for k in range(1, n - i):
                y = u.coefficients[k] if k < len(u.coefficients) else None
                if y is None or y.is_exact_zero:
                    continue
                nxt[i + k] = nxt[i + k] + x * y
        power = nxt
        b = PadicNumber.from_rational(p, binomial(e, j))
        for m in range(n):
            if not power[m].is_exact_zero:
                result[m] = result[m] + b * power[m]
    if u.is_exact and ord_u == inf:
        return TruncatedSeries(p, (result[0],))
    # tail: the coefficient of t^m in u^j is >= j*G + S*m; binomials lie in Z_p
    S = _slope_of(u) if not u.is_exact else 0
    G = _global_floor(u, S)
    if G >= 0:
        slope = S
    else:
        slope = S + int(G // ord_u)  # j <= m / ord_u
    V = slope * n
    return TruncatedSeries(p, tuple(result), "scalar", int(V), slope, 0)


def series_inverse(s: TruncatedSeries, order: int) -> TruncatedSeries:
    c0 = s.coefficient(0)
    if c0.is_zero():
        raise NonUnitLeadingTerm("constant term is not invertible")
    inv0 = c0.inverse()
    return series_scale(series_binomial_root(series_scale(s, inv0), order, -1), inv0)


def series_evaluate(s: TruncatedSeries, t: PadicNumber) -> PadicNumber:
    """Value at a point of positive valuation, with precision capped by the tail bound."""
    if s.kind != "scalar":
        raise TypeError("evaluate a linear-form series after fixing (alpha, beta)")
    acc = PadicNumber.zero(s.p)
    tm = PadicNumber.from_rational(s.p, 1)
    for c in s.coefficients:
        acc = acc + c * tm
        tm = tm * t
    if s.is_exact:
        return acc
    d = t.lower_valuation
    bound = _tail_minimum(s, d)
    return acc + PadicNumber.big_oh(s.p, int(bound))


def _tail_minimum(s: TruncatedSeries, d: float) -> float:
    """min over m >= tail_order of (tail bound at m) + m*d."""
    if s.is_exact:
        return inf
    o = len(s.coefficients)
    rate = s.tail_slope_tenths + d
    if d == inf:
        return inf
    if rate < 0 or (rate == 0 and s.tail_log_loss):
        raise TailUnbounded("tail lower bound is unbounded below on this disc")
    best = s.tail_bound(o) + o * d
    if s.tail_log_loss == 0:
        return best
    # between powers of p the bound increases, so only m = o and m = p**j matter
    pj = s.p ** (flog(o, s.p) + 1)
    while True:
        best = min(best, s.tail_bound(pj) + pj * d)
        if pj * (s.p - 1) * rate >= 10 * s.tail_log_loss:
            return best
        pj *= s.p


# -- Laurent branch at infinity ---------------------------------------------------

@dataclass(frozen=True)
class LaurentSeries:
    """``T**leading_index * series``."""

    leading_index: int
    series: TruncatedSeries

    def coefficient(self, k: int) -> Coefficient:
        return self.series.coefficient(k - self.leading_index)


def solve_inverse_branch(relation: str, a: PadicNumber, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """Solve X**-1 = T**2 (1 + a X**-5) for X = T**-2 * W(T) by fixed-point iteration.

    Writing X**-1 = T**2 V gives V = 1 + a T**10 V**5, and W = 1/V.  Each pass
    fixes ten more coefficients, so the iteration budget ``order`` is ample.
    """
    if relation != "infinity":
        raise ValueError(f"unknown implicit relation {relation!r}")
    p = a.p
    one = TruncatedSeries.constant(PadicNumber.from_rational(p, 1))
    if a.is_exact_zero:
        return LaurentSeries(-2, one)
    if a.lower_valuation < 0:
        raise ValueError("a must be p-integral")
    aT10 = TruncatedSeries.monomial(a, 10)
    v = one
    for _ in range(max(order, 1)):
        v5 = v * v * v * v * v
        nxt = series_truncate(series_add(one, series_mul(aT10, v5)), order)
        nxt = TruncatedSeries(p, nxt.coefficients + (PadicNumber.zero(p),) * (order - len(nxt)))
        if len(v) == order and all(x.agrees_with(y) for x, y in zip(v.coefficients, nxt.coefficients)):
            break
        v = nxt
    else:
        raise NoConvergence("fixed-point iteration did not stabilise")
    # The fixed point has coefficients in Z_p[a] (induction on the relation), so the
    # unknown tail is integral.
    v = TruncatedSeries(p, v.coefficients, "scalar", 0, 0, 0)
    return LaurentSeries(-2, series_inverse(v, order))
