"""Local expansions of the Chabauty logarithm on the residue classes of C_A.

Write ``A = p**nu * a`` with ``a`` a p-adic unit and ``pi = p**(1/10)``.  Over
Q_p(pi) the substitution ``x = pi**(2 nu) X, y = pi**(5 nu) Y`` turns C_A into
``C_a : Y**2 = X**5 + a`` and the differential ``(alpha + beta x) dx / 2y`` into
``(pi**-nu alpha + pi**nu beta X) dX / 2Y``.  A point of C_A(Q_p) reduces to one
of three kinds of points of C_a(F_p):

* ``INFINITY``     -- uniformizer ``T = X**2 / Y = pi**nu t``
* ``WEIERSTRASS``  -- ``(-b, 0)`` when ``nu = 5`` and ``a = b**5``; ``T = Y = pi**5 t``
* ``SQUARE_ROOT``  -- ``(0, b)`` when ``nu`` is even and ``a = b**2``; ``T = X = pi**(2 rho) t``

For each class the logarithm is returned as ``lambda = scale * pi**prefactor *
N(t)`` where ``N`` is a series in the integral parameter ``t`` over Q_p with
linear-form coefficients in (alpha, beta).  Two independent routes produce N:

``method="oracle"``
    Solve the curve equation for the local coordinates with the series module,
    form the differential and integrate.
``method="closed_form"``
    Evaluate the general-term formulas (binomial and Fuss-Catalan numbers) that
    the leading terms of the classical displays come from.

Weierstrass-class normalization: the 1/sqrt(p) carried by the differential is
cancelled exactly by ``T = sqrt(p) t``, so ``prefactor_tenths`` is 0 and the
sqrt(p) is recorded as ``uniformizer_tenths = 5``.  Then
``N = (alpha - b beta p) t + (4 alpha - 3 b beta p) p / (15 a) t**3 + ...`` and
``lambda = b / (5a) * N``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace
from fractions import Fraction
from math import comb
from typing import Optional

from .errors import ClassNotApplicable, NotASquare, UnsupportedPrime
from .padic import DEFAULT_PRECISION, LinearForm, PadicNumber, hensel_nth_root, hensel_sqrt
from .series import (
    DEFAULT_ORDER,
    TruncatedSeries,
    binomial,
    series_add,
    series_binomial_root,
    series_derivative,
    series_integrate,
    series_inverse,
    series_mul,
    series_scale,
    series_shift,
    series_shift_valuation,
    series_substitute,
    solve_inverse_branch,
)


class ClassKind(enum.Enum):
    INFINITY = "infinity"
    WEIERSTRASS = "weierstrass"
    SQUARE_ROOT = "square"


@dataclass(frozen=True)
class ResidueClassId:
    kind: ClassKind
    b: Optional[PadicNumber] = None


@dataclass(frozen=True)
class ExpansionResult:
    """``lambda_omega = scale * pi**prefactor_tenths * normalized_series(t)``."""

    class_id: ResidueClassId
    prefactor_tenths: int
    scale: PadicNumber
    uniformizer_tenths: int
    normalized_series: TruncatedSeries
    parameters: dict = field(default_factory=dict)
    method: str = "oracle"
    alpha_prime: bool = False

    def coefficient(self, m: int) -> LinearForm:
        return self.normalized_series.coefficient(m)


def _unit(p: int, a, precision: int) -> PadicNumber:
    if not isinstance(a, PadicNumber):
        a = PadicNumber.from_rational(p, a, precision)
    if a.unit == 0 or a.valuation_tenths != 0:
        raise ValueError("expected a p-adic unit")
    return a


def mu_rho(nu: int) -> tuple[int, int]:
    """``mu = min{m : 5m > nu}`` and ``rho = 5 mu - nu`` for the (0, b) class.

    Points of that class have ``v(x) >= mu`` exactly when ``v(x**5) > v(A) = nu``.
    """
    mu = nu // 5 + 1
    return mu, 5 * mu - nu


def _lf(p: int, alpha_tenths: Optional[int], beta_tenths: Optional[int], precision: int) -> LinearForm:
    def part(k):
        return PadicNumber.zero(p) if k is None else PadicNumber.pi_power(p, k, precision)
    return LinearForm(part(alpha_tenths), part(beta_tenths))


def _scalar(p, value, precision):
    return PadicNumber.from_rational(p, value, precision)


def _closed_series(p: int, terms: dict[int, LinearForm], order: int, tail: tuple[int, int, int]) -> TruncatedSeries:
    coeffs = tuple(terms.get(m, LinearForm.zero(p)) for m in range(order))
    V, slope, loss = tail
    return TruncatedSeries(p, coeffs, "linear_form", V, slope, loss)


def _alpha_prime(res: ExpansionResult) -> ExpansionResult:
    """Substitute alpha = p * alpha' and divide out the common power of p."""
    s = res.normalized_series
    p = s.p
    coeffs = [LinearForm(c.coeff_alpha.shift_tenths(10), c.coeff_beta) for c in s.coefficients]
    certified = [x.valuation_tenths for c in coeffs for x in (c.coeff_alpha, c.coeff_beta) if x.unit != 0]
    content = min(certified) // 10 if certified else 0
    coeffs = tuple(c.shift_tenths(-10 * content) for c in coeffs)
    # the alpha-part of the tail also gained a factor p; the old bound remains valid
    tail_v = None if s.is_exact else s.tail_valuation_tenths - 10 * content
    new = TruncatedSeries(p, coeffs, "linear_form", tail_v, s.tail_slope_tenths, s.tail_log_loss)
    params = dict(res.parameters, alpha_content=content)
    return replace(res, normalized_series=new, prefactor_tenths=res.prefactor_tenths + 10 * content,
                   parameters=params, alpha_prime=True)


def _finish(res: ExpansionResult, alpha_prime: bool) -> ExpansionResult:
    return _alpha_prime(res) if alpha_prime else res


def _check_method(method: str) -> None:
    if method not in ("oracle", "closed_form"):
        raise ValueError(f"unknown method {method!r}")


# -- local coordinates -----------------------------------------------------------------

def weierstrass_x_series(p: int, b, order: int = DEFAULT_ORDER,
                         precision: int = DEFAULT_PRECISION) -> TruncatedSeries:
    """``X = -b (1 - T**2 / a)**(1/5)`` on C_a near (-b, 0), with ``a = b**5`` and T = Y."""
    b = _unit(p, b, precision)
    a = b**5
    one_minus = TruncatedSeries(p, (_scalar(p, 1, precision), PadicNumber.zero(p), -(a.inverse())))
    return series_scale(series_binomial_root(one_minus, order, Fraction(1, 5)), -b)


def inverse_y_series(p: int, b, order: int = DEFAULT_ORDER,
                     precision: int = DEFAULT_PRECISION) -> TruncatedSeries:
    """``1/Y = b**-1 (1 + T**5 / a)**(-1/2)`` on C_a near (0, b), with ``a = b**2`` and T = X."""
    b = _unit(p, b, precision)
    a = b * b
    one_plus = TruncatedSeries(p, (_scalar(p, 1, precision),) + (PadicNumber.zero(p),) * 4 + (a.inverse(),))
    return series_scale(series_binomial_root(one_plus, order, Fraction(-1, 2)), b.inverse())


# -- class of infinity -----------------------------------------------------------

def expand_at_infinity(p: int, nu: int, a, order: int = DEFAULT_ORDER, *, method: str = "oracle",
                       alpha_prime: bool = False, precision: int = DEFAULT_PRECISION) -> ExpansionResult:
    """Logarithm on the residue class of infinity.

    ``N(t) = beta t + alpha/3 t**3 + 5 a beta / 11 p**nu t**11 + 6 a alpha / 13 p**nu t**13 + ...``
    and ``lambda = -pi**(2 nu) N``.
    """
    _check_method(method)
    if not 0 <= nu <= 9:
        raise ValueError("nu must lie in 0..9")
    if p in (2, 5) and nu % p == 0:
        raise UnsupportedPrime(f"class of infinity at p = {p} needs p not dividing nu")
    a = _unit(p, a, precision)
    if method == "oracle":
        W = solve_inverse_branch("infinity", a, order).series          # X = T^-2 W
        TW = series_shift(series_derivative(W), 1)
        num = series_add(TW, series_scale(W, -2))
        den = series_scale(series_mul(W, W), 2)
        D = series_mul(num, series_inverse(den, order))               # dX/2Y = T^2 D dT
        omega = series_add(series_scale(series_shift(D, 2), _lf(p, -nu, None, precision)),
                           series_scale(series_mul(W, D), _lf(p, None, nu, precision)))
        lam = series_integrate(omega)
        N = series_shift_valuation(series_scale(series_substitute(lam, nu), -1), -2 * nu)
    else:
        terms = {}
        pnu = Fraction(p) ** nu
        for k in range((order + 9) // 10):
            ak = a**k
            ck = comb(5 * k, k)
            if 10 * k + 1 < order:
                c = _scalar(p, ck * pnu**k / (10 * k + 1), precision) * ak
                terms[10 * k + 1] = LinearForm(PadicNumber.zero(p), c)
            if 10 * k + 3 < order:
                fc = Fraction(ck, 4 * k + 1)  # Fuss-Catalan number
                c = _scalar(p, (5 * k + 1) * fc * pnu**k / (10 * k + 3), precision) * ak
                terms[10 * k + 3] = LinearForm(c, PadicNumber.zero(p))
        N = _closed_series(p, terms, order, (nu * (order - 3), nu, 1))
    res = ExpansionResult(ResidueClassId(ClassKind.INFINITY), 2 * nu, _scalar(p, -1, precision), nu, N,
                          {"p": p, "nu": nu, "a": a}, method)
    return _finish(res, alpha_prime)


# -- Weierstrass class (-b, 0) --------------------------------------------------------

def expand_at_weierstrass(p: int, b, order: int = DEFAULT_ORDER, *, method: str = "oracle",
                          alpha_prime: bool = False, precision: int = DEFAULT_PRECISION) -> ExpansionResult:
    """Logarithm on the class of (-b, 0) when ``nu = 5`` and ``a = b**5``."""
    _check_method(method)
    if p == 5:
        raise UnsupportedPrime("the (-b, 0) class is not treated at p = 5")
    b = _unit(p, b, precision)
    a = b**5
    five_a_over_b = a * 5 / b
    if method == "oracle":
        X = weierstrass_x_series(p, b, order, precision)
        dX_2Y = series_scale(series_shift(series_derivative(X), -1), Fraction(1, 2))   # Y = T
        omega = series_add(series_scale(dX_2Y, _lf(p, -5, None, precision)),
                           series_scale(series_mul(X, dX_2Y), _lf(p, None, 5, precision)))
        lam = series_integrate(omega)
        N = series_scale(series_substitute(lam, 5), five_a_over_b)
    else:
        terms = {}
        for k in range((order + 1) // 2):
            m = 2 * k + 1
            if m >= order:
                break
            w = (-(a.inverse())) ** k * _scalar(p, Fraction(p) ** k / m, precision)
            ca = _scalar(p, binomial(Fraction(-4, 5), k), precision) * w
            cb = _scalar(p, -p * binomial(Fraction(-3, 5), k), precision) * b * w
            terms[m] = LinearForm(ca, cb)
        N = _closed_series(p, terms, order, (5 * (order - 1), 5, 1))
    res = ExpansionResult(ResidueClassId(ClassKind.WEIERSTRASS, b), 0, five_a_over_b.inverse(), 5, N,
                          {"p": p, "nu": 5, "a": a, "b": b}, method)
    return _finish(res, alpha_prime)


# -- square-root class (0, b) -------------------------------------------------------------

def expand_at_square_class(p: int, nu: int, b, order: int = DEFAULT_ORDER, *, method: str = "oracle",
                           alpha_prime: bool = False, precision: int = DEFAULT_PRECISION) -> ExpansionResult:
    """Logarithm on the class of (0, b) when nu is even and ``a = b**2``.

    ``N(t) = alpha t + beta/2 p**mu t**2 - alpha/(12a) p**rho t**6
    - beta/(14a) p**(rho+mu) t**7 + ...`` and ``lambda = pi**(2(rho-n)) N / (2b)``.
    """
    _check_method(method)
    if p == 2:
        raise UnsupportedPrime("the (0, b) class needs p odd")
    if nu % 2 or not 2 <= nu <= 8:
        raise ValueError("nu must be even, between 2 and 8")
    n = nu // 2
    mu, rho = mu_rho(nu)
    b = _unit(p, b, precision)
    a = b * b
    if method == "oracle":
        half_inv_y = series_scale(inverse_y_series(p, b, order, precision), Fraction(1, 2))
        omega = series_add(series_scale(half_inv_y, _lf(p, -nu, None, precision)),
                           series_scale(series_shift(half_inv_y, 1), _lf(p, None, nu, precision)))
        lam = series_integrate(omega)
        N = series_shift_valuation(series_scale(series_substitute(lam, 2 * rho), b * 2), -2 * (rho - n))
    else:
        terms = {}
        for k in range(order // 5 + 1):
            w = _scalar(p, binomial(Fraction(-1, 2), k), precision) * a ** (-k)
            if 5 * k + 1 < order:
                c = w * _scalar(p, Fraction(p) ** (rho * k) / (5 * k + 1), precision)
                terms[5 * k + 1] = LinearForm(c, PadicNumber.zero(p))
            if 5 * k + 2 < order:
                c = w * _scalar(p, Fraction(p) ** (mu + rho * k) / (5 * k + 2), precision)
                terms[5 * k + 2] = LinearForm(PadicNumber.zero(p), c)
        N = _closed_series(p, terms, order, (2 * rho * (order - 2), 2 * rho, 1))
    res = ExpansionResult(ResidueClassId(ClassKind.SQUARE_ROOT, b), 2 * (rho - n), (b * 2).inverse(), 2 * rho, N,
                          {"p": p, "nu": nu, "a": a, "b": b, "n": n, "mu": mu, "rho": rho}, method)
    return _finish(res, alpha_prime)


# -- the (0, a) class for 3 not dividing A ------------------------------------------------

def expand_v3_zero_class(A, order: int = DEFAULT_ORDER, *, a=None, method: str = "oracle",
                         precision: int = DEFAULT_PRECISION) -> ExpansionResult:
    """Logarithm at p = 3 on the class of (0, a), A = a**2 a unit, for ``omega = (3 alpha + beta x) dx / 2y``.

    ``N(t) = 3 alpha t + beta/2 t**2 - alpha/(4A) t**6 - beta/(14A) t**7 + ...``
    with ``t = x`` and ``lambda = N / (2a)``; rational points of the class have
    ``t`` in 3Z_3.
    """
    _check_method(method)
    p = 3
    A = _unit(p, A, precision)
    if a is None:
        a = hensel_sqrt(A)
        if a is None:
            raise NotASquare("A is not a square in Z_3")
    else:
        a = _unit(p, a, precision)
        if not (a * a).agrees_with(A):
            raise NotASquare("a**2 does not equal A")
    if method == "oracle":
        one_plus = TruncatedSeries(p, (_scalar(p, 1, precision),) + (PadicNumber.zero(p),) * 4 + (A.inverse(),))
        half_inv_y = series_scale(series_binomial_root(one_plus, order, Fraction(-1, 2)), a.inverse() / 2)
        omega = series_add(series_scale(half_inv_y, LinearForm(_scalar(p, 3, precision), PadicNumber.zero(p))),
                           series_scale(series_shift(half_inv_y, 1), LinearForm(PadicNumber.zero(p), _scalar(p, 1, precision))))
        N = series_scale(series_integrate(omega), a * 2)
    else:
        terms = {}
        for k in range(order // 5 + 1):
            w = _scalar(p, binomial(Fraction(-1, 2), k), precision) * A ** (-k)
            if 5 * k + 1 < order:
                terms[5 * k + 1] = LinearForm(w * _scalar(p, Fraction(3, 5 * k + 1), precision), PadicNumber.zero(p))
            if 5 * k + 2 < order:
                terms[5 * k + 2] = LinearForm(PadicNumber.zero(p), w * _scalar(p, Fraction(1, 5 * k + 2), precision))
        N = _closed_series(p, terms, order, (0, 0, 1))
    return ExpansionResult(ResidueClassId(ClassKind.SQUARE_ROOT, a), 0, (a * 2).inverse(), 0, N,
                           {"p": p, "nu": 0, "A": A, "a": a, "alpha_scaled_by": 3}, method)


# -- dispatch and comparison -----------------------------------------------------------

def residue_class_types(p: int, nu: int, a) -> list[ResidueClassId]:
    """Points of C_a(F_p) that points of C_A(Q_p) can reduce to."""
    if p in (2, 5) and nu % p == 0:
        raise UnsupportedPrime(f"residue-class description needs p not dividing nu at p = {p}")
    a = _unit(p, a, DEFAULT_PRECISION)
    out = [ResidueClassId(ClassKind.INFINITY)]
    if nu == 5:
        b5 = hensel_nth_root(a, 5)
        if b5 is not None:
            out.append(ResidueClassId(ClassKind.WEIERSTRASS, b5))
    if nu % 2 == 0 and nu > 0 and p != 2:
        b2 = hensel_sqrt(a)
        if b2 is not None:
            out.append(ResidueClassId(ClassKind.SQUARE_ROOT, b2))
    return out


def expand(p: int, nu: int, kind, a, order: int = DEFAULT_ORDER, *, method: str = "oracle",
           alpha_prime: bool = False, precision: int = DEFAULT_PRECISION) -> ExpansionResult:
    """Expansion on the class ``kind`` for ``A = p**nu * a``; b is derived from a."""
    kind = ClassKind(kind)
    if kind is ClassKind.INFINITY:
        return expand_at_infinity(p, nu, a, order, method=method, alpha_prime=alpha_prime, precision=precision)
    if kind is ClassKind.SQUARE_ROOT and p == 2:
        raise UnsupportedPrime("the (0, b) class needs p odd")
    if kind is ClassKind.WEIERSTRASS and p == 5:
        raise UnsupportedPrime("the (-b, 0) class is not treated at p = 5")
    au = _unit(p, a, precision)
    if kind is ClassKind.WEIERSTRASS:
        if nu != 5:
            raise ClassNotApplicable("the (-b, 0) class needs nu = 5")
        b = hensel_nth_root(au, 5)
        if b is None:
            raise ClassNotApplicable("a is not a fifth power in Z_p")
        return expand_at_weierstrass(p, b, order, method=method, alpha_prime=alpha_prime, precision=precision)
    if nu % 2:
        raise ClassNotApplicable("the (0, b) class needs nu even")
    b = hensel_sqrt(au)
    if b is None:
        raise ClassNotApplicable("a is not a square in Z_p")
    return expand_at_square_class(p, nu, b, order, method=method, alpha_prime=alpha_prime, precision=precision)


@dataclass(frozen=True)
class Agreement:
    agree: bool
    through: int
    min_digits: int   # smallest relative precision (p-adic digits) among compared nonzero components
    mismatches: tuple


def compare_expansions(first: ExpansionResult, second: ExpansionResult, through: int = 13) -> Agreement:
    """Coefficientwise comparison of two normalized series for indices 0..through."""
    bad = []
    digits = []
    for m in range(through + 1):
        x, y = first.coefficient(m), second.coefficient(m)
        if not x.agrees_with(y):
            bad.append(m)
        for c in (x.coeff_alpha, x.coeff_beta, y.coeff_alpha, y.coeff_beta):
            if c.unit != 0:
                digits.append(c.relative_precision)
    same_frame = (first.prefactor_tenths == second.prefactor_tenths
                  and first.scale.agrees_with(second.scale))
    return Agreement(not bad and same_frame, through, min(digits) if digits else 0, tuple(bad))
