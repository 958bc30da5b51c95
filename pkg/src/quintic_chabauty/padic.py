"""Truncated p-adic numbers on a tenth-integer valuation grid.

A :class:`PadicNumber` is ``pi**v * u`` where ``pi**10 = p``, ``v`` is an integer
(``valuation_tenths``) and ``u`` is a unit of Z_p known modulo ``p**r``.  This
covers Q_p (``v`` divisible by 10) and every element of the totally ramified
extension Q_p(pi) that the residue-class computations produce, without doing
degree-10 polynomial arithmetic.

Besides nonzero values there are two kinds of zero: the exact zero, and
``O(pi**k)``, a value only known to have valuation at least ``k``.  The operator
methods propagate ``O(pi**k)``; the ``padic_*`` functions are the strict
interface and raise :class:`PrecisionExhausted` instead of returning one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Union

from .errors import PrecisionExhausted, RamificationMismatch, UnsupportedRamified

DEFAULT_PRECISION = 30  # p-adic digits

Number = Union[int, Fraction, "PadicNumber"]


def _vp(n: int, p: int) -> int:
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True, slots=True)
class PadicNumber:
    p: int
    valuation_tenths: int
    unit: int
    abs_precision_tenths: Optional[int]  # None only for the exact zero

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, p: int) -> "PadicNumber":
        return cls(p, 0, 0, None)

    @classmethod
    def big_oh(cls, p: int, tenths: int) -> "PadicNumber":
        """The value O(pi**tenths)."""
        return cls(p, tenths, 0, tenths)

    @classmethod
    def from_rational(cls, p: int, value, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        """Embed an int or Fraction, keeping ``precision`` relative digits."""
        q = Fraction(value)
        if q == 0:
            return cls.zero(p)
        num, den = q.numerator, q.denominator
        vn, vd = _vp(num, p), _vp(den, p)
        mod = p**precision
        num //= p**vn
        den //= p**vd
        u = num * pow(den, -1, mod) % mod
        v = 10 * (vn - vd)
        return cls(p, v, u, v + 10 * precision)

    @classmethod
    def pi_power(cls, p: int, tenths: int, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        return cls(p, tenths, 1, tenths + 10 * precision)

    # -- state ------------------------------------------------------------
    @property
    def is_exact_zero(self) -> bool:
        return self.abs_precision_tenths is None

    @property
    def is_inexact_zero(self) -> bool:
        return self.unit == 0 and self.abs_precision_tenths is not None

    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def relative_precision(self) -> Optional[int]:
        """Known p-adic digits of the unit part (None for zeros)."""
        if self.unit == 0:
            return None
        return (self.abs_precision_tenths - self.valuation_tenths) // 10

    @property
    def valuation(self) -> int:
        """Certified valuation in tenths; raises for any kind of zero."""
        if self.unit == 0:
            raise PrecisionExhausted("valuation of a zero value")
        return self.valuation_tenths

    @property
    def lower_valuation(self) -> float:
        """A sound lower bound on the valuation (inf for the exact zero)."""
        if self.is_exact_zero:
            return float("inf")
        return self.valuation_tenths

    def in_base_field(self) -> bool:
        return self.unit == 0 or self.valuation_tenths % 10 == 0

    def _coerce(self, other) -> "PadicNumber":
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise ValueError(f"prime mismatch: {self.p} vs {other.p}")
            return other
        prec = self.relative_precision or DEFAULT_PRECISION
        return PadicNumber.from_rational(self.p, other, max(prec, DEFAULT_PRECISION))

    # -- arithmetic -------------------------------------------------------
    def __neg__(self):
        if self.unit == 0:
            return self
        mod = self.p ** self.relative_precision
        return PadicNumber(self.p, self.valuation_tenths, (-self.unit) % mod, self.abs_precision_tenths)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self, other
        if a.is_exact_zero:
            return b
        if b.is_exact_zero:
            return a
        prec = min(a.abs_precision_tenths, b.abs_precision_tenths)
        if a.unit == 0 and b.unit == 0:
            return PadicNumber.big_oh(self.p, prec)
        if a.unit == 0 or b.unit == 0:
            x = b if a.unit == 0 else a
            if x.valuation_tenths >= prec:
                return PadicNumber.big_oh(self.p, prec)
            r = (prec - x.valuation_tenths) // 10
            return PadicNumber(self.p, x.valuation_tenths, x.unit % self.p**r,
                               x.valuation_tenths + 10 * r)
        if (a.valuation_tenths - b.valuation_tenths) % 10:
            raise RamificationMismatch(
                f"cannot add values of valuation {a.valuation_tenths} and {b.valuation_tenths} tenths")
        if a.valuation_tenths > b.valuation_tenths:
            a, b = b, a
        v = a.valuation_tenths
        if prec <= v:
            return PadicNumber.big_oh(self.p, prec)
        r = (prec - v) // 10
        mod = self.p**r
        k = (b.valuation_tenths - v) // 10
        s = (a.unit + self.p**k * b.unit) % mod
        if s == 0:
            return PadicNumber.big_oh(self.p, v + 10 * r)
        j = _vp(s, self.p)
        return PadicNumber(self.p, v + 10 * j, s // self.p**j, v + 10 * r)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self, other
        if a.is_exact_zero or b.is_exact_zero:
            return PadicNumber.zero(self.p)
        if a.unit == 0 or b.unit == 0:
            return PadicNumber.big_oh(self.p, a.valuation_tenths + b.valuation_tenths)
        r = min(a.relative_precision, b.relative_precision)
        v = a.valuation_tenths + b.valuation_tenths
        return PadicNumber(self.p, v, a.unit * b.unit % self.p**r, v + 10 * r)

    __rmul__ = __mul__

    def inverse(self) -> "PadicNumber":
        if self.is_exact_zero:
            raise ZeroDivisionError("inverse of exact zero")
        if self.unit == 0:
            raise PrecisionExhausted("inverse of a value indistinguishable from zero")
        r = self.relative_precision
        v = -self.valuation_tenths
        return PadicNumber(self.p, v, pow(self.unit, -1, self.p**r), v + 10 * r)

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = PadicNumber.from_rational(self.p, 1, self.relative_precision or DEFAULT_PRECISION)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift_tenths(self, k: int) -> "PadicNumber":
        """Multiply by pi**k exactly."""
        if self.is_exact_zero:
            return self
        return PadicNumber(self.p, self.valuation_tenths + k, self.unit, self.abs_precision_tenths + k)

    def with_precision(self, abs_tenths: int) -> "PadicNumber":
        """Drop digits so that the absolute precision is at most ``abs_tenths``."""
        return self + PadicNumber.big_oh(self.p, abs_tenths)

    # -- comparison and reduction ----------------------------------------
    def agrees_with(self, other, abs_tenths: Optional[int] = None) -> bool:
        """True when ``self - other`` is zero at tracked precision (or mod pi**abs_tenths)."""
        d = self - self._coerce(other)
        if abs_tenths is not None:
            return d.is_exact_zero or d.lower_valuation >= abs_tenths
        return d.unit == 0

    def residue(self) -> int:
        """Reduction modulo pi as an element of F_p (value must be integral)."""
        if self.unit == 0:
            if self.is_exact_zero or self.valuation_tenths >= 1:
                return 0
            raise PrecisionExhausted("reduction of an O(pi^k) value with k < 1")
        if self.valuation_tenths < 0:
            raise ValueError("reduction of a non-integral value")
        return self.unit % self.p if self.valuation_tenths == 0 else 0

    def to_int(self, digits: int) -> int:
        """Integer representative modulo p**digits of an element of Z_p."""
        if self.is_exact_zero:
            return 0
        if self.abs_precision_tenths < 10 * digits:
            raise PrecisionExhausted(f"only {self.abs_precision_tenths} tenths of precision known")
        if self.unit == 0:
            return 0
        if self.valuation_tenths % 10 or self.valuation_tenths < 0:
            raise ValueError("not an element of Z_p")
        return (self.p ** (self.valuation_tenths // 10) * self.unit) % self.p**digits

    def rational_guess(self) -> Optional[Fraction]:
        """Smallest-height rational agreeing with the value to the known precision.

        Uses rational reconstruction of the unit modulo p**r; returns None when no
        fraction with numerator and denominator below sqrt(p**r / 2) fits, or
        when the valuation is not an integer.
        """
        if self.unit == 0 or self.valuation_tenths % 10:
            return None
        r = self.relative_precision
        mod = self.p**r
        bound = isqrt(mod // 2)
        r0, r1, s0, s1 = mod, self.unit % mod, 0, 1
        while r1 > bound:
            q = r0 // r1
            r0, r1 = r1, r0 - q * r1
            s0, s1 = s1, s0 - q * s1
        if s1 == 0 or abs(s1) > bound or gcd(r1, s1) != 1:
            return None
        return Fraction(r1, s1) * Fraction(self.p) ** (self.valuation_tenths // 10)

    def pretty(self) -> str:
        """Short display: a small rational when one matches, else the unit digits."""
        if self.is_exact_zero:
            return "0"
        if self.unit == 0:
            return f"O(pi^{self.abs_precision_tenths})"
        q = self.rational_guess()
        if q is not None:
            return str(q)
        return str(self)

    def __repr__(self):
        if self.is_exact_zero:
            return f"PadicNumber(0, p={self.p})"
        if self.unit == 0:
            return f"O(pi^{self.valuation_tenths}, p={self.p})"
        return (f"PadicNumber(pi^{self.valuation_tenths} * {self.unit}"
                f" + O(pi^{self.abs_precision_tenths}), p={self.p})")

    def __str__(self):
        if self.is_exact_zero:
            return "0"
        if self.unit == 0:
            return f"O(pi^{self.valuation_tenths})"
        v = self.valuation_tenths
        head = f"{self.p}^{v // 10}" if v % 10 == 0 else f"pi^{v}"
        return f"{head}*{self.unit} + O(pi^{self.abs_precision_tenths})"


# -- strict functional interface ----------------------------------------------

def _strict(x: PadicNumber) -> PadicNumber:
    if x.is_inexact_zero:
        raise PrecisionExhausted("result indistinguishable from zero at available precision")
    return x


def padic_add(a: PadicNumber, b: PadicNumber) -> PadicNumber:
    return _strict(a + b)


def padic_mul(a: PadicNumber, b: PadicNumber) -> PadicNumber:
    return _strict(a * b)


def padic_neg(a: PadicNumber) -> PadicNumber:
    return _strict(-a)


def padic_inv(a: PadicNumber) -> PadicNumber:
    return a.inverse()


# -- roots ----------------------------------------------------------------------

def sqrt_mod_prime(a: int, p: int) -> Optional[int]:
    """Smallest square root of a modulo an odd prime p (Tonelli-Shanks), or None."""
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


def _lift_root(u: int, k: int, r0: int, p: int, digits: int) -> int:
    """Newton-lift a simple root r0 of x**k - u from mod p to mod p**digits."""
    x, prec = r0 % p, 1
    while prec < digits:
        prec = min(2 * prec, digits)
        mod = p**prec
        fx = (pow(x, k, mod) - u) % mod
        dfx = k * pow(x, k - 1, mod) % mod
        x = (x - fx * pow(dfx, -1, mod)) % mod
    return x


def _check_unit(a: PadicNumber) -> None:
    if a.unit == 0 or a.valuation_tenths != 0:
        raise ValueError("expected a unit of Z_p")


def hensel_sqrt(a: PadicNumber, residue: Optional[int] = None) -> Optional[PadicNumber]:
    """Square root of a unit of Z_p (p odd), or None when a is a non-square.

    The returned root reduces to ``residue`` if given, otherwise to the smaller
    of the two square roots of ``a mod p``.
    """
    if a.p == 2:
        raise UnsupportedRamified("square roots at p = 2 are not supported")
    _check_unit(a)
    p = a.p
    r0 = sqrt_mod_prime(a.unit, p) if residue is None else residue % p
    if r0 is None or r0 == 0 or (r0 * r0 - a.unit) % p:
        return None
    digits = a.relative_precision
    x = _lift_root(a.unit, 2, r0, p, digits)
    return PadicNumber(p, 0, x, 10 * digits)


def nth_roots_mod_prime(a: int, k: int, p: int) -> list[int]:
    a %= p
    return [x for x in range(1, p) if pow(x, k, p) == a]


def hensel_nth_root(a: PadicNumber, k: int, residue: Optional[int] = None) -> Optional[PadicNumber]:
    """k-th root of a unit of Z_p with p not dividing k, or None."""
    if k < 1:
        raise ValueError("k must be positive")
    p = a.p
    if gcd(k, p) != 1:
        raise UnsupportedRamified(f"{k}-th roots at p = {p} are wildly ramified")
    _check_unit(a)
    if residue is None:
        roots = nth_roots_mod_prime(a.unit, k, p)
        if not roots:
            return None
        r0 = roots[0]
    else:
        r0 = residue % p
        if r0 == 0 or (pow(r0, k, p) - a.unit) % p:
            return None
    digits = a.relative_precision
    return PadicNumber(p, 0, _lift_root(a.unit, k, r0, p, digits), 10 * digits)


# -- linear forms -------------------------------------------------------------

@dataclass(frozen=True, slots=True)
class LinearForm:
    """``coeff_alpha * alpha + coeff_beta * beta`` for the unknown differential (alpha : beta)."""

    coeff_alpha: PadicNumber
    coeff_beta: PadicNumber

    def __post_init__(self):
        if self.coeff_alpha.p != self.coeff_beta.p:
            raise ValueError("components must share the prime")

    @property
    def p(self) -> int:
        return self.coeff_alpha.p

    @classmethod
    def zero(cls, p: int) -> "LinearForm":
        z = PadicNumber.zero(p)
        return cls(z, z)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        return LinearForm(self.coeff_alpha + other.coeff_alpha, self.coeff_beta + other.coeff_beta)

    def __neg__(self):
        return LinearForm(-self.coeff_alpha, -self.coeff_beta)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LinearForm":
        return LinearForm(self.coeff_alpha * c, self.coeff_beta * c)

    def shift_tenths(self, k: int) -> "LinearForm":
        return LinearForm(self.coeff_alpha.shift_tenths(k), self.coeff_beta.shift_tenths(k))

    def evaluate(self, alpha, beta) -> PadicNumber:
        return self.coeff_alpha * alpha + self.coeff_beta * beta

    @property
    def is_exact_zero(self) -> bool:
        return self.coeff_alpha.is_exact_zero and self.coeff_beta.is_exact_zero

    @property
    def lower_valuation(self) -> float:
        return min(self.coeff_alpha.lower_valuation, self.coeff_beta.lower_valuation)

    def agrees_with(self, other: "LinearForm", abs_tenths: Optional[int] = None) -> bool:
        return (self.coeff_alpha.agrees_with(other.coeff_alpha, abs_tenths)
                and self.coeff_beta.agrees_with(other.coeff_beta, abs_tenths))

    def __str__(self):
        return f"({self.coeff_alpha})*alpha + ({self.coeff_beta})*beta"
