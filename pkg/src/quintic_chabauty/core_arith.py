"""Exact integer utilities: factorizations, tenth-power-free normal form, integer roots.

Rationals are plain :class:`fractions.Fraction` values throughout the package.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, prod
from typing import Optional

from .errors import CompositeResidual, NoRealRoot

BigRational = Fraction

DEFAULT_TRIAL_BOUND = 10**6

# Miller-Rabin with these bases is deterministic below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Deterministic primality test for ``n < 3.3e24``.

    Raises ValueError above that range rather than answering probabilistically.
    """
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n >= _MR_LIMIT:
        raise ValueError(f"{n} is outside the deterministic primality range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Factorization:
    """A nonzero integer as ``sign * prod(p**e)``.

    >>> Factorization.of(324)
    Factorization(sign=1, factors=((2, 2), (3, 4)))
    """

    sign: int
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError(f"malformed factor list {self.factors!r}")
            last = p

    @classmethod
    def of(cls, n: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> "Factorization":
        return factorize(n, trial_bound)

    @classmethod
    def from_exponents(cls, exponents: dict[int, int], sign: int = 1,
                       check_primes: bool = True) -> "Factorization":
        items = tuple(sorted((p, e) for p, e in exponents.items() if e))
        if check_primes:
            for p, _ in items:
                if not is_prime(p):
                    raise ValueError(f"{p} is not prime")
        return cls(sign, items)

    def value(self) -> int:
        return self.sign * prod(p**e for p, e in self.factors)

    def __int__(self):
        return self.value()

    def valuation(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self.factors)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def is_tenth_power_free(self) -> bool:
        return all(e <= 9 for _, e in self.factors)

    def is_kth_power(self, k: int) -> bool:
        """Whether the signed value is a k-th power of an integer."""
        if self.sign < 0 and k % 2 == 0:
            return False
        return all(e % k == 0 for _, e in self.factors)

    def mod(self, m: int) -> int:
        r = self.sign % m
        for p, e in self.factors:
            r = r * pow(p, e, m) % m
        return r

    def unit_part(self, p: int) -> int:
        """``A / p**v_p(A)`` as a signed integer."""
        return self.sign * prod(q**e for q, e in self.factors if q != p)

    def __mul__(self, other: "Factorization") -> "Factorization":
        ex = self.exponents
        for p, e in other.factors:
            ex[p] = ex.get(p, 0) + e
        return Factorization.from_exponents(ex, self.sign * other.sign, check_primes=False)

    def __str__(self):
        body = "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors) or "1"
        return ("-" if self.sign < 0 else "") + body


def factorize(n: int, trial_bound: int = DEFAULT_TRIAL_BOUND) -> Factorization:
    """Trial-division factorization of a nonzero integer.

    A cofactor left after dividing out every prime up to ``trial_bound`` is
    accepted only if it is certified prime; otherwise CompositeResidual.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    sign = 1 if n > 0 else -1
    m = abs(n)
    factors: list[tuple[int, int]] = []

    def strip(q):
        nonlocal m
        e = 0
        while m % q == 0:
            m //= q
            e += 1
        if e:
            factors.append((q, e))

    strip(2)
    strip(3)
    q, step = 5, 2
    while q <= trial_bound and q * q <= m:
        strip(q)
        q += step
        step = 6 - step
    if m > 1:
        if q * q > m:
            factors.append((m, 1))
        else:
            try:
                certified = is_prime(m)
            except ValueError:
                certified = False
            if not certified:
                raise CompositeResidual(
                    f"cofactor {m} of {n} has no factor <= {trial_bound} and is not certified prime")
            factors.append((m, 1))
    return Factorization(sign, tuple(factors))


_FACTOR_RE = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def parse_factored(text: str, trial_bound: int = DEFAULT_TRIAL_BOUND) -> Factorization:
    """Parse ``"324"``, ``"2^2*3^4"``, ``"-18^2"`` and similar products."""
    s = text.strip().replace("**", "^").replace("·", "*")
    sign = 1
    if s.startswith("-"):
        sign, s = -1, s[1:]
    elif s.startswith("+"):
        s = s[1:]
    if not s:
        raise ValueError(f"cannot parse {text!r}")
    result = Factorization(sign)
    for part in s.split("*"):
        m = _FACTOR_RE.match(part)
        if not m:
            raise ValueError(f"cannot parse factor {part!r} in {text!r}")
        base, exp = int(m.group(1)), int(m.group(2) or 1)
        if base == 0:
            raise ValueError("A must be nonzero")
        if base == 1 or exp == 0:
            continue
        bf = factorize(base, trial_bound)
        result = result * Factorization(1, tuple((p, e * exp) for p, e in bf.factors))
    return result


def tenth_power_free_reduce(f: Factorization) -> tuple[Factorization, int]:
    """Return ``(g, c)`` with ``f = c**10 * g`` and every exponent of g at most 9."""
    c = 1
    reduced = []
    for p, e in f.factors:
        q, r = divmod(e, 10)
        c *= p**q
        if r:
            reduced.append((p, r))
    return Factorization(f.sign, tuple(reduced)), c


def integer_root(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, by integer Newton iteration."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n < 2:
        return n
    if k == 2:
        return isqrt(n)
    x = 1 << -(-n.bit_length() // k)  # x >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def perfect_power_root(n: int, k: int) -> Optional[int]:
    """The integer r with r**k == n, or None. Nonnegative r for even k."""
    if k < 2:
        raise ValueError("k must be >= 2")
    if n < 0:
        if k % 2 == 0:
            raise NoRealRoot(f"{n} has no real {k}-th root")
        r = perfect_power_root(-n, k)
        return None if r is None else -r
    r = integer_root(n, k)
    return r if r**k == n else None


def trivial_point_count(f: Factorization) -> int:
    """d_A: 4 for A = 1, 3 for other squares, 2 for other fifth powers, else 1."""
    if f.sign > 0 and not f.factors:
        return 4
    if f.is_kth_power(2):
        return 3
    if f.is_kth_power(5):
        return 2
    return 1
