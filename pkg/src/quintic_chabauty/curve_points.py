"""Rational points on C_A : y^2 = x^5 + A.

Search, classification of the trivial points, point sets over F_p and the
test of whether every F_p-point lifts to a rational torsion point over Q_p.
"""

from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Optional, Sequence

import numpy as np

from .core_arith import Factorization, integer_root, perfect_power_root
from .errors import BadReduction
from .padic import PadicNumber, hensel_nth_root, hensel_sqrt

DEFAULT_FILTER_MODULI = (64, 63, 65, 11)
BLOCK_SIZE = 1 << 21


class PointClass(enum.Enum):
    INFINITY = "Infinity"
    X_ZERO = "XZero"
    Y_ZERO = "YZero"
    TORSION_4A = "Torsion4A"
    NONTRIVIAL = "Nontrivial"


@dataclass(frozen=True, order=False)
class RationalPoint:
    """A point of C_A(Q); ``x`` and ``y`` are None for the point at infinity."""

    x: Optional[Fraction]
    y: Optional[Fraction]
    classification: PointClass

    @classmethod
    def infinity(cls) -> "RationalPoint":
        return cls(None, None, PointClass.INFINITY)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @property
    def height(self) -> int:
        if self.x is None:
            return 0
        return max(abs(self.x.numerator), self.x.denominator)

    def sort_key(self):
        if self.x is None:
            return (0, 0, Fraction(0), Fraction(0))
        return (1, self.height, self.x, self.y)

    def on_curve(self, A: int) -> bool:
        return self.x is None or self.y * self.y == self.x**5 + A

    def to_dict(self) -> dict:
        if self.x is None:
            return {"x": None, "y": None, "classification": self.classification.value}
        return {"x": str(self.x), "y": str(self.y), "classification": self.classification.value}

    @classmethod
    def from_dict(cls, d: dict) -> "RationalPoint":
        if d["x"] is None:
            return cls.infinity()
        return cls(Fraction(d["x"]), Fraction(d["y"]), PointClass(d["classification"]))

    def __str__(self):
        if self.x is None:
            return "oo"
        return f"({self.x}, {self.y})"


def classify_point(A: int, x: Optional[Fraction], y: Optional[Fraction]) -> PointClass:
    if x is None:
        return PointClass.INFINITY
    x, y = Fraction(x), Fraction(y)
    if y * y != x**5 + A:
        raise ValueError(f"({x}, {y}) is not on y^2 = x^5 + {A}")
    if x == 0:
        return PointClass.X_ZERO
    if y == 0:
        return PointClass.Y_ZERO
    if x**5 == 4 * A and y * y == 5 * A:
        return PointClass.TORSION_4A
    return PointClass.NONTRIVIAL


def make_point(A: int, x, y) -> RationalPoint:
    x, y = Fraction(x), Fraction(y)
    return RationalPoint(x, y, classify_point(A, x, y))


@dataclass(frozen=True)
class SearchReport:
    A: Factorization
    height_bound: int
    denominator_bound: int
    points: tuple
    n_A_lower: int
    d_A: int            # trivial points found (infinity, x = 0, y = 0)
    total_found: int

    def to_dict(self) -> dict:
        return {
            "A": str(self.A),
            "A_value": self.A.value(),
            "height_bound": self.height_bound,
            "denominator_bound": self.denominator_bound,
            "points": [pt.to_dict() for pt in self.points],
            "n_A_lower": self.n_A_lower,
            "d_A": self.d_A,
            "total_found": self.total_found,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SearchReport":
        from .core_arith import parse_factored

        return cls(parse_factored(d["A"]), d["height_bound"], d["denominator_bound"],
                   tuple(RationalPoint.from_dict(x) for x in d["points"]),
                   d["n_A_lower"], d["d_A"], d["total_found"])


# -- torsion -------------------------------------------------------------------------

def rational_torsion_points(A: Factorization) -> list[RationalPoint]:
    """Rational members of the known torsion list of C_A."""
    v = A.value()
    pts = [RationalPoint.infinity()]
    r5 = perfect_power_root(v, 5)
    if r5 is not None:
        pts.append(RationalPoint(Fraction(-r5), Fraction(0), PointClass.Y_ZERO))
    if v > 0:
        r2 = perfect_power_root(v, 2)
        if r2 is not None:
            pts += [RationalPoint(Fraction(0), Fraction(s * r2), PointClass.X_ZERO) for s in (-1, 1)]
    x4 = perfect_power_root(4 * v, 5)
    if x4 is not None and v > 0:
        y5 = perfect_power_root(5 * v, 2)
        if y5 is not None:
            pts += [RationalPoint(Fraction(x4), Fraction(s * y5), PointClass.TORSION_4A) for s in (-1, 1)]
    return sorted(pts, key=RationalPoint.sort_key)


def torsion_4a_exponents(f: Factorization) -> bool:
    """Whether 4A is a fifth power and 5A a square, decided on exponents alone."""
    if f.sign < 0:
        return False
    ex = f.exponents
    for q in set(ex) | {2, 5}:
        e = ex.get(q, 0)
        if (e + (2 if q == 2 else 0)) % 5 or (e + (1 if q == 5 else 0)) % 2:
            return False
    return True


# -- search ----------------------------------------------------------------------------

def _square_tables(moduli: Sequence[int]) -> list[tuple[int, np.ndarray]]:
    out = []
    for k in moduli:
        table = np.zeros(k, dtype=bool)
        table[(np.arange(k, dtype=np.int64) ** 2) % k] = True
        out.append((k, table))
    return out


def _m_range(A: int, e: int, N: int) -> tuple[int, int]:
    """Range of m with |m| <= N e**2 and m**5 + A e**10 >= 0."""
    Ae10 = A * e**10
    hi = N * e * e
    if Ae10 >= 0:
        lo = -integer_root(Ae10, 5)
    else:
        r = integer_root(-Ae10, 5)
        lo = r if r**5 == -Ae10 else r + 1
    return max(lo, -hi), hi


def _sweep_block(args) -> list[tuple[int, int, int]]:
    """All (m, e, q) with lo <= m <= hi, m != 0, gcd(m, e) = 1, q > 0 and q**2 = m**5 + A e**10."""
    A, e, lo, hi, moduli = args
    Ae10 = A * e**10
    m = np.arange(lo, hi + 1, dtype=np.int64)
    keep = m != 0
    if e > 1:
        keep &= np.gcd(m, e) == 1
    for k, table in _square_tables(moduli):
        r = m % k
        r2 = r * r % k
        keep &= table[(r2 * r2 % k * r + Ae10 % k) % k]
    out = []
    for mi in m[keep].tolist():
        n = mi**5 + Ae10
        q = isqrt(n)
        if q and q * q == n:
            out.append((mi, e, q))
    return out


def search_points(A: Factorization, numerator_bound: int, denominator_bound: int, *,
                  workers: int = 1, moduli: Sequence[int] = DEFAULT_FILTER_MODULI,
                  block_size: int = BLOCK_SIZE) -> SearchReport:
    """All points with x = m/e**2 in lowest terms, |m| <= numerator_bound * e**2 and
    e <= denominator_bound, plus infinity and the forced trivial points.

    The residue filter only discards values that are non-squares modulo one of
    ``moduli``, so it never changes the result.
    """
    if numerator_bound < 1 or denominator_bound < 1:
        raise ValueError("search bounds must be positive")
    if not A.is_tenth_power_free():
        raise ValueError(f"{A} is not tenth-power free")
    v = A.value()
    jobs = []
    for e in range(1, denominator_bound + 1):
        lo, hi = _m_range(v, e, numerator_bound)
        for start in range(lo, hi + 1, block_size):
            jobs.append((v, e, start, min(start + block_size - 1, hi), tuple(moduli)))
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_sweep_block, jobs))
    else:
        chunks = [_sweep_block(j) for j in jobs]
    pts = set(rational_torsion_points(A))
    for chunk in chunks:
        for m, e, q in chunk:
            x = Fraction(m, e * e)
            for y in (Fraction(q, e**5), Fraction(-q, e**5)):
                pts.add(RationalPoint(x, y, classify_point(v, x, y)))
    points = tuple(sorted(pts, key=RationalPoint.sort_key))
    trivial = sum(1 for pt in points if pt.classification in
                  (PointClass.INFINITY, PointClass.X_ZERO, PointClass.Y_ZERO))
    paired = len(points) - trivial
    return SearchReport(A, numerator_bound, denominator_bound, points, paired // 2, trivial, len(points))


# -- finite fields -----------------------------------------------------------------------

def points_mod_p(A, p: int) -> list[Optional[tuple[int, int]]]:
    """Points of y^2 = x^5 + A over F_p; ``None`` stands for the point at infinity."""
    a = A.mod(p) if isinstance(A, Factorization) else A % p
    squares: dict[int, list[int]] = {}
    for y in range(p):
        squares.setdefault(y * y % p, []).append(y)
    out: list[Optional[tuple[int, int]]] = [None]
    for x in range(p):
        for y in squares.get((pow(x, 5, p) + a) % p, []):
            out.append((x, y))
    return out


def all_points_lift_to_torsion(A: Factorization, p: int) -> bool:
    """Whether every point of C_A(F_p) reduces from a torsion point in C_A(Q_p).

    Needs good reduction: p must not divide 10 A.
    """
    v = A.value()
    if (10 * v) % p == 0:
        raise BadReduction(f"C_A has bad reduction at {p}")
    for pt in points_mod_p(A, p):
        if pt is None:
            continue
        x, y = pt
        if y == 0:
            # a simple root of x^5 + A lifts to a 2-torsion point
            ok = hensel_nth_root(PadicNumber.from_rational(p, -v), 5, residue=x) is not None
        elif x == 0:
            ok = hensel_sqrt(PadicNumber.from_rational(p, v), residue=y) is not None
        else:
            ok = (hensel_nth_root(PadicNumber.from_rational(p, 4 * v), 5, residue=x) is not None
                  and hensel_sqrt(PadicNumber.from_rational(p, 5 * v), residue=y) is not None)
        if not ok:
            return False
    return True
