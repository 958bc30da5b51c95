"""Independent reference computations used by the tests.

Nothing here imports the package's p-adic or series code: roots are counted
by walking residue classes, points are found with plain Fractions, and
factorizations come from sympy.
"""

from fractions import Fraction
from math import gcd, isqrt

import numpy as np
import sympy


def poly_eval(coeffs, x, mod=None):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
        if mod:
            acc %= mod
    return acc


def vp(n, p):
    if n == 0:
        return float("inf")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def count_roots_in_pZp(coeffs, p, max_depth=40):
    """Number of distinct roots in pZ_p of a squarefree integer polynomial.

    Residue classes are refined until Hensel's lemma (v(f(r)) > 2 v(f'(r)))
    isolates a single root or the class is empty.  Raises if some class is
    still undecided at ``max_depth``.
    """
    deriv = [i * c for i, c in enumerate(coeffs)][1:]
    count = 0
    frontier = [(0, 1)]          # residue r modulo p**k with r in pZ_p
    while frontier:
        r, k = frontier.pop()
        if k > max_depth:
            raise RuntimeError("root counting did not terminate")
        fr = poly_eval(coeffs, r)
        dr = poly_eval(deriv, r)
        vf, vd = vp(fr, p), vp(dr, p)
        if vf < k:
            continue
        if vf > 2 * vd and k > vd:
            count += 1
            continue
        mod = p**k
        frontier.extend((r + j * mod, k + 1) for j in range(p))
    return count


def is_squarefree_poly(coeffs):
    x = sympy.symbols("x")
    f = sympy.Poly(list(reversed(coeffs)), x)
    if f.degree() < 1:
        return True
    return sympy.gcd(f, f.diff(x)).degree() == 0


def brute_points(A, num_bound, den_bound):
    """Affine points with x = m/e^2, |m| <= num_bound e^2, e <= den_bound, gcd(m, e) = 1."""
    pts = set()
    for e in range(1, den_bound + 1):
        for m in range(-num_bound * e * e, num_bound * e * e + 1):
            if gcd(m, e) != 1:
                continue
            x = Fraction(m, e * e)
            rhs = x**5 + A
            if rhs < 0:
                continue
            n, d = rhs.numerator, rhs.denominator
            rn, rd = isqrt(n), isqrt(d)
            if rn * rn == n and rd * rd == d:
                y = Fraction(rn, rd)
                pts.add((x, y))
                pts.add((x, -y))
    return pts


def brute_points_mod_p(A, p):
    return sorted((x, y) for x in range(p) for y in range(p) if (y * y - x**5 - A) % p == 0)


SMALL_PRIMES = np.array(list(sympy.primerange(2, 10_000)), dtype=np.int64)


def batch_exponents(values):
    """Factor many integers below 10**12: vectorised trial division by primes
    below 10**4, then sympy for whatever cofactor is left."""
    vals = np.array(values, dtype=np.int64)
    rest = vals.copy()
    out = [dict() for _ in values]
    for q in SMALL_PRIMES:
        idx = np.nonzero(rest % q == 0)[0]
        while idx.size:
            for i in idx.tolist():
                out[i][int(q)] = out[i].get(int(q), 0) + 1
            rest[idx] //= q
            idx = idx[rest[idx] % q == 0]
    for i, c in enumerate(rest.tolist()):
        if c > 1:
            for q, e in _factor_cofactor(c).items():
                out[i][q] = out[i].get(q, 0) + e
    return out


def _brent(n, c=1):
    """One nontrivial factor of a composite n by Brent's cycle search, or None."""
    y, m, g, r, q = 2, 128, 1, 1, 1
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = gcd(q, n)
            k += m
        r *= 2
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = gcd(abs(x - ys), n)
            if g > 1:
                break
    return None if g == n else g


def _factor_cofactor(c):
    """Factor c < 10**12 with no prime factor below 10**4 (so at most two primes)."""
    if sympy.isprime(c):
        return {c: 1}
    r = isqrt(c)
    if r * r == c:
        return {r: 2}
    g = _brent(c)
    if g is None:
        return {int(q): e for q, e in sympy.factorint(c).items()}
    a, b = sorted((g, c // g))
    return {a: 1, b: 1}
