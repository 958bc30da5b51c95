"""Upper bounds for the number of zeros of truncated p-adic series.

Counts always include multiplicity and include the trivial zero ``t = 0``;
callers subtract it when they want nontrivial zeros.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import inf
from typing import Optional

from .errors import PrecisionExhausted, TailUnbounded, UnknownTableEntry, ZeroReduction
from .padic import LinearForm, PadicNumber
from .series import TruncatedSeries, _tail_minimum, evaluate_linear_form, series_derivative, series_evaluate

# v(p, n) for the abstract residue-class bound 1 + n + v(p, n); only the p = 3
# values are available.
RESIDUE_CLASS_TABLE = {(3, 0): 0, (3, 1): 1, (3, 2): 0}


@dataclass(frozen=True)
class ZeroBoundResult:
    max_zeros: Optional[int]
    certified: bool
    dominating_index: Optional[int] = None
    notes: str = ""

    @property
    def nontrivial(self) -> Optional[int]:
        return None if self.max_zeros is None else max(self.max_zeros - 1, 0)


def strassmann_bound(s: TruncatedSeries, disc_valuation_tenths: int) -> ZeroBoundResult:
    """Zeros (with multiplicity) of a scalar series in ``{t : v(t) >= disc}``.

    The Newton-polygon count is the largest index whose coefficient can reach
    the minimum of ``v(c_m) + m * disc``; coefficients known only up to
    precision count with their lower bound, so the result never undercounts.
    """
    if s.kind != "scalar":
        raise TypeError("fix (alpha, beta) before bounding zeros")
    d = disc_valuation_tenths
    best = inf
    for m, c in enumerate(s.coefficients):
        if c.unit != 0:
            best = min(best, c.valuation_tenths + m * d)
    if best == inf:
        raise PrecisionExhausted("no coefficient is certified nonzero")
    try:
        tail = _tail_minimum(s, d)
    except TailUnbounded:
        return ZeroBoundResult(None, False, None, "tail bound unbounded below on the disc")
    if tail <= best:
        return ZeroBoundResult(None, False, None,
                               f"tail bound {tail} does not exceed the attained minimum {best}")
    N = max(m for m, c in enumerate(s.coefficients) if c.lower_valuation + m * d <= best)
    return ZeroBoundResult(N, True, N, f"minimum {best} tenths attained up to index {N}")


def _poly_roots_with_multiplicity(coeffs: list[int], p: int) -> int:
    """Number of roots in F_p, counted with multiplicity, of a nonzero polynomial."""
    poly = [c % p for c in coeffs]
    while poly and poly[-1] == 0:
        poly.pop()
    if not poly:
        raise ZeroReduction("zero polynomial")
    total = 0
    for r in range(p):
        while len(poly) > 1:
            # synthetic division by (t - r)
            q = [0] * (len(poly) - 1)
            acc = 0
            for i in range(len(poly) - 1, -1, -1):
                acc = (acc * r + poly[i]) % p
                if i:
                    q[i - 1] = acc
            if acc:
                break
            poly = q
            total += 1
    return total


def reduce_mod_p(s: TruncatedSeries) -> list[int]:
    """Reduction of an integral scalar series to a polynomial over F_p."""
    p = s.p
    if not s.is_exact and _tail_minimum(s, 0) < 10:
        raise PrecisionExhausted("the unknown tail does not vanish modulo p")
    return [c.residue() for c in s.coefficients]


def count_extra_solutions_mod_p(s: TruncatedSeries, p: int, alpha_beta_residues: tuple[int, int]) -> int:
    """Roots in F_p, with multiplicity, of the reduction of ``s(t)/t``.

    Each such root bounds the zeros of s in the matching disc of Z_p beyond the
    trivial zero t = 0 (a root at 0 means further zeros near the trivial one).
    """
    if s.p != p:
        raise ValueError("prime mismatch")
    if s.kind == "linear_form":
        s = evaluate_linear_form(s, *alpha_beta_residues)
    red = reduce_mod_p(s)
    if not any(red):
        raise ZeroReduction("all known coefficients vanish mod p; rescale first")
    if red[0]:
        raise ValueError("series does not vanish at t = 0")
    return _poly_roots_with_multiplicity(red[1:], p)


def residue_class_bound(n: int, p: int, table: Optional[dict] = None) -> int:
    """``1 + n + v(p, n)``, bound on zeros in a class where the reduced differential vanishes to order n."""
    tbl = dict(RESIDUE_CLASS_TABLE)
    if table:
        tbl.update(table)
    if (p, n) not in tbl:
        raise UnknownTableEntry(f"v({p}, {n}) is not tabulated")
    return 1 + n + tbl[(p, n)]


# -- families of differentials ---------------------------------------------------

def _reduced_term(x: PadicNumber, r: int) -> Optional[int]:
    """Residue mod p of ``x * gamma`` where gamma is a unit with residue r
    (or, for r = 0, any element of pZ_p); None when it is not determined."""
    if x.is_exact_zero:
        return 0
    lv = x.lower_valuation
    if r == 0:
        return 0 if lv >= 0 else None
    if lv >= 10:
        return 0
    if x.unit != 0 and x.valuation_tenths == 0 and x.abs_precision_tenths is not None \
            and x.abs_precision_tenths >= 10:
        return x.residue() * r % x.p
    return None


def _term_bounds(x: PadicNumber, y: PadicNumber, ra: int, rb: int, p: int) -> tuple[float, bool]:
    """Lower bound on v(x alpha + y beta) over the residue class, and whether it is attained."""
    parts = []
    for c, r in ((x, ra), (y, rb)):
        if c.is_exact_zero:
            continue
        lv = c.lower_valuation + (0 if r else 10)
        parts.append((lv, c, r))
    if not parts:
        return inf, False
    lo = min(lv for lv, _, _ in parts)
    at_min = [(c, r) for lv, c, r in parts if lv == lo]
    if any(r == 0 or c.unit == 0 for c, r in at_min):
        return lo, False
    if len({c.valuation_tenths % 10 for c, _ in at_min}) > 1:
        return lo, False
    total = sum(c.unit * r for c, r in at_min)
    return lo, total % p != 0


def family_zero_bound(s: TruncatedSeries, alpha_beta_residues: tuple[int, int]) -> ZeroBoundResult:
    """Zeros in Z_p of ``alpha A(t) + beta B(t)``, uniformly over a residue class of (alpha : beta).

    A nonzero residue fixes that component as a unit with the given reduction
    (the representative itself may be scaled to it); a zero residue only says the
    component lies in pZ_p.  When the reduction modulo p is determined by the
    residues the bound is the number of roots of that reduction in F_p with
    multiplicity; otherwise a Newton-polygon count over all of Z_p is used.
    """
    p = s.p
    if s.kind != "linear_form":
        raise TypeError("expected a linear-form series")
    ra, rb = (r % p for r in alpha_beta_residues)
    if ra == 0 and rb == 0:
        raise ValueError("(0 : 0) is not a point of P^1")
    tail = _tail_minimum(s, 0)
    red = []
    for c in s.coefficients:
        u, w = _reduced_term(c.coeff_alpha, ra), _reduced_term(c.coeff_beta, rb)
        red.append(None if u is None or w is None else (u + w) % p)
    if tail >= 10 and None not in red and any(red):
        return ZeroBoundResult(_poly_roots_with_multiplicity(red, p), True, None,
                               "roots of the reduction mod p, with multiplicity")
    bounds = [_term_bounds(c.coeff_alpha, c.coeff_beta, ra, rb, p) for c in s.coefficients]
    certified = [lo for lo, exact in bounds if exact]
    if not certified:
        return ZeroBoundResult(None, False, None, "no coefficient has a certified valuation")
    best = min(certified)
    if tail <= best:
        return ZeroBoundResult(None, False, None, "tail may dominate")
    N = max(m for m, (lo, _) in enumerate(bounds) if lo <= best)
    return ZeroBoundResult(N, True, N, "Newton polygon over Z_p")


# -- witnesses -------------------------------------------------------------------------

def root_witnesses(s: TruncatedSeries, digits: int, disc_digits: int = 1) -> list[tuple[int, bool]]:
    """Nonzero residues r mod p**digits with v(r) >= disc_digits where ``g = s/t``
    satisfies ``g(r) = 0 mod p**digits``; each is paired with whether Hensel's
    lemma (``v(g'(r)) = 0``) guarantees a unique root of s congruent to r.
    """
    from .series import series_shift

    p = s.p
    g = series_shift(s, -1)
    dg = series_derivative(g)
    out = []
    step = p**disc_digits
    for r in range(step, p**digits, step):
        t = PadicNumber.from_rational(p, r)
        val = series_evaluate(g, t)
        if val.lower_valuation >= 10 * digits:
            dval = series_evaluate(dg, t)
            out.append((r, dval.unit != 0 and dval.valuation_tenths == 0))
    return out
