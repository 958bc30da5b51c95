"""Elimination clauses on the factorization of A and the candidate lists they leave.

Every bound here is an upper bound on n_A that holds under the hypothesis
r_A = 1; without it the numbers mean nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from itertools import product
from typing import Iterator, Optional

from .core_arith import Factorization, parse_factored, trivial_point_count
from .curve_points import all_points_lift_to_torsion
from .errors import BadReduction, FixtureError, IncompleteCover, ZeroReduction
from .expansions import expand_at_infinity, expand_at_square_class
from .padic import PadicNumber, hensel_sqrt
from .zero_bounds import count_extra_solutions_mod_p, family_zero_bound

HYPOTHESIS = "conditional on r_A = 1"

CENSUS_PRIMES = (2, 3, 5, 7, 11, 13)
CENSUS_COUNT = 225_000


@dataclass(frozen=True)
class FilterVerdict:
    bound: int
    source: str
    applicable: bool = True
    detail: str = ""

    def __str__(self):
        return f"n_A <= {self.bound} ({self.source}{': ' + self.detail if self.detail else ''})"


# -- individual clauses ----------------------------------------------------------

PROP_FIVE = "prop-v_p=5,p>=7"
PROP_EVEN = "prop-v_p-even,p>=11"
PROP_ODD = "prop-v_p-odd,p>=17"
LEMMA_MOD3 = "lemma-v_3=0"
LEMMA_ODD = "lemma-v_p-odd"
LEMMA_FIVE = "lemma-v_p=5"
LEMMA_EVEN = "lemma-v_p-even"
LEMMA_P3_EVEN = "lemma-v_3-even"
LEMMA_P7 = "lemma-v_7"
TORSION_LIFT = "mod-11-torsion-lifting"

ODD = (1, 3, 7, 9)
EVEN = (2, 4, 6, 8)


def _exponent_items(f: Factorization):
    if not f.is_tenth_power_free():
        raise ValueError(f"{f} is not tenth-power free")
    return f.factors


def proposition_filter(f: Factorization) -> list[FilterVerdict]:
    """Clauses bounding n_A by 1 through a large prime with a given exponent."""
    out = []
    for p, e in _exponent_items(f):
        if e == 5 and p >= 7:
            out.append(FilterVerdict(1, PROP_FIVE, detail=f"v_{p} = 5"))
        if e in EVEN and p >= 11:
            out.append(FilterVerdict(1, PROP_EVEN, detail=f"v_{p} = {e}"))
        if e in ODD and p >= 17:
            out.append(FilterVerdict(1, PROP_ODD, detail=f"v_{p} = {e}"))
    return out


def lemma_filters(f: Factorization) -> list[FilterVerdict]:
    """Clauses from the residue-class analysis at 3, 7 and general primes."""
    ex = dict(_exponent_items(f))
    out = []
    v3 = ex.get(3, 0)
    if v3 == 0:
        if f.mod(3) == 1:
            out.append(FilterVerdict(1, LEMMA_MOD3, detail="A = 1 mod 3"))
        else:
            out.append(FilterVerdict(2, LEMMA_MOD3, detail="A = -1 mod 3"))
    for p, e in sorted(ex.items()):
        if e in ODD and p not in (11, 13):
            out.append(FilterVerdict(1, LEMMA_ODD, detail=f"v_{p} = {e}"))
        if e == 5:
            if p == 3:
                out.append(FilterVerdict(2, LEMMA_FIVE, detail="v_3 = 5"))
            elif p != 5:
                out.append(FilterVerdict(1, LEMMA_FIVE, detail=f"v_{p} = 5"))
        if e in EVEN and p not in (2, 3, 7):
            out.append(FilterVerdict(1, LEMMA_EVEN, detail=f"v_{p} = {e}"))
    if v3 in (6, 8):
        out.append(FilterVerdict(1, LEMMA_P3_EVEN, detail=f"v_3 = {v3}"))
    elif v3 in (2, 4):
        out.append(FilterVerdict(2, LEMMA_P3_EVEN, detail=f"v_3 = {v3}"))
    if ex.get(7, 0) in (2, 6, 8):
        out.append(FilterVerdict(1, LEMMA_P7, detail=f"v_7 = {ex[7]}"))
    return out


def all_verdicts(f: Factorization) -> list[FilterVerdict]:
    return proposition_filter(f) + lemma_filters(f)


def best_bound(f: Factorization) -> FilterVerdict:
    verdicts = all_verdicts(f)
    if not verdicts:
        raise IncompleteCover(f"no elimination clause applies to A = {f}")
    return min(verdicts, key=lambda v: v.bound)


def exponent_bound(exponents: dict[int, int], sign: int = 1) -> int:
    """best_bound(...).bound straight from an exponent vector, for bulk sweeps."""
    f = Factorization.from_exponents(exponents, sign, check_primes=False)
    return best_bound(f).bound


def torsion_lifting_verdict(f: Factorization, p: int = 11) -> Optional[FilterVerdict]:
    """n_A <= 1 when every point of C_A(F_p) lifts to a torsion point over Q_p."""
    try:
        lifts = all_points_lift_to_torsion(f, p)
    except BadReduction:
        return None
    if not lifts:
        return None
    return FilterVerdict(1, TORSION_LIFT if p == 11 else f"mod-{p}-torsion-lifting",
                         detail=f"A = {f.mod(p)} mod {p}")


# -- census ---------------------------------------------------------------------------

_CENSUS_RANGES = {2: range(10), 3: range(10), 5: range(10), 7: [e for e in range(10) if e != 5],
                  11: (0, 1, 3, 7, 9), 13: (0, 1, 3, 7, 9)}


@dataclass(frozen=True)
class CandidateCensus:
    """Tenth-power-free A with support in {2, ..., 13} that the proposition leaves open."""

    include_negative: bool = False

    @property
    def count(self) -> int:
        n = 1
        for p in CENSUS_PRIMES:
            n *= len(_CENSUS_RANGES[p])
        return n * (2 if self.include_negative else 1)

    def exponent_vectors(self) -> Iterator[tuple[int, ...]]:
        return product(*(_CENSUS_RANGES[p] for p in CENSUS_PRIMES))

    def __iter__(self) -> Iterator[Factorization]:
        signs = (1, -1) if self.include_negative else (1,)
        for sign in signs:
            for vec in self.exponent_vectors():
                yield Factorization(sign, tuple((p, e) for p, e in zip(CENSUS_PRIMES, vec) if e))

    def __len__(self):
        return self.count


def enumerate_post_proposition_candidates(include_negative: bool = False) -> CandidateCensus:
    return CandidateCensus(include_negative)


# -- seven and six points -------------------------------------------------------------------

@dataclass(frozen=True)
class SevenPointChain:
    stage1: tuple
    stage2: tuple
    removed_by_lifting: tuple
    congruence_agrees: bool


def _value_key(f: Factorization) -> int:
    return f.value()


def seven_point_candidates() -> SevenPointChain:
    """Squares A with best_bound 2, then those not removed by the mod-11 lifting test.

    #C_A(Q) = 7 forces d_A = 3 and n_A = 2, so A is a square.  Among squares,
    any even exponent at a prime p >= 11 already gives n_A <= 1, so only
    exponent vectors over {2, 3, 5, 7} need to be examined.
    """
    stage1 = []
    for vec in product((0,) + EVEN, repeat=4):
        f = Factorization(1, tuple((p, e) for p, e in zip((2, 3, 5, 7), vec) if e))
        if best_bound(f).bound == 2:
            stage1.append(f)
    stage1.sort(key=_value_key)
    stage2, removed = [], []
    agrees = True
    for f in stage1:
        lifts = all_points_lift_to_torsion(f, 11)
        agrees &= lifts == (f.mod(11) in (1, 3, 9))
        (removed if lifts else stage2).append(f)
    return SevenPointChain(tuple(stage1), tuple(stage2), tuple(removed), agrees)


@dataclass(frozen=True)
class SixPointCandidate:
    A: Factorization
    residue_mod_11: int
    lifts_mod_11: bool
    bound_after_lifting: int


@dataclass(frozen=True)
class SixPointAnalysis:
    candidates: tuple      # fifth powers left by the v_p = 5 clauses
    survivors: tuple       # those not excluded by the mod-11 lifting test


def six_point_candidates() -> SixPointAnalysis:
    """Fifth powers A (tenth-power free) for which no v_p = 5 clause forces n_A <= 1.

    #C_A(Q) = 6 with r_A = 1 needs n_A = 2 and A a fifth power; a prime p with
    v_p(A) = 5 outside {3, 5} gives n_A <= 1, so the support lies in {3, 5}.
    """
    five = (PROP_FIVE, LEMMA_FIVE)
    out = []
    for e3, e5, e7 in product((0, 5), repeat=3):
        f = Factorization(1, tuple((p, e) for p, e in ((3, e3), (5, e5), (7, e7)) if e))
        if any(v.bound == 1 and v.source in five for v in all_verdicts(f)):
            continue
        lifts = all_points_lift_to_torsion(f, 11)
        out.append(SixPointCandidate(f, f.mod(11), lifts, 1 if lifts else 2))
    out.sort(key=lambda c: c.A.value())
    survivors = tuple(c.A for c in out if c.bound_after_lifting >= 2)
    return SixPointAnalysis(tuple(out), survivors)


# -- residue-class contributions at p = 3 and p = 7 --------------------------------------------

P1_F3 = ((0, 1), (1, 0), (1, 1), (1, -1))


@dataclass(frozen=True)
class ContributionRow:
    residues: tuple[int, int]
    nu: int
    infinity: int
    square_class: int

    @property
    def total(self) -> int:
        return self.infinity + self.square_class


def _nontrivial(total_zeros: Optional[int]) -> int:
    if total_zeros is None:
        raise ZeroReduction("zero bound is not certified")
    return max(total_zeros - 1, 0)


def contribution_table_p3(residue_pair: tuple[int, int], nu: int, a: int = 1) -> ContributionRow:
    """Bounds on the contributions to n_A from infinity and the pair of classes (0, +-b).

    ``residue_pair`` is the reduction of (alpha' : beta) with alpha = 3 alpha';
    ``a`` is the unit part of A (a square mod 3).  Zeros of the logarithm on the
    class of infinity come in pairs t, -t giving one pair of points; each zero
    t != 0 on the class of (0, b) gives one point, its negative lying on (0, -b).
    """
    if nu not in EVEN:
        raise ValueError("nu must be one of 2, 4, 6, 8")
    if a % 3 != 1:
        raise ValueError("a must be a square modulo 3")
    inf_series = expand_at_infinity(3, nu, a, alpha_prime=True).normalized_series
    at_inf = family_zero_bound(inf_series, residue_pair).max_zeros
    b = hensel_sqrt(PadicNumber.from_rational(3, a))
    sq_series = expand_at_square_class(3, nu, b, alpha_prime=True).normalized_series
    at_sq = family_zero_bound(sq_series, residue_pair).max_zeros
    return ContributionRow(tuple(residue_pair), nu, _nontrivial(at_inf) // 2, _nontrivial(at_sq))


def contribution_table_p3_full(a: int = 1) -> dict:
    return {(pair, nu): contribution_table_p3(pair, nu, a) for pair in P1_F3 for nu in EVEN}


def p3_even_bound(nu: int) -> int:
    """n_A bound for v_3(A) = nu even, as the worst row of the contribution table."""
    return max(contribution_table_p3(pair, nu).total for pair in P1_F3)


def p7_extra_solutions(nu: int = 4) -> dict:
    """Roots in F_7 (with multiplicity) of the reduced square-class logarithm over t,
    for beta = 1 and every alpha' mod 7 and every square unit part a mod 7."""
    out = {}
    for a in (1, 2, 4):
        b = hensel_sqrt(PadicNumber.from_rational(7, a))
        s = expand_at_square_class(7, nu, b, alpha_prime=True).normalized_series
        for alpha in range(7):
            out[(alpha, a)] = count_extra_solutions_mod_p(s, 7, (alpha, 1))
    return out


# -- rank fixtures ------------------------------------------------------------------------------

@dataclass(frozen=True)
class RankFixture:
    A: Factorization
    rank: int
    n_A_known: Optional[int]
    n_A_is_lower_bound: bool
    provenance: str

    @property
    def d_A(self) -> int:
        return trivial_point_count(self.A)

    def n_A_text(self) -> str:
        if self.n_A_known is None:
            return "-"
        return (">=" if self.n_A_is_lower_bound else "") + str(self.n_A_known)


def parse_fixture_line(line: str) -> Optional[RankFixture]:
    body = line.split("#", 1)[0].strip()
    if not body:
        return None
    parts = [x.strip() for x in body.split("|")]
    if len(parts) != 4:
        raise FixtureError(f"expected 'A | rank | n_A | provenance', got {line!r}")
    a_text, rank_text, n_text, provenance = parts
    try:
        A = parse_factored(a_text)
        rank = int(rank_text)
    except ValueError as exc:
        raise FixtureError(str(exc)) from exc
    if rank < 0:
        raise FixtureError("negative rank")
    lower = n_text.startswith(">=")
    if n_text == "-":
        n = None
    else:
        try:
            n = int(n_text[2:] if lower else n_text)
        except ValueError as exc:
            raise FixtureError(f"bad n_A field {n_text!r}") from exc
    return RankFixture(A, rank, n, lower, provenance)


def load_fixtures(path=None, name: str = "seven_point_candidates.txt") -> list[RankFixture]:
    if path is None:
        text = resources.files("quintic_chabauty.data").joinpath(name).read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    out = []
    for line in text.splitlines():
        rec = parse_fixture_line(line)
        if rec is not None:
            out.append(rec)
    return out


def rank_table_fixtures() -> list[RankFixture]:
    return load_fixtures(name="ranks_small_n.txt")


def candidate_table_fixtures() -> list[RankFixture]:
    return load_fixtures(name="seven_point_candidates.txt")
