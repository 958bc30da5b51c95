import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import count_roots_in_pZp, is_squarefree_poly
from quintic_chabauty.errors import PrecisionExhausted, UnknownTableEntry, ZeroReduction
from quintic_chabauty.expansions import expand_v3_zero_class
from quintic_chabauty.padic import LinearForm, PadicNumber
from quintic_chabauty.series import TruncatedSeries, evaluate_linear_form, series_truncate
from quintic_chabauty.zero_bounds import (
    count_extra_solutions_mod_p,
    family_zero_bound,
    residue_class_bound,
    root_witnesses,
    strassmann_bound,
)

coeff = st.integers(min_value=-60, max_value=60)


def lf_series(p, alpha_part, beta_part):
    """Linear-form polynomial sum(alpha_part[m] alpha + beta_part[m] beta) t**m."""
    n = max(len(alpha_part), len(beta_part))
    pad = lambda xs: list(xs) + [0] * (n - len(xs))
    coeffs = tuple(LinearForm(PadicNumber.from_rational(p, x), PadicNumber.from_rational(p, y))
                   for x, y in zip(pad(alpha_part), pad(beta_part)))
    return TruncatedSeries(p, coeffs, "linear_form")


def taylor_shift(coeffs, r):
    """Coefficients of f(r + t)."""
    out = list(coeffs)
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] += r * out[j + 1]
    return out


def roots_in_Zp(coeffs, p):
    total = 0
    for r in range(p):
        total += count_roots_in_pZp(taylor_shift(coeffs, r), p)
    return total


def test_examples():
    p = 3
    s = TruncatedSeries.from_values(p, [0, 1])
    assert strassmann_bound(s, 10).max_zeros == 1
    s = TruncatedSeries.from_values(p, [-3, 0, 1])
    res = strassmann_bound(s, 10)
    assert res.certified and res.max_zeros == 0 and res.nontrivial == 0


def test_v3_example_with_tail():
    p, alpha, A = 3, 2, 7
    s = TruncatedSeries.from_values(p, [0, 3 * alpha, Fraction(1, 2), 0, 0, 0, Fraction(-alpha, 4 * A), 0],
                                    tail_valuation_tenths=0)
    res = strassmann_bound(s, 10)
    assert res.certified and res.max_zeros == 2 and res.nontrivial == 1


@pytest.mark.parametrize("p", [3, 7])
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_strassmann_never_undercounts(p, data):
    deg = data.draw(st.sampled_from([3, 4]))
    coeffs = data.draw(st.lists(coeff, min_size=deg + 1, max_size=deg + 1))
    assume(coeffs[-1] != 0 and is_squarefree_poly(coeffs))
    exact = count_roots_in_pZp(coeffs, p)
    res = strassmann_bound(TruncatedSeries.from_values(p, coeffs), 10)
    assert res.certified
    assert res.max_zeros >= exact


@pytest.mark.parametrize("p", [3, 7])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_truncated_series_never_undercount(p, data):
    head = data.draw(st.lists(coeff, min_size=2, max_size=4))
    tail = data.draw(st.lists(coeff, min_size=1, max_size=3))
    coeffs = head + [p**2 * c for c in tail]
    assume(any(head) and coeffs[-1] != 0 and is_squarefree_poly(coeffs))
    s = series_truncate(TruncatedSeries.from_values(p, coeffs), len(head))
    res = strassmann_bound(s, 10)
    if res.certified:
        assert res.max_zeros >= count_roots_in_pZp(coeffs, p)


@settings(max_examples=100)
@given(st.sampled_from([3, 5, 7]), st.lists(coeff, min_size=2, max_size=6))
def test_shrinking_the_disc_never_adds_zeros(p, coeffs):
    assume(any(coeffs))
    s = TruncatedSeries.from_values(p, coeffs)
    counts = [strassmann_bound(s, d).max_zeros for d in (0, 5, 10, 20, 30)]
    assert counts == sorted(counts, reverse=True)


def test_uncertified_when_tail_may_dominate():
    s = TruncatedSeries.from_values(3, [0, 9], tail_valuation_tenths=0)
    res = strassmann_bound(s, 10)
    assert not res.certified and res.max_zeros is None
    with pytest.raises(PrecisionExhausted):
        strassmann_bound(TruncatedSeries(3, (PadicNumber.big_oh(3, 20),)), 10)


def test_v3_class_bound_over_units():
    rng = random.Random(11)
    for _ in range(10):
        A = rng.choice([1, 4, 7, 10, 13, 16, 19, 22, 25])
        alpha = rng.choice([1, 2, 4, 5, 7, 8])
        res = expand_v3_zero_class(A)
        scalar = evaluate_linear_form(res.normalized_series, alpha, 1)
        bound = strassmann_bound(scalar, 10)
        assert bound.certified and bound.max_zeros <= 2


def test_residue_class_bound():
    assert [residue_class_bound(n, 3) for n in (0, 1, 2)] == [1, 3, 3]
    with pytest.raises(UnknownTableEntry):
        residue_class_bound(3, 3)
    with pytest.raises(UnknownTableEntry):
        residue_class_bound(0, 7)
    assert residue_class_bound(0, 7, {(7, 0): 0}) == 1


def test_extra_solutions_mod_three():
    # t (alpha' - beta t - alpha' t**5)
    s = lf_series(3, [0, 1, 0, 0, 0, 0, -1], [0, 0, -1])
    assert [count_extra_solutions_mod_p(s, 3, (1, b)) for b in (-1, 0, 1)] == [0, 1, 2]


def test_extra_solution_errors():
    s = lf_series(3, [0, 3], [0, 0])
    with pytest.raises(ZeroReduction):
        count_extra_solutions_mod_p(s, 3, (1, 1))
    with pytest.raises(ValueError):
        count_extra_solutions_mod_p(lf_series(3, [1, 1], [0]), 3, (1, 0))


@pytest.mark.parametrize("p", [3, 7])
@settings(max_examples=100, deadline=None)
@given(data=st.data())
def test_family_bound_is_sound(p, data):
    A = data.draw(st.lists(coeff, min_size=2, max_size=4))
    B = data.draw(st.lists(coeff, min_size=2, max_size=4))
    ra = data.draw(st.integers(min_value=0, max_value=p - 1))
    rb = data.draw(st.integers(min_value=0, max_value=p - 1))
    assume(ra or rb)
    alpha = ra + p * data.draw(st.integers(min_value=-5, max_value=5))
    beta = rb + p * data.draw(st.integers(min_value=-5, max_value=5))
    n = max(len(A), len(B))
    f = [alpha * (A[i] if i < len(A) else 0) + beta * (B[i] if i < len(B) else 0) for i in range(n)]
    while f and f[-1] == 0:
        f.pop()
    assume(len(f) > 1 and is_squarefree_poly(f))
    res = family_zero_bound(lf_series(p, A, B), (ra, rb))
    if res.certified:
        assert res.max_zeros >= roots_in_Zp(f, p)


def test_root_witnesses_for_v3_class():
    for A in (1, 4, 7):
        for alpha in (1, 2, 4, 5):
            res = expand_v3_zero_class(A)
            scalar = evaluate_linear_form(res.normalized_series, alpha, 1)
            wit = root_witnesses(scalar, 2)
            assert wit == [(3 * alpha % 9, True)]
