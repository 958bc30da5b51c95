from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import brute_points, brute_points_mod_p
from quintic_chabauty.core_arith import factorize, parse_factored
from quintic_chabauty.curve_points import (
    PointClass,
    RationalPoint,
    SearchReport,
    all_points_lift_to_torsion,
    classify_point,
    make_point,
    points_mod_p,
    rational_torsion_points,
    search_points,
    torsion_4a_exponents,
)
from quintic_chabauty.errors import BadReduction


def affine(report):
    return {(pt.x, pt.y) for pt in report.points if not pt.is_infinity}


def test_flagship_curve():
    rep = search_points(factorize(324), 100, 3)
    want = {(0, 18), (0, -18), (-3, 9), (-3, -9), (6, 90), (6, -90)}
    assert affine(rep) == {(Fraction(x), Fraction(y)) for x, y in want}
    assert rep.points[0].is_infinity
    assert rep.total_found == 7 and rep.n_A_lower == 2 and rep.d_A == 3


def test_torsion_example_in_search():
    rep = search_points(parse_factored("2^8*5^5"), 100, 3)
    assert (Fraction(20), Fraction(2000)) in affine(rep)
    assert (Fraction(20), Fraction(-2000)) in affine(rep)
    assert rep.n_A_lower == 1 and rep.total_found == 3


def test_no_points_found_for_2304():
    rep = search_points(parse_factored("2^8*3^2"), 10_000, 10)
    assert rep.n_A_lower == 0


@pytest.mark.parametrize("A", [324, 1, -1, 2, 243, -32, 800000, 18, 7, 4, 5**5, 2**6 * 9])
def test_search_matches_brute_force(A):
    rep = search_points(factorize(A), 30, 3)
    assert affine(rep) >= brute_points(A, 30, 3)
    # anything beyond brute force is a forced torsion point outside the box
    extra = affine(rep) - brute_points(A, 30, 3)
    assert all(classify_point(A, x, y) is not PointClass.NONTRIVIAL for x, y in extra)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=-2000, max_value=2000).filter(lambda n: n != 0))
def test_search_matches_brute_force_random(A):
    f = factorize(A)
    rep = search_points(f, 8, 2)
    box = {pt for pt in affine(rep) if abs(pt[0].numerator) <= 8 * pt[0].denominator}
    assert box == brute_points(A, 8, 2)


def test_filter_moduli_and_workers_do_not_change_results():
    f = factorize(324)
    base = search_points(f, 2000, 4)
    assert search_points(f, 2000, 4, moduli=()) == base
    assert search_points(f, 2000, 4, moduli=(7, 9, 16)) == base
    assert search_points(f, 2000, 4, block_size=997) == base
    assert search_points(f, 2000, 4, workers=2, block_size=5000) == base


def test_report_invariants():
    for A in (324, 800000, 243, 1, parse_factored("2^2*3^4*7^4").value()):
        rep = search_points(factorize(A), 300, 4)
        trivial = sum(pt.classification in (PointClass.INFINITY, PointClass.X_ZERO, PointClass.Y_ZERO)
                      for pt in rep.points)
        assert rep.total_found == len(rep.points) == trivial + 2 * rep.n_A_lower
        assert rep.d_A == trivial
        pts = affine(rep)
        assert all((x, -y) in pts for x, y in pts)
        assert all(pt.on_curve(A) for pt in rep.points)
        keys = [pt.sort_key() for pt in rep.points]
        assert keys == sorted(keys)


def test_report_round_trip():
    rep = search_points(factorize(324), 100, 3)
    assert SearchReport.from_dict(rep.to_dict()) == rep


def test_rational_torsion_points():
    pts = rational_torsion_points(factorize(800000))
    assert [str(p) for p in pts] == ["oo", "(20, -2000)", "(20, 2000)"]
    pts = rational_torsion_points(factorize(243))
    assert [str(p) for p in pts] == ["oo", "(-3, 0)"]
    assert [str(p) for p in rational_torsion_points(factorize(7))] == ["oo"]
    assert len(rational_torsion_points(factorize(1))) == 4


def test_torsion_4a_exponents_matches_points():
    for text in ("2^8*5^5", "2^3*5^5", "2^8*5^1", "1", "3^5", "2^8*5^5*3^10"):
        f = parse_factored(text)
        has = any(p.classification is PointClass.TORSION_4A for p in rational_torsion_points(f))
        assert torsion_4a_exponents(f) == has


def test_classification():
    assert classify_point(324, 0, 18) is PointClass.X_ZERO
    assert classify_point(243, -3, 0) is PointClass.Y_ZERO
    assert classify_point(800000, 20, 2000) is PointClass.TORSION_4A
    assert classify_point(324, 6, -90) is PointClass.NONTRIVIAL
    assert classify_point(324, None, None) is PointClass.INFINITY
    with pytest.raises(ValueError):
        classify_point(324, 1, 1)
    pt = make_point(324, -3, 9)
    assert RationalPoint.from_dict(pt.to_dict()) == pt


def test_points_mod_three():
    assert set(points_mod_p(4, 3)) == {None, (0, 1), (0, 2), (2, 0)}
    assert set(points_mod_p(2, 3)) == {None, (2, 1), (2, 2), (1, 0)}
    assert set(points_mod_p(3, 3)) == {None, (0, 0), (1, 1), (1, 2)}


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_points_mod_p_matches_brute_force(p):
    for A in range(p):
        assert sorted(pt for pt in points_mod_p(A, p) if pt is not None) == brute_points_mod_p(A, p)


def test_lifting_examples():
    for A in (1, 243, 3125, 759375):
        assert all_points_lift_to_torsion(factorize(A), 11)
    assert not all_points_lift_to_torsion(factorize(324), 11)
    with pytest.raises(BadReduction):
        all_points_lift_to_torsion(factorize(22), 11)
    with pytest.raises(BadReduction):
        all_points_lift_to_torsion(factorize(3), 5)


def test_lifting_agrees_with_congruence_at_eleven():
    # A = 1, 3, 9 mod 11 always lifts; among squares that is the only way
    for A in range(1, 2000):
        if A % 11 == 0 or A % 5 == 0 or A % 2 == 0:
            continue
        lifts = all_points_lift_to_torsion(factorize(A), 11)
        if A % 11 in (1, 3, 9):
            assert lifts
        elif A % 11 != 7:
            assert not lifts
    for b in range(1, 200):
        if b % 11 and b % 5 and b % 2:
            A = b * b
            assert all_points_lift_to_torsion(factorize(A), 11) == (A % 11 in (1, 3, 9))


def test_only_infinity_over_f11_when_a_is_seven():
    # x^5 + 7 takes the values 6, 7, 8 mod 11, none a square
    assert points_mod_p(7, 11) == [None]


def test_bad_search_input():
    with pytest.raises(ValueError):
        search_points(parse_factored("2^10"), 10, 1)
    with pytest.raises(ValueError):
        search_points(factorize(3), 0, 1)
