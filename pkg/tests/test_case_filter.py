import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quintic_chabauty import case_filter as cf
from quintic_chabauty.core_arith import Factorization, factorize, parse_factored
from quintic_chabauty.errors import FixtureError

STAGE2 = {"3^2*7^4", "3^4", "2^2*3^4", "2^2*3^4*7^4", "2^4*3^4*7^4", "2^6*3^2", "2^8*3^2", "2^8*3^2*7^4"}

# (infinity, square class) for nu = 2, 4, 6, 8
P3_TABLE = {
    (0, 1): [(0, 1), (0, 1), (0, 1), (0, 1)],
    (1, 0): [(1, 0), (1, 1), (1, 0), (1, 0)],
    (1, 1): [(0, 1), (0, 2), (0, 0), (0, 0)],
    (1, -1): [(1, 1), (1, 0), (1, 0), (1, 0)],
}


def sources(verdicts):
    return {v.source for v in verdicts}


def test_proposition_examples():
    assert sources(cf.proposition_filter(parse_factored("7^5"))) == {cf.PROP_FIVE}
    assert sources(cf.proposition_filter(parse_factored("11^2"))) == {cf.PROP_EVEN}
    assert sources(cf.proposition_filter(parse_factored("17^3"))) == {cf.PROP_ODD}
    assert cf.proposition_filter(factorize(324)) == []
    assert cf.proposition_filter(parse_factored("13^3")) == []


def test_lemma_examples():
    v = [x for x in cf.lemma_filters(factorize(324)) if x.source == cf.LEMMA_P3_EVEN]
    assert [x.bound for x in v] == [2]
    assert cf.best_bound(parse_factored("2^6*3^2")).bound == 2
    assert cf.best_bound(parse_factored("5^2")).bound == 1
    assert cf.best_bound(factorize(324)).bound == 2
    assert cf.best_bound(parse_factored("3^6")).bound == 1
    assert cf.best_bound(factorize(7)).bound == 1
    assert cf.best_bound(parse_factored("5^5")).bound == 2   # A = -1 mod 3 and nothing else
    assert cf.best_bound(factorize(4)).bound == 1      # A = 1 mod 3
    assert cf.best_bound(parse_factored("3^5")).bound == 2
    assert cf.best_bound(parse_factored("3^5*5^5")).bound == 2


def test_torsion_lifting_verdict():
    v = cf.torsion_lifting_verdict(parse_factored("3^5"))
    assert v.bound == 1 and v.source == cf.TORSION_LIFT
    assert cf.torsion_lifting_verdict(factorize(324)) is None
    assert cf.torsion_lifting_verdict(factorize(22)) is None


def test_census_count_and_membership():
    census = cf.enumerate_post_proposition_candidates()
    assert census.count == len(census) == cf.CENSUS_COUNT == 225_000
    assert cf.enumerate_post_proposition_candidates(include_negative=True).count == 450_000
    vecs = set(census.exponent_vectors())
    assert len(vecs) == 225_000
    assert (0,) * 6 in vecs
    assert (0, 0, 0, 5, 0, 0) not in vecs
    assert (0, 0, 0, 0, 2, 0) not in vecs
    first = next(iter(census))
    assert first == Factorization(1, ())


def test_census_agrees_with_proposition():
    # a sample of census members: none is already settled by the proposition
    census = cf.enumerate_post_proposition_candidates()
    for i, f in enumerate(census):
        if i % 97 == 0:
            assert cf.proposition_filter(f) == []


@settings(max_examples=300)
@given(st.integers(min_value=0, max_value=9),
       st.dictionaries(st.sampled_from([2, 5, 7, 11, 13, 17, 19, 23]), st.integers(min_value=1, max_value=9),
                       max_size=4),
       st.sampled_from([1, -1]))
def test_every_v3_is_covered(v3, others, sign):
    ex = dict(others)
    if v3:
        ex[3] = v3
    f = Factorization.from_exponents(ex, sign)
    b = cf.best_bound(f)
    assert b.bound <= 2
    assert cf.exponent_bound(ex, sign) == b.bound


def test_seven_point_chain():
    chain = cf.seven_point_candidates()
    assert len(chain.stage1) == 20
    assert {str(f) for f in chain.stage2} == STAGE2
    assert chain.congruence_agrees
    assert all(f.mod(11) in (1, 3, 9) for f in chain.removed_by_lifting)
    assert factorize(324) in chain.stage2
    for f in chain.stage1:
        assert f.is_kth_power(2)
        ex = f.exponents
        assert set(ex) <= {2, 3, 7}
        assert ex.get(3) in (2, 4) and ex.get(7, 0) in (0, 4)


def test_six_point_candidates():
    six = cf.six_point_candidates()
    assert [c.A.value() for c in six.candidates] == [1, 243, 3125, 759375]
    assert all(c.residue_mod_11 == 1 and c.lifts_mod_11 for c in six.candidates)
    assert six.survivors == ()


def test_contribution_table_p3():
    full = cf.contribution_table_p3_full()
    for pair, cells in P3_TABLE.items():
        for nu, (inf_count, sq_count) in zip(cf.EVEN, cells):
            row = full[(pair, nu)]
            assert (row.infinity, row.square_class) == (inf_count, sq_count), (pair, nu)
    # same table for the other square unit class a = 4 (= 1 mod 3)
    assert {k: (r.infinity, r.square_class) for k, r in cf.contribution_table_p3_full(4).items()} == \
        {k: (r.infinity, r.square_class) for k, r in full.items()}
    with pytest.raises(ValueError):
        cf.contribution_table_p3((1, 0), 5)


def test_p3_even_bound_matches_lemma():
    assert [cf.p3_even_bound(nu) for nu in cf.EVEN] == [2, 2, 1, 1]
    for nu in cf.EVEN:
        f = parse_factored(f"3^{nu}*2")
        lemma = [v.bound for v in cf.lemma_filters(f) if v.source == cf.LEMMA_P3_EVEN]
        assert lemma == [cf.p3_even_bound(nu)]


def test_p7_extra_solutions():
    counts = cf.p7_extra_solutions(4)
    assert all(counts[(0, a)] == 2 for a in (1, 2, 4))   # -3 t + 3 a^-1 t^6: t = 0 twice
    assert max(counts.values()) == 2                      # at most 4 over the pair (0, +-b)


def test_fixtures_load():
    ranks = cf.rank_table_fixtures()
    cands = cf.candidate_table_fixtures()
    assert len(ranks) == 6 and len(cands) == 8
    assert {str(f.A) for f in cands} == STAGE2
    assert {f.rank: f.n_A_text() for f in ranks if f.rank >= 2} == {2: ">=3", 3: ">=4", 4: ">=6"}
    big = [f for f in ranks if f.rank == 4][0]
    assert str(big.A) == "3^4*7^4*19^4"


def test_rank_one_fixtures_respect_best_bound():
    for fx in cf.rank_table_fixtures() + cf.candidate_table_fixtures():
        if fx.rank == 1 and fx.n_A_known is not None:
            assert fx.n_A_known <= cf.best_bound(fx.A).bound


def test_fixture_parsing():
    rec = cf.parse_fixture_line("2^2*3^4 | 1 | 2 | known   # trailing note")
    assert rec.A == factorize(324) and rec.rank == 1 and rec.n_A_known == 2 and not rec.n_A_is_lower_bound
    assert rec.d_A == 3
    rec = cf.parse_fixture_line("3^4 | 2 | >=2 | x")
    assert rec.n_A_is_lower_bound and rec.n_A_text() == ">=2"
    assert cf.parse_fixture_line("7 | 0 | - | x").n_A_text() == "-"
    assert cf.parse_fixture_line("   # comment only") is None
    for bad in ("3^4 | 2 | 2", "3^4 | x | 2 | y", "3^4 | -1 | 2 | y", "3^4 | 1 | two | y", "q | 1 | 2 | y"):
        with pytest.raises(FixtureError):
            cf.parse_fixture_line(bad)


def test_load_fixtures_from_path(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("# header\n2^2*3^4 | 1 | 2 | a\n\n3^4 | 2 | >=2 | b\n")
    assert [str(f.A) for f in cf.load_fixtures(path)] == ["2^2*3^4", "3^4"]
