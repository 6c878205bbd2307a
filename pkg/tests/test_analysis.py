import math
from fractions import Fraction

import pytest

from unimodal_ranks import analysis as an
from unimodal_ranks.series import ZetaLaurent
from unimodal_ranks.tables import Family, RankTable, build_table


@pytest.fixture(scope="module")
def small():
    return {f: build_table(f, 60) for f in Family}


def test_moment_examples(small):
    u = small[Family.UNIMODAL]
    assert an.moments(u, 0).values == {n: t for n, t in enumerate(u.totals())}
    assert an.moments(u, 2)[3] == 10
    with pytest.raises(ValueError):
        an.moments(u, -1)


@pytest.mark.parametrize("family", [Family.UNIMODAL, Family.DURFEE, Family.PARTITION_RANK, Family.PARTITION_CRANK])
def test_odd_moments_vanish(family, small):
    for k in (1, 3, 5):
        assert set(an.moments(small[family], k).values.values()) == {0}


@pytest.mark.parametrize("family", list(Family))
def test_absolute_moment_relations(family, small):
    t = small[family]
    for k in (1, 2, 3, 4):
        signed, absolute = an.moments(t, k), an.moments(t, k, "absolute")
        for n in range(t.order + 1):
            assert absolute[n] >= abs(signed[n])
            if k % 2 == 0:
                assert absolute[n] == signed[n] >= 0


@pytest.mark.parametrize("family", [Family.UNIMODAL, Family.DURFEE])
def test_even_moments_grow_with_n(family, big_tables):
    t = big_tables[family.value]
    for k in (0, 2, 4):
        values = [an.row_moment(t, n, k) for n in range(t.order + 1)]
        assert all(a <= b for a, b in zip(values, values[1:]))


def test_verdict_rule():
    assert an._verdict([1.3, 1.2, 1.1], 0.15) is an.Verdict.MONOTONE
    assert an._verdict([1.05, 1.1, 1.08], 0.15) is an.Verdict.WITHIN
    assert an._verdict([1.5, 1.4, 1.3], 0.15) is an.Verdict.FAIL


def test_fake_main_term_passes(small):
    t = small[Family.SEMISTRICT]
    report = an.convergence_ratio(t, 2, "signed", [20, 40, 60], 0.0,
                                  main_term=lambda n: float(an.row_moment(t, n, 2)))
    assert report.ratios == (1.0, 1.0, 1.0) and report.passed


def test_grid_beyond_table(small):
    with pytest.raises(an.GridError, match="table --family unimodal --order 61"):
        an.convergence_ratio(small[Family.UNIMODAL], 0, "signed", [61])


def test_signed_odd_main_term_refused():
    with pytest.raises(ValueError):
        an.moment_main_term(Family.UNIMODAL, 1, "signed", 100)


def test_normalized_odd_moment_limit_is_zero(small):
    report = an.normalized_moment_limit(small[Family.UNIMODAL], 3, [20, 40, 60])
    assert report.exact == (0.0, 0.0, 0.0) and report.passed


def test_normalized_second_moment(big_tables):
    report = an.normalized_moment_limit(big_tables["unimodal"], 2, [300, 600, 1200], 0.05)
    assert report.passed


def test_empirical_cdf_examples(small):
    cdf = an.empirical_cdf(small[Family.UNIMODAL], 3)
    assert cdf(0.0) == Fraction(4, 6)
    assert cdf(-100) == 0 and cdf(100) == 1
    with pytest.raises(ValueError):
        an.empirical_cdf(small[Family.SEMISTRICT], 0)


@pytest.mark.parametrize("x", [0.1, 0.3, 0.77, 1.5])
def test_cdf_reflection(small, x):
    cdf = an.empirical_cdf(small[Family.DURFEE], 50)
    assert cdf(-x) == 1 - cdf.left(x)


def test_ks_degenerate_table():
    t = RankTable(Family.UNIMODAL, 2, (ZetaLaurent.monomial(0), ZetaLaurent.monomial(0), ZetaLaurent.monomial(0)))
    assert an.ks_distance(t, 2, "logistic") == pytest.approx(0.5)
    assert an.ks_distance(t, 2, "point-mass-at-1") == 1.0


def test_ks_point_mass_exact():
    cdf = an.StepCDF((0.5, 1.0, 2.0), (Fraction(1, 4), Fraction(1, 2), Fraction(1)))
    assert an.ks_distance_cdf(cdf, "point-mass-at-1") == 0.5


def test_ks_logistic_decreases(big_tables):
    for fam in ("unimodal", "durfee"):
        d = [an.ks_distance(big_tables[fam], n, "logistic") for n in (100, 300, 1000)]
        assert d[0] > d[1] > d[2] and d[2] < 0.05


def test_logconcavity_rule_checks_family(small):
    with pytest.raises(ValueError):
        an.logconcavity_scan(small[Family.DURFEE], "conjecture-4.1")
    with pytest.raises(ValueError):
        an.logconcavity_scan(small[Family.DURFEE], "custom")


def test_logconcavity_isolated_peak():
    row = ZetaLaurent.monomial(0, 5)
    t = RankTable(Family.UNIMODAL, 1, (row, row))
    report = an.logconcavity_scan(t, "custom", (1, 1), margin=1)
    assert report.certified and report.checked == 1


def test_logconcavity_threads_do_not_change_output(small):
    t = small[Family.UNIMODAL]
    one = list(an.scan_rows(t, (30, 60), 23, threads=1))
    many = list(an.scan_rows(t, (30, 60), 23, threads=3))
    assert one == many


def test_below_threshold_is_report_only(small):
    # the full m range at n = 36 has non-strict cases; nothing is asserted about them
    report = an.logconcavity_scan(small[Family.UNIMODAL], "custom", (36, 36))
    assert report.checked > 0
    assert report.to_dict()["certified"] == report.certified


def test_discriminant_report(big_tables):
    rep = an.lemma42_discriminant_check(big_tables["unimodal"], 0, [200, 400, 800], 0.2)
    assert all(math.isfinite(r) for r in rep.ratios)
    with pytest.raises(ValueError):
        an.lemma42_discriminant_check(big_tables["unimodal"], 5, [200])
