import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ordolex.errors import NotNested, RankDeficient, Underdetermined
from ordolex.features import Design
from ordolex.ingest import LanguageRecord, OrderLabel
from ordolex.metrics import CorpusStats
from ordolex.stats import f_change, hierarchical_from_design, hierarchical_regression, ols_fit
from ordolex.synthetic import regression_suite


def test_exact_fit():
    fit = ols_fit([[1.0], [2.0], [3.0]], [2.0, 4.0, 6.0])
    assert fit.rss == pytest.approx(0.0, abs=1e-20)
    assert fit.coefficients[1] == pytest.approx(2.0, rel=1e-12)
    assert fit.coefficients[0] == pytest.approx(0.0, abs=1e-12)


def test_simple_regression_closed_form():
    x, y = [1, 2, 3, 5], [1, 2, 3, 4]
    # Sxy = 6.5, Sxx = 8.75, Syy = 5
    fit = ols_fit(np.array(x, float).reshape(-1, 1), y)
    slope = 6.5 / 8.75
    assert fit.coefficients[1] == pytest.approx(slope, rel=1e-12)
    assert fit.coefficients[0] == pytest.approx(2.5 - slope * 2.75, rel=1e-12)
    assert fit.rss == pytest.approx(5 - 6.5 ** 2 / 8.75, rel=1e-12)
    assert fit.tss == pytest.approx(5.0)
    assert fit.f_statistic == pytest.approx(56.333333333333236, rel=1e-10)
    assert fit.f_p_value == pytest.approx(0.017292370176009153, rel=1e-9)


def test_rank_deficient_names_column():
    X = np.column_stack([np.arange(6.0), np.arange(6.0) ** 2, np.arange(6.0)])
    with pytest.raises(RankDeficient) as err:
        ols_fit(X, np.arange(6.0), ["a", "b", "a_copy"])
    assert len(err.value.columns) == 1


def test_underdetermined():
    with pytest.raises(Underdetermined):
        ols_fit([[1.0, 2.0], [2.0, 1.0], [3.0, 3.0]], [1, 2, 3])


def test_duplicate_column_rejected_not_computed():
    rng = np.random.default_rng(0)
    x = rng.normal(size=(20, 2))
    y = rng.normal(size=20)
    ols_fit(x, y)
    with pytest.raises(RankDeficient):
        ols_fit(np.column_stack([x, x[:, 1]]), y)


def test_f_change_guards():
    rng = np.random.default_rng(1)
    X, y = rng.normal(size=(30, 3)), rng.normal(size=30)
    small = ols_fit(X[:, :1], y, ["a"])
    with pytest.raises(NotNested):
        f_change(small, small)
    other = ols_fit(X[:, :2], rng.normal(size=30), ["a", "b"])
    with pytest.raises(NotNested):
        f_change(small, other)
    with pytest.raises(NotNested):
        f_change(ols_fit(X[:, 2:], y, ["c"]), ols_fit(X[:, :2], y, ["a", "b"]))


def test_noise_column_not_significant():
    rng = np.random.default_rng(42)
    x = rng.normal(size=(40, 1))
    y = 1.0 + 2.0 * x[:, 0] + rng.normal(0, 0.5, size=40)
    noise = rng.normal(size=(40, 1))
    r, f = ols_fit(x, y, ["x"]), ols_fit(np.hstack([x, noise]), y, ["x", "noise"])
    ch = f_change(r, f)
    expected = ((r.rss - f.rss) / 1) / (f.rss / (40 - 2 - 1))
    assert ch.f == pytest.approx(expected, rel=1e-12)
    assert ch.p_value > 0.05


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_residual_orthogonality_and_monotone_rss(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(12, 50))
    p = int(rng.integers(1, 8))
    X = rng.normal(size=(n, p)) * rng.uniform(0.1, 100, size=p)
    y = X @ rng.normal(size=p) + rng.normal(size=n)
    fits = [ols_fit(X[:, :k], y) for k in range(1, p + 1)]
    A = np.column_stack([np.ones(n), X])
    resid = y - A @ np.array(fits[-1].coefficients)
    for j in range(A.shape[1]):
        assert abs(resid @ A[:, j]) <= 1e-8 * np.linalg.norm(A[:, j]) * max(1.0, np.linalg.norm(y))
    rss = [f.rss for f in fits]
    assert all(b <= a * (1 + 1e-12) for a, b in zip(rss, rss[1:]))
    assert fits[-1].rss <= fits[-1].tss + 1e-9


def test_hierarchy_null_length_gives_large_p():
    records, stats = regression_suite(n=300, seed=3, length_weight=0.0)
    rep = hierarchical_regression(records, stats)
    assert [s.model_level for s in rep] == [1, 2, 3, 4]
    assert rep.steps[0].f_change is None
    for s in rep.steps[1:]:
        assert s.f_change_p > 0.05


def test_single_family_makes_model3_equal_model2():
    records, stats = regression_suite(n=60, seed=5, families=1)
    rep = hierarchical_regression(records, stats)
    m2, m3 = rep.step(2), rep.step(3)
    assert m3.fit == m2.fit
    assert (m3.f_change, m3.f_change_p) == (0.0, 1.0)


def test_copied_level4_columns_rank_deficient():
    rng = np.random.default_rng(2)
    X = rng.normal(size=(30, 3))
    X = np.column_stack([X, X[:, 2]])
    d = Design(X, rng.normal(size=30), ["n1", "area", "fam", "fam_copy"], [f"l{i}" for i in range(30)],
               {"order": [0], "area": [1], "family": [2], "length": [3]})
    with pytest.raises(RankDeficient):
        hierarchical_from_design(d)


def test_omit_area_chain():
    records, stats = regression_suite(n=200, seed=8)
    rep = hierarchical_regression(records, stats, omit_area=True)
    assert [s.model_level for s in rep] == [1, 3, 4]
    assert not any(n.startswith(("latitude", "macroarea")) for n in rep.steps[-1].fit.column_names)
