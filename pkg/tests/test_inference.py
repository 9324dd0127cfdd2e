import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from anova_oracle import split_plot, type3_within
from ordolex.errors import DegenerateDesign, DegenerateSample
from ordolex.stats import mixed_anova, t_test_ind


def test_identical_samples():
    r = t_test_ind([1, 2, 3], [1, 2, 3])
    assert r.statistic == 0.0
    assert r.p_value == 1.0


def test_pooled_variance_oracle():
    # means 2 and 3, pooled variance (2 + 10) / 6 = 2
    t_hand = (2 - 3) / math.sqrt(2 * (1 / 3 + 1 / 5))
    r = t_test_ind([1, 2, 3], [1, 2, 3, 4, 5])
    assert r.statistic == pytest.approx(t_hand, rel=1e-12)
    assert r.df1 == 6
    assert r.p_value == pytest.approx(0.3703147228597593, rel=1e-10)


def test_degenerate_samples():
    with pytest.raises(DegenerateSample):
        t_test_ind([1], [1, 2])
    with pytest.raises(DegenerateSample):
        t_test_ind([2, 2], [2, 2, 2])


samples = st.lists(st.floats(-100, 100), min_size=2, max_size=15)


@settings(max_examples=100)
@given(samples, samples)
def test_t_symmetry(a, b):
    try:
        r1 = t_test_ind(a, b)
    except DegenerateSample:
        return
    r2 = t_test_ind(b, a)
    assert r2.statistic == pytest.approx(-r1.statistic, rel=1e-9, abs=1e-12)
    assert r2.p_value == pytest.approx(r1.p_value, rel=1e-9, abs=1e-15)


SMALL = [("g1", 5, 7), ("g1", 6, 9), ("g2", 8, 8), ("g2", 10, 9)]


def test_small_split_plot_by_hand():
    r = mixed_anova(SMALL)
    assert r.between.statistic == pytest.approx(32 / 9)
    assert r.within.statistic == pytest.approx(8.0)
    assert r.interaction.statistic == pytest.approx(18.0)
    assert (r.between.df1, r.between.df2) == (1, 2)
    assert r.between.p_value == pytest.approx(0.2, rel=1e-10)
    assert r.within.p_value == pytest.approx(0.10557280900008414, rel=1e-10)
    assert r.interaction.p_value == pytest.approx(0.05131670194948621, rel=1e-10)


def test_all_identical_values():
    r = mixed_anova([(g, 3.0, 3.0) for g in ("A", "A", "B", "B", "C", "C")])
    for eff in r.effects():
        assert eff.statistic == 0.0 and eff.p_value == 1.0


@pytest.mark.parametrize("seed", range(5))
def test_balanced_matches_textbook(seed):
    rng = np.random.default_rng(seed)
    data = [(g, *rng.normal([5 + i, 6], 1.0)) for i, g in enumerate("ABC") for _ in range(6)]
    r = mixed_anova(data)
    ref = split_plot(data)
    for name in ("between", "within", "interaction"):
        assert getattr(r, name).statistic == pytest.approx(ref[name], rel=1e-10)


@pytest.mark.parametrize("seed", range(5))
def test_unbalanced_type1_and_type3(seed):
    rng = np.random.default_rng(100 + seed)
    sizes = {"SV": 9, "VS": 4, "free": 3}
    data = [(g, *rng.normal([6, 6 + (0.5 if g == "VS" else -0.4)], 0.7))
            for g, n in sizes.items() for _ in range(n)]
    t1 = mixed_anova(data, ss_type=1)
    ref = split_plot(data)
    for name in ("between", "within", "interaction"):
        assert getattr(t1, name).statistic == pytest.approx(ref[name], rel=1e-10)
    t3 = mixed_anova(data)
    assert t3.within.statistic == pytest.approx(type3_within(data), rel=1e-10)
    assert t3.interaction.statistic == pytest.approx(ref["interaction"], rel=1e-10)
    assert t3.between.statistic == pytest.approx(ref["between"], rel=1e-10)


def test_degenerate_designs():
    with pytest.raises(DegenerateDesign):
        mixed_anova([("SV", 1, 2)])
    with pytest.raises(DegenerateDesign):
        mixed_anova([("SV", 1, 2), ("SV", 2, 3)])
    with pytest.raises(DegenerateDesign):
        mixed_anova([("SV", 1, 2), ("SV", 2, 3), ("VS", 1, 1)])


def test_cells():
    r = mixed_anova(SMALL)
    assert [(c.group, c.n, c.mean_1, c.mean_2) for c in r.cells] == [
        ("g1", 2, 5.5, 8.0), ("g2", 2, 9.0, 8.5)]
