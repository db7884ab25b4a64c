import itertools
from fractions import Fraction
from math import log

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import FIBONACCI, two_vertex_bounded_tower, stationary
from coverforge import (AlphabetTooLarge, Arrow, CoverTower, DegenerateCone, DiGraph,
                        FactorTooRare, NotTelescopable, SAdicSystem, Substitution,
                        check_chain_transitive, check_minimal, check_transitive,
                        enumerate_closed_walks, ergodic_count_bound, full_shift_oracle,
                        linear_recurrence_constants, measure_value_bound, minimal_thread,
                        odometer_cover, orbit, ostrowski_cover, project, rauzy_tower,
                        return_words, sadic_to_cover, special_vertex_counts, sturmian_oracle,
                        sturmian_word, telescoped_winding, uniform_rigidity_check,
                        unique_ergodicity_diameters)
from coverforge.analysis import hilbert_cross_ratio


def squares_tower(depth):
    subs = [Substitution.from_dict({"a": "a" * (n * n) + "b", "b": "a" + "b" * (n * n)})
            for n in range(1, depth + 1)]
    return sadic_to_cover(SAdicSystem(subs))


def two_components_at_level_two():
    g0 = DiGraph(["e"], [Arrow("e", "e", 1, "0"), Arrow("e", "e", 1, "1")])
    g2 = DiGraph(["x", "y"], [Arrow("x", "x", 1, "0"), Arrow("y", "y", 1, "1")])
    return CoverTower([g0, g0, g2], [[(0,), (1,)], [(0,), (1,)]])


# ---------------------------------------------------------------- chain transitivity

def test_chain_transitivity():
    assert check_chain_transitive(ostrowski_cover((2, 2, 2), 3)).verified
    v = check_chain_transitive(two_components_at_level_two())
    assert v.refuted and v.level == 2
    assert check_chain_transitive(rauzy_tower(full_shift_oracle(2, 5), 4)).verified


# ---------------------------------------------------------------- minimality

def test_minimality_examples():
    t = ostrowski_cover((3,) * 8, 8)
    for m in range(6):
        v = check_minimal(t, m)
        assert v.verified and v.level == m + 2
    v = check_minimal(stationary({"1": "1", "2": "1221"}, 5))
    assert v.refuted and v.witness["cycle"] == (0,)


def test_two_vertex_bounded_arrow_tower_is_minimal():
    # only an arrow keeps weight one; every loop still spreads over the whole graph
    v = check_minimal(two_vertex_bounded_tower(4))
    assert v.verified and v.level == 1


def test_minimality_undecided_without_enough_depth():
    assert check_minimal(ostrowski_cover((2, 2), 2), 1).undecided


def _covers_by_brute_force(t, m, n, max_len):
    everything = set(range(len(t.levels[m].arrows)))
    return all(set(t.telescoped_path(m, n, w)) >= everything
               for w in enumerate_closed_walks(t.levels[n], max_len))


images = st.text(alphabet="ab", min_size=1, max_size=3)


@given(images, images, st.integers(1, 4))
@settings(max_examples=60, deadline=None)
def test_minimal_witness_against_closed_walks(img_a, img_b, depth):
    if set(img_a + img_b) != {"a", "b"}:
        return
    t = stationary({"a": img_a, "b": img_b}, depth)
    v = check_minimal(t, 0)
    if v.verified:
        assert _covers_by_brute_force(t, 0, v.level, 4)
        for n in range(1, v.level):
            assert not _covers_by_brute_force(t, 0, n, 4)


# ---------------------------------------------------------------- transitivity

def test_transitivity_examples():
    t = ostrowski_cover((2,) * 5, 5)
    assert check_transitive(t, 0, 4).verified
    assert check_minimal(t, 0).verified
    assert check_transitive(two_components_at_level_two(), 0, 2).refuted
    full = rauzy_tower(full_shift_oracle(2, 5), 4)
    v = check_transitive(full, 1, 3)
    assert v.verified and v.level == 2
    assert len(v.witness) == 14
    for loop, lifted in v.witness.items():
        assert full.levels[2].is_loop(lifted)
        assert set(loop) <= set(full.telescoped_path(1, 2, lifted))


def test_subpath_transitivity():
    full = rauzy_tower(full_shift_oracle(2, 6), 5)
    v = check_transitive(full, 1, 3, mode="subpath")
    assert v.verified
    for loop, lifted in v.witness.items():
        image = full.telescoped_path(1, v.level, lifted)
        assert any(image[i:i + len(loop)] == loop for i in range(len(image)))


# ---------------------------------------------------------------- unique ergodicity

def float_diameter(matrix):
    a = np.array(matrix, dtype=float)
    best = 0.0
    for x, y in itertools.combinations(a, 2):
        best = max(best, log(max(x / y)) + log(max(y / x)))
    return best


def test_fibonacci_cone_shrinks():
    diam = unique_ergodicity_diameters(stationary(FIBONACCI, 20))
    assert diam[-1].level == 20
    assert diam[-1].below(1e-6)
    assert all(a.ratio >= b.ratio for a, b in zip(diam[1:], diam[2:]))


def test_squares_tower_keeps_two_directions():
    t = squares_tower(30)
    diam = unique_ergodicity_diameters(t, base=1)
    assert diam[-1].above(0.5)
    assert abs(diam[-1].diameter - float_diameter(telescoped_winding(t, 1, 30))) < 1e-9


def test_identity_does_not_contract():
    g = DiGraph(["e"], [Arrow("e", "e"), Arrow("e", "e")])
    t = CoverTower([g] * 4, [[(0, 1), (0, 0, 1)]] + [[(0,), (1,)]] * 2)
    ratios = [d.ratio for d in unique_ergodicity_diameters(t)]
    assert ratios[0] == ratios[1] == ratios[2] == hilbert_cross_ratio([[1, 1], [2, 1]])


def test_degenerate_cone():
    with pytest.raises(DegenerateCone):
        unique_ergodicity_diameters(stationary({"a": "a", "b": "aa"}, 2))


@given(st.lists(st.lists(st.integers(1, 9), min_size=2, max_size=2), min_size=2, max_size=2))
@settings(max_examples=60, deadline=None)
def test_cross_ratio_matches_float_oracle(rows):
    assert abs(log(hilbert_cross_ratio(rows)) - float_diameter(rows)) < 1e-9


# ---------------------------------------------------------------- specials and bounds

def test_special_counts():
    t = rauzy_tower(sturmian_oracle((1,) * 40, 13), 12)
    counts = {(c.left, c.right, c.bispecial) for c in map(special_vertex_counts, t.levels[1:])}
    assert counts == {(1, 1, 0), (1, 1, 1)}
    full = rauzy_tower(full_shift_oracle(2, 4), 3)
    for n, g in enumerate(full.levels):
        c = special_vertex_counts(g)
        assert (c.left, c.right, c.bispecial) == (2 ** n,) * 3


def test_measure_value_bounds():
    t = rauzy_tower(sturmian_oracle((1,) * 40, 13), 12)
    values = {measure_value_bound(g) for g in t.levels[1:]}
    assert values == {3, 6}
    full = rauzy_tower(full_shift_oracle(2, 4), 3)
    assert measure_value_bound(full.levels[1]) == 12
    assert measure_value_bound(full.levels[2]) == 24


def test_ergodic_count_bounds():
    assert ergodic_count_bound(rauzy_tower(sturmian_oracle((1,) * 40, 9), 8)) == 2
    assert ergodic_count_bound(rauzy_tower(full_shift_oracle(2, 4), 3)) == 3
    periodic = rauzy_tower(_periodic_oracle("001", 6), 5)
    assert ergodic_count_bound(periodic) == 1
    with pytest.raises(AlphabetTooLarge):
        ergodic_count_bound(rauzy_tower(full_shift_oracle(3, 2), 1))


def _periodic_oracle(period, n_max):
    from coverforge import LanguageOracle
    return LanguageOracle.from_word(period * (n_max + 3), n_max)


# ---------------------------------------------------------------- uniform rigidity

@pytest.mark.parametrize("q", [2, 3, (2, 3, 5, 2)])
def test_odometers_are_detected(q):
    t = odometer_cover(q, 4)
    v = uniform_rigidity_check(t)
    assert v.verified
    expected = [q] * 3 if isinstance(q, int) else list(q[:3])
    assert list(v.witness.q) == expected


def test_ostrowski_is_not_an_odometer():
    v = uniform_rigidity_check(ostrowski_cover((1,) * 8, 8))
    assert v.undecided and v.level == 8


def test_rigidity_periods_return_threads_to_their_cylinder():
    t = odometer_cover((2, 3, 2, 2), 4)
    v = uniform_rigidity_check(t)
    for n, period in enumerate(v.witness.periods[:-1]):
        for a in range(len(t.levels[4].arrows)):
            for o in range(0, t.levels[4].weight(a), 5):
                x = project(t, 4, a, o)
                assert orbit(t, x, period, truncate=True)[-1].footprint(n)[0] == x.footprint(n)[0]


def test_odometer_with_two_vertex_levels():
    # level 1 is a 2-cycle wrapping once around the base loop; level 2 a 4-cycle over it
    g0 = DiGraph(["e"], [Arrow("e", "e")])
    g1 = DiGraph.from_edges([("a", "b"), ("b", "a")])
    g2 = DiGraph.from_edges([(str(i), str((i + 1) % 4)) for i in range(4)])
    t = CoverTower([g0, g1, g2], [[(0,), (0,)], [(0,), (1,), (0,), (1,)]])
    v = uniform_rigidity_check(t)
    assert v.verified and v.witness.q == (2,)


# ---------------------------------------------------------------- linear recurrence

def test_fibonacci_constants():
    rc = linear_recurrence_constants(stationary(FIBONACCI, 12), 2000, 6)
    assert (rc.K1, rc.K2) == (2, 1)
    assert rc.K == 2
    assert rc.L == rc.D * 4


def test_equal_column_sums():
    rc = linear_recurrence_constants(stationary({"a": "abab", "b": "abba"}, 4), 500, 3)
    assert (rc.K1, rc.K2) == (4, 4)
    assert rc.K == 1


def test_not_telescopable():
    with pytest.raises(NotTelescopable):
        linear_recurrence_constants(stationary({"1": "1", "2": "1221"}, 4), 100, 2)


def test_return_words():
    assert return_words("01" * 10, "0") == {"01"}
    assert return_words("000", "0") == {"0"}
    assert return_words(sturmian_word((1,) * 40, 10_000), "101") == {"101", "10"}
    with pytest.raises(FactorTooRare):
        return_words("0110", "00")
