from collections import Counter
from fractions import Fraction
from math import sqrt

import pytest
from hypothesis import given, settings, strategies as st

from coverforge import (IETConfig, InvalidWindow, KeaneTie, NoGrowth, NotProlongable,
                        PrefixTooShort, ReduciblePermutation, ReturnTimeExceeded, Substitution,
                        convergent_denominators, full_shift_oracle, iet_rauzy_induction,
                        induced_substitution_check, induction_window, odometer_cover,
                        ostrowski_cover, rauzy_step, standard_words, sturmian_oracle,
                        sturmian_word, substitution_fixed_point, validate_tower, weights_vector)


def convergents_oracle(cf):
    # denominators of [0; a_1, ..., a_k] through exact fractions
    out = [1]
    for k in range(1, len(cf) + 1):
        x = Fraction(0)
        for a in reversed(cf[:k]):
            x = 1 / (a + x)
        out.append(x.denominator)
    return out


@given(st.lists(st.integers(1, 6), min_size=1, max_size=8))
@settings(max_examples=100, deadline=None)
def test_convergent_denominators(cf):
    assert convergent_denominators(cf) == convergents_oracle(cf)


def test_ostrowski_examples():
    t = ostrowski_cover((3, 3, 3), 3)
    assert [a.weight for a in t.levels[3].arrows] == [33, 10]
    assert [int(weights_vector(ostrowski_cover((1,) * 5, 5), n)[0]) for n in range(6)] == \
        [1, 1, 2, 3, 5, 8]
    assert weights_vector(ostrowski_cover((2,), 1), 1).tolist() == [2, 1]
    with pytest.raises(ValueError):
        ostrowski_cover((1, 0), 2)


def test_odometer_weights():
    assert [int(weights_vector(odometer_cover(2, 3), n)[0]) for n in range(4)] == [1, 2, 4, 8]
    assert [int(weights_vector(odometer_cover((2, 3), 2), n)[0]) for n in range(3)] == [1, 2, 6]
    assert validate_tower(odometer_cover(3, 4)).legal


def test_standard_words_and_characteristic_word():
    words = standard_words((1, 1, 1, 1), 4)
    assert words == ["1", "0", "1", "10", "101", "10110"]
    assert [len(w) for w in words[1:]] == convergents_oracle((1, 1, 1, 1))
    assert sturmian_word((1,) * 30, 10) == "1011010110"
    assert sturmian_word((1,) * 30, 100).startswith(words[-1])
    with pytest.raises(PrefixTooShort):
        sturmian_word((1, 1), 100)


def test_sturmian_word_is_the_golden_rotation_coding():
    # independent oracle: 1 - floor((n+2) a) + floor((n+1) a) with a = 1/phi^2 gives 1011010110...
    alpha = (3 - sqrt(5)) / 2
    oracle = "".join(str(1 - (int((n + 2) * alpha) - int((n + 1) * alpha))) for n in range(300))
    assert sturmian_word((1,) * 40, 300) == oracle


def test_sturmian_word_letter_frequency():
    w = sturmian_word((1,) * 40, 10_000)
    assert abs(w.count("0") / len(w) - (3 - sqrt(5)) / 2) < 0.01


def test_sturmian_oracle_factor_sets():
    o = sturmian_oracle((1,) * 40, 12)
    assert o[1] == {"0", "1"}
    assert o[2] == {"01", "10", "11"}
    assert all(len(o[n]) == n + 1 for n in range(13))
    prefix = sturmian_word((1,) * 40, 10_000)
    for n in range(13):
        assert o[n] == {prefix[i:i + n] for i in range(len(prefix) - n + 1)}


def test_full_shift_oracle_counts():
    assert len(full_shift_oracle(2, 3)[3]) == 8
    assert len(full_shift_oracle(2, 3)[0]) == 1
    assert len(full_shift_oracle(3, 2)[2]) == 9


def test_fixed_points():
    fib = Substitution.from_dict({"0": "01", "1": "0"})
    assert substitution_fixed_point(fib, "0", 13) == "0100101001001"
    tri = Substitution.from_dict({"1": "12", "2": "13", "3": "123"})
    assert substitution_fixed_point(tri, "1", 13) == "1213121231213"
    with pytest.raises(NoGrowth):
        substitution_fixed_point(Substitution.from_dict({"a": "a", "b": "b"}), "a", 5)
    with pytest.raises(NotProlongable):
        substitution_fixed_point(fib, "1", 5)


def euclid_tape(a, b):
    """Rauzy types from the quotients of a / b; the last quotient ends in a tie."""
    tape, kind = [], 1 if a > b else 0
    quotients = []
    x, y = max(a, b), min(a, b)
    while y:
        q, r = divmod(x, y)
        quotients.append(q)
        x, y = y, r
    for i, q in enumerate(quotients):
        steps = q - 1 if i == len(quotients) - 1 else q
        tape += [kind] * steps
        kind = 1 - kind
    return tape


def test_rauzy_tape_follows_euclid():
    cfg = IETConfig((Fraction(13, 21), Fraction(8, 21)), (2, 1))
    expected = euclid_tape(13, 8)
    with pytest.raises(KeaneTie) as err:
        iet_rauzy_induction(cfg, 20)
    assert err.value.tape == expected
    assert err.value.step == len(expected) + 1


@given(st.integers(1, 60), st.integers(1, 60))
@settings(max_examples=100, deadline=None)
def test_rauzy_tape_follows_euclid_for_random_lengths(a, b):
    total = a + b
    cfg = IETConfig((Fraction(a, total), Fraction(b, total)), (2, 1))
    with pytest.raises(KeaneTie) as err:
        iet_rauzy_induction(cfg, 200)
    assert err.value.tape == euclid_tape(a, b)


def test_keane_tie_and_reducible():
    with pytest.raises(KeaneTie) as err:
        iet_rauzy_induction(IETConfig((Fraction(1, 2), Fraction(1, 2)), (2, 1)), 3)
    assert err.value.step == 1
    with pytest.raises(ReduciblePermutation):
        iet_rauzy_induction(IETConfig((Fraction(1, 3), Fraction(2, 3)), (1, 2)), 1)


def test_rauzy_step_types():
    kind, sub, nxt = rauzy_step(IETConfig((Fraction(13, 21), Fraction(8, 21)), (2, 1)))
    assert kind == 1 and sub.as_dict() == {"1": ("1",), "2": ("1", "2")}
    assert sum(nxt.lengths) == 1
    kind, sub, _ = rauzy_step(IETConfig((Fraction(1, 3), Fraction(2, 3)), (2, 1)))
    assert kind == 0 and sub.as_dict() == {"1": ("1", "2"), "2": ("2",)}


def test_iet_map_is_a_bijection_on_a_grid():
    cfg = IETConfig((Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)), (3, 1, 2))
    grid = [Fraction(k, 60) for k in range(60)]
    assert sorted(cfg(x) for x in grid) == grid


@pytest.mark.parametrize("lengths,perm", [
    ((Fraction(13, 21), Fraction(8, 21)), (2, 1)),
    ((Fraction(89, 144), Fraction(55, 144)), (2, 1)),
    ((Fraction(3, 10), Fraction(5, 10), Fraction(2, 10)), (3, 2, 1)),
    ((Fraction(5, 18), Fraction(7, 18), Fraction(6, 18)), (3, 1, 2)),
])
def test_induced_substitution_matches_each_step(lengths, perm):
    cfg = IETConfig(lengths, perm)
    try:
        run = iet_rauzy_induction(cfg, 4)
        subs, configs = run.system.substitutions, run.configs
    except KeaneTie as e:
        subs = e.substitutions
        configs = [cfg]
        for _ in subs:
            configs.append(rauzy_step(configs[-1])[2])
    assert subs
    for k, sub in enumerate(subs):
        c = configs[k]
        assert induced_substitution_check(c, induction_window(c), 10) == sub


def test_induced_substitution_edge_cases():
    cfg = IETConfig((Fraction(13, 21), Fraction(8, 21)), (2, 1))
    whole = induced_substitution_check(cfg, 1, 1)
    assert whole.as_dict() == {"1": ("1",), "2": ("2",)}
    with pytest.raises(ReturnTimeExceeded):
        induced_substitution_check(cfg, induction_window(cfg), 1)
    with pytest.raises(InvalidWindow):
        induced_substitution_check(cfg, Fraction(1, 7), 5)
