import random

import pytest
from hypothesis import given, settings, strategies as st

from crtk.dynamics import (
    RD_ONE_CONVENTION, StepCoefficient, Trajectory, apply, apply_primed,
    cnt_i, cnt_o, coefficient, dynam, format_dynstring, get_s, is_matched,
    parse_dynstring, reduced_dynamics, replace,
)
from crtk.enumeration import enumerate_forms
from crtk.errors import (
    BudgetExhausted, DomainNote, DynSyntaxError, NonIntegral, OutOfBounds,
    ParityMismatch,
)

from oracles import classic_rd, classic_symbols

dyn = st.text(alphabet="IO", min_size=1, max_size=40)


@pytest.mark.parametrize("x, c, expected", [(3, "I", True), (3, "O", False), (8, "O", True)])
def test_is_matched(x, c, expected):
    assert is_matched(x, c) is expected


@pytest.mark.parametrize("s, i, j, expected", [
    ("IIOO", 1, 1, "I"), ("IIOO", 1, 2, "II"), ("IIOO", 1, 3, "IIO"),
    ("IIOO", 1, 4, "IIOO"), ("IIOO", 3, 0, ""), ("IIOO", 4, 1, "O"),
])
def test_get_s(s, i, j, expected):
    assert get_s(s, i, j) == expected


@pytest.mark.parametrize("i, j", [(0, 1), (5, 0), (2, 4), (1, -1)])
def test_get_s_bounds(i, j):
    with pytest.raises(OutOfBounds):
        get_s("IIOO", i, j)


@pytest.mark.parametrize("s, x, values", [
    ("IIOO", 3, (3, 5, 8, 4, 2)),
    ("O", 2, (2, 1)),
    ("IO", 5, (5, 8, 4)),
])
def test_apply(s, x, values):
    tr = apply(s, x)
    assert tr.values == values
    assert tr.final == values[-1]


def test_apply_prefix_chain_on_3():
    assert [apply("IIOO"[:j], 3).final for j in range(1, 5)] == [5, 8, 4, 2]


def test_apply_mismatch():
    with pytest.raises(ParityMismatch) as e:
        apply("IO", 4)
    assert e.value.index == 0
    with pytest.raises(ParityMismatch) as e:
        apply("III", 3)
    assert e.value.index == 2


def test_trajectory_json_roundtrip():
    tr = apply("IIOO", 3)
    d = tr.to_json()
    assert d == {"start": "3", "symbols": "IIOO", "values": ["3", "5", "8", "4", "2"]}
    assert Trajectory.from_json(d) == tr


@pytest.mark.parametrize("x, n, expected", [
    (19, 2, "II"), (19, 3, "IIO"), (19, 4, "IIOO"), (23, 5, "IIIOO"),
])
def test_dynam(x, n, expected):
    assert dynam(x, n) == expected


@pytest.mark.parametrize("x, expected", [
    (3, "IIOO"), (5, "IO"), (9, "IO"), (11, "IIOIO"), (4, "O"), (2, "O"),
])
def test_reduced_dynamics_examples(x, expected):
    assert reduced_dynamics(x) == expected


def test_rd_of_7():
    # 7 -> 11 -> 17 -> 26 -> 13 -> 20 -> 10 -> 5
    assert reduced_dynamics(7) == "IIIOIOO" == parse_dynstring("I^3OIO^2")


def test_rd_one_is_a_convention():
    with pytest.raises(DomainNote):
        reduced_dynamics(1)
    assert RD_ONE_CONVENTION == "IO"
    assert apply("IO", 1).final == 1


def test_rd_budget():
    with pytest.raises(BudgetExhausted) as e:
        reduced_dynamics(27, budget=58)
    assert e.value.steps == 58
    assert len(reduced_dynamics(27, budget=59)) == 59


def test_rd_shape_and_oracle():
    for x in range(2, 20001):
        s = reduced_dynamics(x)
        assert s.endswith("O")
        assert s == classic_rd(x)
        if x % 2 == 0:
            assert s == "O"
        if x % 4 == 1:
            assert s == "IO"
        values = apply(s, x).values
        assert all(v > x for v in values[1:-1])
        assert values[-1] < x


def test_rd_uniqueness():
    assert reduced_dynamics(2**80 + 27) == reduced_dynamics(2**80 + 27)


@pytest.mark.parametrize("s, expected", [("IIOO", "I'I'OO"), ("O", "O"), ("I", "I'")])
def test_replace(s, expected):
    assert replace(s) == expected
    assert len(replace(s).replace("'", "")) == len(s)


@pytest.mark.parametrize("s, P, expected", [("IIOO", 16, 9), ("O", 2, 1), ("IIOIO", 32, 27)])
def test_apply_primed(s, P, expected):
    assert apply_primed(s, P) == expected
    assert coefficient(s) * P == expected


def test_apply_primed_stepwise_chain():
    # I'(16) = 24, I'(24) = 36, O(36) = 18, O(18) = 9
    assert [apply_primed("IIOO"[:j], 16) for j in range(1, 5)] == [24, 36, 18, 9]


def test_apply_primed_non_integral():
    with pytest.raises(NonIntegral):
        apply_primed("IIO", 4)


def test_separation_example_3_plus_16():
    s = "IIOO"
    for j in range(1, 5):
        p = s[:j]
        assert apply(p, 19).final == apply(p, 3).final + apply_primed(p, 16)
    assert apply(s, 19).values == (19, 29, 44, 22, 11)


@pytest.mark.parametrize("s, n_i, n_o", [("IIOO", 2, 2), ("III", 3, 0), ("IIIOO", 3, 2)])
def test_counts(s, n_i, n_o):
    assert cnt_i(s) == n_i
    assert cnt_o(s) == n_o


@pytest.mark.parametrize("s, j, a", [("IIOO", 4, 2), ("O", 1, 0), ("IIOIO", 5, 3)])
def test_coefficient(s, j, a):
    c = coefficient(s, j)
    assert c == StepCoefficient(a, j)
    assert c.numerator == 3**a and c.denominator == 2**j


def test_coefficient_bounds():
    with pytest.raises(OutOfBounds):
        coefficient("IO", 3)
    with pytest.raises(OutOfBounds):
        coefficient("IO", 0)


def test_coefficient_example_value():
    assert coefficient("IIOO", 4) * 16 == 9
    assert str(coefficient("IIOO")) == "3^2/2^4"
    assert not coefficient("II").contracts()
    assert coefficient("IIOO").contracts()


@pytest.mark.parametrize("text, expected", [
    ("I^2O^2", "IIOO"), ("I^3OIO^2", "IIIOIOO"), ("O", "O"), ("IIOO", "IIOO"),
    ("I^10", "I" * 10),
])
def test_parse(text, expected):
    assert parse_dynstring(text) == expected


@pytest.mark.parametrize("text, offset", [
    ("", 0), ("IXO", 1), ("I^", 2), ("I^1O", 2), ("O^0", 2), ("^2", 0), ("I^2^3", 3),
])
def test_parse_errors(text, offset):
    with pytest.raises(DynSyntaxError) as e:
        parse_dynstring(text)
    assert e.value.offset == offset


def test_format():
    assert format_dynstring("IIIOIOO", rle=True) == "I^3OIO^2"
    assert format_dynstring("IIOO", rle=True) == "I^2O^2"
    assert format_dynstring("IIOO") == "IIOO"


@given(dyn)
def test_format_parse_roundtrip(s):
    assert parse_dynstring(format_dynstring(s)) == s
    assert parse_dynstring(format_dynstring(s, rle=True)) == s


@given(dyn)
def test_counts_partition_length(s):
    assert cnt_i(s) + cnt_o(s) == len(s)


def test_separation_property():
    rng = random.Random(11)
    for _ in range(3000):
        x = rng.randrange(1, 10**5, 2)
        t = rng.randint(1, 20)
        m = rng.randint(1, 8)
        s = dynam(x, t)
        P = m << t
        base, shifted = apply(s, x), apply(s, x + P)  # apply checks every parity
        assert shifted.final == base.final + apply_primed(s, P)
        assert apply_primed(s, P) == 3 ** cnt_i(s) * m
        if x - P > 0:
            assert apply(s, x - P).final == base.final - apply_primed(s, P)


def test_parity_flip_at_next_step():
    rng = random.Random(12)
    for _ in range(3000):
        x = rng.randrange(1, 10**5)
        t = rng.randint(1, 20)
        s = dynam(x, t)
        assert apply(s, x).final % 2 != apply(s, x + (1 << t)).final % 2


def test_coefficient_law_on_enumerated_patterns():
    for rec in enumerate_forms(20):
        s = rec.pattern
        for m in (1, 2, 5, 16):
            assert apply_primed(s, m << len(s)) == 3 ** cnt_i(s) * m


def test_coefficient_law_on_random_strings():
    rng = random.Random(13)
    for _ in range(2000):
        s = "".join(rng.choice("IO") for _ in range(rng.randint(1, 20)))
        m = rng.randint(1, 16)
        assert apply_primed(s, m << len(s)) == 3 ** cnt_i(s) * m


@pytest.mark.parametrize("n", range(1, 65))
def test_power_witness(n):
    x = (1 << n) - 1
    assert dynam(x, n) == "I" * n
    assert apply("I" * n, x).final == 3**n - 1


def test_periodicity_sample():
    for x in range(2, 5000):
        s = reduced_dynamics(x)
        assert reduced_dynamics(x + (1 << len(s))) == s


def test_rd_values_are_classic_subsequence():
    for x in range(2, 3000):
        s = reduced_dynamics(x)
        classic = [x]
        v = x
        for _ in range(len(s) + s.count("I")):
            v = v * 3 + 1 if v % 2 else v // 2
            classic.append(v)
        combined = apply(s, x).values
        # each I is two classic steps, each O one
        pos, picked = 0, [classic[0]]
        for c in s:
            pos += 2 if c == "I" else 1
            picked.append(classic[pos])
        assert tuple(picked) == combined


@settings(max_examples=200)
@given(st.integers(min_value=2, max_value=2**200))
def test_dynam_matches_classic(x):
    assert dynam(x, 30) == classic_symbols(x, 30)
