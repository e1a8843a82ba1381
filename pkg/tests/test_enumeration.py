import csv
import io
import json
from fractions import Fraction

import pytest

from crtk.dynamics import dynam
from crtk.enumeration import (
    coverage, enumerate_forms, pattern_counts, records_to_csv, records_to_json,
    verify_enumeration,
)
from crtk.residue import ResidueClass, r2d

from oracles import brute_coverage, brute_reduced_patterns

R40 = Fraction(136638599097, 137438953472)


def forms(L):
    return {r.pattern: r.cls for r in enumerate_forms(L)}


def test_L2():
    assert forms(2) == {"O": ResidueClass(0, 1), "IO": ResidueClass(1, 2)}


def test_L4_adds_only_iioo():
    assert set(forms(4)) - set(forms(2)) == {"IIOO"}
    assert forms(4)["IIOO"] == ResidueClass(3, 4)


def test_L5():
    f = forms(5)
    assert set(f) - set(forms(4)) == {"IIOIO", "IIIOO"}
    assert f["IIOIO"] == ResidueClass(11, 5)
    assert f["IIIOO"] == ResidueClass(23, 5)


def test_order():
    out = [r.pattern for r in enumerate_forms(12)]
    key = [(len(p), p.replace("I", "0").replace("O", "1")) for p in out]
    assert key == sorted(key)


def test_matches_brute_force():
    L = 16
    oracle = brute_reduced_patterns(L)
    got = forms(L)
    assert set(got) == set(oracle)
    for p, residues in oracle.items():
        assert residues == {got[p].i}, p


def test_records_agree_with_r2d():
    for r in enumerate_forms(18):
        assert r2d(r.cls) == r.pattern
        assert r.cls.t == len(r.pattern)


@pytest.mark.parametrize("L", [1, 3, 60])
def test_bounds_accepted(L):
    next(iter(enumerate_forms(L)))


@pytest.mark.parametrize("L", [0, 61])
def test_bounds_rejected(L):
    with pytest.raises(ValueError):
        next(iter(enumerate_forms(L)))


def test_bijection_disjoint():
    recs = list(enumerate_forms(20))
    assert len({r.pattern for r in recs}) == len(recs)
    by_t = {}
    for r in recs:
        by_t.setdefault(r.cls.t, []).append(r.cls)
    # disjoint as sets: no class is contained in another (mod the smaller modulus)
    tmax = max(by_t)
    reps = {}
    for t, classes in by_t.items():
        for c in classes:
            for k in range(1 << (tmax - t)):
                x = c.i + (k << t)
                assert x not in reps, (c, reps.get(x))
                reps[x] = c
    total = sum(Fraction(1, 1 << r.cls.t) for r in recs)
    assert total == coverage(20).ratio(20)


def test_counts_head():
    assert pattern_counts(12) == [1, 1, 0, 1, 2, 0, 3, 7, 0, 12, 0, 30]


def test_dp_matches_dfs():
    n = 20
    dfs = [0] * n
    for r in enumerate_forms(n):
        dfs[r.length - 1] += 1
    assert pattern_counts(n) == dfs


@pytest.mark.parametrize("n, value", [(1, Fraction(1, 2)), (2, Fraction(3, 4)),
                                      (4, Fraction(13, 16)), (5, Fraction(7, 8))])
def test_coverage_values(n, value):
    assert coverage(n).ratio(n) == value
    num, den = brute_coverage(n)
    assert Fraction(num, den) == value


def test_coverage_vs_brute_force():
    table = coverage(14)
    for n in range(1, 15):
        assert table.ratio(n) == Fraction(*brute_coverage(n))


def test_coverage_monotone_and_bounded():
    table = coverage(40)
    prev = Fraction(0)
    for n in range(1, 41):
        r = table.ratio(n)
        assert 0 < r < 1
        assert (r > prev) == (table.counts[n - 1] > 0)
        assert r >= prev
        prev = r
    assert table.ratio(40) == R40


def test_gap_structure():
    c = pattern_counts(5)
    assert c[2] == 0
    assert all(c[k - 1] > 0 for k in (1, 2, 4, 5))


def test_no_maximal_length():
    for L in range(1, 41):
        x = (1 << L) - 1
        # x is I^L for L steps, so no pattern of length <= L can be its prefix
        assert dynam(x, L) == "I" * L
    recs = list(enumerate_forms(22))
    for L in range(1, 23):
        x = (1 << L) - 1
        assert not any(x in r.cls for r in recs if r.length <= L)


@pytest.mark.parametrize("L, n", [(1, 1), (5, 5), (10, 27)])
def test_verify_enumeration(L, n):
    rep = verify_enumeration(L)
    assert rep.consistent
    assert rep.n_patterns == n


def test_verify_enumeration_odd_count():
    odd = [r for r in enumerate_forms(5) if r.cls.i % 2]
    assert len(odd) == 4


def test_verify_enumeration_workers():
    rep = verify_enumeration(12, workers=2)
    assert rep.consistent


def test_workers_identical():
    a = [(r.pattern, r.cls) for r in enumerate_forms(14)]
    b = [(r.pattern, r.cls) for r in enumerate_forms(14, workers=2)]
    assert a == b


def test_records_csv():
    text = records_to_csv(enumerate_forms(5))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["length", "pattern", "i", "t", "density_num", "density_log2_den"]
    assert rows[1] == ["1", "O", "0", "1", "1", "1"]
    assert rows[-2:] == [["5", "IIIOO", "23", "5", "1", "5"], ["5", "IIOIO", "11", "5", "1", "5"]]


def test_records_json():
    data = json.loads(records_to_json(enumerate_forms(2)))
    assert data[1] == {"pattern": "IO", "i": "1", "t": 2, "density_num": 1, "density_log2_den": 2}


def test_coverage_csv():
    rows = list(csv.DictReader(io.StringIO(coverage(5).to_csv())))
    assert rows[1] == {"n": "2", "count_n": "1", "R_num": "3", "R_log2_den": "2", "R_float": "0.75"}
    assert rows[4]["R_num"] == "28"


def test_coverage_json_exact():
    rows = coverage(40).to_json()
    assert Fraction(int(rows[-1]["R_num"]), 1 << rows[-1]["R_log2_den"]) == R40
