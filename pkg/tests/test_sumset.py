import itertools
import random

import pytest

from helpers import all_equations
from rainbowzp.oracle import enumerate_rainbow_free
from rainbowzp.sumset import (
    NoWitness,
    containment_violations,
    count_critical_pairs,
    cd_check,
    format_violation,
    hr_witness,
    iter_lemma43,
    lemma43_allowed,
    scan_cd,
    scan_cd_sampled,
    scan_vosper,
    sumset,
    vosper_witness,
    window,
)
from rainbowzp.zp import DomainError, ap_difference, is_almost_ap


def brute_sumset(X, Y, p):
    return tuple(sorted({(x + y) % p for x in X for y in Y}))


def test_sumset_examples():
    assert sumset({0}, {3, 5, 6}, 7) == (3, 5, 6)
    assert sumset({0, 1}, {0, 1, 2}, 13) == (0, 1, 2, 3)
    assert sumset({0, 1, 3}, {0, 2, 5}, 7) == brute_sumset({0, 1, 3}, {0, 2, 5}, 7) == (0, 1, 2, 3, 5, 6)
    with pytest.raises(DomainError):
        sumset(set(), {1}, 7)


def test_sumset_random_against_double_loop():
    rng = random.Random(7)
    for _ in range(300):
        p = rng.choice([7, 11, 13, 31])
        X = rng.sample(range(p), rng.randint(1, p))
        Y = rng.sample(range(p), rng.randint(1, p))
        assert sumset(X, Y, p) == brute_sumset(X, Y, p)


def test_window_bounds():
    w = window({0, 1}, {0, 1, 2}, 13)
    assert (w.lower, w.upper, len(w.sum)) == (4, 5, 4)


def test_cd_examples():
    assert cd_check(range(7), range(7), 7)
    assert list(scan_cd(7, max_size=3)) == []
    assert list(scan_cd_sampled(101, samples=300, seed=1)) == []


def test_cd_exhaustive_p7():
    assert list(scan_cd(7)) == []


def test_vosper_examples():
    assert vosper_witness({0, 1, 2}, {5, 6}, 13) in (1, 12)
    assert vosper_witness({0, 2, 4}, {1, 3}, 13) in (2, 11)
    assert vosper_witness({0, 1}, {0, 3}, 13) is None
    with pytest.raises(DomainError):
        vosper_witness({0}, {1, 2}, 13)


def test_vosper_exhaustive_p7():
    assert list(scan_vosper(7)) == []
    assert count_critical_pairs(7) == 588
    # re-verify every witness independently of the scan
    subsets = [S for k in (2, 3) for S in itertools.combinations(range(7), k)]
    for X in subsets:
        for Y in subsets:
            d = vosper_witness(X, Y, 7)
            if d is not None:
                assert d in ap_difference(X, 7) and d in ap_difference(Y, 7)


def test_hr_examples():
    X, Y = {0, 1, 2, 4}, {0, 1, 2}
    assert sumset(X, Y, 13) == tuple(range(7))
    assert hr_witness(X, Y, 13) in (1, 12)
    assert hr_witness({0, 1, 2}, {0, 1, 2}, 13) is None
    with pytest.raises(DomainError):
        hr_witness({0, 1}, {0, 1, 2}, 13)


@pytest.mark.slow
def test_hr_exhaustive_p11():
    p = 11
    checked = 0
    for i in range(3, p):
        for j in range(3, p):
            if not 7 <= i + j <= p - 4:
                continue
            for X in itertools.combinations(range(p), i):
                for Y in itertools.combinations(range(p), j):
                    d = hr_witness(X, Y, p)
                    if d is not None:
                        assert is_almost_ap(X, d, p) and is_almost_ap(Y, d, p)
                        checked += 1
    assert checked == 8470


def test_no_witness_is_an_error():
    assert issubclass(NoWitness, RuntimeError)


def test_lemma43_examples():
    assert set(lemma43_allowed(11)) == {0, 1, 10, 2, 9, 6, 5}
    assert 1 in lemma43_allowed(13)
    with pytest.raises(DomainError):
        list(iter_lemma43(7))
    assert format_violation((0, 1, 2, 3, 5), 3, 1) == "X=0,1,2,3,5;t=3;d=1"


@pytest.mark.parametrize("p", [11, 13])
def test_lemma43_empty(p):
    assert list(iter_lemma43(p)) == []


def test_containment_identity_p7():
    p = 7
    checked = 0
    for eq in itertools.islice(all_equations(p), 0, None, 5):
        for c in enumerate_rainbow_free(eq):
            assert containment_violations(eq.coeffs, eq.b, c.classes, p) == []
            checked += 1
    assert checked > 0
