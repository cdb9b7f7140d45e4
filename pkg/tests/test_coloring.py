import itertools

import pytest
from hypothesis import given, strategies as st

from helpers import EX1, EX2, EX2_B, EX3
from rainbowzp.classify import transform_family
from rainbowzp.coloring import (
    EVERY_POINT,
    AffineMap,
    Color,
    Coloring,
    ColoringParseError,
    apply_affine,
    fixed_point,
    invariance_shift_equivalence,
    is_invariant,
    parse_coloring,
)
from rainbowzp.equation import Equation
from rainbowzp.zp import DomainError


def test_class_of_examples():
    assert EX1.class_of(Color.B) == (1, 3, 4, 9, 10, 12)
    assert EX2.class_of(Color.A) == (15,)
    for c in (EX1, EX2, EX3):
        assert sum(c.sizes()) == c.p
        assert sorted(x for cls in c.classes for x in cls) == list(range(c.p))


def test_sorted_by_size_examples():
    first = EX2.sorted_by_size()
    assert [len(s) for _, s in first] == [1, 8, 8] and first[0][1] == (15,)
    assert [len(s) for _, s in EX3.sorted_by_size()] == [4, 4, 5]
    c = Coloring.from_classes(7, [0, 1, 2], [3, 4], [5, 6])
    ordered = c.sorted_by_size()
    assert [len(s) for _, s in ordered] == [2, 2, 3]
    assert [lab for lab, _ in ordered] == [Color.B, Color.C, Color.A]


def test_coloring_requires_three_classes():
    with pytest.raises(DomainError):
        Coloring(5, (0, 0, 1, 1, 1))
    with pytest.raises(DomainError):
        Coloring.from_classes(5, [0], [1], [2, 3])
    with pytest.raises(DomainError):
        Coloring.from_classes(5, [0, 1], [1], [2, 3, 4])


def test_text_round_trip_examples():
    assert EX1.to_text() == "p=13;A=0;B=1,3,4,9,10,12;C=2,5,6,7,8,11"
    for c in (EX1, EX2, EX3):
        assert parse_coloring(c.to_text()) == c


@given(st.lists(st.integers(0, 2), min_size=11, max_size=11))
def test_text_round_trip_random(labels):
    if len(set(labels)) < 3:
        return
    c = Coloring(11, tuple(labels))
    assert Coloring.parse(c.to_text()) == c


@pytest.mark.parametrize(
    "text,code",
    [
        ("p=5;A=0;B=1,2;C=2,3,4", "overlap"),
        ("p=5;A=0;B=1;C=2,3", "omission"),
        ("p=5;A=0;B=1,2;C=3,4,5", "out_of_range"),
        ("p=5;A=;B=0,1,2;C=3,4", "empty_class"),
        ("p=5;A=0;B=1,2", "syntax"),
        ("p=5;A=0;B=1,x;C=2,3,4", "syntax"),
        ("p=6;A=0;B=1,2;C=3,4,5", "syntax"),
    ],
)
def test_parse_error_codes(text, code):
    with pytest.raises(ColoringParseError) as info:
        parse_coloring(text)
    assert info.value.code == code


def brute_canonical(c):
    return min(
        (tuple(perm[lab] for lab in c.labels) for perm in itertools.permutations(range(3))),
    )


@given(st.lists(st.integers(0, 2), min_size=7, max_size=7))
def test_canonical_is_lexicographic_minimum(labels):
    if len(set(labels)) < 3:
        return
    c = Coloring(7, tuple(labels))
    assert c.canonical().labels == brute_canonical(c)
    assert c.canonical().labels[0] == 0
    for perm in itertools.permutations(range(3)):
        assert c.relabel(perm).canonical() == c.canonical()


def test_apply_affine_examples():
    S = (1, 3, 4, 9, 10, 12)
    assert apply_affine(AffineMap(10, 0, 13), S) == S
    assert apply_affine(AffineMap(1, 0, 13), {2, 5}) == (2, 5)
    assert apply_affine(AffineMap(1, 4, 13), {2, 10}) == (1, 6)


def test_affine_map_rejects_zero_dilation():
    with pytest.raises(DomainError):
        AffineMap(13, 1, 13)


@given(st.sampled_from([5, 7, 11, 13]), st.data())
def test_apply_affine_preserves_size(p, data):
    S = data.draw(st.sets(st.integers(0, p - 1)))
    m = AffineMap(data.draw(st.integers(1, p - 1)), data.draw(st.integers(0, p - 1)), p)
    assert len(apply_affine(m, S)) == len(S)


def test_fixed_point_examples():
    assert fixed_point(AffineMap(2, 2, 17)) == 15
    assert (2 * 15 + 2) % 17 == 15
    assert fixed_point(AffineMap(5, 0, 11)) == 0
    assert fixed_point(AffineMap(1, 5, 11)) is None
    assert fixed_point(AffineMap(1, 0, 11)) == EVERY_POINT


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_fixed_point_is_unique_fixed_residue(p):
    for d in range(2, p):
        for t in range(p):
            m = AffineMap(d, t, p)
            fixed = [x for x in range(p) if apply_affine(m, {x}) == (x,)]
            assert fixed == [fixed_point(m)]


def test_is_invariant_examples():
    assert is_invariant(AffineMap(10, 0, 13), {2, 5, 6, 7, 8, 11})
    assert is_invariant(AffineMap(7, 3, 13), range(13))
    assert not is_invariant(AffineMap(2, 0, 13), {1, 3, 4, 9, 10, 12})
    for m in transform_family(Equation(17, 1, 8, -2, 3), 15).maps:
        assert is_invariant(m, EX2_B)


def test_shift_equivalence_examples():
    m = AffineMap(2, 2, 17)
    assert invariance_shift_equivalence(m, EX2_B) is True
    assert is_invariant(m, EX2_B)
    assert invariance_shift_equivalence(m, {15})
    with pytest.raises(DomainError):
        invariance_shift_equivalence(AffineMap(1, 3, 17), {1})


def test_shift_equivalence_exhaustive_p11():
    p = 11
    subsets = [S for k in range(5) for S in itertools.combinations(range(p), k)]
    for d in range(2, p):
        for t in range(p):
            m = AffineMap(d, t, p)
            for S in subsets:
                assert invariance_shift_equivalence(m, S) == is_invariant(m, S)


def test_transform_moves_colors():
    m = AffineMap(1, 5, 13)
    moved = EX1.transform(m)
    assert moved.class_of(Color.A) == (5,)
    assert moved.class_of(Color.B) == apply_affine(m, EX1.class_of(Color.B))
