from itertools import count

import pytest

from cantorplane.binary import (
    ZERO,
    Cylinder,
    FinitePoint,
    LazyPoint,
    counting_function,
    cylinder_of,
    enumerate_level,
    successors,
    support,
)
from cantorplane.errors import DomainError


def evens():
    return LazyPoint(count(2, 2))


def test_support_of_zero_point():
    assert support(ZERO, 10) == ()


def test_support_identity_on_stored_data():
    assert support(FinitePoint((1, 3)), 10) == (1, 3)
    assert support(FinitePoint((1, 3)), 2) == (1,)


def test_support_lazy_forced_by_generator():
    assert support(evens(), 7) == (2, 4, 6)


def test_counting_function():
    d = FinitePoint((2, 5))
    assert counting_function(d, 1) == 2
    assert counting_function(d, 2) == 5
    with pytest.raises(DomainError):
        counting_function(ZERO, 1)
    assert counting_function(evens(), 3) == 6


def test_lazy_rejects_non_monotone_stream():
    p = LazyPoint(iter([3, 3, 4]))
    assert p.element(1) == 3
    with pytest.raises(ValueError):
        p.element(2)


def test_enumerate_level_zero_is_zero_point():
    assert enumerate_level(0, 5) == [ZERO]


def test_enumerate_level_singletons():
    assert [p.support for p in enumerate_level(1, 3)] == [(1,), (2,), (3,)]


def test_enumerate_level_counts_by_brute_force_subsets():
    # independent oracle: count subsets of {1..4} of size 2
    from itertools import combinations

    expected = sorted(combinations(range(1, 5), 2))
    got = [p.support for p in enumerate_level(2, 4)]
    assert got == expected
    assert len(got) == 6


def test_successors_of_zero():
    assert [p.support for p in successors(ZERO, 3)] == [(1,), (2,), (3,)]


def test_successors_direct_enumeration():
    assert [p.support for p in successors(FinitePoint((2,)), 4)] == [(2, 3), (2, 4)]
    assert successors(FinitePoint((1, 2)), 2) == []


def test_cylinder_of_examples():
    assert cylinder_of(FinitePoint((1, 3)), 4).word == "1010"
    assert cylinder_of(ZERO, 0).word == ""
    c = cylinder_of(FinitePoint((2,)), 2)
    assert c.word == "01"


def test_cylinder_membership():
    c = Cylinder("01")
    assert c.member(FinitePoint((2,)))
    assert c.member(FinitePoint((2, 7)))
    assert not c.member(FinitePoint((1, 2)))
    assert c.member(evens())


def test_level_cylinders_pairwise_disjoint_as_prefix_sets():
    for k in (1, 2, 3):
        pts = enumerate_level(k, 5)
        cyls = [cylinder_of(d, d.max_index) for d in pts]
        for i in range(len(cyls)):
            for j in range(i + 1, len(cyls)):
                a, b = cyls[i].word, cyls[j].word
                n = min(len(a), len(b))
                assert a[:n] != b[:n]


def test_cylinder_decomposes_into_point_plus_successor_cylinders():
    # V_d = {d} + union of V_e over immediate successors, checked by brute
    # force over all finite points with max index <= 6
    bound = 6
    universe = [
        p for k in range(0, bound + 1) for p in enumerate_level(k, bound)
    ]
    for d in [ZERO, FinitePoint((2,)), FinitePoint((1, 3))]:
        vd = cylinder_of(d, d.max_index)
        members = {p.support for p in universe if vd.member(p)}
        rebuilt = {d.support}
        for e in successors(d, bound):
            ve = cylinder_of(e, e.max_index)
            rebuilt |= {p.support for p in universe if ve.member(p)}
        assert members == rebuilt


def test_successors_match_level_enumeration_filtered_by_prefix():
    for d in [ZERO, FinitePoint((2,)), FinitePoint((1, 4))]:
        got = {p.support for p in successors(d, 6)}
        prefix = cylinder_of(d, d.max_index)
        expect = {
            p.support
            for p in enumerate_level(d.size + 1, 6)
            if cylinder_of(p, d.max_index).word == prefix.word
        }
        assert got == expect


def test_renderings():
    assert str(FinitePoint((1, 3))) == "{1,3}"
    assert str(ZERO) == "{}"
    assert str(Cylinder("1010")) == "1010"
    assert str(Cylinder("")) == "(empty word)"


def test_finite_point_validation():
    with pytest.raises(ValueError):
        FinitePoint((3, 1))
    with pytest.raises(ValueError):
        FinitePoint((0, 2))
    with pytest.raises(DomainError):
        support(ZERO, 0)
