from fractions import Fraction
from itertools import combinations

import pytest

from cantorplane.binary import Cylinder, FinitePoint, ZERO, cylinder_of
from cantorplane.errors import DomainError
from cantorplane.kuratowski import (
    accumulation_test,
    closure_slice,
    eval_cylinder,
    eval_finite,
    eval_support,
    fiber_point,
    fiber_witness_in_cylinder,
    graph_neighborhood_member,
    lazy_enclosure,
)
from cantorplane.scalars import RationalInterval


def oracle_value(positions):
    """Independent formulation: literal alternating sum of Fractions."""
    total = Fraction(0)
    for j, pos in enumerate(positions, start=1):
        total += Fraction((-1) ** pos, 2**j)
    return total


def oracle_expansion(t, steps):
    """Independent replay of the signed residual recursion."""
    r = Fraction(t)
    prev = 0
    out = []
    for j in range(1, steps + 1):
        s = 1 if r >= 0 else -1
        pos = prev + 1
        if (pos % 2 == 0) != (s == 1):
            pos += 1
        out.append(pos)
        prev = pos
        r -= s * Fraction(1, 2**j)
    return out


def all_points_upto(bound):
    for k in range(bound + 1):
        for sup in combinations(range(1, bound + 1), k):
            yield FinitePoint(sup)


def test_eval_finite_empty_sum_is_zero():
    assert eval_finite(ZERO).as_fraction() == 0


def test_eval_finite_single_term():
    assert eval_finite(FinitePoint((1,))).as_fraction() == Fraction(-1, 2)


def test_eval_finite_two_term_hand_oracle():
    # +1/2 - 1/4
    assert eval_finite(FinitePoint((2, 3))).as_fraction() == Fraction(1, 4)
    assert eval_finite(FinitePoint((1, 2))).as_fraction() == Fraction(-1, 4)


def test_eval_finite_matches_independent_oracle_exhaustively():
    for p in all_points_upto(9):
        assert eval_finite(p).as_fraction() == oracle_value(p.support)


def test_eval_finite_denominator_bound():
    for p in all_points_upto(7):
        assert eval_finite(p).exponent <= p.size


def test_eval_cylinder_trivial_cases():
    assert eval_cylinder(Cylinder("")) == RationalInterval(Fraction(-1), Fraction(1))
    assert eval_cylinder(Cylinder("100")) == RationalInterval(Fraction(-1), Fraction(0))
    assert eval_cylinder(Cylinder("11")) == RationalInterval(
        Fraction(-1, 2), Fraction(0)
    )


@pytest.mark.parametrize("word", ["100", "11", "0101", "001"])
def test_eval_cylinder_brute_force_extensions(word):
    # all finite extensions with max index <= len(word) + 9 must fall inside,
    # and the extrema approach the endpoints exactly as far as the free
    # positions of the right parity allow: taking all s odd (resp. even)
    # free slots leaves a gap of 2**-(k+s)
    n = len(word)
    bound = n + 9
    iv = eval_cylinder(Cylinder(word))
    base = tuple(i + 1 for i, ch in enumerate(word) if ch == "1")
    k = len(base)
    free = list(range(n + 1, bound + 1))
    values = []
    for r in range(len(free) + 1):
        for tail in combinations(free, r):
            values.append(oracle_value(base + tail))
    assert all(iv.contains(v) for v in values)
    odd = sum(1 for i in free if i % 2)
    even = len(free) - odd
    assert min(values) == iv.lo + Fraction(1, 2 ** (k + odd))
    assert max(values) == iv.hi - Fraction(1, 2 ** (k + even))


def test_enclosure_soundness_exhaustive():
    # every finite point with max index <= 12 lies in the enclosure of each
    # of its prefixes
    for p in all_points_upto(12):
        v = eval_finite(p).as_fraction()
        for n in range(0, 13):
            assert eval_cylinder(cylinder_of(p, n)).contains(v)


def test_oscillation_law_small_scale():
    # spread over extensions of a prefix is at most 2**(1-k), k ones among
    # the first n coordinates
    for d in [ZERO, FinitePoint((1,)), FinitePoint((2, 3))]:
        for n in range(0, 7):
            base = d.support_upto(n)
            k = len(base)
            free = range(n + 1, n + 9)
            vals = []
            for r in range(9):
                for tail in combinations(free, r):
                    vals.append(oracle_value(base + tail))
            assert max(vals) - min(vals) <= Fraction(2, 2**k)


def test_fiber_point_all_plus_expansion():
    y = fiber_point(Fraction(1))
    assert [y.element(j) for j in range(1, 6)] == [2, 4, 6, 8, 10]


def test_fiber_point_zero_prefix():
    y = fiber_point(Fraction(0))
    assert [y.element(j) for j in range(1, 5)] == [2, 3, 5, 7]


def test_fiber_point_matches_residual_oracle():
    for t in [Fraction(-1, 2), Fraction(1, 3), Fraction(-1), Fraction(5, 8)]:
        y = fiber_point(t)
        assert [y.element(j) for j in range(1, 13)] == oracle_expansion(t, 12)


def test_fiber_point_minus_half_starts_at_one():
    assert fiber_point(Fraction(-1, 2)).element(1) == 1


def test_fiber_convergence_exact():
    for t in [Fraction(0), Fraction(1), Fraction(-3, 7), Fraction(13, 64)]:
        y = fiber_point(t)
        for n in range(1, 41):
            partial = oracle_value(tuple(y.element(j) for j in range(1, n + 1)))
            assert abs(t - partial) <= Fraction(1, 2**n)


def test_fiber_sign_parity_consistency():
    t = Fraction(-3, 5)
    y = fiber_point(t)
    r = t
    for j in range(1, 20):
        s = 1 if r >= 0 else -1
        pos = y.element(j)
        assert (-1) ** pos == s
        r -= s * Fraction(1, 2**j)


def test_fiber_point_domain_error():
    with pytest.raises(DomainError):
        fiber_point(Fraction(9, 8))


def test_accumulation_trivial_cases():
    assert accumulation_test(ZERO, Fraction(1))
    assert accumulation_test(FinitePoint((1,)), Fraction(0))  # endpoint
    assert not accumulation_test(FinitePoint((1,)), Fraction(1, 4))


def test_witness_examples():
    y = fiber_witness_in_cylinder(ZERO, Fraction(0), 3)
    assert y is not None
    assert y.support_upto(3) == ()
    assert y.element(1) > 3

    assert fiber_witness_in_cylinder(FinitePoint((1,)), Fraction(1, 4), 1) is None

    y = fiber_witness_in_cylinder(FinitePoint((1,)), Fraction(0), 1)
    assert [y.element(j) for j in range(1, 5)] == [1, 2, 4, 6]


def test_witness_value_and_prefix_contract():
    for d in [ZERO, FinitePoint((2,)), FinitePoint((1, 4))]:
        n = max(d.max_index, 3)
        k = d.size
        f = eval_support(d.support)
        for t in [f, f + Fraction(1, 2**k), f - Fraction(1, 2**k), f + Fraction(1, 2 ** (k + 2))]:
            if not -1 <= t <= 1:
                continue
            y = fiber_witness_in_cylinder(d, t, n)
            assert y is not None
            assert y.support_upto(n) == d.support_upto(n)
            for m in range(k + 1, k + 30):
                partial = oracle_value(tuple(y.element(j) for j in range(1, m + 1)))
                assert abs(t - partial) <= Fraction(1, 2**m)


def test_accumulation_agreement_small_grid():
    # full-scale agreement runs in the acceptance suite
    for d in all_points_upto(5):
        for num in range(-8, 9):
            t = Fraction(num, 8)
            got = fiber_witness_in_cylinder(d, t, d.max_index) is not None
            assert got == accumulation_test(d, t)


def test_closure_slice_examples():
    assert closure_slice(ZERO).interval == RationalInterval(Fraction(-1), Fraction(1))
    assert closure_slice(FinitePoint((1,))).interval == RationalInterval(
        Fraction(-1), Fraction(0)
    )
    assert closure_slice(FinitePoint((2,))).interval == RationalInterval(
        Fraction(0), Fraction(1)
    )


def test_graph_neighborhood_finite_points():
    box = RationalInterval(Fraction(-1, 4), Fraction(1, 4))
    assert graph_neighborhood_member(ZERO, Cylinder(""), box) is True
    assert (
        graph_neighborhood_member(
            FinitePoint((1,)), Cylinder("1"), RationalInterval(Fraction(0), Fraction(1))
        )
        is False
    )
    assert (
        graph_neighborhood_member(FinitePoint((1,)), Cylinder("0"), box) is False
    )


def test_graph_neighborhood_lazy_point():
    y = fiber_point(Fraction(0))
    box = RationalInterval(Fraction(-1, 32), Fraction(1, 32))
    assert graph_neighborhood_member(y, Cylinder(""), box, depth=8) is True
    # straddling an endpoint at shallow depth stays unknown
    tight = RationalInterval(Fraction(0), Fraction(1, 32))
    assert graph_neighborhood_member(y, Cylinder(""), tight, depth=8) is None


def test_lazy_enclosure_width():
    y = fiber_point(Fraction(1, 3))
    for terms in (1, 4, 9):
        enc = lazy_enclosure(y, terms)
        assert enc.width == Fraction(2, 2**terms)
        assert enc.contains(Fraction(1, 3))
