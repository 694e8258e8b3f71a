"""Positive cones, the shift closure, and the functor grid roundtrip."""

import itertools
from fractions import Fraction

import pytest

from ordalg import (FinitePoset, NotInSkeleton, RationalFn, SbalSkeleton,
                    TooLargeToEnumerate, chain, positive_cone, q_contains,
                    q_decompose, q_envelope, roundtrip_pq, shifted_join)
from ordalg.rng import rng_for, sample_values

VEE = FinitePoset("abc", [("a", "c"), ("b", "c")])


def test_positive_cone_membership():
    plus = positive_cone(SbalSkeleton(chain("pq")))
    up = RationalFn("pq", {"p": 0, "q": 1})
    assert plus.contains(up)
    assert not plus.contains(up - 1)
    assert not plus.contains(RationalFn("pq", {"p": 1, "q": 0}))


def test_difference_axiom():
    plus = positive_cone(SbalSkeleton(chain("pq")))
    a = RationalFn("pq", {"p": Fraction(3, 2), "q": Fraction(5, 2)})
    d = plus.difference(a, 1)
    assert d == a - 1 and plus.contains(d)
    with pytest.raises(NotInSkeleton):
        plus.difference(a, 3)


def test_q_decompose_recovers_members():
    """m = (m + shift) - shift with a nonnegative monotone part."""
    skel = SbalSkeleton(VEE)
    plus = positive_cone(skel)
    rng = rng_for(71, "qdec")
    for _ in range(50):
        m = skel.sample_member(rng)
        part, shift = q_decompose(plus, m)
        assert plus.contains(part)
        assert shift >= 0
        assert part - shift == m
        assert q_contains(plus, m)
        # The canonical shift is minimal: nonnegative members need none.
        if m.ge(0):
            assert shift == 0 and part == m


def test_q_envelope_round_trip():
    skel = SbalSkeleton(VEE)
    assert q_envelope(positive_cone(skel)).order == skel.order


def test_shifted_join_identity():
    """((a+s) v (b+r)) - (r+s) computes the plain join of a-r and b-s."""
    rng = rng_for(72, "sjoin")
    carrier = ("p", "q")
    for _ in range(60):
        a = RationalFn(carrier, sample_values(rng, carrier))
        b = RationalFn(carrier, sample_values(rng, carrier))
        r, s = Fraction(3, 8), Fraction(5, 4)
        assert shifted_join(a, r, b, s) == (a - r).join(b - s)


@pytest.mark.parametrize("order", [chain("p"), chain("pq"), VEE,
                                   FinitePoset("pq", [])],
                         ids=["point", "chain2", "vee", "antichain2"])
def test_roundtrip_identical(order):
    report = roundtrip_pq(SbalSkeleton(order))
    assert report.identical
    assert report.checked == report.grid_points == 17 ** len(order.elements)
    assert report.qp_mismatches == [] and report.pq_mismatches == []
    assert report.recompose_failures == []


def test_roundtrip_agrees_with_direct_membership():
    """Grid verdicts match plain cone membership, re-derived here."""
    order = chain("pq")
    skel = SbalSkeleton(order)
    report = roundtrip_pq(skel)
    grid = [Fraction(k, 4) for k in range(-8, 9)]
    direct = sum(1 for u, v in itertools.product(grid, repeat=2)
                 if RationalFn("pq", {"p": u, "q": v}).values["p"] <= v)
    members = sum(1 for u, v in itertools.product(grid, repeat=2)
                  if skel.contains(RationalFn("pq", {"p": u, "q": v})))
    assert direct == members
    assert report.checked == len(grid) ** 2


def test_roundtrip_cap():
    with pytest.raises(TooLargeToEnumerate):
        roundtrip_pq(SbalSkeleton(chain("pqrs")))
