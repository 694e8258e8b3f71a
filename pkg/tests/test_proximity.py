"""Proximity oracles, the axiom suite, and the two-point plane analog."""

import itertools
from fractions import Fraction

import pytest

from ordalg import (CarrierMismatch, FinitePoset, ProximityOracle,
                    QuasiOrder, RationalFn, SbalSkeleton, antichain, chain,
                    check_axioms, combined_order, complete_quasi_order,
                    is_nachbin, monotone_envelope, positive_below,
                    prox_decide, r2_decide, relative_skeleton,
                    separation_point)
from ordalg.fnalg import SubalgebraPartition
from ordalg.proximity import R2_CARRIER
from ordalg.rng import rng_for, sample_values

VEE = FinitePoset("abc", [("a", "c"), ("b", "c")])


def r2fn(u, v):
    return RationalFn(R2_CARRIER, {"x": u, "y": v})


def test_r2_closed_form_matches_skeleton_route():
    """max(a) <= min(b) and the constant-cone envelope route agree."""
    oracle = ProximityOracle.r2()
    grid = [Fraction(k, 2) for k in range(-4, 5)]
    for au, av, bu, bv in itertools.product(grid, repeat=4):
        a, b = r2fn(au, av), r2fn(bu, bv)
        closed = r2_decide((au, av), (bu, bv))
        assert closed == (max(au, av) <= min(bu, bv))
        assert oracle.decide(a, b) == closed
        assert oracle.skeleton.envelope(a).le(b) == closed


def test_skeleton_oracle_routes_agree():
    """decide equals the definition: some cone member between a and b."""
    oracle = ProximityOracle.from_order(VEE)
    rng = rng_for(41, "routes")
    pool = [Fraction(k) for k in (-1, 0, 1)]
    for _ in range(60):
        a = RationalFn("abc", sample_values(rng, "abc"))
        b = RationalFn("abc", sample_values(rng, "abc"))
        direct = oracle.decide(a, b)
        exists = any(
            a.le(c) and c.le(b)
            for combo in itertools.product(sorted(set(a.values.values()) | set(pool)),
                                           repeat=3)
            for c in [RationalFn("abc", dict(zip("abc", combo)))]
            if oracle.skeleton.contains(c))
        assert direct == exists


def test_prox_decide_witness_interpolates():
    oracle = ProximityOracle.from_order(chain("abc"))
    a = RationalFn("abc", {"a": 0, "b": -1, "c": 1})
    b = RationalFn("abc", {"a": 1, "b": 1, "c": 1})
    related, w = prox_decide(oracle, a, b)
    assert related
    assert a.le(w) and w.le(b)
    assert oracle.decide(w, w)
    related, w = prox_decide(oracle, b, a)
    assert not related and w is None


def test_separation_point():
    oracle = ProximityOracle.from_order(chain("ab"))
    a = RationalFn("ab", {"a": 1, "b": 0})
    b = RationalFn("ab", {"a": 1, "b": 0})
    reason = separation_point(oracle, a, b)
    assert reason["point"] == "b"
    assert Fraction(reason["envelope"]) > Fraction(reason["bound"])


def test_witness_is_envelope_or_constant():
    skel = ProximityOracle.from_order(chain("ab"))
    f = RationalFn("ab", {"a": 1, "b": 0})
    assert skel.witness(f) == monotone_envelope(f, chain("ab"))
    r2 = ProximityOracle.r2()
    g = r2fn(1, 0)
    assert r2.witness(g) == RationalFn.constant(R2_CARRIER, 1)


def test_oracle_carrier_check():
    oracle = ProximityOracle.r2()
    with pytest.raises(CarrierMismatch):
        oracle.decide(RationalFn("ab", {"a": 0, "b": 0}), r2fn(0, 0))


def test_skeleton_membership_is_reflexivity():
    oracle = ProximityOracle.from_order(chain("ab"))
    up = RationalFn("ab", {"a": 0, "b": 1})
    down = RationalFn("ab", {"a": 1, "b": 0})
    assert oracle.skeleton_membership(up)
    assert not oracle.skeleton_membership(down)


@pytest.mark.parametrize("oracle", [
    ProximityOracle.r2(),
    ProximityOracle.from_order(chain("abc")),
    ProximityOracle.from_order(VEE),
    ProximityOracle.from_order(antichain("ab")),
    ProximityOracle.from_order(complete_quasi_order("abc")),
], ids=["r2", "chain3", "vee", "antichain2", "complete3"])
def test_axiom_suite_passes(oracle):
    report = check_axioms(oracle, samples=400, seed=13)
    assert report.all_passed(), [r.to_dict() for r in report.results if not r.passed]
    for name in ("P1", "P2", "P3", "P4", "P5", "RP5", "P6", "P7", "P8", "P9"):
        assert report.result(name).premise_hits > 0, name


def test_axiom_suite_deterministic():
    one = check_axioms(ProximityOracle.r2(), samples=200, seed=99)
    two = check_axioms(ProximityOracle.r2(), samples=200, seed=99)
    assert [r.to_dict() for r in one.results] == [r.to_dict() for r in two.results]


def test_p11_fails_exactly_when_a_strict_pair_exists():
    """-(monotone) is not monotone along a strict pair; otherwise P11 holds."""
    failing = [chain("ab"), chain("abc"), VEE]
    holding = [antichain("ab"), antichain("abc")]
    for order in failing:
        report = check_axioms(ProximityOracle.from_order(order), samples=150,
                              seed=14, include_devries=True)
        res = report.result("P11")
        assert not res.passed
        assert res.counterexample is not None
        a = RationalFn(order.elements, res.counterexample["a"])
        b = RationalFn(order.elements, res.counterexample["b"])
        oracle = ProximityOracle.from_order(order)
        assert oracle.decide(a, b)
        assert not oracle.decide(-b, -a)
    for order in holding:
        report = check_axioms(ProximityOracle.from_order(order), samples=150,
                              seed=14, include_devries=True)
        assert report.result("P11").passed
    r2_report = check_axioms(ProximityOracle.r2(), samples=150, seed=14,
                             include_devries=True)
    assert r2_report.result("P11").passed


def test_p12_reporting():
    """P12 fails whenever some point indicator has zero lower envelope."""
    report = check_axioms(ProximityOracle.from_order(chain("ab")), samples=150,
                          seed=15, include_devries=True)
    assert not report.result("P12").passed
    b = RationalFn("ab", report.result("P12").counterexample["b"])
    assert positive_below(ProximityOracle.from_order(chain("ab")), b) is None
    r2_report = check_axioms(ProximityOracle.r2(), samples=150, seed=15,
                             include_devries=True)
    assert not r2_report.result("P12").passed
    free = check_axioms(ProximityOracle.from_order(antichain("abc")),
                        samples=150, seed=15, include_devries=True)
    assert free.result("P12").passed


def test_p12_deterministic_candidate_ignores_carrier_order():
    """A maximal element listed first must not mask the falsifier."""
    top_first = FinitePoset(("t", "a"), [("a", "t")])
    report = check_axioms(ProximityOracle.from_order(top_first), samples=10,
                          seed=16, include_devries=True)
    assert not report.result("P12").passed


def test_positive_below():
    oracle = ProximityOracle.from_order(chain("ab"))
    good = RationalFn("ab", {"a": 0, "b": 1})
    found = positive_below(oracle, good)
    assert found is not None
    assert found.ge(0) and found != RationalFn.zero("ab")
    assert oracle.decide(found, good)
    bad = RationalFn("ab", {"a": 1, "b": 0})
    assert positive_below(oracle, bad) is None


def test_combined_order_and_relative_skeleton():
    oracle = ProximityOracle.from_order(chain("abc"))
    full = SubalgebraPartition.discrete("abc")
    assert combined_order(oracle, full) == QuasiOrder("abc", chain("abc").pairs)
    merged = SubalgebraPartition("abc", (("a", "c"), ("b",)))
    q = combined_order(oracle, merged)
    assert q.leq("c", "a") and q.leq("b", "a")
    assert q.equiv_blocks() == (("a", "b", "c"),)
    rel = relative_skeleton(oracle, merged)
    assert rel.contains(RationalFn.constant("abc", 3))
    assert not rel.contains(RationalFn("abc", {"a": 0, "b": 1, "c": 2}))


def test_is_nachbin_cases():
    full2 = SubalgebraPartition.discrete(("x", "y"))
    assert not is_nachbin(full2, ProximityOracle.r2())
    assert is_nachbin(SubalgebraPartition.discrete("ab"),
                      ProximityOracle.from_order(chain("ab")))
    assert is_nachbin(SubalgebraPartition.discrete("abc"),
                      ProximityOracle.from_order(VEE))
    constants = SubalgebraPartition.indiscrete("ab")
    assert not is_nachbin(SubalgebraPartition.discrete("ab"),
                          ProximityOracle.from_order(complete_quasi_order("ab")))
    # The constants do present the one-point quotient.
    assert is_nachbin(constants, ProximityOracle.from_order(chain("ab")))
    # A merged pair that the order stretches across collapses everything.
    merged = SubalgebraPartition("abc", (("a", "c"), ("b",)))
    assert not is_nachbin(merged, ProximityOracle.from_order(chain("abc")))


def test_is_nachbin_carrier_check():
    with pytest.raises(CarrierMismatch):
        is_nachbin(SubalgebraPartition.discrete("ab"), ProximityOracle.r2())
