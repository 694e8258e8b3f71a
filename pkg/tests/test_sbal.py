"""Monotone cones, the difference envelope, and the S-axiom suite."""

from fractions import Fraction

import pytest

from ordalg import (CarrierMismatch, EnvelopePair, NotAMorphism,
                    NotInSkeleton, NotRepresentable, QuasiOrder, RationalFn,
                    SbalSkeleton, chain, check_skeleton_axioms,
                    complete_quasi_order, concrete_envelope,
                    difference_decompose, envelope_umt, epsilon_embed,
                    monotone_envelope, scale_by_shift)
from ordalg.order import FinitePoset
from ordalg.rng import rng_for, sample_nonneg_scalar, sample_values

VEE = FinitePoset("abc", [("a", "c"), ("b", "c")])


def sk(order=None):
    return SbalSkeleton(order if order is not None else VEE)


def rand_pair(skeleton, rng):
    return EnvelopePair(skeleton, skeleton.sample_member(rng),
                        skeleton.sample_member(rng))


def test_membership():
    s = sk(chain("ab"))
    up = RationalFn("ab", {"a": 0, "b": 1})
    down = RationalFn("ab", {"a": 1, "b": 0})
    assert s.contains(up)
    assert not s.contains(down)
    assert s.contains_nonneg(up)
    assert not s.contains_nonneg(up - 1)
    with pytest.raises(NotInSkeleton):
        s.require_member(down)


def test_envelope_is_least_member_above():
    s = sk()
    f = RationalFn("abc", {"a": 2, "b": 0, "c": 1})
    env = s.envelope(f)
    assert env == monotone_envelope(f, VEE, "upper")
    assert s.contains(env) and f.le(env)


def test_scale_by_shift_matches_pointwise():
    """r * a computed through shifts agrees with plain scaling."""
    rng = rng_for(31, "shift-scale")
    s = sk()
    for _ in range(40):
        a = s.sample_member(rng)
        r = sample_nonneg_scalar(rng)
        assert scale_by_shift(s, a, r) == a.scale(r)


def test_pair_equivalence_and_hash():
    s = sk(chain("ab"))
    two = RationalFn.constant("ab", 2)
    five = RationalFn.constant("ab", 5)
    three = RationalFn.constant("ab", 3)
    z = s.zero()
    assert EnvelopePair(s, five, three) == EnvelopePair(s, two, z)
    assert hash(EnvelopePair(s, five, three)) == hash(EnvelopePair(s, two, z))
    assert EnvelopePair(s, five, two) != EnvelopePair(s, two, z)


def test_pair_requires_cone_members():
    s = sk(chain("ab"))
    down = RationalFn("ab", {"a": 1, "b": 0})
    with pytest.raises(NotInSkeleton):
        EnvelopePair(s, down, s.zero())


def test_pinned_join_and_mul():
    """[3,1] v [2,4] = [7,5] ~ 2 and [3,1] * [2,4] ~ -4 on a point."""
    s = sk(FinitePoset(("x",), ()))

    def pair(u, v):
        return EnvelopePair(s, RationalFn.constant(("x",), u),
                            RationalFn.constant(("x",), v))

    j = pair(3, 1).join(pair(2, 4))
    assert (j.pos.values["x"], j.neg.values["x"]) == (7, 5)
    assert j.diff() == RationalFn.constant(("x",), 2)
    m = pair(3, 1) * pair(2, 4)
    assert m.diff() == RationalFn.constant(("x",), -4)


def test_pair_ops_match_difference_evaluation():
    """Every pair operation commutes with [a, b] |-> a - b."""
    rng = rng_for(32, "pair-oracle")
    for order in (VEE, chain("abc"), QuasiOrder("abc", [("a", "b"), ("b", "a")])):
        s = SbalSkeleton(order)
        for _ in range(60):
            p = rand_pair(s, rng)
            q = rand_pair(s, rng)
            r = sample_nonneg_scalar(rng)
            assert (p + q).diff() == p.diff() + q.diff()
            assert (p - q).diff() == p.diff() - q.diff()
            assert (-p).diff() == -(p.diff())
            assert (p * q).diff() == p.diff() * q.diff()
            assert p.join(q).diff() == p.diff().join(q.diff())
            assert p.meet(q).diff() == p.diff().meet(q.diff())
            assert p.scale(r).diff() == p.diff().scale(r)
            assert p.scale(-r).diff() == p.diff().scale(-r)
            assert p.shift(r) == p
            assert p.le(q) == p.diff().le(q.diff())
            assert (p == q) == (p.diff() == q.diff())


def test_pair_scalar_coercion():
    s = sk(chain("ab"))
    p = epsilon_embed(s, s.one())
    assert (p + 1).diff() == RationalFn.constant("ab", 2)
    assert (3 - p).diff() == RationalFn.constant("ab", 2)
    assert (p * Fraction(-1, 2)).diff() == RationalFn.constant("ab", Fraction(-1, 2))
    assert p.join(2).diff() == RationalFn.constant("ab", 2)
    assert p.meet(0).diff() == RationalFn.constant("ab", 0)
    assert EnvelopePair.zero(s).le(EnvelopePair.one(s))


def test_epsilon_embed_is_injective_hom():
    rng = rng_for(33, "embed")
    s = sk()
    for _ in range(30):
        a, b = s.sample_member(rng), s.sample_member(rng)
        assert epsilon_embed(s, a) + epsilon_embed(s, b) == epsilon_embed(s, a + b)
        assert epsilon_embed(s, a.join(b)) == epsilon_embed(s, a).join(epsilon_embed(s, b))
        if a != b:
            assert epsilon_embed(s, a) != epsilon_embed(s, b)


def test_envelope_umt_extends_identity():
    """The forced extension of the cone inclusion is difference evaluation."""
    rng = rng_for(34, "umt")
    s = sk()
    for _ in range(20):
        p = rand_pair(s, rng)
        value = envelope_umt(lambda a: a, p, seed=5)
        assert value == p.diff()


def test_envelope_umt_rejects_non_morphism():
    s = sk(chain("ab"))
    p = EnvelopePair.one(s)
    with pytest.raises(NotAMorphism):
        envelope_umt(lambda a: a + 1, p, seed=5)
    with pytest.raises(NotAMorphism):
        envelope_umt(lambda a: a.scale(2), p, seed=5)


def test_difference_decompose_cases():
    s = sk(chain("abc"))
    mono = RationalFn("abc", {"a": 0, "b": 1, "c": 1})
    f, g = difference_decompose(s, mono)
    assert (f, g) == (mono, s.zero())
    wavy = RationalFn("abc", {"a": 1, "b": 0, "c": 2})
    f, g = difference_decompose(s, wavy)
    assert s.contains(f) and s.contains(g)
    assert f - g == wavy
    with pytest.raises(CarrierMismatch):
        difference_decompose(s, RationalFn(("x",), {"x": 0}))


def test_difference_decompose_respects_equivalence():
    loop = QuasiOrder("abc", [("a", "b"), ("b", "a")])
    s = sk(loop)
    bad = RationalFn("abc", {"a": 0, "b": 1, "c": 0})
    with pytest.raises(NotRepresentable) as err:
        difference_decompose(s, bad)
    assert err.value.details["block"] == ["a", "b"]
    ok = RationalFn("abc", {"a": 1, "b": 1, "c": 0})
    f, g = difference_decompose(s, ok)
    assert f - g == ok and s.contains(f) and s.contains(g)


def test_concrete_envelope_blocks():
    loop = QuasiOrder("abc", [("a", "b"), ("b", "a")])
    assert concrete_envelope(sk(loop)).blocks == (("a", "b"), ("c",))
    assert concrete_envelope(sk(chain("ab"))).blocks == (("a",), ("b",))
    assert concrete_envelope(
        SbalSkeleton(complete_quasi_order("ab"))).blocks == (("a", "b"),)


@pytest.mark.parametrize("order", [chain("abc"), VEE, complete_quasi_order("ab"),
                                   FinitePoset("ab", [])])
def test_skeleton_axioms_pass(order):
    report = check_skeleton_axioms(SbalSkeleton(order), samples=400, seed=9)
    assert report.all_passed(), [r.to_dict() for r in report.results if not r.passed]
    assert [r.name for r in report.results] == [f"S{i}" for i in range(1, 10)]
    s9 = report.result("S9")
    assert s9.premise_hits > 0


def archimedean_premise_by_scan(a, b, c, d, max_n=64):
    """Direct scan of n(a) + b <= n(c) + d for n = 1..max_n.

    When a point has a(x) > c(x) the premise provably fails at some finite
    n, so the scan is extended far enough to see it.
    """
    bound = max_n
    for x in a.carrier:
        if a.values[x] > c.values[x]:
            need = (d.values[x] - b.values[x]) / (a.values[x] - c.values[x])
            bound = max(bound, int(need) + 2)
    return all((a.scale(n) + b).le(c.scale(n) + d) for n in range(1, bound + 1)), bound


def test_s9_premise_closed_form_matches_scan():
    """The exact archimedean premise equals an explicit scan over n."""
    from ordalg import archimedean_premise

    rng = rng_for(35, "s9")
    s = sk()
    hits = 0
    for _ in range(200):
        a, b = s.sample_member(rng), s.sample_member(rng)
        c, d = s.sample_member(rng), s.sample_member(rng)
        closed = archimedean_premise(a, b, c, d)
        scanned, bound = archimedean_premise_by_scan(a, b, c, d)
        if closed:
            # Sufficient check only up to the scan bound; failure there
            # would still falsify the closed form.
            assert scanned, (a.values, b.values, c.values, d.values)
            hits += 1
        else:
            assert not scanned
    assert hits > 0
