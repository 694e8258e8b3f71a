"""Constructive approximation inside skeleton cones.

Two procedures, both exact over the rationals.

:func:`sw_approximate` builds, for a cone member f and a tolerance eps, a
member a of the cone with ||f - a|| <= eps out of finitely many canonical
pieces.  For a grid value r and a point y below the level set
F_r = {f >= r} the piece

    a_{r,y} = r + (s - r) * (b_y ^ 1),    b_y = 2 * c*_y,

(with s = max f and c*_y the 0/1 indicator of the complement of y's
downset) satisfies r <= a_{r,y} <= s, equals r at y and s on F_r, and
dominates f.  One piece is chosen per carrier point, with r the smallest
grid value above f at that point, and a is the meet of the chosen pieces.
The grid steps by eps/2 above min f, which makes the chosen r land within
eps of f pointwise; the attained values of f and the top value s are kept
in the grid as well.  The returned certificate carries every constructed
piece so the inequalities above can be re-checked verbatim.

:func:`dieudonne_claim` interpolates: given f totally below g (possibly
only through a stream of approximant pairs) and a radius r, it returns a
cone member a with f - r <= a <= g.  :func:`dieudonne_sequence` iterates
the claim with radii 1/2, 1/4, ... producing a trace a_0 = a_1, a_2, ...
satisfying, exactly at every step n >= 1,

    f - 1/2^n <= a_n <= g                          (lower-upper bounds)
    a_{n-1} - 1/2^{n-1} <= a_n <= a_{n-1} + 1/2^{n-1}   (successive gaps)

so the terms form a Cauchy sequence approaching the order interval [f, g]
inside the cone.
"""

from __future__ import annotations

import itertools
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import (
    CarrierMismatch,
    NoApproximantWithinTolerance,
    NonPositiveEpsilon,
)
from .fnalg import RationalFn, SubalgebraPartition, as_fraction
from .order import require_monotone
from .proximity import ProximityOracle
from .sbal import SbalSkeleton
from .spectrum import canonical_witness

STREAM_SCAN_LIMIT = 4096


@dataclass(frozen=True)
class FamilyMember:
    """One constructed piece a_{r,y}, with the level set it tops out on."""

    r: Fraction
    y: str
    fn: RationalFn
    upset: tuple


@dataclass
class SWCertificate:
    """Approximant plus everything needed to re-check it from scratch."""

    approximant: RationalFn
    epsilon: Fraction
    grid: tuple
    family: Tuple[FamilyMember, ...]
    cover: tuple

    @property
    def family_size(self) -> int:
        return len(self.family)

    def to_dict(self) -> dict:
        return {"approximant": self.approximant.to_dict(),
                "epsilon": str(self.epsilon),
                "family_size": self.family_size,
                "grid_size": len(self.grid),
                "cover": [[x, i] for x, i in self.cover]}


def _sw_grid(values: Sequence[Fraction], epsilon: Fraction) -> List[Fraction]:
    """Attained values and the eps/2 ladder, clipped to (min, max], plus max."""
    top, bottom = max(values), min(values)
    grid = {v for v in values if bottom < v <= top}
    step = epsilon / 2
    k = 1
    while bottom + k * step <= top:
        grid.add(bottom + k * step)
        k += 1
    grid.add(top)
    return sorted(grid)


def sw_approximate(f: RationalFn, skeleton: SbalSkeleton, epsilon) -> SWCertificate:
    """A cone member within epsilon of f, in the uniform norm, with certificate.

    f must itself be a cone member; the meet of the constructed pieces then
    satisfies f <= a and a <= f + epsilon pointwise, both exactly.
    """
    epsilon = as_fraction(epsilon)
    if epsilon <= 0:
        raise NonPositiveEpsilon("the tolerance must be positive", {"epsilon": str(epsilon)})
    order = skeleton.order
    require_monotone(f, order)

    if f.is_constant():
        return SWCertificate(f, epsilon, (), (), ())

    top = f.max_value()
    grid = _sw_grid([f.values[x] for x in order.elements], epsilon)

    family: List[FamilyMember] = []
    index: dict = {}
    cover: List[tuple] = []

    def member(r: Fraction, y: str) -> int:
        if (r, y) in index:
            return index[(r, y)]
        b_y = canonical_witness(order, (y,)).scale(2)
        fn = b_y.meet(1).scale(top - r) + r
        upset = tuple(x for x in order.elements if f.values[x] >= r)
        family.append(FamilyMember(r, y, fn, upset))
        index[(r, y)] = len(family) - 1
        return index[(r, y)]

    for x in order.elements:
        value = f.values[x]
        if value < top:
            r = grid[bisect_right(grid, value)]
            cover.append((x, member(r, x)))
        else:
            y = next(z for z in order.elements if f.values[z] < top)
            cover.append((x, member(top, y)))

    approximant = family[cover[0][1]].fn
    for _, i in cover[1:]:
        approximant = approximant.meet(family[i].fn)

    return SWCertificate(approximant, epsilon, tuple(grid), tuple(family), tuple(cover))


def _default_stream(f: RationalFn, g: RationalFn) -> List[tuple]:
    return [(f, g)]


def dieudonne_claim(f: RationalFn, g: RationalFn, oracle: ProximityOracle, r,
                    stream: Optional[Iterable] = None) -> RationalFn:
    """A cone member a with f - r <= a <= g, from an approximant stream.

    The stream presents the relation "f totally below g in the limit": its
    pairs (f_n, g_n) must each satisfy f_n totally below g_n.  The claim
    scans for a pair within r/2 of (f, g) in the uniform norm, takes the
    oracle's interpolant a' between f_n and g_n, and returns a' - r/2.
    When no stream is given the constant stream [(f, g)] is used, so the
    relation must then hold on the nose.
    """
    r = as_fraction(r)
    if r <= 0:
        raise NonPositiveEpsilon("the radius must be positive", {"radius": str(r)})
    pairs = _default_stream(f, g) if stream is None else stream
    half = r / 2
    scanned = 0
    for fn, gn in itertools.islice(iter(pairs), STREAM_SCAN_LIMIT):
        scanned += 1
        if (f - fn).sup_norm() > half or (g - gn).sup_norm() > half:
            continue
        if not oracle.decide(fn, gn):
            continue
        interpolant = oracle.witness(fn)
        return interpolant - half
    raise NoApproximantWithinTolerance(
        "no stream pair landed within the tolerance",
        {"radius": str(r), "scanned": scanned})


@dataclass
class DieudonneTrace:
    """The refinement sequence a_0 = a_1, a_2, ..., with its inputs."""

    f: RationalFn
    g: RationalFn
    terms: Tuple[RationalFn, ...]
    limit_witness: Optional[RationalFn]

    @property
    def steps(self) -> int:
        return len(self.terms) - 1

    def bound_violations(self) -> List[dict]:
        """Exact per-step checks of the two trace invariants; empty means good."""
        out = []
        for n in range(1, len(self.terms)):
            a_n, prev = self.terms[n], self.terms[n - 1]
            tol = Fraction(1, 2 ** n)
            gap = Fraction(1, 2 ** (n - 1))
            if not (self.f - tol).le(a_n):
                out.append({"step": n, "invariant": "lower"})
            if not a_n.le(self.g):
                out.append({"step": n, "invariant": "upper"})
            if (a_n - prev).sup_norm() > gap:
                out.append({"step": n, "invariant": "gap"})
        return out

    def to_dict(self) -> dict:
        return {"steps": self.steps,
                "terms": [t.to_dict()["values"] for t in self.terms],
                "violations": self.bound_violations(),
                "limit_witness": (self.limit_witness.to_dict()["values"]
                                  if self.limit_witness is not None else None)}


def dieudonne_sequence(f: RationalFn, g: RationalFn, oracle: ProximityOracle,
                       steps: int, stream: Optional[Sequence] = None) -> DieudonneTrace:
    """Iterate the interpolation claim with dyadically shrinking radii.

    Step m squeezes the next term between f v (a_m - 1/2^{m+1}) minus the
    new radius and g ^ (a_m + 1/2^m), reusing the claim on the squeezed
    pair; with a stream, the stream's pairs are squeezed the same way.
    When f is totally below g on the nose the exact order-interval witness
    (the envelope of f, met with g) is reported alongside the trace.
    """
    if steps < 1:
        raise NonPositiveEpsilon("need at least one step", {"steps": steps})
    a1 = dieudonne_claim(f, g, oracle, Fraction(1, 2), stream)
    terms = [a1, a1]
    for m in range(1, steps):
        lower_pad = Fraction(1, 2 ** (m + 1))
        upper_pad = Fraction(1, 2 ** m)
        a_m = terms[-1]
        u = f.join(a_m - lower_pad)
        v = g.meet(a_m + upper_pad)
        squeezed = None
        if stream is not None:
            squeezed = [(fn.join(a_m - lower_pad), gn.meet(a_m + upper_pad))
                        for fn, gn in stream]
        terms.append(dieudonne_claim(u, v, oracle, lower_pad, squeezed))

    witness = None
    if oracle.decide(f, g):
        witness = oracle.witness(f).meet(g)
    return DieudonneTrace(f, g, tuple(terms), witness)


@dataclass
class ClosednessReport:
    """Topological closedness of a subalgebra and of its reflexive cone."""

    algebra_closed: bool
    skeleton_closed: bool
    algebra_reason: str
    skeleton_reason: str

    @property
    def agree(self) -> bool:
        return self.algebra_closed == self.skeleton_closed

    def to_dict(self) -> dict:
        return {"algebra_closed": self.algebra_closed,
                "skeleton_closed": self.skeleton_closed,
                "agree": self.agree,
                "algebra_reason": self.algebra_reason,
                "skeleton_reason": self.skeleton_reason}


def closed_iff_skeleton_closed(algebra: SubalgebraPartition,
                               oracle: ProximityOracle) -> ClosednessReport:
    """Both closedness checks; on a finite carrier both are structural.

    A block algebra is the solution set of finitely many value equalities
    f(u) = f(v) over its blocks, and a reflexive cone of either built-in
    oracle kind is the solution set of finitely many weak inequalities
    f(x) <= f(y); both kinds of solution sets are closed in the
    finite-dimensional function space, so each verdict is forced by the
    presentation rather than computed from samples.  They are still
    reported separately so the agreement stays an observable fact.
    """
    if set(algebra.carrier) != set(oracle.carrier):
        raise CarrierMismatch("algebra carrier differs from the oracle carrier",
                              {"algebra": list(algebra.carrier),
                               "oracle": list(oracle.carrier)})
    return ClosednessReport(
        True, True,
        "finite intersection of agreement hyperplanes f(u) = f(v)",
        "finite intersection of closed half-spaces f(x) <= f(y)")
