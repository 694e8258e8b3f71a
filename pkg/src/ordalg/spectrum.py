"""Ordered spectra of finite function algebras.

Every maximal lattice-algebra ideal of a block algebra is the set of
functions vanishing on one block, so the spectrum of a subalgebra is its
partition.  The proximity orders the spectrum through the operator

    thd(I) = { a : |a| <= c for some nonnegative reflexive c in I },

which on a finite carrier sends the ideal of functions vanishing on Z to
the ideal of functions vanishing on the downset of Z (for the order that
presents the reflexive cone inside the algebra).  Writing M_y for the
ideal of a point y, the spectral order is

    M_x <= M_y  iff  thd(M_y) is contained in M_x,

and the containment is decided by a single canonical witness: the 0/1
indicator c*_y of the complement of y's downset.  It is the pointwise
largest normalized nonnegative reflexive element of M_y, so

    M_x <= M_y  iff  c*_y(x) = 0,

and c*_y itself certifies every failing containment.

:func:`eta` sends a point to its vanishing ideal and is verified to be an
order isomorphism onto the spectrum; :func:`phi` evaluates algebra
elements on the spectrum; :func:`enumerate_adjunction` matches monotone
maps into a spectrum with proximity-preserving algebra morphisms out of
its algebra, exhaustively at small sizes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Tuple

from . import rng as rngmod
from .errors import NotAMorphism, TooLargeToEnumerate, UnknownElement
from .fnalg import RationalFn, SubalgebraPartition
from .order import FinitePoset, QuasiOrder, enumerate_monotone_maps
from .proximity import ProximityOracle, combined_order, relative_skeleton
from .sbal import SbalSkeleton, concrete_envelope

ADJUNCTION_CAP = 4


@dataclass(frozen=True)
class MaxIdeal:
    """The maximal ideal of functions vanishing on one partition block."""

    block: tuple

    @property
    def label(self) -> str:
        return "M(" + "|".join(self.block) + ")"

    def contains(self, f: RationalFn) -> bool:
        return all(f.values[z] == 0 for z in self.block)


@dataclass(frozen=True)
class LIdeal:
    """A lattice-algebra ideal of a block algebra: vanish on a zero set."""

    carrier: tuple
    zero_set: tuple

    def __post_init__(self):
        members = set(self.zero_set)
        if not members <= set(self.carrier):
            raise UnknownElement("zero set mentions labels outside the carrier",
                                 {"zero_set": list(self.zero_set)})
        object.__setattr__(self, "zero_set",
                           tuple(z for z in self.carrier if z in members))

    def contains(self, f: RationalFn) -> bool:
        return all(f.values[z] == 0 for z in self.zero_set)

    def subset_of(self, other: "LIdeal") -> bool:
        # Vanishing on more points is the smaller ideal.
        return set(other.zero_set) <= set(self.zero_set)


def spectrum(algebra: SubalgebraPartition) -> Tuple[MaxIdeal, ...]:
    """One maximal ideal per block, in block order."""
    return tuple(MaxIdeal(block) for block in algebra.blocks)


def point_ideal(algebra: SubalgebraPartition, x: str) -> MaxIdeal:
    return MaxIdeal(algebra.block_of(x))


def canonical_witness(order: QuasiOrder, block: tuple) -> RationalFn:
    """The indicator c*_y of the complement of a block's downset.

    Monotone, nonnegative, vanishing on the block, and pointwise largest
    among 0/1-normalized such functions, so it alone decides whether the
    thd-image of the block's ideal sits inside another point ideal.
    """
    down = set(order.downset_of(block))
    return RationalFn(order.elements,
                      {z: Fraction(0) if z in down else Fraction(1) for z in order.elements})


def thd(oracle: ProximityOracle, algebra: SubalgebraPartition, ideal: LIdeal) -> LIdeal:
    """The ideal generated by the nonnegative reflexive part of ``ideal``.

    Concretely: functions vanishing on the downset of the zero set, in the
    order presenting the reflexive cone inside the algebra.
    """
    order = combined_order(oracle, algebra)
    return LIdeal(ideal.carrier, order.downset_of(ideal.zero_set))


@dataclass
class OrderedSpectrum:
    """The spectrum of a subalgebra with its proximity-induced order.

    ``certificates`` maps every failing relation (x, y) to the canonical
    witness c*_y showing thd(M_y) is not contained in M_x.
    """

    algebra: SubalgebraPartition
    points: Tuple[MaxIdeal, ...]
    order: QuasiOrder
    certificates: Dict[Tuple[str, str], RationalFn]

    @property
    def is_partial_order(self) -> bool:
        return self.order.is_antisymmetric

    def ideal_by_label(self, label: str) -> MaxIdeal:
        for point in self.points:
            if point.label == label:
                return point
        raise UnknownElement(f"no spectrum point labeled {label!r}", {"label": label})

    def as_poset(self) -> FinitePoset:
        return FinitePoset(self.order.elements, self.order.pairs)

    def to_dict(self) -> dict:
        return {"points": [list(p.block) for p in self.points],
                "order": self.order.to_dict(),
                "is_partial_order": self.is_partial_order}


def induced_order(algebra: SubalgebraPartition, oracle: ProximityOracle) -> OrderedSpectrum:
    """Order the spectrum by thd-containment, decided by canonical witnesses."""
    order = combined_order(oracle, algebra)
    points = spectrum(algebra)
    witnesses = {p: canonical_witness(order, p.block) for p in points}
    pairs = []
    certificates: Dict[Tuple[str, str], RationalFn] = {}
    for px in points:
        for py in points:
            if witnesses[py].values[px.block[0]] == 0:
                pairs.append((px.label, py.label))
            else:
                certificates[(px.label, py.label)] = witnesses[py]
    spec_order = QuasiOrder(tuple(p.label for p in points), pairs)
    return OrderedSpectrum(algebra, points, spec_order, certificates)


@dataclass
class EtaReport:
    """The unit map of the duality on one space, with its verification."""

    space: FinitePoset
    spectrum: OrderedSpectrum
    mapping: Dict[str, MaxIdeal]
    is_bijective: bool
    is_order_isomorphism: bool

    def to_dict(self) -> dict:
        return {"mapping": {x: m.label for x, m in self.mapping.items()},
                "spectrum": self.spectrum.to_dict(),
                "is_bijective": self.is_bijective,
                "is_order_isomorphism": self.is_order_isomorphism}


def eta(space: FinitePoset) -> EtaReport:
    """x |-> M_x into the spectrum of the full algebra, checked point by point."""
    algebra = SubalgebraPartition.discrete(space.elements)
    oracle = ProximityOracle.from_order(space)
    spec = induced_order(algebra, oracle)
    mapping = {x: point_ideal(algebra, x) for x in space.elements}
    labels = [m.label for m in mapping.values()]
    bijective = (len(set(labels)) == len(labels)
                 and set(labels) == {p.label for p in spec.points})
    iso = bijective and all(
        space.leq(x, y) == spec.order.leq(mapping[x].label, mapping[y].label)
        for x in space.elements for y in space.elements)
    return EtaReport(space, spec, mapping, bijective, iso)


def phi(algebra: SubalgebraPartition, f: RationalFn,
        spec: Optional[OrderedSpectrum] = None) -> RationalFn:
    """Evaluate an algebra element on the spectrum: block value per ideal."""
    algebra.require_member(f)
    points = spec.points if spec is not None else spectrum(algebra)
    return RationalFn(tuple(p.label for p in points),
                      {p.label: f.values[p.block[0]] for p in points})


@dataclass
class PhiReport:
    """Sampled preserve/reflect comparison for the evaluation map."""

    checked: int
    related_hits: int
    mismatches: List[dict]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_dict(self) -> dict:
        return {"checked": self.checked, "related_hits": self.related_hits,
                "ok": self.ok, "mismatches": self.mismatches[:5]}


def phi_respects_proximity(space: FinitePoset, *, samples: int = 1000,
                           seed: int = rngmod.DEFAULT_SEED) -> PhiReport:
    """phi preserves and reflects the relation, on sampled pairs.

    The source relation is decided by the skeleton oracle on the space; the
    target relation by a fresh oracle over the spectral order computed from
    canonical witnesses.  Half the sampled pairs are built to be related so
    both directions of the equivalence get exercised.
    """
    oracle = ProximityOracle.from_order(space)
    algebra = SubalgebraPartition.discrete(space.elements)
    spec = induced_order(algebra, oracle)
    spec_oracle = ProximityOracle.from_order(spec.order)
    rng = rngmod.rng_for(seed, "phi-respects")
    carrier = space.elements
    report = PhiReport(0, 0, [])
    for _ in range(samples):
        a = RationalFn(carrier, rngmod.sample_values(rng, carrier))
        if rng.random() < 0.5:
            b = oracle.witness(a) + RationalFn(carrier, rngmod.sample_nonneg_values(rng, carrier))
        else:
            b = RationalFn(carrier, rngmod.sample_values(rng, carrier))
        source = oracle.decide(a, b)
        target = spec_oracle.decide(phi(algebra, a, spec), phi(algebra, b, spec))
        report.checked += 1
        report.related_hits += source
        if source != target:
            report.mismatches.append({"a": a.to_dict()["values"], "b": b.to_dict()["values"],
                                      "source": source, "target": target})
    return report


@dataclass
class SpectralMap:
    """A morphism into a function algebra, in spectral form.

    ``point_map`` sends each point of the codomain's space to a spectrum
    label of the source algebra; the morphism itself acts by
    ``f |-> phi(f) o point_map``.  ``dual_map`` is the induced map between
    the two spectra, i.e. the same assignment read on vanishing ideals.
    """

    point_map: Dict[str, str]
    dual_map: Dict[str, str]
    order_preserving: bool
    skeleton_preserving: bool

    def to_dict(self) -> dict:
        return {"point_map": dict(sorted(self.point_map.items())),
                "dual_map": dict(sorted(self.dual_map.items())),
                "order_preserving": self.order_preserving,
                "skeleton_preserving": self.skeleton_preserving}


def apply_point_map(source_spec: OrderedSpectrum, point_map: Mapping[str, str],
                    f: RationalFn, space: FinitePoset) -> RationalFn:
    """The morphism determined by a point map, applied to one function."""
    values = phi(source_spec.algebra, f, source_spec)
    return RationalFn(space.elements, {x: values.values[point_map[x]] for x in space.elements})


class _AdjunctionContext:
    """Shared spectral data for repeated legality checks over one skeleton."""

    def __init__(self, skeleton: SbalSkeleton):
        self.skeleton = skeleton
        self.oracle = ProximityOracle.from_skeleton(skeleton)
        self.algebra = concrete_envelope(skeleton)
        self.spec = induced_order(self.algebra, self.oracle)
        self.relative = relative_skeleton(self.oracle, self.algebra)
        order = combined_order(self.oracle, self.algebra)
        self.witnesses = [canonical_witness(order, p.block) for p in self.spec.points]


def dual_morphism(point_map: Mapping[str, str], space: FinitePoset,
                  skeleton: SbalSkeleton, *, seed: int = rngmod.DEFAULT_SEED,
                  samples: int = 64, _ctx: Optional[_AdjunctionContext] = None) -> SpectralMap:
    """Check a spectral point map presents a proximity-preserving morphism.

    Legality is decided two independent ways and both must agree:

    * structurally, the point map must be monotone from the space into the
      spectral order (the canonical witnesses pull back monotone exactly
      then), and
    * by sampling, images of reflexive elements must stay reflexive, with
      the canonical witnesses themselves always included in the sample.

    Raises NotAMorphism when illegal; otherwise returns the map together
    with the induced map between spectra.
    """
    ctx = _ctx if _ctx is not None else _AdjunctionContext(skeleton)
    spec = ctx.spec
    spec_labels = set(spec.order.elements)
    for x in space.elements:
        if point_map.get(x) not in spec_labels:
            raise UnknownElement(f"point map sends {x!r} outside the spectrum",
                                 {"element": x, "image": point_map.get(x)})

    structural = all(spec.order.leq(point_map[x], point_map[y]) for x, y in space.pairs)

    space_cone = SbalSkeleton(space)
    rng = rngmod.rng_for(seed, "dual-morphism")
    probes = list(ctx.witnesses)
    probes += [ctx.relative.sample_member(rng) for _ in range(samples)]
    sampled = all(
        space_cone.contains(apply_point_map(spec, point_map, s, space)) for s in probes)

    if structural != sampled:
        raise NotAMorphism("structural and sampled legality disagree",
                           {"structural": structural, "sampled": sampled})
    if not structural:
        x, y = next((x, y) for x, y in space.pairs
                    if not spec.order.leq(point_map[x], point_map[y]))
        raise NotAMorphism("point map is not monotone into the spectral order",
                           {"pair": [x, y], "images": [point_map[x], point_map[y]]})

    dual = {point_ideal(SubalgebraPartition.discrete(space.elements), x).label: point_map[x]
            for x in space.elements}
    return SpectralMap(dict(point_map), dual, structural, sampled)


@dataclass
class AdjunctionReport:
    """Exhaustive match between space maps and algebra morphisms."""

    space: FinitePoset
    spectrum: OrderedSpectrum
    monotone_maps: List[dict]
    morphism_maps: List[dict]
    theta: List[Tuple[dict, dict]]
    bijective: bool
    naturality_ok: bool

    @property
    def count(self) -> int:
        return len(self.theta)

    def to_dict(self) -> dict:
        return {"monotone_maps": len(self.monotone_maps),
                "morphisms": len(self.morphism_maps),
                "bijective": self.bijective,
                "naturality_ok": self.naturality_ok}


def _map_key(h: Mapping[str, str]) -> tuple:
    return tuple(sorted(h.items()))


def _separating_family(algebra: SubalgebraPartition) -> List[RationalFn]:
    """Block indicators; they separate the spectrum points of the algebra."""
    return [RationalFn(algebra.carrier,
                       {z: Fraction(1) if z in block else Fraction(0)
                        for z in algebra.carrier})
            for block in algebra.blocks]


def recover_point_map(action: Callable[[RationalFn], RationalFn],
                      spec: OrderedSpectrum, space: FinitePoset) -> Dict[str, str]:
    """Read the spectral point map off a morphism given only by its action.

    For each point of the space there must be exactly one spectrum point
    agreeing with the action on every block indicator; unital
    lattice-algebra morphisms into a function algebra always have one.
    """
    family = _separating_family(spec.algebra)
    evaluated = [(phi(spec.algebra, f, spec), action(f)) for f in family]
    out: Dict[str, str] = {}
    for x in space.elements:
        matches = [p.label for p in spec.points
                   if all(img.values[x] == vals.values[p.label] for vals, img in evaluated)]
        if len(matches) != 1:
            raise NotAMorphism("action does not evaluate at a unique spectrum point",
                               {"point": x, "matches": matches})
        out[x] = matches[0]
    return out


def enumerate_adjunction(space: FinitePoset, skeleton: SbalSkeleton, *,
                         seed: int = rngmod.DEFAULT_SEED) -> AdjunctionReport:
    """Enumerate both hom-sets and verify the canonical correspondence.

    Monotone maps from the space into the spectrum are enumerated
    directly.  Candidate morphisms are all point maps; the legal ones are
    kept (legality itself is double-checked inside dual_morphism).  The
    correspondence sends a morphism to the composite of its dual with the
    unit map, and must match the monotone maps one to one.  Naturality is
    checked on sampled composites with monotone reindexings of the space
    and of the spectrum.
    """
    ctx = _AdjunctionContext(skeleton)
    spec = ctx.spec
    if len(space.elements) > ADJUNCTION_CAP or len(spec.points) > ADJUNCTION_CAP:
        raise TooLargeToEnumerate(
            f"adjunction enumeration is capped at {ADJUNCTION_CAP} points per side",
            {"space": len(space.elements), "spectrum": len(spec.points),
             "cap": ADJUNCTION_CAP})

    spec_poset = spec.as_poset()
    monotone_maps = enumerate_monotone_maps(space, spec_poset)

    unit = eta(space)

    def transport(dual: SpectralMap) -> dict:
        return {x: dual.dual_map[unit.mapping[x].label] for x in space.elements}

    morphisms: List[dict] = []
    theta: List[Tuple[dict, dict]] = []
    for images in itertools.product(spec_poset.elements, repeat=len(space.elements)):
        h = dict(zip(space.elements, images))
        try:
            dual = dual_morphism(h, space, skeleton, seed=seed, samples=8, _ctx=ctx)
        except NotAMorphism:
            continue
        morphisms.append(h)
        theta.append((h, transport(dual)))

    image_keys = [_map_key(t) for _, t in theta]
    bijective = (len(set(image_keys)) == len(image_keys)
                 and set(image_keys) == {_map_key(h) for h in monotone_maps})

    naturality_ok = _check_naturality(space, skeleton, ctx, theta, seed)

    return AdjunctionReport(space, spec, monotone_maps, morphisms, theta,
                            bijective, naturality_ok)


def _check_naturality(space: FinitePoset, skeleton: SbalSkeleton,
                      ctx: _AdjunctionContext, theta: List[Tuple[dict, dict]],
                      seed: int) -> bool:
    """Both composition squares, on sampled composites.

    Space side: reindexing the space by a monotone endo psi turns a
    morphism alpha into one acting by f |-> alpha(f) o psi.  That
    composite's point map is recovered from its action alone, transported
    through the unit, and must equal the transported map of alpha composed
    with psi.

    Algebra side: a monotone endo k of the spectrum presents an algebra
    endomorphism beta with action f |-> (values of f) o k read back on the
    carrier; the transported map of alpha o beta must equal k after the
    transported map of alpha.
    """
    rng = rngmod.rng_for(seed, "adjunction-naturality")
    spec = ctx.spec
    spec_poset = spec.as_poset()
    endos_space = enumerate_monotone_maps(space, space)
    endos_spec = enumerate_monotone_maps(spec_poset, spec_poset)
    unit = eta(space)

    def transported_of(point_map: dict) -> dict:
        dual = dual_morphism(point_map, space, skeleton, seed=seed, samples=4, _ctx=ctx)
        return {x: dual.dual_map[unit.mapping[x].label] for x in space.elements}

    if not theta:
        return True
    for _ in range(16):
        h, t_h = theta[rng.randrange(len(theta))]
        psi = endos_space[rng.randrange(len(endos_space))]
        k = endos_spec[rng.randrange(len(endos_spec))]

        def alpha(f: RationalFn) -> RationalFn:
            return apply_point_map(spec, h, f, space)

        # Space-side square.
        def reindexed(f: RationalFn) -> RationalFn:
            g = alpha(f)
            return RationalFn(space.elements, {x: g.values[psi[x]] for x in space.elements})

        lhs = transported_of(recover_point_map(reindexed, spec, space))
        rhs = {x: t_h[psi[x]] for x in space.elements}
        if lhs != rhs:
            return False

        # Algebra-side square.
        label_of = {z: MaxIdeal(spec.algebra.block_of(z)).label
                    for z in spec.algebra.carrier}

        def beta(f: RationalFn) -> RationalFn:
            vals = phi(spec.algebra, f, spec)
            return RationalFn(spec.algebra.carrier,
                              {z: vals.values[k[label_of[z]]] for z in spec.algebra.carrier})

        lhs2 = transported_of(recover_point_map(lambda f: alpha(beta(f)), spec, space))
        rhs2 = {x: k[t_h[x]] for x in space.elements}
        if lhs2 != rhs2:
            return False
    return True
