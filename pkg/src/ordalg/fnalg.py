"""Exact function algebras on finite carriers.

A :class:`RationalFn` is a map from a finite carrier of string labels into
the rationals, stored as ``fractions.Fraction`` so every lattice-algebra
operation below is exact.  Pointwise sum, product, join and meet make the
full function space a lattice-ordered algebra over the rationals; the
positive part, negative part and absolute value are derived from join and
meet in the usual way:

    a+ = a v 0,   a- = (-a) v 0,   |a| = a v (-a).

Closed unital subalgebras of the full function space correspond exactly to
partitions of the carrier: a subalgebra is the set of functions constant on
each block of its partition.  :func:`generate_closed_subalgebra` computes
the partition generated by a family of functions (the kernel partition),
which is the coarsest partition on which every generator is block-constant
and therefore presents the smallest closed subalgebra containing them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Union

from .errors import CarrierMismatch, EmptyCarrier, NotBlockConstant, UnknownElement

Scalar = Union[Fraction, int, str]


def as_fraction(value: Scalar) -> Fraction:
    """Coerce ints, canonical "n/d" strings and Fractions to Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


class RationalFn:
    """A rational-valued function on a finite ordered carrier.

    The carrier is a tuple of distinct labels; iteration and serialization
    follow the carrier order, so all derived output is deterministic.
    Instances are treated as immutable.
    """

    __slots__ = ("carrier", "values")

    def __init__(self, carrier: Sequence[str], values: Mapping[str, Scalar]):
        carrier = tuple(carrier)
        if not carrier:
            raise EmptyCarrier("a function needs a nonempty carrier")
        if len(set(carrier)) != len(carrier):
            raise UnknownElement("carrier labels must be distinct",
                                 {"carrier": list(carrier)})
        vals = {}
        for x in carrier:
            if x not in values:
                raise UnknownElement(f"no value for carrier element {x!r}", {"element": x})
            vals[x] = as_fraction(values[x])
        extra = set(values) - set(carrier)
        if extra:
            raise UnknownElement(f"values mention labels outside the carrier: {sorted(extra)}",
                                 {"extra": sorted(extra)})
        object.__setattr__(self, "carrier", carrier)
        object.__setattr__(self, "values", vals)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    @classmethod
    def constant(cls, carrier: Sequence[str], value: Scalar) -> "RationalFn":
        r = as_fraction(value)
        return cls(carrier, {x: r for x in carrier})

    @classmethod
    def zero(cls, carrier: Sequence[str]) -> "RationalFn":
        return cls.constant(carrier, 0)

    @classmethod
    def one(cls, carrier: Sequence[str]) -> "RationalFn":
        return cls.constant(carrier, 1)

    def __call__(self, x: str) -> Fraction:
        try:
            return self.values[x]
        except KeyError:
            raise UnknownElement(f"{x!r} is not in the carrier", {"element": x}) from None

    def __getitem__(self, x: str) -> Fraction:
        return self(x)

    def _coerce(self, other: Union["RationalFn", Scalar]) -> "RationalFn":
        if isinstance(other, RationalFn):
            if other.carrier != self.carrier:
                raise CarrierMismatch("functions live on different carriers",
                                      {"left": list(self.carrier), "right": list(other.carrier)})
            return other
        return RationalFn.constant(self.carrier, other)

    def _map2(self, other, op) -> "RationalFn":
        g = self._coerce(other)
        return RationalFn(self.carrier, {x: op(self.values[x], g.values[x]) for x in self.carrier})

    def __add__(self, other):
        return self._map2(other, lambda u, v: u + v)

    __radd__ = __add__

    def __sub__(self, other):
        return self._map2(other, lambda u, v: u - v)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        return self._map2(other, lambda u, v: u * v)

    __rmul__ = __mul__

    def __neg__(self):
        return RationalFn(self.carrier, {x: -v for x, v in self.values.items()})

    def scale(self, r: Scalar) -> "RationalFn":
        r = as_fraction(r)
        return RationalFn(self.carrier, {x: r * v for x, v in self.values.items()})

    def join(self, other) -> "RationalFn":
        return self._map2(other, max)

    def meet(self, other) -> "RationalFn":
        return self._map2(other, min)

    def le(self, other) -> bool:
        """Pointwise order: self(x) <= other(x) everywhere."""
        g = self._coerce(other)
        return all(self.values[x] <= g.values[x] for x in self.carrier)

    def ge(self, other) -> bool:
        return self._coerce(other).le(self)

    def pos_part(self) -> "RationalFn":
        return self.join(0)

    def neg_part(self) -> "RationalFn":
        return (-self).join(0)

    def __abs__(self) -> "RationalFn":
        return self.join(-self)

    def sup_norm(self) -> Fraction:
        return max(abs(v) for v in self.values.values())

    def min_value(self) -> Fraction:
        return min(self.values.values())

    def max_value(self) -> Fraction:
        return max(self.values.values())

    def is_constant(self) -> bool:
        return self.min_value() == self.max_value()

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.carrier == other.carrier and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.carrier, tuple(self.values[x] for x in self.carrier)))

    def __repr__(self) -> str:
        body = ", ".join(f"{x}: {v}" for x, v in self.values.items())
        return f"RationalFn({{{body}}})"

    def to_dict(self) -> dict:
        return {"carrier": list(self.carrier),
                "values": {x: str(self.values[x]) for x in self.carrier}}

    @classmethod
    def from_dict(cls, doc: Mapping) -> "RationalFn":
        return cls(tuple(doc["carrier"]), dict(doc["values"]))


def pos_neg_abs(a: RationalFn):
    """The triple (a+, a-, |a|).  Satisfies a = a+ - a- and |a| = a+ + a-."""
    return a.pos_part(), a.neg_part(), abs(a)


def sup_norm(a: RationalFn) -> Fraction:
    return a.sup_norm()


@dataclass(frozen=True)
class SubalgebraPartition:
    """A closed unital subalgebra, presented by its carrier partition.

    The subalgebra consists of exactly the functions constant on each
    block.  Blocks are kept in a canonical form: within a block, labels
    appear in carrier order; blocks are ordered by their first label.
    """

    carrier: tuple
    blocks: tuple

    def __post_init__(self):
        object.__setattr__(self, "carrier", tuple(self.carrier))
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        if not self.carrier:
            raise EmptyCarrier("a subalgebra needs a nonempty carrier")
        pos = {x: i for i, x in enumerate(self.carrier)}
        seen = []
        for block in self.blocks:
            for x in block:
                if x not in pos:
                    raise UnknownElement(f"block mentions {x!r} outside the carrier", {"element": x})
            seen.extend(block)
        if sorted(seen, key=pos.__getitem__) != list(self.carrier) or len(seen) != len(self.carrier):
            raise UnknownElement("blocks do not partition the carrier",
                                 {"carrier": list(self.carrier),
                                  "blocks": [list(b) for b in self.blocks]})
        canon = tuple(tuple(sorted(b, key=pos.__getitem__)) for b in self.blocks)
        canon = tuple(sorted(canon, key=lambda b: pos[b[0]]))
        object.__setattr__(self, "blocks", canon)

    @classmethod
    def discrete(cls, carrier: Sequence[str]) -> "SubalgebraPartition":
        """The full function algebra: every point is its own block."""
        return cls(tuple(carrier), tuple((x,) for x in carrier))

    @classmethod
    def indiscrete(cls, carrier: Sequence[str]) -> "SubalgebraPartition":
        """The constants: a single block."""
        return cls(tuple(carrier), (tuple(carrier),))

    @property
    def separates_points(self) -> bool:
        return all(len(b) == 1 for b in self.blocks)

    def block_of(self, x: str) -> tuple:
        for block in self.blocks:
            if x in block:
                return block
        raise UnknownElement(f"{x!r} is not in the carrier", {"element": x})

    def contains(self, f: RationalFn) -> bool:
        """Membership: f lies in the subalgebra iff it is block-constant."""
        if f.carrier != self.carrier:
            raise CarrierMismatch("function carrier differs from subalgebra carrier",
                                  {"function": list(f.carrier), "algebra": list(self.carrier)})
        return all(len({f.values[x] for x in block}) == 1 for block in self.blocks)

    def require_member(self, f: RationalFn) -> None:
        if not self.contains(f):
            bad = next(b for b in self.blocks if len({f.values[x] for x in b}) > 1)
            raise NotBlockConstant("function distinguishes points of a block",
                                   {"block": list(bad), "values": {x: str(f.values[x]) for x in bad}})

    def refines(self, other: "SubalgebraPartition") -> bool:
        """True iff every block of self lies inside a block of other."""
        if self.carrier != other.carrier:
            raise CarrierMismatch("partitions live on different carriers")
        return all(set(b) <= set(other.block_of(b[0])) for b in self.blocks)

    def to_dict(self) -> dict:
        return {"carrier": list(self.carrier), "blocks": [list(b) for b in self.blocks]}


def generate_closed_subalgebra(generators: Iterable[RationalFn],
                               carrier: Optional[Sequence[str]] = None) -> SubalgebraPartition:
    """Kernel partition of a generating family.

    Two points fall in the same block iff every generator agrees on them.
    The result is the coarsest partition making all generators
    block-constant, hence the smallest closed unital subalgebra containing
    them.  With no generators the result is the constants.
    """
    gens = list(generators)
    if carrier is None:
        if not gens:
            raise EmptyCarrier("need a carrier when the generating family is empty")
        carrier = gens[0].carrier
    carrier = tuple(carrier)
    for g in gens:
        if g.carrier != carrier:
            raise CarrierMismatch("generators live on different carriers",
                                  {"expected": list(carrier), "found": list(g.carrier)})
    classes: dict = {}
    for x in carrier:
        key = tuple(g.values[x] for g in gens)
        classes.setdefault(key, []).append(x)
    blocks = tuple(tuple(members) for members in classes.values())
    return SubalgebraPartition(carrier, blocks)
