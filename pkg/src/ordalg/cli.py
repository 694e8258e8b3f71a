"""Command-line front end over JSON documents.

Every command prints a handful of plain-text summary lines followed by a
single JSON object with sorted keys, so output is byte-identical across
runs with the same inputs and seed.  Exit status 0 means every check
passed, 1 means a mathematical check failed (the JSON then carries a
counterexample block sufficient to replay the case), 2 means the input
was unusable.

Document formats, all UTF-8 JSON:

    order     {"elements": ["p", "q"], "leq": [["p", "q"]]}
    function  {"carrier": ["p", "q"], "values": {"p": "-3", "q": "1/2"}}
    skeleton  {"quasiorder": <order>}  or  {"generators": [<function>, ...]}
    algebra   {"carrier": [...], "blocks": [["p", "q"], ...]}

Rationals are canonical strings "n" or "n/d".  Orders are closed
reflexively and transitively on load; generator skeletons induce the
quasi-order x below y iff g(x) <= g(y) for every generator g.
"""

from __future__ import annotations

import argparse
import json
from fractions import Fraction
from typing import List, Optional, Sequence

from .approx import dieudonne_sequence, sw_approximate
from .errors import (CarrierMismatch, EmptyCarrier, NonPositiveEpsilon,
                     OrdalgError, TooLargeToEnumerate, UnknownElement)
from .fnalg import RationalFn, SubalgebraPartition
from .order import FinitePoset, QuasiOrder, is_monotone, monotone_envelope
from .proximity import (DEVRIES_AXIOMS, ProximityOracle, check_axioms,
                        is_nachbin, prox_decide, separation_point)
from .rng import DEFAULT_SEED
from .sbal import SbalSkeleton, check_skeleton_axioms
from .sbal_plus import roundtrip_pq
from .spectrum import (enumerate_adjunction, eta, induced_order,
                       phi_respects_proximity, spectrum)

# Errors that mean the invocation itself is unusable, not that a checked
# mathematical statement is false.
INPUT_ERRORS = (UnknownElement, EmptyCarrier, CarrierMismatch,
                TooLargeToEnumerate, NonPositiveEpsilon)


class _InputError(Exception):
    """Unusable input: missing file, bad JSON, malformed document."""

    def __init__(self, message: str, details: Optional[dict] = None):
        super().__init__(message)
        self.details = details or {}


def _emit(lines: Sequence[str], payload: dict) -> None:
    for line in lines:
        print(line)
    print(json.dumps(payload, indent=2, sort_keys=True, default=str))


# -- document loading --------------------------------------------------

def _load_doc(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise _InputError(f"{path} must hold a JSON object")
    return doc


def _order_from_doc(doc: dict, *, antisymmetric: bool) -> QuasiOrder:
    if not isinstance(doc.get("elements"), list) or not isinstance(doc.get("leq"), list):
        raise _InputError('an order document needs "elements" and "leq" lists')
    pairs = []
    for item in doc["leq"]:
        if not isinstance(item, list) or len(item) != 2:
            raise _InputError(f'"leq" entries must be pairs, got {item!r}')
        pairs.append(tuple(item))
    try:
        if antisymmetric:
            return FinitePoset(doc["elements"], pairs)
        return QuasiOrder(doc["elements"], pairs)
    except OrdalgError as exc:
        raise _InputError(str(exc), exc.details) from exc


def _load_poset(path: str) -> FinitePoset:
    return _order_from_doc(_load_doc(path), antisymmetric=True)


def _load_function(path: str) -> RationalFn:
    doc = _load_doc(path)
    try:
        return RationalFn.from_dict(doc)
    except (OrdalgError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise _InputError(f"{path} is not a valid function document: {exc}") from exc


def _load_skeleton(path: str) -> SbalSkeleton:
    doc = _load_doc(path)
    if "quasiorder" in doc:
        return SbalSkeleton(_order_from_doc(doc["quasiorder"], antisymmetric=False))
    if "generators" in doc:
        try:
            gens = [RationalFn.from_dict(d) for d in doc["generators"]]
        except (OrdalgError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise _InputError(f"bad generator in {path}: {exc}") from exc
        if not gens:
            raise _InputError("a generator skeleton needs at least one function")
        carrier = gens[0].carrier
        if any(g.carrier != carrier for g in gens):
            raise _InputError("generators must share one carrier")
        pairs = [(x, y) for x in carrier for y in carrier
                 if all(g.values[x] <= g.values[y] for g in gens)]
        return SbalSkeleton(QuasiOrder(carrier, pairs))
    raise _InputError(f'{path} must hold "quasiorder" or "generators"')


def _oracle_from(args) -> ProximityOracle:
    if getattr(args, "oracle", None) is not None:
        return ProximityOracle.r2()
    return ProximityOracle.from_skeleton(_load_skeleton(args.skeleton))


def _skeleton_from(args) -> SbalSkeleton:
    if getattr(args, "poset", None) is not None:
        return SbalSkeleton(_load_poset(args.poset))
    return _load_skeleton(args.skeleton)


def _algebra_from(args, carrier: tuple) -> SubalgebraPartition:
    if getattr(args, "algebra", None) is None:
        return SubalgebraPartition.discrete(carrier)
    doc = _load_doc(args.algebra)
    if not isinstance(doc.get("carrier"), list) or not isinstance(doc.get("blocks"), list):
        raise _InputError('an algebra document needs "carrier" and "blocks" lists')
    try:
        algebra = SubalgebraPartition(tuple(doc["carrier"]),
                                      tuple(tuple(b) for b in doc["blocks"]))
    except OrdalgError as exc:
        raise _InputError(str(exc), exc.details) from exc
    if set(algebra.carrier) != set(carrier):
        raise _InputError("algebra carrier differs from the oracle carrier",
                          {"algebra": list(algebra.carrier), "oracle": list(carrier)})
    return algebra


def _parse_fraction(text: str, flag: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise _InputError(f"{flag} needs a rational like 3 or 1/8, got {text!r}") from exc


def _two_way_pair(order: QuasiOrder) -> List[str]:
    for x, y in order.sorted_pairs():
        if x != y and order.leq(y, x):
            return [x, y]
    raise AssertionError("no antisymmetry violation present")


# -- commands ----------------------------------------------------------

def cmd_validate(args) -> int:
    order = _order_from_doc(_load_doc(args.poset), antisymmetric=False)
    payload = {"order": order.to_dict(), "antisymmetric": order.is_antisymmetric}
    if order.is_antisymmetric:
        _emit([f"validate: PASS ({len(order.elements)} elements, partial order)"], payload)
        return 0
    pair = _two_way_pair(order)
    payload["counterexample"] = {"pair": pair}
    if args.expect_quasi:
        _emit([f"validate: PASS (quasi-order; {pair[0]} and {pair[1]} are order-equivalent)"],
              payload)
        return 0
    _emit([f"validate: FAIL (antisymmetry fails on {pair[0]}, {pair[1]})"], payload)
    return 1


def cmd_envelope(args) -> int:
    skeleton = _skeleton_from(args)
    f = _load_function(args.function)
    env = monotone_envelope(f, skeleton.order, args.direction)
    payload = {"direction": args.direction, "function": f.to_dict(),
               "envelope": env.to_dict(),
               "already_member": is_monotone(f, skeleton.order)}
    _emit([f"envelope: PASS ({args.direction} envelope computed)"], payload)
    return 0


def cmd_prox(args) -> int:
    oracle = _oracle_from(args)
    a = _load_function(args.left)
    b = _load_function(args.right)
    related, witness = prox_decide(oracle, a, b)
    payload = {"related": related, "left": a.to_dict(), "right": b.to_dict()}
    if related:
        payload["witness"] = witness.to_dict()
        _emit(["prox: PASS (related; interpolating member reported)"], payload)
        return 0
    payload["counterexample"] = separation_point(oracle, a, b)
    point = payload["counterexample"]["point"]
    _emit([f"prox: FAIL (not related; envelope exceeds bound at {point})"], payload)
    return 1


def cmd_axioms(args) -> int:
    oracle = _oracle_from(args)
    prox_report = check_axioms(oracle, samples=args.samples, seed=args.seed,
                               include_devries=args.devries)
    skel_report = check_skeleton_axioms(oracle.skeleton, samples=args.samples,
                                        seed=args.seed)
    lines = []
    failed = []
    for report in (prox_report, skel_report):
        for res in report.results:
            if res.name in DEVRIES_AXIOMS:
                verdict = "holds" if res.passed else "counterexample found"
            else:
                verdict = "PASS" if res.passed else "FAIL"
                if not res.passed:
                    failed.append(res.name)
            lines.append(f"{res.name}: {verdict} "
                         f"({res.premise_hits}/{res.checked} premise hits)")
    payload = {"proximity": prox_report.to_dict(), "skeleton": skel_report.to_dict(),
               "failed": failed}
    if failed:
        lines.append(f"axioms: FAIL ({', '.join(failed)})")
        _emit(lines, payload)
        return 1
    lines.append("axioms: PASS")
    _emit(lines, payload)
    return 0


def cmd_spectrum(args) -> int:
    oracle = _oracle_from(args)
    algebra = _algebra_from(args, oracle.carrier)
    points = spectrum(algebra)
    payload = {"algebra": algebra.to_dict(),
               "points": [{"label": p.label, "block": list(p.block)} for p in points],
               "separates_points": algebra.separates_points}
    _emit([f"spectrum: PASS ({len(points)} maximal ideals)"], payload)
    return 0


def cmd_induced_order(args) -> int:
    oracle = _oracle_from(args)
    algebra = _algebra_from(args, oracle.carrier)
    spec = induced_order(algebra, oracle)
    payload = {"spectrum": spec.to_dict(),
               "nachbin": is_nachbin(algebra, oracle),
               "certificates": [{"pair": [x, y], "witness": w.to_dict()["values"]}
                                for (x, y), w in sorted(spec.certificates.items())]}
    if spec.is_partial_order:
        _emit([f"induced-order: PASS ({len(spec.points)} points, partial order)"], payload)
        return 0
    pair = _two_way_pair(spec.order)
    payload["counterexample"] = {"pair": pair, "note": "order fails antisymmetry"}
    if args.expect_quasi:
        _emit([f"induced-order: PASS (order fails antisymmetry as expected: "
               f"{pair[0]} and {pair[1]} are order-equivalent)"], payload)
        return 0
    _emit([f"induced-order: FAIL (order fails antisymmetry on {pair[0]}, {pair[1]})"],
          payload)
    return 1


def cmd_roundtrip(args) -> int:
    space = _load_poset(args.poset)
    eta_report = eta(space)
    phi_report = phi_respects_proximity(space, samples=args.samples, seed=args.seed)
    payload = {"eta": eta_report.to_dict(), "phi": phi_report.to_dict()}
    lines = [
        "eta order isomorphism: " + ("PASS" if eta_report.is_order_isomorphism else "FAIL"),
        f"phi preserves/reflects relation on {phi_report.checked} pairs: "
        + ("PASS" if phi_report.ok else "FAIL"),
    ]
    if eta_report.is_order_isomorphism and phi_report.ok:
        _emit(lines + ["roundtrip: PASS"], payload)
        return 0
    _emit(lines + ["roundtrip: FAIL"], payload)
    return 1


def cmd_sw_approx(args) -> int:
    skeleton = _skeleton_from(args)
    f = _load_function(args.function)
    epsilon = _parse_fraction(args.eps, "--eps")
    certificate = sw_approximate(f, skeleton, epsilon)
    error = (f - certificate.approximant).sup_norm()
    payload = {"certificate": certificate.to_dict(), "error": str(error)}
    if error <= epsilon:
        _emit([f"sw-approx: PASS (sup-norm error {error} <= {epsilon}, "
               f"family size {certificate.family_size})"], payload)
        return 0
    payload["counterexample"] = {"error": str(error), "epsilon": str(epsilon)}
    _emit([f"sw-approx: FAIL (sup-norm error {error} > {epsilon})"], payload)
    return 1


def cmd_dieudonne(args) -> int:
    oracle = _oracle_from(args)
    f = _load_function(args.left)
    g = _load_function(args.right)
    trace = dieudonne_sequence(f, g, oracle, args.steps)
    violations = trace.bound_violations()
    payload = {"trace": trace.to_dict()}
    if violations:
        payload["counterexample"] = violations[0]
        _emit([f"dieudonne: FAIL ({len(violations)} bound violations)"], payload)
        return 1
    _emit([f"dieudonne: PASS ({trace.steps} steps, bounds hold)"], payload)
    return 0


def cmd_adjunction(args) -> int:
    space = _load_poset(args.poset)
    if args.skeleton is not None:
        skeleton = _load_skeleton(args.skeleton)
    else:
        skeleton = SbalSkeleton(space)
    report = enumerate_adjunction(space, skeleton, seed=args.seed)
    payload = report.to_dict()
    payload["count"] = report.count
    lines = [
        f"hom-sets: {len(report.monotone_maps)} monotone maps, "
        f"{len(report.morphism_maps)} morphisms",
        "theta bijective: " + ("PASS" if report.bijective else "FAIL"),
        "naturality: " + ("PASS" if report.naturality_ok else "FAIL"),
    ]
    if report.bijective and report.naturality_ok:
        _emit(lines + ["adjunction: PASS"], payload)
        return 0
    _emit(lines + ["adjunction: FAIL"], payload)
    return 1


def cmd_pq_roundtrip(args) -> int:
    skeleton = _skeleton_from(args)
    report = roundtrip_pq(skeleton)
    payload = report.to_dict()
    if report.identical:
        _emit([f"pq-roundtrip: PASS ({report.checked} grid functions, "
               "memberships identical)"], payload)
        return 0
    _emit(["pq-roundtrip: FAIL (membership mismatch)"], payload)
    return 1


# -- parser ------------------------------------------------------------

def _add_oracle_flags(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--oracle", choices=("r2",),
                       help="built-in oracle (the two-point plane analog)")
    group.add_argument("--skeleton", metavar="FILE", help="skeleton document")


def _add_order_source(p: argparse.ArgumentParser) -> None:
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--poset", metavar="FILE", help="order document")
    group.add_argument("--skeleton", metavar="FILE", help="skeleton document")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED,
                        help="root seed for all sampling (default %(default)s)")
    common.add_argument("--samples", type=int, default=1000,
                        help="sample count for randomized checks (default %(default)s)")
    common.add_argument("--expect-quasi", dest="expect_quasi", action="store_true",
                        help="treat an antisymmetry failure as the expected outcome")

    parser = argparse.ArgumentParser(
        prog="ordalg",
        description="Exact duality toolkit for finite ordered spaces and "
                    "their function algebras.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("validate", parents=[common],
                       help="close an order document and check antisymmetry")
    p.add_argument("--poset", required=True, metavar="FILE")
    p.set_defaults(handler=cmd_validate)

    p = sub.add_parser("envelope", parents=[common],
                       help="least/greatest cone member above/below a function")
    _add_order_source(p)
    p.add_argument("--function", required=True, metavar="FILE")
    p.add_argument("--direction", choices=("upper", "lower"), required=True)
    p.set_defaults(handler=cmd_envelope)

    p = sub.add_parser("prox", parents=[common],
                       help="decide the proximity relation on two functions")
    _add_oracle_flags(p)
    p.add_argument("--left", required=True, metavar="FILE")
    p.add_argument("--right", required=True, metavar="FILE")
    p.set_defaults(handler=cmd_prox)

    p = sub.add_parser("axioms", parents=[common],
                       help="run the proximity and skeleton axiom suites")
    _add_oracle_flags(p)
    p.add_argument("--devries", action="store_true",
                   help="also probe the compingent axioms P11 and P12")
    p.set_defaults(handler=cmd_axioms)

    p = sub.add_parser("spectrum", parents=[common],
                       help="maximal ideals of a subalgebra")
    _add_oracle_flags(p)
    p.add_argument("--algebra", metavar="FILE",
                   help="algebra document (default: the full algebra)")
    p.set_defaults(handler=cmd_spectrum)

    p = sub.add_parser("induced-order", parents=[common],
                       help="order the spectrum through the proximity")
    _add_oracle_flags(p)
    p.add_argument("--algebra", metavar="FILE",
                   help="algebra document (default: the full algebra)")
    p.set_defaults(handler=cmd_induced_order)

    p = sub.add_parser("roundtrip", parents=[common],
                       help="verify the unit and evaluation maps on a space")
    p.add_argument("--poset", required=True, metavar="FILE")
    p.set_defaults(handler=cmd_roundtrip)

    p = sub.add_parser("sw-approx", parents=[common],
                       help="approximate a cone member from a separating family")
    _add_order_source(p)
    p.add_argument("--function", required=True, metavar="FILE")
    p.add_argument("--eps", required=True, metavar="Q",
                   help="tolerance, a positive rational")
    p.set_defaults(handler=cmd_sw_approx)

    p = sub.add_parser("dieudonne", parents=[common],
                       help="interpolation sequence between a proximal pair")
    _add_oracle_flags(p)
    p.add_argument("--left", required=True, metavar="FILE")
    p.add_argument("--right", required=True, metavar="FILE")
    p.add_argument("--steps", type=int, default=8, metavar="N")
    p.set_defaults(handler=cmd_dieudonne)

    p = sub.add_parser("adjunction", parents=[common],
                       help="match monotone maps with algebra morphisms")
    p.add_argument("--poset", required=True, metavar="FILE")
    p.add_argument("--skeleton", metavar="FILE",
                   help="target skeleton (default: the poset's own cone)")
    p.set_defaults(handler=cmd_adjunction)

    p = sub.add_parser("pq-roundtrip", parents=[common],
                       help="positive-cone functor roundtrip on a value grid")
    _add_order_source(p)
    p.set_defaults(handler=cmd_pq_roundtrip)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except _InputError as exc:
        _emit([f"error: {exc}"], {"error": str(exc), "details": exc.details})
        return 2
    except INPUT_ERRORS as exc:
        _emit([f"error: {exc}"], {"error": str(exc), "details": exc.details})
        return 2
    except OrdalgError as exc:
        _emit([f"FAIL: {exc}"], {"error": str(exc), "counterexample": exc.details})
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
