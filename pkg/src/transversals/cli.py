"""Command-line front end.

Exit codes: 0 the command completed (whatever the answer), 1 verification
failure or ``--expect`` mismatch, 2 usage or input error.  Result documents
are deterministic JSON; the wall time goes to stderr as a trailing line.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction

from .approx import approx_maxhyp
from .errors import TransversalError
from .exactmath import (Flat, Hyperplane, PointFamily, combination, flat_contains,
                        format_point, format_rational)
from .lpcore import Counter, Intersecting, flat_hull_point, hulls_intersect
from .reductions import (BinPackingInstance, Graph, SubsetSumInstance, TriviallyNo,
                         binpacking_to_equal, clique_to_flattrans, equalbin_to_flattrans,
                         flattrans_to_hyptrans, has_clique, solve_equalbin, solve_subsetsum,
                         subsetsum_to_hyptrans, twopoint_to_segments)
from .solvers import (SegmentFamily, finite_flat_transversal, maxhyp_exact,
                      segment_hyperplane_transversal, segment_meets)
from .wellsep import NotWellSeparated, is_well_separated

REDUCTIONS = ("subsetsum", "binpacking-equal", "equalbin-flattrans", "flattrans-lift",
              "twopoint-segments", "clique")


class InputError(Exception):
    """Malformed document; reported with exit code 2."""


# -- parsing -------------------------------------------------------------------------

def rational(x) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise InputError(f"rationals must be integers or strings, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise InputError(f"cannot parse rational {x!r}") from None
    raise InputError(f"cannot parse rational {x!r}")


def integer(x) -> int:
    q = rational(x)
    if q.denominator != 1:
        raise InputError(f"expected an integer, got {x!r}")
    return int(q)


def point(raw, dimension):
    if not isinstance(raw, list) or len(raw) != dimension:
        raise InputError(f"expected a point with {dimension} coordinates, got {raw!r}")
    return tuple(rational(x) for x in raw)


def load(path):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    return doc, hashlib.sha256(text.encode()).hexdigest()


def need(doc, key):
    if key not in doc:
        raise InputError(f"missing field {key!r}")
    return doc[key]


def expect_kind(doc, *kinds):
    kind = doc.get("kind")
    if kind not in kinds:
        raise InputError(f"expected kind {' or '.join(kinds)}, got {kind!r}")
    return kind


def parse_points(doc) -> PointFamily:
    expect_kind(doc, "points")
    D = integer(need(doc, "dimension"))
    if "sets" in doc:
        sets = [[point(p, D) for p in s] for s in need(doc, "sets")]
    else:
        sets = [[point(p, D)] for p in need(doc, "points")]
    return PointFamily(D, sets)


def parse_segments(doc) -> SegmentFamily:
    expect_kind(doc, "segments")
    D = integer(need(doc, "dimension"))
    segs = []
    for s in need(doc, "segments"):
        if not isinstance(s, list) or len(s) != 2:
            raise InputError(f"a segment is a pair of endpoints, got {s!r}")
        segs.append((point(s[0], D), point(s[1], D)))
    return SegmentFamily(D, segs)


def parse_subsetsum(doc):
    expect_kind(doc, "subsetsum")
    return SubsetSumInstance(tuple(integer(x) for x in need(doc, "a")), integer(need(doc, "b")))


def parse_binpacking(doc):
    expect_kind(doc, "binpacking")
    return BinPackingInstance(tuple(integer(x) for x in need(doc, "w")),
                              integer(need(doc, "bins")), integer(need(doc, "capacity")),
                              bool(doc.get("equal", False)))


def parse_graph(doc):
    expect_kind(doc, "graph")
    edges = need(doc, "edges")
    if any(not isinstance(e, list) or len(e) != 2 for e in edges):
        raise InputError("edges are pairs of vertex labels")
    return Graph(integer(need(doc, "n")), frozenset(tuple(integer(v) for v in e) for e in edges))


# -- serialization -------------------------------------------------------------------------

def flat_json(flat: Flat):
    return {"base": format_point(flat.base), "basis": [format_point(v) for v in flat.basis]}


def hyperplane_json(h: Hyperplane):
    return {"normal": format_point(h.normal), "offset": format_rational(h.offset)}


def points_doc(family: PointFamily, target=None, origin=None):
    doc = {"kind": "points", "dimension": family.dimension,
           "sets": [[format_point(p) for p in s] for s in family.sets]}
    if target is not None:
        doc["target"] = target
    if origin is not None:
        doc["origin"] = origin
    return doc


def segments_doc(segs: SegmentFamily, origin=None):
    doc = {"kind": "segments", "dimension": segs.dimension,
           "segments": [[format_point(p), format_point(q)] for p, q in segs.segments]}
    if origin is not None:
        doc["origin"] = origin
    return doc


def dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def result(name, echo, answer, certificate=None, counter=None):
    doc = {"command": dict(name=name, **echo), "answer": answer}
    if certificate is not None:
        doc["certificate"] = certificate
    if counter is not None:
        doc["statistics"] = {"candidates": counter.candidates, "lps": counter.lps}
    return doc


# -- commands -------------------------------------------------------------------------------

def cmd_transversal(args):
    doc, digest = load(args.file)
    counter = Counter()
    workers = args.threads
    if doc.get("kind") == "segments":
        segs = parse_segments(doc)
        h = segment_hyperplane_transversal(segs, workers, counter)
        echo = {"input_sha256": digest, "hyperplane": True}
        cert = None if h is None else {"answer": "yes", "hyperplane": hyperplane_json(h)}
        return result("transversal", echo, "yes" if h else "no", cert, counter)
    family = parse_points(doc)
    if args.hyperplane:
        m = family.dimension - 1
    elif args.target is not None:
        m = args.target
    elif "target" in doc:
        m = integer(doc["target"])
    else:
        raise InputError("give --target, --hyperplane, or a target field in the instance")
    cert = finite_flat_transversal(family, m, workers, counter)
    echo = {"input_sha256": digest, "target": m}
    if cert is None:
        return result("transversal", echo, "no", None, counter)
    body = {"answer": "yes", "target": m, "chosen": list(cert.chosen), "flat": flat_json(cert.flat)}
    return result("transversal", echo, "yes", body, counter)


def witness_json(wit):
    return {"I": list(wit.I), "point": format_point(wit.point),
            "weights": {str(i): format_point(w) for i, w in enumerate(wit.weights)}}


def cmd_wellsep(args):
    doc, digest = load(args.file)
    family = parse_points(doc)
    counter = Counter()
    out = is_well_separated(family, args.threads, counter)
    echo = {"input_sha256": digest}
    if isinstance(out, NotWellSeparated):
        body = {"answer": "no", "flat": flat_json(out.flat), "witness": witness_json(out.witness)}
        return result("wellsep", echo, "no", body, counter)
    return result("wellsep", echo, "yes", None, counter)


def cmd_maxhyp(args):
    doc, digest = load(args.file)
    family = parse_points(doc)
    pts = family.points()
    counter = Counter()
    echo = {"input_sha256": digest, "mode": args.mode}
    if args.mode == "exact":
        rep = maxhyp_exact(pts, family.dimension, counter)
        body = {"answer": "yes", "hyperplane": hyperplane_json(rep.hyperplane), "count": rep.count}
    else:
        rep = approx_maxhyp(pts, family.dimension, counter)
        body = {"answer": "yes", "hyperplane": hyperplane_json(rep.hyperplane), "count": rep.count,
                "case": rep.case, "fk": rep.fk}
        if rep.group_size is not None:
            body["group_size"] = rep.group_size
    return result("maxhyp", echo, "yes", body, counter)


def cmd_reduce(args):
    doc, digest = load(args.file)
    kind = args.kind
    origin = {"reduction": kind, "source_sha256": digest}
    if args.mode:
        origin["mode"] = args.mode
    if kind == "subsetsum":
        fam = subsetsum_to_hyptrans(parse_subsetsum(doc))
        out = points_doc(fam, fam.dimension - 1, origin)
    elif kind == "binpacking-equal":
        inst = binpacking_to_equal(parse_binpacking(doc))
        if isinstance(inst, TriviallyNo):
            out = {"kind": "trivially-no", "reason": inst.reason, "origin": origin}
        else:
            out = {"kind": "binpacking", "w": list(inst.w), "bins": inst.bins,
                   "capacity": inst.capacity, "equal": True, "origin": origin}
    elif kind == "equalbin-flattrans":
        fam, target = equalbin_to_flattrans(parse_binpacking(doc))
        out = points_doc(fam, target, origin)
    elif kind == "flattrans-lift":
        mode = args.mode or "repaired"
        origin["mode"] = mode
        src = parse_points(doc)
        fam = flattrans_to_hyptrans(src, mode)
        if mode == "paper" and src.k < src.dimension + 1:
            origin["warning"] = ("paper mode is not answer-preserving: three or more "
                                 "padding points (0,..,0,1,i) are collinear")
        out = points_doc(fam, fam.dimension - 1, origin)
    elif kind == "twopoint-segments":
        mode = args.mode or "paper"
        origin["mode"] = mode
        segs = twopoint_to_segments(parse_points(doc), mode)
        if mode == "paper":
            origin["warning"] = ("paper mode lifts each gadget by a private coordinate, "
                                 "which lets the gadget be met anywhere; not answer-preserving")
        out = segments_doc(segs, origin)
    else:  # clique
        k = args.k if args.k is not None else doc.get("k")
        if k is None:
            raise InputError("clique reduction needs --k")
        fam, target = clique_to_flattrans(parse_graph(doc), integer(k))
        origin["k"] = integer(k)
        out = points_doc(fam, target, origin)
    return out


def cmd_oracle(args):
    doc, digest = load(args.file)
    kind = doc.get("kind")
    echo = {"input_sha256": digest}
    if kind == "subsetsum":
        sub = solve_subsetsum(parse_subsetsum(doc))
        cert = None if sub is None else {"answer": "yes", "subset": sorted(sub)}
    elif kind == "binpacking":
        assign = solve_equalbin(parse_binpacking(doc))
        cert = None if assign is None else {"answer": "yes", "bins": list(assign)}
    elif kind == "graph":
        k = args.k if args.k is not None else doc.get("k")
        if k is None:
            raise InputError("clique oracle needs --k")
        echo["k"] = integer(k)
        clique = has_clique(parse_graph(doc), integer(k))
        cert = None if clique is None else {"answer": "yes", "clique": sorted(clique)}
    else:
        raise InputError(f"no oracle for kind {kind!r}")
    return result("oracle", echo, "no" if cert is None else "yes", cert)


# -- verification -------------------------------------------------------------------------------

def parse_flat(raw, D):
    base = point(need(raw, "base"), D)
    return Flat(base, tuple(point(v, D) for v in raw.get("basis", [])))


def parse_hyperplane(raw, D):
    return Hyperplane(point(need(raw, "normal"), D), rational(need(raw, "offset")))


def verify_clauses(doc, cert):
    """List of (clause, ok, detail) for every block present in ``cert``."""
    clauses = []
    if doc.get("kind") == "segments":
        segs = parse_segments(doc)
        if "hyperplane" in cert:
            h = parse_hyperplane(cert["hyperplane"], segs.dimension)
            miss = [i for i, (p, q) in enumerate(segs.segments) if not segment_meets(h, p, q)]
            clauses.append(("segments", not miss, f"missed segments {miss}" if miss else
                            f"meets all {len(segs.segments)} segments"))
        return clauses
    family = parse_points(doc)
    D, k = family.dimension, family.k
    witness = cert.get("witness")
    flat = parse_flat(cert["flat"], D) if "flat" in cert else None

    if flat is not None:
        if witness is not None:
            bound, what = k - 2, "k-2"
        else:
            target = cert.get("target", doc.get("target"))
            bound, what = (D if target is None else integer(target)), "target"
        ok = flat.dim <= bound
        clauses.append(("dimension", ok, f"flat dim {flat.dim} vs {what} {bound}"))
        if "chosen" in cert:
            chosen = cert["chosen"]
            bad = []
            if len(chosen) != k:
                bad.append("length")
            else:
                for i, j in enumerate(chosen):
                    if not isinstance(j, int) or not 0 <= j < len(family.sets[i]) or \
                            not flat_contains(flat, family.sets[i][j]):
                        bad.append(i)
            clauses.append(("membership", not bad,
                            f"sets off the flat: {bad}" if bad else f"all {k} chosen points on the flat"))
        else:
            miss = [i for i, s in enumerate(family.sets) if not s or flat_hull_point(flat, s) is None]
            clauses.append(("hull-lp", not miss,
                            f"flat misses hulls {miss}" if miss else f"flat meets all {k} hulls"))

    if witness is not None:
        I = [integer(i) for i in need(witness, "I")]
        pt = point(need(witness, "point"), D)
        raw = need(witness, "weights")
        weights = []
        for i, s in enumerate(family.sets):
            w = raw.get(str(i), ["0"] * len(s)) if isinstance(raw, dict) else raw[i]
            weights.append([rational(x) for x in w])
        rest = [i for i in range(k) if i not in I]
        proper = bool(I) and bool(rest) and all(0 <= i < k for i in I)
        clauses.append(("split", proper, f"I={I}"))
        shape = all(len(w) == len(s) for w, s in zip(weights, family.sets))
        sums = [sum(w for i in side for w in weights[i]) for side in (I, rest)] if shape else []
        convex = shape and all(x >= 0 for w in weights for x in w) and sums == [1, 1]
        clauses.append(("convexity", convex,
                        "weights nonnegative, each side sums to 1" if convex else
                        f"side sums {[format_rational(x) for x in sums]}"))
        if shape:
            reproduce = all(
                combination([w for i in side for w in weights[i]],
                            [p for i in side for p in family.sets[i]], D) == pt
                for side in (I, rest))
        else:
            reproduce = False
        clauses.append(("reproduction", reproduce, "both sides reproduce the point" if reproduce
                        else "a side does not reproduce the point"))
        if proper:
            out = hulls_intersect([p for i in I for p in family.sets[i]],
                                  [p for i in rest for p in family.sets[i]])
            clauses.append(("split-lp", isinstance(out, Intersecting), "side hulls intersect"
                            if isinstance(out, Intersecting) else "side hulls are separated"))

    if "hyperplane" in cert:
        h = parse_hyperplane(cert["hyperplane"], D)
        pts = family.points()
        if "count" in cert:
            real = h.count(pts)
            ok = real == integer(cert["count"])
            clauses.append(("count", ok, f"recounted {real}, claimed {cert['count']}"))
        else:
            miss = [i for i, s in enumerate(family.sets) if not any(h.contains(p) for p in s)]
            clauses.append(("membership", not miss, f"sets missed: {miss}" if miss else
                            "hyperplane meets every set"))
    return clauses


def cmd_verify(args, out):
    doc, _ = load(args.instance)
    cert, _ = load(args.certificate)
    if "certificate" in cert or "command" in cert:
        cert = cert.get("certificate")
        if cert is None:
            out.write("no certificate block: nothing to verify\n")
            return 0
    clauses = verify_clauses(doc, cert)
    if not clauses:
        out.write("no certificate block: nothing to verify\n")
        return 0
    for name, ok, detail in clauses:
        out.write(f"{name}: {'verified' if ok else 'failed'} ({detail})\n")
    return 0 if all(ok for _, ok, _ in clauses) else 1


# -- entry point -------------------------------------------------------------------------------

def build_parser():
    ap = argparse.ArgumentParser(prog="transversals",
                                 description="Exact transversal and well-separation tools.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
        p.add_argument("--output", help="write the JSON document here instead of stdout")
        p.add_argument("--expect", choices=("yes", "no"),
                       help="exit 1 unless the answer matches")

    p = sub.add_parser("transversal", help="decide an m-flat or hyperplane transversal")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--target", type=int, help="flat dimension m")
    g.add_argument("--hyperplane", action="store_true", help="target m = D-1")
    common(p)

    p = sub.add_parser("wellsep", help="decide well-separation")
    p.add_argument("file")
    common(p)

    p = sub.add_parser("maxhyp", help="hyperplane through the most points")
    p.add_argument("file")
    p.add_argument("--mode", choices=("exact", "approx"), default="exact")
    common(p)

    p = sub.add_parser("reduce", help="build a reduction instance")
    p.add_argument("kind", choices=REDUCTIONS)
    p.add_argument("file")
    p.add_argument("--mode", choices=("paper", "repaired", "planar"))
    p.add_argument("--k", type=int, help="clique size for the clique reduction")
    common(p)

    p = sub.add_parser("verify", help="re-check a certificate against an instance")
    p.add_argument("instance")
    p.add_argument("certificate")

    p = sub.add_parser("oracle", help="brute-force the combinatorial source problem")
    p.add_argument("file")
    p.add_argument("--k", type=int, help="clique size for graph instances")
    common(p)
    return ap


def emit(text, path):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "verify":
            return cmd_verify(args, sys.stdout)
        if args.command == "reduce":
            if args.mode and (args.kind, args.mode) not in {
                    ("flattrans-lift", "paper"), ("flattrans-lift", "repaired"),
                    ("twopoint-segments", "paper"), ("twopoint-segments", "planar")}:
                raise InputError(f"--mode {args.mode} does not apply to {args.kind}")
            doc = cmd_reduce(args)
            emit(dump(doc), args.output)
            summary = f"{args.kind}: kind {doc['kind']}"
            if doc["kind"] == "points":
                summary += f", {len(doc['sets'])} sets in R^{doc['dimension']}, target {doc['target']}"
            elif doc["kind"] == "segments":
                summary += f", {len(doc['segments'])} segments in R^{doc['dimension']}"
            if "warning" in doc.get("origin", {}):
                summary += f"\nwarning: {doc['origin']['warning']}"
            print(summary, file=sys.stdout if args.output else sys.stderr)
            return 0
        if args.threads < 1:
            raise InputError("--threads must be at least 1")
        handler = {"transversal": cmd_transversal, "wellsep": cmd_wellsep,
                   "maxhyp": cmd_maxhyp, "oracle": cmd_oracle}[args.command]
        doc = handler(args)
        emit(dump(doc), args.output)
        print(f"wall_time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
        if args.expect and doc["answer"] != args.expect:
            print(f"expected {args.expect}, got {doc['answer']}", file=sys.stderr)
            return 1
        return 0
    except (InputError, TransversalError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
