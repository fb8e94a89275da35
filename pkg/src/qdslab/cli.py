"""Command line interface: structure descriptions in, JSON reports out.

Exit codes: 0 success / predicate true, 1 predicate false or not isomorphic,
2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import dataclass, field

from . import __version__, autgroup, geometry, groups, incidence, qds
from .config import Limits
from .errors import CapError, InputError, ParseError, QdsError

_TOP_KEYS = {"group", "qds", "meta"}
_META_KEYS = {"name", "notes"}


@dataclass
class Description:
    group: groups.GroupSpec
    qds: qds.QDSet
    meta: dict = field(default_factory=dict)

    def structure(self):
        return incidence.build(self.group, self.qds, name=self.meta.get("name"))


# ---------------------------------------------------------------------------
# description files


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    return x


def parse_description(doc) -> Description:
    if not isinstance(doc, dict):
        raise ParseError("a description must be a JSON object")
    extra = set(doc) - _TOP_KEYS
    if extra:
        raise ParseError(f"unknown fields {sorted(extra)}")
    for k in ("group", "qds"):
        if k not in doc:
            raise ParseError(f"missing field {k!r}")
    g = doc["group"]
    if not isinstance(g, dict):
        raise ParseError("group must be an object")
    kind = g.get("type")
    allowed = {"cyclic_product": {"type", "moduli"}, "cayley": {"type", "table"}}.get(kind)
    if allowed is None:
        raise ParseError(f"unknown group type {kind!r}")
    if set(g) - allowed:
        raise ParseError(f"unknown group fields {sorted(set(g) - allowed)}")
    if kind == "cyclic_product":
        mod = g.get("moduli")
        if not isinstance(mod, list) or not mod or not all(type(m) is int for m in mod):
            raise ParseError("moduli must be a nonempty list of integers")
    else:
        tab = g.get("table")
        if not isinstance(tab, list) or not all(isinstance(r, list) for r in tab):
            raise ParseError("table must be a list of rows")
    G = groups.make_group(g)
    meta = doc.get("meta", {})
    if not isinstance(meta, dict) or set(meta) - _META_KEYS:
        raise ParseError("meta may only hold 'name' and 'notes'")
    D = doc["qds"]
    if not isinstance(D, list):
        raise ParseError("qds must be a list of element labels")
    D = [tuple(x) if isinstance(x, list) else x for x in D]
    return Description(G, qds.make_qds(G, D), dict(meta))


def load_description(path) -> tuple:
    """(Description, raw bytes) of a description file."""
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as e:
        raise ParseError(f"{path}: not valid JSON ({e})") from None
    return parse_description(doc), raw


def description_doc(G, D, meta=None) -> dict:
    D = qds.make_qds(G, D)
    doc = {"group": G.to_description(), "qds": [_jsonable(x) for x in D.labels]}
    if meta:
        doc["meta"] = dict(meta)
    return doc


def dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# helpers


def _parse_label(G, text):
    """'3' or '1,2' -> group element index."""
    try:
        parts = [int(t) for t in str(text).split(",")]
    except ValueError:
        raise ParseError(f"bad element {text!r}") from None
    lab = parts[0] if len(parts) == 1 and (G.kind == "cayley" or len(G.moduli) == 1) else tuple(parts)
    return G.index(lab)


def _int_list(text):
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise ParseError(f"expected a comma separated list of integers, got {text!r}") from None


def _point_label(S, p):
    return _jsonable(S.points[p])


def _pair_doc(g):
    return {"points": list(g.point_perm), "lines": list(g.line_perm)}


# ---------------------------------------------------------------------------
# commands; each returns (results, exit code)


def cmd_check(args, lim):
    desc, _ = args.loaded[0]
    G, D = desc.group, desc.qds
    want = [k for k in ("qds", "perfect", "star", "pappus_condition", "triangle") if getattr(args, k)]
    if not want:
        want = ["qds"]
    res = {}
    ok = True
    for k in want:
        if k == "qds":
            v = qds.is_qds(G, D)
        elif k == "perfect":
            v = qds.is_perfect_difference_set(G, D)
        elif k == "star":
            w = qds.star_witness(G, D)
            v = w is None
            res["star_witness"] = _jsonable(w)
        elif k == "pappus_condition":
            w = qds.pappus_condition(G, D)
            v = w is not None
            res["pappus_witness"] = _jsonable(w)
        else:
            t = qds.triangle_condition(G, D)
            v = t.kind != "fails"
            res["triangle_kind"] = t.kind
            res["triangle_exceptions"] = _jsonable(t.exceptions)
        res[k] = v
        ok = ok and v
    return res, 0 if ok else 1


def cmd_build(args, lim):
    desc, _ = args.loaded[0]
    S = desc.structure()
    c = S.counts()
    c["is_pls"] = incidence.is_pls(S)
    c["is_configuration"] = incidence.is_configuration(S)
    c["stabilizer_order"] = len(S.provenance.stabilizer)
    c["blocks"] = _jsonable(S.provenance.blocks)
    c["components"] = len(incidence.components(S))
    return c, 0


def cmd_export(args, lim):
    desc, _ = args.loaded[0]
    data = incidence.export(desc.structure(), args.format)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data)
        return {"format": args.format, "out": args.out, "bytes": len(data),
                "sha256": hashlib.sha256(data).hexdigest()}, 0
    sys.stdout.buffer.write(data)
    sys.stdout.flush()
    return None, 0


def cmd_props(args, lim):
    desc, _ = args.loaded[0]
    S = desc.structure()
    want = [k for k in ("veblen", "desargues", "pappus", "dual", "unique_completion") if getattr(args, k)]
    if not want:
        want = ["veblen", "desargues"]
    res = {}
    ok = True
    for k in want:
        if k == "veblen":
            r = geometry.veblen_check(S, max_steps=lim.max_steps)
            res[k] = {"holds": r.holds, "counterexample": r.counterexample}
            v = r.holds
        elif k == "desargues":
            r = geometry.desargues_check(S, max_steps=lim.max_steps)
            res[k] = {"holds": r.holds, "counterexample": r.counterexample, "checked": r.checked}
            v = r.holds
        elif k == "pappus":
            e = geometry.pappus_embed(S, max_steps=lim.max_steps)
            v = e is not None
            res[k] = {"embeds": v}
            if e is not None:
                res[k].update(points=list(e.point_map), lines=list(e.line_map), method=e.method)
        elif k == "dual":
            if S.provenance.group.is_abelian and len(S.provenance.stabilizer) == 1:
                kappa = incidence.standard_correlation(S)
                res[k] = {"self_dual": True, "method": "standard correlation",
                          "point_to_line": list(kappa.point_to_line),
                          "selfconjugate_points": [_point_label(S, p) for p in incidence.selfconjugate_points(S)]}
            else:
                iso = autgroup.isomorphism(S, incidence.dual(S), max_nodes=lim.max_nodes)
                res[k] = {"self_dual": iso is not None, "method": "search",
                          "point_to_line": None if iso is None else list(iso.point_map)}
            v = res[k]["self_dual"]
        else:
            r = geometry.unique_completion_check(S)
            res[k] = {"holds": r.holds, "exact": r.exact,
                      "counts": {"0": r.counts[0], "1": r.counts[1], ">=2": r.counts[2]},
                      "first_failure": r.first_failure}
            v = r.holds
        ok = ok and v
    return res, 0 if ok else 1


def cmd_aut(args, lim):
    desc, _ = args.loaded[0]
    S = desc.structure()
    A = autgroup.automorphism_group(S, max_nodes=lim.max_nodes, enumeration_cap=lim.enumeration_cap)
    res = {"order": A.order, "orbit_sizes": list(A.orbit_sizes), "base": list(A.base),
           "verified_by": A.verified_by, "nodes": A.nodes}
    if not args.order_only:
        res["generators"] = [_pair_doc(g) for g in A.generators]
    code = 0
    if args.stabilizer is not None:
        p = _parse_label(desc.group, args.stabilizer)
        St = autgroup.stabilizer(S, p, max_nodes=lim.max_nodes, enumeration_cap=lim.enumeration_cap)
        res["stabilizer"] = {"point": _point_label(S, p), "order": St.order}
        if not args.order_only:
            res["stabilizer"]["generators"] = [_pair_doc(g) for g in St.generators]
    if args.expected is not None:
        res["expected"] = args.expected
        res["matches_expected"] = A.order == args.expected
        code = 0 if A.order == args.expected else 1
    return res, code


def cmd_iso(args, lim):
    (a, _), (b, _) = args.loaded
    iso = autgroup.isomorphism(a.structure(), b.structure(), max_nodes=lim.max_nodes)
    if iso is None:
        return {"isomorphic": False}, 1
    return {"isomorphic": True, "points": list(iso.point_map), "lines": list(iso.line_map)}, 0


def cmd_make(args, lim):
    if args.canonical:
        D = qds.canonical_set(_int_list(args.canonical))
        doc = description_doc(D.group, D, {"name": f"canonical {args.canonical}"})
    elif args.sum:
        parts = [load_description(p)[0] for p in args.sum]
        for d in parts:
            if not qds.is_qds(d.group, d.qds):
                raise InputError("summands must be quasi difference sets")
        D = qds.qds_sum(*[d.qds for d in parts])
        doc = description_doc(D.group, D)
    elif args.power:
        path, n = args.power
        try:
            n = int(n)
        except ValueError:
            raise ParseError(f"power exponent must be an integer, got {n!r}") from None
        if n < 1:
            raise InputError("power exponent must be >= 1")
        d = load_description(path)[0]
        D = qds.qds_power(d.qds, n)
        doc = description_doc(D.group, D)
    else:
        classes = qds.singer_classes(args.singer, cap=lim.singer_cap, max_steps=lim.max_steps)
        doc = [description_doc(c.representative.group, c.representative,
                               {"name": f"singer q={args.singer} class {i}",
                                "notes": f"multiplier class {c.multiplier_class}"})
               for i, c in enumerate(classes)]
    text = dump_json(doc)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        return {"out": args.out}, 0
    sys.stdout.write(text)
    return None, 0


def cmd_neighborhood(args, lim):
    desc, _ = args.loaded[0]
    S = desc.structure()
    nb = incidence.neighborhood(S, _parse_label(desc.group, args.point))
    return {
        "center": _point_label(S, nb.center),
        "points": [_point_label(S, p) for p in nb.points],
        "lines": [{"label": _jsonable(S.line_labels[l]), "local": [_point_label(S, p) for p in pts]}
                  for l, pts in nb.lines],
        "local_sizes": {str(k): v for k, v in sorted(_size_hist(nb).items())},
    }, 0


def _size_hist(nb):
    h = {}
    for _, pts in nb.meeting:
        h[len(pts)] = h.get(len(pts), 0) + 1
    return h


def cmd_component(args, lim):
    desc, _ = args.loaded[0]
    S = desc.structure()
    c = incidence.component(S, _parse_label(desc.group, args.point))
    return {"size": len(c.points), "points": [_point_label(S, p) for p in c.points],
            "generated_subgroup_order": len(groups.generated_indices(desc.group, desc.qds.elements)),
            "components": len(incidence.components(S))}, 0


def cmd_part(args, lim):
    desc, _ = args.loaded[0]
    S = desc.structure()
    J = _int_list(args.J)
    c = _int_list(args.c) if args.c else []
    part = incidence.j_part(S, J, c)
    T = part.target
    return {"J": J, "c": c, "points": [_point_label(S, p) for p in part.points],
            "target": description_doc(T.provenance.group, T.provenance.qds),
            "point_map": list(part.point_map), "line_map": list(part.line_map)}, 0


# ---------------------------------------------------------------------------
# parser


def build_parser():
    p = argparse.ArgumentParser(prog="qdslab", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp, nfiles=1):
        if nfiles:
            sp.add_argument("files", nargs=nfiles, metavar="FILE")
        sp.add_argument("--max-steps", type=int, default=None, help="step/node cap (overrides QDSLAB_MAX_STEPS)")
        sp.add_argument("--report", default=None, help="write the report here instead of stdout")

    sp = sub.add_parser("check", help="evaluate set predicates")
    common(sp)
    for f in ("qds", "perfect", "star", "pappus-condition", "triangle"):
        sp.add_argument(f"--{f}", action="store_true")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("build", help="build the structure and report its counts")
    common(sp)
    sp.set_defaults(func=cmd_build)

    sp = sub.add_parser("export", help="export json, matrix or levi-dot")
    common(sp)
    sp.add_argument("--format", default="json")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("props", help="geometric properties")
    common(sp)
    for f in ("veblen", "desargues", "pappus", "dual", "unique-completion"):
        sp.add_argument(f"--{f}", action="store_true")
    sp.set_defaults(func=cmd_props)

    sp = sub.add_parser("aut", help="automorphism group")
    common(sp)
    sp.add_argument("--order-only", action="store_true")
    sp.add_argument("--expected", type=int, default=None)
    sp.add_argument("--stabilizer", default=None, metavar="POINT")
    sp.set_defaults(func=cmd_aut)

    sp = sub.add_parser("iso", help="isomorphism test")
    common(sp, 2)
    sp.set_defaults(func=cmd_iso)

    sp = sub.add_parser("make", help="write a description")
    common(sp, 0)
    g = sp.add_mutually_exclusive_group(required=True)
    g.add_argument("--canonical", metavar="MODULI")
    g.add_argument("--sum", nargs=2, metavar="FILE")
    g.add_argument("--power", nargs=2, metavar=("FILE", "N"))
    g.add_argument("--singer", type=int, metavar="Q")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_make)

    sp = sub.add_parser("neighborhood", help="neighborhood of a point")
    common(sp)
    sp.add_argument("point")
    sp.set_defaults(func=cmd_neighborhood)

    sp = sub.add_parser("component", help="connected component of a point")
    common(sp)
    sp.add_argument("point")
    sp.set_defaults(func=cmd_component)

    sp = sub.add_parser("part", help="J-part with coordinates outside J frozen")
    common(sp)
    sp.add_argument("--J", required=True)
    sp.add_argument("--c", default="")
    sp.set_defaults(func=cmd_part)
    return p


def run(argv=None, env=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    t0 = time.perf_counter()
    try:
        lim = Limits.from_env(env, max_steps=args.max_steps,
                              max_nodes=args.max_steps)
        files = getattr(args, "files", None) or []
        args.loaded = [load_description(f) for f in files]
        results, code = args.func(args, lim)
    except CapError as e:
        print(f"qdslab: resource cap: {e}", file=sys.stderr)
        return 3
    except (InputError, QdsError) as e:
        print(f"qdslab: {e}", file=sys.stderr)
        return 2
    if results is None:
        return code
    digest = hashlib.sha256()
    for _, raw in args.loaded:
        digest.update(raw)
    report = {
        "command": ["qdslab"] + argv,
        "input_digest": digest.hexdigest(),
        "results": results,
        "version": __version__,
        "wall_time": round(time.perf_counter() - t0, 6),
    }
    text = json.dumps(report, sort_keys=True, indent=2, default=_jsonable) + "\n"
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
