"""Command-line front end: ``bispankit <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys

from . import config
from .bispans import SemiringContext, compose_bispans
from .errors import BispankitError
from .groups import all_subgroups, weyl_group
from .gsets import decompose, pullback
from .io import (
    FormatError,
    Workspace,
    bispan_to_json,
    element_label,
    finite_model_from_json,
    multiplicity_to_json,
    orbits_to_json,
    read_json,
    span_to_json,
)
from .spans import compose_spans, span_iso, validate_subcategory
from .tambara.burnside import BurnsideElement, level_basis
from .tambara.models import BurnsideModel
from .tambara.verify import verify_model
from .tambara.words import decompose_bispan_to_generators, run_word


def _subgroup_info(G, H):
    return {
        "index": G.subgroup_index(H),
        "order": len(H),
        "members": sorted(H.members),
        "elements": [element_label(G, g) for g in sorted(H.members)],
    }


# commands ---------------------------------------------------------------------


def cmd_group_info(ws, args):
    G = ws.group(args.group)
    subs = all_subgroups(G)
    classes = G.conjugacy_classes_of_subgroups()
    return {
        "name": G.name,
        "order": G.order,
        "abelian": G.is_abelian(),
        "subgroups": [_subgroup_info(G, H) for H in subs],
        "containments": [[G.subgroup_index(K), G.subgroup_index(H)] for H in subs for K in subs if K < H],
        "conjugacy_classes": [
            {
                "members": [G.subgroup_index(H) for H in cls],
                "order": len(cls[0]),
                "weyl_order": weyl_group(G, cls[0])[0].order,
            }
            for cls in classes
        ],
    }


def _gset_summary(X):
    return {"size": X.size, "orbits": orbits_to_json(X), "multiplicity": multiplicity_to_json(X)}


def cmd_gset_orbits(ws, args):
    return _gset_summary(ws.gset(args.gset))


def cmd_gset_pullback(ws, args):
    f, g = ws.gmap(args.f), ws.gmap(args.g)
    pb = pullback(f, g)
    out = _gset_summary(pb.obj)
    out["pairs"] = pb.pairs.tolist()
    return out


def cmd_idxsys_check(ws, args):
    G = ws.group(args.group)
    D = ws.descriptor(args.descriptor, G)
    rep = validate_subcategory(D, G)
    out = rep.as_dict()
    out["admissible"] = D.to_indices()
    return out


def cmd_span_compose(ws, args):
    s2, s1 = ws.span(args.s2), ws.span(args.s1)
    D = ws.descriptor(args.desc, s1.group) if args.desc else None
    s = compose_spans(s2, s1, D)
    out = span_to_json(s)
    out["apex_orbits"] = multiplicity_to_json(s.apex)
    return out


def cmd_span_iso(ws, args):
    s, t = ws.span(args.s), ws.span(args.t)
    w = span_iso(s, t)
    return {"isomorphic": w is not None, "witness": None if w is None else w.fn.tolist()}


def _context(ws, text, G):
    if not text or text == "complete":
        return SemiringContext.complete(G)
    if "," in text and not text.strip().startswith("{"):
        m, a = text.split(",", 1)
        return SemiringContext(ws.descriptor(m, G), ws.descriptor(a, G))
    D = ws.descriptor(text, G)
    return SemiringContext(D, D)


def cmd_bispan_compose(ws, args):
    b2, b1 = ws.bispan(args.b2), ws.bispan(args.b1)
    ctx = _context(ws, args.ctx, b1.group)
    b = compose_bispans(b2, b1, ctx)
    out = bispan_to_json(b)
    out["orbits"] = {k: multiplicity_to_json(X) for k, X in (("A", b.A), ("B", b.B))}
    out["context"] = ctx.flags()
    return out


def _element_json(G, x):
    return {"level": G.subgroup_index(x.base), "terms": [[G.subgroup_index(K), c] for K, c in x.coeffs.items()]}


def cmd_burnside_table(ws, args):
    G = ws.group(args.group)
    M = BurnsideModel(G)
    classes = G.conjugacy_classes_of_subgroups()
    reps = [cls[0] for cls in classes]
    levels = []
    for H in reps:
        levels.append({"level": G.subgroup_index(H), "basis": [G.subgroup_index(K) for K in level_basis(H)]})
    ops = []
    for H in reps:
        for K in all_subgroups(G):
            if not K < H:
                continue
            for L in level_basis(K):
                x = BurnsideElement(K, {L: 1}, canonical=True)
                ops.append({"op": "tr", "from": G.subgroup_index(K), "to": G.subgroup_index(H), "basis": G.subgroup_index(L), "value": _element_json(G, M.tr(K, H, x))})
                ops.append({"op": "nm", "from": G.subgroup_index(K), "to": G.subgroup_index(H), "basis": G.subgroup_index(L), "value": _element_json(G, M.nm(K, H, x))})
            for L in level_basis(H):
                x = BurnsideElement(H, {L: 1}, canonical=True)
                ops.append({"op": "res", "from": G.subgroup_index(H), "to": G.subgroup_index(K), "basis": G.subgroup_index(L), "value": _element_json(G, M.res(K, H, x))})
    return {"group": G.name, "classes": len(reps), "levels": levels, "operations": ops}


def _model(ws, ref, group=None):
    if ref == "burnside" or ref.startswith("burnside:"):
        name = ref.split(":", 1)[1] if ":" in ref else group
        if name is None:
            raise FormatError("burnside model needs a group (burnside:<group>)")
        G = ws.group(name) if isinstance(name, str) else name
        return BurnsideModel(G)
    return finite_model_from_json(ref, ws)


def _parse_value(M, G, H, v):
    if isinstance(M, BurnsideModel):
        subs = all_subgroups(G)
        if isinstance(v, dict):
            if subs[v["level"]] != H:
                raise FormatError("element level %d does not match the source orbit" % v["level"])
            return BurnsideElement(H, {subs[k]: c for k, c in v["terms"]})
        return BurnsideElement.from_vector(H, v)
    return int(v)


def cmd_tambara_eval(ws, args):
    b = ws.bispan(args.bispan)
    M = _model(ws, args.model, b.group)
    if M.group is not b.group:
        raise FormatError("model and bispan use different groups")
    G = b.group
    try:
        raw = read_json(args.element)
    except FormatError:
        raw = json.loads(args.element)
    levels = [o.stabilizer for o in decompose(b.source).orbits]
    # one value per source orbit; a single-orbit source takes the bare value
    if len(levels) == 1:
        raw = [raw]
    if len(raw) != len(levels):
        raise FormatError("expected %d values, one per source orbit" % len(levels))
    vals = tuple(_parse_value(M, G, H, v) for H, v in zip(levels, raw))
    w = decompose_bispan_to_generators(b)
    out = run_word(M, w, vals)
    res = [_element_json(G, y) if isinstance(y, BurnsideElement) else {"level": G.subgroup_index(H), "value": M.show(H, y)}
           for y, H in zip(out, [o.stabilizer for o in decompose(b.target).orbits])]
    return {"word": w.describe(), "result": res}


def cmd_tambara_verify(ws, args):
    M = _model(ws, args.model, args.group)
    r = verify_model(M, seed=args.seed)
    return {
        "model": r.model,
        "ok": r.ok,
        "laws": {k: {"checked": n, "violations": v} for k, (n, v) in sorted(r.laws().items())},
        "violations": [str(v) for v in r.violations[:20]],
    }


def _subgroup_arg(G, text):
    subs = all_subgroups(G)
    try:
        return subs[int(text)]
    except (ValueError, IndexError):
        raise FormatError("subgroup %r is not an index into the %d subgroups" % (text, len(subs))) from None


def cmd_norm_wreath(ws, args):
    from .wreath import wreath_hom

    G = ws.group(args.group)
    H, K = _subgroup_arg(G, args.H), _subgroup_arg(G, args.K)
    w = wreath_hom(G, K, H)
    return {
        "H": G.subgroup_index(H),
        "K": G.subgroup_index(K),
        "reps": [element_label(G, h) for h in w.reps],
        "rows": [
            {"h": element_label(G, h), "sigma": s, "ell": [element_label(G, l) for l in ls]} for h, s, ls in w.rows()
        ],
    }


def cmd_norm_power(ws, args):
    from .gsets import GSet
    from .wreath import norm_vs_dependent_product

    G = ws.group(args.group)
    H, K = _subgroup_arg(G, args.H), _subgroup_arg(G, args.K)
    data = read_json(args.gset)
    Kg, _ = K.as_group()
    if "action" in data:
        X = GSet(Kg, data["action"])
    else:
        X = GSet.trivial(Kg, int(data["size"]))
    c = norm_vs_dependent_product(G, K, H, X)
    return {
        "size": c.power.size,
        "orbits": [{"rep": o.rep, "size": len(o.points)} for o in decompose(c.power).orbits],
        "fixed_points": len(c.power.fixed_points(c.power.group.whole)),
        "matches_dependent_product": True,
        "canonical_bijection": c.canonical,
    }


def cmd_verify_all(ws, args):
    from .invariants import run_all

    G = ws.group(args.group)
    results = run_all(G, seed=args.seed)
    return {
        "group": G.name,
        "passed": all(r.passed for r in results),
        "checks": [{"check": r.name, "passed": r.passed, "cases": r.cases, "detail": r.detail} for r in results],
    }


# rendering ----------------------------------------------------------------------


def _render_table(payload, indent=0):
    pad = "  " * indent
    lines = []
    if isinstance(payload, dict):
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(i, (dict, list)) for i in (v.values() if isinstance(v, dict) else v)):
                lines.append("%s%s:" % (pad, k))
                lines.extend(_render_table(v, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, k, _flat(v)))
    elif isinstance(payload, list):
        for item in payload:
            if isinstance(item, dict):
                lines.append(pad + "- " + ", ".join("%s=%s" % (k, _flat(v)) for k, v in item.items()))
            else:
                lines.append(pad + "- " + _flat(item))
    else:
        lines.append(pad + _flat(payload))
    return lines


def _flat(v):
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


def _render_verify_all(payload):
    lines = ["group %s" % payload["group"]]
    width = max(len(c["check"]) for c in payload["checks"])
    for c in payload["checks"]:
        mark = "PASS" if c["passed"] else "FAIL"
        lines.append("%s  %s  (%d cases)%s" % (c["check"].ljust(width), mark, c["cases"], ("  " + c["detail"]) if c["detail"] else ""))
    lines.append("overall: %s" % ("PASS" if payload["passed"] else "FAIL"))
    return lines


def build_parser():
    p = argparse.ArgumentParser(prog="bispankit", description="Exact computations with G-sets, spans, bispans and Tambara functors.")
    p.add_argument("--bound", type=int, default=None, help="largest G-set any construction may produce")
    p.add_argument("--format", choices=["json", "table"], default="table")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group").add_subparsers(dest="action", required=True)
    a = g.add_parser("info", help="order, subgroups and their conjugacy classes")
    a.add_argument("group")
    a.set_defaults(fn=cmd_group_info)

    gs = sub.add_parser("gset").add_subparsers(dest="action", required=True)
    a = gs.add_parser("orbits")
    a.add_argument("gset")
    a.set_defaults(fn=cmd_gset_orbits)
    a = gs.add_parser("pullback")
    a.add_argument("f")
    a.add_argument("g")
    a.set_defaults(fn=cmd_gset_pullback)

    ix = sub.add_parser("idxsys").add_subparsers(dest="action", required=True)
    a = ix.add_parser("check")
    a.add_argument("group")
    a.add_argument("descriptor", help="descriptor JSON, or 'all' / 'fold'")
    a.set_defaults(fn=cmd_idxsys_check)

    sp = sub.add_parser("span").add_subparsers(dest="action", required=True)
    a = sp.add_parser("compose")
    a.add_argument("s2")
    a.add_argument("s1")
    a.add_argument("--desc", default=None)
    a.set_defaults(fn=cmd_span_compose)
    a = sp.add_parser("iso")
    a.add_argument("s")
    a.add_argument("t")
    a.set_defaults(fn=cmd_span_iso)

    bs = sub.add_parser("bispan").add_subparsers(dest="action", required=True)
    a = bs.add_parser("compose")
    a.add_argument("b2")
    a.add_argument("b1")
    a.add_argument("--ctx", default="complete", help="'complete', a descriptor for both legs, or 'M,A'")
    a.set_defaults(fn=cmd_bispan_compose)

    bu = sub.add_parser("burnside").add_subparsers(dest="action", required=True)
    a = bu.add_parser("table")
    a.add_argument("group")
    a.set_defaults(fn=cmd_burnside_table)

    tb = sub.add_parser("tambara").add_subparsers(dest="action", required=True)
    a = tb.add_parser("eval")
    a.add_argument("model", help="'burnside' or a finite model JSON")
    a.add_argument("bispan")
    a.add_argument("element")
    a.set_defaults(fn=cmd_tambara_eval)
    a = tb.add_parser("verify")
    a.add_argument("model", help="'burnside:<group>' or a finite model JSON")
    a.add_argument("--group", default=None)
    a.set_defaults(fn=cmd_tambara_verify)

    nm = sub.add_parser("norm").add_subparsers(dest="action", required=True)
    a = nm.add_parser("wreath")
    a.add_argument("group")
    a.add_argument("H")
    a.add_argument("K")
    a.set_defaults(fn=cmd_norm_wreath)
    a = nm.add_parser("power")
    a.add_argument("group")
    a.add_argument("H")
    a.add_argument("K")
    a.add_argument("gset", help="K-set JSON: {'size': n} (trivial action) or {'action': [[...]]}")
    a.set_defaults(fn=cmd_norm_power)

    a = sub.add_parser("verify-all", help="run every invariant check for one group")
    a.add_argument("group")
    a.set_defaults(fn=cmd_verify_all)
    return p


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.bound is not None and args.bound <= 0:
        err.write("error: --bound must be positive\n")
        return 2
    ws = Workspace()
    try:
        with config.limits(output_bound=args.bound):
            payload = args.fn(ws, args)
    except (BispankitError, KeyError, ValueError, OSError, TypeError) as e:
        name = type(e).__name__
        err.write("error: %s: %s\n" % (name, e))
        if args.format == "json":
            out.write(json.dumps({"error": name, "message": str(e)}) + "\n")
        return 1
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        lines = _render_verify_all(payload) if args.fn is cmd_verify_all else _render_table(payload)
        out.write("\n".join(lines) + "\n")
    if args.fn is cmd_verify_all and not payload["passed"]:
        return 1
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
