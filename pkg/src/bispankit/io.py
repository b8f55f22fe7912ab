"""JSON formats for groups, G-sets, maps, spans, bispans, descriptors and models."""

from __future__ import annotations

import json
import os

from .bispans import Bispan
from .errors import BispankitError, InvalidModel
from .groups import (
    FiniteGroup,
    all_subgroups,
    by_name,
    cycle_string,
    group_from_cayley,
    group_from_permutations,
)
from .gsets import GMap, GSet, coproduct, decompose, orbit
from .spans import Span, SubcategoryDescriptor


class FormatError(BispankitError):
    pass


def read_json(ref):
    """A path to a JSON file, inline JSON text, or an already parsed value."""
    if not isinstance(ref, str):
        return ref
    text = ref.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    if os.path.exists(ref):
        with open(ref) as fh:
            return json.load(fh)
    raise FormatError("cannot read %r: not a file or inline JSON" % ref)


class Workspace:
    """Loaded objects; groups are shared so maps between files compose."""

    def __init__(self):
        self.groups = {}

    def group(self, ref) -> FiniteGroup:
        key = ref if isinstance(ref, str) else json.dumps(ref, sort_keys=True)
        if key in self.groups:
            return self.groups[key]
        if isinstance(ref, str) and not ref.strip().startswith("{") and not os.path.exists(ref):
            try:
                G = by_name(ref)
            except KeyError as e:
                raise FormatError(str(e)) from None
        else:
            G = group_from_json(read_json(ref))
        self.groups[key] = G
        return G

    def gset(self, data, G=None) -> GSet:
        data = read_json(data)
        if G is None:
            G = self.group(data["group"])
        if "orbits" in data:
            subs = all_subgroups(G)
            X, _ = coproduct([orbit(G, subs[i]) for i in data["orbits"]], group=G)
            return X
        X = GSet(G, data["action"]) if data.get("size", 1) else GSet.empty(G)
        if "size" in data and X.size != data["size"]:
            raise FormatError("size %d does not match the action table" % data["size"])
        return X

    def gmap(self, data) -> GMap:
        data = read_json(data)
        G = self.group(data["group"])
        return GMap(self.gset(data["source"], G), self.gset(data["target"], G), data["map"])

    def descriptor(self, data, G) -> SubcategoryDescriptor:
        if isinstance(data, str) and data in ("all", "fold"):
            return SubcategoryDescriptor.all_maps(G) if data == "all" else SubcategoryDescriptor.fold_maps(G)
        data = read_json(data)
        return SubcategoryDescriptor.from_indices(G, data["admissible"], name=data.get("name", ""))

    def span(self, data) -> Span:
        data = read_json(data)
        G = self.group(data["group"])
        X, A, Y = (self.gset(data[k], G) for k in ("source", "apex", "target"))
        return Span(GMap(A, X, _map(data["left"])), GMap(A, Y, _map(data["right"])))

    def bispan(self, data) -> Bispan:
        data = read_json(data)
        G = self.group(data["group"])
        X, A, B, Y = (self.gset(data[k], G) for k in ("source", "A", "B", "target"))
        return Bispan(GMap(A, X, _map(data["r"])), GMap(A, B, _map(data["n"])), GMap(B, Y, _map(data["t"])))


def _map(v):
    return v["map"] if isinstance(v, dict) else v


def group_from_json(data) -> FiniteGroup:
    name = data.get("name", "G")
    if "cayley" in data:
        G = group_from_cayley(data["cayley"], data.get("id", 0), name=name)
        if "order" in data and data["order"] != G.order:
            raise FormatError("order %d does not match the table" % data["order"])
        return G
    if "generators" in data:
        return group_from_permutations(data["generators"], degree=data.get("degree"), name=name)
    raise FormatError("group JSON needs 'cayley' or 'generators'")


# serialisation --------------------------------------------------------------


def group_to_json(G: FiniteGroup) -> dict:
    return {"name": G.name, "order": G.order, "cayley": [list(r) for r in G.table], "id": G.identity}


def gset_to_json(X: GSet, group_ref=None) -> dict:
    out = {"size": X.size, "action": X.action.tolist()}
    if group_ref is not None:
        out = {"group": group_ref, **out}
    return out


def gmap_to_json(f: GMap, group_ref=None) -> dict:
    out = {"source": gset_to_json(f.source), "target": gset_to_json(f.target), "map": f.fn.tolist()}
    if group_ref is not None:
        out = {"group": group_ref, **out}
    return out


def span_to_json(s: Span, group_ref=None) -> dict:
    out = {
        "source": gset_to_json(s.source),
        "apex": gset_to_json(s.apex),
        "target": gset_to_json(s.target),
        "left": s.left.fn.tolist(),
        "right": s.right.fn.tolist(),
    }
    if group_ref is not None:
        out = {"group": group_ref, **out}
    return out


def bispan_to_json(b: Bispan, group_ref=None) -> dict:
    out = {
        "source": gset_to_json(b.source),
        "A": gset_to_json(b.A),
        "B": gset_to_json(b.B),
        "target": gset_to_json(b.target),
        "r": {"map": b.r.fn.tolist()},
        "n": {"map": b.n.fn.tolist()},
        "t": {"map": b.t.fn.tolist()},
    }
    if group_ref is not None:
        out = {"group": group_ref, **out}
    return out


def orbits_to_json(X: GSet) -> list:
    G = X.group
    return [
        {"rep": o.rep, "size": len(o.points), "stabilizer": G.subgroup_index(o.stabilizer)}
        for o in decompose(X).orbits
    ]


def multiplicity_to_json(X: GSet) -> dict:
    G = X.group
    return {str(G.subgroup_index(H)): k for H, k in decompose(X).multiplicity.items()}


def element_label(G: FiniteGroup, g: int) -> str:
    if G.perms is not None:
        return cycle_string(G.perms[g])
    return G.label(g)


# finite models ----------------------------------------------------------------


def _pair_key(text, subs):
    try:
        a, b = (int(v) for v in str(text).replace(">", ",").replace("<", ",").split(","))
    except ValueError:
        raise InvalidModel("table key %r is not 'i,j'" % text) from None
    return subs[a], subs[b]


def finite_model_from_json(data, ws: Workspace):
    """Finite model from index tables.

    ``levels`` maps a subgroup index (or ``"*"`` for every level) to
    ``{"elements", "add", "zero", "mul"?, "one"?}``.  ``res`` is keyed
    ``"H,K"`` (restrict from H to K), ``tr`` and ``nm`` ``"K,H"``; ``conj``
    keyed ``"g,H"`` is optional and defaults to the identity on indices.
    """
    from .tambara.models import FiniteModel

    data = read_json(data)
    G = ws.group(data["group"])
    subs = all_subgroups(G)
    levels = {}
    raw = data["levels"]
    for H in subs:
        idx = str(subs.index(H))
        lv = raw.get(idx, raw.get("*"))
        if lv is None:
            raise InvalidModel("no level description for subgroup %s" % idx)
        levels[H] = dict(lv)

    def tables(name, swap):
        out = {}
        for k, v in data.get(name, {}).items():
            a, b = _pair_key(k, subs)
            out[(b, a) if swap else (a, b)] = v
        return out

    res = tables("res", True)
    tr = tables("tr", False)
    nm = tables("nm", False) or None
    # identity tables may be omitted
    for H in subs:
        ident = list(range(len(levels[H]["elements"])))
        res.setdefault((H, H), ident)
        tr.setdefault((H, H), ident)
        if nm is not None:
            nm.setdefault((H, H), ident)
    conj = {}
    for k, v in data.get("conj", {}).items():
        g, h = (int(x) for x in k.split(","))
        conj[(g, subs[h])] = v
    return FiniteModel(G, levels, res, tr, nm, conj, label=data.get("name", "finite"))
