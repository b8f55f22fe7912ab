"""Spans of G-sets, admissible-map descriptors and their validation."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    EndpointMismatch,
    ForwardLegNotAdmissible,
    InvalidDescriptor,
    NotComposable,
)
from .groups import FiniteGroup, Subgroup, all_subgroups, double_coset_reps, subgroup_name
from .gsets import (
    GMap,
    GSet,
    copair,
    coproduct,
    coset_map,
    decompose,
    empty_map,
    fold,
    match_orbits,
    orbit,
    pullback,
)


@dataclass(frozen=True, eq=False)
class Span:
    """X <-left- A -right-> Y."""

    left: GMap
    right: GMap

    def __post_init__(self):
        if self.left.source != self.right.source:
            raise NotComposable("span legs must share their apex")

    @property
    def apex(self) -> GSet:
        return self.left.source

    @property
    def source(self) -> GSet:
        return self.left.target

    @property
    def target(self) -> GSet:
        return self.right.target

    @property
    def group(self):
        return self.apex.group

    def __repr__(self):
        return "Span(%d <- %d -> %d)" % (self.source.size, self.apex.size, self.target.size)


def identity_span(X: GSet) -> Span:
    return Span(X.identity(), X.identity())


def forward_span(f: GMap) -> Span:
    """X = X -f-> Y."""
    return Span(f.source.identity(), f)


def backward_span(f: GMap) -> Span:
    """Y <-f- X = X, a morphism Y -> X."""
    return Span(f, f.source.identity())


def zero_span(X: GSet, Y: GSet) -> Span:
    return Span(empty_map(X), empty_map(Y))


# admissible maps -------------------------------------------------------------


def orbit_pairs(f: GMap) -> list:
    """(stab f(x), stab x) for each orbit representative x of the source."""
    return [(f.target.stabilizer(f(o.rep)), o.stabilizer) for o in decompose(f.source).orbits]


class SubcategoryDescriptor:
    """A wide subcategory of G-sets generated by admissible orbit maps.

    ``(H, K)`` with ``K <= H`` marks G/K -> G/H as admissible.  The set is
    closed under conjugation and always contains every ``(H, H)``, so all
    isomorphisms and fold maps belong to it.  A map is admissible when
    each orbit of its source maps admissibly onto its image orbit.
    """

    def __init__(self, group: FiniteGroup, pairs, name=""):
        self.group = group
        self.name = name
        closed = set()
        for H, K in pairs:
            group.check_subgroup(H)
            group.check_subgroup(K)
            if not K <= H:
                raise InvalidDescriptor("pair (%s, %s) does not have K <= H" % (H, K))
            for g in group:
                closed.add((H.conjugate(g), K.conjugate(g)))
        for H in all_subgroups(group):
            closed.add((H, H))
        self.pairs = frozenset(closed)
        self._report = None

    @classmethod
    def all_maps(cls, G):
        subs = all_subgroups(G)
        return cls(G, [(H, K) for H in subs for K in subs if K <= H], name="all")

    @classmethod
    def fold_maps(cls, G):
        return cls(G, [], name="fold")

    @classmethod
    def from_indices(cls, G, index_pairs, name=""):
        subs = all_subgroups(G)
        try:
            return cls(G, [(subs[h], subs[k]) for h, k in index_pairs], name=name)
        except IndexError:
            raise InvalidDescriptor("subgroup index out of range (have %d subgroups)" % len(subs)) from None

    def to_indices(self) -> list:
        idx = self.group.subgroup_index
        return sorted([idx(H), idx(K)] for H, K in self.pairs if H != K)

    def admits(self, H: Subgroup, K: Subgroup) -> bool:
        return (H, K) in self.pairs

    def violation(self, f: GMap):
        """First orbit pair of ``f`` that is not admissible, else None."""
        for H, K in orbit_pairs(f):
            if (H, K) not in self.pairs:
                return (H, K)
        return None

    def contains(self, f: GMap) -> bool:
        return self.violation(f) is None

    def __contains__(self, f):
        return self.contains(f)

    def __eq__(self, other):
        return isinstance(other, SubcategoryDescriptor) and other.group is self.group and other.pairs == self.pairs

    def __hash__(self):
        return hash((id(self.group), self.pairs))

    def __repr__(self):
        return "SubcategoryDescriptor(%s, %d nontrivial pairs)" % (self.name or "?", len(self.to_indices()))

    def report(self) -> "SubcategoryReport":
        if self._report is None:
            self._report = validate_subcategory(self, self.group)
        return self._report


@dataclass
class Counterexample:
    condition: str
    message: str
    map: GMap | None = None


@dataclass
class SubcategoryReport:
    is_span_pair: bool
    is_weakly_extensive: bool
    is_extensive: bool
    counterexamples: list = field(default_factory=list)

    def as_dict(self):
        return {
            "span_pair": self.is_span_pair,
            "weakly_extensive": self.is_weakly_extensive,
            "extensive": self.is_extensive,
            "counterexamples": [
                {"condition": c.condition, "message": c.message, "map": None if c.map is None else c.map.fn.tolist()}
                for c in self.counterexamples
            ],
        }


def _span_pair_failure(D: SubcategoryDescriptor):
    G = D.group
    subs = all_subgroups(G)
    pairs = sorted(D.pairs, key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    for H, K in pairs:
        for H2, L in pairs:
            if H2 == K and (H, L) not in D.pairs:
                return Counterexample(
                    "composition",
                    "G/%s -> G/%s -> G/%s composes to a non-admissible map"
                    % (subgroup_name(L), subgroup_name(K), subgroup_name(H)),
                    coset_map(L, H),
                )
    for H, K in pairs:
        for L in subs:
            if not L <= H:
                continue
            for g in double_coset_reps(L, H, K):
                M = L.intersect(K.conjugate(g))
                if (L, M) in D.pairs:
                    continue
                pb = pullback(coset_map(K, H), coset_map(L, H))
                # the orbit of pb through (g K, e L) maps to G/L as G/M -> G/L
                return Counterexample(
                    "base change",
                    "pullback of G/%s -> G/%s along G/%s -> G/%s needs (%s, %s)"
                    % (subgroup_name(K), subgroup_name(H), subgroup_name(L), subgroup_name(H),
                       subgroup_name(L), subgroup_name(M)),
                    pb.p2,
                )
    return None


def _is_pullback_square(top: GMap, left: GMap, right: GMap, bottom: GMap) -> bool:
    """Is the commuting square (top: P -> B, left: P -> A, right: B -> C,
    bottom: A -> C) a pullback?"""
    pb = pullback(bottom, right)
    lab = list(zip(left.fn.tolist(), top.fn.tolist()))
    return match_orbits(left.source, lab, pb.obj, [tuple(r) for r in pb.pairs.tolist()]) is not None


def _fold_squares_fail(f: GMap):
    """The squares x+x -> y+y over x -> y and 0 -> 0 over x -> y."""
    X, Y = f.source, f.target
    XX, _ = coproduct([X, X])
    YY, _ = coproduct([Y, Y])
    ff = GMap(XX, YY, np.concatenate([f.fn, f.fn + Y.size]) if X.size else [], check=False)
    if not _is_pullback_square(ff, fold(X), fold(Y), f):
        return "fold"
    E = GSet.empty(X.group)
    e = GMap(E, E, [], check=False)
    if not _is_pullback_square(e, empty_map(X), empty_map(Y), f):
        return "empty"
    return None


def validate_subcategory(D: SubcategoryDescriptor, G: FiniteGroup | None = None) -> SubcategoryReport:
    """Span pair, weakly extensive and extensive checks on orbit maps."""
    G = G or D.group
    if G is not D.group:
        raise InvalidDescriptor("descriptor belongs to a different group")
    subs = all_subgroups(G)
    cex = []
    bad = _span_pair_failure(D)
    span_pair = bad is None
    if bad:
        cex.append(bad)

    weak = span_pair
    if weak:
        # closure under coproducts and coproducts of pullbacks
        adm = [coset_map(K, H) for H, K in D.pairs]
        for f in adm:
            for g in adm:
                if g.target != f.target:
                    continue
                fg = copair([f, g])
                if not D.contains(fg):
                    weak = False
                    cex.append(Counterexample("coproduct", "coproduct of admissible maps not admissible", fg))
                    break
                # (f + g) pulled back along (g + f) is the coproduct of the two pullbacks
                pb = pullback(fg, copair([g, f]))
                parts = pullback(f, g).obj.size * 2 + pullback(f, f).obj.size + pullback(g, g).obj.size
                if pb.obj.size != parts:
                    weak = False
                    cex.append(Counterexample("coproduct", "coproduct of pullbacks is not a pullback", fg))
                    break
            if not weak:
                break
        if weak:
            for f in adm:
                which = _fold_squares_fail(f)
                if which:
                    weak = False
                    cex.append(Counterexample(which + " square", "square over an admissible map is not a pullback", f))
                    break

    ext = weak
    if ext:
        for H in subs:
            for K in subs:
                if K <= H:
                    which = _fold_squares_fail(coset_map(K, H))
                    if which:
                        ext = False
                        cex.append(Counterexample(which + " square", "square over an orbit map is not a pullback", coset_map(K, H)))
        for H in subs:
            X = orbit(G, H)
            if not D.contains(empty_map(X)):
                ext = False
                cex.append(Counterexample("empty map", "0 -> G/%s is not admissible" % subgroup_name(H), empty_map(X)))
            if not D.contains(fold(X)):
                ext = False
                cex.append(Counterexample("fold map", "fold onto G/%s is not admissible" % subgroup_name(H), fold(X)))
    return SubcategoryReport(span_pair, weak, ext, cex)


# composition -----------------------------------------------------------------


def _check_forward(s: Span, I, which):
    if I is None:
        return
    bad = I.violation(s.right)
    if bad is not None:
        raise ForwardLegNotAdmissible(
            "forward leg of %s is not admissible: orbit map G/%s -> G/%s"
            % (which, subgroup_name(bad[1]), subgroup_name(bad[0]))
        )


def compose_spans(s2: Span, s1: Span, I: SubcategoryDescriptor | None = None) -> Span:
    """s2 o s1 for s1: X -> Y and s2: Y -> Z, by pulling back over Y."""
    if s1.target != s2.source:
        raise NotComposable("target of the first span is not the source of the second")
    if I is not None:
        if not I.report().is_span_pair:
            raise NotComposable("descriptor is not a span pair")
        _check_forward(s1, I, "first span")
        _check_forward(s2, I, "second span")
    pb = pullback(s1.right, s2.left)
    out = Span(pb.p1.then(s1.left), pb.p2.then(s2.right))
    _check_forward(out, I, "composite")
    return out


def span_iso(s: Span, t: Span):
    """Apex bijection commuting with both legs, or None."""
    if s.source != t.source or s.target != t.target:
        return None
    sl = list(zip(s.left.fn.tolist(), s.right.fn.tolist()))
    tl = list(zip(t.left.fn.tolist(), t.right.fn.tolist()))
    return match_orbits(s.apex, sl, t.apex, tl)


def add_spans(s: Span, t: Span) -> Span:
    if s.source != t.source or s.target != t.target:
        raise EndpointMismatch("spans must have the same endpoints")
    A, _ = coproduct([s.apex, t.apex])
    return Span(copair([s.left, t.left], A), copair([s.right, t.right], A))


def biproduct_spans(X: GSet, Y: GSet):
    """Inclusions and projections exhibiting X + Y as a biproduct.

    Returns ``(XY, (i1, i2), (p1, p2))`` where ``i`` are spans into and ``p``
    spans out of ``XY``.
    """
    XY, (j1, j2) = coproduct([X, Y])
    incl = (forward_span(j1), forward_span(j2))
    proj = (backward_span(j1), backward_span(j2))
    return XY, incl, proj
