"""Burnside ring elements and their set-level realisation."""

from __future__ import annotations

from functools import total_ordering

import numpy as np

from ..errors import CarrierMismatch
from ..groups import Subgroup, subgroup_name, subgroups_of
from ..gsets import (
    GMap,
    GSet,
    coproduct,
    coset_data,
    coset_map,
    decompose,
    orbit,
    orbit_point_map,
)


def level_basis(H: Subgroup) -> list:
    """Canonical representatives of H-conjugacy classes of subgroups of H."""
    G = H.group
    key = ("burnside_basis", H)
    if key not in G._cache:
        reps = {G.class_rep(K, within=H) for K in subgroups_of(H)}
        G._cache[key] = sorted(reps, key=Subgroup.sort_key)
    return G._cache[key]


@total_ordering
class BurnsideElement:
    """Integer combination of classes [H/K] at level H."""

    __slots__ = ("group", "base", "coeffs", "_key")

    def __init__(self, base: Subgroup, coeffs=None, canonical=False):
        self.group = base.group
        self.base = base
        G = self.group
        out = {}
        for K, c in (coeffs or {}).items():
            if not c:
                continue
            if not canonical:
                if not K <= base:
                    raise CarrierMismatch("%s is not a subgroup of the level %s" % (K, base))
                K = G.class_rep(K, within=base)
            out[K] = out.get(K, 0) + int(c)
        self.coeffs = {K: c for K, c in sorted(out.items(), key=lambda kv: kv[0].sort_key()) if c}
        self._key = None

    @classmethod
    def zero(cls, H):
        return cls(H, {}, canonical=True)

    @classmethod
    def one(cls, H):
        return cls(H, {H: 1}, canonical=True)

    @classmethod
    def basis(cls, H, K):
        return cls(H, {K: 1})

    @classmethod
    def from_vector(cls, H, vec):
        return cls(H, dict(zip(level_basis(H), vec)), canonical=True)

    def vector(self) -> list:
        return [self.coeffs.get(K, 0) for K in level_basis(self.base)]

    def key(self):
        if self._key is None:
            self._key = (self.base, tuple((K, c) for K, c in self.coeffs.items()))
        return self._key

    def _same(self, other):
        if not isinstance(other, BurnsideElement) or other.base != self.base:
            raise CarrierMismatch("elements live at different levels")

    def __add__(self, other):
        self._same(other)
        d = dict(self.coeffs)
        for K, c in other.coeffs.items():
            d[K] = d.get(K, 0) + c
        return BurnsideElement(self.base, d, canonical=True)

    def __neg__(self):
        return BurnsideElement(self.base, {K: -c for K, c in self.coeffs.items()}, canonical=True)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if isinstance(k, BurnsideElement):
            raise TypeError("use a model's mul for the ring product")
        return BurnsideElement(self.base, {K: k * c for K, c in self.coeffs.items()}, canonical=True)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, BurnsideElement) and self.key() == other.key()

    def __lt__(self, other):
        return (self.base.sort_key(), [(K.sort_key(), c) for K, c in self.coeffs.items()]) < (
            other.base.sort_key(),
            [(K.sort_key(), c) for K, c in other.coeffs.items()],
        )

    def __hash__(self):
        return hash(self.key())

    def is_nonnegative(self):
        return all(c > 0 for c in self.coeffs.values())

    def positive_part(self):
        return BurnsideElement(self.base, {K: c for K, c in self.coeffs.items() if c > 0}, canonical=True)

    def negative_part(self):
        return BurnsideElement(self.base, {K: -c for K, c in self.coeffs.items() if c < 0}, canonical=True)

    def cardinality(self) -> int:
        """Size of the underlying H-set (an additive invariant)."""
        return sum(c * (len(self.base) // len(K)) for K, c in self.coeffs.items())

    def __repr__(self):
        if not self.coeffs:
            return "0"
        out = ""
        for K, c in self.coeffs.items():
            term = "[%s/%s]" % (subgroup_name(self.base), subgroup_name(K))
            mag = term if abs(c) == 1 else "%d%s" % (abs(c), term)
            if not out:
                out = mag if c > 0 else "-" + mag
            else:
                out += (" + " if c > 0 else " - ") + mag
        return out

    def as_dict(self):
        G = self.group
        return {
            "level": G.subgroup_index(self.base),
            "terms": [[G.subgroup_index(K), c] for K, c in self.coeffs.items()],
        }


# set-level realisation ---------------------------------------------------


def realize(x: BurnsideElement) -> GMap:
    """A G-set over G/H whose class is x (x must be nonnegative)."""
    if not x.is_nonnegative():
        raise CarrierMismatch("only nonnegative elements are represented by G-sets")
    G, H = x.group, x.base
    maps = [coset_map(K, H) for K, c in x.coeffs.items() for _ in range(c)]
    Y, _ = coproduct([f.source for f in maps], group=G)
    fn = np.concatenate([f.fn for f in maps]) if maps else []
    return GMap(Y, orbit(G, H), fn, check=False)


def _transversal(X: GSet):
    """For each point x: its orbit index and some g with g.rep == x."""
    dec = decompose(X)
    idx = dec.orbit_index()
    tr = np.full(X.size, -1, dtype=np.int64)
    for o in dec.orbits:
        col = X.action[:, o.rep]
        for g in range(len(col) - 1, -1, -1):
            tr[col[g]] = g
    return dec, idx, tr


def classify_over(p: GMap) -> tuple:
    """Class of p: Y -> X as a tuple of elements, one per orbit of X."""
    X, Y = p.target, p.source
    G = X.group
    dec, idx, trans = _transversal(X)
    coeffs = [dict() for _ in dec.orbits]
    for o in decompose(Y).orbits:
        x = p(o.rep)
        i = int(idx[x])
        g = int(trans[x])
        y0 = Y.act(G.inv[g], o.rep)
        K = Y.stabilizer(y0)
        H = dec.orbits[i].stabilizer
        K = G.class_rep(K, within=H)
        coeffs[i][K] = coeffs[i].get(K, 0) + 1
    return tuple(BurnsideElement(o.stabilizer, c, canonical=True) for o, c in zip(dec.orbits, coeffs))


def classify(p: GMap) -> BurnsideElement:
    """Class of a G-set over an orbit G/H."""
    (x,) = classify_over(p)
    return x


def realize_over(X: GSet, values) -> GMap:
    """A G-set over X whose orbit-wise classes are ``values``."""
    dec = decompose(X)
    if len(values) != len(dec.orbits):
        raise CarrierMismatch("need one value per orbit of X (%d)" % len(dec.orbits))
    maps = []
    for o, v in zip(dec.orbits, values):
        if v.base != o.stabilizer:
            raise CarrierMismatch("value for orbit %d lives at the wrong level" % o.rep)
        maps.append(realize(v).then(orbit_point_map(X, o.rep)))
    Y, _ = coproduct([f.source for f in maps], group=X.group)
    fn = np.concatenate([f.fn for f in maps]) if maps else []
    return GMap(Y, X, fn, check=False)


def levels_of(X: GSet) -> list:
    return [o.stabilizer for o in decompose(X).orbits]


def coset_rep(H: Subgroup, i: int) -> int:
    """Least element of the i-th coset of G/H."""
    return coset_data(H)[2][i]


def mark(x: BurnsideElement, L: Subgroup) -> int:
    """|X^L| for the H-set X represented by x (L <= H)."""
    H = x.base
    total = 0
    for K, c in x.coeffs.items():
        fixed = 0
        for coset in K.left_cosets(within=H):
            h = min(coset)
            if L <= K.conjugate(h):
                fixed += 1
        total += c * fixed
    return total


def from_marks(H: Subgroup, marks: dict) -> BurnsideElement:
    """Element at level H with the given marks, keyed by ``level_basis(H)``.

    The table of marks is triangular once subgroups are taken largest first.
    """
    basis = level_basis(H)
    coeffs = {}
    for J in reversed(basis):
        rest = marks[J] - sum(c * mark(BurnsideElement.basis(H, K), J) for K, c in coeffs.items())
        d = mark(BurnsideElement.basis(H, J), J)
        if rest % d:
            raise CarrierMismatch("marks are not those of a virtual H-set")
        coeffs[J] = rest // d
    return BurnsideElement(H, coeffs, canonical=True)


def norm_by_marks(K: Subgroup, H: Subgroup, x: BurnsideElement) -> BurnsideElement:
    """N_K^H x without building the dependent product.

    A J-fixed section over H/K is one fixed point per J-orbit of cosets,
    so the mark at J is a product over those orbits.
    """
    G = H.group
    cosets = K.left_cosets(within=H)
    where = {g: i for i, c in enumerate(cosets) for g in c}
    marks = {}
    for J in level_basis(H):
        seen = set()
        total = 1
        for i, c in enumerate(cosets):
            if i in seen:
                continue
            h = min(c)
            seen.update(where[G.mul(j, h)] for j in J.members)
            total *= mark(x, K.intersect(J.conjugate(G.inverse(h))))
        marks[J] = total
    return from_marks(H, marks)


def apply_bispan(b, values) -> tuple:
    """Direct set-level action of a bispan on nonnegative values.

    Realise the values as a G-set over the source, pull back along r, take
    the dependent product along n, push forward along t and classify.
    """
    from ..gsets import dependent_product, pullback

    p = realize_over(b.source, values)
    q = pullback(p, b.r).p2
    dp = dependent_product(b.n, q)
    return classify_over(dp.mstar.then(b.t))
