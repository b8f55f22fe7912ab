"""Evaluable Mackey and Tambara functors.

Every model exposes the same operations, always written with the smaller
subgroup first: ``res(K, H, x)`` goes from level H down to K, ``tr`` and
``nm`` go from K up to H, and ``conj(g, H, x)`` goes from H to gHg^-1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from ..errors import CarrierMismatch, InvalidModel, OutputTooLarge
from ..groups import FiniteGroup, Subgroup, all_subgroups, subgroup_name
from ..gsets import (
    coset_data,
    coset_map,
    dependent_product,
    decompose,
    fold,
    orbit,
    pullback,
)
from .burnside import BurnsideElement, classify, level_basis, norm_by_marks, realize


class TambaraModel:
    """Base class; subclasses implement the level operations."""

    label = "model"
    has_mul = True
    has_norms = True

    def __init__(self, group: FiniteGroup):
        self.group = group

    def levels(self):
        return all_subgroups(self.group)

    # subclasses provide res, tr, nm, conj, add, zero and, for rings, mul, one

    def eq(self, H, x, y) -> bool:
        return x == y

    def sum(self, H, xs):
        out = self.zero(H)
        for x in xs:
            out = self.add(H, out, x)
        return out

    def product(self, H, xs):
        out = self.one(H)
        for x in xs:
            out = self.mul(H, out, x)
        return out

    def samples(self, H, rng: random.Random) -> list:
        raise NotImplementedError

    def show(self, H, x) -> str:
        return repr(x)


# norm of sums --------------------------------------------------------------


@dataclass(frozen=True)
class Coloring:
    """An H-orbit of two-colourings of H/K, seen from its stabilizer S.

    ``first``/``second`` list ``(h, L)`` for each S-orbit of cosets hK of
    the given colour, with ``L = S & hKh^-1`` its stabilizer.
    """

    S: Subgroup
    first: tuple
    second: tuple


def colorings(K: Subgroup, H: Subgroup) -> list:
    """Orbits of the dependent product of the fold map along G/K -> G/H.

    A section over the base point colours each coset hK inside H by the
    summand it picks; the orbits are what the norm of a sum expands over.
    """
    G = H.group
    key = ("colorings", K, H)
    if key in G._cache:
        return G._cache[key]
    m = coset_map(K, H)
    f = fold(orbit(G, K))
    dp = dependent_product(m, f)
    Pi = dp.obj
    nK = m.source.size
    fiber = m.fiber(0)
    _, _, reps = coset_data(K)
    over0 = set(dp.mstar.fiber(0))
    out = []
    for o in decompose(Pi).orbits:
        p = min(q for q in o.points if q in over0)
        S = Pi.stabilizer(p)
        sec = dp.sections[p]
        colours = {x: (0 if v < nK else 1) for x, v in zip(fiber, sec)}
        groups = ([], [])
        seen = set()
        X = m.source
        for x in fiber:
            if x in seen:
                continue
            orb = {int(X.action[s, x]) for s in S.members}
            seen |= orb
            h = reps[x]
            groups[colours[x]].append((h, S.intersect(K.conjugate(h))))
        out.append(Coloring(S, tuple(groups[0]), tuple(groups[1])))
    G._cache[key] = out
    return out


class ExpansionNorm:
    """Norms of arbitrary elements from norms of basis elements.

    N(b + v) is the sum over colourings of transfers of products of norms
    of restrictions; the two constant colourings give N(b) and N(v).  A
    negative coefficient is removed by solving the same identity for the
    unknown term, which only needs norms into strictly smaller subgroups.
    """

    def _norm_cache(self):
        if not hasattr(self, "_ncache"):
            self._ncache = {}
        return self._ncache

    def _colour_term(self, K, H, c: Coloring, u, v):
        S = c.S
        parts = []
        for x, side in ((u, c.first), (v, c.second)):
            for h, L in side:
                y = self.conj(h, K, x)
                y = self.res(L, K.conjugate(h), y)
                parts.append(self.nm(L, S, y))
        return self.tr(S, H, self.product(S, parts))

    def _mixed_terms(self, K, H, u, v):
        terms = []
        for c in colorings(K, H):
            if not c.first or not c.second:
                continue
            terms.append(self._colour_term(K, H, c, u, v))
        return self.sum(H, terms)

    def norm_expand(self, K, H, x):
        if K == H:
            return x
        cache = self._norm_cache()
        key = (K, H, self._hashable(x))
        if key in cache:
            return cache[key]
        terms = self._terms(K, x)
        if not terms:
            out = self.zero(H)
        elif len(terms) == 1 and terms[0][1] == 1:
            out = self.nm_basis(K, H, terms[0][0])
        else:
            neg = [(b, c) for b, c in terms if c < 0]
            if neg:
                b = neg[0][0]
                v = self.add(K, x, b)
                # N(x + b) = N(x) + N(b) + mixed(x, b)
                rest = self.add(H, self.nm(K, H, b), self._mixed_terms(K, H, x, b))
                out = self.sub(H, self.nm(K, H, v), rest)
            else:
                b = terms[0][0]
                v = self.sub(K, x, b)
                out = self.sum(H, [self.nm(K, H, b), self.nm(K, H, v), self._mixed_terms(K, H, b, v)])
        cache[key] = out
        return out


# Burnside model ----------------------------------------------------------


class BurnsideModel(ExpansionNorm, TambaraModel):
    """The Burnside Tambara functor computed from G-set constructions."""

    label = "burnside"

    def __init__(self, group):
        super().__init__(group)
        self._lin = {}
        self._mul = {}
        all_subgroups(group)

    def element(self, H, coeffs):
        return BurnsideElement(H, coeffs)

    def _check(self, H, x):
        if not isinstance(x, BurnsideElement) or x.base != H:
            raise CarrierMismatch("expected an element at level %s, got %r" % (subgroup_name(H), x))

    def _linear(self, key, x, H_out, on_basis):
        out = {}
        for K, c in x.coeffs.items():
            k2 = key + (K,)
            img = self._lin.get(k2)
            if img is None:
                img = on_basis(K)
                self._lin[k2] = img
            for L, d in img.coeffs.items():
                out[L] = out.get(L, 0) + c * d
        return BurnsideElement(H_out, out, canonical=True)

    def res(self, K, H, x):
        self._check(H, x)
        f = coset_map(K, H)

        def on_basis(L):
            return classify(pullback(realize(BurnsideElement.basis(H, L)), f).p2)

        return self._linear(("res", K, H), x, K, on_basis)

    def tr(self, K, H, x):
        self._check(K, x)
        f = coset_map(K, H)
        return self._linear(("tr", K, H), x, H, lambda L: classify(realize(BurnsideElement.basis(K, L)).then(f)))

    def conj(self, g, H, x):
        self._check(H, x)
        G = self.group
        gH = H.conjugate(g)
        return BurnsideElement(gH, {G.class_rep(K.conjugate(g), within=gH): c for K, c in x.coeffs.items()}, canonical=True)

    def nm(self, K, H, x):
        self._check(K, x)
        if K == H:
            return x
        if x.is_nonnegative():
            return self.nm_set(K, H, x)
        return self.norm_expand(K, H, x)

    def nm_set(self, K, H, x):
        """Norm of a nonnegative element by a dependent product."""
        key = ("nm_set", K, H, x.key())
        if key not in self._lin:
            try:
                dp = dependent_product(coset_map(K, H), realize(x))
                self._lin[key] = classify(dp.mstar)
            except OutputTooLarge:
                self._lin[key] = norm_by_marks(K, H, x)
        return self._lin[key]

    def nm_basis(self, K, H, b):
        return self.nm_set(K, H, b)

    def _terms(self, K, x):
        return [(BurnsideElement(K, {L: 1}, canonical=True), c) for L, c in x.coeffs.items()]

    def _hashable(self, x):
        return x.key()

    def add(self, H, x, y):
        return x + y

    def sub(self, H, x, y):
        return x - y

    def neg(self, H, x):
        return -x

    def zero(self, H):
        return BurnsideElement.zero(H)

    def one(self, H):
        return BurnsideElement.one(H)

    def mul(self, H, x, y):
        out = {}
        for K, c in x.coeffs.items():
            for L, d in y.coeffs.items():
                key = (H, K, L)
                img = self._mul.get(key)
                if img is None:
                    pb = pullback(realize(BurnsideElement.basis(H, K)), realize(BurnsideElement.basis(H, L)))
                    img = classify(pb.p1.then(realize(BurnsideElement.basis(H, K))))
                    self._mul[key] = img
                for M, e in img.coeffs.items():
                    out[M] = out.get(M, 0) + c * d * e
        return BurnsideElement(H, out, canonical=True)

    def samples(self, H, rng):
        basis = [BurnsideElement(H, {K: 1}, canonical=True) for K in level_basis(H)]
        out = basis + [self.zero(H)] + [-b for b in basis[:2]]
        for _ in range(2):
            out.append(BurnsideElement(H, {K: rng.randint(-2, 2) for K in level_basis(H)}, canonical=True))
        uniq = []
        for x in out:
            if x not in uniq:
                uniq.append(x)
        return uniq

    def show(self, H, x):
        return repr(x)

    def to_tables(self) -> "TableModel":
        """The same functor as integer matrices on the canonical bases."""
        G = self.group
        subs = all_subgroups(G)
        res, tr, nm, conj, mul = {}, {}, {}, {}, {}
        for H in subs:
            bH = level_basis(H)
            for K in subs:
                if not K <= H:
                    continue
                bK = level_basis(K)
                res[(K, H)] = np.array(
                    [self.res(K, H, BurnsideElement(H, {L: 1}, canonical=True)).vector() for L in bH], dtype=np.int64
                ).T.reshape(len(bK), len(bH))
                tr[(K, H)] = np.array(
                    [self.tr(K, H, BurnsideElement(K, {L: 1}, canonical=True)).vector() for L in bK], dtype=np.int64
                ).T.reshape(len(bH), len(bK))
                nm[(K, H)] = np.array(
                    [self.nm(K, H, BurnsideElement(K, {L: 1}, canonical=True)).vector() for L in bK], dtype=np.int64
                ).reshape(len(bK), len(bH))
            one = [BurnsideElement(H, {L: 1}, canonical=True) for L in bH]
            mul[H] = np.array([[self.mul(H, a, b).vector() for b in one] for a in one], dtype=np.int64)
            for g in G:
                gH = H.conjugate(g)
                conj[(g, H)] = np.array([self.conj(g, H, b).vector() for b in one], dtype=np.int64).T.reshape(
                    len(level_basis(gH)), len(bH)
                )
        return TableModel(G, res, tr, nm, conj, mul, label="burnside-tables")


# integer table model -------------------------------------------------------


class TableModel(ExpansionNorm, TambaraModel):
    """A Tambara functor given by integer matrices on fixed bases.

    Level H is Z^rank(H).  ``res``, ``tr`` and ``conj`` are matrices acting
    on column vectors, ``mul[H][i, j]`` is the product of basis elements i
    and j, and ``nm[(K, H)][i]`` is the norm of basis element i.  Norms of
    everything else follow from these by the colouring expansion.
    """

    label = "tables"

    def __init__(self, group, res, tr, nm, conj, mul, label=None):
        super().__init__(group)
        self.res_t, self.tr_t, self.nm_t, self.conj_t, self.mul_t = res, tr, nm, conj, mul
        self.rank = {H: m.shape[0] for H, m in mul.items()}
        # unit: the basis is ordered with the class of H itself last
        self._one = {}
        for H, m in mul.items():
            self._one[H] = self._find_one(H)
        if label:
            self.label = label

    def _find_one(self, H):
        m = self.mul_t[H]
        n = m.shape[0]
        for i in range(n):
            if all(tuple(m[i, j]) == tuple(np.eye(n, dtype=np.int64)[j]) for j in range(n)):
                return tuple(np.eye(n, dtype=np.int64)[i].tolist())
        return tuple(np.eye(n, dtype=np.int64)[n - 1].tolist())

    def copy(self, label=None):
        cp = lambda d: {k: v.copy() for k, v in d.items()}
        return TableModel(self.group, cp(self.res_t), cp(self.tr_t), cp(self.nm_t), cp(self.conj_t), cp(self.mul_t), label or self.label)

    def _vec(self, H, x):
        if len(x) != self.rank[H]:
            raise CarrierMismatch("vector of length %d at a level of rank %d" % (len(x), self.rank[H]))
        return np.asarray(x, dtype=np.int64)

    def res(self, K, H, x):
        return tuple((self.res_t[(K, H)] @ self._vec(H, x)).tolist())

    def tr(self, K, H, x):
        return tuple((self.tr_t[(K, H)] @ self._vec(K, x)).tolist())

    def conj(self, g, H, x):
        return tuple((self.conj_t[(g, H)] @ self._vec(H, x)).tolist())

    def nm(self, K, H, x):
        self._vec(K, x)
        return self.norm_expand(K, H, x)

    def nm_basis(self, K, H, b):
        return tuple(self.nm_t[(K, H)][b.index(1)].tolist())

    def _terms(self, K, x):
        n = len(x)
        return [(tuple(int(i == j) for j in range(n)), c) for i, c in enumerate(x) if c]

    def _hashable(self, x):
        return tuple(x)

    def add(self, H, x, y):
        return tuple((np.asarray(x, dtype=np.int64) + np.asarray(y, dtype=np.int64)).tolist())

    def sub(self, H, x, y):
        return tuple((np.asarray(x, dtype=np.int64) - np.asarray(y, dtype=np.int64)).tolist())

    def neg(self, H, x):
        return tuple((-np.asarray(x)).tolist())

    def zero(self, H):
        return (0,) * self.rank[H]

    def one(self, H):
        return self._one[H]

    def mul(self, H, x, y):
        a, b = self._vec(H, x), self._vec(H, y)
        return tuple(np.einsum("i,j,ijk->k", a, b, self.mul_t[H]).tolist())

    def samples(self, H, rng):
        n = self.rank[H]
        eye = np.eye(n, dtype=np.int64)
        out = [tuple(eye[i].tolist()) for i in range(n)] + [self.zero(H)]
        out += [tuple((-eye[i]).tolist()) for i in range(min(2, n))]
        for _ in range(2):
            out.append(tuple(rng.randint(-2, 2) for _ in range(n)))
        uniq = []
        for x in out:
            if x not in uniq:
                uniq.append(x)
        return uniq


# finite models --------------------------------------------------------------


class FiniteModel(TambaraModel):
    """Finite carriers with every operation given as an index table.

    ``levels[H]`` holds ``elements``, ``add``, ``zero`` and optionally
    ``mul``/``one``.  ``res[(K, H)]``, ``tr[(K, H)]`` and ``nm[(K, H)]`` map
    element indices; ``conj[(g, H)]`` defaults to the identity on indices
    when missing (only sensible if all conjugate levels coincide).
    """

    label = "finite"

    def __init__(self, group, levels, res, tr, nm=None, conj=None, label=None):
        super().__init__(group)
        self.lv = levels
        self.res_t, self.tr_t = res, tr
        self.nm_t = nm or {}
        self.conj_t = conj or {}
        self.has_mul = all(lv.get("mul") is not None for lv in levels.values())
        self.has_norms = bool(self.nm_t)
        if label:
            self.label = label
        self._validate()

    def _validate(self):
        subs = all_subgroups(self.group)
        for H in subs:
            if H not in self.lv:
                raise InvalidModel("missing level %s" % subgroup_name(H))
            lv = self.lv[H]
            n = len(lv["elements"])
            add = lv["add"]
            if len(add) != n or any(len(r) != n for r in add):
                raise InvalidModel("add table at %s is not %dx%d" % (subgroup_name(H), n, n))
        for K in subs:
            for H in subs:
                if K <= H:
                    for name, tab in (("res", self.res_t), ("tr", self.tr_t)):
                        if (K, H) not in tab:
                            raise InvalidModel("missing %s table for %s <= %s" % (name, subgroup_name(K), subgroup_name(H)))
                    if self.has_norms and (K, H) not in self.nm_t:
                        raise InvalidModel("missing nm table for %s <= %s" % (subgroup_name(K), subgroup_name(H)))

    def size(self, H):
        return len(self.lv[H]["elements"])

    def res(self, K, H, x):
        return self.res_t[(K, H)][x]

    def tr(self, K, H, x):
        return self.tr_t[(K, H)][x]

    def nm(self, K, H, x):
        if not self.has_norms:
            raise InvalidModel("model has no norms")
        return self.nm_t[(K, H)][x]

    def conj(self, g, H, x):
        t = self.conj_t.get((g, H))
        return x if t is None else t[x]

    def add(self, H, x, y):
        return self.lv[H]["add"][x][y]

    def zero(self, H):
        return self.lv[H]["zero"]

    def mul(self, H, x, y):
        return self.lv[H]["mul"][x][y]

    def one(self, H):
        return self.lv[H]["one"]

    def samples(self, H, rng):
        return list(range(self.size(H)))

    def show(self, H, x):
        return str(self.lv[H]["elements"][x])


class MonoidValuedMackey(FiniteModel):
    """A Mackey functor with values in finite commutative monoids."""

    label = "mackey"

    def __init__(self, group, levels, res, tr, conj=None, label=None):
        super().__init__(group, levels, res, tr, None, conj, label)


def constant_levels(group, elements, add, zero, mul=None, one=None):
    """The same finite monoid at every level."""
    lv = {"elements": list(elements), "add": add, "zero": zero}
    if mul is not None:
        lv.update(mul=mul, one=one)
    return {H: dict(lv) for H in all_subgroups(group)}
