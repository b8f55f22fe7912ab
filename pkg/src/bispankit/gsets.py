"""The category of finite G-sets.

A G-set is a dense point set ``0..size-1`` with an action table
``action[g, x] = g.x``; a G-map is an integer array.  Constructions
(pullback, coproduct, product, dependent product) enumerate their points
in a documented lexicographic order so outputs are reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from . import config
from .errors import (
    CompositionMismatch,
    GroupMismatch,
    InvalidAction,
    NotEquivariant,
    OutputTooLarge,
    TargetMismatch,
)
from .groups import FiniteGroup, Subgroup

_INT = np.int64


def _frozen(a) -> np.ndarray:
    arr = np.ascontiguousarray(a, dtype=_INT)
    arr.setflags(write=False)
    return arr


def _guard(size):
    if size > config.settings.output_bound:
        raise OutputTooLarge(size, config.settings.output_bound)


class GSet:
    """Finite G-set; ``action`` has shape ``(|G|, size)``."""

    __slots__ = ("group", "action", "size", "_hash", "_orbits")

    def __init__(self, group: FiniteGroup, action, check=True):
        self.group = group
        action = np.asarray(action, dtype=_INT)
        if action.ndim == 1 and action.size == 0:
            action = action.reshape(group.order, 0)
        self.action = _frozen(action)
        self.size = self.action.shape[1]
        self._hash = None
        self._orbits = None
        if check:
            self.validate()

    @classmethod
    def empty(cls, group):
        return cls(group, np.zeros((group.order, 0), dtype=_INT), check=False)

    @classmethod
    def trivial(cls, group, n=1):
        return cls(group, np.tile(np.arange(n, dtype=_INT), (group.order, 1)), check=False)

    def validate(self):
        G, A = self.group, self.action
        if A.shape[0] != G.order:
            raise InvalidAction("action table needs one row per group element")
        if self.size and (A.min() < 0 or A.max() >= self.size):
            raise InvalidAction("action table entry out of range")
        if not np.array_equal(A[G.identity], np.arange(self.size)):
            raise InvalidAction("identity does not act trivially")
        for g in G:
            for h in G:
                if not np.array_equal(A[g][A[h]], A[G.table[g][h]]):
                    bad = int(np.flatnonzero(A[g][A[h]] != A[G.table[g][h]])[0])
                    raise InvalidAction("g.(h.x) != (gh).x for g=%d h=%d x=%d" % (g, h, bad))

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if self is other:
            return True
        return (
            isinstance(other, GSet)
            and self.group is other.group
            and self.size == other.size
            and np.array_equal(self.action, other.action)
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.group), self.size, self.action.tobytes()))
        return self._hash

    def __repr__(self):
        return "GSet(%s, size=%d)" % (self.group.name, self.size)

    def act(self, g, x) -> int:
        return int(self.action[g, x])

    def stabilizer(self, x) -> Subgroup:
        col = self.action[:, x]
        return Subgroup(self.group, frozenset(np.flatnonzero(col == x).tolist()))

    def orbit_of(self, x) -> list:
        return sorted(set(self.action[:, x].tolist()))

    def identity(self) -> "GMap":
        return GMap(self, self, np.arange(self.size), check=False)

    def fixed_points(self, H: Subgroup) -> list:
        if not self.size:
            return []
        rows = self.action[sorted(H.members)]
        return np.flatnonzero((rows == np.arange(self.size)).all(axis=0)).tolist()


class GMap:
    """Equivariant map ``source -> target`` given by ``fn[x]``."""

    __slots__ = ("source", "target", "fn")

    def __init__(self, source: GSet, target: GSet, fn, check=True):
        if source.group is not target.group:
            raise GroupMismatch("source and target live over different groups")
        self.source = source
        self.target = target
        self.fn = _frozen(np.asarray(fn, dtype=_INT).reshape(-1))
        if check:
            self.validate()

    def validate(self):
        if len(self.fn) != self.source.size:
            raise NotEquivariant("map has %d entries, source has %d points" % (len(self.fn), self.source.size))
        if self.source.size == 0:
            return
        if self.fn.min() < 0 or self.fn.max() >= self.target.size:
            raise NotEquivariant("map value out of range")
        lhs = self.fn[self.source.action]
        rhs = self.target.action[:, self.fn] if self.target.size else lhs
        if not np.array_equal(lhs, rhs):
            g, x = (int(v[0]) for v in np.nonzero(lhs != rhs))
            raise NotEquivariant("f(g.x) != g.f(x) at g=%d x=%d" % (g, x))

    @property
    def group(self):
        return self.source.group

    def __call__(self, x) -> int:
        return int(self.fn[x])

    def __eq__(self, other):
        return (
            isinstance(other, GMap)
            and self.source == other.source
            and self.target == other.target
            and np.array_equal(self.fn, other.fn)
        )

    def __hash__(self):
        return hash((self.source, self.target, self.fn.tobytes()))

    def __repr__(self):
        return "GMap(%d -> %d: %s)" % (self.source.size, self.target.size, self.fn.tolist())

    def then(self, other: "GMap") -> "GMap":
        """``other o self``."""
        if self.target != other.source:
            raise CompositionMismatch("cannot compose: target of first is not source of second")
        return GMap(self.source, other.target, other.fn[self.fn] if self.source.size else [], check=False)

    def compose(self, other: "GMap") -> "GMap":
        """``self o other``."""
        return other.then(self)

    def fiber(self, y) -> list:
        return np.flatnonzero(self.fn == y).tolist()

    def fibers(self) -> list:
        out = [[] for _ in range(self.target.size)]
        for x, y in enumerate(self.fn.tolist()):
            out[y].append(x)
        return out

    def is_iso(self) -> bool:
        return self.source.size == self.target.size and len(set(self.fn.tolist())) == self.source.size

    def inverse(self) -> "GMap":
        if not self.is_iso():
            raise NotEquivariant("map is not a bijection")
        inv = np.empty(self.target.size, dtype=_INT)
        inv[self.fn] = np.arange(self.source.size)
        return GMap(self.target, self.source, inv, check=False)


# orbits ---------------------------------------------------------------------


@dataclass(frozen=True)
class Orbit:
    rep: int
    stabilizer: Subgroup
    points: tuple


@dataclass(frozen=True)
class OrbitDecomposition:
    """Orbits ordered by least point; representatives are least points.

    ``multiplicity`` maps a canonical subgroup (least member of the
    stabilizer's conjugacy class) to the number of orbits of that type.
    """

    gset: GSet
    orbits: tuple
    multiplicity: dict

    def __len__(self):
        return len(self.orbits)

    def orbit_index(self) -> np.ndarray:
        idx = np.empty(self.gset.size, dtype=_INT)
        for i, o in enumerate(self.orbits):
            idx[list(o.points)] = i
        return idx


def decompose(X: GSet) -> OrbitDecomposition:
    if X._orbits is not None:
        return X._orbits
    G = X.group
    A = X.action
    seen = np.zeros(X.size, dtype=bool)
    orbits = []
    mult = {}
    for x in range(X.size):
        if seen[x]:
            continue
        col = A[:, x]
        pts = np.unique(col)
        seen[pts] = True
        stab = Subgroup(G, frozenset(np.flatnonzero(col == x).tolist()))
        orbits.append(Orbit(x, stab, tuple(pts.tolist())))
        key = G.class_rep(stab)
        mult[key] = mult.get(key, 0) + 1
    mult = dict(sorted(mult.items(), key=lambda kv: kv[0].sort_key()))
    dec = OrbitDecomposition(X, tuple(orbits), mult)
    X._orbits = dec
    return dec


def restrict(X: GSet, points: Sequence[int]):
    """Sub-G-set on a union of orbits; returns ``(Y, inclusion)``."""
    pts = np.asarray(sorted(points), dtype=_INT)
    pos = np.full(X.size, -1, dtype=_INT)
    pos[pts] = np.arange(len(pts))
    sub = pos[X.action[:, pts]] if len(pts) else np.zeros((X.group.order, 0), dtype=_INT)
    if len(pts) and sub.min() < 0:
        raise InvalidAction("point set is not closed under the action")
    Y = GSet(X.group, sub, check=False)
    return Y, GMap(Y, X, pts, check=False)


def preimage(f: GMap, points) -> tuple:
    """The sub-G-set ``f^-1(points)`` with its inclusion and the restricted map."""
    pts = set(points)
    src = [x for x, y in enumerate(f.fn.tolist()) if y in pts]
    S, inc = restrict(f.source, src)
    return S, inc


# orbit G-sets --------------------------------------------------------------


def orbit(G: FiniteGroup, H: Subgroup) -> GSet:
    """G/H with left translation; point 0 is the coset H itself."""
    G.check_subgroup(H)
    key = ("orbit", H)
    if key in G._cache:
        return G._cache[key]
    cosets = H.left_cosets()
    where = np.empty(G.order, dtype=_INT)
    for i, c in enumerate(cosets):
        where[list(c)] = i
    reps = [min(c) for c in cosets]
    action = np.array([[where[G.table[g][r]] for r in reps] for g in G], dtype=_INT)
    X = GSet(G, action, check=False)
    G._cache[key] = X
    G._cache[("cosets", H)] = (cosets, where, reps)
    return X


def coset_data(H: Subgroup):
    """``(cosets, element->coset index, coset representatives)`` for G/H."""
    orbit(H.group, H)
    return H.group._cache[("cosets", H)]


def coset_map(K: Subgroup, H: Subgroup) -> GMap:
    """The projection G/K -> G/H, gK -> gH, for K <= H."""
    if not K <= H:
        raise CompositionMismatch("coset map needs K <= H")
    G = H.group
    key = ("coset_map", K, H)
    if key not in G._cache:
        _, _, repsK = coset_data(K)
        _, whereH, _ = coset_data(H)
        G._cache[key] = GMap(orbit(G, K), orbit(G, H), [whereH[r] for r in repsK], check=False)
    return G._cache[key]


def conjugation_map(g, H: Subgroup) -> GMap:
    """The isomorphism G/(gHg^-1) -> G/H, x gHg^-1 -> x g H."""
    G = H.group
    key = ("conj_map", g, H)
    if key not in G._cache:
        K = H.conjugate(g)
        _, _, repsK = coset_data(K)
        _, whereH, _ = coset_data(H)
        G._cache[key] = GMap(orbit(G, K), orbit(G, H), [whereH[G.table[r][g]] for r in repsK], check=False)
    return G._cache[key]


def orbit_point_map(X: GSet, x: int) -> GMap:
    """G/stab(x) -> X, gH -> g.x."""
    H = X.stabilizer(x)
    _, _, reps = coset_data(H)
    return GMap(orbit(X.group, H), X, [X.action[r, x] for r in reps], check=False)


# homs and isomorphisms -------------------------------------------------------


def _candidates(Y: GSet, stab: Subgroup, among=None):
    """Points of Y fixed by ``stab`` (optionally only those in ``among``)."""
    fixed = Y.fixed_points(stab) if Y.size else []
    if among is not None:
        among = set(among)
        fixed = [y for y in fixed if y in among]
    return fixed


def _extend(X: GSet, dec: OrbitDecomposition, choice) -> np.ndarray:
    fn = np.empty(X.size, dtype=_INT)
    for o, (Y, y) in zip(dec.orbits, choice):
        # g.rep -> g.y for all g
        fn[X.action[:, o.rep]] = Y.action[:, y]
    return fn


def homs(X: GSet, Y: GSet) -> Iterator[GMap]:
    """All G-maps X -> Y, lexicographic in the images of orbit representatives."""
    if X.group is not Y.group:
        raise GroupMismatch("different groups")
    dec = decompose(X)
    choices = [_candidates(Y, o.stabilizer) for o in dec.orbits]
    for combo in itertools.product(*choices):
        yield GMap(X, Y, _extend(X, dec, [(Y, y) for y in combo]), check=False)


def hom_count(X: GSet, Y: GSet) -> int:
    dec = decompose(X)
    n = 1
    for o in dec.orbits:
        n *= len(_candidates(Y, o.stabilizer))
    return n


def homs_over(q: GMap, p: GMap) -> Iterator[GMap]:
    """Maps phi: source(q) -> source(p) with p o phi == q."""
    if q.target != p.target:
        raise TargetMismatch("slice homs need a common base")
    Q, P = q.source, p.source
    dec = decompose(Q)
    fibers = p.fibers()
    choices = [_candidates(P, o.stabilizer, fibers[q(o.rep)]) for o in dec.orbits]
    for combo in itertools.product(*choices):
        yield GMap(Q, P, _extend(Q, dec, [(P, y) for y in combo]), check=False)


def count_homs_over(q: GMap, p: GMap) -> int:
    dec = decompose(q.source)
    fibers = p.fibers()
    n = 1
    for o in dec.orbits:
        n *= len(_candidates(p.source, o.stabilizer, fibers[q(o.rep)]))
    return n


def match_orbits(X: GSet, xlabel, Y: GSet, ylabel):
    """Equivariant bijection phi: X -> Y with ylabel(phi(x)) == xlabel(x).

    ``xlabel``/``ylabel`` are sequences of hashable labels that the caller
    guarantees are equivariant for some common action.  Orbits that are
    isomorphic over the labels form equivalence classes, so a greedy
    matching is complete.  Returns the map or None.
    """
    if X.group is not Y.group or X.size != Y.size:
        return None
    dx, dy = decompose(X), decompose(Y)
    if len(dx) != len(dy):
        return None
    used = [False] * len(dy)
    by_label = {}
    for j, o in enumerate(dy.orbits):
        for y in o.points:
            by_label.setdefault(ylabel[y], []).append((j, y))
    choice = []
    for o in dx.orbits:
        found = None
        for j, y in by_label.get(xlabel[o.rep], ()):
            if used[j]:
                continue
            if len(dy.orbits[j].points) != len(o.points):
                continue
            if Y.stabilizer(y) == o.stabilizer:
                found = (j, y)
                break
        if found is None:
            return None
        used[found[0]] = True
        choice.append((Y, found[1]))
    return GMap(X, Y, _extend(X, dx, choice), check=False)


def iso(X: GSet, Y: GSet):
    """An equivariant bijection X -> Y, or None.

    Decided by comparing stabilizer-conjugacy multiplicities; the witness
    sends each orbit representative to a point of a matching orbit whose
    stabilizer equals the representative's.
    """
    if X.group is not Y.group:
        raise GroupMismatch("different groups")
    if decompose(X).multiplicity != decompose(Y).multiplicity:
        return None
    return match_orbits(X, [0] * X.size, Y, [0] * Y.size)


def iso_over(p: GMap, q: GMap):
    """Isomorphism phi: source(p) -> source(q) with q o phi == p."""
    if p.target != q.target:
        return None
    return match_orbits(p.source, p.fn.tolist(), q.source, q.fn.tolist())


# limits and colimits -------------------------------------------------------


@dataclass(frozen=True)
class Pullback:
    obj: GSet
    p1: GMap
    p2: GMap
    pairs: np.ndarray  # shape (size, 2)


def _pair_gset(G, A: GSet, B: GSet, pairs: np.ndarray) -> GSet:
    n = len(pairs)
    if n == 0:
        return GSet.empty(G)
    keys = pairs[:, 0] * B.size + pairs[:, 1]
    ga = A.action[:, pairs[:, 0]]
    gb = B.action[:, pairs[:, 1]]
    gk = ga * B.size + gb
    action = np.searchsorted(keys, gk)
    return GSet(G, action, check=False)


def pullback(f: GMap, g: GMap) -> Pullback:
    """P = {(a, b) | f(a) = g(b)} ordered lexicographically."""
    if f.group is not g.group:
        raise GroupMismatch("different groups")
    if f.target != g.target:
        raise TargetMismatch("pullback needs maps with a common target")
    A, B = f.source, g.source
    gf = g.fibers()
    count = sum(len(gf[c]) for c in f.fn.tolist())
    _guard(count)
    pairs = np.array([(a, b) for a, c in enumerate(f.fn.tolist()) for b in gf[c]], dtype=_INT).reshape(-1, 2)
    P = _pair_gset(f.group, A, B, pairs)
    return Pullback(P, GMap(P, A, pairs[:, 0], check=False), GMap(P, B, pairs[:, 1], check=False), pairs)


def product(X: GSet, Y: GSet):
    """Cartesian product with diagonal action; returns ``(P, (p1, p2))``."""
    if X.group is not Y.group:
        raise GroupMismatch("different groups")
    _guard(X.size * Y.size)
    pairs = np.array(list(itertools.product(range(X.size), range(Y.size))), dtype=_INT).reshape(-1, 2)
    P = _pair_gset(X.group, X, Y, pairs)
    return P, (GMap(P, X, pairs[:, 0], check=False), GMap(P, Y, pairs[:, 1], check=False))


def coproduct(Xs: Sequence[GSet], group: FiniteGroup | None = None):
    """Disjoint union (summands in order); returns ``(X, injections)``."""
    Xs = list(Xs)
    if not Xs:
        if group is None:
            raise GroupMismatch("empty coproduct needs an explicit group")
        return GSet.empty(group), []
    G = Xs[0].group
    if any(X.group is not G for X in Xs):
        raise GroupMismatch("different groups")
    offsets = np.cumsum([0] + [X.size for X in Xs])
    _guard(int(offsets[-1]))
    action = np.concatenate([X.action + off for X, off in zip(Xs, offsets)], axis=1) if offsets[-1] else np.zeros((G.order, 0), dtype=_INT)
    U = GSet(G, action, check=False)
    inj = [GMap(X, U, np.arange(X.size) + off, check=False) for X, off in zip(Xs, offsets)]
    return U, inj


def copair(maps: Sequence[GMap], U: GSet | None = None) -> GMap:
    """[f1, ..., fn]: X1 + ... + Xn -> Y for maps with a common target."""
    maps = list(maps)
    if U is None:
        U, _ = coproduct([f.source for f in maps])
    if not maps:
        raise CompositionMismatch("copairing needs at least one map")
    Y = maps[0].target
    if any(f.target != Y for f in maps):
        raise TargetMismatch("copairing needs a common target")
    fn = np.concatenate([f.fn for f in maps]) if U.size else []
    return GMap(U, Y, fn, check=False)


def coproduct_map(maps: Sequence[GMap]) -> GMap:
    """f1 + ... + fn: X1 + ... + Xn -> Y1 + ... + Yn."""
    maps = list(maps)
    S, _ = coproduct([f.source for f in maps])
    T, inj = coproduct([f.target for f in maps])
    fn = np.concatenate([i.fn[f.fn] for f, i in zip(maps, inj)]) if S.size else []
    return GMap(S, T, fn, check=False)


def fold(X: GSet, n=2) -> GMap:
    """The codiagonal X + ... + X -> X (n copies)."""
    U, _ = coproduct([X] * n, group=X.group)
    return GMap(U, X, np.tile(np.arange(X.size), n), check=False)


def empty_map(X: GSet) -> GMap:
    return GMap(GSet.empty(X.group), X, [], check=False)


def terminal(G: FiniteGroup) -> GSet:
    return orbit(G, G.whole)


def to_terminal(X: GSet) -> GMap:
    return GMap(X, terminal(X.group), np.zeros(X.size, dtype=_INT), check=False)


# dependent products --------------------------------------------------------


@dataclass(frozen=True)
class DependentProduct:
    """m_*(A) for m: X -> Y and p: A -> X.

    ``mstar`` is the structure map m_*(A) -> Y, ``pulled`` the pullback
    m^*(m_*(A)) with projections ``to_x`` and ``to_pi``; ``counit`` is the
    evaluation m^*m_*(A) -> A.  ``sections[i]`` lists the values of section i
    on the sorted fiber of m over ``mstar(i)``.
    """

    m: GMap
    p: GMap
    mstar: GMap
    counit: GMap
    pulled: Pullback
    sections: tuple

    @property
    def obj(self) -> GSet:
        return self.mstar.source


def dependent_product(m: GMap, p: GMap) -> DependentProduct:
    """Right adjoint to pullback along m, computed fiberwise as sections.

    The fiber over y is the set of sections s: m^-1(y) -> A of p, listed in
    itertools.product order over the sorted fiber; (g.s)(x) = g.s(g^-1 x).
    """
    if m.group is not p.group:
        raise GroupMismatch("different groups")
    if p.target != m.source:
        raise CompositionMismatch("dependent product needs target(p) == source(m)")
    G = m.group
    X, Y, A = m.source, m.target, p.source
    mfib = m.fibers()
    pfib = p.fibers()
    pos_in_pfib = np.zeros(A.size, dtype=_INT)
    for x in range(X.size):
        for i, a in enumerate(pfib[x]):
            pos_in_pfib[a] = i
    counts = []
    for y in range(Y.size):
        c = 1
        for x in mfib[y]:
            c *= len(pfib[x])
        counts.append(c)
    total = sum(counts)
    _guard(total)
    offsets = np.cumsum([0] + counts)
    # section tables per fiber
    tables = []
    for y in range(Y.size):
        xs = mfib[y]
        if counts[y] == 0:
            tables.append(np.zeros((0, len(xs)), dtype=_INT))
        elif not xs:
            tables.append(np.zeros((1, 0), dtype=_INT))
        else:
            grids = np.meshgrid(*[np.asarray(pfib[x], dtype=_INT) for x in xs], indexing="ij")
            tables.append(np.stack([gr.reshape(-1) for gr in grids], axis=1))
    # strides for mixed-radix indexing of sections over each y
    strides = []
    for y in range(Y.size):
        rad = [len(pfib[x]) for x in mfib[y]]
        st = [1] * len(rad)
        for i in range(len(rad) - 2, -1, -1):
            st[i] = st[i + 1] * rad[i + 1]
        strides.append(np.asarray(st, dtype=_INT))
    xpos = np.zeros(X.size, dtype=_INT)
    for y in range(Y.size):
        for i, x in enumerate(mfib[y]):
            xpos[x] = i
    action = np.empty((G.order, total), dtype=_INT)
    AX, AA, AY = X.action, A.action, Y.action
    for g in G:
        ginv = G.inv[g]
        for y in range(Y.size):
            if counts[y] == 0:
                continue
            gy = AY[g, y]
            xs_target = mfib[gy]
            S = tables[y]
            if xs_target:
                # column j of the new section: g . s(g^-1 x'_j)
                src_cols = [xpos[AX[ginv, xt]] for xt in xs_target]
                newvals = AA[g][S[:, src_cols]]
                idx = (pos_in_pfib[newvals] * strides[gy]).sum(axis=1)
            else:
                idx = np.zeros(len(S), dtype=_INT)
            action[g, offsets[y]:offsets[y + 1]] = offsets[gy] + idx
    Pi = GSet(G, action, check=False)
    ys = np.repeat(np.arange(Y.size, dtype=_INT), counts)
    mstar = GMap(Pi, Y, ys, check=False)
    pulled = pullback(m, mstar)
    sections = tuple(tuple(row) for S in tables for row in S.tolist())
    # counit (x, i) -> section_i(x)
    vals = []
    for x, i in pulled.pairs.tolist():
        vals.append(sections[i][xpos[x]])
    counit = GMap(pulled.obj, A, vals, check=False)
    return DependentProduct(m, p, mstar, counit, pulled, sections)


@dataclass(frozen=True)
class DistributivityDiagram:
    """X <-e- m^*m_*X -m'-> m_*X, with b' : m^*m_*X -> Y and b = m_*(a): m_*X -> Z."""

    a: GMap
    m: GMap
    e: GMap
    m_prime: GMap
    b: GMap
    b_prime: GMap

    def check(self) -> bool:
        ok_square = self.b_prime.then(self.m) == self.m_prime.then(self.b)
        ok_counit = self.e.then(self.a) == self.b_prime
        pb = pullback(self.m, self.b)
        lab = list(zip(self.b_prime.fn.tolist(), self.m_prime.fn.tolist()))
        ok_pb = match_orbits(self.e.source, lab, pb.obj, [tuple(r) for r in pb.pairs.tolist()]) is not None
        return ok_square and ok_counit and ok_pb


def distributivity_diagram(a: GMap, m: GMap) -> DistributivityDiagram:
    if a.target != m.source:
        raise CompositionMismatch("distributivity diagram needs target(a) == source(m)")
    dp = dependent_product(m, a)
    return DistributivityDiagram(a, m, dp.counit, dp.pulled.p2, dp.mstar, dp.pulled.p1)


# enumeration helpers -------------------------------------------------------


def orbit_types(G: FiniteGroup) -> list:
    """Canonical orbit G-sets, one per conjugacy class of subgroups."""
    return [orbit(G, cls[0]) for cls in G.conjugacy_classes_of_subgroups()]


def gsets_up_to(G: FiniteGroup, n: int) -> list:
    """One G-set per isomorphism class with at most n points.

    Each is the coproduct of canonical orbits in class order.
    """
    types = [(cls[0], G.order // len(cls[0])) for cls in G.conjugacy_classes_of_subgroups()]
    out = []

    def rec(i, budget, acc):
        if i == len(types):
            summands = [orbit(G, H) for H in acc]
            out.append(coproduct(summands, group=G)[0])
            return
        H, size = types[i]
        k = 0
        while k * size <= budget:
            rec(i + 1, budget - k * size, acc + [H] * k)
            k += 1

    rec(0, n, [])
    out.sort(key=lambda X: (X.size, [(H.sort_key(), k) for H, k in decompose(X).multiplicity.items()]))
    return out


def restrict_to_subgroup(X: GSet, K: Subgroup) -> GSet:
    """X as a K-set, over the group ``K.as_group()``."""
    Kg, emb = K.as_group()
    return GSet(Kg, X.action[list(emb)], check=False)
