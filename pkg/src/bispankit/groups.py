"""Finite groups given by multiplication tables.

Elements are dense integer ids ``0..n-1``.  All tables are computed once at
construction; nothing mutates afterwards.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import config
from .errors import (
    GroupTooLarge,
    NoInverse,
    NotABijection,
    NotASubgroup,
    NotAssociative,
    NoUnit,
)


class FiniteGroup:
    """A finite group with precomputed multiplication and inverse tables.

    Identity is by object: two FiniteGroup instances are never equal, even
    when their tables coincide.  Subgroups and G-sets hold a reference to the
    group they live in and compare through it.
    """

    def __init__(self, table, identity, name="G", perms=None, labels=None):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.identity = identity
        self.name = name
        self.perms = tuple(perms) if perms is not None else None
        self.labels = tuple(labels) if labels is not None else None
        inv = [None] * self.order
        for a in range(self.order):
            row = self.table[a]
            for b in range(self.order):
                if row[b] == identity:
                    inv[a] = b
                    break
        self.inv = tuple(inv)
        self._cache = {}

    def __repr__(self):
        return "FiniteGroup(%s, order=%d)" % (self.name, self.order)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    @property
    def elements(self):
        return range(self.order)

    def mul(self, a, b):
        return self.table[a][b]

    def prod(self, *xs):
        r = self.identity
        for x in xs:
            r = self.table[r][x]
        return r

    def inverse(self, a):
        return self.inv[a]

    def conj(self, g, x):
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inv[g]]

    def element_order(self, a):
        k, x = 1, a
        while x != self.identity:
            x = self.table[x][a]
            k += 1
        return k

    def label(self, a):
        if self.labels is not None:
            return self.labels[a]
        if self.perms is not None:
            return cycle_string(self.perms[a])
        return str(a)

    def is_abelian(self):
        t = self.table
        return all(t[a][b] == t[b][a] for a in self for b in range(a))

    # subgroups ------------------------------------------------------------

    def closure(self, gens: Iterable[int]) -> frozenset:
        members = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in members:
                        members.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(members)

    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        members = frozenset(members)
        if not members or not members <= set(range(self.order)):
            raise NotASubgroup("members must be a non-empty set of element ids")
        if self.identity not in members:
            raise NotASubgroup("subgroup does not contain the identity")
        for a in members:
            if self.inv[a] not in members:
                raise NotASubgroup("not closed under inverses: %d" % a)
            for b in members:
                if self.table[a][b] not in members:
                    raise NotASubgroup("not closed under multiplication: %d*%d" % (a, b))
        return Subgroup(self, members)

    def generated(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, self.closure(gens))

    @property
    def trivial(self) -> "Subgroup":
        return Subgroup(self, frozenset([self.identity]))

    @property
    def whole(self) -> "Subgroup":
        return Subgroup(self, frozenset(range(self.order)))

    def check_subgroup(self, H: "Subgroup"):
        if not isinstance(H, Subgroup) or H.group is not self:
            raise NotASubgroup("%r is not a subgroup of %r" % (H, self))

    def subgroups(self) -> list:
        return all_subgroups(self)

    def subgroup_index(self, H: "Subgroup") -> int:
        idx = self._cache.get("subgroup_index")
        if idx is None:
            idx = {S: i for i, S in enumerate(all_subgroups(self))}
            self._cache["subgroup_index"] = idx
        try:
            return idx[H]
        except KeyError:
            raise NotASubgroup("%r is not a subgroup of %r" % (H, self)) from None

    def conjugacy_classes_of_subgroups(self) -> list:
        """Classes as lists of subgroups, ordered by their canonical member."""
        key = "subgroup_classes"
        if key not in self._cache:
            seen = set()
            classes = []
            for H in all_subgroups(self):
                if H in seen:
                    continue
                cls = sorted({H.conjugate(g) for g in self}, key=Subgroup.sort_key)
                seen.update(cls)
                classes.append(cls)
            self._cache[key] = classes
        return self._cache[key]

    def class_rep(self, H: "Subgroup", within: "Subgroup | None" = None) -> "Subgroup":
        """Canonical representative of the conjugacy class of ``H``.

        With ``within`` given, only conjugators from that subgroup are used;
        the result is the least ``wHw^-1`` for ``w`` in ``within``.
        """
        key = ("class_rep", H, within)
        rep = self._cache.get(key)
        if rep is None:
            conjugators = within.members if within is not None else range(self.order)
            rep = min((H.conjugate(g) for g in conjugators), key=Subgroup.sort_key)
            self._cache[key] = rep
        return rep

    def conjugator(self, H: "Subgroup", K: "Subgroup", within: "Subgroup | None" = None):
        """Some g (in ``within`` if given) with g H g^-1 == K, else None."""
        conjugators = sorted(within.members) if within is not None else range(self.order)
        for g in conjugators:
            if H.conjugate(g) == K:
                return g
        return None

    def normalizer(self, H: "Subgroup") -> "Subgroup":
        return Subgroup(self, frozenset(g for g in self if H.conjugate(g) == H))


@dataclass(frozen=True)
class Subgroup:
    group: FiniteGroup = field(repr=False)
    members: frozenset

    def __repr__(self):
        return "Subgroup(%s, order=%d)" % (self.group.name, len(self.members))

    def __str__(self):
        return subgroup_name(self)

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, g):
        return g in self.members

    def __le__(self, other):
        return self.group is other.group and self.members <= other.members

    def __lt__(self, other):
        return self.group is other.group and self.members < other.members

    @property
    def order(self):
        return len(self.members)

    def sort_key(self):
        return (len(self.members), tuple(sorted(self.members)))

    def conjugate(self, g) -> "Subgroup":
        """g H g^-1"""
        G = self.group
        return Subgroup(G, frozenset(G.conj(g, h) for h in self.members))

    def intersect(self, other) -> "Subgroup":
        return Subgroup(self.group, self.members & other.members)

    def index_in(self, other) -> int:
        return len(other.members) // len(self.members)

    def is_normal_in(self, other) -> bool:
        return all(self.conjugate(g) == self for g in other.members)

    def left_cosets(self, within: "Subgroup | None" = None) -> list:
        """Left cosets gH (g in ``within``), the coset of H first, others by least element."""
        G = self.group
        elems = sorted(within.members) if within is not None else range(G.order)
        seen = set()
        cosets = []
        for g in elems:
            if g in seen:
                continue
            c = frozenset(G.table[g][h] for h in self.members)
            seen |= c
            cosets.append(c)
        cosets.sort(key=lambda c: (G.identity not in c, min(c)))
        return cosets

    def as_group(self):
        """This subgroup as a FiniteGroup; returns (group, embedding) with
        ``embedding[i]`` the parent id of the i-th element."""
        key = ("as_group", self)
        cache = self.group._cache
        if key not in cache:
            G = self.group
            emb = sorted(self.members)
            pos = {g: i for i, g in enumerate(emb)}
            table = [[pos[G.table[a][b]] for b in emb] for a in emb]
            perms = [G.perms[a] for a in emb] if G.perms is not None else None
            labels = [G.labels[a] for a in emb] if G.labels is not None else None
            H = FiniteGroup(table, pos[G.identity], name=subgroup_name(self), perms=perms, labels=labels)
            cache[key] = (H, tuple(emb))
        return cache[key]


@dataclass(frozen=True)
class DoubleCosetDecomposition:
    left: Subgroup
    right: Subgroup
    representatives: tuple
    blocks: tuple

    def __len__(self):
        return len(self.representatives)


# construction ---------------------------------------------------------------


def group_from_cayley(table: Sequence[Sequence[int]], identity: int, name="G", labels=None) -> FiniteGroup:
    """Validate a Cayley table and build the group.

    Raises NotAssociative / NoUnit / NoInverse naming the first offending
    triple or element in enumeration order.
    """
    n = len(table)
    rows = [list(r) for r in table]
    if n == 0 or any(len(r) != n for r in rows):
        raise ValueError("Cayley table must be a non-empty square array")
    if not 0 <= identity < n:
        raise ValueError("identity %r does not index a row" % (identity,))
    for r in rows:
        for x in r:
            if not (isinstance(x, int) and 0 <= x < n):
                raise ValueError("table entry %r out of range" % (x,))
    for a in range(n):
        if rows[identity][a] != a or rows[a][identity] != a:
            raise NoUnit(identity)
    for a in range(n):
        ra = rows[a]
        for b in range(n):
            rab = rows[ra[b]]
            rb = rows[b]
            for c in range(n):
                if rab[c] != ra[rb[c]]:
                    raise NotAssociative((a, b, c))
    for a in range(n):
        if not any(rows[a][b] == identity and rows[b][a] == identity for b in range(n)):
            raise NoInverse(a)
    return FiniteGroup(rows, identity, name=name, labels=labels)


def _check_perm(p, degree):
    if len(p) != degree or sorted(p) != list(range(degree)):
        raise NotABijection(tuple(p))


_CLOSURE_LIMIT = 100000


def group_from_permutations(generators: Sequence[Sequence[int]], degree=None, name="G") -> FiniteGroup:
    """The subgroup of Sym(degree) generated by ``generators``.

    Elements are the permutation tuples sorted lexicographically (so the
    identity has id 0); ``a*b`` is the composite ``x -> a(b(x))``.
    """
    gens = [tuple(p) for p in generators]
    if degree is None:
        degree = len(gens[0]) if gens else 0
    for p in gens:
        _check_perm(p, degree)
    ident = tuple(range(degree))
    seen = {ident}
    frontier = [ident]
    bound = _CLOSURE_LIMIT
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = tuple(x[s[i]] for i in range(degree))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > bound:
                        raise GroupTooLarge(len(seen), bound)
        frontier = nxt
    elems = sorted(seen)
    pos = {p: i for i, p in enumerate(elems)}
    table = [[pos[tuple(a[b[i]] for i in range(degree))] for b in elems] for a in elems]
    return FiniteGroup(table, pos[ident], name=name, perms=elems)


def perm_from_cycles(text: str, degree: int) -> tuple:
    """Parse cycle notation such as ``"(0 1)(2 3 4)"``."""
    p = list(range(degree))
    for cyc in re.findall(r"\(([^)]*)\)", text):
        pts = [int(t) for t in re.split(r"[ ,]+", cyc.strip()) if t]
        for i, a in enumerate(pts):
            b = pts[(i + 1) % len(pts)]
            if not (0 <= a < degree and 0 <= b < degree):
                raise NotABijection(tuple(pts))
            p[a] = b
    _check_perm(p, degree)
    return tuple(p)


def cycle_string(p) -> str:
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc = [i]
        seen.add(i)
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


# named groups ---------------------------------------------------------------


def cyclic(n: int) -> FiniteGroup:
    if n == 1:
        return group_from_cayley([[0]], 0, name="C1")
    return group_from_permutations([tuple((i + 1) % n for i in range(n))], name="C%d" % n)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    return group_from_permutations([rot, ref], name="D%d" % n)


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return group_from_cayley([[0]], 0, name="S1")
    gens = [tuple([1, 0] + list(range(2, n)))]
    if n > 2:
        gens.append(tuple((i + 1) % n for i in range(n)))
    return group_from_permutations(gens, name="S%d" % n)


def alternating(n: int) -> FiniteGroup:
    gens = [tuple(perm_from_cycles("(0 1 %d)" % k, n)) for k in range(2, n)]
    if not gens:
        return group_from_cayley([[0]], 0, name="A%d" % n)
    return group_from_permutations(gens, degree=n, name="A%d" % n)


def quaternion() -> FiniteGroup:
    # elements (sign, unit) with unit in 1,i,j,k
    units = "1ijk"
    mult = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elems = [(s, u) for s in (1, -1) for u in units]
    pos = {e: i for i, e in enumerate(elems)}
    table = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s, u = mult[u1, u2]
            row.append(pos[(s1 * s2 * s, u)])
        table.append(row)
    labels = [("" if s > 0 else "-") + u for s, u in elems]
    return group_from_cayley(table, 0, name="Q8", labels=labels)


def direct_product(G: FiniteGroup, H: FiniteGroup, name=None) -> FiniteGroup:
    pairs = list(itertools.product(range(G.order), range(H.order)))
    pos = {p: i for i, p in enumerate(pairs)}
    table = [[pos[(G.table[a][c], H.table[b][d])] for (c, d) in pairs] for (a, b) in pairs]
    labels = ["(%s,%s)" % (G.label(a), H.label(b)) for a, b in pairs]
    return FiniteGroup(table, pos[(G.identity, H.identity)], name=name or "%sx%s" % (G.name, H.name), labels=labels)


_NAMED = {
    "trivial": lambda: cyclic(1),
    "V4": lambda: direct_product(cyclic(2), cyclic(2), name="C2xC2"),
    "K4": lambda: direct_product(cyclic(2), cyclic(2), name="C2xC2"),
    "C2XC2": lambda: direct_product(cyclic(2), cyclic(2), name="C2xC2"),
    "Q8": quaternion,
}


def by_name(name: str) -> FiniteGroup:
    """Build a named group: Cn, Dn (order 2n), Sn, An, Q8, C2xC2/V4."""
    key = name.strip()
    up = key.upper()
    if up in _NAMED:
        return _NAMED[up]()
    if key in _NAMED:
        return _NAMED[key]()
    m = re.fullmatch(r"([CDSA])(\d+)", up)
    if m:
        kind, n = m.group(1), int(m.group(2))
        return {"C": cyclic, "D": dihedral, "S": symmetric, "A": alternating}[kind](n)
    m = re.fullmatch(r"C(\d+)XC(\d+)", up)
    if m:
        a, b = int(m.group(1)), int(m.group(2))
        return direct_product(cyclic(a), cyclic(b), name="C%dxC%d" % (a, b))
    raise KeyError("unknown group name %r" % name)


# subgroup lattice ------------------------------------------------------------


def all_subgroups(G: FiniteGroup) -> list:
    """Every subgroup of G, sorted by (order, sorted members).

    Cyclic subgroups seed the search; joins of pairs are added until nothing
    new appears.
    """
    if "subgroups" in G._cache:
        return G._cache["subgroups"]
    if G.order > config.settings.group_bound:
        raise GroupTooLarge(G.order, config.settings.group_bound)
    found = {G.closure([g]) for g in G}
    frontier = list(found)
    cyclic_ = list(found)
    while frontier:
        nxt = []
        for A in frontier:
            for C in cyclic_:
                if C <= A:
                    continue
                J = G.closure(A | C)
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    subs = sorted((Subgroup(G, m) for m in found), key=Subgroup.sort_key)
    G._cache["subgroups"] = subs
    return subs


def subgroups_of(H: Subgroup) -> list:
    """Subgroups of H, in the global canonical order."""
    return [K for K in all_subgroups(H.group) if K <= H]


def double_cosets(G: FiniteGroup, K: Subgroup, L: Subgroup) -> DoubleCosetDecomposition:
    """The K-L double cosets KgL; representatives are least elements."""
    G.check_subgroup(K)
    G.check_subgroup(L)
    t = G.table
    assigned = set()
    reps, blocks = [], []
    for g in G:
        if g in assigned:
            continue
        block = frozenset(t[t[k][g]][l] for k in K.members for l in L.members)
        assigned |= block
        reps.append(g)
        blocks.append(block)
    return DoubleCosetDecomposition(K, L, tuple(reps), tuple(blocks))


def double_coset_reps(K: Subgroup, H: Subgroup, L: Subgroup) -> list:
    """Representatives g in H of the double cosets K\\H/L (K, L <= H).

    Each representative is the least element of its double coset, listed
    in increasing order.
    """
    G = H.group
    t = G.table
    assigned = set()
    reps = []
    for g in sorted(H.members):
        if g in assigned:
            continue
        assigned |= {t[t[k][g]][l] for k in K.members for l in L.members}
        reps.append(g)
    return reps


def weyl_group(G: FiniteGroup, H: Subgroup):
    """N_G(H)/H.  Returns ``(W, projection)`` where ``projection`` maps each
    element of the normaliser to its image id in W."""
    G.check_subgroup(H)
    N = G.normalizer(H)
    cosets = H.left_cosets(within=N)
    where = {}
    for i, c in enumerate(cosets):
        for g in c:
            where[g] = i
    reps = [min(c) for c in cosets]
    table = [[where[G.table[a][b]] for b in reps] for a in reps]
    W = FiniteGroup(table, where[G.identity], name="W(%s)" % subgroup_name(H))
    return W, dict(where)


def subgroup_name(H: Subgroup) -> str:
    """Short human label: order plus index in the canonical subgroup list."""
    G = H.group
    if "subgroups" in G._cache:
        try:
            i = G.subgroup_index(H)
            return "H%d[%d]" % (i, len(H))
        except NotASubgroup:
            pass
    return "<%s>" % ",".join(map(str, sorted(H.members)))
