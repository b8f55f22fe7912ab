"""Bispans X <-r- A -n-> B -t-> Y and their composition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AdmissibilityViolated, InvalidDescriptor, NotComposable, OutputTooLarge
from .groups import all_subgroups, subgroup_name
from .gsets import (
    GMap,
    GSet,
    copair,
    coproduct,
    coproduct_map,
    coset_map,
    decompose,
    dependent_product,
    distributivity_diagram,
    empty_map,
    match_orbits,
    pullback,
    restrict,
)
from .spans import SubcategoryDescriptor


@dataclass(frozen=True, eq=False)
class Bispan:
    r: GMap
    n: GMap
    t: GMap

    def __post_init__(self):
        if self.r.source != self.n.source or self.n.target != self.t.source:
            raise NotComposable("bispan legs are not composable as X <- A -> B -> Y")

    @property
    def source(self) -> GSet:
        return self.r.target

    @property
    def target(self) -> GSet:
        return self.t.target

    @property
    def A(self) -> GSet:
        return self.r.source

    @property
    def B(self) -> GSet:
        return self.n.target

    @property
    def group(self):
        return self.r.group

    def __repr__(self):
        return "Bispan(%d <- %d -> %d -> %d)" % (self.source.size, self.A.size, self.B.size, self.target.size)


def identity_bispan(X: GSet) -> Bispan:
    i = X.identity()
    return Bispan(i, i, i)


def pure_restriction(f: GMap) -> Bispan:
    """The bispan target(f) => source(f) given by pulling back along f."""
    i = f.source.identity()
    return Bispan(f, i, i)


def pure_norm(f: GMap) -> Bispan:
    return Bispan(f.source.identity(), f, f.target.identity())


def pure_transfer(f: GMap) -> Bispan:
    i = f.source.identity()
    return Bispan(i, i, f)


class SemiringContext:
    """A pair of descriptors: M for norm legs, A for transfer legs."""

    def __init__(self, M: SubcategoryDescriptor, A: SubcategoryDescriptor, check=True):
        if M.group is not A.group:
            raise InvalidDescriptor("descriptors live over different groups")
        self.M, self.A = M, A
        self.group = M.group
        self.weakly_extensive = M.report().is_weakly_extensive and A.report().is_weakly_extensive
        self.is_ring = A.report().is_extensive
        self.preserves = None
        self.problems = []
        if check:
            self.preserves = self._check_preservation()
            if not self.weakly_extensive:
                raise InvalidDescriptor("semiring context needs weakly extensive descriptors")
            if not self.preserves:
                raise InvalidDescriptor("dependent products along M do not preserve A: " + self.problems[0])

    @classmethod
    def complete(cls, G):
        D = SubcategoryDescriptor.all_maps(G)
        return cls(D, D)

    @property
    def valid(self):
        return self.weakly_extensive and self.preserves is not False

    def _check_preservation(self) -> bool:
        """m_* of an admissible map along an admissible orbit map stays admissible.

        Checked for all orbit maps m in M, with a ranging over admissible
        orbit maps into source(m), the empty map and coproducts of two
        admissible orbit maps.
        """
        G = self.group
        subs = all_subgroups(G)
        ok = True
        for H, K in sorted(self.M.pairs, key=lambda p: (p[0].sort_key(), p[1].sort_key())):
            m = coset_map(K, H)
            into = [coset_map(L, K) for L in subs if (K, L) in self.A.pairs]
            cands = [empty_map(m.source)] + into
            cands += [copair([a, b]) for i, a in enumerate(into) for b in into[i:]]
            for a in cands:
                try:
                    dp = dependent_product(m, a)
                except OutputTooLarge:
                    continue
                bad = self.A.violation(dp.mstar)
                if bad is not None:
                    ok = False
                    self.problems.append(
                        "m_* along G/%s -> G/%s gives orbit map (%s, %s)"
                        % (subgroup_name(K), subgroup_name(H), subgroup_name(bad[0]), subgroup_name(bad[1]))
                    )
                    break
        return ok

    def flags(self):
        return {"weakly_extensive": self.weakly_extensive, "preserves": self.preserves, "ring": self.is_ring}


def _need(desc, f: GMap, leg: str):
    if desc is None:
        return
    bad = desc.violation(f)
    if bad is not None:
        raise AdmissibilityViolated(leg, (subgroup_name(bad[0]), subgroup_name(bad[1])))


def check_bispan(b: Bispan, ctx: SemiringContext | None):
    if ctx is not None:
        _need(ctx.M, b.n, "n")
        _need(ctx.A, b.t, "t")


def compose_bispans(b2: Bispan, b1: Bispan, ctx: SemiringContext | None = None) -> Bispan:
    """b2 o b1 in restriction-norm-transfer normal form.

    b1: X <- A1 -> B1 -> Y and b2: Y <- A2 -> B2 -> Z.  The transfer t1 is
    pulled back along r2, the norm n1 along that pullback, the resulting
    transfer is moved past n2 with a distributivity diagram, and the extra
    restriction is pulled back along the norm in front of it.
    """
    if b1.target != b2.source:
        raise NotComposable("target of the first bispan is not the source of the second")
    M = ctx.M if ctx else None
    Ad = ctx.A if ctx else None
    check_bispan(b1, ctx)
    check_bispan(b2, ctx)
    P = pullback(b1.t, b2.r)  # P -> B1, P -> A2
    t1p = P.p2
    _need(Ad, t1p, "t1 pulled back along r2")
    Q = pullback(b1.n, P.p1)  # Q -> A1, Q -> P
    n1p = Q.p2
    _need(M, n1p, "n1 pulled back along r2")
    D = distributivity_diagram(t1p, b2.n)
    _need(M, D.m_prime, "n2 pulled back to the distributivity diagram")
    _need(Ad, D.b, "transfer through the dependent product")
    Q2 = pullback(n1p, D.e)  # Q' -> Q, Q' -> E
    _need(M, Q2.p2, "n1 pulled back along the counit")
    r = Q2.p1.then(Q.p1).then(b1.r)
    n = Q2.p2.then(D.m_prime)
    t = D.b.then(b2.t)
    _need(M, n, "n")
    _need(Ad, t, "t")
    return Bispan(r, n, t)


def compose_all(bispans, ctx=None) -> Bispan:
    """Compose a list given in order of application (first applied first)."""
    it = iter(bispans)
    out = next(it)
    for b in it:
        out = compose_bispans(b, out, ctx)
    return out


def bispan_iso(b1: Bispan, b2: Bispan):
    """Witness ``(alpha, beta)`` of isomorphic middle objects, or None.

    Orbits of B are matched greedily; for each candidate image point of an
    orbit representative, the part of A over that orbit is matched over the
    labels (r, beta o n).
    """
    if b1.source != b2.source or b1.target != b2.target:
        return None
    if b1.A.size != b2.A.size or b1.B.size != b2.B.size:
        return None
    if decompose(b1.B).multiplicity != decompose(b2.B).multiplicity:
        return None
    if decompose(b1.A).multiplicity != decompose(b2.A).multiplicity:
        return None
    B1, B2 = b1.B, b2.B
    d1, d2 = decompose(B1), decompose(B2)
    n1_fib = b1.n.fibers()
    n2_fib = b2.n.fibers()
    alpha = np.full(b1.A.size, -1, dtype=np.int64)
    beta = np.full(B1.size, -1, dtype=np.int64)
    used = [False] * len(d2.orbits)
    t1, t2 = b1.t.fn.tolist(), b2.t.fn.tolist()
    r1, r2 = b1.r.fn.tolist(), b2.r.fn.tolist()
    for o in d1.orbits:
        src_pts = sorted(a for y in o.points for a in n1_fib[y])
        S1, inc1 = restrict(b1.A, src_pts)
        found = False
        for j, o2 in enumerate(d2.orbits):
            if used[j] or len(o2.points) != len(o.points):
                continue
            tgt_pts = sorted(a for y in o2.points for a in n2_fib[y])
            if len(tgt_pts) != len(src_pts):
                continue
            S2, inc2 = restrict(b2.A, tgt_pts)
            for y2 in o2.points:
                if t2[y2] != t1[o.rep] or B2.stabilizer(y2) != o.stabilizer:
                    continue
                bmap = {}
                for g in range(B1.group.order):
                    bmap[int(B1.action[g, o.rep])] = int(B2.action[g, y2])
                lab1 = [(r1[a], bmap[int(b1.n.fn[a])]) for a in inc1.fn.tolist()]
                lab2 = [(r2[a], int(b2.n.fn[a])) for a in inc2.fn.tolist()]
                phi = match_orbits(S1, lab1, S2, lab2)
                if phi is None:
                    continue
                for y, z in bmap.items():
                    beta[y] = z
                if S1.size:
                    alpha[inc1.fn] = inc2.fn[phi.fn]
                used[j] = True
                found = True
                break
            if found:
                break
        if not found:
            return None
    return GMap(b1.A, b2.A, alpha, check=False), GMap(B1, B2, beta, check=False)


def product_bispans(b1: Bispan, b2: Bispan, ctx: SemiringContext | None = None) -> Bispan:
    """Legwise disjoint union, the product in the bispan category."""
    out = Bispan(coproduct_map([b1.r, b2.r]), coproduct_map([b1.n, b2.n]), coproduct_map([b1.t, b2.t]))
    check_bispan(out, ctx)
    return out


def product_projections(X1: GSet, X2: GSet):
    """Projections X1 + X2 => X1 and X1 + X2 => X2."""
    _, (j1, j2) = coproduct([X1, X2])
    return pure_restriction(j1), pure_restriction(j2)


def relabel_bispan(b: Bispan, alpha: GMap, beta: GMap) -> Bispan:
    """Transport b along bijections alpha: A -> A', beta: B -> B'."""
    ai, bi = alpha.inverse(), beta.inverse()
    return Bispan(ai.then(b.r), ai.then(b.n).then(beta), bi.then(b.t))
