"""The wreath homomorphism H -> Sigma_r wr K and twisted powers.

For K <= H with coset representatives h_1..h_r of H/K, each h in H gives a
permutation sigma and elements l_i of K with h h_i = h_sigma(i) l_i.  The
twisted power of a K-set X is X^r with h acting by
(h.x)_sigma(i) = l_i . x_i.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BadRepresentatives, NoIsoFound, NotASubgroup
from .groups import FiniteGroup, Subgroup
from .gsets import GMap, GSet, coset_data, coset_map, dependent_product, iso, orbit, _guard


@dataclass(frozen=True)
class WreathHom:
    K: Subgroup
    H: Subgroup
    reps: tuple
    sigma: dict  # h -> tuple, sigma[h][i] = sigma(i)
    ell: dict  # h -> tuple of K elements (parent ids)

    @property
    def r(self):
        return len(self.reps)

    @property
    def group(self) -> FiniteGroup:
        return self.H.group

    def image(self, h):
        return self.sigma[h], self.ell[h]

    def compose(self, a, b):
        """Product in Sigma_r wr K of images a = (s', l') and b = (s, l)."""
        (s2, l2), (s1, l1) = a, b
        G = self.group
        return (
            tuple(s2[s1[i]] for i in range(self.r)),
            tuple(G.table[l2[s1[i]]][l1[i]] for i in range(self.r)),
        )

    def homomorphism_failure(self):
        """First pair (h', h) with iota(h'h) != iota(h') iota(h), else None."""
        G = self.group
        for a in sorted(self.H.members):
            for b in sorted(self.H.members):
                if self.image(G.table[a][b]) != self.compose(self.image(a), self.image(b)):
                    return (a, b)
        return None

    def rows(self):
        """Printable table: element, sigma (1-based cycle-free list), ell."""
        return [(h, list(self.sigma[h]), list(self.ell[h])) for h in sorted(self.H.members)]


def default_reps(K: Subgroup, H: Subgroup) -> tuple:
    """Least element of each coset hK inside H, ordered by that element."""
    return tuple(sorted(min(c) for c in K.left_cosets(within=H)))


def wreath_hom(G: FiniteGroup, K: Subgroup, H: Subgroup, reps=None) -> WreathHom:
    G.check_subgroup(K)
    G.check_subgroup(H)
    if not K <= H:
        raise NotASubgroup("wreath homomorphism needs K <= H")
    if reps is None:
        reps = default_reps(K, H)
    reps = tuple(int(h) for h in reps)
    t = G.table
    where = {}
    for i, h in enumerate(reps):
        if h not in H.members:
            raise BadRepresentatives("representative %d is not in H" % h)
        for k in K.members:
            g = t[h][k]
            if g in where:
                raise BadRepresentatives("representatives %d and %d lie in the same coset" % (reps[where[g]], h))
            where[g] = i
    if len(where) != len(H):
        raise BadRepresentatives("representatives miss some coset of H/K")
    inv = G.inv
    sigma, ell = {}, {}
    for h in sorted(H.members):
        s, l = [], []
        for hi in reps:
            g = t[h][hi]
            j = where[g]
            s.append(j)
            l.append(t[inv[reps[j]]][g])
        sigma[h] = tuple(s)
        ell[h] = tuple(l)
    w = WreathHom(K, H, reps, sigma, ell)
    bad = w.homomorphism_failure()
    if bad is not None:
        raise BadRepresentatives("wreath assignment is not a homomorphism at %r" % (bad,))
    return w


def _k_index(K: Subgroup):
    Kg, emb = K.as_group()
    return Kg, {g: i for i, g in enumerate(emb)}


def _power_points(n, r):
    _guard(n**r)
    if r == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.meshgrid(*[np.arange(n)] * r, indexing="ij")
    return np.stack([g.reshape(-1) for g in grids], axis=1)


def twisted_power(X: GSet, w: WreathHom) -> GSet:
    """X^r as an H-set (over ``H.as_group()``); X is a K-set over ``K.as_group()``."""
    Kg, kpos = _k_index(w.K)
    if X.group is not Kg:
        raise NotASubgroup("X must be a set over the subgroup K")
    Hg, emb = w.H.as_group()
    n, r = X.size, w.r
    pts = _power_points(n, r)
    weights = n ** np.arange(r - 1, -1, -1, dtype=np.int64) if r else np.zeros(0, dtype=np.int64)
    action = np.empty((Hg.order, len(pts)), dtype=np.int64)
    for hi, h in enumerate(emb):
        s, l = w.sigma[h], w.ell[h]
        new = np.empty_like(pts)
        for i in range(r):
            new[:, s[i]] = X.action[kpos[l[i]]][pts[:, i]]
        action[hi] = new @ weights if r else 0
    return GSet(Hg, action, check=False)


def twisted_smash_power(X: GSet, base: int, w: WreathHom) -> GSet:
    """The pointed variant: tuples touching ``base`` collapse to one point.

    Point 0 is the basepoint; the rest are tuples avoiding ``base`` in
    lexicographic order.
    """
    Kg, kpos = _k_index(w.K)
    if any(X.action[k, base] != base for k in range(Kg.order)):
        raise NotASubgroup("basepoint is not fixed by K")
    full = twisted_power(X, w)
    pts = _power_points(X.size, w.r)
    keep = np.flatnonzero((pts != base).all(axis=1)) if w.r else np.arange(1)
    newidx = np.zeros(full.size, dtype=np.int64)
    newidx[keep] = np.arange(1, len(keep) + 1)
    action = newidx[full.action[:, keep]]
    action = np.concatenate([np.zeros((full.group.order, 1), dtype=np.int64), action], axis=1)
    return GSet(full.group, action, check=False)


def associated_bundle(G: FiniteGroup, K: Subgroup, X: GSet):
    """G x_K X over G/K; point c*|X| + x stands for [g_c, x] with g_c the
    least element of coset c.  Returns the projection to G/K."""
    Kg, kpos = _k_index(K)
    _, where, reps = coset_data(K)
    n = X.size
    nc = len(reps)
    t, inv = G.table, G.inv
    action = np.empty((G.order, nc * n), dtype=np.int64)
    for g in G:
        for c, gc in enumerate(reps):
            h = t[g][gc]
            c2 = int(where[h])
            k = t[inv[reps[c2]]][h]
            action[g, c * n : (c + 1) * n] = c2 * n + X.action[kpos[k]]
    B = GSet(G, action, check=False)
    return GMap(B, orbit(G, K), np.repeat(np.arange(nc), n), check=False)


@dataclass(frozen=True)
class NormComparison:
    power: GSet
    fiber: GSet
    witness: GMap  # fiber -> power
    canonical: bool


def norm_vs_dependent_product(G: FiniteGroup, K: Subgroup, H: Subgroup, X: GSet, w: WreathHom | None = None):
    """Compare the twisted power with the fibre of the dependent product.

    Take the associated bundle G x_K X -> G/K, push it along G/K -> G/H with
    the dependent product, and read the fibre over the base coset as an
    H-set.  A section s with s(h_i K) = [h_i, x_i] is sent to (x_1..x_r).
    """
    w = w or wreath_hom(G, K, H)
    power = twisted_power(X, w)
    p = associated_bundle(G, K, X)
    m = coset_map(K, H)
    dp = dependent_product(m, p)
    over0 = dp.mstar.fiber(0)
    Hg, emb = H.as_group()
    pos = np.full(dp.obj.size, -1, dtype=np.int64)
    pos[over0] = np.arange(len(over0))
    fib = GSet(Hg, pos[dp.obj.action[list(emb)][:, over0]], check=False)
    # canonical bijection
    n = X.size
    _, where, greps = coset_data(K)
    Kg, kpos = _k_index(K)
    t, inv = G.table, G.inv
    mfib = m.fiber(0)
    slot = {int(where[h]): i for i, h in enumerate(w.reps)}
    weights = [n ** (w.r - 1 - i) for i in range(w.r)]
    fn = []
    for q in over0:
        sec = dp.sections[q]
        xs = [0] * w.r
        for c, val in zip(mfib, sec):
            i = slot[c]
            x = val - c * n
            k = t[inv[w.reps[i]]][greps[c]]
            xs[i] = int(X.action[kpos[k], x])
        fn.append(sum(a * b for a, b in zip(xs, weights)))
    phi = GMap(fib, power, fn, check=False)
    try:
        phi.validate()
        ok = phi.is_iso()
    except Exception:
        ok = False
    if ok:
        return NormComparison(power, fib, phi, True)
    alt = iso(fib, power)
    if alt is None:
        raise NoIsoFound("twisted power and dependent product fibre are not isomorphic")
    return NormComparison(power, fib, alt, False)


def trivial_kset(K: Subgroup, n: int) -> GSet:
    Kg, _ = K.as_group()
    return GSet.trivial(Kg, n)
