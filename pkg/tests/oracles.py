"""Brute-force reference computations used by the tests.

Everything here works from raw multiplication tables and action arrays with
plain Python sets, so it shares no code paths with the library beyond the
group table itself.
"""

import itertools
from collections import Counter


def members(H):
    return frozenset(int(h) for h in H.members)


def mul(G, a, b):
    return G.table[a][b]


def inv(G, a):
    e = G.identity
    return next(b for b in range(G.order) if G.table[a][b] == e)


def conj_set(G, g, S):
    gi = inv(G, g)
    return frozenset(mul(G, mul(G, g, s), gi) for s in S)


def conjugate_in(G, A, B, within=None):
    """Is A = wBw^-1 for some w in ``within`` (default all of G)?"""
    pool = range(G.order) if within is None else sorted(within)
    return any(conj_set(G, w, B) == A for w in pool)


def orbits(G, action):
    """Orbits of a G-set given as action[g][x]; returns list of (points, stabilizer)."""
    n = len(action[0]) if len(action) else 0
    seen = set()
    out = []
    for x in range(n):
        if x in seen:
            continue
        pts = {int(action[g][x]) for g in range(G.order)}
        seen |= pts
        stab = frozenset(g for g in range(G.order) if action[g][x] == x)
        out.append((pts, stab))
    return out


def group_classes(G, stabs):
    """(stabilizer, count) pairs with stabilizers grouped up to G-conjugacy."""
    classes = []
    for stab in stabs:
        for i, (S, c) in enumerate(classes):
            if len(S) == len(stab) and conjugate_in(G, stab, S):
                classes[i] = (S, c + 1)
                break
        else:
            classes.append((stab, 1))
    return classes


def orbit_class_counts(G, action):
    return group_classes(G, [stab for _, stab in orbits(G, action)])


def same_class_counts(G, a, b):
    a = group_classes(G, [S for S, c in a for _ in range(c)])
    b = group_classes(G, [S for S, c in b for _ in range(c)])
    if sum(c for _, c in a) != sum(c for _, c in b):
        return False
    rest = list(b)
    for S, c in a:
        for i, (T, d) in enumerate(rest):
            if len(S) == len(T) and conjugate_in(G, S, T):
                if c != d:
                    return False
                rest.pop(i)
                break
        else:
            return False
    return not rest


def double_coset_prediction(G, K, H, L):
    """(stabilizer K n gLg^-1, 1) per double coset K g L inside H."""
    Ks, Hs, Ls = members(K), members(H), members(L)
    left = set()
    out = []
    for g in sorted(Hs):
        if g in left:
            continue
        dc = {mul(G, mul(G, k, g), l) for k in Ks for l in Ls}
        left |= dc
        out.append((Ks & conj_set(G, g, Ls), 1))
    return out


def cosets(G, K, H):
    """Left cosets hK inside H, each as a frozenset, ordered by least element."""
    Ks = members(K)
    seen = set()
    out = []
    for h in sorted(members(H)):
        if h in seen:
            continue
        c = frozenset(mul(G, h, k) for k in Ks)
        seen |= c
        out.append(c)
    return out


def mark_of_orbit(G, K, H, J):
    """|(H/K)^J| for J <= H."""
    Js = members(J)
    n = 0
    for c in cosets(G, K, H):
        h = min(c)
        # J fixes hK iff h^-1 J h <= K
        if conj_set(G, inv(G, h), Js) <= members(K):
            n += 1
    return n


def marks(G, H, element, J):
    """Mark at J of sum c_K [H/K]; element maps Subgroup -> coefficient."""
    return sum(c * mark_of_orbit(G, K, H, J) for K, c in element.items())


def norm_marks(G, K, H, x_marks, J):
    """Mark at J of N_K^H x, where x_marks(L) gives the mark of x at L <= K.

    One factor per J-orbit of H/K, namely the mark at K n h^-1 J h.
    """
    Js = members(J)
    cs = cosets(G, K, H)
    todo = set(range(len(cs)))
    where = {g: i for i, c in enumerate(cs) for g in c}
    out = 1
    while todo:
        i = min(todo)
        h = min(cs[i])
        todo -= {where[mul(G, j, h)] for j in Js}
        out *= x_marks(members(K) & conj_set(G, inv(G, h), Js))
    return out


def transfer_marks(G, L, M, y_marks, J):
    """Mark at J of tr_L^M y: sum over cosets mL fixed by J of the mark of y
    at m^-1 J m."""
    Js = members(J)
    total = 0
    for c in cosets(G, L, M):
        m = min(c)
        S = conj_set(G, inv(G, m), Js)
        if S <= members(L):
            total += y_marks(S)
    return total


def subgroups_of_set(G, S):
    """All subgroups of G contained in the set S (brute force closure)."""
    S = sorted(S)
    found = {frozenset([G.identity])}
    frontier = list(found)
    while frontier:
        new = []
        for A in frontier:
            for s in S:
                if s in A:
                    continue
                B = set(A) | {s}
                while True:
                    more = {mul(G, a, b) for a in B for b in B} - B
                    if not more:
                        break
                    B |= more
                B = frozenset(B)
                if B not in found and B <= set(S):
                    found.add(B)
                    new.append(B)
        frontier = new
    return found


def orbit_bispan_marks(G, H, K, L, Z, x_marks):
    """Marks (J -> int) of T_{L->Z} N_{K->L} R_{H->K} applied to x, over the
    subgroups J of Z."""
    def res_marks(S):
        return x_marks(S)

    def nm_marks(S):
        return norm_marks(G, K, L, res_marks, _sub(G, S))

    out = {}
    for J in subgroups_of_set(G, members(Z)):
        out[J] = transfer_marks(G, L, Z, nm_marks, _sub(G, J))
    return out


class _Sub:
    """Stand-in with a ``members`` attribute for raw frozensets."""

    def __init__(self, s):
        self.members = s


def _sub(G, S):
    return _Sub(frozenset(S))


def c2_norm_points(n):
    """Sections of the 2-point fibre of C2/e -> pt into n trivial points,
    with the swap acting; returns (total, fixed)."""
    secs = list(itertools.product(range(n), repeat=2))
    fixed = sum(1 for a, b in secs if a == b)
    return len(secs), fixed


def fibre_counts(fn):
    return Counter(int(v) for v in fn)
