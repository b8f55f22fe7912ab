"""Law checking for models and the grouplike test."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ..bispans import Bispan, pure_norm, pure_transfer
from ..groups import all_subgroups, double_coset_reps, subgroup_name
from ..gsets import coset_map, decompose, distributivity_diagram, fold, orbit
from .words import eval_bispan


@dataclass
class Violation:
    law: str
    witness: tuple
    detail: str = ""

    def __str__(self):
        w = ", ".join(subgroup_name(x) if hasattr(x, "members") else str(x) for x in self.witness)
        return "%s at (%s)%s" % (self.law, w, (": " + self.detail) if self.detail else "")


@dataclass
class VerifyReport:
    model: str
    checked: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.violations

    def laws(self):
        """law -> (instances checked, violations)."""
        bad = {}
        for v in self.violations:
            bad[v.law] = bad.get(v.law, 0) + 1
        return {k: (n, bad.get(k, 0)) for k, n in self.checked.items()}


class _Stop(Exception):
    pass


class _Checker:
    def __init__(self, model, report, first_only):
        self.m = model
        self.report = report
        self.first_only = first_only

    def check(self, law, H, lhs, rhs, witness, detail=""):
        self.report.checked[law] = self.report.checked.get(law, 0) + 1
        if not self.m.eq(H, lhs, rhs):
            self.report.violations.append(
                Violation(law, witness, detail or "%s != %s" % (self.m.show(H, lhs), self.m.show(H, rhs)))
            )
            if self.first_only:
                raise _Stop


def verify_model(model, seed=0, first_only=False, laws=None, sample_limit=None) -> VerifyReport:
    """Check the Mackey/Tambara laws on sampled elements.

    ``laws`` restricts to a subset of law groups: ``functor``, ``conj``,
    ``mackey``, ``ring``, ``frobenius``, ``norm``, ``distributivity``.
    """
    G = model.group
    subs = all_subgroups(G)
    rng = random.Random(seed)
    samples = {H: model.samples(H, rng) for H in subs}
    if sample_limit:
        samples = {H: s[:sample_limit] for H, s in samples.items()}
    report = VerifyReport(getattr(model, "label", "model"))
    c = _Checker(model, report, first_only)
    want = set(laws or ["functor", "conj", "mackey", "ring", "frobenius", "norm", "distributivity"])
    m = model
    ring = getattr(m, "has_mul", True)
    norms = getattr(m, "has_norms", True) and ring
    pairs = [(K, H) for H in subs for K in subs if K <= H]
    triples = [(L, K, H) for (K, H) in pairs for L in subs if L <= K]
    try:
        if "functor" in want:
            for H in subs:
                for x in samples[H]:
                    c.check("res identity", H, m.res(H, H, x), x, (H,))
                    c.check("tr identity", H, m.tr(H, H, x), x, (H,))
                    if norms:
                        c.check("nm identity", H, m.nm(H, H, x), x, (H,))
            for L, K, H in triples:
                for x in samples[H]:
                    c.check("res functorial", L, m.res(L, K, m.res(K, H, x)), m.res(L, H, x), (L, K, H))
                for x in samples[L]:
                    c.check("tr functorial", H, m.tr(K, H, m.tr(L, K, x)), m.tr(L, H, x), (L, K, H))
                    if norms:
                        c.check("nm functorial", H, m.nm(K, H, m.nm(L, K, x)), m.nm(L, H, x), (L, K, H))
        if "conj" in want:
            for H in subs:
                for x in samples[H]:
                    for h in sorted(H.members):
                        c.check("inner conjugation", H, m.conj(h, H, x), x, (H, h))
                for x in samples[H][:2]:
                    for g, k in itertools.product(G, repeat=2):
                        lhs = m.conj(g, H.conjugate(k), m.conj(k, H, x))
                        c.check("conj action", H.conjugate(G.mul(g, k)), lhs, m.conj(G.mul(g, k), H, x), (H, g, k))
            for K, H in pairs:
                for g in G:
                    gK, gH = K.conjugate(g), H.conjugate(g)
                    for x in samples[H]:
                        c.check("res equivariant", gK, m.conj(g, K, m.res(K, H, x)), m.res(gK, gH, m.conj(g, H, x)), (K, H, g))
                    for x in samples[K]:
                        c.check("tr equivariant", gH, m.conj(g, H, m.tr(K, H, x)), m.tr(gK, gH, m.conj(g, K, x)), (K, H, g))
                        if norms:
                            c.check("nm equivariant", gH, m.conj(g, H, m.nm(K, H, x)), m.nm(gK, gH, m.conj(g, K, x)), (K, H, g))
        if "mackey" in want or "norm" in want:
            for K, H in pairs:
                for L in subs:
                    if not L <= H:
                        continue
                    reps = double_coset_reps(L, H, K)
                    for x in samples[K]:
                        conj_parts = []
                        for g in reps:
                            Kg = K.conjugate(g)
                            LK = L.intersect(Kg)
                            conj_parts.append((LK, m.res(LK, Kg, m.conj(g, K, x))))
                        if "mackey" in want:
                            lhs = m.res(L, H, m.tr(K, H, x))
                            rhs = m.sum(L, [m.tr(LK, L, y) for LK, y in conj_parts])
                            c.check("res-tr double coset", L, lhs, rhs, (L, K, H))
                        if "norm" in want and norms:
                            lhs = m.res(L, H, m.nm(K, H, x))
                            rhs = m.product(L, [m.nm(LK, L, y) for LK, y in conj_parts])
                            c.check("res-nm double coset", L, lhs, rhs, (L, K, H))
        if "ring" in want:
            for H in subs:
                xs = samples[H]
                z = m.zero(H)
                for x in xs:
                    c.check("additive unit", H, m.add(H, x, z), x, (H,))
                for x, y in itertools.product(xs, repeat=2):
                    c.check("additive commutativity", H, m.add(H, x, y), m.add(H, y, x), (H,))
                small = xs[:4]
                for x, y, w in itertools.product(small, repeat=3):
                    c.check("additive associativity", H, m.add(H, m.add(H, x, y), w), m.add(H, x, m.add(H, y, w)), (H,))
                if ring:
                    o = m.one(H)
                    for x in xs:
                        c.check("multiplicative unit", H, m.mul(H, x, o), x, (H,))
                    for x, y in itertools.product(xs, repeat=2):
                        c.check("multiplicative commutativity", H, m.mul(H, x, y), m.mul(H, y, x), (H,))
                    for x, y, w in itertools.product(small, repeat=3):
                        c.check("multiplicative associativity", H, m.mul(H, m.mul(H, x, y), w), m.mul(H, x, m.mul(H, y, w)), (H,))
                        c.check("distributive", H, m.mul(H, x, m.add(H, y, w)), m.add(H, m.mul(H, x, y), m.mul(H, x, w)), (H,))
            for K, H in pairs:
                for x, y in itertools.product(samples[H][:4], repeat=2):
                    c.check("res additive", K, m.res(K, H, m.add(H, x, y)), m.add(K, m.res(K, H, x), m.res(K, H, y)), (K, H))
                    if ring:
                        c.check("res multiplicative", K, m.res(K, H, m.mul(H, x, y)), m.mul(K, m.res(K, H, x), m.res(K, H, y)), (K, H))
                for x, y in itertools.product(samples[K][:4], repeat=2):
                    c.check("tr additive", H, m.tr(K, H, m.add(K, x, y)), m.add(H, m.tr(K, H, x), m.tr(K, H, y)), (K, H))
                    if norms:
                        c.check("nm multiplicative", H, m.nm(K, H, m.mul(K, x, y)), m.mul(H, m.nm(K, H, x), m.nm(K, H, y)), (K, H))
                if ring:
                    c.check("res unit", K, m.res(K, H, m.one(H)), m.one(K), (K, H))
                if norms:
                    c.check("nm unit", H, m.nm(K, H, m.one(K)), m.one(H), (K, H))
        if "frobenius" in want and ring:
            for K, H in pairs:
                for x in samples[K][:5]:
                    for y in samples[H][:5]:
                        lhs = m.tr(K, H, m.mul(K, x, m.res(K, H, y)))
                        c.check("frobenius", H, lhs, m.mul(H, m.tr(K, H, x), y), (K, H))
        if "distributivity" in want and norms:
            _check_distributivity(m, c, pairs, samples)
    except _Stop:
        pass
    return report


def _check_distributivity(m, c, pairs, samples):
    """N_m T_a == T_b N_m' R_e, both sides evaluated through words.

    a ranges over the fold G/K + G/K -> G/K and orbit maps G/L -> G/K,
    m over G/K -> G/H.
    """
    G = m.group
    subs = all_subgroups(G)
    for K, H in pairs:
        if K == H:
            continue
        mm = coset_map(K, H)
        X = orbit(G, K)
        cases = [("fold", fold(X))] + [("orbit", coset_map(L, K)) for L in subs if L <= K and L != K]
        for name, a in cases:
            D = distributivity_diagram(a, mm)
            rhs_b = Bispan(D.e, D.m_prime, D.b)
            src = a.source
            levels = [o.stabilizer for o in decompose(src).orbits]
            pools = [samples[L][:3] for L in levels]
            for vals in itertools.product(*pools):
                left = eval_bispan(m, pure_transfer(a), vals)
                lhs = eval_bispan(m, pure_norm(mm), left)
                rhs = eval_bispan(m, rhs_b, vals)
                c.check("tambara distributivity (%s)" % name, H, lhs[0], rhs[0], (K, H) + tuple(levels[:1]))


# grouplike -------------------------------------------------------------------


def grouplike_finite(model) -> dict:
    """Level -> whether its finite additive monoid is a group."""
    out = {}
    for H in all_subgroups(model.group):
        n = model.size(H)
        z = model.zero(H)
        out[H] = all(any(model.add(H, x, y) == z for y in range(n)) for x in range(n))
    return out


@dataclass
class LatticeMonoid:
    """The submonoid of Z^k generated by finitely many vectors."""

    generators: list

    def is_group(self):
        """A monoid generated by g_i is a group iff sum lambda_i g_i = 0 has
        a solution with every lambda_i >= 1 (then -g_i is a nonnegative
        combination).  Decided by a linear program; a feasible answer is
        turned into an exact rational certificate and checked.
        """
        from scipy.optimize import linprog

        gens = np.asarray(self.generators, dtype=float)
        if gens.size == 0:
            return True, []
        n = gens.shape[0]
        res = linprog(np.zeros(n), A_eq=gens.T, b_eq=np.zeros(gens.shape[1]), bounds=[(1, None)] * n, method="highs")
        if res.status != 0:
            return False, None
        lam = [Fraction(v).limit_denominator(10**6) for v in res.x]
        total = [sum(l * int(g[j]) for l, g in zip(lam, self.generators)) for j in range(gens.shape[1])]
        if any(t != 0 for t in total) or any(l < 1 for l in lam):
            return False, None
        return True, lam


def grouplike_check(model) -> dict:
    """Per level, is the additive monoid a group?

    Finite models are checked exhaustively.  A model given by lattice
    monoids (``model.monoid(H)`` returning a LatticeMonoid) uses the exact
    certificate test.
    """
    if hasattr(model, "monoid"):
        return {H: model.monoid(H).is_group()[0] for H in all_subgroups(model.group)}
    return grouplike_finite(model)


class BurnsideMonoids:
    """Additive monoids of the Burnside construction at every level.

    With ``completed`` the levels are the Burnside rings (generated by the
    classes and their negatives); otherwise the semirings of isomorphism
    classes of finite H-sets.
    """

    def __init__(self, group, completed=True):
        self.group = group
        self.completed = completed

    def monoid(self, H):
        from .burnside import level_basis

        k = len(level_basis(H))
        eye = np.eye(k, dtype=int).tolist()
        gens = eye + ([[-v for v in row] for row in eye] if self.completed else [])
        return LatticeMonoid(gens)
