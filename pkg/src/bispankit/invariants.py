"""Self-checks over one group, used by ``bispankit verify-all``."""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass

from .bispans import (
    Bispan,
    SemiringContext,
    bispan_iso,
    compose_bispans,
    identity_bispan,
    pure_norm,
    pure_transfer,
)
from .errors import OutputTooLarge
from .groups import FiniteGroup, all_subgroups, double_coset_reps
from .gsets import coset_map, decompose, distributivity_diagram, pullback
from .spans import Span, SubcategoryDescriptor, add_spans, compose_spans, identity_span, span_iso, zero_span
from .tambara.burnside import apply_bispan
from .tambara.models import BurnsideModel
from .tambara.verify import BurnsideMonoids, grouplike_check, verify_model
from .tambara.words import eval_bispan
from .wreath import norm_vs_dependent_product, trivial_kset, wreath_hom


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    seconds: float
    detail: str = ""


def _timed(name, fn):
    t = time.perf_counter()
    try:
        cases, detail = fn()
        ok = not detail
    except Exception as e:  # a crash is a failure of the check, not of the run
        cases, detail, ok = 0, "%s: %s" % (type(e).__name__, e), False
    return CheckResult(name, ok, cases, time.perf_counter() - t, detail)


def check_subgroups(G):
    subs = all_subgroups(G)
    s = set(subs)
    n = 0
    for H in subs:
        for g in G:
            n += 1
            if H.conjugate(g) not in s:
                return n, "conjugate of %s missing" % H
    return n, ""


def check_double_cosets(G):
    subs = all_subgroups(G)
    n = 0
    for H in subs:
        for K in subs:
            for L in subs:
                if not (K <= H and L <= H):
                    continue
                n += 1
                pb = pullback(coset_map(K, H), coset_map(L, H))
                reps = double_coset_reps(K, H, L)
                got = decompose(pb.obj).multiplicity
                want = {}
                for g in reps:
                    M = G.class_rep(K.intersect(L.conjugate(g)))
                    want[M] = want.get(M, 0) + 1
                if got != want:
                    return n, "pullback over G/%s of G/%s and G/%s" % (H, K, L)
    return n, ""


def _orbit_spans(G, limit):
    subs = all_subgroups(G)
    out = []
    for H, K, L in itertools.product(subs, repeat=3):
        if K <= H and K <= L:
            out.append(Span(coset_map(K, H), coset_map(K, L)))
    return out[:limit]


def check_span_laws(G, rng):
    spans = _orbit_spans(G, 40)
    n = 0
    for s in spans:
        n += 1
        if not span_iso(compose_spans(identity_span(s.target), s), s):
            return n, "right unit"
        if not span_iso(add_spans(s, zero_span(s.source, s.target)), s):
            return n, "additive unit"
    for _ in range(30):
        a, b, c = rng.choice(spans), rng.choice(spans), rng.choice(spans)
        if a.target == b.source and b.target == c.source:
            n += 1
            if not span_iso(compose_spans(c, compose_spans(b, a)), compose_spans(compose_spans(c, b), a)):
                return n, "associativity"
    return n, ""


def _orbit_bispans(G):
    subs = all_subgroups(G)
    out = []
    for H, K, L, Z in itertools.product(subs, repeat=4):
        if K <= H and K <= L and L <= Z:
            out.append(Bispan(coset_map(K, H), coset_map(K, L), coset_map(L, Z)))
    return out


def check_bispan_laws(G, rng):
    ctx = SemiringContext.complete(G)
    bs = _orbit_bispans(G)
    n = 0
    for b in bs[:30]:
        n += 1
        if not bispan_iso(compose_bispans(identity_bispan(b.target), b, ctx), b):
            return n, "unit law"
    tries = 0
    while tries < 40:
        tries += 1
        a, b, c = rng.choice(bs), rng.choice(bs), rng.choice(bs)
        if a.target != b.source or b.target != c.source:
            continue
        n += 1
        try:
            l = compose_bispans(c, compose_bispans(b, a, ctx), ctx)
            r = compose_bispans(compose_bispans(c, b, ctx), a, ctx)
        except OutputTooLarge:
            continue
        if not bispan_iso(l, r):
            return n, "associativity"
    return n, ""


def check_distributivity(G, M):
    subs = all_subgroups(G)
    rng = random.Random(1)
    n = 0
    for K, H in ((K, H) for H in subs for K in subs if K <= H):
        m = coset_map(K, H)
        for L in subs:
            if not L <= K:
                continue
            a = coset_map(L, K)
            D = distributivity_diagram(a, m)
            rhs_b = Bispan(D.e, D.m_prime, D.b)
            for x in M.samples(L, rng)[:4]:
                n += 1
                lhs = eval_bispan(M, pure_norm(m), eval_bispan(M, pure_transfer(a), (x,)))
                if lhs != eval_bispan(M, rhs_b, (x,)):
                    return n, "distributivity for %s <= %s <= %s" % (L, K, H)
    return n, ""


def check_oracle(G, M):
    n = 0
    for b in _orbit_bispans(G):
        H = decompose(b.source).orbits[0].stabilizer
        for x in M.samples(H, random.Random(0)):
            if not x.is_nonnegative():
                continue
            try:
                want = apply_bispan(b, (x,))
            except OutputTooLarge:
                continue  # the set-level oracle is out of reach here
            n += 1
            if eval_bispan(M, b, (x,)) != want:
                return n, "word evaluation differs from set-level action"
    return n, ""


def check_model(M, seed):
    r = verify_model(M, seed=seed)
    n = sum(r.checked.values())
    return n, "" if r.ok else str(r.violations[0])


def check_indexing(G):
    r = SubcategoryDescriptor.all_maps(G).report()
    f = SubcategoryDescriptor.fold_maps(G).report()
    ok = r.is_extensive and f.is_extensive
    return 2, "" if ok else "complete or fold descriptor not extensive"


def check_wreath(G):
    subs = all_subgroups(G)
    n = 0
    for H in subs:
        for K in subs:
            if K <= H:
                n += 1
                w = wreath_hom(G, K, H)
                if 2**w.r <= 4096:
                    c = norm_vs_dependent_product(G, K, H, trivial_kset(K, 2), w)
                    if not c.canonical:
                        return n, "canonical bijection failed for %s <= %s" % (K, H)
    return n, ""


def check_grouplike(G):
    a = grouplike_check(BurnsideMonoids(G, completed=True))
    b = grouplike_check(BurnsideMonoids(G, completed=False))
    ok = all(a.values()) and not any(b.values())
    return len(a) + len(b), "" if ok else "grouplike gate"


def run_all(G: FiniteGroup, seed=0) -> list:
    rng = random.Random(seed)
    M = BurnsideModel(G)
    return [
        _timed("subgroup lattice conjugation-closed", lambda: check_subgroups(G)),
        _timed("double coset formula", lambda: check_double_cosets(G)),
        _timed("span category laws", lambda: check_span_laws(G, rng)),
        _timed("bispan category laws", lambda: check_bispan_laws(G, rng)),
        _timed("indexing system checker", lambda: check_indexing(G)),
        _timed("burnside model laws", lambda: check_model(M, seed)),
        _timed("distributivity relation", lambda: check_distributivity(G, M)),
        _timed("words agree with set-level action", lambda: check_oracle(G, M)),
        _timed("wreath homomorphism and twisted power", lambda: check_wreath(G)),
        _timed("grouplike gate", lambda: check_grouplike(G)),
    ]
