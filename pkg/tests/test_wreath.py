import pytest
from hypothesis import given, settings, strategies as st

from bispankit.errors import BadRepresentatives, NotASubgroup
from bispankit.groups import all_subgroups, by_name
from bispankit.gsets import GSet, decompose, gsets_up_to, iso
from bispankit.wreath import (
    default_reps,
    norm_vs_dependent_product,
    trivial_kset,
    twisted_power,
    twisted_smash_power,
    wreath_hom,
)


def _pairs(names):
    out = []
    for n in names:
        G = by_name(n)
        subs = all_subgroups(G)
        out += [(G, K, H) for K in subs for H in subs if K <= H]
    return out


PAIRS = _pairs(["C2", "C4", "C2xC2", "S3", "D4", "Q8"])


def test_equal_subgroups_give_rank_one():
    G = by_name("S3")
    for H in all_subgroups(G):
        w = wreath_hom(G, H, H)
        assert w.r == 1
        assert all(w.sigma[h] == (0,) and w.ell[h] == (h,) for h in H.members)


def test_c2_generator_swaps():
    G = by_name("C2")
    e, top = all_subgroups(G)
    w = wreath_hom(G, e, top)
    assert w.sigma[1] == (1, 0) and w.sigma[0] == (0, 1)


def test_s3_rotation_is_three_cycle():
    G = by_name("S3")
    twos = [H for H in all_subgroups(G) if H.order == 2]
    w = wreath_hom(G, twos[0], G.whole)
    cycles = [h for h in G if G.element_order(h) == 3]
    for h in cycles:
        s = w.sigma[h]
        assert all(s[i] != i for i in range(3))


def test_bad_representatives():
    G = by_name("S3")
    K = [H for H in all_subgroups(G) if H.order == 2][0]
    with pytest.raises(BadRepresentatives):
        wreath_hom(G, K, G.whole, reps=(0, 0, 1))
    with pytest.raises(BadRepresentatives):
        wreath_hom(G, K, G.whole, reps=(0,))
    C = [H for H in all_subgroups(G) if H.order == 3][0]
    with pytest.raises(BadRepresentatives):
        wreath_hom(G, G.trivial, C, reps=(0, 1, 2) if 3 not in C.members else (0, 1, 5))
    with pytest.raises(NotASubgroup):
        wreath_hom(G, G.whole, K)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PAIRS))
def test_homomorphism(case):
    G, K, H = case
    w = wreath_hom(G, K, H)
    assert w.homomorphism_failure() is None
    assert w.r * K.order == H.order
    assert w.reps == default_reps(K, H)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PAIRS), st.integers(0, 3), st.data())
def test_other_representatives_give_isomorphic_powers(case, n, data):
    G, K, H = case
    cosets = K.left_cosets(within=H)
    if len(cosets) ** max(n, 1) > 4000:
        return
    reps = tuple(data.draw(st.sampled_from(sorted(c))) for c in cosets)
    w1, w2 = wreath_hom(G, K, H), wreath_hom(G, K, H, reps=reps)
    X = trivial_kset(K, n)
    assert iso(twisted_power(X, w1), twisted_power(X, w2)) is not None


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PAIRS), st.data())
def test_power_matches_dependent_product(case, data):
    G, K, H = case
    Kg, _ = K.as_group()
    objs = [X for X in gsets_up_to(Kg, 3) if X.size ** (H.order // K.order) <= 2000]
    X = data.draw(st.sampled_from(objs))
    c = norm_vs_dependent_product(G, K, H, X)
    assert c.canonical
    assert c.power.size == X.size ** (H.order // K.order)


def test_empty_and_small_powers():
    G = by_name("C2")
    e, top = all_subgroups(G)
    w = wreath_hom(G, e, top)
    assert twisted_power(trivial_kset(e, 0), w).size == 0
    P = twisted_power(trivial_kset(e, 3), w)
    assert P.size == 9
    Hg = P.group
    assert len(P.fixed_points(Hg.whole)) == 3
    S = twisted_smash_power(trivial_kset(e, 3), 0, w)
    # basepoint plus pairs avoiding 0
    assert S.size == 1 + 4
    # (1,1) and (2,2) are fixed, (1,2) and (2,1) swap
    assert len(decompose(S).orbits) == 1 + 2 + 1


def test_s3_power_of_two_points():
    G = by_name("S3")
    K = [H for H in all_subgroups(G) if H.order == 2][0]
    Kg, _ = K.as_group()
    X = GSet(Kg, [[0, 1], [1, 0]])
    c = norm_vs_dependent_product(G, K, G.whole, X)
    assert c.power.size == 8
    assert c.canonical and c.witness.is_iso()
    with pytest.raises(NotASubgroup):
        twisted_smash_power(X, 0, wreath_hom(G, K, G.whole))
