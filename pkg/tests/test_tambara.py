import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from bispankit.errors import CarrierMismatch, InvalidModel
from bispankit.groups import all_subgroups, by_name
from bispankit.io import Workspace, finite_model_from_json
from bispankit.tambara import (
    BurnsideElement,
    BurnsideModel,
    BurnsideMonoids,
    FiniteModel,
    LatticeMonoid,
    grouplike_check,
    level_basis,
    mark,
    verify_model,
)
from bispankit.tambara.burnside import from_marks, norm_by_marks
from bispankit.tambara.models import constant_levels
from bispankit.tambara.verify import grouplike_finite


def _marks_fn(G, x):
    """x's marks as a function of a raw subgroup (frozenset)."""
    return lambda S: oracles.marks(G, x.base, x.coeffs, oracles._sub(G, S))


def _elements(name):
    G = by_name(name)
    out = []
    for H in all_subgroups(G):
        for K in all_subgroups(G):
            if K <= H:
                out.append((G, K, H))
    return out


PAIRS = [p for n in ["C2", "C3", "C4", "C2xC2", "S3"] for p in _elements(n)]


def test_c2_basics():
    G = by_name("C2")
    e, top = all_subgroups(G)
    M = BurnsideModel(G)
    one_e = BurnsideElement.one(e)
    free = M.tr(e, top, one_e)
    assert free == BurnsideElement.basis(top, e)
    assert M.res(e, top, free) == BurnsideElement(e, {e: 2})
    # N(-1) = [C2/e] - 1
    assert M.nm(e, top, -one_e) == BurnsideElement(top, {e: 1, top: -1})
    # N(2) = 2 + [C2/e]: four sections, two fixed
    assert M.nm(e, top, one_e * 2) == BurnsideElement(top, {top: 2, e: 1})
    assert M.nm(e, top, BurnsideElement.zero(e)) == BurnsideElement.zero(top)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(PAIRS), st.lists(st.integers(-2, 3), min_size=6, max_size=6))
def test_norm_matches_marks_oracle(case, cs):
    G, K, H = case
    M = BurnsideModel(G)
    x = BurnsideElement.from_vector(K, cs[: len(level_basis(K))])
    y = M.nm(K, H, x)
    xm = _marks_fn(G, x)
    for J in level_basis(H):
        assert mark(y, J) == oracles.norm_marks(G, K, H, xm, J)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(PAIRS), st.lists(st.integers(-3, 3), min_size=6, max_size=6))
def test_transfer_and_restriction_match_marks(case, cs):
    G, K, H = case
    M = BurnsideModel(G)
    x = BurnsideElement.from_vector(K, cs[: len(level_basis(K))])
    y = M.tr(K, H, x)
    xm = _marks_fn(G, x)
    for J in level_basis(H):
        assert mark(y, J) == oracles.transfer_marks(G, K, H, xm, J)
    z = BurnsideElement.from_vector(H, cs[: len(level_basis(H))])
    for J in level_basis(K):
        assert mark(M.res(K, H, z), J) == mark(z, J)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PAIRS), st.lists(st.integers(0, 2), min_size=6, max_size=6))
def test_norm_by_marks_agrees_with_sets(case, cs):
    G, K, H = case
    x = BurnsideElement.from_vector(K, cs[: len(level_basis(K))])
    assert norm_by_marks(K, H, x) == BurnsideModel(G).nm_set(K, H, x)


def test_from_marks_round_trip():
    G = by_name("S3")
    H = G.whole
    x = BurnsideElement.from_vector(H, [3, -1, 2, 5])
    assert from_marks(H, {J: mark(x, J) for J in level_basis(H)}) == x
    with pytest.raises(CarrierMismatch):
        from_marks(H, {J: 1 if J.order == 1 else 0 for J in level_basis(H)})


def test_tables_agree_with_model():
    G = by_name("S3")
    M = BurnsideModel(G)
    T = M.to_tables()
    rng = random.Random(1)
    subs = all_subgroups(G)
    for K in subs:
        for H in subs:
            if not K <= H:
                continue
            for x in M.samples(K, rng)[:4]:
                v = tuple(x.vector())
                assert list(T.tr(K, H, v)) == M.tr(K, H, x).vector()
                assert list(T.nm(K, H, v)) == M.nm(K, H, x).vector()


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "S3", "C2xC2", "D4", "Q8"])
def test_burnside_is_lawful(name):
    r = verify_model(BurnsideModel(by_name(name)), seed=3, sample_limit=3)
    assert r.ok, [str(v) for v in r.violations[:3]]
    assert set(n for n, _ in r.laws().values()) and all(b == 0 for _, b in r.laws().values())


def _z2_fixed_points(G, broken=False):
    """Fixed points of F2 with trivial action: res = id, tr = index, nm = power."""
    lv = constant_levels(G, [0, 1], [[0, 1], [1, 0]], 0, mul=[[0, 0], [0, 1]], one=1)
    res, tr, nm = {}, {}, {}
    for K in all_subgroups(G):
        for H in all_subgroups(G):
            if K <= H:
                i = H.order // K.order
                res[(K, H)] = [0, 1]
                tr[(K, H)] = [0, i % 2]
                nm[(K, H)] = [0, 1]
    if broken:
        e, top = all_subgroups(G)[0], G.whole
        tr[(e, top)] = [0, 1]
    return FiniteModel(G, lv, res, tr, nm)


def test_finite_model_laws():
    G = by_name("C2")
    assert verify_model(_z2_fixed_points(G)).ok
    r = verify_model(_z2_fixed_points(G, broken=True), first_only=True)
    assert not r.ok and r.violations[0].law
    assert str(r.violations[0])
    assert all(grouplike_finite(_z2_fixed_points(G)).values())


def test_finite_model_validation():
    G = by_name("C2")
    lv = constant_levels(G, [0], [[0]], 0)
    with pytest.raises(InvalidModel):
        FiniteModel(G, lv, {}, {})
    lv = constant_levels(G, [0, 1], [[0, 1]], 0)
    with pytest.raises(InvalidModel):
        FiniteModel(G, lv, {}, {})


def test_finite_model_from_json():
    data = {
        "group": "C2",
        "name": "f2",
        "levels": {"*": {"elements": [0, 1], "add": [[0, 1], [1, 0]], "zero": 0, "mul": [[0, 0], [0, 1]], "one": 1}},
        "res": {"1,0": [0, 1]},
        "tr": {"0,1": [0, 0]},
        "nm": {"0,1": [0, 1]},
    }
    M = finite_model_from_json(data, Workspace())
    assert M.label == "f2"
    assert verify_model(M).ok
    data["tr"]["0,1"] = [0, 1]
    assert not verify_model(finite_model_from_json(data, Workspace())).ok


def test_lattice_monoid():
    ok, lam = LatticeMonoid([[1, 0], [0, 1], [-1, -1]]).is_group()
    assert ok and all(l >= 1 for l in lam)
    assert not LatticeMonoid([[1, 0], [0, 1], [-1, 0]]).is_group()[0]
    assert LatticeMonoid([]).is_group()[0]
    G = by_name("C3")
    assert all(grouplike_check(BurnsideMonoids(G)).values())
    assert not any(grouplike_check(BurnsideMonoids(G, completed=False)).values())
