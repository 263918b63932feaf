import json
import random

import pytest

from binomap import (EnumerationOptions, NotBinomialError, adjacent_minors, build_incidence,
                     contains, decompose, lattice_relations, parse_system, verify_map)
from binomap.toric import MonomialMap, toric_maps

from conftest import random_binomial_system

PURE = EnumerationOptions(pure_dim=True)


def monomial(x, w):
    v = 1 + 0j
    for xk, e in zip(x, w):
        if e:
            v *= xk ** e
    return v


def maps_for(sys, *selections):
    M = build_incidence(sys)
    return [toric_maps(sys, M, S)[0] for S in selections]


def ix(sys, *names):
    return tuple(sorted(sys.vars.index(n) for n in names))


def free_map(names_, zero=()):
    n = len(names_)
    nonzero = [k for k in range(n) if k not in zero]
    exps = tuple(tuple(int(k == j) for k in range(n)) for j in nonzero)
    coeffs = tuple(0j if k in zero else 1 + 0j for k in range(n))
    return MonomialMap(tuple(names_), tuple(zero), tuple(nonzero), coeffs, exps)


def test_relations_of_free_map_are_empty():
    assert lattice_relations(free_map(["x", "y", "z"])) == []
    assert lattice_relations(free_map(["x"])) == []


def test_relations_of_toric_component(minors23):
    (toric,) = maps_for(minors23, ())
    W = lattice_relations(toric)
    assert len(W) == 2
    rng = random.Random(0)
    for w in W:
        c = monomial(toric.coeffs, w)
        for _ in range(5):
            t = [complex(rng.uniform(0.5, 2), rng.uniform(-1, 1)) for _ in range(toric.d)]
            assert monomial(toric.evaluate(t), w) == pytest.approx(c)


def test_contains_reflexive(minors23):
    for mmap in maps_for(minors23, (), ix(minors23, "x12", "x22")):
        assert contains(mmap, mmap)


def test_components_of_2x3_not_nested(minors23):
    toric, cover = maps_for(minors23, (), ix(minors23, "x12", "x22"))
    assert not contains(toric, cover)
    assert not contains(cover, toric)


def test_free_map_contains_anything_with_more_zeros():
    outer = free_map(["a", "b", "c", "d"])
    s = parse_system("a*b - c*d;")
    for mmap in decompose(s, verify=False).maps:
        assert contains(outer, mmap)
    assert contains(outer, free_map(["a", "b", "c", "d"], zero=(0, 2)))


def test_hyperbola_does_not_contain_origin():
    s = parse_system("x*y - 1;")
    (hyperbola,) = maps_for(s, ())
    origin = MonomialMap(("x", "y"), (0, 1), (), (0j, 0j), ())
    assert not contains(hyperbola, origin)
    line = parse_system("x - y;")
    (diagonal,) = maps_for(line, ())
    assert contains(diagonal, origin)


def test_contains_requires_same_variables():
    with pytest.raises(ValueError):
        contains(free_map(["x"]), free_map(["y"]))


def test_decompose_2x3():
    d = decompose(adjacent_minors(2, 3), PURE)
    assert len(d) == 2
    assert [m.d for m in d.maps] == [4, 4]
    assert [m.zero_set for m in d.maps] == [(), (1, 4)]
    assert d.stats.unverified == 0


def test_decompose_without_restriction_filters_to_components():
    for n, count in [(3, 2), (4, 3), (5, 5)]:
        d = decompose(adjacent_minors(2, n))
        assert len(d) == count
        assert {m.d for m in d.maps} == {n + 1}
        assert d.stats.contained > 0


def test_decompose_rejects_non_binomial():
    with pytest.raises(NotBinomialError):
        decompose(parse_system("x*y;"))


def test_decompose_everything_vanishes():
    s = parse_system("x*y - x*z;")
    d = decompose(s)
    # x = 0 (y, z free) and the plane y = z
    assert sorted((m.zero_set, m.d) for m in d.maps) == [((), 2), ((0,), 2)]


def test_decompose_roots_of_unity_branches():
    d = decompose(parse_system("x^2 - y^2;"))
    assert len(d) == 2
    assert d.maps[0].coeffs[0] == pytest.approx(1)
    assert d.maps[1].coeffs[0] == pytest.approx(-1)


def test_decompose_counts_inconsistent():
    d = decompose(parse_system("x - 2*y; x - 3*y;"))
    # the torus part is empty; only the origin survives
    assert d.stats.inconsistent == 1
    assert len(d) == 1 and d.maps[0].d == 0


def test_no_contained_pairs_on_random_systems():
    rng = random.Random(21)
    for _ in range(40):
        s = random_binomial_system(rng, max_eqs=3, max_vars=5, max_exp=2)
        d = decompose(s, branch_limit=1024)
        for a in d.maps:
            assert verify_map(s, a)
            for b in d.maps:
                if a is not b:
                    assert not contains(a, b)


def test_json_schema():
    d = decompose(adjacent_minors(2, 4), PURE)
    doc = json.loads(json.dumps(d.to_dict()))
    assert doc["count"] == 3 == len(doc["maps"])
    assert set(doc["stats"]) >= {"selections", "inconsistent"}
    for m in doc["maps"]:
        assert set(m) == {"zero", "free", "dim", "coeff", "exponents"}
        assert list(m["coeff"]) == list(adjacent_minors(2, 4).vars.names)
        assert all(len(v) == m["dim"] for v in m["exponents"].values())
        assert all(len(c) == 2 for c in m["coeff"].values())


def test_provenance_and_order():
    d = decompose(adjacent_minors(2, 5), PURE)
    assert len(d.provenance) == len(d.maps)
    for (S, branch), m in zip(d.provenance, d.maps):
        assert S == m.zero_set and branch == 0
    keys = [(len(m.zero_set), m.zero_set) for m in d.maps]
    assert keys == sorted(keys)


def test_threads_do_not_change_result():
    s = adjacent_minors(2, 7)
    a = json.dumps(decompose(s, PURE, threads=1).to_dict())
    b = json.dumps(decompose(s, PURE, threads=3).to_dict())
    assert a == b
