import itertools
import random

import pytest

from binomap import (EnumerationOptions, EquationStatus, NotBinomialError, adjacent_minors,
                     build_incidence, classify, enumerate_consistent, enumerate_covers,
                     parse_system, vanishes)
from binomap.enumerate import SearchStats

from conftest import random_binomial_system

V, R, X = EquationStatus.VANISHED, EquationStatus.RESIDUAL, EquationStatus.MIXED


def named(sys, selections):
    return [tuple(sys.vars[k] for k in S) for S in selections]


def ix(sys, *names):
    return tuple(sorted(sys.vars.index(n) for n in names))


def all_subsets(cols):
    for r in range(len(cols) + 1):
        yield from itertools.combinations(cols, r)


def brute_consistent(sys, M, pure_dim):
    out = []
    for S in all_subsets(M.cols):
        st = classify(sys, M, S)
        if X in st:
            continue
        if pure_dim and len(S) != st.count(V):
            continue
        out.append(tuple(S))
    return sorted(out, key=lambda S: (len(S), S))


def minimal(sets):
    sets = [frozenset(s) for s in sets]
    return {s for s in sets if not any(t < s for t in sets)}


def test_classify(minors23):
    M = build_incidence(minors23)
    assert classify(minors23, M, ix(minors23, "x12", "x22")) == [V, V]
    assert classify(minors23, M, ()) == [R, R]
    assert classify(minors23, M, ix(minors23, "x11")) == [X, R]


def test_covers_hand_trace(minors23):
    M = build_incidence(minors23)
    got = named(minors23, enumerate_covers(M))
    assert got == [
        ("x11", "x12", "x13"),
        ("x11", "x12", "x22"),
        ("x11", "x12", "x13", "x21"),
        ("x11", "x12", "x21", "x22"),
        ("x11", "x13", "x21", "x23"),
        ("x11", "x21", "x22", "x23"),
        ("x12", "x22"),
        ("x12", "x21", "x22"),
        ("x21", "x22", "x23"),
    ]


def test_covers_max_size_two(minors23):
    M = build_incidence(minors23)
    assert named(minors23, enumerate_covers(M, EnumerationOptions(max_size=2))) == [("x12", "x22")]


def test_covers_single_equation():
    s = parse_system("x - y;")
    assert enumerate_covers(build_incidence(s)) == [(0, 1)]


def test_covers_constant_row_is_unsatisfiable():
    s = parse_system("x - 1;")
    assert enumerate_covers(build_incidence(s)) == []


def test_covers_pure_dim(minors23):
    M = build_incidence(minors23)
    got = enumerate_covers(M, EnumerationOptions(pure_dim=True))
    assert named(minors23, got) == [("x12", "x22")]


def test_covers_dedupe():
    s = parse_system("a*b - b*c; a*c - a*b^2;")
    M = build_incidence(s)
    raw = enumerate_covers(M, EnumerationOptions(dedupe=False))
    deduped = enumerate_covers(M, EnumerationOptions(dedupe=True))
    assert len(raw) > len(deduped) == len(set(raw))
    assert deduped == list(dict.fromkeys(raw))


def test_options_validate():
    with pytest.raises(ValueError):
        EnumerationOptions(max_size=-1)


def test_covers_against_brute_force():
    rng = random.Random(11)
    checked = 0
    while checked < 150:
        s = random_binomial_system(rng, max_vars=8)
        M = build_incidence(s)
        if len(M.cols) > 12:
            continue
        covers = enumerate_covers(M)
        for S in covers:
            assert vanishes(s, M, S)
        brute = [S for S in all_subsets(M.cols) if vanishes(s, M, S)]
        assert minimal(covers) == minimal(brute)
        checked += 1


def test_consistent_2x3_pure(minors23):
    M = build_incidence(minors23)
    got = enumerate_consistent(minors23, M, EnumerationOptions(pure_dim=True))
    assert got == brute_consistent(minors23, M, True)
    assert named(minors23, got) == [(), ("x12", "x22")]


def test_consistent_2x4_pure(minors24):
    M = build_incidence(minors24)
    got = enumerate_consistent(minors24, M, EnumerationOptions(pure_dim=True))
    assert got == brute_consistent(minors24, M, True)
    assert named(minors24, got) == [(), ("x12", "x22"), ("x13", "x23")]


@pytest.mark.parametrize("n", [3, 4, 5])
def test_consistent_unrestricted_matches_brute_force(n):
    s = adjacent_minors(2, n)
    M = build_incidence(s)
    assert enumerate_consistent(s, M) == brute_consistent(s, M, False)


@pytest.mark.parametrize("pure_dim", [False, True])
def test_consistent_random_against_brute_force(pure_dim):
    rng = random.Random(5 + pure_dim)
    for _ in range(150):
        s = random_binomial_system(rng, max_vars=8)
        M = build_incidence(s)
        got = enumerate_consistent(s, M, EnumerationOptions(pure_dim=pure_dim))
        assert got == brute_consistent(s, M, pure_dim)
        for S in got:
            st = classify(s, M, S)
            assert X not in st
            if pure_dim:
                assert len(S) == st.count(V)


def test_consistent_max_size():
    s = adjacent_minors(2, 4)
    M = build_incidence(s)
    got = enumerate_consistent(s, M, EnumerationOptions(max_size=2))
    assert got == [S for S in brute_consistent(s, M, False) if len(S) <= 2]


def test_consistent_rejects_non_binomial():
    s = parse_system("x*y - z + w;")
    with pytest.raises(NotBinomialError):
        enumerate_consistent(s, build_incidence(s))


def test_empty_selection_always_emitted_under_pure_dim():
    rng = random.Random(9)
    for _ in range(50):
        s = random_binomial_system(rng)
        got = enumerate_consistent(s, build_incidence(s), EnumerationOptions(pure_dim=True))
        assert got[0] == ()


FIBONACCI = [2, 3, 5, 8, 13, 21, 34, 55, 89, 144]


@pytest.mark.parametrize("n, count", list(zip(range(3, 13), FIBONACCI)))
def test_fibonacci_selection_counts(n, count):
    s = adjacent_minors(2, n)
    got = enumerate_consistent(s, build_incidence(s), EnumerationOptions(pure_dim=True))
    assert len(got) == count


@pytest.mark.parametrize("threads", [2, 4])
def test_parallel_enumeration_identical(threads):
    s = adjacent_minors(2, 9)
    M = build_incidence(s)
    opts = EnumerationOptions(pure_dim=True)
    st1, st2 = SearchStats(), SearchStats()
    seq = enumerate_consistent(s, M, opts, stats=st1)
    par = enumerate_consistent(s, M, opts, threads=threads, stats=st2)
    assert seq == par
    assert st1 == st2


def test_irredundant_selections_are_the_core():
    s = adjacent_minors(2, 4)
    M = build_incidence(s)
    full = enumerate_consistent(s, M)
    core = enumerate_consistent(s, M, include_redundant=False)
    assert set(core) <= set(full)
    # every full selection extends a core one by zeros on otherwise free variables
    for S in full:
        assert any(set(C) <= set(S) and classify(s, M, C) == classify(s, M, S) for C in core)
