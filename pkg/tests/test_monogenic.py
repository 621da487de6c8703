import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monoidtopos.errors import OutOfRange
from monoidtopos.monogenic import (
    NabShape,
    classify,
    epi_exists,
    equivariant_maps,
    joint_cover,
    monogenic_action,
    mono_exists,
    principal_shape,
    truncated_profinite,
    truncation_map,
)

SHAPES = [NabShape(a, b) for a in range(6) for b in range(1, 5)]


# ---------------------------------------------------------------- independent oracle

def walk(step, y, k):
    for _ in range(k):
        y = step[y]
    return y


def maps_from_shape(s, step):
    """Equivariant maps N_{a,b} -> (Y, step): the image y of 0 decides everything,
    and y works iff step^(a+b)(y) = step^a(y)."""
    out = []
    for y in range(len(step)):
        if walk(step, y, s.a + s.b) == walk(step, y, s.a):
            out.append(tuple(walk(step, y, k) for k in range(s.size)))
    return out


def shape_step(s):
    return [x + 1 if x + 1 < s.size else s.a for x in range(s.size)]


def brute_epi(s, t):
    return any(len(set(f)) == t.size for f in maps_from_shape(s, shape_step(t)))


def brute_split_mono(s, t):
    for f in maps_from_shape(s, shape_step(t)):
        if len(set(f)) != s.size:
            continue
        for r in maps_from_shape(t, shape_step(s)):
            if all(r[f[x]] == x for x in range(s.size)):
                return True
    return False


def brute_mono(s, t):
    return any(len(set(f)) == s.size for f in maps_from_shape(s, shape_step(t)))


# ---------------------------------------------------------------- laws

def test_shape_range_is_576_pairs():
    assert len(SHAPES) ** 2 == 576


def test_epi_formula_matches_brute_force():
    bad = [(s, t) for s in SHAPES for t in SHAPES if epi_exists(s, t) != brute_epi(s, t)]
    assert bad == []


def test_mono_formula_matches_brute_force():
    bad = [(s, t) for s in SHAPES for t in SHAPES if mono_exists(s, t) != brute_mono(s, t)]
    assert bad == []


def test_split_monos_characterized():
    # For a > 0 the generator 0 of N_{a,b} has no preimage, so a retraction
    # N_{a',b} -> N_{a,b} exists only when a = a'. For a = 0 the tail folds onto the cycle.
    for s in SHAPES:
        for t in SHAPES:
            if mono_exists(s, t):
                assert brute_split_mono(s, t) == (s.a == 0 or s == t), (s, t)
    assert not brute_split_mono(NabShape(1, 1), NabShape(2, 1))


def test_joint_cover_is_a_joint_cover_and_universal():
    for s in SHAPES:
        for t in SHAPES:
            j = joint_cover(s, t)
            assert brute_epi(j, s) and brute_epi(j, t)
            for u in SHAPES:
                if brute_epi(u, s) and brute_epi(u, t):
                    assert brute_epi(u, j), (s, t, u)


def test_equivariant_maps_agree_with_generator_oracle():
    for s in SHAPES[:12]:
        for t in SHAPES[:12]:
            got = sorted(equivariant_maps(s.action(), t.action()))
            assert got == sorted(maps_from_shape(s, shape_step(t)))


# ---------------------------------------------------------------- examples

def test_formula_examples():
    assert epi_exists(NabShape(2, 4), NabShape(1, 2))
    assert not epi_exists(NabShape(1, 2), NabShape(1, 4))
    assert mono_exists(NabShape(1, 2), NabShape(3, 2))
    assert not mono_exists(NabShape(1, 2), NabShape(1, 4))
    assert joint_cover(NabShape(1, 2), NabShape(2, 3)) == NabShape(2, 6)
    for s in SHAPES:
        assert epi_exists(s, s) and mono_exists(s, s) and joint_cover(s, s) == s
        assert joint_cover(NabShape(0, 1), s) == s


def test_classify_examples():
    X = monogenic_action([1, 2, 1])
    c = classify(X)
    assert c.per_element[0] == NabShape(1, 2)
    assert c.components == ((NabShape(1, 2),),)
    assert classify(monogenic_action([0])).components == ((NabShape(0, 1),),)
    assert classify(monogenic_action([1, 2, 3, 0])).components == ((NabShape(0, 4),),)
    assert str(NabShape(1, 2)) == "N_{1,2}"


def test_classify_components_and_multiset():
    # two tails into a 2-cycle, plus a separate fixed point
    X = monogenic_action([2, 2, 3, 2, 4])
    c = classify(X)
    assert c.components == ((NabShape(0, 1),), (NabShape(1, 2), NabShape(1, 2)))
    assert c.shapes()[NabShape(1, 2)] == 2


def test_bad_step_rejected():
    with pytest.raises(OutOfRange):
        monogenic_action([0, 2])
    with pytest.raises(OutOfRange):
        NabShape(0, 0)


steps = st.integers(1, 8).flatmap(lambda k: st.lists(st.integers(0, k - 1), min_size=k, max_size=k))


@settings(max_examples=100, deadline=None)
@given(steps, st.integers(0, 2**32 - 1))
def test_classify_invariant_under_relabelling(step, seed):
    k = len(step)
    perm = list(range(k))
    random.Random(seed).shuffle(perm)
    # new[perm[x]] = perm[step[x]]
    new = [0] * k
    for x in range(k):
        new[perm[x]] = perm[step[x]]
    X, Y = monogenic_action(step), monogenic_action(new)
    assert classify(X).components == classify(Y).components
    assert all(principal_shape(X, x) == principal_shape(Y, perm[x]) for x in range(k))


@settings(max_examples=100, deadline=None)
@given(steps)
def test_principal_shape_generates_orbit(step):
    X = monogenic_action(step)
    for x in range(X.size):
        s = principal_shape(X, x)
        orbit = {X.iterate(x, k) for k in range(s.size)}
        assert len(orbit) == s.size
        assert X.iterate(x, s.a + s.b) == X.iterate(x, s.a)


# ---------------------------------------------------------------- truncated profinite

def test_truncated_profinite_examples():
    M, tau = truncated_profinite(1)
    assert M.table == ((0, 1), (1, 1)) and tau.is_discrete()
    M, _ = truncated_profinite(3)
    assert M.size == 4
    assert M.table[1][3] == 3 and M.table[3][3] == 3
    assert M.table[1][1] == 2


def test_truncation_maps_are_surjective_homomorphisms():
    for K in range(1, 6):
        M, _ = truncated_profinite(K)
        for K2 in range(1, K + 1):
            N, _ = truncated_profinite(K2)
            h = truncation_map(K, K2)
            assert set(h) == set(range(K2 + 1)) and h[0] == 0
            for p, q in itertools.product(range(K + 1), repeat=2):
                assert h[M.table[p][q]] == N.table[h[p]][h[q]]
    with pytest.raises(OutOfRange):
        truncation_map(2, 3)
