import random

import pytest
from hypothesis import given, settings

from monoidtopos import actions as A
from monoidtopos import topology as T
from monoidtopos.errors import InvalidFilter, SizeTooLarge
from monoidtopos.monoid import FiniteMonoid, cyclic_group, m3, monoid_isomorphism, trivial_monoid

from conftest import monoid_strategy, monoids_of_order, seeds, small_monoids
from pipeline_checks import check_case, topologies_equivalent

ONE, A_, B_ = 0b001, 0b010, 0b100
TAU_M3 = [0, ONE, A_ | B_, 0b111]


def m3_tau():
    return T.topology_from_base(m3(), [ONE, A_ | B_])


# ---------------------------------------------------------------- independent worked-instance oracle

def brute_force_m3_instance():
    """M3 with opens {}, {1}, {a,b}, M computed from scratch with Python sets."""
    M = [0, 1, 2]
    mul = [[0, 1, 2], [1, 1, 1], [2, 2, 2]]
    opens = [frozenset(), frozenset({0}), frozenset({1, 2}), frozenset(M)]

    def pull(q, S):
        return frozenset(m for m in M if mul[q][m] in S)

    subsets = [frozenset(x for x in M if k >> x & 1) for k in range(8)]
    Tset = []
    for S in subsets:
        ok = True
        for q in M:
            S2 = pull(q, S)
            for p in M:
                I = frozenset(m for m in M if pull(m, S2) == pull(p, S2))
                ok = ok and I in opens
        if ok:
            Tset.append(S)
    # right congruences: partitions closed under right multiplication
    parts = [[{0}, {1}, {2}], [{0}, {1, 2}], [{0, 1}, {2}], [{0, 2}, {1}], [{0, 1, 2}]]

    def cls(P, x):
        return next(i for i, c in enumerate(P) if x in c)

    congs = [P for P in parts
             if all(cls(P, mul[x][m]) == cls(P, mul[y][m]) for c in P for x in c for y in c for m in M)]
    open_congs = [P for P in congs if all(frozenset(c) in Tset for c in P)]
    # the finest open congruence has one class per element of the completion
    completion_size = max(len(P) for P in open_congs)
    # topological indistinguishability under the topology generated by T (T is already closed here)
    nb = {x: frozenset.intersection(*[U for U in Tset if x in U]) for x in M}
    powder = len(set(nb.values()))
    return {
        "T": len(Tset),
        "open_congruences": sorted(sorted(sorted(c) for c in P) for P in open_congs),
        "completion_size": completion_size,
        "u_injective": completion_size == len(M),
        "powder_size": powder,
    }


GOLDEN_M3 = {
    "T": 4,
    "open_congruences": [[[0], [1, 2]], [[0, 1, 2]]],
    "completion_size": 2,
    "u_injective": False,
    "powder_size": 2,
}


def test_worked_instance_oracle_matches_golden():
    assert brute_force_m3_instance() == GOLDEN_M3


def test_worked_instance_library_matches_golden():
    M, tau = m3(), m3_tau()
    Tset, tt = T.action_topology(M, tau)
    F = T.open_congruences(M, tau)
    L = T.completion(M, F)
    pq = T.powder_quotient(M, tau)
    got = {
        "T": len(Tset),
        "open_congruences": sorted(sorted(list(c) for c in r.classes) for r in F.members),
        "completion_size": L.size,
        "u_injective": L.u_injective(),
        "powder_size": pq.monoid.size,
    }
    assert got == GOLDEN_M3


# ---------------------------------------------------------------- construction

def test_topology_from_base_examples():
    M = m3()
    assert T.topology_from_base(M, []).opens == (0, 0b111)
    assert T.topology_from_base(M, [ONE, A_, B_]).is_discrete()
    assert list(m3_tau().opens) == TAU_M3


def test_all_topologies_counts():
    # labelled topologies on 1, 2, 3 points
    assert [len(T.all_topologies(M)) for M in (trivial_monoid(), cyclic_group(2), m3())] == [1, 4, 29]


# ---------------------------------------------------------------- continuity

def test_necessary_clopens_examples():
    M = m3()
    triv = A.trivial_action(M, 2)
    assert all(r == A.total(M) for r in T.necessary_clopens(triv))
    R = T.necessary_clopens(A.regular(M))
    assert R[0] == A.diagonal(M)
    assert R[1] == A.total(M) and R[2] == A.total(M)  # a and b are fixed points


def test_is_continuous_examples():
    M, tau = m3(), m3_tau()
    X = A.regular(M)
    assert T.is_continuous(X, T.discrete(M)).continuous
    res = T.is_continuous(X, tau)
    assert not res.continuous and res.witness == (0, 1)
    assert T.is_continuous(A.trivial_action(M, 3), T.indiscrete(M)).continuous


def test_continuous_core_examples():
    M, tau = m3(), m3_tau()
    R, inc = T.continuous_core(A.regular(M), tau)
    assert sorted(inc.map) == [1, 2]
    R2, _ = T.continuous_core(R, tau)
    assert R2.size == R.size
    X = A.quotient(M, A.total(M))
    assert T.continuous_core(X, tau)[0].size == X.size
    assert T.continuous_core(A.regular(M), T.discrete(M))[0].size == 3


def test_action_topology_examples():
    M, tau = m3(), m3_tau()
    Tset, tt = T.action_topology(M, tau)
    assert list(Tset) == TAU_M3 and tt.opens == tau.opens
    assert T.action_topology(M, T.indiscrete(M))[1].opens == (0, 0b111)
    assert T.action_topology(M, T.discrete(M))[1].is_discrete()


def test_action_topology_cap():
    with pytest.raises(SizeTooLarge):
        T.action_topology(m3(), m3_tau(), cap=2)


def test_is_topological_monoid_examples():
    for M in small_monoids(3):
        assert T.is_topological_monoid(M, T.discrete(M))[0]
    # planted: Z/2 with {} , {1}, M.  1 = a*a but every neighbourhood of a is all of M,
    # and a*1 = a lies outside {1}
    Z2 = cyclic_group(2)
    ok, wit = T.is_topological_monoid(Z2, T.topology_from_opens(Z2, [0, 0b01, 0b11]))
    assert not ok and wit == (0b01, 1, 1)


def test_planted_counterexamples_exist_at_order3():
    bad = 0
    for M in small_monoids(3):
        for tau in T.all_topologies(M):
            ok, wit = T.is_topological_monoid(M, tau)
            if not ok:
                U, x, y = wit
                assert U >> M.table[x][y] & 1
                bad += 1
    assert bad > 0


# ---------------------------------------------------------------- powder quotient

def test_powder_quotient_examples():
    M = m3()
    pq = T.powder_quotient(M, T.discrete(M))
    assert pq.map == (0, 1, 2) and pq.monoid.table == M.table
    pq = T.powder_quotient(M, m3_tau())
    assert pq.monoid.size == 2 and pq.monoid.table == ((0, 1), (1, 1))
    assert pq.topology.is_discrete()
    assert pq.map[1] == pq.map[2] != pq.map[0]
    assert T.powder_quotient(M, T.indiscrete(M)).monoid.size == 1


# ---------------------------------------------------------------- filters

def test_open_congruence_examples():
    M = m3()
    assert len(T.open_congruences(M, T.discrete(M)).members) == len(A.right_congruences(M))
    assert T.open_congruences(M, T.indiscrete(M)).members == (A.total(M),)
    F = T.open_congruences(M, m3_tau())
    assert [r.class_of for r in F.members] == [(0, 1, 1), (0, 0, 0)]


def test_make_filter_rejects():
    M = m3()
    with pytest.raises(InvalidFilter):
        T.make_filter(M, [])
    with pytest.raises(InvalidFilter):
        T.make_filter(M, [A.diagonal(M)])  # not upward closed


def test_all_filters_are_valid(order4):
    for M in order4[:12]:
        for F in T.all_filters(M):
            assert T.make_filter(M, F.members).members == F.members


# ---------------------------------------------------------------- completion

def test_completion_examples():
    M = m3()
    L = T.completion(M, T.make_filter(M, A.right_congruences(M)))
    assert monoid_isomorphism(L.monoid, M) is not None and L.topology.is_discrete()
    L = T.completion(M, T.open_congruences(M, m3_tau()))
    assert L.size == 2 and L.topology.is_discrete()
    assert L.u_surjective() and not L.u_injective()
    L = T.completion(M, T.make_filter(M, [A.total(M)]))
    assert L.size == 1


def test_completion_unit_is_homomorphism_with_dense_image(order4):
    rng = random.Random(3)
    for M in order4:
        filters = T.all_filters(M)
        for F in rng.sample(filters, min(3, len(filters))):
            L = T.completion(M, F)
            u = L.u
            assert u[0] == 0
            for x in M.elements():
                for y in M.elements():
                    assert L.monoid.table[u[x]][u[y]] == u[M.table[x][y]]
            img = set(u)
            assert all(any(U >> k & 1 for k in img) for U in L.topology.opens if U)


# ---------------------------------------------------------------- base reduction

def test_base_reduce_examples():
    M = m3()
    br = T.base_reduce(T.open_congruences(M, m3_tau()))
    assert [r.class_of for r in br.base] == [(0, 1, 1)]
    assert br.prodiscrete_two_sided and br.discrete
    assert br.quotients[0].table == ((0, 1), (1, 1))
    br = T.base_reduce(T.make_filter(M, [A.total(M)]))
    assert br.base == (A.total(M),) and br.quotients[0].size == 1


def test_commutative_monoids_are_prodiscrete(order4):
    for M in order4:
        if all(M.table[x][y] == M.table[y][x] for x in M.elements() for y in M.elements()):
            for F in T.all_filters(M):
                assert T.base_reduce(F).prodiscrete_two_sided


# ---------------------------------------------------------------- factor topology

def test_factor_topology_examples():
    M, tau = m3(), m3_tau()
    th, exact = T.factor_topology(M, T.open_congruences(M, tau))
    assert th.opens == T.action_topology(M, tau)[1].opens and exact
    th, exact = T.factor_topology(M, T.make_filter(M, A.right_congruences(M)))
    assert th.is_discrete() and exact


def test_factor_topology_filter_sweep(order4, record_property):
    """Every filter at order <= 4 is realized by its factor topology or not; record which."""
    total = non_exact = 0
    for M in order4:
        for F in T.all_filters(M):
            th, exact = T.factor_topology(M, F)
            got = T.open_congruences(M, th).members
            assert set(F.members) <= set(got)
            total += 1
            non_exact += not exact
    record_property("filters", total)
    record_property("non_exact", non_exact)
    print(f"factor_topology sweep: {total} filters, {non_exact} not realizable")


# ---------------------------------------------------------------- continuous exponential

def test_continuous_exponential_examples():
    M = m3()
    X = A.quotient(M, A.congruence(M, [0, 1, 1]))
    Y = A.regular(M)
    E, _ = T.continuous_exponential(X, Y, T.discrete(M))
    assert A.is_isomorphic(E, A.exponential(X, Y))
    one = A.terminal(M)
    Yc = A.quotient(M, A.congruence(M, [0, 1, 1]))
    E1, _ = T.continuous_exponential(one, Yc, m3_tau())
    assert A.is_isomorphic(E1, Yc)


def test_continuous_exponential_adjunction_m3():
    M, tau = m3(), m3_tau()
    Q = A.quotient(M, A.congruence(M, [0, 1, 1]))
    one = A.terminal(M)
    two, _, _ = A.coproduct(Q, one)
    conts = [one, Q, two]
    assert all(T.is_continuous(X, tau).continuous for X in conts)
    for X in conts:
        for Y in conts:
            E, _ = T.continuous_exponential(X, Y, tau)
            for Z in conts:
                ZX, _, _ = A.product(Z, X)
                assert A.count_homs(ZX, Y) == A.count_homs(Z, E)


# ---------------------------------------------------------------- sweeps

def test_pipeline_exhaustive_order3():
    for M in small_monoids(3):
        for tau in T.all_topologies(M):
            assert check_case(M, tau) == [], (M.table, tau.opens)


@settings(max_examples=40, deadline=None)
@given(monoid_strategy, seeds)
def test_pipeline_random(M, seed):
    tops = T.all_topologies(M)
    tau = random.Random(seed).choice(tops)
    assert check_case(M, tau) == []


def test_topologies_equivalent_detects_relabelling():
    M = m3()
    tau = m3_tau()
    N = FiniteMonoid(((0, 1, 2), (1, 1, 1), (2, 2, 2)))
    swapped = T.topology_from_opens(N, [0, ONE, A_ | B_, 0b111])
    assert topologies_equivalent(M, tau, N, swapped)
    assert not topologies_equivalent(M, tau, N, T.discrete(N))
