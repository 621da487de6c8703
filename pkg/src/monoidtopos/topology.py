"""Topologies on finite monoids and the constructions built from them.

A topology is stored as the full sorted tuple of its open sets (bitsets).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from . import actions as A
from .errors import InvalidFilter, InvalidTopology, MonoidMismatch, SizeTooLarge
from .monoid import FiniteMonoid, full_mask, members, subset_key

SUBSET_CAP = 12


# ---------------------------------------------------------------- topologies

@dataclass(frozen=True)
class MonoidTopology:
    monoid: FiniteMonoid
    opens: tuple[int, ...]

    def is_open(self, U: int) -> bool:
        return U in self._set()

    def _set(self):
        s = self.__dict__.get("_opens_set")
        if s is None:
            s = frozenset(self.opens)
            object.__setattr__(self, "_opens_set", s)
        return s

    def neighbourhood(self, x: int) -> int:
        """Smallest open set containing x."""
        out = full_mask(self.monoid.size)
        for U in self.opens:
            if U >> x & 1:
                out &= U
        return out

    def is_discrete(self) -> bool:
        return len(self.opens) == 1 << self.monoid.size

    def is_t0(self) -> bool:
        nb = [self.neighbourhood(x) for x in self.monoid.elements()]
        return len(set(nb)) == len(nb)

    def __repr__(self):
        return f"MonoidTopology({[members(U) for U in self.opens]})"


def _close(n: int, family) -> tuple[int, ...]:
    full = full_mask(n)
    opens = {0, full}
    for U in family:
        opens.add(U & full)
    # finite intersections, then unions
    changed = True
    while changed:
        changed = False
        cur = list(opens)
        for U, V in itertools.combinations(cur, 2):
            for W in (U & V, U | V):
                if W not in opens:
                    opens.add(W)
                    changed = True
    return tuple(sorted(opens, key=subset_key))


def topology_from_base(M: FiniteMonoid, base) -> MonoidTopology:
    """Coarsest topology containing every set of `base` (used as a subbase)."""
    return MonoidTopology(M, _close(M.size, base))


def topology_from_opens(M: FiniteMonoid, opens) -> MonoidTopology:
    """Validate a complete list of open sets."""
    full = full_mask(M.size)
    s = set(opens)
    if 0 not in s or full not in s:
        raise InvalidTopology("a topology must contain the empty set and the whole monoid")
    for U in s:
        if U & ~full:
            raise InvalidTopology("open set mentions elements outside the monoid", witness=(members(U),))
    for U, V in itertools.combinations(s, 2):
        for W in (U & V, U | V):
            if W not in s:
                raise InvalidTopology("not closed under union/intersection", witness=(members(U), members(V)))
    return MonoidTopology(M, tuple(sorted(s, key=subset_key)))


def discrete(M: FiniteMonoid) -> MonoidTopology:
    return MonoidTopology(M, tuple(sorted(range(1 << M.size), key=subset_key)))


def indiscrete(M: FiniteMonoid) -> MonoidTopology:
    return MonoidTopology(M, tuple(sorted({0, full_mask(M.size)}, key=subset_key)))


def all_topologies(M: FiniteMonoid) -> list[MonoidTopology]:
    """Every topology on the carrier of M (feasible for up to 4 points)."""
    n = M.size
    if n > 4:
        raise SizeTooLarge("topology enumeration is limited to 4 points", size=n, cap=4)
    full = full_mask(n)
    middle = [U for U in range(1, full)]
    out = []
    for bits in range(1 << len(middle)):
        fam = {0, full} | {middle[i] for i in range(len(middle)) if bits >> i & 1}
        if all(U & V in fam and U | V in fam for U in fam for V in fam):
            out.append(MonoidTopology(M, tuple(sorted(fam, key=subset_key))))
    return out


# ---------------------------------------------------------------- continuity

def necessary_clopens(X: A.FiniteMSet) -> list[A.RightCongruence]:
    """For each x the congruence p ~ q iff x.p = x.q; its classes are the sets I_x^p."""
    M = X.monoid
    return [A.RightCongruence(M, A.canonical_labels(X.action[x])) for x in range(X.size)]


@dataclass(frozen=True)
class ContinuityResult:
    continuous: bool
    witness: Optional[tuple] = None  # (x, p): the class of p for x is not open


def _check_topology(X, tau):
    if tau.monoid != X.monoid:
        raise MonoidMismatch("topology and M-set are over different monoids")


def _point_ok(X, tau, x):
    M = X.monoid
    row = X.action[x]
    for p in M.elements():
        I = 0
        for m in M.elements():
            if row[m] == row[p]:
                I |= 1 << m
        if not tau.is_open(I):
            return p
    return None


def is_continuous(X: A.FiniteMSet, tau: MonoidTopology) -> ContinuityResult:
    _check_topology(X, tau)
    for x in range(X.size):
        p = _point_ok(X, tau, x)
        if p is not None:
            return ContinuityResult(False, (x, p))
    return ContinuityResult(True)


def continuous_core(X: A.FiniteMSet, tau: MonoidTopology):
    """Largest continuous sub-M-set; returns (R, inclusion)."""
    _check_topology(X, tau)
    good = [x for x in range(X.size) if _point_ok(X, tau, x) is None]
    keep = [x for x in good if all(_point_ok(X, tau, X.action[x][q]) is None for q in X.monoid.elements())]
    return A.sub_mset(X, keep)


def _clopen(M: FiniteMonoid, B: int, p: int) -> int:
    """I^p_B = {m | m*(B) = p*(B)}."""
    target = A.inverse_image(M, p, B)
    out = 0
    for m in M.elements():
        if A.inverse_image(M, m, B) == target:
            out |= 1 << m
    return out


def action_topology(M: FiniteMonoid, tau: MonoidTopology, cap: int = SUBSET_CAP):
    """Returns (T, tau_tilde): T lists the subsets A with every I^p_{q*(A)} open."""
    if tau.monoid != M:
        raise MonoidMismatch("topology is over a different monoid")
    if M.size > cap:
        raise SizeTooLarge(f"power set of {M.size} elements exceeds cap", size=M.size, cap=cap)
    T = []
    for Aset in range(1 << M.size):
        if all(tau.is_open(_clopen(M, A.inverse_image(M, q, Aset), p)) for q in M.elements() for p in M.elements()):
            T.append(Aset)
    T.sort(key=subset_key)
    return tuple(T), topology_from_base(M, T)


def is_topological_monoid(M: FiniteMonoid, tau: MonoidTopology):
    """Is multiplication continuous from tau x tau to tau?

    Returns (ok, witness) with witness (U, x, y): (x, y) lies in the preimage
    of U but no product of open neighbourhoods around it does.
    """
    nb = [tau.neighbourhood(x) for x in M.elements()]
    T = M.table
    for U in tau.opens:
        for x in M.elements():
            for y in M.elements():
                if not U >> T[x][y] & 1:
                    continue
                for x2 in members(nb[x]):
                    for y2 in members(nb[y]):
                        if not U >> T[x2][y2] & 1:
                            return False, (U, x, y)
    return True, None


# ---------------------------------------------------------------- powder quotient

@dataclass(frozen=True)
class PowderQuotient:
    monoid: FiniteMonoid
    topology: MonoidTopology
    map: tuple[int, ...]


def powder_quotient(M: FiniteMonoid, tau: MonoidTopology) -> PowderQuotient:
    """Identify points of M that the action topology cannot separate."""
    _, tt = action_topology(M, tau)
    nb = [tt.neighbourhood(x) for x in M.elements()]
    lab = A.canonical_labels(nb)
    k = max(lab) + 1
    reps = [None] * k
    for x, c in enumerate(lab):
        if reps[c] is None:
            reps[c] = x
    for p in M.elements():
        for q in M.elements():
            if lab[p] == lab[q]:
                for m in M.elements():
                    if lab[M.table[p][m]] != lab[M.table[q][m]] or lab[M.table[m][p]] != lab[M.table[m][q]]:
                        raise InvalidTopology("indistinguishability is not a congruence", witness=(p, q, m))
    table = tuple(tuple(lab[M.table[reps[i]][reps[j]]] for j in range(k)) for i in range(k))
    Q = FiniteMonoid(table)
    opens = set()
    for U in tt.opens:
        img = 0
        for x in members(U):
            img |= 1 << lab[x]
        opens.add(img)
    return PowderQuotient(Q, MonoidTopology(Q, tuple(sorted(opens, key=subset_key))), lab)


# ---------------------------------------------------------------- filters of congruences

@dataclass(frozen=True)
class CongruenceFilter:
    monoid: FiniteMonoid
    members: tuple  # RightCongruence, finest first

    def __contains__(self, r):
        return r in set(self.members)

    def least(self) -> A.RightCongruence:
        return self.members[0]


def make_filter(M: FiniteMonoid, members, all_congs=None) -> CongruenceFilter:
    """Validate that `members` is non-empty, upward closed, directed and pullback closed."""
    mem = sorted(set(members), key=A.RightCongruence.sort_key)
    if not mem:
        raise InvalidFilter("a filter must be non-empty")
    s = set(mem)
    all_congs = all_congs if all_congs is not None else A.right_congruences(M)
    for r in mem:
        for r2 in all_congs:
            if r.refines(r2) and r2 not in s:
                raise InvalidFilter("not upward closed", witness=(r, r2))
        for m in M.elements():
            if A.pullback_congruence(m, r) not in s:
                raise InvalidFilter("not closed under pullback", witness=(r, m))
    for r1, r2 in itertools.combinations(mem, 2):
        if A.meet(r1, r2) not in s:
            raise InvalidFilter("not closed under meets", witness=(r1, r2))
    return CongruenceFilter(M, tuple(mem))


def all_filters(M: FiniteMonoid) -> list[CongruenceFilter]:
    """Every filter, as the up-set of a congruence r0 with r0 inside every m*(r0)."""
    congs = A.right_congruences(M)
    out = []
    for r0 in congs:
        if all(r0.refines(A.pullback_congruence(m, r0)) for m in M.elements()):
            out.append(CongruenceFilter(M, tuple(r for r in congs if r0.refines(r))))
    return out


def open_congruences(M: FiniteMonoid, tau: MonoidTopology) -> CongruenceFilter:
    """Right congruences r whose quotient M/r is a continuous action.

    Equivalently, every class of r is open in the action topology; when tau
    is already an action topology this is "every class of r is open in tau".
    """
    congs = A.right_congruences(M)
    good = [r for r in congs if is_continuous(A.quotient(M, r), tau).continuous]
    return make_filter(M, good, congs)


def congruences_with_open_classes(M: FiniteMonoid, tau: MonoidTopology) -> list[A.RightCongruence]:
    return [r for r in A.right_congruences(M) if all(tau.is_open(c) for c in r.class_masks())]


# ---------------------------------------------------------------- completion

@dataclass(frozen=True)
class CompletionMonoid:
    base: FiniteMonoid
    filter: CongruenceFilter
    tuples: tuple  # element k of the carrier, as class indices aligned with filter.members
    monoid: FiniteMonoid
    topology: MonoidTopology
    u: tuple[int, ...]  # M -> carrier
    to_least_quotient: tuple[int, ...]  # carrier -> classes of the least member

    @property
    def size(self):
        return self.monoid.size

    def u_injective(self):
        return len(set(self.u)) == len(self.u)

    def u_surjective(self):
        return len(set(self.u)) == self.size


def _compatible_tuples(F: CongruenceFilter):
    mem = F.members
    k = len(mem)
    order = [[mem[i].refines(mem[j]) for j in range(k)] for i in range(k)]
    counts = [r.class_count for r in mem]
    reps = [[c[0] for c in r.classes] for r in mem]
    cur = [None] * k
    out = []

    def ok(i):
        # [a_i] must map to [a_j] whenever one refines the other
        for j in range(i):
            if order[j][i] and mem[i].class_of[reps[j][cur[j]]] != cur[i]:
                return False
            if order[i][j] and mem[j].class_of[reps[i][cur[i]]] != cur[j]:
                return False
        return True

    def go(i):
        if i == k:
            out.append(tuple(cur))
            return
        for c in range(counts[i]):
            cur[i] = c
            if ok(i):
                go(i + 1)
        cur[i] = None

    go(0)
    return sorted(out)


def completion(M: FiniteMonoid, F: CongruenceFilter) -> CompletionMonoid:
    """Limit of the quotients M/r over the filter, with the prodiscrete topology."""
    if F.monoid != M:
        raise MonoidMismatch("filter is over a different monoid")
    mem = list(F.members)
    index = {r: i for i, r in enumerate(mem)}
    tuples = _compatible_tuples(F)
    pos = {t: i for i, t in enumerate(tuples)}
    reps = [[c[0] for c in r.classes] for r in mem]

    def mul(alpha, beta):
        out = []
        for i, r in enumerate(mem):
            a = reps[i][alpha[i]]
            j = index[A.pullback_congruence(a, r)]
            b = reps[j][beta[j]]
            out.append(r.class_of[M.table[a][b]])
        return tuple(out)

    table = tuple(tuple(pos[mul(a, b)] for b in tuples) for a in tuples)
    L = FiniteMonoid(table)
    u = tuple(pos[tuple(r.class_of[m] for r in mem)] for m in M.elements())
    base = []
    for i, r in enumerate(mem):
        for c in range(r.class_count):
            base.append(sum(1 << k for k, t in enumerate(tuples) if t[i] == c))
    rho = topology_from_base(L, base)
    least = 0  # finest first, so the least member sits at index 0
    return CompletionMonoid(M, F, tuple(tuples), L, rho, u, tuple(t[least] for t in tuples))


@dataclass(frozen=True)
class BaseReduction:
    base: tuple
    discrete: bool
    prodiscrete_two_sided: bool
    quotients: tuple  # quotient monoid for each two-sided base member (None otherwise)


def is_two_sided(r: A.RightCongruence) -> bool:
    M = r.monoid
    for p in M.elements():
        for q in M.elements():
            if r.class_of[p] == r.class_of[q]:
                if any(r.class_of[M.table[m][p]] != r.class_of[M.table[m][q]] for m in M.elements()):
                    return False
    return True


def quotient_monoid(r: A.RightCongruence) -> FiniteMonoid:
    M = r.monoid
    reps = [c[0] for c in r.classes]
    return FiniteMonoid(tuple(tuple(r.class_of[M.table[a][b]] for b in reps) for a in reps))


def base_reduce(F: CongruenceFilter) -> BaseReduction:
    """Minimal members of the filter and whether they give a prodiscrete description."""
    mem = F.members
    base = tuple(r for r in mem if not any(s != r and s.refines(r) for s in mem))
    two = all(is_two_sided(r) for r in base)
    quots = tuple(quotient_monoid(r) if is_two_sided(r) else None for r in base)
    return BaseReduction(base, len(base) == 1, two, quots)


def _congruence_of_subset(M: FiniteMonoid, Aset: int) -> A.RightCongruence:
    """p ~ q iff p*(A) = q*(A)."""
    return A.RightCongruence(M, A.canonical_labels(A.inverse_image(M, p, Aset) for p in M.elements()))


def factor_topology(M: FiniteMonoid, F: CongruenceFilter, cap: int = SUBSET_CAP):
    """Coarsest topology whose open congruences include the filter; returns (tau_h, exact)."""
    if M.size > cap:
        raise SizeTooLarge(f"power set of {M.size} elements exceeds cap", size=M.size, cap=cap)
    s = set(F.members)
    Th = [Aset for Aset in range(1 << M.size) if _congruence_of_subset(M, Aset) in s]
    tau_h = topology_from_base(M, Th)
    exact = open_congruences(M, tau_h).members == F.members
    return tau_h, exact


def continuous_exponential(X: A.FiniteMSet, Y: A.FiniteMSet, tau: MonoidTopology, cap: int = 4096):
    """Continuous part of Y^X; returns (E, inclusion)."""
    return continuous_core(A.exponential(X, Y, cap=cap), tau)
