"""Finite right M-sets and the constructions done on them by brute force."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import InvalidAction, MonoidMismatch, NotEquivariant, OutOfRange, SizeTooLarge
from .monoid import FiniteMonoid, full_mask, members, opposite, right_ideals, subset_key

DEFAULT_HOM_CAP = 100_000
PARTITION_CAP = 9


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if ra < rb:
            ra, rb = rb, ra
        self.parent[ra] = rb
        return True

    def labels(self):
        """Class index per element, classes numbered by first occurrence."""
        seen = {}
        out = []
        for x in range(len(self.parent)):
            r = self.find(x)
            if r not in seen:
                seen[r] = len(seen)
            out.append(seen[r])
        return tuple(out)


def canonical_labels(labels) -> tuple[int, ...]:
    seen = {}
    return tuple(seen.setdefault(v, len(seen)) for v in labels)


# ---------------------------------------------------------------- types

@dataclass(frozen=True)
class FiniteMSet:
    monoid: FiniteMonoid
    action: tuple[tuple[int, ...], ...]
    labels: Optional[tuple] = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.action)

    def act(self, x: int, m: int) -> int:
        return self.action[x][m]

    def __repr__(self):
        return f"FiniteMSet(size={self.size}, action={[list(r) for r in self.action]})"


def make_mset(M: FiniteMonoid, action, labels=None, check=True) -> FiniteMSet:
    action = tuple(tuple(r) for r in action)
    if check:
        n, k = M.size, len(action)
        for x, row in enumerate(action):
            if len(row) != n:
                raise InvalidAction(f"row {x} has length {len(row)}, expected {n}", witness=(x,))
            for m, v in enumerate(row):
                if not 0 <= v < k:
                    raise OutOfRange(f"action[{x}][{m}] = {v} out of range", witness=(x, m))
            if row[0] != x:
                raise InvalidAction(f"identity moves {x}", witness=(x,))
        for x in range(k):
            for m in range(n):
                xm = action[x][m]
                for m2 in range(n):
                    if action[xm][m2] != action[x][M.table[m][m2]]:
                        raise InvalidAction(f"(x.m).m' != x.(mm') at x={x}, m={m}, m'={m2}", witness=(x, m, m2))
    return FiniteMSet(M, action, tuple(labels) if labels is not None else None)


@dataclass(frozen=True)
class MSetMap:
    source: FiniteMSet
    target: FiniteMSet
    map: tuple[int, ...]

    def __call__(self, x):
        return self.map[x]

    def is_injective(self):
        return len(set(self.map)) == len(self.map)

    def is_surjective(self):
        return len(set(self.map)) == self.target.size


def make_map(X: FiniteMSet, Y: FiniteMSet, values) -> MSetMap:
    _same_monoid(X, Y)
    values = tuple(values)
    if len(values) != X.size or any(not 0 <= v < Y.size for v in values):
        raise OutOfRange("map has wrong length or values out of range")
    for x in range(X.size):
        for m in range(X.monoid.size):
            if values[X.action[x][m]] != Y.action[values[x]][m]:
                raise NotEquivariant(f"f(x.m) != f(x).m at x={x}, m={m}", witness=(x, m))
    return MSetMap(X, Y, values)


def compose(g: MSetMap, f: MSetMap) -> MSetMap:
    """g after f."""
    return MSetMap(f.source, g.target, tuple(g.map[v] for v in f.map))


def identity_map(X: FiniteMSet) -> MSetMap:
    return MSetMap(X, X, tuple(range(X.size)))


def _same_monoid(*xs):
    M = xs[0].monoid
    for X in xs[1:]:
        if X.monoid != M:
            raise MonoidMismatch("M-sets are over different monoids")
    return M


# ---------------------------------------------------------------- standard M-sets

def regular(M: FiniteMonoid) -> FiniteMSet:
    """M acting on itself by right multiplication."""
    return FiniteMSet(M, M.table, M.names)


def terminal(M: FiniteMonoid) -> FiniteMSet:
    return FiniteMSet(M, ((0,) * M.size,))


def empty_mset(M: FiniteMonoid) -> FiniteMSet:
    return FiniteMSet(M, ())


def trivial_action(M: FiniteMonoid, k: int) -> FiniteMSet:
    return FiniteMSet(M, tuple((x,) * M.size for x in range(k)))


def orbit(X: FiniteMSet, x: int) -> tuple[int, ...]:
    """The principal sub-M-set xM, sorted."""
    return tuple(sorted(set(X.action[x])))


def sub_mset(X: FiniteMSet, elements):
    """Restrict X to a subset closed under the action; returns (S, inclusion)."""
    elements = sorted(set(elements))
    pos = {x: i for i, x in enumerate(elements)}
    try:
        action = tuple(tuple(pos[v] for v in X.action[x]) for x in elements)
    except KeyError:
        raise InvalidAction("subset is not closed under the action") from None
    labels = tuple(X.labels[x] for x in elements) if X.labels else None
    S = FiniteMSet(X.monoid, action, labels)
    return S, MSetMap(S, X, tuple(elements))


def quotient_by_labels(X: FiniteMSet, labels):
    """Quotient of X by an equivariant partition given as class labels."""
    labels = canonical_labels(labels)
    k = max(labels) + 1 if labels else 0
    rep = [None] * k
    for x, c in enumerate(labels):
        if rep[c] is None:
            rep[c] = x
    action = []
    for c in range(k):
        row = tuple(labels[v] for v in X.action[rep[c]])
        action.append(row)
    Q = FiniteMSet(X.monoid, tuple(action))
    return Q, MSetMap(X, Q, labels)


def equivariant_closure(X: FiniteMSet, pairs) -> tuple[int, ...]:
    """Labels of the smallest equivariant equivalence relation containing pairs."""
    uf = UnionFind(X.size)
    todo = list(pairs)
    n = X.monoid.size
    while todo:
        a, b = todo.pop()
        if uf.union(a, b):
            # both sides move together; the images must stay related
            for m in range(1, n):
                todo.append((X.action[a][m], X.action[b][m]))
    return uf.labels()


# ---------------------------------------------------------------- hom sets

def _generators(X: FiniteMSet) -> list[int]:
    order = sorted(range(X.size), key=lambda x: (-len(set(X.action[x])), x))
    covered = set()
    gens = []
    for x in order:
        if x not in covered:
            gens.append(x)
            covered.update(X.action[x])
    return gens


def hom_set(X: FiniteMSet, Y: FiniteMSet, limit: Optional[int] = DEFAULT_HOM_CAP) -> list[MSetMap]:
    """All equivariant maps X -> Y.

    A map is fixed by the images of a generating set; the images of the
    generators are chosen one at a time and propagated along their orbits.
    """
    _same_monoid(X, Y)
    n = X.monoid.size
    gens = _generators(X)
    f = [-1] * X.size
    out = []

    def assign(g, y):
        changed = []
        for m in range(n):
            x = X.action[g][m]
            v = Y.action[y][m]
            if f[x] < 0:
                f[x] = v
                changed.append(x)
            elif f[x] != v:
                for c in changed:
                    f[c] = -1
                return None
        return changed

    def go(i):
        if i == len(gens):
            out.append(MSetMap(X, Y, tuple(f)))
            if limit is not None and len(out) > limit:
                raise SizeTooLarge(f"more than {limit} maps", size=len(out), cap=limit)
            return
        g = gens[i]
        for y in range(Y.size):
            changed = assign(g, y)
            if changed is None:
                continue
            go(i + 1)
            for c in changed:
                f[c] = -1

    go(0)
    return out


def count_homs(X: FiniteMSet, Y: FiniteMSet, limit: Optional[int] = DEFAULT_HOM_CAP) -> int:
    return len(hom_set(X, Y, limit))


def is_isomorphic(X: FiniteMSet, Y: FiniteMSet) -> bool:
    if X.size != Y.size or X.monoid != Y.monoid:
        return False
    if sorted(len(set(r)) for r in X.action) != sorted(len(set(r)) for r in Y.action):
        return False
    return any(f.is_injective() for f in hom_set(X, Y, limit=None))


# ---------------------------------------------------------------- Gamma, C

def fixed_points(X: FiniteMSet) -> tuple[int, ...]:
    return tuple(x for x in range(X.size) if all(v == x for v in X.action[x]))


def component_labels(X: FiniteMSet) -> tuple[int, ...]:
    uf = UnionFind(X.size)
    for x in range(X.size):
        for v in X.action[x]:
            uf.union(x, v)
    return uf.labels()


def components(X: FiniteMSet) -> list[tuple[int, ...]]:
    labels = component_labels(X)
    k = max(labels) + 1 if labels else 0
    out = [[] for _ in range(k)]
    for x, c in enumerate(labels):
        out[c].append(x)
    return [tuple(c) for c in out]


# ---------------------------------------------------------------- Omega, P(M)

def inverse_image(M: FiniteMonoid, m: int, A: int) -> int:
    """m*(A) = {n | m*n in A} for a bitset A."""
    row = M.table[m]
    out = 0
    for k in range(M.size):
        if A >> row[k] & 1:
            out |= 1 << k
    return out


def omega(M: FiniteMonoid) -> FiniteMSet:
    """Right ideals of M under I.m = m*(I); labels hold the ideals as bitsets."""
    ideals = right_ideals(M)
    pos = {I: i for i, I in enumerate(ideals)}
    action = tuple(tuple(pos[inverse_image(M, m, I)] for m in M.elements()) for I in ideals)
    return FiniteMSet(M, action, tuple(ideals))


def power_mset(M: FiniteMonoid, cap: int = 12) -> FiniteMSet:
    """All subsets of M under A.m = m*(A); element index = bitset value."""
    if M.size > cap:
        raise SizeTooLarge(f"power set of a {M.size}-element monoid exceeds cap", size=M.size, cap=cap)
    action = tuple(tuple(inverse_image(M, m, A) for m in M.elements()) for A in range(1 << M.size))
    return FiniteMSet(M, action, tuple(range(1 << M.size)))


def complement_map(M: FiniteMonoid) -> MSetMap:
    P = power_mset(M)
    full = full_mask(M.size)
    return MSetMap(P, P, tuple(full ^ A for A in range(P.size)))


def omega_inclusion(M: FiniteMonoid) -> MSetMap:
    Om = omega(M)
    return MSetMap(Om, power_mset(M), Om.labels)


# ---------------------------------------------------------------- limits and colimits

def product(X: FiniteMSet, Y: FiniteMSet):
    """X x Y with element (x, y) at index x*|Y| + y; returns (P, pi1, pi2)."""
    M = _same_monoid(X, Y)
    ky = Y.size
    action = tuple(
        tuple(X.action[x][m] * ky + Y.action[y][m] for m in M.elements())
        for x in range(X.size)
        for y in range(ky)
    )
    P = FiniteMSet(M, action, tuple((x, y) for x in range(X.size) for y in range(ky)))
    pi1 = MSetMap(P, X, tuple(x for x in range(X.size) for _ in range(ky)))
    pi2 = MSetMap(P, Y, tuple(y for _ in range(X.size) for y in range(ky)))
    return P, pi1, pi2


def coproduct(X: FiniteMSet, Y: FiniteMSet):
    M = _same_monoid(X, Y)
    kx = X.size
    action = X.action + tuple(tuple(v + kx for v in row) for row in Y.action)
    S = FiniteMSet(M, action)
    return S, MSetMap(X, S, tuple(range(kx))), MSetMap(Y, S, tuple(range(kx, kx + Y.size)))


def equalizer(f: MSetMap, g: MSetMap):
    E, inc = sub_mset(f.source, [x for x in range(f.source.size) if f.map[x] == g.map[x]])
    return E, inc


def coequalizer(f: MSetMap, g: MSetMap):
    Y = f.target
    labels = equivariant_closure(Y, [(f.map[x], g.map[x]) for x in range(f.source.size)])
    return quotient_by_labels(Y, labels)


def pushout(f: MSetMap, g: MSetMap):
    """Pushout of B <-f- A -g-> C; returns (P, B -> P, C -> P)."""
    S, ib, ic = coproduct(f.target, g.target)
    labels = equivariant_closure(S, [(ib.map[f.map[a]], ic.map[g.map[a]]) for a in range(f.source.size)])
    P, q = quotient_by_labels(S, labels)
    return P, compose(q, ib), compose(q, ic)


def image(f: MSetMap):
    """Returns (I, epi X -> I, inclusion I -> Y)."""
    I, inc = sub_mset(f.target, set(f.map))
    pos = {y: i for i, y in enumerate(inc.map)}
    return I, MSetMap(f.source, I, tuple(pos[v] for v in f.map)), inc


@dataclass(frozen=True)
class Cokernel:
    object: FiniteMSet
    quotient: MSetMap  # B -> B/f
    point: MSetMap  # 1 -> B/f


def cokernel(f: MSetMap) -> Cokernel:
    """Pushout of f against the map from its source to the terminal M-set."""
    M = f.source.monoid
    one = terminal(M)
    bang = MSetMap(f.source, one, (0,) * f.source.size)
    P, q, pt = pushout(f, bang)
    return Cokernel(P, q, pt)


# ---------------------------------------------------------------- exponentials

def exponential(X: FiniteMSet, Y: FiniteMSet, cap: int = 4096) -> FiniteMSet:
    """Y^X with carrier hom(M x X, Y) and (f.m)(n, p) = f(mn, p)."""
    M = _same_monoid(X, Y)
    MX, _, _ = product(regular(M), X)
    maps = [h.map for h in hom_set(MX, Y, limit=cap)]
    pos = {h: i for i, h in enumerate(maps)}
    kx = X.size
    action = []
    for h in maps:
        row = []
        for m in M.elements():
            moved = tuple(h[M.table[m][nn] * kx + p] for nn in M.elements() for p in range(kx))
            row.append(pos[moved])
        action.append(tuple(row))
    return FiniteMSet(M, tuple(action), tuple(maps))


def evaluation(X: FiniteMSet, Y: FiniteMSet, E: Optional[FiniteMSet] = None) -> MSetMap:
    """ev: Y^X x X -> Y, (f, p) -> f(1, p)."""
    E = E or exponential(X, Y)
    P, _, _ = product(E, X)
    return MSetMap(P, Y, tuple(E.labels[e][p] for e in range(E.size) for p in range(X.size)))


# ---------------------------------------------------------------- right congruences

@dataclass(frozen=True)
class RightCongruence:
    monoid: FiniteMonoid
    class_of: tuple[int, ...]

    @property
    def class_count(self) -> int:
        return max(self.class_of) + 1

    @property
    def classes(self) -> list[tuple[int, ...]]:
        out = [[] for _ in range(self.class_count)]
        for x, c in enumerate(self.class_of):
            out[c].append(x)
        return [tuple(c) for c in out]

    def related(self, p, q) -> bool:
        return self.class_of[p] == self.class_of[q]

    def refines(self, other: "RightCongruence") -> bool:
        """self is contained in other as a relation."""
        seen = {}
        for c, d in zip(self.class_of, other.class_of):
            if seen.setdefault(c, d) != d:
                return False
        return True

    def class_masks(self) -> list[int]:
        out = [0] * self.class_count
        for x, c in enumerate(self.class_of):
            out[c] |= 1 << x
        return out

    def sort_key(self):
        # finest first, coarsest last
        return (-self.class_count, self.class_of)

    def __repr__(self):
        n = self.monoid
        parts = ["{" + ",".join(n.name(x) for x in c) + "}" for c in self.classes]
        return "RightCongruence(" + "".join(parts) + ")"


def congruence(M: FiniteMonoid, labels, check=True) -> RightCongruence:
    labels = canonical_labels(labels)
    if len(labels) != M.size:
        raise OutOfRange("label vector has wrong length")
    if check:
        for p in M.elements():
            for q in range(p):
                if labels[p] == labels[q]:
                    for m in M.elements():
                        if labels[M.table[p][m]] != labels[M.table[q][m]]:
                            raise InvalidAction(f"not right compatible at ({q},{p})*{m}", witness=(q, p, m))
    return RightCongruence(M, labels)


def diagonal(M: FiniteMonoid) -> RightCongruence:
    return RightCongruence(M, tuple(range(M.size)))


def total(M: FiniteMonoid) -> RightCongruence:
    return RightCongruence(M, (0,) * M.size)


def generated_congruence(M: FiniteMonoid, pairs) -> RightCongruence:
    return RightCongruence(M, equivariant_closure(regular(M), pairs))


def right_congruences(M: FiniteMonoid, cap: int = PARTITION_CAP) -> list[RightCongruence]:
    """All right congruences, finest first; set partitions filtered with pruning."""
    n = M.size
    if n > cap:
        raise SizeTooLarge(f"congruence enumeration capped at {cap} elements", size=n, cap=cap)
    T = M.table
    lab = [-1] * n
    out = []

    def ok(x):
        # every fully labelled instance of p~q => pm~qm involving x
        for p in range(x + 1):
            if lab[p] < 0:
                continue
            for q in range(p):
                if lab[q] != lab[p]:
                    continue
                for m in range(n):
                    a, b = lab[T[p][m]], lab[T[q][m]]
                    if a >= 0 and b >= 0 and a != b:
                        return False
        return True

    def go(x, k):
        if x == n:
            out.append(RightCongruence(M, tuple(lab)))
            return
        for c in range(k + 1):
            lab[x] = c
            if ok(x):
                go(x + 1, max(k, c + 1))
        lab[x] = -1

    go(0, 0)
    return sorted(out, key=RightCongruence.sort_key)


def quotient(M: FiniteMonoid, r: RightCongruence) -> FiniteMSet:
    """M/r; the class of the identity is element 0."""
    reps = [c[0] for c in r.classes]
    action = tuple(tuple(r.class_of[M.table[p][m]] for m in M.elements()) for p in reps)
    return FiniteMSet(M, action, tuple(reps))


def pullback_congruence(m: int, r: RightCongruence) -> RightCongruence:
    """m*(r): p ~ q iff m*p ~ m*q in r."""
    row = r.monoid.table[m]
    return RightCongruence(r.monoid, canonical_labels(r.class_of[row[p]] for p in r.monoid.elements()))


def meet(r1: RightCongruence, r2: RightCongruence) -> RightCongruence:
    return RightCongruence(r1.monoid, canonical_labels(zip(r1.class_of, r2.class_of)))


def join(r1: RightCongruence, r2: RightCongruence) -> RightCongruence:
    M = r1.monoid
    pairs = [(p, c[0]) for r in (r1, r2) for c in r.classes for p in c]
    return generated_congruence(M, pairs)


def joint_cover(r1: RightCongruence, r2: RightCongruence) -> RightCongruence:
    """Congruence of the principal sub-M-set of M/r1 x M/r2 generated by ([1],[1])."""
    return meet(r1, r2)


def quotient_map(r: RightCongruence, r2: RightCongruence) -> MSetMap:
    """The epi M/r -> M/r2 for r contained in r2."""
    if not r.refines(r2):
        raise InvalidAction("first congruence does not refine the second")
    M = r.monoid
    return MSetMap(quotient(M, r), quotient(M, r2), tuple(r2.class_of[c[0]] for c in r.classes))


# ---------------------------------------------------------------- the category of congruences

@dataclass(frozen=True)
class CongMorphism:
    source: RightCongruence
    target: RightCongruence
    witness: int

    def as_map(self) -> MSetMap:
        """[p] -> [m p] from M/source to M/target."""
        M = self.source.monoid
        vals = tuple(self.target.class_of[M.table[self.witness][c[0]]] for c in self.source.classes)
        return MSetMap(quotient(M, self.source), quotient(M, self.target), vals)


def cong_hom(r1: RightCongruence, r2: RightCongruence) -> list[CongMorphism]:
    out = []
    for c in r2.classes:
        m = c[0]
        if r1.refines(pullback_congruence(m, r2)):
            out.append(CongMorphism(r1, r2, m))
    return out


def cong_compose(g: CongMorphism, f: CongMorphism) -> CongMorphism:
    """g after f: the class of g.witness * f.witness."""
    M = f.source.monoid
    w = M.table[g.witness][f.witness]
    rep = g.target.classes[g.target.class_of[w]][0]
    return CongMorphism(f.source, g.target, rep)


def cong_identity(r: RightCongruence) -> CongMorphism:
    return CongMorphism(r, r, 0)


def cong_factor(f: CongMorphism):
    """Split f into a quotient r1 -> m*(r2) followed by a mono m*(r2) -> r2."""
    mid = pullback_congruence(f.witness, f.target)
    return CongMorphism(f.source, mid, 0), CongMorphism(mid, f.target, f.witness)


@dataclass
class CongruenceCategory:
    objects: list
    homs: dict  # (i, j) -> list[CongMorphism]
    factorizations: dict  # (i, j, k) -> (quotient, mono)

    def hom_counts(self):
        return {k: len(v) for k, v in self.homs.items()}

    def compose(self, g, f):
        return cong_compose(g, f)

    def composition_table(self):
        """Rows (i, j, k, a, b, c): hom index c in (i,k) is b in (j,k) after a in (i,j)."""
        rows = []
        n = len(self.objects)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for a, f in enumerate(self.homs[i, j]):
                        for b, g in enumerate(self.homs[j, k]):
                            h = cong_compose(g, f)
                            rows.append((i, j, k, a, b, self.homs[i, k].index(h)))
        return rows


def congruence_category(M: FiniteMonoid, subset) -> CongruenceCategory:
    objs = list(subset)
    homs = {}
    facts = {}
    for i, r1 in enumerate(objs):
        for j, r2 in enumerate(objs):
            homs[i, j] = cong_hom(r1, r2)
            for k, f in enumerate(homs[i, j]):
                facts[i, j, k] = cong_factor(f)
    return CongruenceCategory(objs, homs, facts)


def hasse_edges(congs: list[RightCongruence]) -> list[tuple[int, int]]:
    """Covering pairs (i, j) with congs[i] strictly finer than congs[j]."""
    n = len(congs)
    below = [[i != j and congs[i].refines(congs[j]) for j in range(n)] for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            if below[i][j] and not any(below[i][k] and below[k][j] for k in range(n)):
                edges.append((i, j))
    return edges


# ---------------------------------------------------------------- tensor and flatness

@dataclass(frozen=True)
class Tensor:
    size: int
    class_of: tuple[int, ...]  # indexed by a*|B| + b
    width: int  # |B|

    def cls(self, a, b):
        return self.class_of[a * self.width + b]


def left_act(B: FiniteMSet, m: int, b: int) -> int:
    """m.b for a left M-set stored as a right M^op-set."""
    return B.action[b][m]


def tensor(A: FiniteMSet, B: FiniteMSet) -> Tensor:
    """A (right M-set) tensored with B (left M-set, i.e. a right M^op-set)."""
    M = A.monoid
    if B.monoid.table != opposite(M).table:
        raise MonoidMismatch("second argument must be an action of the opposite monoid")
    kb = B.size
    uf = UnionFind(A.size * kb)
    for a in range(A.size):
        for b in range(kb):
            for m in M.elements():
                uf.union(A.action[a][m] * kb + b, a * kb + B.action[b][m])
    labels = uf.labels()
    return Tensor(max(labels) + 1 if labels else 0, labels, kb)


def tensor_map(f: MSetMap, B: FiniteMSet, src: Tensor, dst: Tensor) -> tuple[int, ...]:
    """The induced map A (x) B -> A' (x) B on classes."""
    out = [None] * src.size
    for a in range(f.source.size):
        for b in range(B.size):
            out[src.cls(a, b)] = dst.cls(f.map[a], b)
    return tuple(out)


@dataclass(frozen=True)
class FlatnessResult:
    flat: bool
    failed: Optional[str] = None
    witness: Optional[tuple] = None


def is_flat_left(B: FiniteMSet) -> FlatnessResult:
    """Filtering conditions for a left M-set (given as a right M^op-set)."""
    n = B.monoid.size
    T = opposite(B.monoid).table  # T[m][n] is the product m*n in the original monoid
    k = B.size
    if k == 0:
        return FlatnessResult(False, "a", ())
    reach = [set(B.action[a]) for a in range(k)]  # M.a
    for b in range(k):
        for b2 in range(b, k):
            if not any(b in reach[a] and b2 in reach[a] for a in range(k)):
                return FlatnessResult(False, "b", (b, b2))
    for c in range(k):
        for m in range(n):
            for m2 in range(m + 1, n):
                if B.action[c][m] != B.action[c][m2]:
                    continue
                found = False
                for nn in range(n):
                    if T[m][nn] != T[m2][nn]:
                        continue
                    if any(B.action[d][nn] == c for d in range(k)):
                        found = True
                        break
                if not found:
                    return FlatnessResult(False, "c", (c, m, m2))
    return FlatnessResult(True)
