"""Finite monoids as multiplication tables.

Conventions used everywhere in the package:

* ``table[i][j]`` is the product ``i*j`` (row is the left factor);
* element 0 is the identity;
* subsets of the carrier ("element sets") are Python ints used as bitsets.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import BadIdentity, EmptyGenerators, NotAssociative, NotIdempotent, OutOfRange, SizeTooLarge

ENUMERATION_CAP = 5


# ---------------------------------------------------------------- bitsets

def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subset_key(mask: int):
    """Canonical order on subsets: by size, then lexicographically on members."""
    return (mask.bit_count(), members(mask))


def full_mask(n: int) -> int:
    return (1 << n) - 1


# ---------------------------------------------------------------- core type

@dataclass(frozen=True)
class FiniteMonoid:
    table: tuple[tuple[int, ...], ...]
    names: Optional[tuple[str, ...]] = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.table)

    @property
    def identity(self) -> int:
        return 0

    def mul(self, x: int, y: int) -> int:
        return self.table[x][y]

    def prod(self, *xs: int) -> int:
        r = 0
        for x in xs:
            r = self.table[r][x]
        return r

    def elements(self):
        return range(len(self.table))

    def name(self, x: int) -> str:
        return self.names[x] if self.names else str(x)

    def all_mask(self) -> int:
        return full_mask(self.size)

    def __repr__(self):
        return f"FiniteMonoid(size={self.size}, table={[list(r) for r in self.table]})"


def _check_shape(table):
    n = len(table)
    if n == 0:
        raise OutOfRange("monoid table must be non-empty")
    for i, row in enumerate(table):
        if len(row) != n:
            raise OutOfRange(f"row {i} has length {len(row)}, expected {n}", witness=(i,))
        for j, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool) or not 0 <= v < n:
                raise OutOfRange(f"entry ({i},{j}) = {v!r} out of range", witness=(i, j))
    return n


def find_associativity_failure(table):
    n = len(table)
    for i in range(n):
        ti = table[i]
        for j in range(n):
            ij = ti[j]
            tij = table[ij]
            tj = table[j]
            for k in range(n):
                if tij[k] != ti[tj[k]]:
                    return (i, j, k)
    return None


def reindex_identity(table, identity: int):
    """Relabel so that `identity` becomes element 0.

    Returns (new_table, order) where order[new] = old index.
    """
    n = len(table)
    order = [identity] + [x for x in range(n) if x != identity]
    pos = {old: new for new, old in enumerate(order)}
    new = tuple(tuple(pos[table[order[i]][order[j]]] for j in range(n)) for i in range(n))
    return new, tuple(order)


def detect_identity(table) -> Optional[int]:
    n = len(table)
    for e in range(n):
        if all(table[e][j] == j and table[j][e] == j for j in range(n)):
            return e
    return None


def validate_monoid(table, identity: int = 0, names=None) -> FiniteMonoid:
    """Check a multiplication table and return it as a monoid with identity 0.

    If `identity` is not 0 the elements are relabelled (identity moved to the
    front, the others keeping their relative order).
    """
    n = _check_shape(table)
    if not isinstance(identity, int) or not 0 <= identity < n:
        raise OutOfRange(f"identity index {identity!r} out of range", witness=(identity,))
    for j in range(n):
        if table[identity][j] != j or table[j][identity] != j:
            raise BadIdentity(f"element {identity} is not a two-sided identity (fails at {j})", witness=(identity, j))
    bad = find_associativity_failure(table)
    if bad is not None:
        i, j, k = bad
        raise NotAssociative(f"({i}*{j})*{k} != {i}*({j}*{k})", witness=bad)
    if identity != 0:
        new, order = reindex_identity(table, identity)
        if names is not None:
            names = tuple(names[o] for o in order)
        return FiniteMonoid(new, tuple(names) if names else None)
    return FiniteMonoid(tuple(tuple(r) for r in table), tuple(names) if names else None)


# ---------------------------------------------------------------- elements and submonoids

def idempotents(M: FiniteMonoid) -> int:
    return mask_of(x for x in M.elements() if M.table[x][x] == x)


def submonoid_generated(M: FiniteMonoid, S: int) -> int:
    got = 1  # identity
    frontier = [0]
    gens = members(S)
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = M.table[x][g]
                if not got >> y & 1:
                    got |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return got


def right_factorable_closure(M: FiniteMonoid, S: int) -> int:
    """Smallest submonoid containing S that is closed under right factors.

    Iterates S' = {m | t*m in <S> for some t in <S>} to a fixed point.
    """
    if S == 0:
        raise EmptyGenerators("right-factorable closure needs a non-empty subset")
    cur = S
    while True:
        gen = submonoid_generated(M, cur)
        nxt = 0
        gl = members(gen)
        for m in M.elements():
            if any(gen >> M.table[t][m] & 1 for t in gl):
                nxt |= 1 << m
        nxt |= cur
        if nxt == cur:
            return submonoid_generated(M, cur)
        cur = nxt


def local_submonoid(M: FiniteMonoid, e: int):
    """The monoid eMe with identity e.

    Returns (monoid, embedding) where embedding[k] is the element of M that
    the k-th element of eMe corresponds to (embedding[0] == e).
    """
    if not 0 <= e < M.size:
        raise OutOfRange(f"element {e} out of range", witness=(e,))
    if M.table[e][e] != e:
        raise NotIdempotent(f"element {e} is not idempotent", witness=(e,))
    carrier = sorted({M.prod(e, x, e) for x in M.elements()})
    carrier.remove(e)
    carrier = [e] + carrier
    pos = {x: i for i, x in enumerate(carrier)}
    table = tuple(tuple(pos[M.table[x][y]] for y in carrier) for x in carrier)
    names = tuple(M.name(x) for x in carrier) if M.names else None
    return FiniteMonoid(table, names), tuple(carrier)


@dataclass(frozen=True)
class MoritaWitness:
    e: int
    beta: int
    beta_prime: int


def morita_witnesses(M: FiniteMonoid) -> list[MoritaWitness]:
    """All triples (e, b, b') with e idempotent, b*b' = 1 and b*e = b."""
    out = []
    idem = members(idempotents(M))
    for e in idem:
        for b in M.elements():
            if M.table[b][e] != b:
                continue
            for bp in M.elements():
                if M.table[b][bp] == 0:
                    out.append(MoritaWitness(e, b, bp))
    return out


# ---------------------------------------------------------------- isomorphism

def power_profile(M: FiniteMonoid, x: int) -> tuple[int, int]:
    """(index, period) of the cyclic subsemigroup generated by x."""
    seen = {}
    y = x
    k = 1
    while y not in seen:
        seen[y] = k
        y = M.table[y][x]
        k += 1
    return seen[y], k - seen[y]


def element_invariants(M: FiniteMonoid, x: int):
    row = M.table[x]
    col = [M.table[y][x] for y in M.elements()]
    return (
        row[x] == x,
        power_profile(M, x),
        all(v == x for v in row),  # right absorbing
        all(v == x for v in col),  # left absorbing
        len(set(row)),
        len(set(col)),
    )


def monoid_invariant(M: FiniteMonoid):
    return (M.size, tuple(sorted(element_invariants(M, x) for x in M.elements())))


def monoid_isomorphism(M: FiniteMonoid, N: FiniteMonoid) -> Optional[tuple[int, ...]]:
    """A bijection phi (as a tuple, phi[x] in N) with phi(xy) = phi(x)phi(y), or None."""
    n = M.size
    if n != N.size:
        return None
    inv_m = [element_invariants(M, x) for x in M.elements()]
    inv_n = [element_invariants(N, x) for x in N.elements()]
    if sorted(inv_m) != sorted(inv_n):
        return None
    cands = [[y for y in N.elements() if inv_n[y] == inv_m[x]] for x in M.elements()]
    if 0 not in cands[0]:
        return None
    phi = [-1] * n
    used = [False] * n

    def consistent(x):
        for y in range(x + 1):
            for a, b in ((x, y), (y, x)):
                p = M.table[a][b]
                if phi[p] >= 0 and phi[p] != N.table[phi[a]][phi[b]]:
                    return False
        return True

    def search(x):
        if x == n:
            return True
        for y in cands[x]:
            if used[y]:
                continue
            phi[x] = y
            used[y] = True
            if consistent(x) and search(x + 1):
                return True
            phi[x] = -1
            used[y] = False
        return False

    phi[0] = 0
    used[0] = True
    if search(1) if n > 1 else True:
        if all(phi[M.table[a][b]] == N.table[phi[a]][phi[b]] for a in range(n) for b in range(n)):
            return tuple(phi)
    return None


def relabel(M: FiniteMonoid, perm) -> FiniteMonoid:
    """Image of M under the bijection x -> perm[x] (perm[0] must be 0)."""
    n = M.size
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    table = tuple(tuple(perm[M.table[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
    names = tuple(M.names[inv[i]] for i in range(n)) if M.names else None
    return FiniteMonoid(table, names)


def canonical_form(M: FiniteMonoid) -> tuple:
    """Lexicographically least relabelled table (identity fixed at 0)."""
    n = M.size
    best = None
    for rest in itertools.permutations(range(1, n)):
        perm = (0,) + rest
        t = relabel(M, perm).table
        if best is None or t < best:
            best = t
    return best


# ---------------------------------------------------------------- ideals and profile

def right_ideals(M: FiniteMonoid) -> list[int]:
    out = []
    for A in range(1 << M.size):
        mem = members(A)
        if all(A >> M.table[x][m] & 1 for x in mem for m in M.elements()):
            out.append(A)
    return sorted(out, key=subset_key)


def opposite(M: FiniteMonoid) -> FiniteMonoid:
    n = M.size
    return FiniteMonoid(tuple(tuple(M.table[j][i] for j in range(n)) for i in range(n)), M.names)


@dataclass(frozen=True)
class MonoidProfile:
    is_group: bool
    has_right_absorbing: bool
    has_left_absorbing: bool
    has_zero: bool
    is_right_ore: bool
    is_right_collapsible: bool
    is_left_cancellative: bool
    is_right_cancellative: bool
    right_ideal_count: int


def right_absorbing(M: FiniteMonoid) -> int:
    return mask_of(x for x in M.elements() if all(v == x for v in M.table[x]))


def left_absorbing(M: FiniteMonoid) -> int:
    return mask_of(x for x in M.elements() if all(M.table[y][x] == x for y in M.elements()))


def is_group(M: FiniteMonoid) -> bool:
    return all(0 in M.table[x] for x in M.elements())


def is_right_ore(M: FiniteMonoid) -> bool:
    rows = [set(r) for r in M.table]
    return all(rows[a] & rows[b] for a in M.elements() for b in M.elements())


def is_left_ore(M: FiniteMonoid) -> bool:
    cols = [{M.table[y][x] for y in M.elements()} for x in M.elements()]
    return all(cols[a] & cols[b] for a in M.elements() for b in M.elements())


def is_right_collapsible(M: FiniteMonoid) -> bool:
    T = M.table
    return all(any(T[a][m] == T[b][m] for m in M.elements()) for a in M.elements() for b in M.elements())


def algebraic_profile(M: FiniteMonoid) -> MonoidProfile:
    T = M.table
    E = list(M.elements())
    ra = right_absorbing(M)
    la = left_absorbing(M)
    return MonoidProfile(
        is_group=is_group(M),
        has_right_absorbing=ra != 0,
        has_left_absorbing=la != 0,
        has_zero=(ra & la) != 0,
        is_right_ore=is_right_ore(M),
        is_right_collapsible=is_right_collapsible(M),
        is_left_cancellative=all(len(set(T[a])) == len(E) for a in E),
        is_right_cancellative=all(len({T[y][a] for y in E}) == len(E) for a in E),
        right_ideal_count=len(right_ideals(M)),
    )


# ---------------------------------------------------------------- enumeration

def _labelled_tables(n: int):
    """All associative tables on {0..n-1} with identity 0, by backtracking."""
    t = [[-1] * n for _ in range(n)]
    for i in range(n):
        t[0][i] = i
        t[i][0] = i
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]
    rng = range(n)

    def ok():
        for x in rng:
            tx = t[x]
            for y in rng:
                xy = tx[y]
                if xy < 0:
                    continue
                txy = t[xy]
                ty = t[y]
                for z in rng:
                    a = txy[z]
                    if a < 0:
                        continue
                    yz = ty[z]
                    if yz < 0:
                        continue
                    b = tx[yz]
                    if b >= 0 and a != b:
                        return False
        return True

    def go(k):
        if k == len(cells):
            yield tuple(tuple(r) for r in t)
            return
        i, j = cells[k]
        for v in rng:
            t[i][j] = v
            if ok():
                yield from go(k + 1)
        t[i][j] = -1

    yield from go(0)


def enumerate_monoids(n: int) -> list[FiniteMonoid]:
    """One representative per isomorphism class of monoids of order n.

    Representatives are in canonical form and the list is sorted by table.
    """
    if n < 1:
        raise OutOfRange("order must be positive", witness=(n,))
    if n > ENUMERATION_CAP:
        raise SizeTooLarge(f"enumeration capped at order {ENUMERATION_CAP}", size=n, cap=ENUMERATION_CAP)
    forms = set()
    for t in _labelled_tables(n):
        forms.add(canonical_form(FiniteMonoid(t)))
    return [FiniteMonoid(t) for t in sorted(forms)]


# ---------------------------------------------------------------- standard examples

def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(((0,),), ("1",))


def cyclic_group(n: int) -> FiniteMonoid:
    return FiniteMonoid(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def m3() -> FiniteMonoid:
    """{1, a, b} with a and b right absorbing."""
    return FiniteMonoid(((0, 1, 2), (1, 1, 1), (2, 2, 2)), ("1", "a", "b"))


def zero_monoid() -> FiniteMonoid:
    """{1, z} with z*z = z."""
    return FiniteMonoid(((0, 1), (1, 1)), ("1", "z"))


def full_transformation_monoid(k: int) -> FiniteMonoid:
    """All maps {0..k-1} -> itself; x*y means "first x, then y" acting on the right.

    The identity map is listed first.
    """
    maps = list(itertools.product(range(k), repeat=k))
    ident = tuple(range(k))
    maps.remove(ident)
    maps = [ident] + maps
    pos = {f: i for i, f in enumerate(maps)}
    table = tuple(tuple(pos[tuple(g[f[p]] for p in range(k))] for g in maps) for f in maps)
    names = tuple("".join(map(str, f)) for f in maps)
    return FiniteMonoid(table, names)
