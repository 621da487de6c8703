"""Extension systems, the Fraisse chain builder and factorization-system checks.

Systems are given on the extension side: the class E consists of the
morphisms along which we extend, costability completes a span (e, f) to a
commuting square with the new leg in E, and joint embedding produces a
cospan with both legs in E. No dualization happens anywhere in this module.
"""
from __future__ import annotations

import itertools
import json
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from math import isqrt
from typing import Optional

from .errors import MalformedCategory, OracleViolation, UnknownSystem


# ---------------------------------------------------------------- pairing

def cantor_pair(a: int, b: int) -> int:
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def triple_pair(i: int, j: int, k: int) -> int:
    return cantor_pair(cantor_pair(i, j), k)


def triple_unpair(z: int) -> tuple[int, int, int]:
    x, k = cantor_unpair(z)
    i, j = cantor_unpair(x)
    return i, j, k


# ---------------------------------------------------------------- systems

@dataclass(frozen=True)
class Morphism:
    dom: object
    cod: object
    data: object


class ExtensionSystem(ABC):
    """A countable category with a class E of extensions.

    Subclasses provide the object enumeration, finite hom-sets, composition,
    membership in E, and the costability and joint-embedding oracles.
    """

    name = "system"

    def __init__(self):
        self._ext_cache: list = []
        self._ext_cursor = 0  # next Cantor index of object pairs to scan
        self._ext_done = False

    @abstractmethod
    def object(self, i: int):
        """The i-th object, or None once the enumeration is exhausted."""

    @abstractmethod
    def hom(self, a, b) -> list:
        ...

    @abstractmethod
    def compose(self, g: Morphism, f: Morphism) -> Morphism:
        """g after f."""

    @abstractmethod
    def identity(self, a) -> Morphism:
        ...

    @abstractmethod
    def in_class(self, f: Morphism) -> bool:
        ...

    @abstractmethod
    def costability(self, e: Morphism, f: Morphism):
        """Given e: A -> B in E and f: A -> C return (e2: C -> P in E, g: B -> P)."""

    @abstractmethod
    def joint_embedding(self, a, b):
        """Return (ea: A -> W, eb: B -> W), both in E."""

    def object_count(self) -> Optional[int]:
        """Number of objects if the enumeration is finite."""
        return None

    def describe(self, a):
        return a

    def describe_morphism(self, f: Morphism):
        return {"dom": self.describe(f.dom), "cod": self.describe(f.cod), "data": f.data}

    def extend(self, e: Morphism, h: Morphism) -> Optional[Morphism]:
        """Some g with g after e equal to h, or None."""
        for g in self.hom(e.cod, h.cod):
            if self.compose(g, e) == h:
                return g
        return None

    def extension(self, i: int) -> Optional[Morphism]:
        """The i-th morphism of E, listing E-morphisms between object pairs in Cantor order."""
        count = self.object_count()
        # with n objects every pair has Cantor index at most that of (n-1, n-1)
        last = None if count is None else cantor_pair(count - 1, count - 1)
        while len(self._ext_cache) <= i and not self._ext_done:
            if last is not None and self._ext_cursor > last:
                self._ext_done = True
                break
            a_idx, b_idx = cantor_unpair(self._ext_cursor)
            self._ext_cursor += 1
            a, b = self.object(a_idx), self.object(b_idx)
            if a is None or b is None:
                continue
            for f in self.hom(a, b):
                if self.in_class(f):
                    self._ext_cache.append(f)
        return self._ext_cache[i] if i < len(self._ext_cache) else None

    def objects_upto(self, k: int) -> list:
        out = []
        for i in range(k):
            a = self.object(i)
            if a is None:
                break
            out.append(a)
        return out


def checked_costability(S: ExtensionSystem, e: Morphism, f: Morphism):
    if not S.in_class(e) or e.dom != f.dom:
        raise OracleViolation("costability called on an invalid span", witness=(e, f))
    e2, g = S.costability(e, f)
    if e2.dom != f.cod or g.dom != e.cod or e2.cod != g.cod:
        raise OracleViolation("costability returned a square with mismatched ends", witness=(e2, g))
    if not S.in_class(e2):
        raise OracleViolation("costability leg is not in the extension class", witness=e2)
    if S.compose(e2, f) != S.compose(g, e):
        raise OracleViolation("costability square does not commute", witness=(e, f, e2, g))
    return e2, g


def checked_joint_embedding(S: ExtensionSystem, a, b):
    ea, eb = S.joint_embedding(a, b)
    if ea.dom != a or eb.dom != b or ea.cod != eb.cod:
        raise OracleViolation("joint embedding returned a malformed cospan", witness=(ea, eb))
    if not (S.in_class(ea) and S.in_class(eb)):
        raise OracleViolation("joint embedding leg is not in the extension class", witness=(ea, eb))
    return ea, eb


def spot_check(S: ExtensionSystem, objects: int = 4) -> None:
    """Identities lie in E and E is closed under composition, on a sample."""
    obs = S.objects_upto(objects)
    for a in obs:
        if not S.in_class(S.identity(a)):
            raise OracleViolation("identity outside the extension class", witness=a)
    for a, b, c in itertools.product(obs, repeat=3):
        for f in S.hom(a, b):
            if not S.in_class(f):
                continue
            for g in S.hom(b, c):
                if S.in_class(g) and not S.in_class(S.compose(g, f)):
                    raise OracleViolation("extension class not closed under composition", witness=(f, g))


# ---------------------------------------------------------------- builtin systems

class TrivialSystem(ExtensionSystem):
    """One object, one morphism."""

    name = "trivial"

    def object(self, i):
        return "*" if i == 0 else None

    def object_count(self):
        return 1

    def hom(self, a, b):
        return [Morphism("*", "*", "id")]

    def compose(self, g, f):
        return Morphism("*", "*", "id")

    def identity(self, a):
        return Morphism("*", "*", "id")

    def in_class(self, f):
        return True

    def costability(self, e, f):
        return self.identity("*"), self.identity("*")

    def joint_embedding(self, a, b):
        return self.identity("*"), self.identity("*")


class LinearOrders(ExtensionSystem):
    """Finite linear orders [n] = {0 < ... < n-1} with order embeddings.

    Object i is [i]; a morphism [a] -> [b] is its strictly increasing list of values.
    """

    name = "lin_orders"

    def object(self, i):
        return i

    def hom(self, a, b):
        return [Morphism(a, b, c) for c in itertools.combinations(range(b), a)]

    def compose(self, g, f):
        return Morphism(f.dom, g.cod, tuple(g.data[v] for v in f.data))

    def identity(self, a):
        return Morphism(a, a, tuple(range(a)))

    def in_class(self, f):
        d = f.data
        return len(d) == f.dom and all(0 <= v < f.cod for v in d) and all(x < y for x, y in zip(d, d[1:]))

    def costability(self, e, f):
        # amalgamate B and C over A: new points of B go just below the image
        # of the nearest point of A above them (or at the very top)
        inv = {v: i for i, v in enumerate(e.data)}
        keys = [(c, 0, 0) for c in range(f.cod)]
        new = {}
        gap = 0
        for y in range(e.cod):
            if y in inv:
                gap += 1
                continue
            upper = f.data[gap] if gap < len(f.data) else f.cod
            new[y] = (upper, -1, y)
            keys.append(new[y])
        keys.sort()
        pos = {k: i for i, k in enumerate(keys)}
        P = len(keys)
        e2 = Morphism(f.cod, P, tuple(pos[(c, 0, 0)] for c in range(f.cod)))
        g = tuple(pos[(f.data[inv[y]], 0, 0)] if y in inv else pos[new[y]] for y in range(e.cod))
        return e2, Morphism(e.cod, P, g)

    def joint_embedding(self, a, b):
        # the a points of A are spread over the b+1 gaps of B, ends included
        gaps = []
        for i in range(a):
            gaps.append(0 if a == 1 else round(i * b / (a - 1)))
        keys = [(y, 1) for y in range(b)] + [(g, 0, i) for i, g in enumerate(gaps)]
        keys.sort()
        pos = {k: i for i, k in enumerate(keys)}
        W = a + b
        ea = Morphism(a, W, tuple(pos[(g, 0, i)] for i, g in enumerate(gaps)))
        eb = Morphism(b, W, tuple(pos[(y, 1)] for y in range(b)))
        return ea, eb

    def extend(self, e, h):
        # place the new points of B inside the matching gaps of the image of h
        inv = {v: i for i, v in enumerate(e.data)}
        out = []
        lo = -1
        gap = 0
        for y in range(e.cod):
            if y in inv:
                v = h.data[inv[y]]
                if v <= lo:
                    return None
                out.append(v)
                lo = v
                gap += 1
            else:
                hi = h.data[gap] if gap < len(h.data) else h.cod
                if lo + 1 >= hi:
                    return None
                lo += 1
                out.append(lo)
        return Morphism(e.cod, h.cod, tuple(out))


class FinsetInjections(ExtensionSystem):
    """Finite sets {0..n-1} with injections; object i has i elements."""

    name = "finset_inj"

    def object(self, i):
        return i

    def hom(self, a, b):
        return [Morphism(a, b, p) for p in itertools.permutations(range(b), a)]

    def compose(self, g, f):
        return Morphism(f.dom, g.cod, tuple(g.data[v] for v in f.data))

    def identity(self, a):
        return Morphism(a, a, tuple(range(a)))

    def in_class(self, f):
        return len(f.data) == f.dom and len(set(f.data)) == f.dom and all(0 <= v < f.cod for v in f.data)

    def costability(self, e, f):
        # pushout: C followed by the points of B outside the image of e
        inv = {v: i for i, v in enumerate(e.data)}
        extra = [y for y in range(e.cod) if y not in inv]
        P = f.cod + len(extra)
        e2 = Morphism(f.cod, P, tuple(range(f.cod)))
        where = {y: f.cod + k for k, y in enumerate(extra)}
        g = tuple(f.data[inv[y]] if y in inv else where[y] for y in range(e.cod))
        return e2, Morphism(e.cod, P, g)

    def joint_embedding(self, a, b):
        W = a + b
        return Morphism(a, W, tuple(range(b, W))), Morphism(b, W, tuple(range(b)))

    def extend(self, e, h):
        inv = {v: i for i, v in enumerate(e.data)}
        used = set(h.data)
        spare = (x for x in range(h.cod) if x not in used)
        out = []
        for y in range(e.cod):
            if y in inv:
                out.append(h.data[inv[y]])
            else:
                nxt = next(spare, None)
                if nxt is None:
                    return None
                out.append(nxt)
        return Morphism(e.cod, h.cod, tuple(out))


class CyclicPGroups(ExtensionSystem):
    """Cyclic groups C_{p^k} with homomorphisms; E is the injective ones.

    Object k stands for C_{p^k}; a morphism C_{p^a} -> C_{p^b} is x -> c*x,
    stored as c modulo p^b.
    """

    def __init__(self, p: int = 2):
        super().__init__()
        if p < 2 or any(p % q == 0 for q in range(2, isqrt(p) + 1)):
            raise UnknownSystem(f"{p} is not a prime")
        self.p = p
        self.name = f"cyclic_p_groups({p})"

    def object(self, i):
        return i

    def hom(self, a, b):
        q = self.p ** b
        return [Morphism(a, b, c) for c in range(q) if (c * self.p ** a) % q == 0]

    def compose(self, g, f):
        return Morphism(f.dom, g.cod, (g.data * f.data) % self.p ** g.cod)

    def identity(self, a):
        return Morphism(a, a, 1 % self.p ** a)

    def in_class(self, f):
        a, b, c = f.dom, f.cod, f.data
        if a > b or (c * self.p ** a) % self.p ** b:
            return False
        # injective iff no non-zero x < p^a has c*x = 0 mod p^b
        return a == 0 or (c * self.p ** (a - 1)) % self.p ** b != 0

    def costability(self, e, f):
        p = self.p
        a, b, c = e.dom, e.cod, f.cod
        N = max(b, c)
        q = p ** N
        e2 = Morphism(c, N, p ** (N - c) % q)
        if a == 0:
            return e2, Morphism(b, N, 0)
        unit = e.data // p ** (b - a)
        inv = pow(unit, -1, q)
        g = ((p ** (N - c) * f.data) // p ** (b - a)) * inv % q
        return e2, Morphism(b, N, g)

    def joint_embedding(self, a, b):
        N = max(a, b)
        q = p_n = self.p ** N
        return Morphism(a, N, self.p ** (N - a) % q), Morphism(b, N, self.p ** (N - b) % p_n)


BUILTIN = ("trivial", "lin_orders", "finset_inj", "cyclic_p_groups")


def builtin_system(name: str) -> ExtensionSystem:
    """Look up a builtin system; cyclic groups take an optional prime, e.g. cyclic_p_groups(3)."""
    if name == "trivial":
        return TrivialSystem()
    if name == "lin_orders":
        return LinearOrders()
    if name == "finset_inj":
        return FinsetInjections()
    if name.startswith("cyclic_p_groups"):
        rest = name[len("cyclic_p_groups"):]
        if not rest:
            return CyclicPGroups(2)
        if rest.startswith("(") and rest.endswith(")") and rest[1:-1].isdigit():
            return CyclicPGroups(int(rest[1:-1]))
    raise UnknownSystem(f"unknown system {name!r}; choose from {', '.join(BUILTIN)}")


# ---------------------------------------------------------------- chains

@dataclass(frozen=True)
class StepRecord:
    step: int
    problem: tuple  # (i', j', k')
    extension: Optional[dict]
    costability: str  # "applied", "no extension", "no morphism"
    joint_object: Optional[object]
    joint: str  # "applied", "exhausted"
    stage: object

    def as_dict(self):
        return {
            "step": self.step,
            "problem": list(self.problem),
            "extension": self.extension,
            "costability": self.costability,
            "joint_object": self.joint_object,
            "joint": self.joint,
            "stage": self.stage,
        }


@dataclass
class Chain:
    system: ExtensionSystem
    stages: list
    links: list
    provenance: list = field(default_factory=list)

    def link(self, k: int, k2: int) -> Morphism:
        """u_k^{k2}: U_k -> U_{k2} for k <= k2."""
        f = self.system.identity(self.stages[k])
        for i in range(k, k2):
            f = self.system.compose(self.links[i], f)
        return f

    def provenance_json(self) -> str:
        return json.dumps([r.as_dict() for r in self.provenance], sort_keys=True, separators=(",", ":"))


def build_chain(S: ExtensionSystem, steps: int, seed: int = 0) -> Chain:
    U0 = S.object(seed)
    if U0 is None:
        raise UnknownSystem(f"seed object {seed} does not exist")
    stages = [U0]
    links = []
    cache = {}  # composites u_k^{current} for the current top stage
    log = []
    for k in range(steps):
        Uk = stages[k]
        cache = {kk: S.compose(links[k - 1], cache[kk]) for kk in cache} if k else {}
        cache[k] = S.identity(Uk)
        i, j, k2 = triple_unpair(k)
        t = S.extension(i)
        step_link = S.identity(Uk)
        ext_desc = S.describe_morphism(t) if t is not None else None
        if t is None:
            status = "no extension"
        else:
            homs = S.hom(t.dom, stages[k2])
            if j < len(homs):
                h = S.compose(cache[k2], homs[j])
                e2, _ = checked_costability(S, t, h)
                step_link = e2
                status = "applied"
            else:
                status = "no morphism"
        A = S.object(k + 1)
        if A is None:
            joint = "exhausted"
            link = step_link
        else:
            _, eb = checked_joint_embedding(S, A, step_link.cod)
            link = S.compose(eb, step_link)
            joint = "applied"
        if not S.in_class(link):
            raise OracleViolation("chain link is not in the extension class", witness=link)
        links.append(link)
        stages.append(link.cod)
        log.append(
            StepRecord(
                k, (i, j, k2), ext_desc, status, S.describe(A) if A is not None else None, joint, S.describe(link.cod)
            )
        )
    return Chain(S, stages, links, log)


@dataclass(frozen=True)
class Problem:
    extension: Morphism
    stage: int
    morphism: Morphism


def unsolved_problems(ch: Chain, extensions, pose_bound: int, solve_bound: int) -> list:
    """Problems (e, f: A -> U_k), k <= pose_bound, with no solution g: B -> U_k2 for k <= k2 <= solve_bound."""
    S = ch.system
    last = len(ch.stages) - 1
    out = []
    for e in extensions:
        for k in range(min(pose_bound, last) + 1):
            for f in S.hom(e.dom, ch.stages[k]):
                solved = False
                for k2 in range(k, min(solve_bound, last) + 1):
                    if S.extend(e, S.compose(ch.link(k, k2), f)) is not None:
                        solved = True
                        break
                if not solved:
                    out.append(Problem(e, k, f))
    return out


def injectivity_deficit(ch: Chain, stage_bound: int, problem_bound: int) -> list:
    S = ch.system
    obs = S.objects_upto(problem_bound)
    exts = [f for a in obs for b in obs for f in S.hom(a, b) if S.in_class(f)]
    return unsolved_problems(ch, exts, problem_bound, stage_bound)


def universality_stage(ch: Chain, A) -> Optional[int]:
    S = ch.system
    for k, U in enumerate(ch.stages):
        if any(S.in_class(f) for f in S.hom(A, U)):
            return k
    return None


# ---------------------------------------------------------------- finite categories

@dataclass
class FiniteCategory:
    objects: list
    morphisms: list  # ids
    dom: dict
    cod: dict
    table: dict  # (g, f) -> g after f, for cod(f) == dom(g)
    identities: dict  # object -> id

    def compose(self, g, f):
        return self.table[g, f]

    def hom(self, a, b):
        return [m for m in self.morphisms if self.dom[m] == a and self.cod[m] == b]

    def is_iso(self, f):
        return any(
            self.dom[g] == self.cod[f] and self.table[g, f] == self.identities[self.dom[f]]
            and self.table[f, g] == self.identities[self.cod[f]]
            for g in self.hom(self.cod[f], self.dom[f])
        )


def parse_category(data: dict) -> tuple:
    """Read {"objects", "morphisms", "compose", "T", "M"}; returns (category, T, M).

    compose[i][j] is the id of morphisms[i] after morphisms[j], or null when
    they are not composable.
    """
    try:
        objects = list(data["objects"])
        mors = data["morphisms"]
        comp = data["compose"]
    except (KeyError, TypeError) as exc:
        raise MalformedCategory(f"missing field {exc}") from None
    ids = [m["id"] for m in mors]
    if len(set(ids)) != len(ids):
        raise MalformedCategory("duplicate morphism ids")
    dom = {}
    cod = {}
    for m in mors:
        if m["dom"] not in objects or m["cod"] not in objects:
            raise MalformedCategory(f"morphism {m['id']!r} has an unknown end", witness=m["id"])
        dom[m["id"]] = m["dom"]
        cod[m["id"]] = m["cod"]
    if len(comp) != len(ids) or any(len(row) != len(ids) for row in comp):
        raise MalformedCategory("composition table has the wrong shape")
    table = {}
    for gi, g in enumerate(ids):
        for fi, f in enumerate(ids):
            v = comp[gi][fi]
            if cod[f] == dom[g]:
                if v not in dom:
                    raise MalformedCategory(f"{g} after {f} is missing", witness=(g, f))
                if dom[v] != dom[f] or cod[v] != cod[g]:
                    raise MalformedCategory(f"{g} after {f} has the wrong type", witness=(g, f))
                table[g, f] = v
            elif v is not None:
                raise MalformedCategory(f"{g} after {f} given but not composable", witness=(g, f))
    identities = {}
    for a in objects:
        cands = [
            i for i in ids
            if dom[i] == a and cod[i] == a
            and all(table[i, f] == f for f in ids if cod[f] == a)
            and all(table[g, i] == g for g in ids if dom[g] == a)
        ]
        if len(cands) != 1:
            raise MalformedCategory(f"object {a!r} needs exactly one identity", witness=a)
        identities[a] = cands[0]
    for (g, f), gf in table.items():
        for h in ids:
            if dom[h] == cod[g] and table[h, gf] != table[table[h, g], f]:
                raise MalformedCategory("composition is not associative", witness=(h, g, f))
    C = FiniteCategory(objects, ids, dom, cod, table, identities)
    T = list(data.get("T", []))
    Mc = list(data.get("M", []))
    for x in T + Mc:
        if x not in dom:
            raise MalformedCategory(f"unknown morphism {x!r} in a class", witness=x)
    return C, T, Mc


def dump_category(C: FiniteCategory, T, Mc) -> dict:
    comp = [[C.table.get((g, f)) for f in C.morphisms] for g in C.morphisms]
    return {
        "objects": list(C.objects),
        "morphisms": [{"id": m, "dom": C.dom[m], "cod": C.cod[m]} for m in C.morphisms],
        "compose": comp,
        "T": list(T),
        "M": list(Mc),
    }


@dataclass(frozen=True)
class OfsReport:
    factorization_ok: bool
    uniqueness_ok: bool
    lifting_ok: bool
    stability_ok: bool
    joint_covering_ok: bool
    witnesses: dict = field(default_factory=dict, compare=False, hash=False)

    def as_dict(self):
        return {
            "factorization_ok": self.factorization_ok,
            "uniqueness_ok": self.uniqueness_ok,
            "lifting_ok": self.lifting_ok,
            "stability_ok": self.stability_ok,
            "joint_covering_ok": self.joint_covering_ok,
            "witnesses": self.witnesses,
        }


def ofs_validate(C: FiniteCategory, T, Mc) -> OfsReport:
    T, Mc = set(T), set(Mc)
    ids = C.morphisms
    wit = {}

    # every morphism is m after t with t in T, m in Mc
    facts = {h: [] for h in ids}
    for t in T:
        for m in Mc:
            if C.dom[m] == C.cod[t]:
                facts[C.table[m, t]].append((t, m))
    bad = [h for h in ids if not facts[h]]
    if bad:
        wit["factorization"] = bad[0]

    # any two factorizations differ by a unique comparison isomorphism
    uniq_bad = None
    for h in ids:
        for (t, m), (t2, m2) in itertools.combinations(facts[h], 2):
            links = [
                i for i in C.hom(C.cod[t], C.cod[t2])
                if C.is_iso(i) and C.table[i, t] == t2 and C.table[m2, i] == m
            ]
            if len(links) != 1:
                uniq_bad = (h, t, m, t2, m2)
                break
        if uniq_bad:
            break
    if uniq_bad:
        wit["uniqueness"] = uniq_bad

    # unique diagonal fillers for commuting squares m u = v t
    lift_bad = None
    for t in T:
        for m in Mc:
            for u in C.hom(C.dom[t], C.dom[m]):
                for v in C.hom(C.cod[t], C.cod[m]):
                    if C.table[m, u] != C.table[v, t]:
                        continue
                    fillers = [
                        d for d in C.hom(C.cod[t], C.dom[m])
                        if C.table[d, t] == u and C.table[m, d] == v
                    ]
                    if len(fillers) != 1:
                        lift_bad = (t, m, u, v)
                        break
                if lift_bad:
                    break
            if lift_bad:
                break
        if lift_bad:
            break
    if lift_bad:
        wit["lifting"] = lift_bad

    # T: identities, composition, completion of cospans against T
    stab_bad = None
    for a in C.objects:
        if C.identities[a] not in T:
            stab_bad = ("identity", C.identities[a])
            break
    if not stab_bad:
        for f in T:
            for g in T:
                if C.dom[g] == C.cod[f] and C.table[g, f] not in T:
                    stab_bad = ("composition", g, f)
                    break
            if stab_bad:
                break
    if not stab_bad:
        for f in T:
            for g in ids:
                if C.cod[g] != C.cod[f]:
                    continue
                ok = any(
                    C.cod[f2] == C.dom[g] and C.dom[g2] == C.dom[f2] and C.cod[g2] == C.dom[f]
                    and C.table[f, g2] == C.table[g, f2]
                    for f2 in T for g2 in ids
                )
                if not ok:
                    stab_bad = ("square", f, g)
                    break
            if stab_bad:
                break
    if stab_bad:
        wit["stability"] = stab_bad

    # every pair of objects has a span with both legs in T
    jc_bad = None
    for a, b in itertools.combinations_with_replacement(C.objects, 2):
        if not any(
            C.dom[f] == C.dom[g] and C.cod[f] == a and C.cod[g] == b
            for f in T for g in T
        ):
            jc_bad = (a, b)
            break
    if jc_bad:
        wit["joint_covering"] = jc_bad

    return OfsReport(
        factorization_ok="factorization" not in wit,
        uniqueness_ok="uniqueness" not in wit,
        lifting_ok="lifting" not in wit,
        stability_ok="stability" not in wit,
        joint_covering_ok="joint_covering" not in wit,
        witnesses=wit,
    )


class CategorySystem(ExtensionSystem):
    """A finite category with a chosen class E, oracles found by exhaustive search."""

    def __init__(self, C: FiniteCategory, E, name="category"):
        super().__init__()
        self.C = C
        self.E = set(E)
        self.name = name

    def object(self, i):
        return self.C.objects[i] if i < len(self.C.objects) else None

    def object_count(self):
        return len(self.C.objects)

    def hom(self, a, b):
        return [Morphism(a, b, m) for m in self.C.hom(a, b)]

    def compose(self, g, f):
        return Morphism(f.dom, g.cod, self.C.table[g.data, f.data])

    def identity(self, a):
        return Morphism(a, a, self.C.identities[a])

    def in_class(self, f):
        return f.data in self.E

    def costability(self, e, f):
        for P in self.C.objects:
            for e2 in self.hom(f.cod, P):
                if not self.in_class(e2):
                    continue
                for g in self.hom(e.cod, P):
                    if self.compose(e2, f) == self.compose(g, e):
                        return e2, g
        raise OracleViolation("no square completes this span", witness=(e, f))

    def joint_embedding(self, a, b):
        for W in self.C.objects:
            for ea in self.hom(a, W):
                for eb in self.hom(b, W):
                    if self.in_class(ea) and self.in_class(eb):
                        return ea, eb
        raise OracleViolation("objects have no joint embedding", witness=(a, b))
