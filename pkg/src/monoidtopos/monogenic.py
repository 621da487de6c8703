"""Actions of (N, +): a finite set with one endofunction."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import gcd

from .errors import OutOfRange
from .monoid import FiniteMonoid
from .topology import discrete


@dataclass(frozen=True)
class MonogenicAction:
    step: tuple[int, ...]

    @property
    def size(self):
        return len(self.step)

    def iterate(self, x, k):
        for _ in range(k):
            x = self.step[x]
        return x


def monogenic_action(step) -> MonogenicAction:
    step = tuple(step)
    k = len(step)
    for i, v in enumerate(step):
        if not isinstance(v, int) or not 0 <= v < k:
            raise OutOfRange(f"step[{i}] = {v!r} out of range", witness=(i,))
    return MonogenicAction(step)


@dataclass(frozen=True, order=True)
class NabShape:
    a: int  # tail length
    b: int  # cycle length

    def __post_init__(self):
        if self.a < 0 or self.b < 1:
            raise OutOfRange(f"invalid shape ({self.a}, {self.b})")

    @property
    def size(self):
        return self.a + self.b

    def action(self) -> MonogenicAction:
        a, b = self.a, self.b
        return MonogenicAction(tuple(x + 1 if x + 1 < a + b else a for x in range(a + b)))

    def __str__(self):
        return f"N_{{{self.a},{self.b}}}"


def principal_shape(X: MonogenicAction, x: int) -> NabShape:
    seen = {}
    k = 0
    while x not in seen:
        seen[x] = k
        x = X.step[x]
        k += 1
    return NabShape(seen[x], k - seen[x])


@dataclass(frozen=True)
class Classification:
    per_element: tuple  # principal shape generated by each element
    components: tuple  # per component: sorted shapes of its generating elements

    def shapes(self) -> Counter:
        return Counter(s for comp in self.components for s in comp)


def classify(X: MonogenicAction) -> Classification:
    per = tuple(principal_shape(X, x) for x in range(X.size))
    # components of the functional graph
    parent = list(range(X.size))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in enumerate(X.step):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    has_pre = [False] * X.size
    for y in X.step:
        has_pre[y] = True
    comps = {}
    for x in range(X.size):
        comps.setdefault(find(x), []).append(x)
    out = []
    for root in sorted(comps):
        xs = comps[root]
        leaves = [x for x in xs if not has_pre[x]]
        gens = leaves if leaves else [xs[0]]
        out.append(tuple(sorted(per[g] for g in gens)))
    return Classification(per, tuple(sorted(out)))


def epi_exists(s: NabShape, t: NabShape) -> bool:
    return t.a <= s.a and s.b % t.b == 0


def mono_exists(s: NabShape, t: NabShape) -> bool:
    return s.a <= t.a and s.b == t.b


def joint_cover(s: NabShape, t: NabShape) -> NabShape:
    return NabShape(max(s.a, t.a), s.b * t.b // gcd(s.b, t.b))


def equivariant_maps(X: MonogenicAction, Y: MonogenicAction):
    """All maps f with f(step x) = step f(x), pointwise search with pruning."""
    out = []
    f = [-1] * X.size

    def go(i):
        if i == X.size:
            out.append(tuple(f))
            return
        for y in range(Y.size):
            f[i] = y
            good = True
            for x in range(i + 1):
                sx = X.step[x]
                if sx <= i and f[sx] != Y.step[f[x]]:
                    good = False
                    break
            if good:
                go(i + 1)
        f[i] = -1

    go(0)
    return out


def truncated_profinite(K: int):
    """{0, ..., K} under min(p + q, K), with the discrete topology.

    K plays the part of infinity; the topology of every finite truncation of
    the profinite limit is discrete.
    """
    if K < 0:
        raise OutOfRange("depth must be non-negative")
    n = K + 1
    table = tuple(tuple(min(p + q, K) for q in range(n)) for p in range(n))
    names = tuple(str(i) for i in range(K)) + ("inf",)
    M = FiniteMonoid(table, names)
    return M, discrete(M)


def truncation_map(K: int, K2: int) -> tuple[int, ...]:
    """The surjection {0..K} -> {0..K2} for K2 <= K."""
    if K2 > K:
        raise OutOfRange("target depth exceeds source depth")
    return tuple(min(p, K2) for p in range(K + 1))
