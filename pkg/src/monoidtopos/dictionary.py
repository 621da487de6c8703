"""Topos-level flags read off from monoid predicates, with brute-force cross-checks.

Each flag of `topos_profile` is computed from the monoid alone. The
`crosscheck_*` functions recompute the corresponding statement about right
M-sets by exhausting a corpus of small M-sets and report any disagreement.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from . import actions as A
from .errors import MonoidMismatch
from .monoid import FiniteMonoid, algebraic_profile, opposite, right_absorbing, right_ideals


@dataclass(frozen=True)
class ToposProfile:
    boolean_atomic: bool
    de_morgan: bool
    local_: bool
    colocal: bool
    totally_connected: bool
    strongly_connected: bool
    bilocal_quality_type: bool
    strongly_compact: bool
    two_valued: bool
    provenance: dict = field(default_factory=dict, compare=False, hash=False)

    def flags(self) -> dict:
        return {
            k: getattr(self, k)
            for k in (
                "boolean_atomic",
                "de_morgan",
                "local_",
                "colocal",
                "totally_connected",
                "strongly_connected",
                "bilocal_quality_type",
                "strongly_compact",
                "two_valued",
            )
        }


def strongly_connected(M: FiniteMonoid) -> bool:
    X = A.regular(M)
    P, _, _ = A.product(X, X)
    return len(A.components(P)) == 1


def topos_profile(M: FiniteMonoid) -> ToposProfile:
    p = algebraic_profile(M)
    return ToposProfile(
        boolean_atomic=p.is_group,
        de_morgan=p.is_right_ore,
        local_=p.has_right_absorbing,
        colocal=p.has_left_absorbing,
        totally_connected=p.is_right_collapsible,
        strongly_connected=strongly_connected(M),
        bilocal_quality_type=p.has_zero,
        strongly_compact=True,
        two_valued=len(A.fixed_points(A.omega(M))) == 2,
        provenance={
            "boolean_atomic": "M is a group",
            "de_morgan": "M satisfies the right Ore condition",
            "local_": "M has a right absorbing element",
            "colocal": "M has a left absorbing element",
            "totally_connected": "M is right collapsible",
            "strongly_connected": "M x M is indecomposable as a right M-set",
            "bilocal_quality_type": "M has a zero element",
            "strongly_compact": "a finite monoid right-factorably generates itself",
            "two_valued": "the only fixed right ideals are the empty one and M",
        },
    )


def sufficiently_cohesive(M: FiniteMonoid) -> bool:
    """At least two right absorbing elements."""
    return right_absorbing(M).bit_count() >= 2


# ---------------------------------------------------------------- corpus

def _iso_key(X: A.FiniteMSet):
    return (
        X.size,
        tuple(sorted(len(set(r)) for r in X.action)),
        len(A.fixed_points(X)),
        len(A.components(X)),
    )


def build_corpus(M: FiniteMonoid, size_cap: int = 5) -> list[A.FiniteMSet]:
    """Small M-sets up to isomorphism.

    Principal ones (quotients of M), binary coproducts and products of those,
    and every quotient of these by the equivariant equivalence generated by a
    single pair of points; everything capped at `size_cap` points. The empty
    M-set is included.
    """
    found: dict = {}
    out = []

    def add(X):
        if X.size > size_cap:
            return False
        key = _iso_key(X)
        bucket = found.setdefault(key, [])
        if any(A.is_isomorphic(X, Y) for Y in bucket):
            return False
        bucket.append(X)
        out.append(X)
        return True

    add(A.empty_mset(M))
    principal = []
    for r in A.right_congruences(M):
        Q = A.quotient(M, r)
        if Q.size <= size_cap and add(Q):
            principal.append(Q)
    for X, Y in itertools.combinations_with_replacement(principal, 2):
        if X.size + Y.size <= size_cap:
            add(A.coproduct(X, Y)[0])
        if X.size * Y.size <= size_cap:
            add(A.product(X, Y)[0])
    for X in list(out):
        for x, y in itertools.combinations(range(X.size), 2):
            add(A.quotient_by_labels(X, A.equivariant_closure(X, [(x, y)]))[0])
    return out


def principal_corpus(M: FiniteMonoid, size_cap: int = 5):
    return [A.quotient(M, r) for r in A.right_congruences(M) if r.class_count <= size_cap]


# ---------------------------------------------------------------- reports

@dataclass(frozen=True)
class Check:
    name: str
    algebraic: bool
    observed: bool
    witness: object = None

    @property
    def agree(self) -> bool:
        return self.algebraic == self.observed


@dataclass
class CrosscheckReport:
    checks: list

    @property
    def disagreements(self) -> list:
        return [c for c in self.checks if not c.agree]

    @property
    def ok(self) -> bool:
        return not self.disagreements

    def as_dict(self):
        return {c.name: {"algebraic": c.algebraic, "observed": c.observed, "agree": c.agree} for c in self.checks}


@dataclass(frozen=True)
class AlphaMap:
    gamma: tuple
    values: tuple  # component index of each fixed point
    component_count: int
    mono: bool
    epi: bool
    iso: bool


def alpha_map(M: FiniteMonoid, X: A.FiniteMSet) -> AlphaMap:
    """Send each fixed point of X to its connected component."""
    if X.monoid != M:
        raise MonoidMismatch("M-set is over a different monoid")
    gamma = A.fixed_points(X)
    lab = A.component_labels(X)
    k = max(lab) + 1 if lab else 0
    vals = tuple(lab[x] for x in gamma)
    mono = len(set(vals)) == len(vals)
    epi = len(set(vals)) == k
    return AlphaMap(gamma, vals, k, mono, epi, mono and epi)


def _first(it):
    for x in it:
        return x
    return None


def _all_maps(corpus, pred=None):
    for X in corpus:
        for Y in corpus:
            for f in A.hom_set(X, Y):
                if pred is None or pred(f):
                    yield X, Y, f


def _gamma_image(f):
    return {f.map[x] for x in A.fixed_points(f.source)}


def crosscheck_gamma(M: FiniteMonoid, size_cap: int = 5, corpus=None) -> CrosscheckReport:
    """Fixed-point statements tied to right absorbing / zero / group elements."""
    corpus = corpus if corpus is not None else build_corpus(M, size_cap)
    prof = algebraic_profile(M)
    checks = []

    bad = _first(r for r in A.right_congruences(M) if not A.fixed_points(A.quotient(M, r)))
    checks.append(Check("quotients_have_fixed_points", prof.has_right_absorbing, bad is None, bad))

    bad = _first(
        (X, Y, f.map)
        for X, Y, f in _all_maps(corpus, lambda f: f.is_surjective())
        if _gamma_image(f) != set(A.fixed_points(Y))
    )
    checks.append(Check("gamma_preserves_epis", prof.has_right_absorbing, bad is None, bad and bad[2]))

    bad = _first(X for X in corpus if X.size and not A.fixed_points(X))
    checks.append(Check("nonempty_have_fixed_points", prof.has_right_absorbing, bad is None, bad))

    bad = _first(X for X in corpus if not alpha_map(M, X).epi)
    checks.append(Check("alpha_epi", prof.has_right_absorbing, bad is None, bad))

    bad = _first(X for X in principal_corpus(M, M.size) if not alpha_map(M, X).iso)
    checks.append(Check("alpha_iso_on_quotients", prof.has_zero, bad is None, bad))

    def gamma_full(X, Y):
        gx, gy = A.fixed_points(X), A.fixed_points(Y)
        got = {tuple(f.map[x] for x in gx) for f in A.hom_set(X, Y)}
        return len(got) == len(gy) ** len(gx)

    bad = _first((X, Y) for X in corpus for Y in corpus if not gamma_full(X, Y))
    checks.append(Check("gamma_full", prof.has_zero, bad is None, bad))

    Om = A.omega(M)
    checks.append(Check("omega_has_two_points", prof.is_group, Om.size == 2, Om.size))

    def complemented(X):
        for mask in range(1, 1 << X.size):
            sub = [x for x in range(X.size) if mask >> x & 1]
            if all(mask >> v & 1 for x in sub for v in X.action[x]):
                rest = [x for x in range(X.size) if not mask >> x & 1]
                if not all(not mask >> v & 1 for x in rest for v in X.action[x]):
                    return False
        return True

    bad = _first(X for X in corpus if not complemented(X))
    checks.append(Check("subobjects_complemented", prof.is_group, bad is None, bad))
    return CrosscheckReport(checks)


def crosscheck_c(M: FiniteMonoid, size_cap: int = 5, corpus=None) -> CrosscheckReport:
    """Component statements tied to Ore, collapsibility, products and left absorbing elements."""
    corpus = corpus if corpus is not None else build_corpus(M, size_cap)
    prof = algebraic_profile(M)
    checks = []
    Om = A.omega(M)
    nc = len(A.components(Om))
    checks.append(Check("omega_two_components", prof.is_right_ore, nc == 2, nc))

    bad = _first(X for X in corpus if not alpha_map(M, X).mono)
    checks.append(Check("alpha_mono", prof.is_right_ore, bad is None, bad))

    def c_preserves_monos(X):
        lab = A.component_labels(X)
        for mask in range(1, 1 << X.size):
            sub = [x for x in range(X.size) if mask >> x & 1]
            if all(mask >> v & 1 for x in sub for v in X.action[x]):
                S, inc = A.sub_mset(X, sub)
                sl = A.component_labels(S)
                img = {}
                for s in range(S.size):
                    img.setdefault(sl[s], set()).add(lab[inc.map[s]])
                targets = [next(iter(v)) for v in img.values()]
                if len(set(targets)) != len(targets):
                    return False
        return True

    bad = _first(X for X in corpus if not c_preserves_monos(X))
    checks.append(Check("c_preserves_monos", prof.is_right_ore, bad is None, bad))

    def c_preserves_equalizer(f, g):
        E, inc = A.equalizer(f, g)
        X, Y = f.source, f.target
        lx, ly = A.component_labels(X), A.component_labels(Y)
        # equalizer in Set of C(f), C(g)
        cf = {lx[x]: ly[f.map[x]] for x in range(X.size)}
        cg = {lx[x]: ly[g.map[x]] for x in range(X.size)}
        eq = {c for c in cf if cf[c] == cg[c]}
        le = A.component_labels(E)
        comp = {}
        for e in range(E.size):
            comp.setdefault(le[e], set()).add(lx[inc.map[e]])
        imgs = [next(iter(v)) for v in comp.values()]
        return len(set(imgs)) == len(imgs) and set(imgs) == eq

    def eq_failure():
        for X in corpus:
            for Y in corpus:
                homs = A.hom_set(X, Y)
                for i, f in enumerate(homs):
                    for g in homs[i + 1:]:
                        if not c_preserves_equalizer(f, g):
                            return (f.map, g.map)
        # left multiplications on M itself
        R = A.regular(M)
        for a in M.elements():
            for b in M.elements():
                f = A.MSetMap(R, R, tuple(M.table[a][x] for x in M.elements()))
                g = A.MSetMap(R, R, tuple(M.table[b][x] for x in M.elements()))
                if not c_preserves_equalizer(f, g):
                    return (a, b)
        return None

    bad = eq_failure()
    checks.append(Check("c_preserves_equalizers", prof.is_right_collapsible, bad is None, bad))

    flat = A.is_flat_left(A.terminal(opposite(M)))
    checks.append(Check("terminal_left_set_flat", prof.is_right_collapsible, flat.flat, flat.witness))

    strong = strongly_connected(M)
    principal = principal_corpus(M, M.size)
    bad = _first(
        (X, Y) for X, Y in itertools.product(principal, repeat=2) if len(A.components(A.product(X, Y)[0])) != 1
    )
    checks.append(Check("principal_products_indecomposable", strong, bad is None, bad))

    def c_preserves_product(X, Y):
        P, _, _ = A.product(X, Y)
        return len(A.components(P)) == len(A.components(X)) * len(A.components(Y))

    bad = _first((X, Y) for X in corpus for Y in corpus if not c_preserves_product(X, Y))
    checks.append(Check("c_preserves_binary_products", strong, bad is None, bad))

    # colocal side: a least non-empty right ideal (contained in all others)
    # with trivial endomorphisms, and an initial object among indecomposable
    # M-sets of the corpus
    R = A.regular(M)
    ideals = [I for I in right_ideals(M) if I]
    least = [I for I in ideals if all(J & I == I for J in ideals)]
    rigid = False
    for I in least:
        S, _ = A.sub_mset(R, [x for x in M.elements() if I >> x & 1])
        if len(A.hom_set(S, S)) == 1:
            rigid = True
    checks.append(Check("rigid_least_ideal", prof.has_left_absorbing, rigid, None))

    indec = [X for X in corpus if len(A.components(X)) == 1]
    initial = _first(X for X in indec if all(len(A.hom_set(X, Y)) == 1 for Y in indec))
    checks.append(Check("initial_indecomposable", prof.has_left_absorbing, initial is not None, initial))
    return CrosscheckReport(checks)


def crosscheck_all(M: FiniteMonoid, size_cap: int = 5) -> CrosscheckReport:
    corpus = build_corpus(M, size_cap)
    checks = crosscheck_gamma(M, size_cap, corpus).checks + crosscheck_c(M, size_cap, corpus).checks
    prof = topos_profile(M)
    checks.append(
        Check(
            "totally_iff_demorgan_and_strong",
            prof.totally_connected,
            prof.de_morgan and prof.strongly_connected,
        )
    )
    checks.append(
        Check(
            "two_right_absorbing_iff_local_and_connected_omega",
            sufficiently_cohesive(M),
            prof.local_ and len(A.components(A.omega(M))) == 1,
        )
    )
    return CrosscheckReport(checks)
