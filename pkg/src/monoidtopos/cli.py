"""Command line front end: load inputs, run a pipeline, print a report.

Exit codes: 0 success, 2 validation failure, 3 resource cap exceeded.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import actions as A
from . import fraisse as F
from . import monogenic as G
from . import topology as T
from .dictionary import crosscheck_all, topos_profile
from .errors import OracleViolation, ParseError, SizeTooLarge, ValidationError, BadIdentity
from .monoid import (
    FiniteMonoid,
    algebraic_profile,
    detect_identity,
    local_submonoid,
    mask_of,
    members,
    monoid_isomorphism,
    morita_witnesses,
    idempotents,
    subset_key,
    validate_monoid,
)


@dataclass
class Report:
    command: list
    inputs: dict  # file name -> sha256 of its bytes
    payload: dict
    warnings: list = field(default_factory=list)
    timing: Optional[float] = None

    def __post_init__(self):
        # keep everything JSON-native so the round trip is lossless
        self.payload = json.loads(json.dumps(self.payload))
        self.command = list(self.command)
        self.warnings = list(self.warnings)

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        lines = [f"command: {' '.join(self.command)}"]
        for k, v in sorted(self.inputs.items()):
            lines.append(f"input {k}: sha256 {v}")
        _render(self.payload, lines, 0)
        for w in self.warnings:
            lines.append(f"warning: {w}")
        if self.timing is not None:
            lines.append(f"time: {self.timing:.3f}s")
        return "\n".join(lines)


def _render(value, lines, depth):
    pad = "  " * depth
    if isinstance(value, dict):
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                _render(v, lines, depth + 1)
            else:
                lines.append(f"{pad}{k}: {json.dumps(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                _render(v, lines, depth + 1)
            else:
                lines.append(f"{pad}- {json.dumps(v)}")
    else:
        lines.append(f"{pad}{json.dumps(value)}")


def _flat(v):
    items = v.values() if isinstance(v, dict) else v
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and all(isinstance(y, int) for y in x))
               for x in items) and len(json.dumps(v)) <= 100


# ---------------------------------------------------------------- file formats

def _read_json(path):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}", witness=path) from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}", witness=(exc.lineno, exc.colno)) from None
    return data, hashlib.sha256(raw).hexdigest()


def parse_monoid(data) -> tuple[FiniteMonoid, list]:
    """Read {"size", "table"[, "names"]}; returns the monoid and the relabelling order.

    order[i] is the input index of the element now numbered i.
    """
    if not isinstance(data, dict) or "table" not in data:
        raise ParseError("monoid file needs a 'table' field")
    table = data["table"]
    if not isinstance(table, list) or not table:
        raise ParseError("table: expected a non-empty list of rows")
    n = len(table)
    if "size" in data and data["size"] != n:
        raise ParseError(f"size: declared {data['size']!r} but table has {n} rows", witness=("size",))
    for i, row in enumerate(table):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"table[{i}]: expected a row of length {n}", witness=(i,))
        for j, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise ParseError(f"table[{i}][{j}]: {v!r} is not an element index below {n}", witness=(i, j))
    names = data.get("names")
    if names is not None and (not isinstance(names, list) or len(names) != n):
        raise ParseError("names: expected one name per element")
    e = detect_identity(table)
    if e is None:
        raise BadIdentity("no two-sided identity element", witness=None)
    M = validate_monoid(table, e, names)
    order = [e] + [x for x in range(n) if x != e]
    return M, order


def dump_monoid(M: FiniteMonoid) -> dict:
    out = {"size": M.size, "table": [list(r) for r in M.table]}
    if M.names:
        out["names"] = list(M.names)
    return out


def parse_topology(data, M: FiniteMonoid, order=None) -> T.MonoidTopology:
    """Read {"base": [...]} (closed internally) or {"opens": [...]} (validated)."""
    if not isinstance(data, dict) or not ({"base", "opens"} & set(data)):
        raise ParseError("topology file needs a 'base' or 'opens' field")
    key = "opens" if "opens" in data else "base"
    sets = data[key]
    if not isinstance(sets, list):
        raise ParseError(f"{key}: expected a list of element lists")
    new_index = {old: i for i, old in enumerate(order or range(M.size))}
    masks = []
    for i, s in enumerate(sets):
        if not isinstance(s, list):
            raise ParseError(f"{key}[{i}]: expected a list of element indices", witness=(i,))
        for v in s:
            if isinstance(v, bool) or not isinstance(v, int) or v not in new_index:
                raise ParseError(f"{key}[{i}]: {v!r} is not an element index", witness=(i,))
        masks.append(mask_of(new_index[v] for v in s))
    if key == "opens":
        return T.topology_from_opens(M, masks)
    return T.topology_from_base(M, masks)


def dump_topology(tau: T.MonoidTopology) -> dict:
    return {"opens": [list(members(U)) for U in sorted(tau.opens, key=subset_key)]}


def parse_step(data) -> G.MonogenicAction:
    if not isinstance(data, dict) or not isinstance(data.get("step"), list):
        raise ParseError("step file needs a 'step' list")
    for i, v in enumerate(data["step"]):
        if isinstance(v, bool) or not isinstance(v, int):
            raise ParseError(f"step[{i}]: {v!r} is not an integer", witness=(i,))
    return G.monogenic_action(data["step"])


def parse_category_file(data):
    if not isinstance(data, dict):
        raise ParseError("category file must be a JSON object")
    return F.parse_category(data)


# ---------------------------------------------------------------- payload helpers

def _sets(masks):
    return [list(members(m)) for m in masks]


def _table(M: FiniteMonoid):
    return [list(r) for r in M.table]


def _cong(r: A.RightCongruence):
    return list(r.class_of)


# ---------------------------------------------------------------- commands

def cmd_analyze(args, warnings):
    data, digest = _read_json(args.monoid)
    M, order = parse_monoid(data)
    payload = {"size": M.size, "reorder": order, "table": _table(M)}
    payload["monoid_profile"] = asdict(algebraic_profile(M))
    tp = topos_profile(M)
    payload["topos_profile"] = tp.flags()
    payload["provenance"] = dict(tp.provenance)
    if M.size > 4:
        warnings.append(f"order {M.size} above 4: cross-checks use M-sets of size at most {args.cap_mset_size}")
    rep = crosscheck_all(M, args.cap_mset_size)
    payload["crosscheck"] = {"ok": rep.ok, "checks": rep.as_dict(), "disagreements": [c.name for c in rep.disagreements]}
    return {args.monoid: digest}, payload


def cmd_congruences(args, warnings):
    data, digest = _read_json(args.monoid)
    M, order = parse_monoid(data)
    congs = sorted(A.right_congruences(M, cap=args.cap_subsets), key=lambda r: r.sort_key())
    cat = A.congruence_category(M, congs)
    rows = cat.composition_table()
    # spot-check associativity on every composable triple of hom indices
    checked = 0
    n = len(congs)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    for f in cat.homs[i, j]:
                        for g in cat.homs[j, k]:
                            for h in cat.homs[k, l]:
                                lhs = A.cong_compose(h, A.cong_compose(g, f))
                                rhs = A.cong_compose(A.cong_compose(h, g), f)
                                if lhs != rhs:
                                    raise OracleViolation("congruence category is not associative", witness=(i, j, k, l))
                                checked += 1
    payload = {
        "size": M.size,
        "reorder": order,
        "congruences": [_cong(r) for r in congs],
        "hasse_edges": [list(e) for e in A.hasse_edges(congs)],
        "category": {
            "objects": n,
            "hom_counts": [[i, j, c] for (i, j), c in sorted(cat.hom_counts().items())],
            "composition": [list(r) for r in rows],
            "associativity_checks": checked,
        },
    }
    return {args.monoid: digest}, payload


def cmd_complete(args, warnings):
    mdata, mdig = _read_json(args.monoid)
    tdata, tdig = _read_json(args.topology)
    M, order = parse_monoid(mdata)
    tau = parse_topology(tdata, M, order)
    Tset, tau_t = T.action_topology(M, tau, cap=args.cap_subsets)
    F_ = T.open_congruences(M, tau)
    powder = T.powder_quotient(M, tau_t) if all(T.is_two_sided(r) for r in F_.members) else None
    L = T.completion(M, F_)
    base = T.base_reduce(F_)
    # pipeline invariants, re-asserted before anything is emitted
    checks = {
        "action_topology_coarser": all(tau.is_open(U) for U in tau_t.opens),
        "action_topology_idempotent": T.action_topology(M, tau_t, cap=args.cap_subsets)[1].opens == tau_t.opens,
        "topological_monoid": T.is_topological_monoid(M, tau_t)[0],
        "filter_matches_action_topology": T.open_congruences(M, tau_t).members == F_.members,
        "completion_t0": L.topology.is_t0(),
    }
    if powder is not None:
        checks["powder_quotient_t0"] = powder.topology.is_t0()
        checks["powder_matches_completion"] = monoid_isomorphism(powder.monoid, L.monoid) is not None
    else:
        warnings.append("some open congruence is not two-sided; no powder quotient reported")
    if not all(checks.values()):
        raise OracleViolation("pipeline invariant failed", witness=[k for k, v in checks.items() if not v])
    payload = {
        "size": M.size,
        "reorder": order,
        "topology": dump_topology(tau)["opens"],
        "clopen_base": _sets(Tset),
        "action_topology": dump_topology(tau_t)["opens"],
        "continuous_regular": asdict(T.is_continuous(A.regular(M), tau)),
        "open_congruences": [_cong(r) for r in F_.members],
        "base": {
            "members": [_cong(r) for r in base.base],
            "discrete": base.discrete,
            "prodiscrete_two_sided": base.prodiscrete_two_sided,
            "quotients": [None if q is None else _table(q) for q in base.quotients],
        },
        "completion": {
            "size": L.size,
            "table": _table(L.monoid),
            "topology": dump_topology(L.topology)["opens"],
            "u": list(L.u),
            "u_injective": L.u_injective(),
            "discrete": L.topology.is_discrete(),
        },
        "powder_quotient": None if powder is None else {
            "table": _table(powder.monoid),
            "map": list(powder.map),
            "topology": dump_topology(powder.topology)["opens"],
        },
        "invariants": checks,
    }
    return {args.monoid: mdig, args.topology: tdig}, payload


def _morita_side(M: FiniteMonoid, other: FiniteMonoid):
    ws = morita_witnesses(M)
    locals_ = []
    for e in members(idempotents(M)):
        L, _ = local_submonoid(M, e)
        locals_.append({
            "idempotent": e,
            "local_size": L.size,
            "local_isomorphic_to_self": monoid_isomorphism(L, M) is not None,
            "local_isomorphic_to_other": monoid_isomorphism(L, other) is not None,
        })
    return {
        "witnesses": [[w.e, w.beta, w.beta_prime] for w in ws],
        "witness_locals_isomorphic_to_self": all(
            monoid_isomorphism(local_submonoid(M, w.e)[0], M) is not None for w in ws
        ),
        "local_submonoids": locals_,
    }


def cmd_morita(args, warnings):
    d1, h1 = _read_json(args.first)
    d2, h2 = _read_json(args.second)
    M, o1 = parse_monoid(d1)
    N, o2 = parse_monoid(d2)
    iso = monoid_isomorphism(M, N)
    payload = {
        "reorder": [o1, o2],
        "isomorphism": None if iso is None else list(iso),
        "first": _morita_side(M, N),
        "second": _morita_side(N, M),
        "verdict": "Morita-equivalent (isomorphic)" if iso is not None else "not Morita-equivalent (not isomorphic)",
    }
    inputs = {args.first: h1}
    inputs[args.second] = h2
    return inputs, payload


def cmd_monogenic_classify(args, warnings):
    data, digest = _read_json(args.step_file)
    X = parse_step(data)
    c = G.classify(X)
    payload = {
        "step": list(X.step),
        "per_element": [[s.a, s.b] for s in c.per_element],
        "components": [[[s.a, s.b] for s in comp] for comp in c.components],
        "shapes": [[str(s), n] for s, n in sorted(c.shapes().items())],
    }
    return {args.step_file: digest}, payload


def cmd_monogenic_profinite(args, warnings):
    if args.depth < 1:
        raise ParseError(f"--depth: expected at least 1, got {args.depth}", witness=("depth",))
    levels = []
    for K in range(1, args.depth + 1):
        M, tau = G.truncated_profinite(K)
        levels.append({
            "depth": K,
            "names": list(M.names),
            "table": _table(M),
            "discrete": tau.is_discrete(),
            "truncation": list(G.truncation_map(args.depth, K)),
            # {n} for n < K stays open at every deeper level; {K} only approximates infinity
            "stable_opens": [[n] for n in range(K)],
            "unstable_opens": [[K]],
        })
    return {}, {"levels": levels}


def cmd_fraisse_run(args, warnings):
    S = F.builtin_system(args.system)
    F.spot_check(S)
    ch = F.build_chain(S, args.steps, args.seed)
    deficit = F.injectivity_deficit(ch, args.stage_bound, args.problem_bound)
    univ = []
    for i in range(args.universality):
        a = S.object(i)
        if a is None:
            break
        univ.append({"object": S.describe(a), "stage": F.universality_stage(ch, a)})
    payload = {
        "system": S.name,
        "steps": args.steps,
        "seed": args.seed,
        "stages": [S.describe(u) for u in ch.stages],
        "provenance": json.loads(ch.provenance_json()),
        "deficit": {
            "stage_bound": args.stage_bound,
            "problem_bound": args.problem_bound,
            "empty": not deficit,
            "problems": [
                {"extension": S.describe_morphism(p.extension), "stage": p.stage, "morphism": S.describe_morphism(p.morphism)}
                for p in deficit
            ],
        },
        "universality": univ,
    }
    return {}, payload


def cmd_fraisse_ofs(args, warnings):
    data, digest = _read_json(args.category)
    C, Tc, Mc = parse_category_file(data)
    rep = F.ofs_validate(C, Tc, Mc)
    return {args.category: digest}, {"report": rep.as_dict()}


# ---------------------------------------------------------------- entry point

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the structured report as JSON")
    common.add_argument("--timing", action="store_true", help="record wall-clock time in the report")
    common.add_argument("--cap-mset-size", type=int, default=5, help="largest M-set in cross-check corpora")
    common.add_argument("--cap-subsets", type=int, default=12, help="largest carrier for power-set sweeps")

    p = argparse.ArgumentParser(prog="monoidtopos", description="Finite monoid and topological monoid workbench")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="algebraic and topos-level profile with cross-checks")
    a.add_argument("monoid")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("congruences", parents=[common], help="right congruence lattice and category")
    c.add_argument("monoid")
    c.set_defaults(func=cmd_congruences)

    k = sub.add_parser("complete", parents=[common], help="action topology, open congruences and completion")
    k.add_argument("monoid")
    k.add_argument("topology")
    k.set_defaults(func=cmd_complete)

    m = sub.add_parser("morita", parents=[common], help="compare two monoids up to Morita equivalence")
    m.add_argument("first")
    m.add_argument("second")
    m.set_defaults(func=cmd_morita)

    g = sub.add_parser("monogenic", help="actions of the natural numbers")
    gsub = g.add_subparsers(dest="monogenic_command", required=True)
    gc = gsub.add_parser("classify", parents=[common], help="shape table of a step function")
    gc.add_argument("step_file")
    gc.set_defaults(func=cmd_monogenic_classify)
    gp = gsub.add_parser("profinite", parents=[common], help="truncations of the profinite completion")
    gp.add_argument("--depth", type=int, default=3)
    gp.set_defaults(func=cmd_monogenic_profinite)

    f = sub.add_parser("fraisse", help="extension systems and factorization systems")
    fsub = f.add_subparsers(dest="fraisse_command", required=True)
    fr = fsub.add_parser("run", parents=[common], help="build a chain and scan it")
    fr.add_argument("system")
    fr.add_argument("--steps", type=int, default=20)
    fr.add_argument("--seed", type=int, default=0)
    fr.add_argument("--stage-bound", type=int, default=5)
    fr.add_argument("--problem-bound", type=int, default=3)
    fr.add_argument("--universality", type=int, default=5, help="number of objects to locate in the chain")
    fr.set_defaults(func=cmd_fraisse_run)
    fo = fsub.add_parser("ofs-validate", parents=[common], help="check a factorization system on a finite category")
    fo.add_argument("category")
    fo.set_defaults(func=cmd_fraisse_ofs)
    return p


def run(argv=None) -> tuple[int, Optional[Report], str]:
    """Execute a command; returns (exit code, report or None, error text)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    warnings = []
    start = time.perf_counter()
    try:
        inputs, payload = args.func(args, warnings)
    except (ValidationError, OracleViolation) as exc:
        return 2, None, _error_text(exc)
    except SizeTooLarge as exc:
        return 3, None, f"error: {exc} (size {exc.size}, cap {exc.cap})"
    timing = time.perf_counter() - start if args.timing else None
    return 0, Report(["monoidtopos"] + argv, inputs, payload, warnings, timing), ""


def _error_text(exc):
    text = f"error: {type(exc).__name__}: {exc}"
    if getattr(exc, "witness", None) is not None:
        text += f"\nwitness: {exc.witness!r}"
    return text


def main(argv=None) -> int:
    code, report, err = run(argv)
    if report is None:
        print(err, file=sys.stderr)
        return code
    argv = list(sys.argv[1:] if argv is None else argv)
    print(report.to_json() if "--json" in argv else report.to_text())
    return code


if __name__ == "__main__":
    sys.exit(main())
