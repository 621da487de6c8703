import json
import subprocess
import sys
from pathlib import Path

import pytest
from hypothesis import given, settings

from monoidtopos import topology as T
from monoidtopos.cli import Report, dump_monoid, dump_topology, main, parse_monoid, parse_topology, run
from monoidtopos.errors import ParseError
from monoidtopos.monoid import m3, relabel

from conftest import monoid_strategy, seeds

SAMPLES = Path(__file__).resolve().parent.parent / "samples"


def sample(name):
    return str(SAMPLES / name)


def payload(*argv):
    code, rep, err = run(list(argv))
    assert code == 0, err
    return rep.payload


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


# ---------------------------------------------------------------- exit codes and reports

def test_exit_codes(tmp_path):
    assert run(["analyze", sample("z2.monoid.json")])[0] == 0
    bad = write(tmp_path, "bad.json", {"size": 2, "table": [[0, 1], [1, 1], [0, 0]]})
    code, rep, err = run(["analyze", bad])
    assert code == 2 and rep is None and "ParseError" in err
    code, _, err = run(["complete", sample("m3.monoid.json"), sample("m3.topology.json"), "--cap-subsets", "2"])
    assert code == 3 and "cap" in err


def test_main_prints_json_and_text(capsys):
    assert main(["congruences", sample("z2.monoid.json"), "--json"]) == 0
    out = capsys.readouterr().out
    assert json.loads(out)["payload"]["size"] == 2
    assert main(["congruences", sample("z2.monoid.json")]) == 0
    out = capsys.readouterr().out
    assert out.startswith("command: monoidtopos congruences")


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "monoidtopos", "analyze", sample("z2.monoid.json"), "--json"],
                         capture_output=True, text=True, check=True)
    assert json.loads(res.stdout)["payload"]["topos_profile"]["boolean_atomic"]


def test_report_round_trip():
    _, rep, _ = run(["complete", sample("m3.monoid.json"), sample("m3.topology.json")])
    again = Report.from_json(rep.to_json())
    assert again == rep and again.to_json() == rep.to_json()


def test_reports_are_reproducible():
    a = run(["fraisse", "run", "lin_orders", "--steps", "12"])[1].to_json()
    b = run(["fraisse", "run", "lin_orders", "--steps", "12"])[1].to_json()
    assert a == b
    assert run(["analyze", sample("z2.monoid.json"), "--timing"])[1].timing is not None


# ---------------------------------------------------------------- parsing

@settings(max_examples=50, deadline=None)
@given(monoid_strategy, seeds)
def test_monoid_parse_dump_idempotent(M, seed):
    data = dump_monoid(M)
    M2, order = parse_monoid(data)
    assert order == list(range(M.size))
    assert dump_monoid(M2) == data


def test_parse_monoid_reindexes_identity():
    # M3 stored with the identity last
    table = [[0, 0, 0], [1, 1, 1], [0, 1, 2]]
    M, order = parse_monoid({"size": 3, "table": table})
    assert order == [2, 0, 1]
    assert M.table == m3().table


def test_topology_parse_dump_idempotent():
    M = m3()
    for tau in T.all_topologies(M):
        data = dump_topology(tau)
        assert dump_topology(parse_topology(data, M, [0, 1, 2])) == data
    base = parse_topology({"base": [[0], [1, 2]]}, M, [0, 1, 2])
    assert base.opens == T.topology_from_base(M, [0b001, 0b110]).opens


def test_parse_errors_carry_locations(tmp_path):
    with pytest.raises(ParseError, match=r"table\[1\]\[0\]"):
        parse_monoid({"size": 2, "table": [[0, 1], [5, 1]]})
    with pytest.raises(ParseError, match="size"):
        parse_monoid({"size": 3, "table": [[0, 1], [1, 1]]})
    with pytest.raises(ParseError, match=r"table\[0\]"):
        parse_monoid({"table": [[0], [1, 1]]})
    broken = write(tmp_path, "broken.json", '{"size": 2,\n "table": [[0, 1], [1 1]]}')
    code, _, err = run(["analyze", broken])
    assert code == 2 and "line 2" in err
    with pytest.raises(ParseError):
        parse_topology({"opens": [[0], [7]]}, m3(), [0, 1, 2])


def test_non_associative_input_reports_witness(tmp_path):
    bad = write(tmp_path, "na.json", {"size": 3, "table": [[0, 1, 2], [1, 2, 1], [2, 2, 2]]})
    code, _, err = run(["analyze", bad])
    assert code == 2 and "NotAssociative" in err and "witness" in err


# ---------------------------------------------------------------- commands

def test_analyze_examples():
    p = payload("analyze", sample("m3.monoid.json"))
    assert not p["topos_profile"]["de_morgan"] and p["topos_profile"]["local_"]
    assert p["crosscheck"]["ok"]
    assert payload("analyze", sample("z2.monoid.json"))["topos_profile"]["boolean_atomic"]


def test_congruences_examples():
    p = payload("congruences", sample("m3.monoid.json"))
    assert len(p["congruences"]) == 3 and p["hasse_edges"] == [[0, 1], [1, 2]]
    assert p["category"]["objects"] == 3
    assert len(payload("congruences", sample("trivial.monoid.json"))["congruences"]) == 1
    assert len(payload("congruences", sample("z2.monoid.json"))["congruences"]) == 2


def test_complete_examples(tmp_path):
    p = payload("complete", sample("m3.monoid.json"), sample("m3.topology.json"))
    assert p["completion"]["size"] == 2 and not p["completion"]["u_injective"]
    assert p["powder_quotient"]["table"] == p["completion"]["table"]
    assert all(p["invariants"].values())
    disc = write(tmp_path, "disc.json", {"base": [[0], [1], [2]]})
    p = payload("complete", sample("m3.monoid.json"), disc)
    assert p["completion"]["table"] == [list(r) for r in m3().table]
    ind = write(tmp_path, "ind.json", {"base": []})
    assert payload("complete", sample("m3.monoid.json"), ind)["completion"]["size"] == 1


def test_morita_examples(tmp_path):
    N = relabel(m3(), (0, 2, 1))
    other = write(tmp_path, "m3r.json", dump_monoid(N))
    p = payload("morita", sample("m3.monoid.json"), other)
    assert p["isomorphism"] is not None and p["verdict"].startswith("Morita-equivalent")
    p = payload("morita", sample("m3.monoid.json"), sample("z3.monoid.json"))
    assert p["isomorphism"] is None and p["verdict"].startswith("not")
    p = payload("morita", sample("t2.monoid.json"), sample("trivial.monoid.json"))
    assert p["isomorphism"] is None
    assert any(s["local_size"] == 1 and s["local_isomorphic_to_other"] for s in p["first"]["local_submonoids"])


def test_monogenic_commands():
    p = payload("monogenic", "classify", sample("step.json"))
    assert p["per_element"][0] == [1, 2] and p["shapes"] == [["N_{1,2}", 1]]
    p = payload("monogenic", "profinite", "--depth", "3")
    assert [lv["depth"] for lv in p["levels"]] == [1, 2, 3]
    assert p["levels"][0]["table"] == [[0, 1], [1, 1]]
    assert p["levels"][2]["stable_opens"] == [[0], [1], [2]] and p["levels"][2]["unstable_opens"] == [[3]]
    assert run(["monogenic", "profinite", "--depth", "0"])[0] == 2


def test_fraisse_commands():
    p = payload("fraisse", "run", "lin_orders", "--steps", "20")
    assert p["deficit"]["empty"] and p["stages"][20] == 215
    assert all(u["stage"] is not None for u in p["universality"])
    assert run(["fraisse", "run", "nope"])[0] == 2
    p = payload("fraisse", "ofs-validate", sample("no_joint_cover.category.json"))
    assert p["report"]["joint_covering_ok"] is False
