import json
from fractions import Fraction

import pytest

from hurwitz.characters import augmentation_char
from hurwitz.cli import main
from hurwitz.cyclotomic import Cyclotomic
from hurwitz.files import (FileFormatError, format_cyclotomic,
                           format_rational, load_char_file, load_tree_file,
                           parse_cyclotomic, parse_rational, parse_subgroup,
                           resolve_group)
from hurwitz.groups import generalized_quaternion

Q8_REF = {"builder": "generalized_quaternion", "params": {"n": 2}}
Z2_REF = {"builder": "cyclic", "params": {"n": 2}}

TREE_Z2 = {
    "group": Z2_REF, "p": 2,
    "vertices": [{"id": 0, "monodromy": "G"}, {"id": 1, "monodromy": "G"},
                 {"id": 2, "monodromy": "G"}, {"id": 3, "monodromy": "G"}],
    "edges": [{"from": 0, "to": 1, "eps": "2"},
              {"from": 1, "to": 2, "eps": "0"},
              {"from": 1, "to": 3, "eps": "0"}],
}

ACT_LIN4 = {
    "field": {"p": 2, "m": 2},
    "group": {"builder": "cyclic", "params": {"n": 4}},
    "generators": {"s": {"mobius": [
        [{"conductor": 4, "coeffs": ["0", "1"]}, "0"], ["0", "1"]]}},
}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


# -- serialization units --

def test_rational_round_trip():
    for s in ("3/4", "-7", "0", "11/3"):
        assert format_rational(parse_rational(s)) == s
    with pytest.raises(FileFormatError):
        parse_rational("0.5")
    with pytest.raises(FileFormatError):
        parse_rational(1.5)


def test_cyclotomic_round_trip():
    x = Cyclotomic.zeta(8) + Cyclotomic.from_rational(Fraction(1, 2))
    enc = format_cyclotomic(x)
    assert parse_cyclotomic(enc) == x
    assert format_cyclotomic(Cyclotomic.zeta(2)) == "-1"


def test_parse_subgroup_names():
    G = generalized_quaternion(2)
    assert parse_subgroup(G, "G").order == 8
    assert parse_subgroup(G, "1").order == 1
    assert parse_subgroup(G, "<tau>").order == 4
    with pytest.raises(Exception):
        parse_subgroup(G, "<nope>")


def test_load_char_file(write_json):
    path = write_json("a.json", {"group": Z2_REF, "values": ["2", "-2"]})
    a = load_char_file(path)
    assert a == augmentation_char(a.group) * 2
    bad = write_json("b.json", {"group": Z2_REF, "values": ["2"]})
    with pytest.raises(FileFormatError):
        load_char_file(bad)


def test_load_tree_file(write_json):
    path = write_json("t.json", TREE_Z2)
    ht = load_tree_file(path)
    assert ht.tree.root == 0
    assert sorted(ht.tree.leaves) == [2, 3]


# -- CLI surface --

def test_group_info_exit_ok(capsys, write_json):
    path = write_json("g.json", Q8_REF)
    code, out, _ = run(capsys, "group", "info", path)
    assert code == 0
    assert "order: 8" in out


def test_json_output_is_versioned_and_deterministic(capsys, write_json):
    path = write_json("g.json", Q8_REF)
    code1, out1, _ = run(capsys, "group", "info", path, "--format", "json")
    code2, out2, _ = run(capsys, "group", "info", path, "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    assert json.loads(out1)["schema"] == "hg/1"


def test_char_pair(capsys, write_json):
    f = write_json("f.json", {"group": Z2_REF, "values": ["1", "-1"]})
    g = write_json("g.json", {"group": Z2_REF, "values": ["1", "-1"]})
    code, out, _ = run(capsys, "char", "pair", f, g, "--format", "json")
    assert code == 0
    assert json.loads(out)["inner_product"] == "1"


def test_tree_validate_good_and_dot(capsys, write_json):
    path = write_json("t.json", TREE_Z2)
    code, out, _ = run(capsys, "tree", "validate", path)
    assert code == 0
    code, out, _ = run(capsys, "tree", "validate", path, "--format", "dot")
    assert code == 0
    assert out.startswith("digraph")


def test_tree_validate_bad_axiom(capsys, write_json):
    bad = json.loads(json.dumps(TREE_Z2))
    bad["edges"][0]["eps"] = "1"
    path = write_json("t.json", bad)
    code, _, err = run(capsys, "tree", "validate", path)
    assert code == 65
    assert "H5" in err


def test_tree_density_and_lift(capsys, write_json):
    path = write_json("t.json", TREE_Z2)
    code, out, _ = run(capsys, "tree", "density", path, "--at", "2",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["densities"]["all"] == "2"
    code, out, _ = run(capsys, "tree", "lift", path, "--format", "dot")
    assert code == 0
    assert "digraph" in out


def test_disk_pipeline(capsys, write_json):
    path = write_json("act.json", ACT_LIN4)
    code, out, _ = run(capsys, "disk", "depth", path, "--format", "json")
    assert code == 0
    assert json.loads(out)["depth_character"]["values"] == \
        ["8", "-4", "-2", "-2"]
    code, out, _ = run(capsys, "disk", "breaks", path, "--format", "json")
    assert code == 0
    assert json.loads(out)["matches_depth"] is True
    code, out, _ = run(capsys, "disk", "shift", path, "--eps", "1/2",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_obstruct_exit_codes(capsys, write_json):
    feas = write_json("f.json", {"group": Z2_REF, "values": ["2", "-2"]})
    code, out, _ = run(capsys, "obstruct", "hurwitz", feas, "--p", "2",
                       "--format", "json")
    assert code == 0
    assert json.loads(out)["verdict"] == "witness"
    infeas = write_json("i.json", {"group": Z2_REF, "values": ["1", "-1"]})
    code, out, _ = run(capsys, "obstruct", "hurwitz", infeas, "--p", "2",
                       "--format", "json")
    assert code == 3
    assert json.loads(out)["verdict"] == "infeasible"


def test_obstruct_witness_emission(capsys, tmp_path, write_json):
    feas = write_json("f.json", {"group": Z2_REF, "values": ["2", "-2"]})
    wit = str(tmp_path / "wit.json")
    dot = str(tmp_path / "wit.dot")
    code, _, _ = run(capsys, "obstruct", "hurwitz", feas, "--p", "2",
                     "--emit-witness", wit, "--emit-dot", dot)
    assert code == 0
    emitted = json.loads(open(wit).read())
    assert emitted["schema"] == "hg/1"
    emitted["group"] = Z2_REF
    reread = tmp_path / "reread.json"
    reread.write_text(json.dumps(emitted))
    code, _, _ = run(capsys, "tree", "validate", str(reread))
    assert code == 0
    assert open(dot).read().startswith("digraph")


def test_obstruct_bertin_exit(capsys, write_json):
    good = write_json("g.json", {"group": Z2_REF, "values": ["2", "-2"]})
    code, _, _ = run(capsys, "obstruct", "bertin", good)
    assert code == 0
    z4 = {"builder": "cyclic", "params": {"n": 4}}
    bad = write_json("b.json", {"group": z4, "values": ["2", "2", "-2", "-2"]})
    code, _, _ = run(capsys, "obstruct", "bertin", bad)
    assert code == 3


def test_parse_error_exit_codes(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    code, _, err = run(capsys, "group", "info", str(broken))
    assert code == 64
    code, _, err = run(capsys, "tree", "density", "--at")
    assert code == 64


def test_domain_error_exit_code(capsys, write_json):
    act = json.loads(json.dumps(ACT_LIN4))
    act["generators"]["s"]["mobius"][0][0] = "-1"    # order 2, group is Z/4
    path = write_json("act.json", act)
    code, _, err = run(capsys, "disk", "depth", path)
    assert code == 65
    assert "DiskError" in err


def test_hg_threads_validation(capsys, write_json, monkeypatch):
    feas = write_json("f.json", {"group": Z2_REF, "values": ["2", "-2"]})
    monkeypatch.setenv("HG_THREADS", "zero")
    code, _, err = run(capsys, "obstruct", "hurwitz", feas, "--p", "2")
    assert code == 64
    monkeypatch.setenv("HG_THREADS", "2")
    code, _, _ = run(capsys, "obstruct", "hurwitz", feas, "--p", "2")
    assert code == 0
