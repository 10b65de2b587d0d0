import json
import subprocess

import jsonschema
import pytest

import ugkit


def read(corpus, name):
    return (corpus / name).read_text()


def test_parse_and_print_round_trip(corpus):
    for path in sorted(corpus.glob("*.ug")):
        text = path.read_text()
        assert ugkit.Ultragraph.parse(text).document() == text


def test_ultragraph_queries(corpus):
    ug1 = ugkit.Ultragraph.parse(read(corpus, "UG1.ug"))
    assert ug1.name == "UG1"
    assert ug1.vertices == ["v", "w", "x"]
    assert ug1.edges == ["e", "f", "g"]
    assert ug1.range("e") == "{ v w x }"
    assert ug1.condition_l() == (True, [])
    assert ug1.is_unital()

    ug5 = ugkit.Ultragraph.parse(read(corpus, "UG5.ug"))
    assert ug5.condition_l() == (False, ["e"])

    ug6 = ugkit.Ultragraph.parse(read(corpus, "UG6.ug"))
    assert ug6.is_member("ray(t) \\ { t1 }")
    assert not ug6.is_member("ray(t) \\ { t1 t2 }")


def test_edge_matrix_round_trip():
    rows = [[1, 1], [1, 0]]
    g = ugkit.Ultragraph.from_matrix(rows, "gr")
    assert g.edge_matrix() == rows


def test_errors_carry_codes(corpus):
    with pytest.raises(ugkit.UgkitError, match="EmptyRange"):
        ugkit.Ultragraph.parse("ultragraph bad\nvertices: v\nedge e: v -> { }\n")
    ug7 = ugkit.Ultragraph.parse(read(corpus, "UG7.ug"))
    with pytest.raises(ugkit.UgkitError, match="InfiniteEdgeSet"):
        ug7.edge_matrix()


def test_run_in_process(corpus):
    code, out, err = ugkit.run(["edge-matrix", str(corpus / "UG2.ug")])
    assert code == 0
    assert out == "2\nlabels: e1 e2\n1 1\n1 0\n"
    assert err == ""
    rep = ugkit.report("condition-l", str(corpus / "UG5.ug"))
    assert rep["schema"] == ugkit.REPORT_SCHEMA
    assert rep["exit_code"] == 1
    assert rep["result"]["witness"] == ["e"]


COMMANDS = [
    ["info", "UG1.ug"],
    ["info", "UG6.ug"],
    ["edge-matrix", "UG7.ug"],
    ["from-matrix", "UG2.mat"],
    ["from-graph", "cycle3.graph"],
    ["condition-l", "UG5.ug"],
    ["member", "UG6.ug", "--set", "{ u t1 }"],
    ["approx", "UG2.ug", "-F", "e1"],
    ["desingularize", "--depth", "3", "UG7_window.ug"],
    ["rep", "--check", "UG4.ug"],
    ["rep", "UG5.ug"],
    ["el-check", "UG1.ug", "-X", "e,f"],
    ["dot", "UG6.ug"],
]


@pytest.mark.parametrize("args", COMMANDS, ids=lambda a: " ".join(a))
def test_cli_json_matches_schema(cli, corpus, schema, args):
    argv = [str(corpus / a) if "." in a and (corpus / a).exists() else a for a in args]
    proc = subprocess.run([cli, "--json", *argv], capture_output=True, text=True)
    data = json.loads(proc.stdout)
    jsonschema.validate(data, schema, cls=jsonschema.Draft202012Validator)
    assert data["exit_code"] == proc.returncode


def test_cli_batch_json_matches_schema(cli, corpus, schema):
    proc = subprocess.run([cli, "--json", "--all", "info", str(corpus)], capture_output=True, text=True)
    data = json.loads(proc.stdout)
    jsonschema.validate(data, schema, cls=jsonschema.Draft202012Validator)
    # info reads ultragraph documents only.
    assert len(data["reports"]) == len(list(corpus.glob("*.ug")))
