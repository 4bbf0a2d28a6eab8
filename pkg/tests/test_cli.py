import json
import subprocess
import sys
from pathlib import Path

import pytest

from serreq.cli import (Session, decode_result, emit_json, encode_morphism, load_demo, main,
                        run_document)

GOLDEN = Path(__file__).parent / "golden"
DEMOS = {"z-lift": "z_lift.json", "p1-iso": "p1_iso.json", "p1xp1-zero": "p1xp1_zero.json"}


def write(tmp_path, doc):
    p = tmp_path / "session.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_z_lift_prints_the_triple(capsys):
    assert main(["demo", "z-lift"]) == 0
    first = json.loads(capsys.readouterr().out)["results"][0]
    assert [first[k]["matrix"] for k in ("domain", "arrow", "codomain")] == [
        [["2"]], [["3"]], [["1"]]]


def test_text_output(capsys):
    assert main(["demo", "z-lift", "--output", "text"]) == 0
    out = capsys.readouterr().out
    assert "domain" in out and "arrow" in out and "codomain" in out


@pytest.mark.parametrize("name", sorted(DEMOS))
def test_demo_matches_golden(name):
    out = run_document(load_demo(name))
    assert out == (GOLDEN / DEMOS[name]).read_text()


@pytest.mark.parametrize("name", sorted(DEMOS))
def test_round_trip_of_every_result(name):
    doc = load_demo(name)
    session = Session(doc)
    results = session.run()
    for r in results:
        value = decode_result(session.backend, r)
        if value[0] == "morphism":
            again = encode_morphism(session.backend, value[1])
            assert again == {k: r[k] for k in again}
            assert session.Q.is_equal(value[1], value[1])
    assert json.loads(emit_json(results))["results"] == results


def test_zero_morphism_and_equality_shapes(tmp_path, capsys):
    doc = {"category": "zmod",
           "objects": {"Z": {"generators": 1}, "T": {"generators": 1, "relations": [["2"]]}},
           "morphisms": {"pi": {"source": "Z", "target": "T", "matrix": [["1"]]},
                         "one": {"source": "Z", "target": "Z", "matrix": [["1"]]},
                         "two": {"source": "Z", "target": "Z", "matrix": [["2"]]}},
           "commands": [{"op": "show", "args": ["pi"]},
                        {"op": "equal", "args": ["one", "one"]},
                        {"op": "equal", "args": ["one", "two"]}]}
    assert main(["run", write(tmp_path, doc)]) == 0
    zero, same, differ = json.loads(capsys.readouterr().out)["results"]
    assert zero["kind"] == "morphism" and zero["is_zero"] is True
    assert same == {"op": "equal", "args": ["one", "one"], "kind": "equality",
                    "equal": True, "witness": "gen-iso"}
    assert differ["equal"] is False and differ["witness"] == "zeroid"


def test_is_zero_sheaf_on_plane(tmp_path, capsys):
    doc = {"category": "proj:2",
           "objects": {"K": {"generators": [[0]], "relations": [["x0"], ["x1"], ["x2"]]}},
           "commands": [{"op": "is-zero-sheaf", "args": ["K"]}]}
    assert main(["run", write(tmp_path, doc)]) == 0
    assert json.loads(capsys.readouterr().out)["results"][0]["value"] is True


def test_inhomogeneous_row_exit_code(tmp_path, capsys):
    doc = {"category": "proj:1",
           "objects": {"M": {"generators": [[0]], "relations": [["x0 + x1^2"]]}},
           "commands": []}
    assert main(["run", write(tmp_path, doc)]) == 1
    assert "row 0" in capsys.readouterr().err


@pytest.mark.parametrize("doc", [
    {"category": "zmod", "commands": [{"op": "kernel", "args": ["nope"]}]},
    {"category": "bogus"},
    {"category": "zmod", "commands": [{"op": "frobnicate", "args": []}]},
])
def test_malformed_input_exit_code(tmp_path, doc):
    assert main(["run", write(tmp_path, doc)]) == 1


def test_bad_json_exit_code(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{oops")
    assert main(["run", str(p)]) == 1


def test_not_liftable_exit_code(tmp_path, capsys):
    doc = {"category": "zmod",
           "objects": {"Z": {"generators": 1}, "Z2": {"generators": 2}},
           "morphisms": {"b": {"source": "Z", "target": "Z2", "matrix": [["1", "0"]]},
                         "g": {"source": "Z", "target": "Z2", "matrix": [["0", "1"]]}},
           "commands": [{"op": "lift", "args": ["g", "b"]}]}
    assert main(["run", write(tmp_path, doc)]) == 2
    assert "[image-in-C]" in capsys.readouterr().err


def test_console_script_is_deterministic():
    runs = [subprocess.run([sys.executable, "-m", "serreq.cli", "demo", "p1xp1-zero"],
                           capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1] == (GOLDEN / "p1xp1_zero.json").read_bytes()

