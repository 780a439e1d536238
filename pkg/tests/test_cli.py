import json
from pathlib import Path

import pytest

from app.cli import EXIT_INPUT, EXIT_OK, run

GOLDEN = Path(__file__).parent / "golden"

INVOCATIONS = {
    "a5_classify.json": ["classify", "--type", "A", "--rank", "5", "--variant", "minuscule",
                         "--weight", "3", "--word", "3,1,2,5,4,3", "--format", "json"],
    "c4_classify.json": ["classify", "--type", "C4", "--variant", "cominuscule",
                         "--weight", "4", "--word", "3,4,1,2,3,4"],
    "e6_classify.json": ["classify", "--type", "E", "--rank", "6", "--variant", "minuscule",
                         "--weight", "6", "--word", "5,4,2,1,3,4,5,6"],
}


@pytest.mark.parametrize("golden", sorted(INVOCATIONS))
def test_classify_matches_golden(golden, capsys):
    assert run(INVOCATIONS[golden]) == EXIT_OK
    out = capsys.readouterr().out
    expected = json.loads((GOLDEN / golden).read_text(encoding="utf-8"))
    assert json.loads(out) == expected


def test_json_output_round_trips(capsys):
    run(INVOCATIONS["a5_classify.json"])
    out = capsys.readouterr().out
    assert json.dumps(json.loads(out), indent=2) + "\n" == out


def test_non_reduced_word(capsys):
    code = run(["classify", "--type", "A5", "--weight", "3", "--word", "3,3"])
    assert code == EXIT_INPUT
    err = capsys.readouterr().err
    assert err.startswith("error:")
    assert "not reduced" in err


def test_non_minuscule_element(capsys):
    code = run(["quiver", "--type", "A5", "--weight", "3", "--word", "1"])
    assert code == EXIT_INPUT
    assert "minimal coset representative" in capsys.readouterr().err


def test_unknown_type_and_bad_flags(capsys):
    assert run(["weights", "--type", "Z9"]) == EXIT_INPUT
    assert run(["classify", "--type", "A5"]) == EXIT_INPUT
    assert run(["quiver", "--type", "A5", "--weight", "3", "--word", "3", "--format", "yaml"]) == EXIT_INPUT


def test_rank_conflict(capsys):
    assert run(["weights", "--type", "A5", "--rank", "4"]) == EXIT_INPUT


def test_quiver_ascii(capsys):
    code = run(["quiver", "--type", "C", "--rank", "4", "--variant", "cominuscule",
                "--weight", "4", "--word", "3,4,1,2,3,4", "--format", "ascii"])
    assert code == EXIT_OK
    out = capsys.readouterr().out
    assert "1*" in out and "3*" in out
    assert "2!" in out and "4!" in out


def test_quiver_dot(capsys):
    run(["quiver", "--type", "A5", "--weight", "3", "--word", "3,1,2,5,4,3", "--format", "dot"])
    out = capsys.readouterr().out
    assert out.startswith("digraph")
    assert out.count("{") == out.count("}")
    assert out.count("->") == 6


def test_weights(capsys):
    assert run(["weights", "--type", "E6"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["minuscule"] == [1, 6]
    assert payload["highest_root"] == ["1/1", "2/1", "2/1", "3/1", "2/1", "1/1"]


def test_elements(capsys):
    assert run(["elements", "--type", "A2", "--weight", "1"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["elements"] == [[], [1], [2, 1]]


def test_cones_with_ordering(capsys):
    code = run(["cones", "--type", "A5", "--weight", "3", "--word", "3,1,2,5,4,3", "--ordering", "1,2,4"])
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["effective"]["peaks"] == [1, 2, 4]
    [nef] = payload["nef"]
    assert nef["cone"]["generators"] == [["1/1", "0/1", "0/1"], ["1/1", "1/1", "0/1"], ["1/1", "1/1", "1/1"]]


def test_peel(capsys):
    code = run(["peel", "--type", "C4", "--variant", "cominuscule", "--weight", "4",
                "--word", "3,4,1,2,3,4", "--class", "1,1"])
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload["ordering"] == [1, 3]
    assert payload["steps"] == [{"vertex": 6, "coefficient": "1/2"}]


def test_peel_negative_class(capsys):
    code = run(["peel", "--type", "C4", "--variant", "cominuscule", "--weight", "4",
                "--word", "3,4,1,2,3,4", "--class", "1,-1"])
    assert code == EXIT_INPUT


def test_classify_table(capsys):
    run(["classify", "--type", "E6", "--weight", "6", "--word", "5,4,2,1,3,4,5,6", "--format", "table"])
    out = capsys.readouterr().out
    assert "qfact=2 ih_small=0" in out


def test_verify_a5(capsys):
    code = run(["verify", "--type", "A5", "--weight", "3", "--samples", "40", "--format", "json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == EXIT_OK
    assert payload["ok"] is True
    assert payload["elements"] == 20
    assert {c["name"] for c in payload["checks"]} >= {"quiver.bruhat_agreement", "divisors.mds_cover"}


def test_out_file(tmp_path, capsys):
    target = tmp_path / "a5.json"
    assert run(INVOCATIONS["a5_classify.json"] + ["--out", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert json.loads(target.read_text(encoding="utf-8"))["counts"]["qfact"] == 6


def test_quiver_json_fields(capsys):
    code = run(["quiver", "--type", "C4", "--variant", "cominuscule", "--weight", "4", "--word", "3,4,1,2,3,4"])
    assert code == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert (payload["type"], payload["rank"], payload["weight"]) == ("C", 4, 4)
    assert payload["variant"] == "cominuscule"
    assert payload["word"] == [3, 4, 1, 2, 3, 4]
    first, _, third, _, fifth, _ = payload["vertices"]
    assert first == {"index": 1, "color": 3, "height": 4, "peak": True, "hole": False,
                     "successor": 5, "predecessor": None}
    assert third["successor"] is None and third["peak"]
    assert fifth["predecessor"] == 1
    assert [1, 2] in payload["arrows"]


def test_classification_json_fields(capsys):
    run(INVOCATIONS["e6_classify.json"])
    payload = json.loads(capsys.readouterr().out)
    assert payload["element"] == {"type": "E", "rank": 6, "weight": 6, "variant": "minuscule",
                                  "word": [5, 4, 2, 1, 3, 4, 5, 6]}
    first = payload["decompositions"][0]
    assert set(first) >= {"orderings", "parts", "words", "neat", "smooth", "ih_small"}
    assert first["words"] == [[5, 4, 2], [1, 3, 4, 5, 6]]


def test_unwritable_out_file(tmp_path, capsys):
    target = tmp_path / "missing" / "a5.json"
    assert run(INVOCATIONS["a5_classify.json"] + ["--out", str(target)]) == EXIT_INPUT
    err = capsys.readouterr().err
    assert err.startswith("error: cannot write")
    assert len(err.strip().splitlines()) == 1


def test_bounds_only_where_used(capsys):
    a5 = ["--type", "A5", "--weight", "3", "--word", "3,1,2,5,4,3"]
    assert run(["classify", *a5, "--max-peaks", "3"]) == EXIT_OK
    assert run(["classify", *a5, "--max-peaks", "2"]) == EXIT_INPUT
    assert run(["classify", *a5, "--seed", "1"]) == EXIT_INPUT
    assert run(["quiver", *a5, "--max-length", "8"]) == EXIT_INPUT
    assert run(["peel", *a5, "--class", "1,0,0", "--max-peaks", "3"]) == EXIT_INPUT
