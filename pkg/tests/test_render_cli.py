import json
from pathlib import Path

import pytest

from tauu import cli
from tauu.errors import InvalidInput
from tauu.factor import Factorization, UFactorization
from tauu.render import dumps, format_any, jsonable, parse_factorization
from tauu.rings import make_ring

GOLDEN = Path(__file__).parent / "golden"
ROOT = Path(__file__).resolve().parent.parent


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_bracket_notation():
    R = make_ring("Z20")
    assert format_any(R, UFactorization(1, (), (10, 10))) == "1 [ 10 * 10 ]"
    assert format_any(R, UFactorization(1, (5,), (2, 2, 5))) == "1 * 5 [ 2 * 2 * 5 ]"
    assert format_any(R, Factorization(3, (2, 5))) == "3 * 2 * 5"


@pytest.mark.parametrize("ring,obj", [
    ("Z20", UFactorization(1, (5,), (2, 2, 5))),
    ("Z20", Factorization(1, (10, 10))),
    ("Z6xZ8", UFactorization((1, 1), ((3, 1),), ((3, 3), (1, 4)))),
    ("Z6xZ8", Factorization((5, 3), ((3, 4),))),
])
def test_round_trip(ring, obj):
    R = make_ring(ring)
    assert parse_factorization(R, format_any(R, obj)) == obj


@pytest.mark.parametrize("text", ["", "1 [ ]", "[ 2 ]", "1 [ 2", "1 * ] 2"])
def test_parse_errors(text):
    with pytest.raises(InvalidInput):
        parse_factorization(make_ring("Z20"), text)


def test_empty_list_json():
    assert dumps(jsonable([])) == "[]"


GOLDEN_CASES = {
    "z20_u0": ["ufactorize", "--ring", "Z20", "--elem", "0"],
    "z20_u10": ["ufactorize", "--ring", "Z20", "--elem", "10"],
    "z6_ubfr": ["check-ring", "--ring", "Z6", "--prop", "U-BFR"],
    "z6z8_u34": ["ufactorize", "--ring", "Z6xZ8", "--tau", "prod(full,full)", "--elem", "(3,4)"],
    "z6_classify3": ["classify", "--ring", "Z6", "--elem", "3"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_json(name, capsys):
    code, out, _ = run(GOLDEN_CASES[name] + ["--format", "json"], capsys)
    assert code == 0
    assert json.loads(out) == json.loads((GOLDEN / f"{name}.json").read_text())


def test_golden_contents_pin_examples():
    z0 = json.loads((GOLDEN / "z20_u0.json").read_text())["result"]["essential_multisets"]
    assert [10, 10] in z0 and [2, 2, 5] in z0
    z10 = json.loads((GOLDEN / "z20_u10.json").read_text())["result"]["essential_multisets"]
    assert [2, 5] in z10
    doc = json.loads((GOLDEN / "z6_ubfr.json").read_text())
    assert doc["schema"] == 1 and doc["result"][0]["details"]["bound"] == 2


def test_text_mode_brackets(capsys):
    code, out, _ = run(["ufactorize", "--ring", "Z20", "--elem", "0"], capsys)
    assert code == 0 and "1 [ 10 * 10 ]" in out


def test_check_ring_exit_codes(capsys):
    assert run(["check-ring", "--ring", "Z6", "--prop", "U-BFR"], capsys)[0] == 0
    assert run(["check-ring", "--ring", "Z6", "--prop", "BFR"], capsys)[0] == 1
    assert run(["check-ring", "--ring", "Z6", "--prop", "BFR", "--format", "json"], capsys)[0] == 1


@pytest.mark.parametrize("argv", [
    ["classify", "--ring", "Z1", "--elem", "0"],
    ["classify", "--ring", "Z6", "--elem", "9"],
    ["factorize", "--ring", "Z6", "--elem", "5"],
    ["check-ring", "--ring", "Z6", "--prop", "nonsense"],
    ["verify", "--ring", "Z6", "--ids", "NOPE"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2 and err


def test_verify_exit_codes(capsys):
    assert run(["verify", "--ring", "Z6", "--ids", "HIER-IRR,REARRANGE"], capsys)[0] == 0
    code, out, _ = run(["verify", "--ring", "Z4", "--ids", "BFR-SQUARE", "--format", "json"], capsys)
    assert code == 1
    assert json.loads(out)["schema"] == 1


def test_classify_all_and_inventory(capsys):
    code, out, _ = run(["classify", "--ring", "Z6", "--format", "json"], capsys)
    assert code == 0 and set(json.loads(out)["result"]) == {"0", "2", "3", "4"}
    code, out, _ = run(["inventory", "--ring", "Z20", "--elem", "0", "--format", "json"], capsys)
    assert code == 0


def test_ring_info_and_relation(capsys):
    code, out, _ = run(["ring-info", "--ring", "Z6"], capsys)
    assert code == 0 and "units: [1, 5]" in out
    code, out, _ = run(["check-relation", "--ring", "Z6", "--tau", "comaximal", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["command"] == "check-relation"


def test_corpus_question(capsys):
    code, out, _ = run(["corpus", "--question", "Q-UATOMIC", "--max-n", "10", "--format", "json"], capsys)
    assert code == 0
    res = json.loads(out)["result"]
    assert res["separations"] == [] and len(res["checked"]) == 9


def test_verify_small_corpus_file(tmp_path, capsys):
    p = tmp_path / "c.corpus"
    p.write_text("Z6 | comaximal\n")
    code, out, _ = run(["verify", "--corpus", str(p), "--ids", "HIER-IRR", "--format", "json"], capsys)
    assert code == 0
