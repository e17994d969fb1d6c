import json

import pytest

from origami_tess.cli import EXAMPLES, main, parse_origami, serialize
from origami_tess.core import ParseError, is_isomorphic

from conftest import make


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_parse_torus(T1):
    assert is_isomorphic(parse_origami("n=1\nh=()\nv=()\nmarked=all"), T1)


def test_parse_l3(L3):
    assert is_isomorphic(parse_origami("n=3\nh=(1 2)\nv=(1 3)\nmarked=singular"), L3)


def test_parse_semicolons_and_json(L3):
    assert is_isomorphic(parse_origami("n=3; h=(1 2)(3); v=(1 3)"), L3)
    assert is_isomorphic(parse_origami('{"n": 3, "h": [[1, 2]], "v": [[1, 3]], "marked": "singular"}'), L3)


def test_unbalanced_parenthesis():
    with pytest.raises(ParseError) as exc:
        parse_origami("h=(1 2")
    assert "parenthesis" in str(exc.value)
    assert exc.value.line == 1


def test_parse_error_positions():
    with pytest.raises(ParseError) as exc:
        parse_origami("n=2\nh=(1 2)\nq=3")
    assert exc.value.line == 3
    with pytest.raises(ParseError):
        parse_origami('{"n": 2,')


@pytest.mark.parametrize("name", ["T1", "L3", "W4", "O2", "W4all"])
@pytest.mark.parametrize("fmt", ["text", "json"])
def test_round_trip(name, fmt):
    O = make(name)
    again = parse_origami(serialize(O, fmt))
    assert is_isomorphic(again, O)


def test_explicit_marking_round_trip():
    O = parse_origami("n=4\nh=(1 2 3 4)\nv=(1 2)\nmarked=1:bl 3:tr")
    assert is_isomorphic(parse_origami(serialize(O)), O)


def test_quotient_graph_summary(capsys):
    rc, out, _ = run(capsys, "quotient-graph", "T1")
    assert rc == 0 and out.strip() == "V=1 W=1 E=1"


def test_info_json(capsys):
    rc, out, _ = run(capsys, "info", "L3", "--json")
    doc = json.loads(out)
    assert rc == 0 and doc["genus"] == 2 and doc["stratum"] == [2]


def test_oracle_and_generators(capsys):
    rc, out, _ = run(capsys, "oracle", "L3", "--json")
    assert rc == 0 and json.loads(out)["index"] == 3
    rc, out, _ = run(capsys, "generators", "L3", "--json")
    doc = json.loads(out)
    assert rc == 0 and doc["index"] == "3"
    assert all(len(g["matrix"]) == 2 for g in doc["generators"])


def test_fundamental_domain_rationals_are_strings(capsys):
    rc, out, _ = run(capsys, "fundamental-domain", "W4", "--json")
    doc = json.loads(out)
    assert rc == 0 and doc["d1"] == 1
    assert all(isinstance(c["period"], str) and "/" in c["period"] for c in doc["cusps"])


def test_sc_and_cylinders(capsys):
    rc, out, _ = run(capsys, "sc", "T1", "--bound", "2")
    assert rc == 0 and out.strip().endswith("total 4")
    rc, out, _ = run(capsys, "cylinders", "W4", "--json")
    assert [c["circumference"] for c in json.loads(out)["cylinders"]] == ["4/1"]


def test_locate(capsys):
    rc, out, _ = run(capsys, "locate", "T1", "--point", "1/2,1")
    assert rc == 0 and out.strip() == "interior of {0/1,1/1,inf}"


def test_tessellate_writes_files(capsys, tmp_path):
    out = tmp_path / "fig.svg"
    rc, _, _ = run(capsys, "tessellate", "W4", "--region", "0,1,0.25,2", "--model", "disk", "--out", str(out))
    assert rc == 0
    first = out.read_bytes()
    assert first.startswith(b"<svg") or b"<svg" in first[:200]
    doc = json.loads((tmp_path / "fig.json").read_text())
    assert doc["region"] == ["0", "1", "1/4", "2"]
    run(capsys, "tessellate", "W4", "--region", "0,1,0.25,2", "--model", "disk", "--out", str(out))
    assert out.read_bytes() == first


def test_domain_error_exit_code(capsys):
    rc, out, _ = run(capsys, "info", "n=2;h=();v=()", "--json")
    assert rc == 1 and json.loads(out)["error"] == "Disconnected"


def test_parse_error_json(capsys):
    rc, out, _ = run(capsys, "info", "h=(1 2", "--json")
    doc = json.loads(out)
    assert rc == 1 and doc["error"] == "ParseError" and doc["line"] == 1


def test_degenerate_region_exit_code(capsys):
    rc, _, err = run(capsys, "tessellate", "T1", "--region", "0,1,0,1")
    assert rc == 1 and "DegenerateRegion" in err


def test_usage_errors(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["bogus", "T1"])
    assert exc.value.code == 2
    rc, _, _ = run(capsys, "locate", "T1")
    assert rc == 2


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_verify_passes(capsys, name):
    rc, out, _ = run(capsys, "verify", name)
    assert rc == 0
    assert "FAIL" not in out
