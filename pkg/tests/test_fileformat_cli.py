import json

import pytest

from gck.cli import convert, fuzz_report, main
from gck.errors import ParseError, ResolutionError
from gck.fileformat import (
    fixture_path,
    load,
    load_fixture,
    parse_structure_file,
    print_structure_file,
)
from gck.tensorfield import Chart, KForm

FIXTURES = ["symplectic_r2", "broken_sigma", "hitchin_id_r2", "complex_r2", "maps_r4",
            "holomorphic_symplectic_r4", "missing_tensor"]


@pytest.mark.parametrize("name", FIXTURES)
def test_round_trip_is_byte_stable(name):
    text = fixture_path(name).read_text()
    once = print_structure_file(parse_structure_file(text))
    assert once == text
    assert print_structure_file(parse_structure_file(once)) == once


@pytest.mark.parametrize("argv, code", [
    (["symplectic_r2", "--target", "symplectic", "--suite", "gcs"], 0),
    (["symplectic_r2", "--target", "pair", "--suite", "hitchin"], 0),
    (["symplectic_r2", "--target", "symplectic", "--suite", "dirac"], 0),
    (["symplectic_r2", "--target", "symplectic", "--suite", "im"], 0),
    (["complex_r2", "--target", "complex", "--suite", "gcs"], 0),
    (["complex_r2", "--target", "kahler", "--suite", "hitchin"], 1),
    (["hitchin_id_r2", "--target", "pair", "--suite", "groupoid"], 0),
    (["holomorphic_symplectic_r4", "--target", "sc", "--suite", "sc"], 0),
    (["maps_r4", "--target", "project", "--suite", "morphism"], 0),
    (["maps_r4", "--target", "conjugate", "--suite", "morphism"], 1),
    (["broken_sigma", "--target", "symplectic", "--suite", "gcs"], 1),
    (["missing_tensor", "--target", "symplectic", "--suite", "gcs"], 2),
    (["malformed", "--target", "symplectic", "--suite", "gcs"], 2),
    (["symplectic_r2", "--target", "nothing", "--suite", "gcs"], 2),
    (["symplectic_r2", "--target", "symplectic", "--suite", "hitchin"], 2),
    (["no_such_file", "--target", "x", "--suite", "gcs"], 2),
])
def test_check_exit_codes(argv, code, capsys):
    assert main(["check", *argv]) == code


def test_broken_sigma_names_the_failing_identity(capsys):
    main(["check", "broken_sigma", "--target", "symplectic", "--suite", "gcs"])
    out = capsys.readouterr().out
    assert "(3.1)" in out and "FAILED" in out


def test_parse_errors():
    with pytest.raises(ParseError):
        load_fixture("malformed")
    with pytest.raises(ParseError):
        parse_structure_file("{not json")
    with pytest.raises(ParseError):
        parse_structure_file(json.dumps({"charts": {"M": ["x"]}, "extra": 1}))
    with pytest.raises(ResolutionError):
        load_fixture("missing_tensor").gcs("symplectic")


def test_hitchin_to_gcs_then_check(tmp_path, capsys):
    out = tmp_path / "gcs.json"
    assert main(["convert", "hitchin_id_r2", "--target", "pair", "--op", "hitchin-to-gcs", "-o", str(out)]) == 0
    text = out.read_text()
    assert print_structure_file(parse_structure_file(text)) == text
    assert main(["check", str(out), "--target", "pair", "--suite", "gcs"]) == 0


def test_opposite_twice_is_byte_identical(tmp_path, capsys):
    src = fixture_path("complex_r2")
    once, twice = tmp_path / "once.json", tmp_path / "twice.json"
    assert main(["convert", str(src), "--target", "complex", "--op", "opposite", "-o", str(once)]) == 0
    assert main(["convert", str(once), "--target", "complex", "--op", "opposite", "-o", str(twice)]) == 0
    first = convert(load(src), "complex", "opposite")
    assert twice.read_text() == print_structure_file(convert(load(once), "complex", "opposite"))
    assert load(twice).gcs("complex") == load(src).gcs("complex")
    assert print_structure_file(first) == once.read_text()


def test_gcs_to_hitchin_on_complex_is_refused(capsys):
    assert main(["convert", "complex_r2", "--target", "complex", "--op", "gcs-to-hitchin"]) == 1
    assert "DegeneratePi" in capsys.readouterr().err


def test_refuted_input_needs_force(capsys):
    assert main(["convert", "broken_sigma", "--target", "symplectic", "--op", "opposite"]) == 1
    assert main(["convert", "broken_sigma", "--target", "symplectic", "--op", "opposite", "--force"]) == 0


def test_build_groupoid_output(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert main(["convert", "hitchin_id_r2", "--target", "pair", "--op", "build-groupoid", "-o", str(out)]) == 0
    sf = load(out)
    assert sf.charts["Sigma"].dimension == 4
    assert main(["check", str(out), "--target", "pair_groupoid", "--suite", "hitchin"]) == 0


def _with_B(tmp_path, fixture, target, comps, name="gauged.json"):
    """Convert a Hitchin fixture to a gcs file and add a 2-form named B."""
    sf = convert(load_fixture(fixture), target, "hitchin-to-gcs")
    chart = next(iter(sf.charts.values()))
    sf.tensors["B"] = KForm(chart, 2, {k: chart.poly(v) for k, v in comps.items()})
    path = tmp_path / name
    path.write_text(print_structure_file(sf))
    return path


def test_gauge_via_cli(tmp_path, capsys):
    path = _with_B(tmp_path, "hitchin_id_r2", "pair", {(0, 1): "x + 1"})
    out = tmp_path / "out.json"
    assert main(["convert", str(path), "--target", "pair", "--op", "gauge", "--B", "B", "-o", str(out)]) == 0
    assert main(["check", str(out), "--target", "pair", "--suite", "gcs"]) == 0
    assert main(["convert", str(path), "--target", "pair", "--op", "gauge"]) == 2


def test_gauge_rejects_non_closed_B(tmp_path, capsys):
    path = _with_B(tmp_path, "holomorphic_symplectic_r4", "sc", {(2, 3): "u"})
    assert main(["convert", str(path), "--target", "sc", "--op", "gauge", "--B", "B"]) == 1
    assert "NonClosedB" in capsys.readouterr().err
    assert main(["convert", str(path), "--target", "sc", "--op", "gauge", "--B", "B", "--force"]) == 0


def test_check_json_report(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["check", "broken_sigma", "--target", "symplectic", "--suite", "gcs", "--json", str(out)]) == 1
    doc = json.loads(out.read_text())
    assert doc["report"]["verdict"] == "Refuted"
    assert "elapsed_seconds" in doc
    human = capsys.readouterr().out
    for label, ok in doc["report"]["labels"].items():
        assert f"{label}" in human and ("ok" if ok else "FAILED") in human
    assert {d["label"] for d in doc["report"]["failed"]} == {"(3.1)"}
    assert doc["report"]["witness"]["defect"].startswith("(3.1)")


def test_fuzz_determinism_and_empty_run(capsys):
    assert fuzz_report(7, 2, 1, 5) == fuzz_report(7, 2, 1, 5)
    empty = fuzz_report(3, 4, 2, 0)
    assert empty["properties"] == {} and empty["certified_structures"] == 0
    assert main(["fuzz", "--seed", "3", "--count", "0"]) == 0


def test_fuzz_reference_run(capsys):
    rep = fuzz_report(1, 2, 1, 50)
    assert rep["properties"]
    for name, counts in rep["properties"].items():
        assert counts["fail"] == 0, name
        assert counts["pass"] == 50


@pytest.mark.parametrize("argv", [
    ["fuzz", "--dim", "5"],
    ["fuzz", "--degree", "3"],
    ["fuzz", "--count", "-1"],
])
def test_fuzz_argument_ranges(argv, capsys):
    assert main(argv) == 2


@pytest.mark.parametrize("argv", [[], ["check"], ["check", "x", "--target", "t", "--suite", "bogus"],
                                  ["convert", "x", "--target", "t", "--op", "rotate"]])
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_witness_grid_override(monkeypatch, capsys):
    monkeypatch.setenv("GCK_WITNESS_GRID", "0,1")
    assert main(["check", "broken_sigma", "--target", "symplectic", "--suite", "gcs"]) == 1


def test_chart_names_must_be_distinct():
    with pytest.raises(ParseError):
        parse_structure_file(json.dumps({"charts": {"M": ["x", "x"]}}))
    assert Chart(("x", "y")).dimension == 2
