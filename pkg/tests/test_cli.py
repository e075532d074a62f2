import json
import os

import pytest

from pbcat import cli
from pbcat import fincat as fc
from pbcat import fixtures as fx
from pbcat import relcat as rc

FIXDIR = os.path.join(os.path.dirname(__file__), "..", "fixtures")


def fixture_path(name):
    return os.path.join(FIXDIR, name)


# -- parsing -----------------------------------------------------------------

def test_parse_p1_matches_constructor():
    got = cli.parse_spec(fixture_path("p1.json"))
    assert isinstance(got, rc.PBCStructure)
    assert got == fx.p1()


def test_parse_disc2():
    got = cli.parse_spec(fixture_path("disc2.json"))
    assert isinstance(got, rc.PBCStructure)
    assert len(got.carrier.objects) == 2
    assert got.weq == frozenset({"id(a)", "id(b)"})


def test_parse_walking_iso_matches_constructor():
    got = cli.parse_spec(fixture_path("walking_iso.json"))
    assert got == fx.walking_iso_pbc()


def test_parse_diamond_brown():
    got = cli.parse_spec(fixture_path("diamond_brown.json"))
    assert isinstance(got, rc.BrownStructure)
    assert rc.check_brown_category(got).ok


def test_parse_rejects_weq_closure_failure(tmp_path):
    obj = {
        "format": "pbcat-category/1",
        "poset": {"objects": ["0", "1", "2"], "relations": [["0", "1"], ["1", "2"]]},
        "weq": ["le(0,1)", "le(1,2)"],
    }
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(obj))
    with pytest.raises(cli.ParseError) as exc:
        cli.parse_spec(str(p))
    assert exc.value.report is not None
    assert any("le(0,1)" in v.subjects for v in exc.value.report.violations)


def test_parse_rejects_mixed_shortcut_and_table(tmp_path):
    obj = {
        "format": "pbcat-category/1",
        "poset": {"objects": ["0"], "relations": []},
        "morphisms": [],
    }
    p = tmp_path / "mixed.json"
    p.write_text(json.dumps(obj))
    with pytest.raises(cli.ParseError) as exc:
        cli.parse_spec(str(p))
    assert "mixes" in str(exc.value)


def test_parse_rejects_bad_json(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text("{not json")
    with pytest.raises(cli.ParseError) as exc:
        cli.parse_spec(str(p))
    assert "line" in str(exc.value)


def test_roundtrip_all_fixture_files(tmp_path):
    for name in ("p1.json", "chain3.json", "disc2.json", "disc_interval.json",
                 "disc_chain3.json", "walking_iso.json", "diamond_brown.json",
                 "vee_no_pushout.json"):
        first = cli.parse_spec(fixture_path(name))
        blob = cli.serialize_structure(first, name)
        p = tmp_path / name
        p.write_text(json.dumps(blob))
        second = cli.parse_spec(str(p))
        assert first == second, name


# -- suites and exit codes ----------------------------------------------------------

def run_cli(*argv):
    import io
    import contextlib

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_validate_p1_passes():
    code, out, err = run_cli("validate", fixture_path("p1.json"))
    assert code == 0
    assert "pass" in out


def test_validate_vee_fails_with_exit_1():
    code, out, err = run_cli("validate", fixture_path("vee_no_pushout.json"))
    assert code == 1
    assert "axiom3-pushout-missing" in out


def test_validate_missing_file_exit_2():
    code, out, err = run_cli("validate", "/nonexistent/file.json")
    assert code == 2
    assert "input error" in err


def test_budget_exceeded_exit_3():
    code, out, err = run_cli("--budget", "5", "segal", fixture_path("p1.json"))
    assert code == 3
    assert "budget" in err


def test_segal_suite_p1():
    code, out, err = run_cli("segal", fixture_path("p1.json"), "--max-n", "3",
                             "--format", "json")
    assert code == 0
    rep = json.loads(out)
    names = {c["name"]: c["status"] for c in rep["checks"]}
    assert names == {"segal@2": "pass", "segal@3": "pass"}


def test_weiss_suite_p1():
    code, out, err = run_cli("weiss", fixture_path("p1.json"), "--max-dim", "2")
    assert code == 0
    assert "level0-discrete" in out


def test_homology_suite():
    code, out, err = run_cli("homology", fixture_path("chain3.json"), "--dim", "2",
                             "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert rep["checks"][0]["detail"] == "Z"


def test_homology_rejects_cycles():
    code, out, err = run_cli("homology", fixture_path("walking_iso.json"))
    assert code == 2
    assert "loop-free" in err


def test_map_space_suite():
    code, out, err = run_cli("map-space", fixture_path("p1.json"),
                             "--from", "0", "--to", "0", "--dim", "2",
                             "--format", "json")
    assert code == 0
    rep = json.loads(out)
    byname = {c["name"]: c for c in rep["checks"]}
    assert "2 zig-zags" in byname["mapping-category"]["detail"]
    assert byname["hom-space-homology@0"]["detail"] == "Z"
    assert byname["hom-space-homology@1"]["detail"] == "0"


def test_compose_suite():
    code, out, err = run_cli("compose", fixture_path("p1.json"),
                             "--z1", "le(0,1):id(1)", "--z2", "id(1):id(1)",
                             "--format", "json")
    assert code == 0
    rep = json.loads(out)
    byname = {c["name"]: c for c in rep["checks"]}
    assert byname["backward-leg-tcof"]["status"] == "pass"
    assert "le(0,1)" in byname["composite"]["detail"]


def test_compose_rejects_non_composable():
    code, out, err = run_cli("compose", fixture_path("p1.json"),
                             "--z1", "le(0,1):id(1)", "--z2", "id(0):id(0)")
    assert code == 2


def test_main_theorem_suite_disc():
    code, out, err = run_cli("main-theorem", fixture_path("disc_interval.json"),
                             "--max-dim", "2", "--format", "json")
    assert code == 0
    rep = json.loads(out)
    assert all(c["status"] in ("pass", "unknown") for c in rep["checks"])
    kinds = {w["check"]: w["kind"] for w in rep["witnesses"]}
    assert any(k == "adjunction" for k in kinds.values())


def test_unknowns_do_not_fail_suite(tmp_path):
    # a relative-category-only file: validate runs the relative checks only
    obj = {
        "format": "pbcat-category/1",
        "poset": {"objects": ["0", "1"], "relations": [["0", "1"]]},
        "weq": ["le(0,1)"],
    }
    p = tmp_path / "rel.json"
    p.write_text(json.dumps(obj))
    code, out, err = run_cli("validate", str(p))
    assert code == 0


# -- determinism -----------------------------------------------------------------------

def test_reports_byte_identical():
    code1, out1, _ = run_cli("segal", fixture_path("p1.json"), "--format", "json")
    code2, out2, _ = run_cli("segal", fixture_path("p1.json"), "--format", "json")
    assert code1 == code2 == 0
    assert out1 == out2
    rep = json.loads(out1)
    assert rep["timing"] is None


# -- DOT export -------------------------------------------------------------------------

def test_export_dot_p1_golden():
    code, out, err = run_cli("export-dot", fixture_path("p1.json"),
                             "--target", "carrier")
    assert code == 0
    expected = (
        "digraph category {\n"
        "  rankdir=LR;\n"
        '  "0";\n'
        '  "1";\n'
        '  "0" -> "1" [label="le(0,1)", style=dashed];\n'
        "}\n"
    )
    assert out == expected


def test_export_dot_pentagon_golden():
    code, out, err = run_cli("export-dot", fixture_path("p1.json"),
                             "--target", "c2:0")
    assert code == 0
    assert out.count("->") == 6
    assert 'pos="2.0,2.0!"' in out
    assert out.count("style=dashed") == 3


def test_export_dot_mapping_category():
    code, out, err = run_cli("export-dot", fixture_path("p1.json"),
                             "--target", "map:0,0")
    assert code == 0
    # two zig-zags, one connecting edge
    assert out.count('";') == 2
    assert out.count("->") == 1


def test_export_dot_bad_target():
    code, out, err = run_cli("export-dot", fixture_path("p1.json"),
                             "--target", "nonsense")
    assert code == 2


def test_export_dot_writes_file(tmp_path):
    out_path = tmp_path / "g.dot"
    code, _, _ = run_cli("export-dot", fixture_path("p1.json"),
                         "--target", "carrier", "--out", str(out_path))
    assert code == 0
    assert out_path.read_text().startswith("digraph")


# -- schemas ------------------------------------------------------------------------------

def test_fixture_files_match_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import pbcat

    schema_path = os.path.join(os.path.dirname(pbcat.__file__),
                               "schemas", "category_file.schema.json")
    with open(schema_path) as fh:
        schema = json.load(fh)
    for name in os.listdir(FIXDIR):
        with open(fixture_path(name)) as fh:
            obj = json.load(fh)
        jsonschema.validate(obj, schema)


def test_report_matches_schema():
    jsonschema = pytest.importorskip("jsonschema")
    import pbcat

    schema_path = os.path.join(os.path.dirname(pbcat.__file__),
                               "schemas", "report.schema.json")
    with open(schema_path) as fh:
        schema = json.load(fh)
    code, out, _ = run_cli("main-theorem", fixture_path("p1.json"), "--format", "json")
    assert code == 0
    jsonschema.validate(json.loads(out), schema)
