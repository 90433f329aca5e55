import json
import pathlib
import subprocess
import sys

from nqforge.cli import main

FIXDIR = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


def fx(name):
    return str(FIXDIR / name)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify_passes_valid_structure(capsys):
    code, out, err = run(capsys, ["verify", fx("action_line.json")])
    assert code == 0
    assert "[PASS]" in out
    assert "[FAIL]" not in out
    assert out.strip().endswith("result: PASS")


def test_verify_fails_perturbed_with_witness(capsys):
    code, out, err = run(capsys, ["verify", fx("module_point_perturbed.json")])
    assert code == 1
    assert "[FAIL]" in out
    assert "witness:" in out
    assert out.strip().endswith("result: FAIL")


def test_verify_json_shape(capsys):
    code, out, err = run(capsys, ["verify", fx("two_term.json"), "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["command"] == "verify"
    assert doc["ok"] is True
    for row in doc["checks"]:
        assert set(row) >= {"name", "status", "seconds"}
        assert "witness" not in row


def test_verify_json_witness_only_on_failure(capsys):
    code, out, err = run(capsys, ["verify", fx("two_term_perturbed.json"), "--json"])
    assert code == 1
    doc = json.loads(out)
    assert doc["ok"] is False
    failed = [row for row in doc["checks"] if row["status"] == "fail"]
    assert failed
    assert all("witness" in row for row in failed)
    passed = [row for row in doc["checks"] if row["status"] == "pass"]
    assert all("witness" not in row for row in passed)


def test_missing_file_is_an_input_error(capsys):
    code, out, err = run(capsys, ["verify", fx("no_such.json")])
    assert code == 2
    assert "error:" in err


def test_bad_json_syntax_reports_location(capsys, tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{"kind": "structure",\n "side": }\n')
    code, out, err = run(capsys, ["verify", str(p)])
    assert code == 2
    assert "line 2" in err


def test_bad_polynomial_reports_context(capsys, tmp_path):
    p = tmp_path / "badpoly.json"
    p.write_text(json.dumps({
        "kind": "structure",
        "side": "sE",
        "base_coordinates": ["x"],
        "frames": {"1": ["e"]},
        "anchor": {"e": {"x": "2 +* x"}},
        "brackets": {},
    }))
    code, out, err = run(capsys, ["verify", str(p)])
    assert code == 2
    assert "anchor" in err and "column" in err


def test_empty_structure_passes_vacuously(capsys):
    code, out, err = run(capsys, ["verify", fx("empty.json")])
    assert code == 0


def test_to_q_prints_the_field(capsys):
    code, out, err = run(capsys, ["to-q", fx("action_line.json")])
    assert code == 0
    assert "Q x = -e1 - x*e2" in out
    assert "Q e1 = e1*e2" in out
    assert "Q e2 = 0" in out


def test_to_q_json_lists_terms(capsys):
    code, out, err = run(capsys, ["to-q", fx("two_term.json"), "--json"])
    assert code == 0
    doc = json.loads(out)
    assert doc["q"]["a"] == [["-1", ["b"]]]
    # zero images are omitted from the term map
    assert doc["q"].get("t", []) == []


def test_from_q_recovers_the_declared_tables(capsys):
    code, out, err = run(capsys, ["from-q", fx("module_point.json")])
    assert code == 0
    assert "declared tables match the extracted ones" in out


def test_from_q_flags_corrupted_field(capsys):
    code, out, err = run(capsys, ["from-q", fx("action_line_corrupted_q.json")])
    assert code == 1
    assert "witness:" in out


def test_from_q_without_field_is_an_input_error(capsys, tmp_path):
    p = tmp_path / "noq.json"
    p.write_text(json.dumps({
        "kind": "structure",
        "side": "sE",
        "base_coordinates": [],
        "frames": {"1": ["e"]},
        "anchor": {},
        "brackets": {},
    }))
    code, out, err = run(capsys, ["from-q", str(p)])
    assert code == 2


def test_roundtrip_structure(capsys):
    code, out, err = run(capsys, ["roundtrip", fx("jacobiator_point.json")])
    assert code == 0
    assert "brackets -> field -> brackets" in out
    assert "printer then parser is the identity" in out


def test_roundtrip_catches_corruption(capsys):
    code, out, err = run(capsys, ["roundtrip", fx("action_line_corrupted_q.json")])
    assert code == 1


def test_roundtrip_morphism(capsys):
    code, out, err = run(capsys, ["roundtrip", fx("morphism_tangent_squaring.json")])
    assert code == 0
    assert "morphism -> algebra map -> morphism" in out


def test_check_morphism_pass_and_fail(capsys):
    code, out, err = run(
        capsys, ["check-morphism", fx("morphism_rescale_two_term.json")]
    )
    assert code == 0
    assert "formulations agree" in out

    code2, out2, err2 = run(
        capsys, ["check-morphism", fx("morphism_tangent_squaring_broken.json")]
    )
    assert code2 == 1
    assert "witness:" in out2


def test_check_morphism_max_arity_truncates_rows(capsys):
    code, out, err = run(
        capsys,
        ["check-morphism", fx("morphism_point_two_term.json"),
         "--json", "--max-arity", "1"],
    )
    doc = json.loads(out)
    arity_rows = [r for r in doc["checks"] if r["name"].startswith("bracket condition")]
    assert len(arity_rows) == 1


def test_check_morphism_seed_changes_nothing_semantic(capsys):
    for seed in ["0", "99"]:
        code, out, err = run(
            capsys,
            ["check-morphism", fx("morphism_identity_tangent_plane.json"),
             "--seed", seed],
        )
        assert code == 0


def test_console_script_wiring():
    proc = subprocess.run(
        [sys.executable, "-m", "nqforge.cli", "verify", fx("action_line.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "result: PASS" in proc.stdout
