import json
import subprocess
import sys

import pytest

from quiverkoszul.cli import main
from quiverkoszul.corpus import exterior
from quiverkoszul.serialization import serialize_presentation


@pytest.fixture
def ext2_file(tmp_path):
    path = tmp_path / "exterior2.json"
    rc = main(["corpus", "build", "exterior", "2", "--out", str(path)])
    assert rc == 0
    return str(path)


@pytest.fixture
def ext2_graded_file(tmp_path):
    path = tmp_path / "exterior2_graded.json"
    path.write_text(
        serialize_presentation(exterior(2), ("cyclic", 2), {"a1": "1", "a2": "1"})
    )
    return str(path)


@pytest.fixture
def loop3_file(tmp_path):
    path = tmp_path / "loop_cubed.json"
    assert main(["corpus", "build", "loop_cubed", "--out", str(path)]) == 0
    return str(path)


def run_json(capsys, argv):
    rc = main(argv)
    out = capsys.readouterr().out
    return rc, json.loads(out)


def test_corpus_list_names_everything(capsys):
    assert main(["corpus", "list"]) == 0
    out = capsys.readouterr().out
    for name in ["exterior", "example1", "example4", "preprojective", "loop_cubed"]:
        assert name in out


def test_corpus_build_writes_document(ext2_file):
    doc = json.loads(open(ext2_file).read())
    assert doc["format"] == 1
    assert len(doc["vertices"]) == 1
    assert len(doc["arrows"]) == 2
    assert len(doc["relations"]) == 3


def test_corpus_build_bad_args_exit_2(capsys):
    assert main(["corpus", "build", "exterior", "x"]) == 2
    assert "error:" in capsys.readouterr().err


def test_analyze_reports_verdict_and_dims(capsys, ext2_file):
    rc, report = run_json(
        capsys, ["analyze", ext2_file, "--max-degree", "5", "--max-homological", "5"]
    )
    assert rc == 0
    assert report["format"] == 1
    c = report["canonical"]
    assert c["verdict"] == {"status": "koszul-to-bound", "witness": None}
    assert [row["total"] for row in c["dims"]] == [1, 2, 1, 0, 0, 0]
    assert c["ext_totals"] == [1, 2, 3, 4, 5, 6]
    assert c["generation"]["passed"] is True
    assert c["euler_identity"]["holds"] is True
    assert "timing" in report


def test_analyze_json_flag_writes_file(tmp_path, capsys, ext2_file):
    out = tmp_path / "report.json"
    rc = main(["analyze", ext2_file, "--max-degree", "4",
               "--max-homological", "3", "--json", str(out)])
    assert rc == 0
    assert capsys.readouterr().out == ""
    report = json.loads(out.read_text())
    assert report["canonical"]["max_degree"] == 4


def test_verify_koszul_pass_exit_0(capsys, ext2_file):
    rc, report = run_json(
        capsys, ["verify", ext2_file, "--check", "koszul", "--max-homological", "4"]
    )
    assert rc == 0
    assert report["canonical"]["passed"] is True


def test_verify_koszul_failure_exit_1_with_witness(capsys, loop3_file):
    rc, report = run_json(capsys, ["verify", loop3_file, "--check", "koszul"])
    assert rc == 1
    details = report["canonical"]["details"]
    assert details["verdict"]["status"] == "fails-at"
    assert details["verdict"]["witness"] == [2, 3]


def test_verify_generation_failure_names_step(capsys, loop3_file):
    rc, report = run_json(capsys, ["verify", loop3_file, "--check", "generation"])
    assert rc == 1
    details = report["canonical"]["details"]
    assert details["first_failure"] == 1
    assert {"step": 1, "achieved": 0, "required": 1} in details["steps"]


def test_verify_hilbert_euler(capsys, loop3_file):
    rc, report = run_json(
        capsys,
        ["verify", loop3_file, "--check", "hilbert-euler",
         "--max-degree", "6", "--max-homological", "5", "--cutoff", "5"],
    )
    assert rc == 0
    assert report["canonical"]["details"]["cutoff"] == 5


def test_verify_cutoff_out_of_window_exit_2(capsys, ext2_file):
    rc = main(["verify", ext2_file, "--check", "hilbert-euler", "--cutoff", "9"])
    assert rc == 2


def test_verify_graded_checks(capsys, ext2_graded_file):
    for check in ["covering-theorem", "smash-iso", "radical-smash"]:
        rc, report = run_json(
            capsys,
            ["verify", ext2_graded_file, "--check", check, "--max-homological", "3"],
        )
        assert rc == 0, check
        assert report["canonical"]["passed"] is True, check


def test_verify_graded_check_needs_grading(capsys, ext2_file):
    rc = main(["verify", ext2_file, "--check", "covering-theorem"])
    assert rc == 2
    assert "grading" in capsys.readouterr().err


def test_verify_duality_dims(capsys, ext2_file):
    rc, _ = run_json(capsys, ["verify", ext2_file, "--check", "duality-dims"])
    assert rc == 0


def test_verify_duality_dims_needs_quadratic(capsys, loop3_file):
    assert main(["verify", loop3_file, "--check", "duality-dims"]) == 2


def test_cover_builds_covering_document(capsys, tmp_path, ext2_file):
    out = tmp_path / "cov.json"
    rc = main(["cover", ext2_file, "--group", "cyclic:2",
               "--weights", "a1=1,a2=1", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert sorted(doc["vertices"]) == ["1|0", "1|1"]
    assert len(doc["arrows"]) == 4
    assert len(doc["relations"]) == 6


def test_cover_defaults_weights_from_grading(capsys, tmp_path, ext2_graded_file):
    out = tmp_path / "cov.json"
    rc = main(["cover", ext2_graded_file, "--group", "cyclic:2", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    a = next(a for a in doc["arrows"] if a["name"] == "a1|0")
    assert a["to"] == "1|1"  # weight 1 moved the sheet


def test_cover_identity_weights_when_group_differs(capsys, tmp_path, ext2_graded_file):
    out = tmp_path / "cov.json"
    rc = main(["cover", ext2_graded_file, "--group", "cyclic:3", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    a = next(a for a in doc["arrows"] if a["name"] == "a1|0")
    assert a["to"] == "1|0"  # identity weights keep every sheet


def test_cover_product_group_weights_with_commas(capsys, tmp_path, ext2_file):
    out = tmp_path / "cov.json"
    rc = main(["cover", ext2_file, "--group", "product:cyclic:2,cyclic:2",
               "--weights", "a1=(1,0),a2=(0,1)", "--out", str(out)])
    assert rc == 0
    doc = json.loads(out.read_text())
    assert len(doc["vertices"]) == 4
    assert len(doc["arrows"]) == 8


def test_cover_inhomogeneous_weights_exit_2(capsys, ext2_file):
    rc = main(["cover", ext2_file, "--group", "dihedral:3",
               "--weights", "a1=s,a2=c"])
    assert rc == 2
    err = capsys.readouterr().err
    assert "inhomogeneous" in err


def test_cover_bad_weight_syntax_exit_2(capsys, ext2_file):
    assert main(["cover", ext2_file, "--group", "cyclic:2",
                 "--weights", "a1"]) == 2
    assert main(["cover", ext2_file, "--group", "cyclic:2",
                 "--weights", "zz=1"]) == 2
    assert main(["cover", ext2_file, "--group", "cyclic:2",
                 "--weights", "a1=1,a1=1"]) == 2
    capsys.readouterr()


def test_dual_emits_document(capsys, ext2_file):
    rc, doc = run_json(capsys, ["dual", ext2_file])
    assert rc == 0
    assert doc["format"] == 1
    assert len(doc["relations"]) == 1


def test_missing_file_exit_2(capsys):
    assert main(["analyze", "no_such_file.json"]) == 2
    capsys.readouterr()


def test_determinism_of_canonical_sections(capsys, ext2_graded_file):
    commands = [
        ["analyze", ext2_graded_file, "--max-degree", "4", "--max-homological", "3"],
        ["verify", ext2_graded_file, "--check", "koszul"],
        ["verify", ext2_graded_file, "--check", "smash-iso"],
    ]
    for argv in commands:
        _, first = run_json(capsys, argv)
        _, second = run_json(capsys, argv)
        assert json.dumps(first["canonical"]) == json.dumps(second["canonical"]), argv


def test_document_outputs_byte_identical(capsys, ext2_file):
    for argv in [
        ["dual", ext2_file],
        ["cover", ext2_file, "--group", "cyclic:2", "--weights", "a1=1,a2=1"],
        ["corpus", "build", "example1", "2,2"],
    ]:
        assert main(argv) == 0
        first = capsys.readouterr().out
        assert main(argv) == 0
        second = capsys.readouterr().out
        assert first == second and first


def test_console_script_entry_point(tmp_path):
    # one end-to-end run through the installed script
    proc = subprocess.run(
        [sys.executable, "-m", "quiverkoszul.cli", "corpus", "list"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "exterior" in proc.stdout
