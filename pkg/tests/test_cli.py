"""End-to-end runs of the command line front end through main(argv)."""

import json
import os

import pytest

from uebkit.cli import main
from uebkit.combinat import fourier_hadamard, latin_to_json, cyclic_latin
from uebkit.cyclo import PhasedScalar
from uebkit.exactmat import ExactMatrix, matrix_to_json
from uebkit.ueb import basis_from_json

ONE = PhasedScalar.one()


def run(capsys, argv):
    rc = main(argv)
    captured = capsys.readouterr()
    lines = [json.loads(l) for l in captured.out.splitlines()]
    return rc, lines, captured.err


def checks_by_name(lines):
    return {l["check"]: l for l in lines if "check" in l}


def strip_timing(lines):
    out = []
    for l in lines:
        l = dict(l)
        l.pop("seconds", None)
        out.append(l)
    return out


def test_construct_pauli2_and_verify_round_trip(capsys, tmp_path):
    f = str(tmp_path / "pauli2.json")
    rc, lines, err = run(capsys, ["construct", "pauli:2", "--out", f])
    assert rc == 0
    built = checks_by_name(lines)
    assert built["construct"]["details"] == {"spec": "pauli:2", "d": 2,
                                             "members": 4}
    assert built["ueb-definition"]["ok"]
    assert "PASS" in err
    out_hash = lines[-1]["artifacts"][0]["sha256"]

    rc, lines, _ = run(capsys, ["verify", "ueb", f])
    assert rc == 0
    verified = checks_by_name(lines)
    assert verified["ueb-definition"]["details"] == \
        built["ueb-definition"]["details"]
    assert lines[-1]["artifacts"][0]["sha256"] == out_hash


def test_constructed_pauli2_members_are_the_displayed_ones(capsys, tmp_path):
    f = str(tmp_path / "pauli2.json")
    assert main(["construct", "pauli:2", "--out", f]) == 0
    capsys.readouterr()
    basis = basis_from_json(json.load(open(f)))
    by_label = dict(zip(basis.labels, basis.members))
    x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    z = ExactMatrix.diagonal([ONE, -ONE])
    assert by_label[(0, 0)].equal_up_to_phase(ExactMatrix.identity(2))
    assert by_label[(1, 0)].equal_up_to_phase(x)
    assert by_label[(0, 1)].equal_up_to_phase(z)
    assert by_label[(1, 1)].equal_up_to_phase(x @ z)


def test_verify_runs_are_deterministic_modulo_timing(capsys, tmp_path):
    f = str(tmp_path / "pauli3.json")
    assert main(["construct", "pauli:3", "--out", f]) == 0
    capsys.readouterr()
    rc1, lines1, _ = run(capsys, ["verify", "ueb", f])
    rc2, lines2, _ = run(capsys, ["verify", "ueb", f])
    assert rc1 == rc2 == 0
    assert strip_timing(lines1) == strip_timing(lines2)


def test_construct_sam_d3_pins_members(capsys, tmp_path):
    f = str(tmp_path / "sam3.json")
    rc, lines, _ = run(capsys,
                       ["construct", "sam", "cyclic:3", "fourier:3",
                        "--out", f])
    assert rc == 0
    assert checks_by_name(lines)["ueb-definition"]["ok"]
    basis = basis_from_json(json.load(open(f)))
    by_label = dict(zip(basis.labels, basis.members))
    w = PhasedScalar.zeta(3)
    zero = PhasedScalar.zero(3)
    e01 = ExactMatrix.from_rows([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    e12 = ExactMatrix.from_rows([[zero, zero, w * w],
                                 [ONE, zero, zero],
                                 [zero, w, zero]])
    assert by_label[(0, 1)] == e01
    assert by_label[(1, 2)] == e12


def test_construct_sam_from_files(capsys, tmp_path):
    lf = tmp_path / "latin.json"
    hf = tmp_path / "had.json"
    lf.write_text(json.dumps(latin_to_json(cyclic_latin(3))))
    hf.write_text(json.dumps(matrix_to_json(fourier_hadamard(3))))
    f = str(tmp_path / "basis.json")
    rc, lines, _ = run(capsys, ["construct", "sam", str(lf), str(hf),
                                "--out", f])
    assert rc == 0
    roles = [a["role"] for a in lines[-1]["artifacts"]]
    assert roles == ["in", "in", "out"]


def test_construct_nice_heisenberg_is_nice_and_verifiable(capsys, tmp_path):
    f = str(tmp_path / "nice3.json")
    rc, lines, _ = run(capsys, ["construct", "nice:heisenberg:3", "--out", f])
    assert rc == 0
    named = checks_by_name(lines)
    assert named["niceness"]["ok"]
    assert named["niceness"]["details"]["pair_mode"] == "all"
    assert named["construct"]["details"]["members"] == 9

    rc, lines, _ = run(capsys, ["verify", "nice", f])
    assert rc == 0
    assert checks_by_name(lines)["niceness"]["details"]["trace_ok"]


def test_verify_latin_distinguishes_failure_from_parse_error(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("[[0, 1], [0, 1]]")
    rc, lines, err = run(capsys, ["verify", "latin", str(bad)])
    assert rc == 1
    row = checks_by_name(lines)["latin"]
    assert not row["ok"]
    assert row["witness"] == "('col', 0, 0)"
    assert "FAIL" in err

    wrong_shape = tmp_path / "shape.json"
    wrong_shape.write_text("[[0, 1], [0]]")
    rc, lines, err = run(capsys, ["verify", "latin", str(wrong_shape)])
    assert rc == 2
    assert "error" in lines[0]

    good = tmp_path / "good.json"
    good.write_text(json.dumps(latin_to_json(cyclic_latin(3))))
    assert main(["verify", "latin", str(good)]) == 0
    capsys.readouterr()


def test_verify_hadamard(capsys, tmp_path):
    f = tmp_path / "had.json"
    f.write_text(json.dumps(matrix_to_json(fourier_hadamard(3))))
    assert main(["verify", "hadamard", str(f)]) == 0
    capsys.readouterr()
    f.write_text(json.dumps(matrix_to_json(ExactMatrix.identity(3))))
    rc, lines, _ = run(capsys, ["verify", "hadamard", str(f)])
    assert rc == 1
    assert "witness" in checks_by_name(lines)["hadamard"]


def test_verify_ueb_failure_exits_1(capsys, tmp_path):
    f = str(tmp_path / "pauli2.json")
    assert main(["construct", "pauli:2", "--out", f]) == 0
    capsys.readouterr()
    obj = json.load(open(f))
    obj["members"][1] = obj["members"][2]
    open(f, "w").write(json.dumps(obj))
    rc, lines, _ = run(capsys, ["verify", "ueb", f])
    assert rc == 1
    details = checks_by_name(lines)["ueb-definition"]["details"]
    assert not details["orthogonality_ok"]
    assert details["failures"]


def test_verify_nice_needs_pair_labels(capsys, tmp_path):
    f = tmp_path / "odd.json"
    x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    f.write_text(json.dumps({
        "d": 2,
        "members": [matrix_to_json(m) for m in
                    (ExactMatrix.identity(2), x)],
        "labels": ["e", "x"]}))
    rc, lines, _ = run(capsys, ["verify", "nice", str(f)])
    assert rc == 2
    assert "members" in lines[0]["error"]


def test_analyze_monomial_pauli3(capsys):
    rc, lines, _ = run(capsys, ["analyze", "monomial", "pauli:3"])
    assert rc == 0
    details = checks_by_name(lines)["monomial"]["details"]
    assert details["is_monomial"] is True
    assert details["zero_fraction"] == "2/3"
    assert details["per_matrix_nonzero"] == [3] * 9


def test_analyze_induce_then_sparsity(capsys, tmp_path):
    f = str(tmp_path / "induced.json")
    rc, lines, _ = run(capsys, ["analyze", "induce", "heisenberg:3",
                                "--out", f])
    assert rc == 0
    named = checks_by_name(lines)
    assert named["block-structure"]["details"] == {"index": 9, "dim": 9,
                                                   "degree": 1}
    assert named["character-match"]["ok"]
    assert named["sparsity"]["details"]["min_zero_fraction"] == "8/9"

    rc, lines, _ = run(capsys, ["analyze", "sparsity", f])
    assert rc == 0
    details = checks_by_name(lines)["sparsity"]["details"]
    assert details["min_zero_fraction"] == "8/9"
    assert details["max_zero_fraction"] == "8/9"


def test_analyze_induce_from_spec_file(capsys, tmp_path):
    spec = tmp_path / "ind.json"
    spec.write_text(json.dumps({"group": "heisenberg:3", "power": 2}))
    rc, lines, _ = run(capsys, ["analyze", "induce", str(spec)])
    assert rc == 0
    assert checks_by_name(lines)["character-match"]["ok"]


def test_analyze_wickedness(capsys):
    rc, lines, _ = run(capsys, ["analyze", "wickedness", "sam:cyclic:4,alpha"])
    assert rc == 0
    details = checks_by_name(lines)["wickedness"]["details"]
    assert details["witness_found"] is True
    assert details["ratio_position"] == 2
    assert len(details["diagonal"]) == 4

    rc, lines, _ = run(capsys, ["analyze", "wickedness", "pauli:3"])
    assert rc == 0
    assert checks_by_name(lines)["wickedness"]["details"] == {
        "witness_found": False}


def test_analyze_cocycle_small_group_emits_table(capsys):
    rc, lines, _ = run(capsys, ["analyze", "cocycle", "pauli:2"])
    assert rc == 0
    details = checks_by_name(lines)["cocycle"]["details"]
    assert details["identity_holds"] is True
    assert details["pairs"] == 16
    assert details["sampled"] is False
    assert len(details["table"]) == 16


def test_analyze_cocycle_sampled_records_seed(capsys):
    rc, lines, _ = run(capsys, ["analyze", "cocycle", "pauli:6", "--seed", "7"])
    assert rc == 0
    header = lines[0]
    assert header["seed"] == 7
    details = checks_by_name(lines)["cocycle"]["details"]
    assert details["sampled"] is True
    assert details["seed"] == 7
    assert "table" not in details


def test_analyze_cocycle_rejects_wrong_member_count(capsys, tmp_path):
    f = tmp_path / "three.json"
    x = ExactMatrix.from_rows([[0, 1], [1, 0]])
    f.write_text(json.dumps({
        "d": 2,
        "members": [matrix_to_json(m) for m in
                    (ExactMatrix.identity(2), x, x @ x)],
        "labels": [[0, 0], [1, 0], [0, 1]]}))
    rc, lines, _ = run(capsys, ["analyze", "cocycle", str(f)])
    assert rc == 2


def test_parse_and_spec_errors_exit_2(capsys, tmp_path):
    junk = tmp_path / "junk.json"
    junk.write_text("{not json")
    rc, lines, err = run(capsys, ["verify", "ueb", str(junk)])
    assert rc == 2
    assert "error" in lines[0]
    assert "error:" in err

    assert main(["analyze", "monomial", "frobnicate:9"]) == 2
    capsys.readouterr()
    assert main(["verify", "ueb", str(tmp_path / "absent.json")]) == 2
    capsys.readouterr()
    assert main(["construct", "pauli:0", "--out", str(tmp_path / "x")]) == 2
    capsys.readouterr()
    assert main(["construct", "pauli:2", "extra",
                 "--out", str(tmp_path / "x")]) == 2
    capsys.readouterr()
    assert main(["construct", "pauli:2", "--factors-only",
                 "--out", str(tmp_path / "x")]) == 2
    capsys.readouterr()


def test_usage_errors_exit_2(capsys):
    assert main(["verify", "not-a-kind", "x"]) == 2
    capsys.readouterr()
    assert main([]) == 2
    capsys.readouterr()


def test_pretty_format_is_one_document(capsys):
    rc = main(["analyze", "monomial", "pauli:2", "--format", "pretty"])
    captured = capsys.readouterr()
    assert rc == 0
    doc = json.loads(captured.out)
    assert doc["ok"] is True
    assert {"command", "seed", "jobs", "checks", "artifacts"} <= set(doc)


def test_jobs_flag_does_not_change_results(capsys):
    rc1, lines1, _ = run(capsys, ["analyze", "monomial", "pauli:3",
                                  "--jobs", "1"])
    rc2, lines2, _ = run(capsys, ["analyze", "monomial", "pauli:3",
                                  "--jobs", "4"])
    assert rc1 == rc2 == 0
    body1 = strip_timing([l for l in lines1 if "check" in l])
    body2 = strip_timing([l for l in lines2 if "check" in l])
    assert body1 == body2


# ---------------------------------------------------------------------------
# the 165-dimensional pipeline, exercised once through the CLI


@pytest.fixture(scope="module")
def counterexample_bundle(tmp_path_factory):
    path = str(tmp_path_factory.mktemp("cx") / "bundle.json")
    rc = main(["construct", "counterexample165", "--factors-only",
               "--out", path])
    assert rc == 0
    return path


def test_cli_counterexample_construct(counterexample_bundle, capsys):
    capsys.readouterr()
    obj = json.load(open(counterexample_bundle))
    assert obj["group_order"] == 4_492_125
    assert obj["center_order"] == 165
    assert "generators_full" not in obj
    assert len(obj["factor_pools"]["11"]) == 363


def test_cli_counterexample_verify(counterexample_bundle, capsys):
    rc, lines, _ = run(capsys, ["verify", "counterexample165",
                                counterexample_bundle])
    assert rc == 0
    named = checks_by_name(lines)
    assert named["bundle-matches-rebuild"]["ok"]
    details = named["counterexample"]["details"]
    assert details["trace_zero_count"] == 27_224
    assert details["nonmonomial_members"] == 24_200
    assert details["niceness"]["ok"] is True


def test_cli_counterexample_bundle_missing_key_exits_2(counterexample_bundle,
                                                       capsys, tmp_path):
    obj = json.load(open(counterexample_bundle))
    del obj["dim"]
    f = tmp_path / "trimmed.json"
    f.write_text(json.dumps(obj))
    rc, lines, _ = run(capsys, ["verify", "counterexample165", str(f)])
    assert rc == 2
    assert "dim" in lines[0]["error"]
