import json

import pytest

from wcomm.cli import main
from wcomm.schema import validate_report, validate_summary


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_commutator_s3(capsys):
    code, out, _ = run(capsys, "commutator", "--group", "S3", "--k", "all", "--l", "all")
    row = json.loads(out)
    validate_report(row)
    assert code == 0 and row["formula"] == [0, 2, 5] and row["oracle"] is None


def test_commutator_abelian_with_oracle(capsys):
    code, out, _ = run(capsys, "commutator", "--group", "C8", "--k", "all", "--l", "all", "--oracle")
    row = json.loads(out)
    assert code == 0 and row["formula"] == [0] == row["oracle"] and row["stable"]


def test_ternary_with_oracle(capsys):
    code, out, _ = run(capsys, "commutator", "--group", "S3", "--k", "all", "--l", "all",
                       "--m", "all", "--ternary", "--oracle")
    row = json.loads(out)
    assert code == 0 and row["formula"] == row["oracle"] == [0, 2, 5] and row["last_growth"] == 10


def test_global_flags_either_side(capsys):
    a = run(capsys, "--depth", "8", "commutator", "--group", "S3", "--k", "all", "--l", "all",
            "--oracle")
    b = run(capsys, "commutator", "--group", "S3", "--k", "all", "--l", "all", "--oracle",
            "--depth", "8")
    assert a == b and json.loads(a[1])["depth"] == 8


def test_weighted(capsys):
    code, out, _ = run(capsys, "weighted", "--group", "S3", "--x", "gens:2", "--y", "gens:2",
                       "--w", "all", "--check", "--normal")
    row = json.loads(out)
    assert code == 0 and row["commutes"] and row["equal"] and row["formula"] == [0]
    code, out, _ = run(capsys, "weighted", "--group", "S3", "--x", "all", "--y", "all",
                       "--w", "all", "--check")
    row = json.loads(out)
    assert code == 0 and not row["commutes"] and row["oracle"] == [0, 2, 5]


def test_weighted_huq_matches_binary(capsys):
    _, out, _ = run(capsys, "weighted", "--group", "D4", "--x", "all", "--y", "all", "--huq")
    _, out2, _ = run(capsys, "commutator", "--group", "D4", "--k", "all", "--l", "all")
    assert json.loads(out)["formula"] == json.loads(out2)["formula"]


def test_weighted_from_files(capsys, tmp_path):
    hom = tmp_path / "w.json"
    hom.write_text(json.dumps({"source": "C6", "target": "S3", "images": [0, 1, 0, 1, 0, 1]}))
    sub = tmp_path / "x.json"
    sub.write_text(json.dumps({"group": "S3", "members": [0, 2, 5]}))
    code, out, _ = run(capsys, "weighted", "--group", "S3", "--x", f"@{sub}", "--y", f"@{sub}",
                       "--w", f"@{hom}", "--check")
    assert code == 0 and json.loads(out)["commutes"]


def test_loaded_group(capsys, tmp_path):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"label": "P", "kind": "perm", "degree": 4,
                             "generators": [[1, 0, 2, 3], [0, 1, 3, 2]]}))
    code, out, _ = run(capsys, "--load", str(g), "commutator", "--group", "P", "--k", "all",
                       "--l", "all")
    assert code == 0 and json.loads(out)["formula"] == [0]


@pytest.mark.parametrize("argv", [
    ["commutator", "--group", "Z9", "--k", "all", "--l", "all"],
    ["commutator", "--group", "S3", "--k", "0,1,2", "--l", "all"],
    ["commutator", "--group", "S3", "--k", "all", "--l", "all", "--ternary"],
    ["weighted", "--group", "S3", "--x", "all", "--y", "all"],
    ["verify", "--groups", "nope"],
    ["verify", "--depth", "3"],
    ["catalog", "show", "nope"],
])
def test_unresolvable_is_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_malformed_files_exit_3(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{nope")
    assert run(capsys, "--load", str(bad), "catalog", "list")[0] == 3
    bad.write_text(json.dumps({"label": "B", "kind": "cayley", "table": [[0, 1], [1, 1]]}))
    assert run(capsys, "--load", str(bad), "catalog", "list")[0] == 3
    assert run(capsys, "--load", str(tmp_path / "missing.json"), "catalog", "list")[0] == 3
    assert run(capsys, "commutator", "--group", "S3", "--k", f"@{bad}", "--l", "all")[0] == 3


def test_usage_error_is_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2


def test_verify_jsonl_and_summary(capsys, tmp_path):
    out = tmp_path / "r.jsonl"
    code, _, err = run(capsys, "verify", "--groups", "S3,Q8", "--out", str(out))
    lines = [json.loads(x) for x in out.read_text().splitlines()]
    *rows, summary = lines
    for r in rows:
        validate_report(r)
    validate_summary(summary)
    assert code == 0 and summary["ok"] and summary["instances"] == len(rows)
    assert json.loads(err)["mismatches"] == 0


def test_verify_short_depth_exit_4(capsys, tmp_path):
    out = tmp_path / "short.jsonl"
    code, _, err = run(capsys, "verify", "--groups", "S3", "--depth", "4", "--out", str(out))
    assert code == 4
    dump = tmp_path / "short.failures.jsonl"
    assert dump.exists() and dump.read_text().strip()


def test_verify_csv(capsys):
    code, out, _ = run(capsys, "verify", "--groups", "C4", "--format", "csv")
    header, *rows = out.strip().splitlines()
    assert code == 0 and header.startswith("subject,formula,oracle,equal")
    assert len(rows) == 27


def test_verify_ternary_flag(capsys):
    code, out, _ = run(capsys, "verify", "--groups", "S3", "--ternary")
    *rows, summary = [json.loads(x) for x in out.splitlines()]
    assert code == 0 and all(r["ternary"]["equal"] for r in rows)


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog", "list")
    labels = [json.loads(x)["label"] for x in out.splitlines()]
    assert code == 0 and len(labels) == 25 and "S4" in labels
    code, out, _ = run(capsys, "catalog", "show", "Q8")
    doc = json.loads(out)
    assert doc["order"] == 8 and doc["subgroups"] == 6 and doc["normal_subgroups"] == 6
