import csv
import io
import json

import pytest

from qwaring.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_catalog_entry(capsys):
    code, out, _ = run(capsys, "verify", "--catalog", "icosahedron_q32")
    assert code == 0
    assert "residual: 0" in out
    assert "verified: True" in out


def test_verify_unknown_entry(capsys):
    code, _, err = run(capsys, "verify", "--catalog", "nope")
    assert code == 1
    assert "unknown decomposition" in err


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["no-such-verb"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_tight_verb(capsys):
    code, out, _ = run(capsys, "tight", "4", "2")
    assert code == 0 and "ExcludedComplex" in out


def test_cert_rank(capsys):
    code, out, _ = run(capsys, "cert-rank", "3", "4")
    assert code == 0
    assert "NoTight" in out
    assert "rk(q_3^4) = 16" in out


def test_harmonic_and_cat_rank(capsys):
    code, out, _ = run(capsys, "harmonic-dim", "3", "4")
    assert code == 0 and "= 9" in out
    code, out, _ = run(capsys, "cat-rank", "3", "2", "2")
    assert code == 0 and "rank 6" in out


def test_json_outputs_are_valid(capsys):
    for argv in (
        ["verify", "--catalog", "lucas_q32", "--json"],
        ["catalog", "--json"],
        ["cat-rank", "2", "2", "2", "--json"],
        ["harmonic-dim", "3", "4", "--json"],
        ["harmonic-basis", "2", "3", "--json"],
        ["ann-dims", "2", "2", "--json"],
        ["tight", "7", "2", "--json"],
        ["rank-bounds", "8", "2", "--json"],
        ["gen", "binary", "3", "--json"],
        ["cert-rank", "3", "3", "--json"],
    ):
        code, out, _ = run(capsys, *argv)
        assert code == 0, argv
        json.loads(out)


def test_gen_verbs(capsys):
    code, out, _ = run(capsys, "gen", "stroud", "5")
    assert code == 0 and "verified=True" in out
    code, out, _ = run(capsys, "gen", "q8")
    assert code == 0 and "size=45" in out


def test_export_csv_and_precision(tmp_path, capsys):
    out_path = tmp_path / "points.csv"
    code, out, _ = run(capsys, "export", "--catalog", "icosahedron_q32",
                       "--precision", "64", "--format", "csv",
                       "--out", str(out_path))
    assert code == 0
    rows = list(csv.reader(out_path.open()))
    assert len(rows) == 7  # header + 6 points
    caliber = float(rows[1][-2])
    assert abs(caliber - 5 / 6) < 1e-12
    code, _, err = run(capsys, "export", "--catalog", "icosahedron_q32",
                       "--precision", "16", "--format", "csv")
    assert code == 2 and "rejected" in err


def test_export_row_counts(tmp_path, capsys):
    out_path = tmp_path / "p.json"
    code, _, _ = run(capsys, "export", "--catalog", "flavi_5551_q34",
                     "--precision", "64", "--out", str(out_path))
    assert code == 0
    data = json.loads(out_path.read_text())
    assert len(data["points"]) == 16


def test_round_trip_file_verify(tmp_path, capsys):
    code, out, _ = run(capsys, "gen", "binary", "4", "--json")
    assert code == 0
    payload = json.loads(out)
    payload.pop("verified")
    path = tmp_path / "dec.json"
    path.write_text(json.dumps(payload))
    code, out, _ = run(capsys, "verify", "--file", str(path))
    assert code == 0 and "verified: True" in out


def test_malformed_json_file(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, _, err = run(capsys, "verify", "--file", str(path))
    assert code == 1 and "malformed JSON" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "verify", "--file", "/does/not/exist.json")
    assert code == 1 and "error" in err


def test_export_empty_decomposition(tmp_path):
    import io

    from qwaring.cli import export_points
    from qwaring.exactfield import QQ, Rational
    from qwaring.waring import Decomposition

    empty = Decomposition(n=3, s=2, tower=QQ, scale=Rational(1), terms=[],
                          name="empty")
    buf = io.StringIO()
    export_points(empty, 64, "csv", buf)
    lines = [ln for ln in buf.getvalue().splitlines() if ln]
    assert len(lines) == 1 and lines[0].startswith("re_x1")


def test_separate_tower_file(tmp_path, capsys):
    from qwaring.waring import decomposition_to_json, icosahedron_q32

    payload = decomposition_to_json(icosahedron_q32())
    tower = payload.pop("tower")
    dec_path = tmp_path / "dec.json"
    tower_path = tmp_path / "tower.json"
    dec_path.write_text(json.dumps(payload))
    tower_path.write_text(json.dumps(tower))
    code, out, _ = run(capsys, "verify", "--file", str(dec_path),
                       "--tower", str(tower_path))
    assert code == 0 and "verified: True" in out


def test_verify_all_concurrent(capsys, monkeypatch):
    monkeypatch.setenv("QW_NUM_THREADS", "2")
    code, out, _ = run(capsys, "verify", "--all")
    assert code == 0
    assert "all: ok" in out
    assert "gen_stroud_q2(12): ok" in out
    assert "flavi_2333_q33: ok" in out
