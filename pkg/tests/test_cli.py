import csv

import pytest

from quditenc.cli import EXIT_BUDGET, EXIT_PARSE, EXIT_SEARCH, EXIT_VALIDATION, EXIT_VERIFY, main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_search_with_constraints(tmp_path, capsys):
    code, out, _ = run(capsys, "search", "--d", 3, "--set-size", 4, "--constraint", "0,2", "--constraint", "2,1",
                       "--constraint", "2,0", "--output", tmp_path)
    assert code == 0
    assert "total_ops: 10" in out
    doc = (tmp_path / "search.txt").read_text()
    assert "total_ops: 10" in doc
    lengths = {line.split()[1]: int(line.split()[2]) for line in doc.splitlines() if line.startswith("path ")}
    assert lengths == {"0,1": 1, "0,2": 1, "1,0": 0, "1,1": 2, "1,2": 2, "2,0": 1, "2,1": 1, "2,2": 2}
    # the emitted gate set feeds straight into encode
    code, out, _ = run(capsys, "encode", "513_d3", "--gateset", tmp_path / "gateset.txt")
    assert code == 0 and "single_qudit_count: 16" in out


def test_search_singleton_fails(capsys):
    code, _, err = run(capsys, "search", "--d", 3, "--set-size", 1)
    assert code == EXIT_SEARCH and "failed" in err


def test_search_unconstrained(capsys):
    code, out, _ = run(capsys, "search", "--d", 3, "--set-size", 4)
    assert code == 0
    assert int(out.strip().splitlines()[-1].split()[-1]) <= 10


def test_search_bad_inputs(capsys):
    assert run(capsys, "search", "--d", 4, "--set-size", 2)[0] == EXIT_VALIDATION
    assert run(capsys, "search", "--d", 3, "--set-size", 2, "--constraint", "1,0")[0] == EXIT_VALIDATION
    with pytest.raises(SystemExit):
        main(["search", "--d", "3", "--set-size", "2", "--constraint", "1-0"])


def test_encode_outputs(tmp_path, capsys):
    code, out, _ = run(capsys, "encode", "513_d3", "--preset", "d3-sec3-4", "--output", tmp_path)
    assert code == 0
    assert "single_qudit_count: 19" in (tmp_path / "metrics.txt").read_text()
    assert (tmp_path / "stages.txt").read_text().startswith("T1\tid ⊗ DFT ⊗ M2DFT ⊗ M2 ⊗ id\n")
    assert (tmp_path / "diagram.txt").exists() and (tmp_path / "circuit.txt").exists()


def test_encode_errors(tmp_path, capsys):
    bad = tmp_path / "bad.chk"
    bad.write_text("d: 3\nn: 2\nk: 1\n1 0 0\n")
    code, _, err = run(capsys, "encode", bad, "--preset", "d3-sec3-4")
    assert code == EXIT_PARSE and "line 4" in err
    clash = tmp_path / "clash.chk"
    clash.write_text("d: 3\nn: 1\nk: -1\n1 0\n0 1\n")
    assert run(capsys, "encode", clash, "--preset", "d3-sec3-4")[0] == EXIT_PARSE
    noncomm = tmp_path / "noncomm.chk"
    noncomm.write_text("d: 3\nn: 2\nk: 0\n1 0 0 0\n0 0 1 0\n")
    code, _, err = run(capsys, "encode", noncomm, "--preset", "d3-sec3-4")
    assert code == EXIT_VALIDATION and "rows 1 and 2" in err
    assert run(capsys, "encode", "513_d3", "--preset", "d5-proposed-4")[0] == EXIT_VALIDATION
    assert run(capsys, "encode", tmp_path / "missing.chk", "--preset", "d3-sec3-4")[0] == EXIT_PARSE


def test_verify_pass_mutant_and_budget(tmp_path, capsys, monkeypatch):
    run(capsys, "encode", "513_d3", "--preset", "d3-proposed-4", "--output", tmp_path)
    circ = tmp_path / "circuit.txt"
    code, out, _ = run(capsys, "verify", circ, "513_d3", "--output", tmp_path / "verify.txt")
    assert code == 0 and "status: pass" in (tmp_path / "verify.txt").read_text()

    lines = circ.read_text().splitlines()
    first_t = next(i for i, line in enumerate(lines) if line.startswith("T 1 single"))
    mutant = tmp_path / "mutant.txt"
    mutant.write_text("\n".join(lines[:first_t] + lines[first_t + 1 :]) + "\n")
    code, out, _ = run(capsys, "verify", mutant, "513_d3")
    assert code == EXIT_VERIFY and "status: fail" in out

    monkeypatch.setenv("QUDITENC_MAX_DIM", "100")
    code, _, err = run(capsys, "verify", circ, "513_d3")
    assert code == EXIT_BUDGET and "refusing" in err


def test_verify_oversized_code(tmp_path, capsys):
    run(capsys, "encode", "953_d3", "--preset", "d3-proposed-4", "--output", tmp_path)
    assert run(capsys, "verify", tmp_path / "circuit.txt", "953_d3")[0] == EXIT_BUDGET


def test_verify_parse_error(tmp_path, capsys):
    p = tmp_path / "c.txt"
    p.write_text("d 3\nn 2\nops\nT 1 warp 1\n")
    assert run(capsys, "verify", p, "513_d3")[0] == EXIT_PARSE


def test_report(tmp_path, capsys):
    code, out, _ = run(capsys, "report", "--pair", "513_d3", "d3-sec3-4", "d3-proposed-4",
                       "--pair", "513_d3", "d3-proposed-4", "d3-proposed-4", "--output", tmp_path)
    assert code == 0
    rows = list(csv.DictReader((tmp_path / "comparison.csv").open()))
    assert (rows[0]["count_a"], rows[0]["count_b"], rows[0]["gate_reduction_pct"]) == ("19", "16", "16")
    assert rows[1]["gate_reduction_pct"] == rows[1]["depth_reduction_pct"] == "0"
    png = (tmp_path / "comparison.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_report_is_deterministic(tmp_path, capsys):
    for sub in ("a", "b"):
        run(capsys, "report", "--pair", "513_d3", "d3-sec3-3", "d3-proposed-3", "--output", tmp_path / sub)
    for name in ("comparison.csv", "comparison.txt", "comparison.png"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_codes_listing(capsys):
    code, out, _ = run(capsys, "codes")
    assert code == 0 and "513_d3" in out and "d5-proposed-4" in out
