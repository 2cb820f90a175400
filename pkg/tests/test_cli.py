import json

import pytest

from zaremba.cli import main, parse_int


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_z(capsys):
    assert run(capsys, "z", "6") == (0, "1.011404264707\n", "")
    code, out, _ = run(capsys, "z", "6", "--direct", "--format", "json")
    assert code == 0 and json.loads(out) == pytest.approx(1.0114042647073518)


def test_v_one_is_usage_error(capsys):
    code, out, err = run(capsys, "v", "1")
    assert code == 1 and out == "" and err.startswith("error: undefined:")


@pytest.mark.parametrize(
    "argv",
    [["z", "0"], ["z", "1.5"], ["z", "abc"], ["nope"], ["z", "6", "--bogus"], ["records"], ["z", str(2**63)],
     ["ineq"], ["z", "6", "--workers", "0"]],
)
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err.startswith("error: ")


def test_parse_int():
    assert parse_int("9.5e17") == 950000000000000000
    assert parse_int("1e12") == 10**12
    assert parse_int("2**40") == 2**40
    assert parse_int("1_000") == 1000


def test_verify_table_full(capsys, table_path):
    code, out, _ = run(capsys, "verify-table", str(table_path), "--max", "1e18", "--workers", "1")
    assert code == 0
    assert out.strip().endswith("mismatches=0")


def test_records_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "records", "--max", "1e9", "--workers", "1")
    assert code == 0
    p = tmp_path / "rec.tsv"
    p.write_text(out)
    code, out, _ = run(capsys, "verify-table", str(p), "--workers", "1")
    assert code == 0, out


def test_verify_table_mismatch(capsys, tmp_path, table_path):
    lines = table_path.read_text().splitlines()
    lines[5] = lines[5].replace("both", "z_only")
    p = tmp_path / "bad.tsv"
    p.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify-table", str(p), "--workers", "1")
    assert code == 2 and "record_type" in out


def test_verify_table_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify-table", str(tmp_path / "absent.tsv"))
    assert code == 1 and err.startswith("error: input:")


def test_records_json(capsys):
    code, out, _ = run(capsys, "records", "--max", "100", "--format", "json", "--function", "v", "--workers", "1")
    data = json.loads(out)
    assert [d["n"] for d in data] == [2, 3, 4, 6, 12, 24, 36, 48, 60]
    assert set(data[0]) == {"n", "z", "tau", "v", "record_type"}


def test_bootstrap(capsys):
    code, out, _ = run(capsys, "bootstrap", "--threshold", "1.705")
    caps = [int(line.split("\t")[0]) for line in out.splitlines()[1:]]
    assert code == 0 and caps == [54, 42, 37, 35, 34, 31, 30, 29]


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "28", "--format", "json")
    d = json.loads(out)
    assert code == 0 and d["n"] == 28 and any(e["source"] == "weber" for e in d["entries"])
    code, out, _ = run(capsys, "bounds", "28")
    assert out.startswith("# n=28")


def test_factor_and_zsum(capsys):
    code, out, _ = run(capsys, "factor", "240")
    assert code == 0 and "factorization\t2^4 * 3 * 5" in out
    code, out, _ = run(capsys, "zsum", "1000", "--format", "json")
    assert json.loads(out)["x"] == 1000


def test_ineq(capsys):
    code, out, _ = run(capsys, "ineq", "--variant", "weighted_am_gm", "--weights", "3,2,1", "--values", "2,3,6")
    assert code == 0 and out.splitlines()[1].endswith("True")
    code, out, _ = run(capsys, "ineq", "--random", "300", "--seed", "1")
    assert all(line.endswith("\t0") for line in out.splitlines()[1:])
    code, _, err = run(capsys, "ineq", "--variant", "ky_fan", "--weights", "1,1", "--values", "2,3")
    assert code == 1 and "ky_fan" in err


def test_waterfall(capsys):
    code, out, _ = run(capsys, "waterfall", "--max", "30")
    assert [int(line.split("\t")[0]) for line in out.splitlines()[1:]] == [1, 2, 4, 6, 8, 12, 16, 24, 30]
    code, out, _ = run(capsys, "waterfall", "--max", "1e12", "--count")
    assert out.strip() == "4357"


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "156", "--certificates", "--format", "json")
    d = json.loads(out)
    assert d["strongly_pseudoperfect"] is True
    assert set(d["certificate_strongly"]) == {1, 3, 4, 6, 12, 13, 26, 39, 52, 156}


def test_search_and_bfile(capsys, tmp_path):
    code, out, _ = run(capsys, "search", "--flag", "strongly_pseudoperfect", "--max", "252")
    assert [int(x) for x in out.split()[1:]] == [6, 28, 36, 60, 84, 90, 120, 156, 210, 216, 240, 252]
    good = tmp_path / "good.txt"
    good.write_text("# A334405\n1 6\n2 28\n3 36\n4 60\n5 84\n6 90\n7 120\n8 156\n9 210\n10 216\n11 240\n12 252\n")
    assert run(capsys, "search", "--flag", "strongly_pseudoperfect", "--max", "300", "--oeis-bfile", str(good))[0] == 0
    bad = tmp_path / "bad.txt"
    bad.write_text("1 6\n2 28\n3 40\n")
    code, out, _ = run(capsys, "search", "--flag", "strongly_pseudoperfect", "--max", "100", "--oeis-bfile", str(bad))
    assert code == 2 and "position=2" in out


def test_spoof_and_sondow(capsys):
    code, out, _ = run(capsys, "spoof", "--factors", "3^2,7^2,11^2,13^2,22021")
    assert code == 0 and "is_spoof_perfect\tTrue" in out
    code, out, _ = run(capsys, "sondow", "42", "--format", "json")
    d = json.loads(out)
    assert d["mu"] == 1 and d["primary_pseudoperfect"]
