import json

import pytest

import bfnorm as bf
from bfnorm import cli, search
from bfnorm.catalog import DUBUC_ANF_TEXT


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_analyze_dubuc(capsys):
    code, out, err = run_cli(capsys, "analyze", "--anf", DUBUC_ANF_TEXT, "-m", "8")
    assert code == 0
    assert "degree: 6" in out
    assert "monomials: 25" in out
    assert err.startswith("# bfnorm")


def test_analyze_zero_and_quadric(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--anf", "0", "-m", "4")
    assert code == 0
    assert "degree: 0" in out and "weight: 0" in out and "valuation: -" in out

    code, out, _ = run_cli(capsys, "analyze", "--anf", "x1*x3+x2*x4+x5", "-m", "5")
    assert "degree: 2" in out and "valuation: 1" in out


def test_analyze_hex_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "analyze", "--hex", "08", "-m", "2")
    assert code == 0
    assert "anf: x1*x2" in out


def test_normality_quadric_both(capsys):
    code, out, _ = run_cli(capsys, "normality", "--anf", "x1*x3+x2*x4+x5", "-m", "5",
                           "--method", "both")
    assert code == 0
    records = [json.loads(line) for line in out.splitlines() if line.startswith("{")]
    assert len(records) == 2
    assert all(r["status"] == "WeaklyNormal" for r in records)
    assert {r["method"] for r in records} == {"naive", "paired"}


def test_analyze_roundtrip_random(capsys):
    import random

    rng = random.Random(0xC11)
    for _ in range(25):
        m = rng.randrange(1, 7)
        f = bf.BoolFun(m, rng.getrandbits(1 << m))
        code, out, _ = run_cli(capsys, "analyze", "--hex", f.to_hex(), "-m", str(m))
        assert code == 0
        anf_line = next(l for l in out.splitlines() if l.startswith("anf: "))
        assert bf.anf_to_truth_table(bf.parse_anf(anf_line[5:], m)) == f


def test_normality_permuted_quadric_m7(capsys):
    # a variable-permuted form of the 7-variable quadric chain
    code, out, _ = run_cli(capsys, "normality", "--anf", "x1*x3+x2*x4+x5*x7+x6",
                           "-m", "7", "--method", "both")
    assert code == 0
    assert out.count('"status": "WeaklyNormal"') == 2


def test_normality_mm_bent_normal(capsys):
    f = bf.anf_to_truth_table(bf.parse_anf("x1*x2 + x3*x4 + x5*x6 + x7*x8", 8))
    code, out, _ = run_cli(capsys, "normality", "--hex", f.to_hex(), "-m", "8",
                           "--method", "paired")
    assert code == 0
    assert '"status": "Normal"' in out


def test_flats_build_and_reload(tmp_path, capsys):
    path = tmp_path / "t.bflt"
    code, out, _ = run_cli(capsys, "flats", "-m", "6", "-r", "3", "-o", str(path))
    assert code == 0
    assert "spaces: 1395" in out
    table = bf.load_flat_table(path)
    assert table.n_spaces == 1395 and table.m == 6


def test_flats_m8_r3_header(tmp_path, capsys):
    path = tmp_path / "t83.bflt"
    code, out, _ = run_cli(capsys, "flats", "-m", "8", "-r", "3", "-o", str(path))
    assert code == 0
    assert "spaces: 97155" in out and "flats: 3108960" in out


def test_table_exhaustive_m5(monkeypatch, capsys):
    canned = [bf.DTableEntry(5, 3, k, bf.EXACT, 0 if k == 1 else 1, None, 1 << 26)
              for k in range(1, 6)]
    monkeypatch.setattr(search, "exhaustive_m5_rows", lambda: canned)
    code, out, _ = run_cli(capsys, "table", "--exhaustive-m5")
    assert code == 0
    assert "max deg_3 by degree k=1..5: 0 1 1 1 1" in out


def test_walsh_bent_flag(capsys):
    code, out, _ = run_cli(capsys, "walsh", "--anf", "x1*x2+x3*x4+x5*x6+x7*x8",
                           "-m", "8", "--bent", "--summary")
    assert code == 0
    assert "bent: true" in out

    code, out, _ = run_cli(capsys, "walsh", "--anf", "x1*x2", "-m", "2", "--dual")
    assert code == 0
    assert "dual_anf: x1*x2" in out
    assert "[2, 2, 2, -2]" in out


def test_search_subcommand(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "search", "--m", "5", "--r", "3", "--band", "1:2",
                           "--trials", "20", "--seed", "3", "--threads", "1",
                           "--table-dir", str(tmp_path))
    assert code == 0
    entry = json.loads(out.strip().splitlines()[-1])
    assert entry["mode"] == "LowerBound" and entry["seed"] == 3
    # a cached table file was written and is reused on the second run
    assert (tmp_path / "flats_m5_r3.bflt").exists()
    code2, out2, _ = run_cli(capsys, "search", "--m", "5", "--r", "3", "--band", "1:2",
                             "--trials", "20", "--seed", "3", "--threads", "1",
                             "--table-dir", str(tmp_path))
    assert json.loads(out2.strip().splitlines()[-1]) == entry


def test_batch_subcommand(tmp_path, capsys):
    src = tmp_path / "funcs.anf"
    src.write_text("x1*x3+x2*x4+x5\n0\n")
    code, out, err = run_cli(capsys, "batch", "--file", str(src), "--format", "anf",
                             "--m", "5", "--dims", "3", "--method", "both",
                             "--threads", "1", "--table-dir", str(tmp_path))
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    summary = json.loads([l for l in err.splitlines() if l.startswith("{")][-1])
    assert [r["status"] for r in records] == ["WeaklyNormal", "Normal"]
    assert summary["processed"] == 2
    assert summary["histogram"]["3"] == [1, 1, 0, 0]


def test_batch_permute_flag(tmp_path, capsys):
    src = tmp_path / "f.anf"
    src.write_text("x5*x3 + x2*x4 + x1\n")
    code, out, _ = run_cli(capsys, "batch", "--file", str(src), "--m", "5",
                           "--dims", "", "--permute", "5,2,3,4,1",
                           "--threads", "1", "--table-dir", str(tmp_path))
    assert code == 0
    rec = json.loads(out.splitlines()[0])
    assert rec["status"] == "WeaklyNormal"


def test_domain_error_exit_code(capsys):
    code, _, err = run_cli(capsys, "analyze", "--anf", "x9", "-m", "5")
    assert code == 1
    assert "error:" in err and "x9" in err

    code, _, err = run_cli(capsys, "analyze", "-m", "5")
    assert code == 1  # no function given

    code, _, err = run_cli(capsys, "flats", "-m", "16", "-r", "6", "-o", "/dev/null")
    assert code == 1
    assert "exceeds cap" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["walsh", "--anf", "x1"])  # -m missing
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2
