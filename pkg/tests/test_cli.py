import csv
import io
import random
import subprocess
import sys
from pathlib import Path

import pytest

from groupcontrol import formats as F
from groupcontrol.cli import BENCH_COLUMNS, main
from groupcontrol.random_gen import random_profile
from groupcontrol.rules import RuleSpec, evaluate, full, members
from groupcontrol.solvers import Strategy, solve

DATA = Path(__file__).parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_eval_liberal_prints_self_qualifiers(capsys, tmp_path):
    f = tmp_path / "p.gp"
    f.write_text("gi-profile v1\nn 3\n100\n000\n001\n")
    assert run(capsys, "eval", f, "--rule", "consent 1 1") == (0, "[0 2]\n", "")


def test_eval_csr_example_is_empty(capsys):
    code, out, _ = run(capsys, "eval", DATA / "csr_example.gp", "--rule", "csr")
    assert (code, out) == (0, "[]\n")
    code, out, _ = run(capsys, "eval", DATA / "csr_example.gp", "--rule", "csr", "--subset", "0 1")
    assert out == "[0 1]\n"


def test_eval_matches_library(capsys, tmp_path):
    rng = random.Random(2)
    p = random_profile(7, rng)
    f = tmp_path / "r.gp"
    f.write_text(F.serialize_profile(p))
    code, out, _ = run(capsys, "eval", f, "--rule", "consent 2 3")
    want = members(evaluate(p, RuleSpec.consent(2, 3), full(7)))
    assert out.strip() == "[" + " ".join(map(str, want)) + "]"


def test_eval_parse_error_exit_2(capsys, tmp_path):
    f = tmp_path / "bad.gp"
    f.write_text("gi-profile v1\nn 2\n10\n1x\n")
    code, _, err = run(capsys, "eval", f, "--rule", "csr")
    assert code == 2
    assert "line 4, column 2" in err


def test_solve_gcdi_example(capsys):
    assert run(capsys, "solve", DATA / "gcdi_example.gi") == (0, "YES [1] (solver=poly-thm3)\n", "")


def test_solve_immune(capsys, tmp_path):
    f = tmp_path / "i.gi"
    f.write_text("gi-instance v1\nproblem: GCPI\nrule: lsr\nS: 0\ngi-profile v1\nn 2\n00\n00\n")
    code, out, _ = run(capsys, "solve", f)
    assert (code, out) == (1, "IMMUNE (thm=6)\n")


def test_solve_strict_by_default(capsys, tmp_path):
    f = tmp_path / "q.gi"
    f.write_text("gi-instance v1\nproblem: GCDI\nrule: consent 1 1\nS: 0\nk: 0\ngi-profile v1\nn 1\n1\n")
    code, _, err = run(capsys, "solve", f)
    assert code == 2 and "already" in err
    code, out, _ = run(capsys, "solve", f, "--lenient")
    assert (code, out) == (0, "ALREADY_QUALIFIED [] (solver=precheck)\n")


def test_solve_bad_strategy_exit_2(capsys):
    code, _, err = run(capsys, "solve", DATA / "gcdi_example.gi", "--strategy", "poly-thm8")
    assert code == 2


def test_brute_and_auto_agree_on_random_corpus(capsys, tmp_path):
    for seed in range(20):
        f = tmp_path / f"r{seed}.gi"
        problem = ["GCAI", "GCDI", "GCPI"][seed % 3]
        rule = ["consent 2 2", "csr", "consent 3 2", "lsr"][seed % 4]
        assert run(capsys, "gen", "random", "--seed", seed, "--problem", problem, "--rule", rule, "--n", 5, "-o", f)[0] == 0
        a = run(capsys, "solve", "--lenient", f)
        b = run(capsys, "solve", "--lenient", "--strategy", "brute-force", f)
        if "ALREADY" not in a[1]:
            assert a[0] == b[0]


def test_gen_rx3c_gcai_golden(capsys, tmp_path):
    out = tmp_path / "g.gi"
    assert run(capsys, "gen", "rx3c-gcai", DATA / "rx3c_k1.rx3c", "-o", out)[0] == 0
    assert out.read_bytes() == (DATA / "rx3c_k1_gcai.gi").read_bytes()


def test_gen_random_is_deterministic(capsys, tmp_path):
    a, b, c = tmp_path / "a.gi", tmp_path / "b.gi", tmp_path / "c.gi"
    run(capsys, "gen", "random", "--seed", 42, "-o", a)
    run(capsys, "gen", "random", "--seed", 42, "-o", b)
    run(capsys, "gen", "random", "--seed", 43, "-o", c)
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()
    F.parse_instance(a.read_text())


def test_gen_chain_to_lrbds_gcpi(capsys, tmp_path):
    src, mid, out = tmp_path / "s.rbds", tmp_path / "s.lrbds", tmp_path / "o.gi"
    run(capsys, "gen", "random-source", "--source-kind", "rbds", "-k", 2, "--seed", 1, "-o", src)
    run(capsys, "gen", "rbds-lrbds", src, "-o", mid)
    assert run(capsys, "gen", "lrbds-gcpi", mid, "-o", out)[0] == 0
    inst = F.parse_instance(out.read_text())
    assert inst.S.bit_count() == 1


@pytest.mark.parametrize("kind", ["rx3c", "cnf3", "rbds", "lrbds"])
def test_gen_random_source_roundtrips(capsys, kind):
    code, out, _ = run(capsys, "gen", "random-source", "--source-kind", kind, "--seed", 5, "-k", 2)
    assert code == 0
    assert F.serialize_source(F.parse_source(out)) == out


def test_gen_wrong_source_kind(capsys):
    code, _, err = run(capsys, "gen", "cnf3-gcpi", DATA / "rx3c_k1.rx3c")
    assert code == 2


def test_verify(capsys):
    assert run(capsys, "verify", DATA / "gcdi_example.gi", "1") == (0, "ACCEPT\n", "")
    assert run(capsys, "verify", DATA / "gcdi_example.gi") == (1, "REJECT\n", "")
    assert run(capsys, "verify", DATA / "gcdi_example.gi", "0")[0] == 2


def test_verify_brute_witness_roundtrip(capsys, tmp_path):
    f = tmp_path / "r.gi"
    run(capsys, "gen", "random", "--seed", 8, "--problem", "GCPI", "--rule", "consent 2 2", "--n", 6, "-o", f)
    v = solve(F.parse_instance(f.read_text()), Strategy.BRUTE_FORCE)
    if v.witness is not None:
        assert run(capsys, "verify", f, *members(v.witness))[0] == 0


def test_bench_csv(capsys, tmp_path):
    for i in range(6):
        run(capsys, "gen", "random", "--seed", i, "--problem", "GCDI", "--rule", f"consent {1 + i % 3} 2", "-o", tmp_path / f"c{i}.gi")
    run(capsys, "gen", "random", "--seed", 9, "--problem", "GCPI", "--rule", "lsr", "-o", tmp_path / "imm.gi")
    code, out, _ = run(capsys, "bench", tmp_path)
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert tuple(rows[0].keys()) == BENCH_COLUMNS
    by = {}
    for r in rows:
        by.setdefault(r["instance"], {})[r["solver"]] = r
    for name, solvers_ in by.items():
        if "poly-thm3" in solvers_:
            assert solvers_["poly-thm3"]["outcome"] == solvers_["brute-force"]["outcome"]
    imm = by["imm.gi"]["immunity"]
    assert imm["witness"] == "" and imm["outcome"] in ("IMMUNE", "ALREADY_QUALIFIED")


def test_bench_empty_dir(capsys, tmp_path):
    assert run(capsys, "bench", tmp_path)[0] == 2


def test_ilp_dump(capsys):
    code, out, _ = run(capsys, "ilp-dump", DATA / "rx3c_k1_gcai.gi")
    assert code == 0 and out.startswith("vars 1\n")
    code, _, _ = run(capsys, "ilp-dump", DATA / "csr_example.gp")
    assert code == 2


def test_console_script_exit_codes(tmp_path):
    exe = [sys.executable, "-m", "groupcontrol.cli"]
    ok = subprocess.run(exe + ["solve", str(DATA / "gcdi_example.gi")], capture_output=True, text=True)
    assert ok.returncode == 0 and ok.stdout == "YES [1] (solver=poly-thm3)\n"
    bad = subprocess.run(exe + ["solve"], capture_output=True, text=True)
    assert bad.returncode == 2
