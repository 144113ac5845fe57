from __future__ import annotations

import json
import shlex

from conftest import GOLDEN


def run(runner, *args):
    return runner.invoke(args=list(args))


def test_fc_check(runner):
    out = run(runner, "fc-check", "--graph", "caffine", "--n", "3", "--word", "1 3 2 1 2")
    assert out.exit_code == 0
    assert out.output == "not fully commutative\n"
    out = run(runner, "fc-check", "--graph", "caffine", "--n", "3", "--word", "1 2 1 3 2")
    assert out.output.splitlines()[0] == "fully commutative"


def test_enumerate_b2(runner):
    out = run(runner, "enumerate", "--graph", "b", "--n", "2", "--max-len", "4")
    assert out.exit_code == 0
    assert len(out.output.splitlines()) == 7


def test_enumerate_tsv(runner):
    out = run(runner, "enumerate", "--graph", "b", "--n", "2", "--max-len", "1", "--format", "tsv")
    assert out.output.splitlines() == ["0\te\t", "1\t1\t1", "1\t2\t2"]


def test_tl_mul(runner):
    out = run(runner, "tl-mul", "--graph", "caffine", "--n", "4", "--word", "1 2 1 2")
    assert out.exit_code == 0
    assert out.output == "2 * b[1 2]\n"
    out = run(runner, "tl-mul", "--graph", "caffine", "--n", "4", "--words", "2;1 2 1 3")
    assert out.output == "2 * b[2 1 3]\n"


def test_star_trace(runner):
    out = run(runner, "star", "--graph", "caffine", "--n", "4", "--word", "1 2 1 3")
    assert out.output.splitlines()[-1] == "end    1 3"
    out = run(runner, "star", "--graph", "caffine", "--n", "3", "--word", "1 2",
              "--side", "L", "--s", "1", "--t", "2")
    assert out.output == "undefined\n"


def test_heap(runner):
    out = run(runner, "heap", "--graph", "caffine", "--n", "5", "--word", "3 2 1 2 5 4 6 5")
    lines = out.output.splitlines()
    assert "\n".join(lines[:4]) + "\n" == (GOLDEN / "heap_c5_32125465.txt").read_text(encoding="utf-8")
    assert lines[4] == "n-value 3"


def test_irreducible_b2(runner):
    out = run(runner, "irreducible", "--graph", "b", "--n", "2", "--max-len", "4")
    assert out.output.splitlines() == ["e", "1", "2", "1 2", "2 1"]
    out = run(runner, "irreducible", "--graph", "b", "--n", "2", "--max-len", "4", "--classified")
    assert out.output.splitlines() == ["e", "1", "2", "1 2", "2 1"]


def test_theta_render_golden(runner):
    out = run(runner, "theta", "--graph", "caffine", "--n", "4", "--word", "1 2 1 3", "--render")
    assert out.exit_code == 0
    assert out.output == (GOLDEN / "theta_c4_1213.txt").read_text(encoding="utf-8")


def test_theta_inverse(runner):
    out = run(runner, "theta", "--graph", "caffine", "--n", "2",
              "--inverse", str(GOLDEN / "d123_c2.txt"))
    assert out.output == "1 2 3\n"


def test_diagram_from_file(runner):
    out = run(runner, "diagram", "--graph", "caffine", "--n", "2",
              "--file", str(GOLDEN / "d123_c2.txt"), "--factor")
    assert out.exit_code == 0
    lines = out.output.splitlines()
    assert lines[0] == "coeff 1"
    assert lines[-1] == "factor 1 2 3"


def test_diagram_rejects_inadmissible(runner, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("n=2 loops=1\nedge N1-S1 deco=\nedge N2-S2 deco=\nedge N3-S3 deco=\nedge N4-S4 deco=\n")
    out = run(runner, "diagram", "--graph", "caffine", "--n", "2", "--file", str(bad))
    assert out.exit_code == 1


def test_diagram_word_coefficient(runner):
    out = run(runner, "diagram", "--graph", "caffine", "--n", "3", "--word", "1 1")
    assert out.output.splitlines()[0] == "coeff d"


def test_usage_errors_exit_2(runner):
    assert run(runner, "fc-check", "--graph", "caffine", "--n", "3").exit_code == 2
    assert run(runner, "fc-check", "--graph", "x", "--n", "3", "--word", "1").exit_code == 2
    assert run(runner, "tl-mul", "--graph", "caffine", "--n", "3").exit_code == 2
    assert run(runner, "theta", "--graph", "a", "--n", "3", "--word", "1").exit_code == 2


def test_domain_errors_exit_1(runner):
    out = run(runner, "heap", "--graph", "caffine", "--n", "3", "--word", "1 3 2 1 2")
    assert out.exit_code == 1
    out = run(runner, "fc-check", "--graph", "caffine", "--n", "3", "--word", "9")
    assert out.exit_code == 1
    out = run(runner, "enumerate", "--graph", "caffine", "--n", "1", "--max-len", "2")
    assert out.exit_code == 1


def test_verify_confluence_and_audit(app, runner, tmp_path):
    log = tmp_path / "audit.jsonl"
    app.config["AUDIT_LOG"] = str(log)
    out = run(runner, "verify", "--suite", "confluence", "--seed", "11")
    assert out.exit_code == 0
    assert out.output.splitlines()[-1] == "ALL PASS"
    row = json.loads(log.read_text(encoding="utf-8").splitlines()[-1])
    assert row["entity_type"] == "verify"
    assert row["after"]["failed"] == []


def test_verify_survives_unwritable_audit_log(app, runner, tmp_path):
    # AUDIT_LOG apontando para um diretório
    app.config["AUDIT_LOG"] = str(tmp_path)
    out = run(runner, "verify", "--suite", "confluence", "--seed", "11")
    assert out.exit_code == 0
    assert out.output.splitlines()[-1] == "ALL PASS"


def test_heap_example_in_commands_file(runner):
    text = (GOLDEN.parents[1] / "COMANDOS.txt").read_text(encoding="utf-8")
    line = next(ln for ln in text.splitlines() if " heap " in ln)
    out = runner.invoke(args=shlex.split(line.split("app:app ", 1)[1]))
    assert out.exit_code == 0
    lines = out.output.splitlines()
    assert "\n".join(lines[:4]) + "\n" == (GOLDEN / "heap_c5_32125465.txt").read_text(encoding="utf-8")


def test_verify_is_deterministic(runner):
    args = ("verify", "--suite", "coherence", "--seed", "4")
    assert run(runner, *args).output == run(runner, *args).output


def test_verify_relations(runner):
    out = run(runner, "verify", "--suite", "relations")
    assert out.exit_code == 0
