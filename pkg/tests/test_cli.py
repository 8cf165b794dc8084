import subprocess
import sys
from importlib import resources

import pytest

from roughproof import algebra
from roughproof.cli import main
from roughproof.parser import parse_proof

EXCLUDED_MIDDLE = "(seq s-top (s-vee (circI (boxI p)) (neg (circI (boxI p)))))"


def golden(name):
    return str(resources.files("roughproof") / "data" / name)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out, out.strip().splitlines()[-1]


def test_check_golden(capsys):
    code, out, last = run(capsys, "check", golden("golden_t6.mtp"), "--calculus", "D.IA1")
    assert code == 0 and last == "RESULT: valid"


def test_check_uses_header_calculus(capsys):
    code, _, last = run(capsys, "check", golden("golden_t7_lr.mtp"))
    assert code == 0 and last == "RESULT: valid"


def test_check_wrong_calculus_is_logical_failure(capsys):
    code, out, last = run(capsys, "check", golden("golden_t6.mtp"), "--calculus", "D.TQBA")
    assert code == 1 and last == "RESULT: invalid"
    assert "error at [" in out


def test_prove_emits_checkable_proof(capsys, tmp_path):
    target = tmp_path / "proof.mtp"
    code, out, last = run(capsys, "prove", "(seq (circI (boxI p)) p)", "--calculus", "D.TQBA",
                          "--depth", "20", "-o", str(target))
    assert code == 0 and last == "RESULT: Proved"
    assert "(rule " in out
    code, _, last = run(capsys, "check", str(target))
    assert code == 0 and last == "RESULT: valid"


def test_prove_failure(capsys):
    code, _, last = run(capsys, "prove", EXCLUDED_MIDDLE.replace("s-top", "top")
                        .replace("(s-vee", "(or"), "--calculus", "D.TQBA", "--depth", "25")
    assert code == 1 and last == "RESULT: Exhausted"


def test_countermodel_found(capsys):
    code, out, last = run(capsys, "countermodel", EXCLUDED_MIDDLE, "--class", "htqba5",
                          "--size", "4")
    assert code == 0 and last == "RESULT: countermodel"
    text = out.split("assignment:")[0]
    H = algebra.loads(text)
    assert "htqBa5" in H.classify() and "hIA1" not in H.classify()


def test_countermodel_expectations(capsys):
    code, _, last = run(capsys, "countermodel", "(seq (circI (boxI p)) p)", "--expect", "none")
    assert code == 0 and last == "RESULT: none"
    code, _, _ = run(capsys, "countermodel", "(seq (circI (boxI p)) p)", "--expect", "found")
    assert code == 1
    code, _, _ = run(capsys, "countermodel", "(seq p q)", "--expect", "none")
    assert code == 1


def test_cutfree_writes_trace(capsys, tmp_path):
    target = tmp_path / "out.mtp"
    code, out, last = run(capsys, "cutfree", golden("golden_t8_closed.mtp"), "-o", str(target))
    assert code == 0 and last == "RESULT: cut-free"
    assert "; trace: cut Cut_D at [" in out
    tree = parse_proof(target.read_text())
    assert "Cut_D" not in tree.rules_used()


def test_translate(capsys):
    code, out, last = run(capsys, "translate", "(I p)")
    assert code == 0 and out.splitlines()[0] == "(circI (boxI p))"
    code, out, last = run(capsys, "translate", "--logic", "H.IA3")
    assert code == 0 and last == "RESULT: 12 goals"


def test_classify(capsys, tmp_path):
    f = tmp_path / "chain.alg"
    f.write_text("kind: single\nsize: 3\nnames: 0 a 1\nleq: 0<a a<1\nneg: 1 a 0\ninterior: 0 0 1\n")
    code, _, last = run(capsys, "classify", str(f))
    assert code == 0 and last == "RESULT: tqBa tqBa5 IA1 IA2 IA3 pra"
    f.write_text("kind: single\nsize: 2\nnames: 0 1\nleq: 0<1\nneg: 1 0\ninterior: 1 1\n")
    code, _, last = run(capsys, "classify", str(f))
    assert code == 1 and last == "RESULT: not a tqBa"


def test_enumerate_counts(capsys):
    code, out, last = run(capsys, "enumerate", "--size", "5")
    assert code == 0 and last == "RESULT: 21 algebras"
    assert "size 4: 10" in out and "size 5: 8" in out


def test_soundness_single_calculus(capsys):
    code, out, last = run(capsys, "soundness", "--calculus", "D.IA3", "--size", "4", "--jobs", "1")
    assert code == 0 and last == "RESULT: sound"


@pytest.mark.parametrize("argv", [
    ["check"],
    ["prove", "(seq p p)", "--depth", "0"],
    ["enumerate", "--size", "-1"],
    ["check", "/nonexistent/file.mtp"],
    ["prove", "(seq p"],
    ["prove", "(seq p p)", "--calculus", "D.NOPE"],
    ["translate"],
    ["translate", "--logic", "H.K"],
    ["enumerate", "--size", "9"],
    ["countermodel", "(seq p q)", "--class", "nope"],
    ["frobnicate"],
])
def test_usage_errors_exit_two(capsys, argv):
    assert main(argv) == 2


def test_malformed_alg(capsys, tmp_path):
    f = tmp_path / "bad.alg"
    f.write_text("size: x\n")
    assert main(["classify", str(f)]) == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "roughproof", "translate", "(C p)"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert proc.stdout.splitlines() == ["(circC (diamC p))", "RESULT: ok"]


def test_deterministic_output(capsys):
    _, first, _ = run(capsys, "prove", "(seq (and (circI (boxI p)) (circI (boxI q))) "
                      "(circI (boxI (and p q))))", "--calculus", "D.TQBA")
    _, second, _ = run(capsys, "prove", "(seq (and (circI (boxI p)) (circI (boxI q))) "
                       "(circI (boxI (and p q))))", "--calculus", "D.TQBA")
    assert first == second
