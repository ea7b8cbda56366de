import json
import subprocess
import sys

import pytest

import support
from trialab import io
from trialab.algebra import LEIBNIZ, Algebra
from trialab.cli import main
from trialab.linalg import Matrix

PERTURBED_L3 = Algebra.build(LEIBNIZ, 3, {"bracket": [(0, 2, 0, -2), (1, 1, 0, 1), (1, 1, 1, 1), (2, 1, 1, 1),
                                                       (1, 2, 1, -1)]})


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def perturbed(tmp_path):
    p = tmp_path / "bad-l3.json"
    io.save(PERTURBED_L3, p)
    return p


@pytest.mark.parametrize("name", ["leibniz3", "ternary2", "assoc2", "tri2"])
def test_check_structure_on_fixtures(capsys, name):
    code, out, _ = run(capsys, "check", "structure", f"fixtures/{name}.json")
    assert code == 0
    assert out == "OK\t0 violations\n"


def test_check_structure_reports_witness(capsys, perturbed):
    code, out, _ = run(capsys, "check", "structure", perturbed)
    assert code == 1
    lines = out.splitlines()
    assert any(line.startswith("VIOLATION\tleibniz\t(1,1,2)\t[e2 e2 e3]") for line in lines)
    assert lines[-1].startswith("FAIL\t")


def test_json_report(capsys, perturbed):
    code, out, _ = run(capsys, "check", "structure", perturbed, "--json")
    assert code == 1
    doc = json.loads(out)
    assert doc["schema"] == "trialab/report@1" and doc["ok"] is False
    assert {"axiom": "leibniz", "witness": [1, 1, 2], "labels": ["e2", "e2", "e3"]}.items() <= \
        next(v for v in doc["violations"] if v["witness"] == [1, 1, 2]).items()


def test_input_errors_exit_two(capsys, tmp_path):
    code, _, err = run(capsys, "check", "structure", tmp_path / "missing.json")
    assert code == 2 and "error:" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{", encoding="utf-8")
    code, _, err = run(capsys, "check", "structure", bad)
    assert code == 2 and "parse error" in err
    code, _, err = run(capsys, "check", "structure", "fixtures/ideal-tri2.json")
    assert code == 2 and "holds a subspace" in err


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "nonsense"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_t_tri_pipeline(capsys, tmp_path):
    out_path = tmp_path / "out.json"
    code, out, _ = run(capsys, "functor", "t-tri", "fixtures/tri2.json", "-o", out_path)
    assert code == 0 and out == ""
    code, out, _ = run(capsys, "check", "structure", out_path)
    assert code == 0


@pytest.mark.parametrize("variant", ["main", "b1", "b2"])
def test_t_tri_variants_to_stdout(capsys, variant):
    code, out, _ = run(capsys, "functor", "t-tri", "tri2", "--variant", variant)
    assert code == 0
    assert json.loads(out)["kind"] == "ternary-leibniz"


def construction_cases(tmp_path):
    io.save(Matrix.zeros(3, 3), tmp_path / "zero3.json")
    io.save(Matrix.identity(2), tmp_path / "id2.json")
    io.save(Matrix.identity(1, -1), tmp_path / "neg1.json")
    io.save(Matrix.identity(2, -1), tmp_path / "neg2.json")
    io.save(Matrix.zeros(2, 2), tmp_path / "zero2.json")
    io.save(support.fixture("cm-ideal-tri2").action, tmp_path / "act-tri2.json")
    io.save(support.fixture("cm-ideal-ternary2").action, tmp_path / "act-t2.json")
    io.save(Matrix.zeros(1, 1), tmp_path / "zero1.json")
    return [
        (["construct", "quotient", "tri2", "ideal-tri2"], "structure"),
        (["construct", "direct-sum", "leibniz3", "leibniz3"], "structure"),
        (["construct", "semidirect", tmp_path / "act-tri2.json"], "structure"),
        (["construct", "from-ideal", "leibniz3", "ideal-leibniz3"], "crossed-module"),
        (["derive", "leibniz3", tmp_path / "zero3.json", "--operator", "rota-baxter", "--weight", "-1"], "structure"),
        (["derive", "tri2", tmp_path / "id2.json", "--operator", "averaging"], "structure"),
        (["functor", "t-leibniz", "leibniz3"], "structure"),
        (["functor", "swap", "ternary2"], None),
        (["functor", "opposite", "tri2"], "structure"),
        (["functor", "assoc-averaging", "assoc2", "--beta", tmp_path / "id2.json"], "structure"),
        (["induce", "ternary-cm", "cm-ideal-tri2", "--from", "triassoc"], "crossed-module"),
        (["induce", "ternary-cm", "cm-ideal-leibniz3", "--from", "leibniz"], "crossed-module"),
        (["twist", "averaging", "cm-ideal-tri2", tmp_path / "neg1.json", tmp_path / "neg2.json"], "crossed-module"),
        (["twist", "rb", tmp_path / "act-t2.json", tmp_path / "zero1.json", tmp_path / "zero2.json"], "action"),
    ]


def test_every_construction_output_passes_its_check(capsys, tmp_path):
    for n, (argv, check) in enumerate(construction_cases(tmp_path)):
        out_path = tmp_path / f"out{n}.json"
        code, _, err = run(capsys, *argv, "-o", out_path)
        assert code == 0, (argv, err)
        if check is not None:
            code, out, _ = run(capsys, "check", check, out_path)
            assert code == 0, (argv, out)


def test_rb_twist_of_leibniz_crossed_module(capsys, tmp_path):
    io.save(Matrix.zeros(2, 2), tmp_path / "ra.json")
    io.save(Matrix.zeros(3, 3), tmp_path / "rb.json")
    first, second = tmp_path / "first.json", tmp_path / "second.json"
    code, _, err = run(capsys, "twist", "rb", "cm-ideal-leibniz3", tmp_path / "ra.json", tmp_path / "rb.json",
                       "--weight", "1", "--ternary-output", second, "-o", first)
    assert code == 0, err
    for p in (first, second):
        assert run(capsys, "check", "crossed-module", p)[0] == 0


def test_failed_hypothesis_exits_two_with_report(capsys, tmp_path):
    io.save(Matrix.diagonal([0, 1]), tmp_path / "beta.json")
    code, out, err = run(capsys, "functor", "assoc-averaging", "assoc2", "--beta", tmp_path / "beta.json")
    assert code == 2 and out == ""
    assert "VIOLATION\tternary-leibniz" in err


def test_averaging_example_fixture(capsys):
    code, out, _ = run(capsys, "check", "operator", "assoc2", "averaging-example", "--operator", "averaging",
                       "--param", "a=1")
    assert code == 1 and "(0,0)" in out
    assert run(capsys, "check", "operator", "assoc2", "averaging-example", "--operator", "averaging",
               "--param", "a=0")[0] == 0
    code, _, err = run(capsys, "check", "operator", "assoc2", "averaging-example", "--operator", "averaging")
    assert code == 2 and "--param a=" in err


def test_check_operator_and_morphism(capsys, tmp_path):
    io.save(Matrix.identity(2, -1), tmp_path / "m.json")
    assert run(capsys, "check", "operator", "ternary2", tmp_path / "m.json", "--operator", "rota-baxter",
               "--weight", "1")[0] == 0
    assert run(capsys, "check", "operator", "ternary2", tmp_path / "m.json", "--operator", "reynolds")[0] == 2
    io.save(Matrix.diagonal([1, 2]), tmp_path / "d.json")
    code, out, _ = run(capsys, "check", "morphism", tmp_path / "d.json", "tri2", "tri2")
    assert code == 1 and "morphism[left]\t(1,1)" in out


def test_check_action_and_crossed_morphism(capsys, tmp_path):
    io.save(support.fixture("cm-ideal-tri2").action, tmp_path / "act.json")
    assert run(capsys, "check", "action", tmp_path / "act.json")[0] == 0
    io.save(Matrix.identity(1), tmp_path / "a.json")
    io.save(Matrix.identity(2), tmp_path / "b.json")
    assert run(capsys, "check", "crossed-morphism", tmp_path / "a.json", tmp_path / "b.json",
               "cm-ideal-tri2", "cm-ideal-tri2")[0] == 0


@pytest.mark.parametrize("which", ["shift", "semidirect-maps"])
def test_prop_reports(capsys, which):
    code, out, _ = run(capsys, "prop", which, "cm-ideal-tri2")
    assert code == 0 and out.startswith("OK")


def test_prop_flags(capsys, tmp_path):
    code, out, _ = run(capsys, "prop", "cm-properties", "cm-ideal-leibniz3")
    assert code == 0
    assert out.splitlines() == ["ker_in_ann\ttrue", "image_is_ideal\ttrue", "image_acts_trivially_on_ann\ttrue"]
    io.save(support.fixture("cm-ideal-tri2").action, tmp_path / "act.json")
    assert run(capsys, "prop", "t-semidirect", tmp_path / "act.json")[1] == "equal\ttrue\n"
    io.save(Matrix.zeros(3, 3), tmp_path / "r.json")
    code, out, _ = run(capsys, "prop", "rb-equality", "leibniz3", "--map", tmp_path / "r.json", "--weight", "-1")
    assert code == 0 and out == "equal\ttrue\n"
    assert run(capsys, "prop", "rb-equality", "leibniz3")[0] == 2


def test_search_operators(capsys):
    code, out, _ = run(capsys, "search", "operators", "leibniz3", "--kind", "rota-baxter", "--grid", "-1,0,1")
    assert code == 0
    lines = out.splitlines()
    assert lines[-1] == "TOTAL\t13"
    assert sum(line.startswith("FOUND\t") for line in lines) == 13
    code, out, _ = run(capsys, "search", "operators", "assoc2", "--kind", "averaging", "--grid", "0,1", "--json")
    assert code == 0 and all(d["schema"] == "trialab/map@1" for d in json.loads(out))
    code, _, err = run(capsys, "search", "operators", "assoc2", "--kind", "averaging", "--grid", "0,x")
    assert code == 2 and "bad --grid" in err


def test_negative_weight_with_space(capsys, tmp_path):
    io.save(Matrix.identity(2), tmp_path / "id.json")
    assert run(capsys, "check", "operator", "assoc2", tmp_path / "id.json", "--operator", "rota-baxter",
               "--weight", "-1")[0] == 0


def test_bad_param_syntax(capsys):
    code, _, err = run(capsys, "check", "operator", "assoc2", "averaging-example", "--operator", "averaging",
                       "--param", "a")
    assert code == 2 and "name=value" in err


def test_reports_are_independent_of_thread_count(capsys, monkeypatch, perturbed):
    outputs = []
    for threads in ("1", "4", "1"):
        monkeypatch.setenv("TRIALAB_THREADS", threads)
        outputs.append(run(capsys, "check", "structure", perturbed, "--json"))
    assert outputs[0] == outputs[1] == outputs[2]


def test_invalid_thread_count(capsys, monkeypatch, perturbed):
    for bad in ("0", "-3", "many"):
        monkeypatch.setenv("TRIALAB_THREADS", bad)
        code, _, err = run(capsys, "check", "structure", perturbed)
        assert code == 2 and "TRIALAB_THREADS" in err


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "trialab.cli", "check", "structure", "leibniz3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "OK\t0 violations\n"
