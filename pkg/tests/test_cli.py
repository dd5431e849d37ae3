import json
import subprocess
import sys

import pytest

from wcderived.cli import main, run


def run_json(*args):
    code, text = run([*args, "--json"])
    return code, json.loads(text) if code != 2 else text


def test_no_arguments_prints_usage(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().err


def test_classify_example():
    code, out = run_json("classify", "n=5", "aut=1,4")
    assert code == 0
    assert out["result"]["iso_classes"] == 3 and out["result"]["derived_classes"] == 2
    assert set(out) == {"command", "inputs", "result", "checks"}
    assert all(c["passed"] for c in out["checks"])


def test_h1_real_example():
    code, out = run_json("h1-real", "a=-1/1", "b=0/1")
    assert code == 0 and out["result"]["h1_size"] == 2
    assert out["result"]["discriminant"] == "64/1"


@pytest.mark.parametrize("argv, key, value", [
    (["h1", "group=C2", "module=2,2"], "size", 4),
    (["h1", "group=C2", "module=2,2", "action=1,0;0,1|0,1;1,0"], "size", 1),
    (["cocycle-check", "group=C2", "module=4", "action=1|3", "values=0|1"], "is_cocycle", True),
    (["cocycle-check", "group=C2", "module=4", "action=1|3", "values=0|2"], "is_coboundary", True),
    (["cocycle-check", "group=C2", "module=4", "action=1|1", "values=0|1"], "is_cocycle", False),
    (["picd", "group=C4", "module=5", "action=1|2|4|3", "alpha=0|1|3|2", "d=3"], "beta", [[0], [3], [4], [1]]),
    (["ffcurve", "p=5", "a=1", "b=0"], "order", 4),
    (["ffcurve", "p=7", "a=0", "b=1"], "aut_order", 6),
    (["cubic", "p=5", "coeffs=1,0,0,0,0,0,1,0,0,1", "point=1,4,0"], "point_count", 6),
    (["orbit", "N=1", "m=5", "start=1,0"], "orbit_size", 24),
    (["orbit", "N=2", "m=8", "phi=2", "start=1,0"], "group_action", False),
    (["polarized-check", "N=3", "m=9"], "passed", True),
    (["sp", "genus=1", "m=5"], "size", 120),
    (["sp", "genus=2", "m=2"], "size", 720),
    (["brauer", "n=3", "br=2", "alpha=1:1", "beta=2:1"], "witness", 5),
    (["brauer", "n=2", "br=2", "alpha=1:0", "beta=1:1"], "same_cyclic_in_quotient", False),
])
def test_commands(argv, key, value):
    code, out = run_json(*argv)
    assert code == 0, out
    assert out["result"][key] == value


def test_gmodule_file(tmp_path):
    f = tmp_path / "m.txt"
    f.write_text("group C2\nmodule 2 2\naction 1,0;0,1\naction 0,1;1,0\n")
    code, out = run_json("h1", f"file={f}")
    assert code == 0 and out["result"]["size"] == 1


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["classify"],
    ["classify", "n=5", "bogus=1"],
    ["classify", "n=five"],
    ["classify", "n=5", "n=6"],
    ["classify", "n=5", "aut=2,3"],
    ["ffcurve", "p=5", "a=0", "b=0"],
    ["ffcurve", "p=9", "a=1", "b=1"],
    ["h1-real", "a=0", "b=0"],
    ["h1-real", "a=1/0", "b=0"],
    ["cubic", "p=5", "coeffs=0,0,0,0,1,0,0,0,0,0"],
    ["cubic", "p=5", "coeffs=1,2"],
    ["cubic", "p=5", "coeffs=1,0,0,0,0,0,1,0,0,1", "point=1,1,1"],
    ["orbit", "N=1", "m=100", "start=1,0"],
    ["sp", "genus=2", "m=6"],
    ["sp", "genus=3", "m=2"],
    ["picd", "group=C2", "module=4", "action=1|3", "alpha=0|1", "d=-1"],
    ["h1", "group=C9", "module=2"],
    ["h1", "file=/nonexistent/file"],
    ["reproduce"],
    ["reproduce", "nothing"],
    ["reproduce", "existence", "x=1"],
])
def test_validation_errors_exit_2(argv):
    code, text = run(argv)
    assert code == 2
    assert text.startswith("error:")


def test_guard_scale_env(monkeypatch):
    assert run(["sp", "genus=2", "m=5"])[0] == 2
    monkeypatch.setenv("WC_GUARD_SCALE", "0")
    assert run(["classify", "n=5"])[0] == 2


def test_failed_check_exits_1(monkeypatch):
    from wcderived import cli

    monkeypatch.setattr(cli.ff, "hasse_ok", lambda E, n=None: False)
    code, text = run(["ffcurve", "p=5", "a=1", "b=0", "--json"])
    assert code == 1
    assert json.loads(text)["checks"][0]["passed"] is False


def test_invariant_error_exits_1(monkeypatch):
    from wcderived import cli
    from wcderived.errors import InvariantError

    def boom(*a, **k):
        raise InvariantError("broken")

    monkeypatch.setattr(cli.tm, "classify", boom)
    assert run(["classify", "n=5"])[0] == 1


@pytest.mark.parametrize("name", ["finite-field", "real", "existence", "moduli-spaces", "polarized", "fibration"])
def test_reproduce_bundles(name):
    code, out = run_json("reproduce", name)
    assert code == 0
    assert out["checks"] and all(c["passed"] for c in out["checks"])


def test_reproduce_moduli_spaces_n3():
    code, out = run_json("reproduce", "moduli-spaces", "N=3")
    assert code == 0
    assert out["result"]["p"] == 11 and out["result"]["generator_iso_classes"] == 5


def test_reproduce_existence_counts():
    _, out = run_json("reproduce", "existence")
    assert out["result"]["generator_iso_classes"] == 2
    assert out["result"]["generator_derived_classes"] == 1


@pytest.mark.parametrize("argv", [
    ["classify", "n=12", "aut=1,5,7,11"],
    ["h1-real", "a=-7/3", "b=1/5"],
    ["reproduce", "real"],
    ["brauer", "n=4", "br=2,2", "brs=1,0", "alpha=1:0,1", "beta=3:1,1"],
])
def test_json_round_trip_no_floats(argv):
    code, text = run([*argv, "--json"])
    obj = json.loads(text)
    assert json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) == text

    def walk(v):
        assert not isinstance(v, float)
        if isinstance(v, dict):
            [walk(x) for x in v.values()]
        elif isinstance(v, list):
            [walk(x) for x in v]

    walk(obj)


def test_seed_is_reproducible():
    a = run(["reproduce", "real", "--json", "--seed", "7"])[1]
    b = run(["reproduce", "real", "--json", "--seed", "7"])[1]
    assert a == b
    assert json.loads(a)["inputs"]["seed"] == 7


def test_table_format():
    code, text = run(["classify", "n=5", "aut=1,4", "--format", "table"])
    assert code == 0 and "[PASS]" in text and "iso_classes: 3" in text


def test_console_entry_point():
    out = subprocess.run([sys.executable, "-m", "wcderived", "classify", "n=5", "--json"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["command"] == "classify"
    bad = subprocess.run([sys.executable, "-m", "wcderived", "classify", "n=0"], capture_output=True, text=True)
    assert bad.returncode == 2 and "error" in bad.stderr
