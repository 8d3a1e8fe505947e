import io
import json
import random
import subprocess
import sys

import pytest

from powercentral import Monomial, format_element, format_monomial, parse_element, parse_monomial
from powercentral.cli import run
from powercentral.config import DEFAULT_LIMITS, ConfigError, parse_config

QUAT = """\
[algebra]
kind = quaternion
a = -1
b = -1

[constants]
a = [0,1,0,0]
j = [0,0,1,0]

[limits]
seed = 0
"""

GL2F2 = """\
[algebra]
kind = matrix(2, finite-field(2))

[constants]
a = [[1,1],[0,1]]
"""


def invoke(tmp_path, text, *argv):
    cfg = tmp_path / "session.ini"
    cfg.write_text(text)
    out, err = io.StringIO(), io.StringIO()
    code = run(["-c", str(cfg), *argv], stdout=out, stderr=err)
    records = [json.loads(line) for line in out.getvalue().splitlines()]
    return code, records, err.getvalue(), out.getvalue()


# -- config -------------------------------------------------------------------


def test_parse_quaternion_config():
    cfg = parse_config(QUAT)
    assert str(cfg.algebra) == "quaternion(-1,-1)"
    assert str(cfg.constants["a"]) == "[0,1,0,0]"
    assert cfg.limits == DEFAULT_LIMITS
    assert cfg.seed == 0


def test_config_errors():
    with pytest.raises(ConfigError):
        parse_config("[algebra]\nkind = finite-field\np = 4\n")
    with pytest.raises(ConfigError):
        parse_config("[constants]\na = 1\n")
    with pytest.raises(ConfigError):
        parse_config(QUAT + "bogus = 3\n")
    with pytest.raises(ConfigError):
        parse_config(QUAT.replace("[0,1,0,0]", "[0,1,0]"))


def test_matrix_over_quaternion_constant_round_trips():
    text = "[algebra]\nkind = matrix(2, quaternion(-1,-1))\n[constants]\nm = [[[1,0,0,0],[0,1,0,0]],[[0,0,1,0],[1/2,0,0,-1]]]\n"
    cfg = parse_config(text)
    m = cfg.constants["m"]
    assert str(m) == "[[[1,0,0,0],[0,1,0,0]],[[0,0,1,0],[1/2,0,0,-1]]]"
    assert parse_element(cfg.algebra, str(m)) == m


def test_digest_depends_on_text():
    assert parse_config(QUAT).digest != parse_config(QUAT + "p_max = 8\n").digest


# -- round trips ----------------------------------------------------------------


def test_literal_and_dsl_round_trip_fuzz():
    cfg = parse_config(QUAT)
    alg = cfg.algebra
    rng = random.Random(2024)
    for _ in range(1000):
        x = alg.element(alg.random(rng, 6))
        text = format_element(x)
        assert format_element(parse_element(alg, text)) == text
        spaced = text.replace(",", " , ")
        assert format_element(parse_element(alg, spaced)) == text
        t = rng.randint(1, 4)
        coeffs = [rng.choice([cfg.constants["a"], cfg.constants["j"], alg.one, x]) for _ in range(t + 1)]
        coeffs = [c if c.is_unit() else alg.one for c in coeffs]
        letters = [(rng.randint(1, 3), rng.choice([-2, -1, 1, 3])) for _ in range(t)]
        w = Monomial.make(coeffs, letters)
        if w.is_constant():
            continue
        dsl = format_monomial(w, cfg.constants)
        assert format_monomial(parse_monomial(dsl, cfg.constants, alg), cfg.constants) == dsl


# -- commands --------------------------------------------------------------------


def test_check_gpcgi_exhaustive_gl2f2(tmp_path):
    code, recs, _, _ = invoke(tmp_path, GL2F2, "check-gpcgi", "--w", "@a * x1 * @a^-1 * x1^-1", "--scope", "exhaustive")
    assert code == 0
    header, report = recs
    assert header["record"] == "header" and header["command"] == "check-gpcgi"
    assert header["config_digest"] == parse_config(GL2F2).digest
    assert report["status"] == "holds-exhaustive" and report["tuples"] == 6
    assert report["M"] == 3


def test_series_invert_command(tmp_path):
    code, recs, _, _ = invoke(tmp_path, QUAT, "series-invert", "--a", "[0,1,0,0]", "--order", "3")
    assert code == 0
    assert recs[1]["terms"] == [[0, "[1,0,0,0]"], [1, "[0,-1,0,0]"], [2, "[-1,0,0,0]"], [3, "[0,1,0,0]"]]


def test_series_invert_both_routes(tmp_path):
    code, recs, _, _ = invoke(tmp_path, QUAT, "series-invert", "--a", "a", "--route", "both")
    assert code == 0 and recs[1]["terms"] == recs[2]["terms"]


def test_failing_verdicts_exit_one(tmp_path):
    code, recs, _, _ = invoke(tmp_path, QUAT, "check-gpcgi", "--w", "@a * x1 * @a^-1 * x1^-1")
    assert code == 1 and recs[1]["status"] == "fails"
    code, recs, _, _ = invoke(tmp_path, QUAT, "retarget", "--w", "@a * x1 * @a^-1 * x1^-1")
    assert code == 1 and recs[1]["status"] == "transform-failed"
    code, recs, _, _ = invoke(tmp_path, QUAT, "free-search", "--u", "a", "--v", "[1,0,1,0]")
    assert code == 1 and recs[1]["verdict"] == "relation-found"


def test_usage_errors_exit_two(tmp_path):
    code, _, _, _ = invoke(tmp_path, QUAT, "no-such-command")
    assert code == 2
    code, _, err, _ = invoke(tmp_path, QUAT, "nontrivial", "--w", "x1^0")
    assert code == 2 and "zero exponent" in err
    code, _, err, _ = invoke(tmp_path, "[algebra]\nkind = finite-field\np = 4\n", "torsion", "--x", "1")
    assert code == 2
    code, _, _, _ = invoke(tmp_path, QUAT, "bad-beta", "--a", "[1,2]")
    assert code == 2


def test_budget_errors_exit_three(tmp_path):
    code, _, err, _ = invoke(tmp_path, QUAT, "free-search", "--u", "a", "--v", "[1,1,1,0]", "--L", "12")
    assert code == 3
    text = GL2F2 + "[limits]\ncap = 10\n"
    code, _, _, _ = invoke(tmp_path, text, "check-ggi", "--w", "x1 * x2", "--scope", "exhaustive")
    assert code == 3


def test_every_command_runs(tmp_path):
    cases = [
        ("nontrivial", "--w", "@a * x1 * @a^-1 * x2^-1"),
        ("reduce", "--w", "@a * x1 * @a^-1 * x2^-1", "--a", "a", "--series", "n"),
        ("build-c", "--a", "a", "--series", "n,f2"),
        ("build-c", "--a", "a", "--u"),
        ("expand", "--w", "@a * x1 * @a^-1 * x1^-1", "--args", "j", "--order", "4"),
        ("bad-beta", "--a", "a"),
        ("pipeline", "--w", "@a * x1 * @a^-1 * x1^-1", "--count", "3", "--alpha", "2"),
        ("torsion", "--x", "a"),
        ("radical", "--x", "[1,1,0,0]"),
        ("free-search", "--u", "a", "--v", "[1,1,1,0]", "--L", "4"),
    ]
    for argv in cases:
        code, recs, err, _ = invoke(tmp_path, QUAT, *argv)
        assert code == 0, (argv, err)
        assert recs[0]["record"] == "header" and recs[0]["seed"] == 0
    code, recs, _, _ = invoke(tmp_path, GL2F2, "check-ggi", "--w", "x1^6")
    assert code == 0 and recs[1]["status"] == "holds-exhaustive"
    code, recs, _, _ = invoke(tmp_path, GL2F2, "exponent", "--a", "a")
    assert code == 0 and recs[1]["m"] == 6


def test_expand_output(tmp_path):
    _, recs, _, _ = invoke(tmp_path, QUAT, "expand", "--w", "@a * x1 * @a^-1 * x1^-1", "--args", "j", "--order", "2")
    assert recs[1]["terms"][1] == [1, "[0,0,-2,0]"]


def test_same_seed_same_bytes(tmp_path):
    argv = ("check-gpcgi", "--w", "@a * x1 * @a^-1 * x1^-1", "--count", "30")
    first = invoke(tmp_path, QUAT, *argv)[3]
    second = invoke(tmp_path, QUAT, *argv)[3]
    assert first == second
    other = invoke(tmp_path, QUAT, "--seed", "5", *argv)[3]
    assert json.loads(other.splitlines()[0])["seed"] == 5


def test_module_entry_point(tmp_path):
    cfg = tmp_path / "q.ini"
    cfg.write_text(QUAT)
    proc = subprocess.run(
        [sys.executable, "-m", "powercentral", "-c", str(cfg), "torsion", "--x", "a"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout.splitlines()[1]) == {"record": "torsion", "x": "[0,1,0,0]", "bound": 64, "order": 4}
