import io
import json
import subprocess
import sys

import pytest

from motivic_steenrod.algebra import AElement, TensorElement, psi_xi, set_psi_rules
from motivic_steenrod.bsigma import BSigmaElement
from motivic_steenrod.cli import parse_caps, parse_window, run_command
from motivic_steenrod.parser import ParseError, eval_text, parse_expr, Apply, Sum

T, X = AElement.tau_gen, AElement.xi_gen


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(list(argv), out, err)
    return code, out.getvalue().strip(), err.getvalue().strip()


def test_parse_shapes():
    tree = parse_expr("Q[2](T0)")
    assert isinstance(tree, Apply) and tree.op == "Q" and tree.index == 2
    assert isinstance(parse_expr("T0*T0 + tau*X1"), Sum)


@pytest.mark.parametrize("text,col", [("Q[(T0)", 3), ("T0 +", 5), ("(T0", 4), ("T0 $ X1", 4), ("Y2", 1)])
def test_parse_errors_report_columns(text, col):
    with pytest.raises(ParseError) as info:
        parse_expr(text)
    assert info.value.column == col and info.value.line == 1


def test_parse_error_line_numbers():
    with pytest.raises(ParseError) as info:
        parse_expr("T0 +\n  * X1")
    assert (info.value.line, info.value.column) == (2, 3)


def test_q_command():
    code, out, _ = run("q", "-i", "2", "T0")
    assert code == 0
    assert eval_text(out) == T(1) + X(1) * T(0)


def test_eval_relation():
    code, out, _ = run("eval", "T0^2")
    assert code == 0
    assert eval_text(out) == eval_text("tau*X1 + rho*T1 + rho*T0*X1")


def test_psi_and_chi_commands():
    code, out, _ = run("chi", "T1")
    assert code == 0 and eval_text(out) == T(1) + T(0) * X(1)
    code, out, _ = run("psi", "X2", "--json")
    data = json.loads(out)
    assert TensorElement.from_json(data["value"]) == eval_text("psi(X2)")


def test_json_output_reparses():
    for expr in ("T0^2", "Q[6](T0)", "chi(T3)", "u*u + v^-2"):
        code, out, _ = run("eval", expr, "--json")
        assert code == 0
        data = json.loads(out)
        value = eval_text(expr)
        cls = AElement if data["type"] == "A" else BSigmaElement
        assert cls.from_json(data["value"]) == value
        assert eval_text(data["text"]) == value


def test_coact_commands():
    code, out, _ = run("coact", "bsigma", "v", "--window", "-1:4")
    assert code == 0 and "v^2 (x) X1" in out
    code, out, _ = run("coact", "ops", "v^-1", "--window", "-3:20")
    assert code == 0 and "(X1) (x) Se[-1]" in out


def test_basis_command():
    code, out, _ = run("basis", "3", "1", "--caps", "tau=0,rho=0")
    assert code == 0
    assert {eval_text(line) for line in out.splitlines()} == {T(1), T(0) * X(1)}


def test_usage_errors_exit_2():
    assert run("eval", "Q[(T0)")[0] == 2
    assert run("eval", "Q[1](tau*T0)")[0] == 2
    assert run("verify", "nonsense")[0] == 2
    assert run("eval", "T0", "--window", "5:1")[0] == 2
    assert run("basis", "1", "0", "--caps", "bogus=1")[0] == 2
    assert run()[0] == 2


def test_verify_suite_passes():
    code, out, _ = run("verify", "series", "--window", "-40:40")
    assert code == 0 and "PASS" in out


def test_injected_failure_exits_1():
    def broken(i):
        return psi_xi(i) + (TensorElement.pure(AElement.one(), AElement.one()) if i == 1 else TensorElement())

    set_psi_rules(xi=broken)
    try:
        code, out, _ = run("verify", "hopf", "--json")
    finally:
        set_psi_rules()
    assert code == 1
    assert json.loads(out)["passed"] is False


def test_cache_commands(tmp_path):
    path = tmp_path / "memo.json"
    assert run("q", "-i", "4", "X1", "--cache", str(path))[0] == 0
    code, out, _ = run("cache", "info", "--cache", str(path), "--json")
    assert code == 0 and json.loads(out)["valid"]
    code, out, _ = run("cache", "clear", "--cache", str(path))
    assert code == 0 and not path.exists()


def test_config_file(tmp_path, monkeypatch):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"json": True, "no_cache": True}))
    monkeypatch.setenv("MOTIVIC_STEENROD_CONFIG", str(cfg))
    code, out, _ = run("eval", "X1")
    assert code == 0 and json.loads(out)["type"] == "A"


def test_flag_parsers():
    assert parse_window("-40:40") == (-40, 40)
    assert parse_caps("tau=3,rho=2,p=15") == {"tau_exp": 3, "rho_exp": 2, "p_max": 15}


def test_console_script_runs():
    proc = subprocess.run([sys.executable, "-m", "motivic_steenrod.cli", "--no-cache", "q", "-i", "1", "T0"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "X1"
