import json

import pytest

from qball.cli import main
from qball.parser import ExprError, parse_expr
from qball.render import poly_text
from qball.scalars import ONE, qpow, vpow
from qball.suites import run_suite


def test_parse_normalizes_via_the_engine():
    tag, p = parse_expr("z[1,2]*z[1,1]", 2)
    assert tag == "pol"
    assert poly_text(p) == "q^-1*z[1,1]*z[1,2]"


def test_parse_scalar_expression():
    tag, p = parse_expr("q - q^-1", 1)
    assert tag == "scalar"
    assert p.constant_term() == qpow(1) - qpow(-1)
    tag, p = parse_expr("3/2", 1)
    assert p.constant_term().eval_at(1) == 1.5


def test_parse_errors():
    with pytest.raises(ExprError):
        parse_expr("z[0,1]", 1)           # index out of range
    with pytest.raises(ExprError):
        parse_expr("z[1,1]*zeta[1,1]", 1)  # incompatible families
    with pytest.raises(ExprError):
        parse_expr("z[1,1", 1)             # syntax
    with pytest.raises(ExprError):
        parse_expr("w[1,1]", 1)            # unknown atom
    with pytest.raises(ExprError):
        parse_expr("(z[1,1] + 1)^-1", 1)   # negative power of a non-scalar


def test_parse_handles_parentheses_powers_and_families():
    tag, p = parse_expr("(1 - q^2)^-1 * (1 - q^2)", 1)
    assert tag == "scalar" and p.constant_term() == ONE
    tag, p = parse_expr("zeta[1,1]*zetas[1,1]", 1)
    assert tag == "boundary"
    tag, p = parse_expr("t[1,2]*t[1,1]", 1)
    assert tag == "rect"
    assert poly_text(p) == "q^-1*t[1,1]*t[1,2]"
    tag, p = parse_expr("v^2", 1)
    assert p.constant_term() == qpow(1)


def test_parse_render_parse_roundtrip():
    samples = [
        ("z[1,1]*zs[2,2] - q*z[1,2]*zs[2,1]", 2),
        ("zeta[1,1]^3", 1),
        ("t[2,4]*t[1,1] + 5*t[1,2]^2", 2),
        ("q^2 - 2 + q^-2", 1),
        ("(q - q^-1)*z[1,1]", 1),
    ]
    for text, n in samples:
        tag1, p1 = parse_expr(text, n)
        rendered = poly_text(p1)
        tag2, p2 = parse_expr(rendered, n)
        assert tag1 == tag2 or p1.is_zero()
        assert p1 == p2
        assert poly_text(p2) == rendered


def test_run_suite_reports():
    rep = run_suite("laplace", 1, 2)
    assert rep.status == "PASS" and rep.suite == "laplace"
    with pytest.raises(KeyError):
        run_suite("nope", 1, 2)


def test_report_json_schema_and_determinism():
    r1 = run_suite("central", 2, 2)
    r2 = run_suite("central", 2, 2)
    d1, d2 = r1.to_dict(), r2.to_dict()
    d1.pop("wall_ms"), d2.pop("wall_ms")
    assert d1 == d2
    assert list(d1) == ["suite", "n", "cutoff", "status", "residual_count",
                        "residual_sample", "truncated"]


def test_cli_normalize_and_exit_codes(capsys, tmp_path):
    assert main(["normalize", "--n", "2", "z[1,2]*z[1,1]"]) == 0
    out = capsys.readouterr().out
    assert "q^-1*z[1,1]*z[1,2]" in out

    assert main(["normalize", "--n", "1", "z[0,1]"]) == 2

    out_file = tmp_path / "rep.json"
    code = main(["verify", "--suite", "laplace", "--n", "1",
                 "--output", str(out_file)])
    assert code == 0
    payload = json.loads(out_file.read_text())
    assert payload["status"] == "PASS" and payload["suite"] == "laplace"

    # skipped-only run exits 3
    assert main(["verify", "--suite", "hua-theorem-n1", "--n", "2"]) == 3


def test_cli_eval_v_cross_check():
    assert main(["verify", "--suite", "central", "--n", "2",
                 "--eval-v", "1/2"]) == 0


def test_cli_limits(capsys):
    assert main(["limits", "--n", "1"]) == 0
    assert "limits" in capsys.readouterr().out
