import json

import pytest

from qfient.cli import main
from qfient.states import StateFamilySpec, WERNER_GHZ, analytic_qfi


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    lines = [ln for ln in text.strip().splitlines() if not ln.startswith("#")]
    header = lines[0].split(",")
    rows = [dict(zip(header, ln.split(","))) for ln in lines[1:]]
    return header, rows


def test_qfi_ghz(capsys):
    code, out, _ = run_cli(capsys, "qfi", "--family", "ghz", "--n", "5")
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0]["qfi"]) == pytest.approx(25.0, rel=1e-12)


def test_qfi_maximally_mixed(capsys):
    code, out, _ = run_cli(capsys, "qfi", "--family", "maximally-mixed", "--n", "3")
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0]["qfi"]) == pytest.approx(0.0, abs=1e-10)


def test_qfi_werner_matches_closed_form(capsys):
    code, out, _ = run_cli(capsys, "qfi", "--family", "werner", "--p", "0.3", "--n", "4")
    assert code == 0
    _, rows = parse_csv(out)
    want = analytic_qfi(StateFamilySpec(WERNER_GHZ, p=0.3), 4)
    assert float(rows[0]["qfi"]) == pytest.approx(want, abs=1e-8)
    assert rows[0]["method"] == "eigendecomposition"


def test_qfi_analytic_fallback_beyond_cap(capsys):
    code, out, _ = run_cli(capsys, "qfi", "--family", "ghz", "--n", "1000000", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["qfi"] == 1e12
    assert payload["method"] == "analytic"


def test_qfi_from_state_file(tmp_path, capsys):
    import numpy as np
    from qfient.states import GHZ, StateFamilySpec, build_state, build_state_vector

    matrix_path = tmp_path / "ghz3.npy"
    np.save(matrix_path, build_state(StateFamilySpec(GHZ), 3))
    code, out, _ = run_cli(capsys, "qfi", "--state-file", str(matrix_path))
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0]["qfi"]) == pytest.approx(9.0, rel=1e-10)
    assert rows[0]["method"] == "eigendecomposition"

    vector_path = tmp_path / "ghz3_vec.npy"
    np.save(vector_path, build_state_vector(StateFamilySpec(GHZ), 3))
    code, out, _ = run_cli(capsys, "qfi", "--state-file", str(vector_path))
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0]["qfi"]) == pytest.approx(9.0, rel=1e-12)
    assert rows[0]["method"] == "pure-variance"


def test_qfi_state_file_bad_dimension(tmp_path, capsys):
    import numpy as np

    path = tmp_path / "odd.npy"
    np.save(path, np.eye(3) / 3)
    code, _, err = run_cli(capsys, "qfi", "--state-file", str(path))
    assert code == 1
    assert "power of two" in err


def test_qfi_state_file_capacity(tmp_path, capsys):
    import numpy as np

    path = tmp_path / "big.npy"
    np.save(path, np.eye(16) / 16)
    code, _, err = run_cli(capsys, "qfi", "--state-file", str(path), "--dense-cap", "8")
    assert code == 2
    assert "capacity" in err


def test_qfi_requires_family(capsys):
    code, _, err = run_cli(capsys, "qfi", "--n", "3")
    assert code == 1
    assert "family" in err


def test_unknown_family(capsys):
    code, _, err = run_cli(capsys, "qfi", "--family", "bell", "--n", "2")
    assert code == 1
    assert "unknown family" in err


def test_gme_werner_two_qubits_rejected(capsys):
    code, _, err = run_cli(capsys, "gme", "--family", "werner", "--p", "0.5", "--n", "2")
    assert code == 1
    assert "unsupported" in err


def test_gme_pure_ghz(capsys):
    code, out, _ = run_cli(capsys, "gme", "--family", "ghz", "--n", "4", "--restarts", "8")
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0]["e_g"]) == pytest.approx(0.5, abs=1e-6)


def test_gme_werner_n10(capsys):
    code, out, _ = run_cli(capsys, "gme", "--family", "werner", "--p", "0.5", "--n", "10")
    assert code == 0
    _, rows = parse_csv(out)
    assert abs(float(rows[0]["e_g"]) - 0.25) <= 0.04
    assert rows[0]["mu_star"] != ""


def test_audit_state_json(capsys):
    code, out, _ = run_cli(capsys, "audit", "--family", "ghz", "--n", "4", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["report"]["passed"] is True
    assert payload["schema_version"] == 1
    assert payload["version"]


def test_audit_random_pairs(capsys):
    code, out, _ = run_cli(capsys, "audit", "--pairs", "5", "--n", "2", "--seed", "7")
    assert code == 0
    payload = json.loads(out)
    assert len(payload["reports"]) == 5
    assert all(r["passed"] for r in payload["reports"])


def test_audit_pairs_capacity_exit_code(capsys):
    code, _, err = run_cli(capsys, "audit", "--pairs", "2", "--n", "13")
    assert code == 2
    assert "capacity" in err


def test_gme_tailored_werner_upper_bound(capsys):
    code, out, _ = run_cli(capsys, "gme", "--family", "tailored-werner", "--p", "0.4", "--l", "2", "--n", "5")
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0]["e_g"]) == pytest.approx(0.2)
    assert rows[0]["method"] == "upper-bound"


def test_audit_violation_exit_code(capsys, monkeypatch):
    import qfient.cli as cli_mod
    from qfient.bounds import BoundCheck, StateAuditReport

    broken = StateAuditReport(
        kind="ghz", p=None, l=None, n=4, k=1, qfi=16.0, qfi_method="eigendecomposition",
        gme=0.5, gme_is_exact=True, r_leb=1.0, r_leb_is_exact=True, analytic_only=False,
        checks=(BoundCheck(name="heisenberg-cap", bound=16.0, observed=17.0, slack=-1.0, passed=False),),
        passed=False,
    )
    monkeypatch.setattr(cli_mod, "audit_state", lambda *a, **k: broken)
    code, out, _ = run_cli(capsys, "audit", "--family", "ghz", "--n", "4")
    assert code == 3
    assert json.loads(out)["report"]["passed"] is False


def test_scaling_bad_grid_usage_error(capsys):
    code, _, err = run_cli(capsys, "scaling", "--n-grid", "abc")
    assert code == 1
    assert "n-grid" in err


def test_scaling_json(capsys):
    code, out, _ = run_cli(
        capsys, "scaling", "--family", "werner", "--eps1", "0.3", "--eps2", "0.1",
        "--n-grid", "1000,3162,10000,31623,100000,316228,1000000", "--format", "json",
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["fit"]["exponent"] == pytest.approx(1.7, abs=1e-5)
    assert len(payload["records"]) == 7


def test_scaling_csv(capsys):
    code, out, _ = run_cli(
        capsys, "scaling", "--eps1", "0.1", "--eps2", "0.1",
        "--n-grid", "1000,3162,10000,31623,100000,316228,1000000",
    )
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["N", "p", "l", "qfi", "e_g", "r_leb", "target_exponent", "fitted_exponent"]
    assert len(rows) == 7
    assert float(rows[0]["target_exponent"]) == pytest.approx(1.7)
    fitted = {row["fitted_exponent"] for row in rows}
    assert len(fitted) == 1


def test_scaling_ghz_fit_two(capsys):
    code, out, _ = run_cli(
        capsys, "scaling", "--family", "ghz",
        "--n-grid", "100,316,1000,3162,10000,31623,100000",
    )
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0]["fitted_exponent"]) == pytest.approx(2.0, abs=1e-9)


def test_figure_eg_deterministic_bytes(capsys):
    args = ("figure-eg", "--n", "3", "--seed", "3")
    code1, out1, _ = run_cli(capsys, *args)
    code2, out2, _ = run_cli(capsys, *args)
    assert code1 == code2 == 0
    assert out1 == out2


def test_figure_eg_columns_and_monotone(capsys):
    code, out, _ = run_cli(capsys, "figure-eg", "--n", "4")
    assert code == 0
    header, rows = parse_csv(out)
    assert header == ["N", "p", "e_g", "mu_star", "upper_bound_half_p"]
    assert len(rows) == 101
    values = [float(r["e_g"]) for r in rows]
    assert values[0] == pytest.approx(0.0, abs=1e-12)
    assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
    for row in rows:
        assert float(row["e_g"]) <= float(row["upper_bound_half_p"]) + 1e-9


def test_figure_eg_rejects_n2(capsys):
    code, _, err = run_cli(capsys, "figure-eg", "--n", "2,3")
    assert code == 1
    assert "unsupported" in err


def test_config_file_precedence(tmp_path, capsys):
    config = tmp_path / "run.cfg"
    config.write_text("family=ghz\nn=3\n")
    code, out, _ = run_cli(capsys, "qfi", "--config", str(config))
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0]["qfi"]) == pytest.approx(9.0, rel=1e-10)

    # flag wins over config
    code, out, _ = run_cli(capsys, "qfi", "--config", str(config), "--n", "4")
    assert code == 0
    _, rows = parse_csv(out)
    assert float(rows[0]["qfi"]) == pytest.approx(16.0, rel=1e-10)


def test_output_file(tmp_path, capsys):
    out_path = tmp_path / "out.csv"
    code, out, _ = run_cli(capsys, "qfi", "--family", "ghz", "--n", "2", "--out", str(out_path))
    assert code == 0
    assert out == ""
    text = out_path.read_text()
    assert text.startswith("# qfient")
    _, rows = parse_csv(text)
    assert float(rows[0]["qfi"]) == pytest.approx(4.0)


def test_header_embeds_seed_and_version(capsys):
    code, out, _ = run_cli(capsys, "qfi", "--family", "ghz", "--n", "2", "--seed", "42")
    assert code == 0
    first = out.splitlines()[0]
    assert first.startswith("# qfient") and "seed=42" in first
