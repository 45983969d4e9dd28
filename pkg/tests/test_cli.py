"""Command-line surface: subcommands, exit codes, output determinism."""
import json

from lepage.cli import run_command

CH = "1/2*(y_1*y_2^2 + y_12^2/y_1)"
DIRICHLET = "1/2*(y_1^2 + y_2^2)"


def run(capsys, *argv):
    code = run_command(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEl:
    def test_dirichlet(self, capsys):
        code, out, _ = run(
            capsys, "el", "--n", "2", "--m", "1", "--order", "1", "--lagrangian", DIRICHLET
        )
        assert code == 0
        assert out.strip() == "E_1 = -y_22 - y_11"

    def test_json(self, capsys):
        code, out, _ = run(
            capsys, "el", "--order", "1", "--lagrangian", "y*y_1", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["schema"] == "lepage.el/1"
        assert doc["expressions"] == ["0"]


class TestChecks:
    def test_order_failure_names_condition_five(self, capsys):
        code, out, _ = run(capsys, "check", "order", "--order", "2", "--lagrangian", CH)
        assert code == 1
        assert "order-reducibility[5]" in out
        assert "y_1^(-1)" in out

    def test_trivial_pass(self, capsys):
        code, out, _ = run(
            capsys, "check", "trivial", "--order", "2", "--lagrangian", "y_11*y_22 - y_12^2"
        )
        assert code == 0
        assert out.startswith("PASS")

    def test_lepage_check_on_theta(self, capsys):
        code, out, _ = run(capsys, "check", "lepage", "--order", "2", "--lagrangian", CH)
        assert code == 0

    def test_closed_check_fundamental(self, capsys):
        code, out, _ = run(
            capsys,
            "check", "closed",
            "--order", "2",
            "--lagrangian", "y_11*y_22 - y_12^2",
            "--form", "fundamental",
        )
        assert code == 0

    def test_equivalent(self, capsys):
        code, _, _ = run(
            capsys, "check", "equivalent", "--order", "1", "--lagrangian", DIRICHLET,
            "--form", "caratheodory",
        )
        assert code == 0

    def test_equivalent_second_order_caratheodory(self, capsys):
        code, _, _ = run(
            capsys, "check", "equivalent", "--order", "2", "--lagrangian", CH,
            "--form", "caratheodory",
        )
        assert code == 0


class TestForms:
    def test_fundamental_m2_json(self, capsys):
        code, out, _ = run(
            capsys,
            "fundamental",
            "--n", "2", "--m", "2", "--order", "1",
            "--lagrangian", "y1_1*y2_2 - y1_2*y2_1",
            "--format", "json",
        )
        assert code == 0
        doc = json.loads(out)
        cross = [t for t in doc["terms"] if t["basis"] == ["w1", "w2"]]
        assert len(cross) == 1 and cross[0]["coeff"] == "1"

    def test_fundamental_refusal_exit_code(self, capsys):
        code, _, err = run(capsys, "fundamental", "--order", "2", "--lagrangian", CH)
        assert code == 1
        assert "order-reducibility[5]" in err

    def test_theta_latex(self, capsys):
        code, out, _ = run(
            capsys, "theta", "--order", "1", "--lagrangian", DIRICHLET, "--format", "latex"
        )
        assert code == 0
        assert "\\omega" in out

    def test_d_and_hor_and_contact(self, capsys):
        code, out, _ = run(capsys, "hor", "--order", "1", "--lagrangian", DIRICHLET,
                           "--form", "theta")
        assert code == 0
        assert "dx1 ∧ dx2" in out
        code, out, _ = run(capsys, "d", "--order", "1", "--lagrangian", "y*y_1")
        assert code == 0
        code, out, _ = run(capsys, "contact", "1", "--order", "1", "--lagrangian", DIRICHLET,
                           "--form", "theta")
        assert code == 0
        assert "w1" in out

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "lagrangian.txt"
        path.write_text(DIRICHLET + "\n", encoding="utf-8")
        code, out, _ = run(capsys, "el", "--order", "1", "--file", str(path))
        assert code == 0
        assert "E_1" in out

    def test_d_of_closed_fundamental_is_empty(self, capsys):
        code, out, _ = run(
            capsys,
            "d",
            "--n", "2", "--m", "2", "--order", "1",
            "--lagrangian", "y1_1*y2_2 - y1_2*y2_1",
            "--form", "fundamental",
            "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["terms"] == []


class TestEval:
    def test_value(self, capsys):
        code, out, _ = run(
            capsys,
            "eval",
            "--order", "2",
            "--lagrangian", CH,
            "--point", "y_1=1,y_2=2,y_12=3",
        )
        assert code == 0
        assert abs(float(out.strip()) - 6.5) < 1e-12

    def test_pole_is_error(self, capsys):
        code, _, err = run(
            capsys, "eval", "--order", "2", "--lagrangian", CH, "--point", "y_1=0,y_2=1,y_12=1"
        )
        assert code == 2
        assert "error" in err


class TestCalibrate:
    def test_unique_and_deterministic(self, capsys):
        code1, out1, _ = run(capsys, "calibrate")
        code2, out2, _ = run(capsys, "calibrate")
        assert code1 == code2 == 0
        assert out1 == out2
        assert "theta=sym, coeff=sym" in out1

    def test_auto_convention(self, capsys):
        code, out, _ = run(
            capsys, "check", "order", "--order", "2",
            "--lagrangian", "y_11*y_22 - y_12^2", "--convention", "auto",
        )
        assert code == 0
        assert "unique passing combination" in out


class TestUsageErrors:
    def test_missing_source(self, capsys):
        code, _, err = run(capsys, "el", "--order", "1")
        assert code == 2

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "el", "--order", "1", "--file", "/nonexistent/lagrangian")
        assert code == 2

    def test_syntax_error(self, capsys):
        code, _, err = run(capsys, "el", "--order", "1", "--lagrangian", "2 y")
        assert code == 2
        assert "position" in err

    def test_order_mismatch(self, capsys):
        code, _, err = run(capsys, "el", "--order", "1", "--lagrangian", "y_12")
        assert code == 2

    def test_unknown_subcommand(self, capsys):
        code = run_command(["frobnicate"])
        capsys.readouterr()
        assert code == 2
