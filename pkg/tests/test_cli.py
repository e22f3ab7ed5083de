"""Command-line surface: exit codes, report text, output streams."""

import re
import subprocess
import sys

import pytest

from gamma13.cli import main
from gamma13.level13 import load_shipped_certificate
from gamma13.certificate import certificate_to_json
from gamma13.qseries import eta_product, format_coefficient_file


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def delta_file_text(length=512, sign=1):
    return format_coefficient_file(eta_product([(1, 24)], length), 12, 1, sign)


class TestVerify:
    def test_shipped_default_passes(self, capsys):
        code, out, err = run_cli(capsys, "verify")
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[-1] == "CERTIFICATE OK"
        assert "STEP delta2 OK" in lines
        assert all(line.startswith("STEP ") for line in lines[:-1])

    def test_shipped_reflection_context_passes(self, capsys):
        code, out, err = run_cli(capsys, "verify", "--context", "g")
        assert code == 0
        assert out.strip().splitlines()[-1] == "CERTIFICATE OK"
        assert "STEP h2-sign OK" in out

    def test_explicit_path(self, capsys, tmp_path):
        path = tmp_path / "cert.json"
        path.write_text(certificate_to_json(load_shipped_certificate("f")))
        code, out, err = run_cli(capsys, "verify", str(path))
        assert code == 0
        assert out.strip().splitlines()[-1] == "CERTIFICATE OK"

    def test_corrupted_step_fails_and_names_it(self, capsys, tmp_path):
        text = certificate_to_json(load_shipped_certificate("f"))
        assert '"lhs": "[[1,-1],[0,1]]"' in text
        path = tmp_path / "bad.json"
        path.write_text(text.replace('"lhs": "[[1,-1],[0,1]]"',
                                     '"lhs": "[[1,1],[0,1]]"'))
        code, out, err = run_cli(capsys, "verify", str(path))
        assert code == 1
        assert out.strip().splitlines()[-1] == "CERTIFICATE FAIL"
        assert "STEP Pinv FAIL" in out
        assert "Pinv" in err

    def test_malformed_json_is_usage_error_with_position(self, capsys, tmp_path):
        path = tmp_path / "garbage.json"
        path.write_text("{ not json")
        code, out, err = run_cli(capsys, "verify", str(path))
        assert code == 2
        assert "line 1" in err

    def test_missing_path(self, capsys, tmp_path):
        code, out, err = run_cli(capsys, "verify", str(tmp_path / "no.json"))
        assert code == 2
        assert err

    def test_report_flag_writes_file(self, capsys, tmp_path):
        report = tmp_path / "report.txt"
        code, out, err = run_cli(capsys, "verify", "--report", str(report))
        assert code == 0
        assert report.read_text() == out


class TestFormcheck:
    def test_discriminant_file_passes(self, capsys, tmp_path):
        path = tmp_path / "delta.txt"
        path.write_text(delta_file_text())
        code, out, err = run_cli(capsys, "formcheck", str(path))
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[-1] == "FORMCHECK OK"
        assert any(line.startswith("CONG ax:P max_residual=") for line in lines)
        assert "HECKE p=2 recursion=PASS stroke=PASS" in lines
        assert "HECKE p=3 recursion=PASS stroke=PASS" in lines
        assert "CUSP decay verdict=PASS" in lines

    def test_wrong_sign_fails_on_inversion_residual(self, capsys, tmp_path):
        path = tmp_path / "delta_wrong_eps.txt"
        path.write_text(delta_file_text(sign=-1))
        code, out, err = run_cli(capsys, "formcheck", str(path))
        assert code == 1
        lines = out.strip().splitlines()
        assert lines[-1] == "FORMCHECK FAIL"
        h_line = next(l for l in lines if l.startswith("CONG ax:H "))
        assert h_line.endswith("verdict=FAIL")

    def test_truncated_file_is_usage_error(self, capsys, tmp_path):
        path = tmp_path / "short.txt"
        path.write_text(delta_file_text(length=20))
        code, out, err = run_cli(capsys, "formcheck", str(path))
        assert code == 2
        assert err

    def test_flag_header_mismatch(self, capsys, tmp_path):
        path = tmp_path / "delta.txt"
        path.write_text(delta_file_text())
        code, out, err = run_cli(capsys, "formcheck", str(path), "--k", "10")
        assert code == 2
        assert "k" in err

    def test_hecke_prec_env_overrides_flag(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "delta.txt"
        path.write_text(delta_file_text())
        monkeypatch.setenv("HECKE_PREC", "20")
        code, out, err = run_cli(capsys, "formcheck", str(path),
                                 "--prec", "256")
        assert code == 1
        assert out.strip().splitlines()[-1] == "FORMCHECK FAIL"

    def test_missing_file(self, capsys, tmp_path):
        code, out, err = run_cli(capsys, "formcheck", str(tmp_path / "no.txt"))
        assert code == 2


class TestDecompose:
    def test_translation(self, capsys):
        code, out, err = run_cli(capsys, "decompose", "[[1,1],[0,1]]")
        assert (code, out.strip()) == (0, "P")

    def test_generator_square(self, capsys):
        code, out, err = run_cli(capsys, "decompose", "[[-9,4],[-52,23]]")
        assert (code, out.strip()) == (0, "g2^2")

    def test_identity_prints_one(self, capsys):
        code, out, err = run_cli(capsys, "decompose", "[[1,0],[0,1]]")
        assert (code, out.strip()) == (0, "1")

    def test_non_member(self, capsys):
        code, out, err = run_cli(capsys, "decompose", "[[1,0],[1,1]]")
        assert code == 1
        assert "not in Gamma0(13)" in err

    def test_malformed_matrix(self, capsys):
        code, out, err = run_cli(capsys, "decompose", "[[1,0],[0]]")
        assert code == 2


class TestDensity:
    def test_unit_target(self, capsys):
        code, out, err = run_cli(capsys, "density", "1", "1e-9")
        assert (code, out.strip()) == (0, "(m,n)=(0,0) err=0")

    def test_generic_target(self, capsys):
        code, out, err = run_cli(capsys, "density", "5", "1e-3")
        assert code == 0
        assert re.match(r"\(m,n\)=\(-?\d+,-?\d+\) err=\d(\.\d+)?(e[-+]\d+)?$",
                        out.strip())

    def test_bound_exhaustion_fails(self, capsys):
        code, out, err = run_cli(capsys, "density", "5", "1e-3", "--bound", "1")
        assert code == 1
        assert err

    def test_nonpositive_target_is_usage_error(self, capsys):
        code, out, err = run_cli(capsys, "density", "0", "1e-3")
        assert code == 2


class TestAsym:
    def test_weight_minus_two_vanishes(self, capsys):
        code, out, err = run_cli(capsys, "asym", "-2")
        assert (code, out.strip()) == (0, "IDENTICALLY ZERO")

    def test_weight_four_pole(self, capsys):
        code, out, err = run_cli(capsys, "asym", "4")
        assert (code, out.strip()) == (0, "POLE ORDER 2 - NONZERO")

    def test_weight_two_pole(self, capsys):
        code, out, err = run_cli(capsys, "asym", "2")
        assert (code, out.strip()) == (0, "POLE ORDER 1 - NONZERO")

    def test_odd_weight_rejected(self, capsys):
        code, out, err = run_cli(capsys, "asym", "3")
        assert code == 2


class TestEta:
    def test_discriminant_factors(self, capsys):
        code, out, err = run_cli(capsys, "eta", "1:24", "64")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "# k=12 N=1 eps=+1"
        assert lines[1] == "1 1"
        assert lines[2] == "2 -24"
        assert len(lines) == 66

    def test_level13_square_has_no_integer_expansion(self, capsys):
        code, out, err = run_cli(capsys, "eta", "1:2,13:2", "32")
        assert code == 1
        assert "exponent" in err

    def test_malformed_factor_string(self, capsys):
        code, out, err = run_cli(capsys, "eta", "nonsense", "32")
        assert code == 2

    def test_bad_multiplier(self, capsys):
        code, out, err = run_cli(capsys, "eta", "0:2", "32")
        assert code == 2


def test_module_entry_point():
    result = subprocess.run([sys.executable, "-m", "gamma13", "asym", "-2"],
                            capture_output=True, text=True)
    assert result.returncode == 0
    assert result.stdout.strip() == "IDENTICALLY ZERO"
