import json

import pytest

from kickback.cli import main


def run_json(capsys, *argv):
    code = main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    return code, out


class TestExitCodes:
    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 64

    def test_no_arguments(self, capsys):
        assert main([]) == 64

    def test_domain_error(self, capsys):
        # non-total oracle table
        code = main(["deutsch", "--table", "0->0"])
        assert code == 2
        assert "error" in capsys.readouterr().err

    def test_validation_error_passthrough(self, capsys):
        code = main(["rsa-crack", "--N", "33", "--e", "3", "--C", "33"])
        assert code == 2

    def test_missing_oracle(self, capsys):
        assert main(["deutsch"]) == 2

    def test_probabilistic_failure(self, capsys):
        code = main(
            ["order-find", "--a", "2", "--N", "7", "--max-runs", "0", "--json"]
        )
        assert code == 3
        assert '"verified": false' in capsys.readouterr().out


class TestDeutsch:
    def test_balanced_record(self, capsys):
        code, out = run_json(capsys, "deutsch", "--table", "0->0,1->1")
        assert code == 0
        assert json.loads(out) == {"verdict": "Balanced", "oracle_calls": 1}

    def test_constant_record(self, capsys):
        code, out = run_json(capsys, "deutsch", "--table", "0->1,1->1")
        assert json.loads(out)["verdict"] == "Constant"

    def test_oracle_from_file(self, capsys, tmp_path):
        path = tmp_path / "f.txt"
        path.write_text("0 -> 1\n1 -> 0\n")
        code, out = run_json(capsys, "deutsch", "--file", str(path))
        assert code == 0
        assert json.loads(out)["verdict"] == "Balanced"


class TestReproducibility:
    @pytest.mark.parametrize(
        "argv",
        [
            ["order-find", "--a", "7", "--N", "15", "--seed", "3"],
            ["grover", "--n", "3", "--k", "5", "--seed", "9", "--shots", "4"],
            ["phase-est", "--phi", "0.3333", "--m", "5", "--seed", "2", "--shots", "3"],
        ],
    )
    def test_identical_bytes(self, capsys, argv):
        code1, out1 = run_json(capsys, *argv)
        code2, out2 = run_json(capsys, *argv)
        assert code1 == code2 == 0
        assert out1 == out2


class TestSubcommands:
    def test_mach_zehnder(self, capsys):
        code, out = run_json(capsys, "mach-zehnder", "--phi0", "0", "--phi1", "0")
        record = json.loads(out)
        assert code == 0
        assert record["p0"] == pytest.approx(1.0)

    def test_dj(self, capsys):
        code, out = run_json(capsys, "dj", "--table", "00->1,01->1,10->1,11->1")
        record = json.loads(out)
        assert record["verdict"] == "Constant"
        assert record["oracle_calls"] == 1

    def test_bv(self, capsys):
        # f(x) = x1 xor x3 xor 1  (a = 101, b = 1)
        table = "000->1,001->0,010->1,011->0,100->0,101->1,110->0,111->1"
        code, out = run_json(capsys, "bv", "--table", table)
        record = json.loads(out)
        assert record["a"] == "101"
        assert record["b"] == 1
        assert record["oracle_calls"] == 1
        assert record["classical_calls_needed"] == 3

    def test_affine(self, capsys):
        # A = [[1,0],[0,1]], b = (0,1)
        table = "00->01,01->00,10->11,11->10"
        code, out = run_json(capsys, "affine", "--table", table)
        record = json.loads(out)
        assert record["matrix"] == ["10", "01"]
        assert record["oracle_calls"] == 2

    def test_grover(self, capsys):
        code, out = run_json(capsys, "grover", "--n", "2", "--k", "3", "--seed", "0")
        record = json.loads(out)
        assert record["iterations"] == 1
        assert record["success_probability"] == pytest.approx(1.0)
        assert record["outcomes"] == [3]

    def test_qft(self, capsys):
        code, out = run_json(capsys, "qft", "--m", "2", "--a", "1")
        record = json.loads(out)
        amps = record["amplitudes"]
        assert amps[1][1] == pytest.approx(0.5)  # amplitude i/2 at index 1

    def test_qft_inverse(self, capsys):
        code, out = run_json(capsys, "qft", "--m", "2", "--a", "1", "--inverse")
        record = json.loads(out)
        assert record["amplitudes"][1][1] == pytest.approx(-0.5)

    def test_phase_est_exact(self, capsys):
        code, out = run_json(capsys, "phase-est", "--phi", "0.3125", "--m", "4")
        record = json.loads(out)
        assert record["estimates"] == [5]
        assert record["analytic_success"] == pytest.approx(1.0)

    def test_phase_sweep(self, capsys):
        code, out = run_json(capsys, "phase-sweep", "--m", "4", "--grid", "64")
        record = json.loads(out)
        assert code == 0
        assert record["worst_margin"] > 0

    def test_tail_sweep(self, capsys, tmp_path):
        csv_path = tmp_path / "tail.csv"
        code, out = run_json(
            capsys, "tail-sweep", "--m", "5", "--grid", "32", "--csv", str(csv_path)
        )
        record = json.loads(out)
        assert record["worst_margin"] > 0
        assert csv_path.read_text().startswith("m,k,phi,value,bound,margin")

    def test_order_find(self, capsys):
        code, out = run_json(capsys, "order-find", "--a", "4", "--N", "15", "--seed", "7")
        record = json.loads(out)
        assert code == 0
        assert record["r"] == 2
        assert record["verified"] is True
        assert record["m"] == 8

    def test_rsa_crack(self, capsys):
        code, out = run_json(
            capsys, "rsa-crack", "--N", "33", "--e", "3", "--C", "26", "--seed", "1"
        )
        record = json.loads(out)
        assert code == 0
        assert record["P"] == 5
        assert record["d"] == 7
        assert record["verified"] is True

    def test_pattern(self, capsys):
        code, out = run_json(capsys, "pattern", "--table", "0->0,1->1")
        record = json.loads(out)
        assert code == 0
        # phases (1, -1)/sqrt2
        assert record["amplitudes"][1][0] == pytest.approx(-(0.5**0.5))

    def test_text_output(self, capsys):
        code = main(["deutsch", "--table", "0->0,1->1"])
        out = capsys.readouterr().out
        assert code == 0
        assert "verdict: Balanced" in out
