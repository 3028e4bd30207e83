import json
from fractions import Fraction

import pytest

from toricnp.cli import (EXIT_ASSUMPTION, EXIT_MISMATCH, EXIT_OK, EXIT_USAGE,
                         main)


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestHodge:
    def test_json(self, capsys):
        code, out, _ = run_cli(capsys, "hodge", "--n", "3")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["W"] == [1, 1, 1, 3, 3, 3, 6]
        assert data["H"] == [1] * 7
        assert data["polygon"]["slopes"][1] == [1, 3]

    def test_csv(self, capsys):
        code, out, _ = run_cli(capsys, "hodge", "--n", "2", "--format", "csv")
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "index,slope_num,slope_den,vertex_x,vertex_y_num,vertex_y_den"
        assert len(lines) == 6
        assert lines[1] == "0,0,1,1,0,1"
        assert lines[-1] == "4,2,1,5,5,1"


class TestPredict:
    def test_json_n3_p47(self, capsys):
        code, out, _ = run_cli(capsys, "predict", "--n", "3", "--p", "47")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["B"] == [0, 2, -2, 0]
        assert data["ordinary"] is False
        assert data["polygon"]["slopes"] == [
            [0, 1], [10, 23], [13, 23], [1, 1], [33, 23], [36, 23], [2, 1]]

    def test_csv(self, capsys):
        code, out, _ = run_cli(capsys, "predict", "--n", "3", "--p", "47",
                               "--format", "csv")
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert len(lines) == 8
        assert lines[2] == "1,10,23,2,10,23"

    def test_deterministic_output(self, capsys):
        _, first, _ = run_cli(capsys, "predict", "--n", "4", "--p", "127")
        _, second, _ = run_cli(capsys, "predict", "--n", "4", "--p", "127")
        assert first == second

    def test_rejects_bad_p(self, capsys):
        code, _, err = run_cli(capsys, "predict", "--n", "3", "--p", "9")
        assert code == EXIT_USAGE
        assert "error" in err
        code, _, _ = run_cli(capsys, "predict", "--n", "3", "--p", "3")
        assert code == EXIT_USAGE


class TestAssumptions:
    def test_overall_report(self, capsys):
        code, out, _ = run_cli(capsys, "assumptions", "--n", "3")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["prime_bounds"] == {"thm15": 43, "thm17": 463}
        assert data["vandermonde"]["overall"] is True
        assert "assumption16" not in data

    def test_per_prime_rows(self, capsys):
        code, out, _ = run_cli(capsys, "assumptions", "--n", "3",
                               "--p", "2,3,5,7")
        assert code == EXIT_OK
        rows = json.loads(out)["assumption16"]
        assert rows[0] == {"p": 2, "ok": None, "note": "requires p > n"}
        assert rows[1]["ok"] is None
        assert rows[2] == {"p": 5, "ok": False, "per_k": [2, 1]}
        assert rows[3] == {"p": 7, "ok": True, "per_k": [1, 1]}

    def test_strict_exit_on_wilson_prime(self, capsys):
        code, _, _ = run_cli(capsys, "assumptions", "--n", "2", "--p", "5")
        assert code == EXIT_OK
        code, _, _ = run_cli(capsys, "assumptions", "--n", "2", "--p", "5",
                             "--strict")
        assert code == EXIT_ASSUMPTION
        code, _, _ = run_cli(capsys, "assumptions", "--n", "2", "--p", "7",
                             "--strict")
        assert code == EXIT_OK

    def test_no_csv(self, capsys):
        code, _, err = run_cli(capsys, "assumptions", "--n", "3",
                               "--format", "csv")
        assert code == EXIT_USAGE
        assert "CSV" in err


class TestOracle:
    def test_json_all_t(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--n", "2", "--p", "5",
                               "--t", "all")
        assert code == EXIT_OK
        data = json.loads(out)
        assert [r["params"]["t"] for r in data["reports"]] == [1, 2, 3, 4]
        assert all(r["hodge_ok"] for r in data["reports"])
        assert all(r["prediction_match"] for r in data["reports"])

    def test_csv_single_t(self, capsys):
        code, out, _ = run_cli(capsys, "oracle", "--n", "2", "--p", "3",
                               "--t", "1", "--format", "csv")
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert len(lines) == 6
        assert lines[1] == "0,0,1,1,0,1"
        assert lines[2] == "1,1,2,2,1,2"

    def test_csv_needs_single_t(self, capsys):
        code, _, err = run_cli(capsys, "oracle", "--n", "2", "--p", "5",
                               "--t", "1,2", "--format", "csv")
        assert code == EXIT_USAGE
        assert "single t" in err

    def test_strict_flags_uncertified_mismatch(self, capsys):
        code, _, _ = run_cli(capsys, "oracle", "--n", "3", "--p", "5", "--t", "1")
        assert code == EXIT_OK
        code, _, _ = run_cli(capsys, "oracle", "--n", "3", "--p", "5",
                             "--t", "1", "--strict")
        assert code == EXIT_MISMATCH

    def test_strict_ok_when_matching(self, capsys):
        code, _, _ = run_cli(capsys, "oracle", "--n", "3", "--p", "7",
                             "--t", "1", "--strict")
        assert code == EXIT_OK

    def test_heavy_gate(self, capsys):
        code, _, err = run_cli(capsys, "oracle", "--n", "2", "--p", "101",
                               "--t", "1")
        assert code == EXIT_USAGE
        assert "--heavy" in err

    def test_threads_flag_keeps_output(self, capsys):
        _, one, _ = run_cli(capsys, "oracle", "--n", "2", "--p", "5",
                            "--t", "2", "--algorithm", "convolution")
        _, two, _ = run_cli(capsys, "oracle", "--n", "2", "--p", "5",
                            "--t", "2", "--algorithm", "convolution",
                            "--threads", "3")
        assert one == two

    def test_bad_budget(self, capsys):
        code, _, _ = run_cli(capsys, "oracle", "--n", "2", "--p", "5",
                             "--t", "1", "--max-k-budget", "2")
        assert code == EXIT_USAGE
        code, _, _ = run_cli(capsys, "oracle", "--n", "2", "--p", "5",
                             "--t", "1", "--mem-budget", "-1")
        assert code == EXIT_USAGE


class TestCompare:
    def test_match(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--n", "3", "--p", "7",
                               "--t", "2", "--strict")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["verdict"] == "match"
        assert data["deviations"] == [[0, 1]] * 7
        assert data["oracle"] == data["predicted"]

    def test_informational_mismatch(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--n", "3", "--p", "5",
                               "--t", "1")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["verdict"] == "mismatch"
        assert any(d != [0, 1] for d in data["deviations"])

    def test_strict_mismatch_exit(self, capsys):
        code, _, _ = run_cli(capsys, "compare", "--n", "3", "--p", "5",
                             "--t", "1", "--strict")
        assert code == EXIT_MISMATCH

    def test_heavy_field_skips_oracle(self, capsys):
        code, out, _ = run_cli(capsys, "compare", "--n", "2", "--p", "101",
                               "--t", "1", "--strict")
        assert code == EXIT_OK  # skipped, not a mismatch
        data = json.loads(out)
        assert data["verdict"] == "oracle-skipped"
        assert data["oracle"] is None
        assert any("--heavy" in w for w in data["warnings"])

    def test_no_csv(self, capsys):
        code, _, _ = run_cli(capsys, "compare", "--n", "3", "--p", "7",
                             "--t", "1", "--format", "csv")
        assert code == EXIT_USAGE


class TestScanLimit:
    def test_deviation_decays(self, capsys):
        code, out, _ = run_cli(capsys, "scan-limit", "--n", "3", "--p", "5..31")
        assert code == EXIT_OK
        data = json.loads(out)
        rows = {r["p"]: r["max_dev"] for r in data["rows"]}
        assert set(rows) == {5, 7, 11, 13, 17, 19, 23, 29, 31}
        for p in (7, 13, 19, 31):           # 1 mod 3: ordinary, no deviation
            assert rows[p] == [0, 1]
        for p in (5, 11, 17, 23, 29):       # 2 mod 3: |dev| = 14/(3(p-1))
            num, den = rows[p]
            assert Fraction(num, den) == Fraction(14, 3 * (p - 1))
        assert data["skipped_primes"] == []

    def test_skips_degenerate_primes(self, capsys):
        code, out, _ = run_cli(capsys, "scan-limit", "--n", "3", "--p", "2..7")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["skipped_primes"] == [2, 3]
        assert [r["p"] for r in data["rows"]] == [5, 7]

    def test_csv(self, capsys):
        code, out, _ = run_cli(capsys, "scan-limit", "--n", "3", "--p", "7..13",
                               "--format", "csv")
        assert code == EXIT_OK
        lines = out.strip().split("\n")
        assert lines[0] == "p,max_dev_num,max_dev_den"
        assert lines[1] == "7,0,1"
        assert lines[2] == "11,7,15"
        assert lines[3] == "13,0,1"


def test_selftest_rejects_csv(capsys):
    code, _, _ = run_cli(capsys, "selftest", "--format", "csv")
    assert code == EXIT_USAGE


def test_missing_subcommand_is_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == EXIT_USAGE
