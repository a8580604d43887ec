import json

import pytest

from permchannel.cli import main


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCount:
    def test_cyclic_table(self, capsys):
        code, out, _ = run_cli(capsys, "count", "--group", "cyclic", "--n", "4", "--d", "2")
        assert code == 0
        lines = out.splitlines()
        assert any(line.startswith("N_c") and " 6 " in line for line in lines)
        assert any(line.startswith("N_q") and " 16 " in line for line in lines)
        assert any(line.startswith("N_a") and " 70 " in line for line in lines)

    def test_symmetric_json_uses_strings(self, capsys):
        code, out, _ = run_cli(
            capsys, "count", "--group", "symmetric", "--n", "3", "--d", "2", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["N_c"]["value"] == "4"
        assert payload["N_q"]["value"] == "6"
        assert payload["N_a"]["value"] == "20"

    def test_group_file(self, capsys, tmp_path):
        path = tmp_path / "trivial.txt"
        path.write_text("# identity only\n0 1 2\n")
        code, out, _ = run_cli(capsys, "count", "--group-file", str(path), "--d", "2", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["N_c"]["value"] == "8"
        assert payload["N_q"]["value"] == "8"
        assert payload["N_a"]["value"] == "64"

    def test_mode_filter(self, capsys):
        code, out, _ = run_cli(
            capsys, "count", "--group", "cyclic", "--n", "4", "--d", "2", "--mode", "classical"
        )
        assert code == 0
        assert "N_c" in out and "N_q" not in out

    def test_missing_d_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "count", "--group", "cyclic", "--n", "4")
        assert code == 2
        assert "--d" in err

    def test_missing_group_is_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "count", "--d", "2")
        assert code == 2


class TestRepresentatives:
    def test_lexicographic_list(self, capsys):
        code, out, _ = run_cli(capsys, "representatives", "--group", "cyclic", "--n", "4", "--d", "2")
        assert code == 0
        assert out.splitlines() == ["0000", "0001", "0011", "0101", "0111", "1111"]

    def test_json_format(self, capsys):
        code, out, _ = run_cli(
            capsys, "representatives", "--group", "cyclic", "--n", "1", "--d", "3", "--format", "json"
        )
        assert code == 0
        assert json.loads(out) == ["0", "1", "2"]

    def test_non_cyclic_is_usage_error(self, capsys):
        code, _, _ = run_cli(capsys, "representatives", "--group", "dihedral", "--n", "4", "--d", "2")
        assert code == 2

    def test_bound_exceeded(self, capsys):
        code, _, err = run_cli(capsys, "representatives", "--group", "cyclic", "--n", "30", "--d", "2")
        assert code == 3
        assert "bound" in err


class TestEncode:
    def test_writes_basis_and_prints_summary(self, capsys, tmp_path):
        out_path = tmp_path / "basis.json"
        code, out, _ = run_cli(
            capsys, "encode", "--group", "cyclic", "--n", "4", "--d", "2", "--out", str(out_path)
        )
        assert code == 0
        assert "states: 16" in out
        assert "m: [6,3,4,3]" in out
        payload = json.loads(out_path.read_text())
        assert len(payload["entries"]) == 16

    def test_two_positions_summary(self, capsys, tmp_path):
        code, out, _ = run_cli(
            capsys, "encode", "--group", "cyclic", "--n", "2", "--d", "2",
            "--out", str(tmp_path / "b.json"),
        )
        assert code == 0
        assert "m: [3,1]" in out

    def test_stdout_payload_without_out(self, capsys):
        code, out, _ = run_cli(capsys, "encode", "--group", "cyclic", "--n", "1", "--d", "3")
        assert code == 0
        assert '"multiplicities": [' in out and "states: 3" in out

    def test_non_cyclic_rejected(self, capsys):
        code, _, _ = run_cli(capsys, "encode", "--group", "symmetric", "--n", "3", "--d", "2")
        assert code == 2


class TestSimulate:
    def test_all_modes_pass_for_cyclic(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--group", "cyclic", "--n", "3", "--d", "2", "--format", "json"
        )
        assert code == 0
        payload = json.loads(out)
        assert payload["classical"]["failures"] == 0
        assert payload["quantum"]["failures"] == []
        assert payload["ancilla"]["triples"] == 24

    def test_classical_mode_works_for_any_group(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--group", "symmetric", "--n", "4", "--d", "2",
            "--mode", "classical", "--format", "json",
        )
        assert code == 0
        assert json.loads(out)["classical"]["failures"] == 0

    def test_quantum_mode_requires_cyclic(self, capsys):
        code, _, _ = run_cli(
            capsys, "simulate", "--group", "dihedral", "--n", "4", "--d", "2", "--mode", "quantum"
        )
        assert code == 2


class TestVerify:
    def test_dihedral_cross_checks(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--group", "dihedral", "--n", "4", "--d", "2")
        assert code == 0
        assert "13 == 13" in out
        assert "FAIL" not in out

    def test_cyclic_negative_control(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--group", "cyclic", "--n", "4", "--d", "2")
        assert code == 0
        assert "FS = [1, 0, 1, 0]" in out
        assert "formula 10 vs multiplicity sum 16" in out

    def test_trivial_cyclic(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--group", "cyclic", "--n", "1", "--d", "2")
        assert code == 0
        assert "FAIL" not in out

    def test_custom_group_file(self, capsys, tmp_path):
        path = tmp_path / "klein.txt"
        path.write_text("1 0 3 2\n2 3 0 1\n")
        code, out, _ = run_cli(capsys, "verify", "--group-file", str(path), "--d", "2")
        assert code == 0
        assert "FAIL" not in out


class TestChartable:
    def test_s3_table(self, capsys):
        code, out, _ = run_cli(capsys, "chartable", "--group", "symmetric", "--n", "3")
        assert code == 0
        assert "mu2" in out and "FS" in out

    def test_json_payload(self, capsys):
        code, out, _ = run_cli(capsys, "chartable", "--group", "cyclic", "--n", "4", "--format", "json")
        assert code == 0
        payload = json.loads(out)
        assert payload["group_order"] == 4
        assert [ir["fs_indicator"] for ir in payload["irreps"]] == [1, 0, 1, 0]

    def test_bound(self, capsys):
        code, _, _ = run_cli(capsys, "chartable", "--group", "symmetric", "--n", "8")
        assert code == 3


class TestScaling:
    def test_symmetric_classical_ratio(self, capsys):
        code, out, _ = run_cli(
            capsys, "scaling", "--group", "symmetric", "--n", "1", "--n-max", "5",
            "--d", "2", "--mode", "classical",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n,exact,asymptotic,ratio"
        rows = [line.split(",") for line in lines[1:]]
        for n, row in zip(range(1, 6), rows):
            assert int(row[1]) == n + 1
            assert float(row[3]) == (n + 1) / n

    def test_single_color_is_constant(self, capsys):
        code, out, _ = run_cli(
            capsys, "scaling", "--group", "cyclic", "--n", "2", "--n-max", "6",
            "--d", "1", "--mode", "classical",
        )
        assert code == 0
        for line in out.splitlines()[1:]:
            assert line.split(",")[1] == "1"

    def test_requires_single_mode(self, capsys):
        code, _, _ = run_cli(capsys, "scaling", "--group", "cyclic", "--n", "2", "--d", "2")
        assert code == 2

    def test_cyclic_quantum_has_no_law(self, capsys):
        code, _, err = run_cli(
            capsys, "scaling", "--group", "cyclic", "--n", "2", "--d", "2", "--mode", "quantum"
        )
        assert code == 2
        assert "exact" in err


class TestDeterminism:
    @pytest.mark.parametrize(
        "args",
        [
            ("count", "--group", "dihedral", "--n", "5", "--d", "3", "--format", "json"),
            ("verify", "--group", "cyclic", "--n", "4", "--d", "2"),
            ("chartable", "--group", "symmetric", "--n", "4", "--format", "json"),
            ("simulate", "--group", "cyclic", "--n", "4", "--d", "2", "--format", "json"),
        ],
    )
    def test_identical_invocations_identical_bytes(self, capsys, args):
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second


def test_help_exits_cleanly(capsys):
    code, _, _ = run_cli(capsys, "--help")
    assert code == 0
