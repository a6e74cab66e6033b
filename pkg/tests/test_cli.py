import csv
import io

import pytest

import reference_values as ref
from pcmri.cli import main

MOTIVATING_FILE = "4\n1 2 * 5\n1/2 1 4 *\n* 1/4 1 2\n1/5 * 1/2 1\n"
CONSISTENT_3 = "3\n1 2 4\n1/2 1 2\n1/4 1/2 1\n"
DISCONNECTED = "4\n1 2 * *\n1/2 1 * *\n* * 1 3\n* * 1/3 1\n"


def run_cli(capsys, *args):
    code = main(list(args))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    return list(csv.DictReader(io.StringIO(text)))


class TestEnumerate:
    @pytest.mark.parametrize("n,m,count", [(5, 3, 4), (4, 1, 1), (6, 6, 20)])
    def test_row_counts(self, capsys, n, m, count):
        code, out, _ = run_cli(
            capsys, "enumerate", "--n", str(n), "--m", str(m), "--samples", "20000"
        )
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == count
        assert list(rows[0].keys()) == [
            "n", "m", "graph_id", "canonical_code", "degree_sequence",
            "spectral_radius", "probability",
        ]

    def test_out_of_range(self, capsys):
        code, _, err = run_cli(capsys, "enumerate", "--n", "14", "--m", "2")
        assert code == 1
        assert "error" in err


class TestCheck:
    def test_motivating_matrix_rejected(self, capsys, tmp_path):
        path = tmp_path / "matrix.txt"
        path.write_text(MOTIVATING_FILE)
        code, out, _ = run_cli(capsys, "check", str(path))
        assert code == 2
        fields = dict(
            line.split(": ", 1) for line in out.strip().split("\n") if ": " in line
        )
        assert float(fields["ci"]) == pytest.approx(0.0284, abs=2e-3)
        assert float(fields["ri"].split()[0]) == pytest.approx(0.2646, abs=1e-3)
        assert float(fields["cr"]) == pytest.approx(0.107, abs=5e-3)
        assert fields["verdict"] == "UNACCEPTABLE"
        assert "EXACT" in fields["ri"]

    def test_consistent_matrix_accepted(self, capsys, tmp_path):
        path = tmp_path / "matrix.txt"
        path.write_text(CONSISTENT_3)
        code, out, _ = run_cli(capsys, "check", str(path), "--samples", "2000")
        assert code == 0
        assert "verdict: ACCEPTABLE" in out
        assert "ci: 0.000000" in out

    def test_disconnected_matrix_errors(self, capsys, tmp_path):
        path = tmp_path / "matrix.txt"
        path.write_text(DISCONNECTED)
        code, _, err = run_cli(capsys, "check", str(path))
        assert code == 1
        assert "no unique completion" in err

    def test_unparseable_file_errors(self, capsys, tmp_path):
        path = tmp_path / "matrix.txt"
        path.write_text("2\n1 spam\n1 1\n")
        code, _, err = run_cli(capsys, "check", str(path))
        assert code == 1
        assert "error" in err

    def test_missing_file_errors(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "check", str(tmp_path / "nope.txt"))
        assert code == 1


class TestRi:
    def test_tree_classes(self, capsys):
        code, out, _ = run_cli(capsys, "ri", "--n", "4", "--m", "3", "--samples", "2000")
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 2
        assert all(r["mode"] == "EXACT" for r in rows)
        assert all(r["seed"] == "" for r in rows)


class TestTable:
    def test_basic_table(self, capsys, tmp_path):
        out_path = tmp_path / "t.csv"
        code, _, _ = run_cli(
            capsys, "table", "--n", "5", "--m", "4..5", "--samples", "2000",
            "--seed", "4", "--output", str(out_path),
        )
        assert code == 0
        rows = parse_csv(out_path.read_text())
        assert len(rows) == 10

    def test_empty_range_header_only(self, capsys):
        code, out, _ = run_cli(capsys, "table", "--n", "5", "--m", "9..8")
        assert code == 0
        assert out.strip() == ",".join([
            "n", "m", "graph_id", "canonical_code", "degree_sequence",
            "spectral_radius", "probability", "random_index", "acceptance_ratio",
            "ci_std", "sample_count", "mode", "seed",
        ])

    def test_fig2_subset(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--n", "5..5", "--m", "2", "--figure", "fig2",
            "--samples", "2000",
        )
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 2
        srs = sorted(float(r["spectral_radius"]) for r in rows)
        assert srs[0] == pytest.approx(3.2361, abs=1e-3)
        assert srs[1] == pytest.approx(3.3234, abs=1e-3)

    def test_fig6_subset(self, capsys):
        code, out, _ = run_cli(
            capsys, "table", "--n", "5", "--m", "4..5", "--figure", "fig6",
            "--samples", "2000",
        )
        assert code == 0
        rows = parse_csv(out)
        assert len(rows) == 10
        for row in rows:
            assert 0.0 <= float(row["acceptance_pct"]) <= 100.0
