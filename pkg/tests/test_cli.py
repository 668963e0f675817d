import subprocess
import sys

import pytest

from rugbypi.cli import main
from rugbypi.ripper import parse_ruleset_text

from .conftest import HEADER, row


@pytest.fixture()
def tournament_file(tmp_path, tournament_csv):
    path = tmp_path / "rwc.csv"
    path.write_text(tournament_csv)
    return path


def test_analyze_writes_table_and_rules(tmp_path, tournament_file):
    out = tmp_path / "group.md"
    assert main(["analyze", "--input", str(tournament_file), "--stage", "group", "--out", str(out)]) == 0
    table = out.read_text()
    assert table.splitlines()[2].startswith("| points |")
    listing = (tmp_path / "group.rules.txt").read_text()
    assert listing.startswith("JRIP rules:\n")
    parse_ruleset_text(listing.split("\n# provenance")[0])
    assert "# stage: group" in listing and "# training rows: 74" in listing


def test_analyze_csv_format(tmp_path, tournament_file):
    out = tmp_path / "t.csv"
    rules = tmp_path / "r.txt"
    assert main(["analyze", "--input", str(tournament_file), "--format", "csv", "--out", str(out),
                 "--rules-out", str(rules), "--wilcoxon", "approx"]) == 0
    assert out.read_text().startswith("indicator,n_pairs,")
    assert rules.exists()


def test_reruns_are_byte_identical(tmp_path, tournament_file):
    texts = []
    for i in range(2):
        out = tmp_path / f"run{i}.md"
        assert main(["analyze", "--input", str(tournament_file), "--out", str(out), "--seed", "3"]) == 0
        texts.append((out.read_text(), (tmp_path / f"run{i}.rules.txt").read_text()))
    assert texts[0] == texts[1]


def test_stage_changes_dataset_hash(tmp_path, tournament_file):
    hashes = []
    for stage in ("all", "group"):
        out = tmp_path / f"{stage}.txt"
        assert main(["rules", "--input", str(tournament_file), "--stage", stage, "--out", str(out)]) == 0
        hashes.append(next(l for l in out.read_text().splitlines() if "dataset sha256" in l))
    assert hashes[0] != hashes[1]


def test_min_no_one_without_pruning_fits_training_data(tmp_path, tournament_file):
    out = tmp_path / "rules.txt"
    js = tmp_path / "rules.json"
    assert main(["rules", "--input", str(tournament_file), "--stage", "group", "--min-no", "1",
                 "--no-pruning", "--out", str(out), "--json-out", str(js)]) == 0
    assert "# misclassified: 0" in out.read_text()
    assert js.read_text().startswith("{")


def test_derive(tmp_path, tournament_file):
    out = tmp_path / "derived.csv"
    assert main(["derive", "--input", str(tournament_file), "--out", str(out)]) == 0
    header = out.read_text().splitlines()[0]
    assert header.endswith("pct_metres_from_kicks")


def test_validate_ok(tournament_file, capsys):
    assert main(["validate", "--input", str(tournament_file)]) == 0
    assert "passed" in capsys.readouterr().out


def test_validate_turnover_failure(tmp_path, capsys):
    header = HEADER + ",turnovers_won,turnovers_won_own_half,turnovers_won_opp_half"
    text = "\n".join([header, row("M1", "A", "B", "won", points=20) + ",10,4,6",
                      row("M1", "B", "A", "lost", points=3) + ",7,4,5"]) + "\n"
    path = tmp_path / "t.csv"
    path.write_text(text)
    assert main(["validate", "--input", str(path)]) == 2
    assert "FAIL M1 B" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    [],
    ["analyze", "--input", "x.csv"],
    ["analyze", "--input", "x.csv", "--out", "y", "--stage", "finals"],
    ["rules", "--input", "x.csv", "--out", "y", "--min-no", "0"],
    ["frobnicate"],
])
def test_usage_errors_exit_1(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_missing_file_exits_2(tmp_path):
    assert main(["validate", "--input", str(tmp_path / "nope.csv")]) == 2


def test_bad_data_exits_2(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("\n".join([HEADER, row("M1", "A", "B", "won", points=20),
                               row("M1", "B", "A", "won", points=3)]) + "\n")
    assert main(["analyze", "--input", str(path), "--out", str(tmp_path / "o.md")]) == 2
    assert "error" in capsys.readouterr().err


def test_empty_stage_exits_2(tmp_path):
    path = tmp_path / "g.csv"
    path.write_text("\n".join([HEADER, row("M1", "A", "B", "won", points=20),
                               row("M1", "B", "A", "lost", points=3)]) + "\n")
    assert main(["rules", "--input", str(path), "--stage", "playoff", "--out", str(tmp_path / "r")]) == 2


def test_module_entry_point(tournament_file):
    proc = subprocess.run([sys.executable, "-m", "rugbypi", "validate", "--input", str(tournament_file)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
