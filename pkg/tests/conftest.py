import pytest

from rugbypi.records import augment, parse_records
from rugbypi.schema import ID_COLUMNS, RAW_NAMES
from rugbypi.synthetic import make_tournament, records_to_csv

HEADER = ",".join((*ID_COLUMNS, *RAW_NAMES))


def row(match_id, team, opponent, result, stage="group", **values):
    """One CSV line; unspecified indicators get a plausible default."""
    defaults = {name: "10" for name in RAW_NAMES}
    for name in ("territory_last_10_mins", "territory", "possession", "possession_first_half",
                 "scrum_success_pct", "lineout_success_pct", "tackle_success_pct"):
        defaults[name] = "0.5"
    defaults.update({k: str(v) for k, v in values.items()})
    return ",".join([match_id, stage, team, opponent, result] + [defaults[n] for n in RAW_NAMES])


@pytest.fixture(scope="session")
def tournament_csv() -> str:
    return records_to_csv(make_tournament(seed=2019))


@pytest.fixture(scope="session")
def tournament_records(tournament_csv):
    return parse_records(tournament_csv)


@pytest.fixture(scope="session")
def augmented(tournament_records):
    return augment(tournament_records)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed", "error"):
        for report in terminalreporter.stats.get(outcome, []):
            if report.when == "call" and "test_acceptance.py" in report.nodeid:
                name = report.nodeid.split("::")[-1].removeprefix("test_")
                lines.append((name, "PASS" if outcome == "passed" else "FAIL"))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, verdict in sorted(lines):
            terminalreporter.write_line(f"{verdict} {name}")
