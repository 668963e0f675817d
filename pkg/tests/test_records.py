import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from rugbypi.errors import (
    MissingHeader,
    OpponentMismatch,
    PairingViolation,
    RangeViolation,
    UnknownColumn,
)
from rugbypi.records import (
    TeamMatchRecord,
    augment,
    derive_indicators,
    parse_records,
    validate_turnover_consistency,
    write_derived_csv,
)
from rugbypi.schema import DERIVED_NAMES, RAW_NAMES, TURNOVER_COLUMNS

from .conftest import HEADER, row


def csv_of(*rows, header=HEADER):
    return "\n".join([header, *rows]) + "\n"


def test_full_tournament_splits_37_group_8_playoff(tournament_records):
    assert len(tournament_records) == 90
    stages = {}
    for rec in tournament_records:
        stages.setdefault(rec.match_id, rec.stage)
    assert len(stages) == 45
    assert sum(s == "group" for s in stages.values()) == 37
    assert sum(s == "playoff" for s in stages.values()) == 8


def test_empty_input_is_missing_header():
    with pytest.raises(MissingHeader):
        parse_records("")


def test_header_missing_indicator_column():
    header = HEADER.replace(",rucks_won", "")
    with pytest.raises(MissingHeader, match="rucks_won"):
        parse_records(header + "\n")


def test_unknown_column_rejected():
    with pytest.raises(UnknownColumn, match="ruck_speed"):
        parse_records(HEADER + ",ruck_speed\n")


def test_two_winners_is_pairing_violation():
    text = csv_of(row("M7", "Fiji", "Wales", "won", points=20),
                  row("M7", "Wales", "Fiji", "won", points=10))
    with pytest.raises(PairingViolation):
        parse_records(text)


def test_single_row_match_is_pairing_violation():
    with pytest.raises(PairingViolation, match="expected 2 rows"):
        parse_records(csv_of(row("M1", "A", "B", "won")))


def test_draw_rejected():
    text = csv_of(row("M1", "A", "B", "draw", points=20), row("M1", "B", "A", "draw", points=20))
    with pytest.raises(PairingViolation):
        parse_records(text)


def test_level_points_rejected_even_with_labels():
    text = csv_of(row("M1", "A", "B", "won", points=20), row("M1", "B", "A", "lost", points=20))
    with pytest.raises(PairingViolation, match="points"):
        parse_records(text)


def test_mixed_stage_within_match_rejected():
    text = csv_of(row("M1", "A", "B", "won", points=20),
                  row("M1", "B", "A", "lost", stage="playoff", points=3))
    with pytest.raises(PairingViolation, match="stages"):
        parse_records(text)


@pytest.mark.parametrize("column,value", [
    ("possession", "1.2"),
    ("lineout_success_pct", "-0.1"),
    ("carries", "-3"),
    ("carries", "12.5"),
    ("kick_metres", "-1"),
    ("passes_made", "lots"),
])
def test_range_violations(column, value):
    text = csv_of(row("M1", "A", "B", "won", points=20, **{column: value}),
                  row("M1", "B", "A", "lost", points=3))
    with pytest.raises(RangeViolation, match=column):
        parse_records(text)


def test_empty_cell_is_absent_not_zero():
    text = csv_of(row("M1", "A", "B", "won", points=20, kicks=""),
                  row("M1", "B", "A", "lost", points=3))
    a, _ = parse_records(text)
    assert a.raw["kicks"] is None
    assert a.absent() == ["kicks"]
    aug = augment(parse_records(text))[0]
    for name in ("kick_metres_per_kick", "kicks_regathered_per_kick",
                 "kicks_to_touch_per_kick", "kicks_charged_per_kick"):
        assert aug.derived[name] is None


def test_column_order_is_free():
    names = HEADER.split(",")
    swapped = names[:]
    swapped[5], swapped[6] = swapped[6], swapped[5]
    line_a = row("M1", "A", "B", "won", points=20, territory_last_10_mins=0.7).split(",")
    line_b = row("M1", "B", "A", "lost", points=3).split(",")
    for line in (line_a, line_b):
        line[5], line[6] = line[6], line[5]
    recs = parse_records(csv_of(",".join(line_a), ",".join(line_b), header=",".join(swapped)))
    assert recs[0].raw["points"] == 20
    assert recs[0].raw["territory_last_10_mins"] == 0.7


def _record(team="A", opponent="B", match_id="M1", result="won", **raw):
    values = {name: 10.0 for name in RAW_NAMES}
    values.update(raw)
    return TeamMatchRecord(match_id, "group", team, opponent, result, values)


def test_carry_metres_per_carry():
    aug = derive_indicators(_record(carry_metres=537, carries=128), _record("B", "A"))
    assert aug.derived["carry_metres_per_carry"] == pytest.approx(4.1953, abs=5e-5)


def test_lineout_steal_pct_uses_opponent_lineouts():
    mine = _record(lineout_steals=1, lineouts=5)
    theirs = _record("B", "A", result="lost", lineouts=12)
    aug = derive_indicators(mine, theirs)
    assert aug.derived["lineout_steal_pct"] == pytest.approx(0.0833, abs=5e-5)
    assert aug.derived["lineout_steal_pct"] == 1 / 12


def test_zero_carries_leaves_per_carry_values_undefined():
    aug = derive_indicators(_record(carries=0, carries_over_gainline=0), _record("B", "A"))
    for name in ("carry_metres_per_carry", "pct_carries_over_gainline",
                 "defenders_beaten_per_carry", "clean_breaks_per_carry",
                 "offloads_per_carry", "pass_to_carry_ratio"):
        assert aug.derived[name] is None
    assert aug.derived["kick_metres_per_kick"] == 1.0


def test_opponent_from_other_match_rejected():
    with pytest.raises(OpponentMismatch):
        derive_indicators(_record(), _record("B", "A", match_id="M2"))


def test_derived_order_matches_schema():
    aug = derive_indicators(_record(), _record("B", "A"))
    assert tuple(aug.derived) == DERIVED_NAMES
    assert list(aug.values()) == [*RAW_NAMES, *DERIVED_NAMES]


metres = st.integers(min_value=0, max_value=3000).map(float)


@given(carry=metres, kick=metres, carries=st.integers(0, 250), gain=st.integers(0, 250))
def test_metre_identities(carry, kick, carries, gain):
    gain = min(gain, carries)
    aug = derive_indicators(
        _record(carry_metres=carry, kick_metres=kick, carries=float(carries),
                carries_over_gainline=float(gain)),
        _record("B", "A"),
    )
    d = aug.derived
    assert d["kick_metres_plus_carry_metres"] == kick + carry
    if carry + kick > 0:
        assert abs(d["pct_metres_from_carries"] + d["pct_metres_from_kicks"] - 1) <= 1e-12
    else:
        assert d["pct_metres_from_carries"] is None and d["pct_metres_from_kicks"] is None
    if carries:
        assert 0 <= d["pct_carries_over_gainline"] <= 1
    for value in d.values():
        assert value is None or math.isfinite(value)


def test_turnovers_consistent_row_passes():
    rec = TeamMatchRecord("M1", "group", "A", "B", "won", {}, dict(zip(TURNOVER_COLUMNS, (10, 4, 6))))
    assert validate_turnover_consistency([rec]).passed


def test_turnovers_inconsistent_row_flagged():
    good = TeamMatchRecord("M1", "group", "A", "B", "won", {}, dict(zip(TURNOVER_COLUMNS, (10, 4, 6))))
    bad = TeamMatchRecord("M1", "group", "B", "A", "lost", {}, dict(zip(TURNOVER_COLUMNS, (10, 4, 5))))
    report = validate_turnover_consistency([good, bad])
    assert not report.passed
    assert [(i.match_id, i.team) for i in report.issues] == [("M1", "B")]
    assert report.issues[0].observed["turnovers_won_own_half"] == 5


def test_turnover_columns_absent_passes_with_note(tournament_records):
    report = validate_turnover_consistency(tournament_records)
    assert report.passed
    assert report.notes and "absent" in report.notes[0]


def test_turnover_columns_parsed_but_not_in_schema():
    header = HEADER + "," + ",".join(TURNOVER_COLUMNS)
    text = csv_of(row("M1", "A", "B", "won", points=20) + ",10,4,6",
                  row("M1", "B", "A", "lost", points=3) + ",7,4,5", header=header)
    recs = parse_records(text)
    assert recs[0].extras["turnovers_won"] == 10
    assert "turnovers_won" not in augment(recs)[0].values()
    report = validate_turnover_consistency(recs)
    assert [i.team for i in report.issues] == ["B"]


def test_derived_csv_layout(augmented):
    text = write_derived_csv(augmented)
    header, first = text.splitlines()[:2]
    cols = header.split(",")
    assert cols[-14:] == list(DERIVED_NAMES)
    assert len(first.split(",")) == len(cols)
    # the derived file itself is a valid input once derived columns are dropped
    assert len(cols) == 5 + 34 + 14


def test_records_are_immutable(tournament_records):
    with pytest.raises(TypeError):
        tournament_records[0].raw["points"] = 0
