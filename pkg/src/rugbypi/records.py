"""Per-team-per-match records: CSV ingest, validation and derived indicators."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    MissingHeader,
    OpponentMismatch,
    PairingViolation,
    RangeViolation,
    UnknownColumn,
)
from .schema import (
    COUNT_NAMES,
    DERIVED_NAMES,
    FRACTION_NAMES,
    ID_COLUMNS,
    INDICATOR_NAMES,
    RAW_NAMES,
    RESULTS,
    STAGES,
    TURNOVER_COLUMNS,
)

Value = Optional[float]


@dataclass(frozen=True)
class TeamMatchRecord:
    match_id: str
    stage: str
    team: str
    opponent: str
    result: str
    raw: Mapping[str, Value]
    extras: Mapping[str, Value] = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        object.__setattr__(self, "raw", MappingProxyType(dict(self.raw)))
        object.__setattr__(self, "extras", MappingProxyType(dict(self.extras)))

    def absent(self) -> list[str]:
        return [name for name in RAW_NAMES if self.raw.get(name) is None]


@dataclass(frozen=True)
class AugmentedRecord:
    base: TeamMatchRecord
    derived: Mapping[str, Value]

    def __post_init__(self):
        object.__setattr__(self, "derived", MappingProxyType(dict(self.derived)))

    @property
    def match_id(self) -> str:
        return self.base.match_id

    @property
    def stage(self) -> str:
        return self.base.stage

    @property
    def team(self) -> str:
        return self.base.team

    @property
    def result(self) -> str:
        return self.base.result

    def values(self) -> dict[str, Value]:
        """All 48 indicator values in schema order."""
        merged = {**self.base.raw, **self.derived}
        return {name: merged.get(name) for name in INDICATOR_NAMES}


@dataclass(frozen=True)
class ValidationIssue:
    match_id: str
    team: str
    rule: str
    observed: Mapping[str, Value]


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[ValidationIssue, ...] = ()
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.issues


def _parse_cell(text: str, column: str, line: int) -> Value:
    text = text.strip()
    if text == "":
        return None
    try:
        value = float(text)
    except ValueError:
        raise RangeViolation(f"line {line}: {column}={text!r} is not a number") from None
    if not math.isfinite(value):
        raise RangeViolation(f"line {line}: {column}={text!r} is not finite")
    return value


def _check_range(name: str, value: Value, line: int) -> None:
    if value is None:
        return
    if value < 0:
        raise RangeViolation(f"line {line}: {name}={value} is negative")
    if name in FRACTION_NAMES and value > 1:
        raise RangeViolation(f"line {line}: {name}={value} is outside [0, 1]")
    if name in COUNT_NAMES and value != int(value):
        raise RangeViolation(f"line {line}: {name}={value} is not a whole count")


def parse_records(csv_text: str) -> list[TeamMatchRecord]:
    """Parse the per-team-per-match CSV and check winner/loser pairing.

    Columns are matched by name, so their order in the file is free.
    Empty cells are recorded as absent (None), never as zero.
    """
    reader = csv.reader(io.StringIO(csv_text))
    header = next(reader, None)
    if not header or all(not h.strip() for h in header):
        raise MissingHeader("input has no header row")
    header = [h.strip() for h in header]

    allowed = set(ID_COLUMNS) | set(RAW_NAMES) | set(TURNOVER_COLUMNS)
    unknown = [h for h in header if h not in allowed]
    if unknown:
        raise UnknownColumn(f"unknown column(s): {', '.join(unknown)}")
    missing = [h for h in (*ID_COLUMNS, *RAW_NAMES) if h not in header]
    if missing:
        raise MissingHeader(f"header lacks column(s): {', '.join(missing)}")
    if len(set(header)) != len(header):
        raise MissingHeader("duplicate column names in header")

    records = []
    for line, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise RangeViolation(f"line {line}: expected {len(header)} cells, got {len(row)}")
        cells = dict(zip(header, row))
        stage = cells["stage"].strip().lower()
        result = cells["result"].strip().lower()
        if stage not in STAGES:
            raise RangeViolation(f"line {line}: stage {stage!r} not in {STAGES}")
        if result not in RESULTS:
            # includes "draw": the paired design has no place for it
            raise PairingViolation(f"line {line}: result {result!r} not in {RESULTS}")
        raw = {}
        for name in RAW_NAMES:
            raw[name] = _parse_cell(cells[name], name, line)
            _check_range(name, raw[name], line)
        extras = {}
        for name in TURNOVER_COLUMNS:
            if name in cells:
                extras[name] = _parse_cell(cells[name], name, line)
                _check_range(name, extras[name], line)
        records.append(
            TeamMatchRecord(
                match_id=cells["match_id"].strip(),
                stage=stage,
                team=cells["team"].strip(),
                opponent=cells["opponent"].strip(),
                result=result,
                raw=raw,
                extras=extras,
            )
        )
    check_pairing(records)
    return records


def group_matches(records: Sequence) -> dict[str, list]:
    """Records grouped by match_id, in order of first appearance."""
    matches: dict[str, list] = {}
    for rec in records:
        matches.setdefault(rec.match_id, []).append(rec)
    return matches


def check_pairing(records: Sequence) -> None:
    for match_id, pair in group_matches(records).items():
        if len(pair) != 2:
            raise PairingViolation(f"match {match_id}: expected 2 rows, got {len(pair)}")
        a, b = (getattr(r, "base", r) for r in pair)
        if {a.result, b.result} != {"won", "lost"}:
            raise PairingViolation(
                f"match {match_id}: results {a.result!r}/{b.result!r}, need one won and one lost"
            )
        if a.stage != b.stage:
            raise PairingViolation(f"match {match_id}: inconsistent stages {a.stage}/{b.stage}")
        if a.team == b.team or a.opponent != b.team or b.opponent != a.team:
            raise PairingViolation(f"match {match_id}: team/opponent columns do not mirror")
        winner, loser = (a, b) if a.result == "won" else (b, a)
        wp, lp = winner.raw.get("points"), loser.raw.get("points")
        if wp is not None and lp is not None and not wp > lp:
            raise PairingViolation(
                f"match {match_id}: winner points {wp:g} not above loser points {lp:g}"
            )


def validate_turnover_consistency(records: Iterable[TeamMatchRecord]) -> ValidationReport:
    """Flag rows where turnovers won != opposition-half + own-half turnovers."""
    records = list(records)
    present = [r for r in records if all(c in r.extras for c in TURNOVER_COLUMNS)]
    if not present:
        return ValidationReport(notes=("turnover columns absent; nothing to check",))
    issues = []
    skipped = 0
    for rec in present:
        total, opp, own = (rec.extras[c] for c in TURNOVER_COLUMNS)
        if total is None or opp is None or own is None:
            skipped += 1
            continue
        if total != opp + own:
            issues.append(
                ValidationIssue(
                    rec.match_id,
                    rec.team,
                    "turnovers_won == turnovers_won_opp_half + turnovers_won_own_half",
                    MappingProxyType({c: rec.extras[c] for c in TURNOVER_COLUMNS}),
                )
            )
    notes = (f"{skipped} row(s) with empty turnover cells skipped",) if skipped else ()
    return ValidationReport(tuple(issues), notes)


def _div(num: Value, den: Value) -> Value:
    if num is None or den is None or den == 0:
        return None
    return num / den


def derive_indicators(record: TeamMatchRecord, opponent_record: TeamMatchRecord) -> AugmentedRecord:
    if record.match_id != opponent_record.match_id:
        raise OpponentMismatch(
            f"record is for match {record.match_id}, opponent for {opponent_record.match_id}"
        )
    if record.team == opponent_record.team:
        raise OpponentMismatch(f"match {record.match_id}: both records belong to {record.team}")
    r = record.raw
    carries = r["carries"]
    kicks = r["kicks"]
    carry_m, kick_m = r["carry_metres"], r["kick_metres"]
    total = None if carry_m is None or kick_m is None else kick_m + carry_m
    derived = {
        "carry_metres_per_carry": _div(carry_m, carries),
        "pct_carries_over_gainline": _div(r["carries_over_gainline"], carries),
        "defenders_beaten_per_carry": _div(r["defenders_beaten"], carries),
        "clean_breaks_per_carry": _div(r["clean_breaks"], carries),
        "offloads_per_carry": _div(r["offloads"], carries),
        "kick_metres_per_kick": _div(kick_m, kicks),
        "kicks_regathered_per_kick": _div(r["kicks_regathered"], kicks),
        "kicks_to_touch_per_kick": _div(r["kicks_to_touch"], kicks),
        "kicks_charged_per_kick": _div(r["kicks_charged"], kicks),
        "lineout_steal_pct": _div(r["lineout_steals"], opponent_record.raw["lineouts"]),
        "pass_to_carry_ratio": _div(r["passes_made"], carries),
        "kick_metres_plus_carry_metres": total,
        "pct_metres_from_carries": _div(carry_m, total),
        "pct_metres_from_kicks": _div(kick_m, total),
    }
    assert tuple(derived) == DERIVED_NAMES
    return AugmentedRecord(record, derived)


def augment(records: Sequence[TeamMatchRecord]) -> list[AugmentedRecord]:
    """Derive indicators for every record, joining each with its opponent."""
    check_pairing(records)
    out = []
    for pair in group_matches(records).values():
        a, b = pair
        out.append(derive_indicators(a, b))
        out.append(derive_indicators(b, a))
    return out


def _fmt(value: Value) -> str:
    if value is None:
        return ""
    if value == int(value) and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def write_derived_csv(records: Sequence[AugmentedRecord]) -> str:
    """Input layout with the 14 derived columns appended (empty = undefined)."""
    extras = [c for c in TURNOVER_COLUMNS if any(c in r.base.extras for r in records)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*ID_COLUMNS, *RAW_NAMES, *extras, *DERIVED_NAMES])
    for rec in records:
        b = rec.base
        writer.writerow(
            [b.match_id, b.stage, b.team, b.opponent, b.result]
            + [_fmt(b.raw[n]) for n in RAW_NAMES]
            + [_fmt(b.extras.get(n)) for n in extras]
            + [_fmt(rec.derived[n]) for n in DERIVED_NAMES]
        )
    return buf.getvalue()
