"""The two dataset layouts: one row per match (paired) and one per team-match (long)."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import EmptyStage, PairingViolation
from .records import AugmentedRecord, Value, check_pairing, group_matches
from .schema import INDICATOR_NAMES, STAGES

STAGE_FILTERS = (*STAGES, "all")


@dataclass(frozen=True)
class PairedRow:
    match_id: str
    winner_team: str
    loser_team: str
    winner_values: Mapping[str, Value]
    loser_values: Mapping[str, Value]


@dataclass(frozen=True)
class PairedDataset:
    stage_filter: str
    rows: tuple[PairedRow, ...]

    @property
    def n_columns(self) -> int:
        return 2 * len(INDICATOR_NAMES)

    def column(self, name: str) -> tuple[list[Value], list[Value]]:
        """(winner values, loser values) for one indicator."""
        return (
            [r.winner_values[name] for r in self.rows],
            [r.loser_values[name] for r in self.rows],
        )

    def flatten(self) -> list[tuple[str, str, dict[str, Value], str]]:
        """(match_id, team, values, result) rows, winner before loser."""
        out = []
        for r in self.rows:
            out.append((r.match_id, r.winner_team, dict(r.winner_values), "won"))
            out.append((r.match_id, r.loser_team, dict(r.loser_values), "lost"))
        return out


@dataclass(frozen=True)
class LongRow:
    match_id: str
    team: str
    values: Mapping[str, Value]
    result: str


@dataclass(frozen=True)
class LongDataset:
    stage_filter: str
    rows: tuple[LongRow, ...]
    class_attr: str = "result"

    @property
    def attributes(self) -> tuple[str, ...]:
        return INDICATOR_NAMES

    @property
    def instances(self) -> list[Mapping[str, Value]]:
        return [r.values for r in self.rows]

    @property
    def labels(self) -> list[str]:
        return [r.result for r in self.rows]

    @property
    def n_columns(self) -> int:
        return len(self.attributes) + 1

    def digest(self) -> str:
        """SHA-256 over a canonical serialisation of the rows."""
        payload = [
            [r.match_id, r.team, [r.values[a] for a in self.attributes], r.result]
            for r in self.rows
        ]
        blob = json.dumps([self.stage_filter, payload], separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()


def _select(records: Sequence[AugmentedRecord], stage_filter: str) -> dict[str, list]:
    if stage_filter not in STAGE_FILTERS:
        raise ValueError(f"stage must be one of {STAGE_FILTERS}, got {stage_filter!r}")
    check_pairing(records)
    chosen = [r for r in records if stage_filter == "all" or r.stage == stage_filter]
    return group_matches(chosen)


def _split(pair) -> tuple[AugmentedRecord, AugmentedRecord]:
    a, b = pair
    if a.result == b.result:
        raise PairingViolation(f"match {a.match_id}: no unique winner")
    return (a, b) if a.result == "won" else (b, a)


def build_paired(records: Sequence[AugmentedRecord], stage_filter: str = "all") -> PairedDataset:
    rows = []
    for match_id, pair in _select(records, stage_filter).items():
        winner, loser = _split(pair)
        rows.append(
            PairedRow(match_id, winner.team, loser.team, winner.values(), loser.values())
        )
    return PairedDataset(stage_filter, tuple(rows))


def build_long(records: Sequence[AugmentedRecord], stage_filter: str = "all") -> LongDataset:
    rows = []
    for match_id, pair in _select(records, stage_filter).items():
        for rec in _split(pair):
            rows.append(LongRow(match_id, rec.team, rec.values(), rec.result))
    return LongDataset(stage_filter, tuple(rows))


def require_nonempty(dataset) -> None:
    if not dataset.rows:
        raise EmptyStage(f"no matches for stage {dataset.stage_filter!r}")
