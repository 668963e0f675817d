"""Indicator schema: the 34 collected indicators plus 14 derived ones.

Schema order is significant. It fixes the column order of every dataset
layout and is the first tie-break key when rule growth compares
conditions with equal gain.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

GAME_AREAS = (
    "attack",
    "breakdown",
    "kicking",
    "set_piece",
    "discipline",
    "defence",
    "attack_kicking",
)

COUNT = "count"
METRES = "metres"
FRACTION = "fraction"
# per-carry / per-kick quotients that are not bounded by 1
RATIO = "ratio"


@dataclass(frozen=True)
class Indicator:
    name: str
    game_area: str
    kind: str  # "raw" | "derived"
    units: str


def _raw(name: str, area: str, units: str = COUNT) -> Indicator:
    return Indicator(name, area, "raw", units)


def _derived(name: str, area: str, units: str = RATIO) -> Indicator:
    return Indicator(name, area, "derived", units)


RAW_INDICATORS: tuple[Indicator, ...] = (
    _raw("points", "attack"),
    _raw("territory_last_10_mins", "attack", FRACTION),
    _raw("territory", "attack", FRACTION),
    _raw("possession", "attack", FRACTION),
    _raw("possession_first_half", "attack", FRACTION),
    _raw("carry_metres", "attack", METRES),
    _raw("carries", "attack"),
    _raw("carries_over_gainline", "attack"),
    _raw("passes_made", "attack"),
    _raw("defenders_beaten", "attack"),
    _raw("clean_breaks", "attack"),
    _raw("offloads", "attack"),
    _raw("mauls_won", "breakdown"),
    _raw("rucks_won", "breakdown"),
    _raw("kicks_from_hand", "kicking"),
    _raw("kick_metres", "kicking", METRES),
    _raw("kicks_regathered", "kicking"),
    _raw("kicks_to_touch", "kicking"),
    _raw("kicks_charged", "kicking"),
    _raw("kicks", "kicking"),
    _raw("set_pieces_won", "set_piece"),
    _raw("scrums", "set_piece"),
    _raw("scrums_won", "set_piece"),
    _raw("scrum_success_pct", "set_piece", FRACTION),
    _raw("lineouts", "set_piece"),
    _raw("lineouts_won", "set_piece"),
    _raw("lineout_success_pct", "set_piece", FRACTION),
    _raw("lineout_steals", "set_piece"),
    _raw("penalties_conceded", "discipline"),
    _raw("red_cards", "discipline"),
    _raw("yellow_cards", "discipline"),
    _raw("tackles_made", "defence"),
    _raw("tackles_missed", "defence"),
    _raw("tackle_success_pct", "defence", FRACTION),
)

DERIVED_INDICATORS: tuple[Indicator, ...] = (
    _derived("carry_metres_per_carry", "attack", METRES),
    _derived("pct_carries_over_gainline", "attack", FRACTION),
    _derived("defenders_beaten_per_carry", "attack"),
    _derived("clean_breaks_per_carry", "attack"),
    _derived("offloads_per_carry", "attack"),
    _derived("kick_metres_per_kick", "kicking", METRES),
    _derived("kicks_regathered_per_kick", "kicking"),
    _derived("kicks_to_touch_per_kick", "kicking"),
    _derived("kicks_charged_per_kick", "kicking"),
    _derived("lineout_steal_pct", "set_piece"),
    _derived("pass_to_carry_ratio", "attack"),
    _derived("kick_metres_plus_carry_metres", "attack_kicking", METRES),
    _derived("pct_metres_from_carries", "attack_kicking", FRACTION),
    _derived("pct_metres_from_kicks", "attack_kicking", FRACTION),
)

# Optional extra columns. Accepted on input, never part of the analysed schema.
TURNOVER_COLUMNS = ("turnovers_won", "turnovers_won_opp_half", "turnovers_won_own_half")

ID_COLUMNS = ("match_id", "stage", "team", "opponent", "result")

STAGES = ("group", "playoff")
RESULTS = ("won", "lost")

# Names as they appear in rule listings.
_DISPLAY_OVERRIDES = {
    "pct_carries_over_gainline": "percentage_of_carries_over_gainline",
    "defenders_beaten_per_carry": "defenders_beaten_per_ball_carry",
    "clean_breaks_per_carry": "clean_breaks_per_ball_carry",
    "offloads_per_carry": "offloads_per_ball_carry",
    "pass_to_carry_ratio": "pass_to_ball_carry_ratio",
    "pct_metres_from_carries": "percentage_of_metres_from_carries",
    "pct_metres_from_kicks": "percentage_of_metres_from_kicks",
}


class IndicatorSchema:
    """Ordered, name-unique collection of indicators."""

    def __init__(self, entries):
        self.entries = tuple(entries)
        self._index = {e.name: i for i, e in enumerate(self.entries)}
        if len(self._index) != len(self.entries):
            raise ValueError("indicator names must be unique")

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[Indicator]:
        return iter(self.entries)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __getitem__(self, name: str) -> Indicator:
        return self.entries[self._index[name]]

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries)

    def position(self, name: str) -> int:
        return self._index[name]

    def raw_names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries if e.kind == "raw")

    def derived_names(self) -> tuple[str, ...]:
        return tuple(e.name for e in self.entries if e.kind == "derived")


SCHEMA = IndicatorSchema(RAW_INDICATORS + DERIVED_INDICATORS)
RAW_NAMES = SCHEMA.raw_names()
DERIVED_NAMES = SCHEMA.derived_names()
INDICATOR_NAMES = SCHEMA.names
FRACTION_NAMES = frozenset(e.name for e in RAW_INDICATORS if e.units == FRACTION)
COUNT_NAMES = frozenset(e.name for e in RAW_INDICATORS if e.units == COUNT)


def display_name(name: str) -> str:
    """Attribute token used in rule text, e.g. ``lineout_success_%``."""
    name = _DISPLAY_OVERRIDES.get(name, name)
    if name.endswith("_pct"):
        name = name[: -len("_pct")] + "_%"
    return name


def schema_name(display: str) -> str:
    """Inverse of :func:`display_name`; unknown tokens pass through."""
    for name in INDICATOR_NAMES:
        if display_name(name) == display:
            return name
    return display
