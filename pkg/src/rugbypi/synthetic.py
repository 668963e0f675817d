"""Seeded synthetic tournaments in the input CSV layout.

The real per-match data is not published. These generators produce
internally consistent files (mirrored team/opponent columns, possession
and territory summing to one, success rates equal to won/attempted)
for tests and demos.
"""

from __future__ import annotations

import csv
import io

import numpy as np

from .records import TeamMatchRecord
from .schema import ID_COLUMNS, RAW_NAMES, TURNOVER_COLUMNS

TEAMS = (
    "Argentina", "Australia", "Canada", "England", "Fiji", "France", "Georgia",
    "Ireland", "Italy", "Japan", "Namibia", "New Zealand", "Russia", "Samoa",
    "Scotland", "South Africa", "Tonga", "Uruguay", "USA", "Wales",
)


def _team_stats(rng: np.random.Generator, edge: float) -> dict[str, float]:
    """One side's raw indicators; ``edge`` > 0 nudges toward winning numbers."""

    def count(mean, sd, low=0):
        return float(max(low, int(round(rng.normal(mean, sd)))))

    carries = count(115 + 15 * edge, 25, 40)
    kicks = count(29, 6, 8)
    scrums = count(7, 3, 1)
    lineouts = count(12.5, 3.5, 3)
    tackles_made = count(125 - 10 * edge, 30, 40)
    tackles_missed = count(25 - 6 * edge, 9, 1)
    s = {
        "carry_metres": float(round(max(100.0, rng.normal(420 + 110 * edge, 130)))),
        "carries": carries,
        "carries_over_gainline": float(min(carries, count(40 + 8 * edge, 12, 5))),
        "passes_made": count(135 + 20 * edge, 40, 30),
        "defenders_beaten": count(25 + 6 * edge, 9, 1),
        "clean_breaks": count(10 + 3 * edge, 5, 0),
        "offloads": count(7.5 + 2 * edge, 4, 0),
        "mauls_won": count(4 + edge, 2.5, 0),
        "rucks_won": count(79 + 6 * edge, 21, 20),
        "kick_metres": float(round(max(150.0, rng.normal(650, 200)))),
        "kicks": kicks,
        "kicks_from_hand": float(min(kicks, count(23, 6, 5))),
        "scrums": scrums,
        "lineouts": lineouts,
        "penalties_conceded": count(8.5 - edge, 3, 1),
        "red_cards": float(rng.random() < 0.08),
        "yellow_cards": float(rng.random() < 0.25),
        "tackles_made": tackles_made,
        "tackles_missed": tackles_missed,
    }
    s["kicks_regathered"] = float(min(kicks, count(12 + 2 * edge, 4, 0)))
    s["kicks_to_touch"] = float(min(kicks - s["kicks_regathered"], count(11, 3.5, 0)))
    s["kicks_charged"] = float(min(kicks - s["kicks_regathered"] - s["kicks_to_touch"],
                                   count(0.6, 0.8, 0)))
    s["scrums_won"] = float(min(scrums, max(0, scrums - rng.binomial(2, 0.25 - 0.05 * edge))))
    s["scrum_success_pct"] = round(s["scrums_won"] / scrums, 3)
    s["lineouts_won"] = float(min(lineouts, max(1, lineouts - rng.binomial(3, 0.3 - 0.05 * edge))))
    s["lineout_success_pct"] = round(s["lineouts_won"] / lineouts, 3)
    s["lineout_steals"] = count(0.9 + 0.3 * edge, 1.0, 0)
    s["set_pieces_won"] = s["scrums_won"] + s["lineouts_won"]
    s["tackle_success_pct"] = round(tackles_made / (tackles_made + tackles_missed), 2)
    return s


def make_tournament(seed: int = 2019, n_group: int = 37, n_playoff: int = 8,
                    turnovers: bool = False) -> list[TeamMatchRecord]:
    rng = np.random.default_rng(seed)
    n = n_group + n_playoff
    # distinct winning margins keep the points column free of |difference| ties
    margins = rng.choice(np.arange(1, 61), size=n, replace=False)
    records = []
    for i in range(n):
        stage = "group" if i < n_group else "playoff"
        home, away = rng.choice(len(TEAMS), size=2, replace=False)
        winner, loser = TEAMS[home], TEAMS[away]
        loser_points = float(rng.integers(0, 34))
        points = {"won": loser_points + float(margins[i]), "lost": loser_points}
        shares = {}
        for col in ("possession", "possession_first_half", "territory", "territory_last_10_mins"):
            p = round(float(np.clip(rng.normal(0.53, 0.1), 0.05, 0.95)), 2)
            shares[col] = {"won": p, "lost": round(1 - p, 2)}
        match_id = f"M{i + 1:02d}"
        for team, opponent, result, edge in (
            (winner, loser, "won", 1.0),
            (loser, winner, "lost", -1.0),
        ):
            raw = _team_stats(rng, edge)
            for col, by_result in shares.items():
                raw[col] = by_result[result]
            raw["points"] = points[result]
            extras = {}
            if turnovers:
                opp, own = float(rng.integers(0, 6)), float(rng.integers(0, 6))
                extras = dict(zip(TURNOVER_COLUMNS, (opp + own, opp, own)))
            records.append(TeamMatchRecord(match_id, stage, team, opponent, result, raw, extras))
    return records


def records_to_csv(records) -> str:
    extras = [c for c in TURNOVER_COLUMNS if any(c in r.extras for r in records)]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([*ID_COLUMNS, *RAW_NAMES, *extras])
    for r in records:
        cells = [r.match_id, r.stage, r.team, r.opponent, r.result]
        for name in (*RAW_NAMES, *extras):
            v = r.raw.get(name) if name in RAW_NAMES else r.extras.get(name)
            cells.append("" if v is None else (str(int(v)) if v == int(v) else repr(v)))
        writer.writerow(cells)
    return buf.getvalue()
