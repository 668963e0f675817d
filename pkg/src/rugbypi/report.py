"""Winner-vs-loser comparison tables in markdown or CSV."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Optional, Sequence

from .layouts import PairedDataset
from .npstats import DescriptiveStats, PiTestRow, StatsConfig, analyze_indicator
from .npstats.effect import EffectSize, effect_label
from .schema import INDICATOR_NAMES

STAT_FIELDS = ("mean", "median", "min", "max", "stddev")
MARKDOWN_HEADER = (
    "indicator",
    "W mean", "W median", "W min", "W max", "W sd",
    "L mean", "L median", "L min", "L max", "L sd",
    "p", "r", "sign",
)
CSV_HEADER = (
    "indicator",
    "n_pairs",
    *(f"winner_{f}" for f in STAT_FIELDS),
    *(f"loser_{f}" for f in STAT_FIELDS),
    "p",
    "stars",
    "r",
    "sign",
)


@dataclass(frozen=True)
class ReportTable:
    stage: str
    rows: tuple[PiTestRow, ...]


def sort_key(row: PiTestRow):
    """Descending r at display precision, then ascending p, then name."""
    r = round(row.effect.r, 2) if row.effect is not None else -math.inf
    p = row.p_two_sided if row.p_two_sided is not None else math.inf
    return (-r, p, row.name)


def build_report(paired: PairedDataset, config: StatsConfig = StatsConfig(),
                 indicators: Sequence[str] = INDICATOR_NAMES) -> ReportTable:
    rows = []
    for name in indicators:
        winners, losers = paired.column(name)
        rows.append(analyze_indicator(name, winners, losers, config))
    return ReportTable(paired.stage_filter, tuple(sorted(rows, key=sort_key)))


def _fixed(value: Optional[float], places: int) -> str:
    return "-" if value is None else f"{value:.{places}f}"


def _markdown_cells(row: PiTestRow) -> list[str]:
    cells = [row.name]
    for side in (row.winner, row.loser):
        cells += [_fixed(getattr(side, f) if side else None, 3) for f in STAT_FIELDS]
    cells.append("-" if row.p_two_sided is None else f"{row.p_two_sided:.4f}{row.stars}")
    cells.append("-" if row.effect is None else row.effect.display)
    cells.append(row.median_sign or "-")
    return cells


def _full(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def render_table(rows: Sequence[PiTestRow], fmt: str = "markdown") -> str:
    if fmt in ("md", "markdown"):
        lines = ["| " + " | ".join(MARKDOWN_HEADER) + " |",
                 "|" + "|".join(["---"] + ["---:"] * 13) + "|"]
        lines += ["| " + " | ".join(_markdown_cells(r)) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in rows:
            stats = []
            for side in (r.winner, r.loser):
                stats += [_full(getattr(side, f) if side else None) for f in STAT_FIELDS]
            writer.writerow([
                r.name, r.n_pairs, *stats, _full(r.p_two_sided), r.stars,
                _full(r.effect.r if r.effect else None), r.median_sign,
            ])
        return buf.getvalue()
    raise ValueError(f"unknown table format {fmt!r}")


def _opt(text: str) -> Optional[float]:
    return None if text == "" else float(text)


def parse_table_csv(text: str) -> list[PiTestRow]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        n = int(rec["n_pairs"])
        sides = []
        for prefix in ("winner", "loser"):
            vals = [_opt(rec[f"{prefix}_{f}"]) for f in STAT_FIELDS]
            sides.append(None if vals[0] is None else DescriptiveStats(n, *vals))
        r = _opt(rec["r"])
        rows.append(PiTestRow(
            rec["indicator"], n, sides[0], sides[1], _opt(rec["p"]), rec["stars"],
            None if r is None else EffectSize(r, effect_label(r)), rec["sign"],
        ))
    return rows
