"""Command-line entry point: ``rugbypi analyze|rules|derive|validate``.

Exit status is 0 on success, 1 for usage errors and 2 for data errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import logging
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .errors import DataError, RipperError, StatsError
from .layouts import STAGE_FILTERS, build_long, build_paired, require_nonempty
from .npstats import StatsConfig
from .records import augment, parse_records, validate_turnover_consistency, write_derived_csv
from .report import build_report, render_table
from .ripper import RipperConfig, fit, render_ruleset, ruleset_to_json

log = logging.getLogger("rugbypi")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
_WILCOXON_MODES = {"auto": "auto", "exact": "exact", "approx": "normal_approx"}


@dataclass(frozen=True)
class AnalysisConfig:
    input: Path
    stage: str = "all"
    stats: StatsConfig = StatsConfig()
    fmt: str = "markdown"
    ripper: RipperConfig = field(default_factory=RipperConfig)
    out: Optional[Path] = None
    rules_out: Optional[Path] = None

    def __post_init__(self):
        if self.stage not in STAGE_FILTERS:
            raise ValueError(f"stage must be one of {STAGE_FILTERS}")
        if self.fmt not in ("markdown", "csv"):
            raise ValueError("format must be markdown or csv")


def load(path: Path):
    """Parse, derive and report turnover inconsistencies as warnings."""
    text = Path(path).read_text(encoding="utf-8")
    records = parse_records(text)
    report = validate_turnover_consistency(records)
    for issue in report.issues:
        log.warning("turnover mismatch in %s (%s): %s", issue.match_id, issue.team,
                    dict(issue.observed))
    return augment(records), hashlib.sha256(text.encode()).hexdigest()


def rules_listing(records, stage: str, config: RipperConfig, input_hash: str = "") -> tuple[str, object]:
    long = build_long(records, stage)
    require_nonempty(long)
    ruleset = fit(long, config)
    errors = sum(r.misclassified for r in ruleset.all_rules())
    cfg = " ".join(f"{k}={v}" for k, v in dataclasses.asdict(config).items())
    footer = [
        "",
        "# provenance",
        f"# stage: {stage}",
        f"# seed: {ruleset.seed_used}",
        f"# config: {cfg}",
        f"# training rows: {len(long.rows)}",
        f"# misclassified: {errors}",
        f"# dataset sha256: {long.digest()}",
    ]
    if input_hash:
        footer.append(f"# input sha256: {input_hash}")
    return render_ruleset(ruleset) + "\n".join(footer) + "\n", ruleset


def statistics_table(records, stage: str, stats: StatsConfig, fmt: str) -> str:
    paired = build_paired(records, stage)
    require_nonempty(paired)
    return render_table(build_report(paired, stats).rows, fmt)


def run_analysis(config: AnalysisConfig) -> dict[str, str]:
    """Both tracks for one stage; writes files when output paths are set."""
    records, digest = load(config.input)
    table = statistics_table(records, config.stage, config.stats, config.fmt)
    listing, _ = rules_listing(records, config.stage, config.ripper, digest)
    if config.out is not None:
        Path(config.out).write_text(table, encoding="utf-8")
        rules_out = config.rules_out or Path(config.out).with_suffix(".rules.txt")
        Path(rules_out).write_text(listing, encoding="utf-8")
    return {"table": table, "rules": listing}


def run_rules(config: AnalysisConfig, json_out: Optional[Path] = None) -> str:
    records, digest = load(config.input)
    listing, ruleset = rules_listing(records, config.stage, config.ripper, digest)
    if config.out is not None:
        Path(config.out).write_text(listing, encoding="utf-8")
    if json_out is not None:
        Path(json_out).write_text(ruleset_to_json(ruleset) + "\n", encoding="utf-8")
    return listing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_ripper_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--min-no", type=int, default=2, help="minimum rows a rule must cover")
    p.add_argument("--no-pruning", action="store_true", help="disable reduced-error pruning")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--folds", type=int, default=3)
    p.add_argument("--optimizations", type=int, default=2)
    p.add_argument("--target-class", choices=("won", "lost", "auto"), default="auto")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="rugbypi", description="Winner/loser analysis of rugby performance indicators.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="statistics table (and rule listing) for one stage")
    a.add_argument("--input", required=True, type=Path)
    a.add_argument("--stage", choices=STAGE_FILTERS, default="all")
    a.add_argument("--format", choices=("md", "csv"), default="md")
    a.add_argument("--out", required=True, type=Path)
    a.add_argument("--rules-out", type=Path, help="rule listing path (default: <out>.rules.txt)")
    a.add_argument("--wilcoxon", choices=tuple(_WILCOXON_MODES), default="auto")
    a.add_argument("--no-continuity", action="store_true")
    a.add_argument("--exact-threshold", type=int, default=50)
    _add_ripper_options(a)

    r = sub.add_parser("rules", help="fit the rule learner and write the listing")
    r.add_argument("--input", required=True, type=Path)
    r.add_argument("--stage", choices=STAGE_FILTERS, default="all")
    r.add_argument("--out", required=True, type=Path)
    r.add_argument("--json-out", type=Path, help="also write the rule set as JSON")
    _add_ripper_options(r)

    d = sub.add_parser("derive", help="append the 14 derived indicators")
    d.add_argument("--input", required=True, type=Path)
    d.add_argument("--out", required=True, type=Path)

    v = sub.add_parser("validate", help="parse checks plus turnover consistency")
    v.add_argument("--input", required=True, type=Path)
    return parser


def _ripper_config(args) -> RipperConfig:
    return RipperConfig(
        min_no=args.min_no,
        use_pruning=not args.no_pruning,
        folds=args.folds,
        optimization_runs=args.optimizations,
        seed=args.seed,
        target_class=args.target_class,
    )


def _validate(path: Path) -> int:
    records = parse_records(Path(path).read_text(encoding="utf-8"))
    report = validate_turnover_consistency(records)
    matches = len({r.match_id for r in records})
    print(f"{len(records)} rows, {matches} matches: pairing and ranges ok")
    for note in report.notes:
        print(f"note: {note}")
    for issue in report.issues:
        observed = ", ".join(f"{k}={v:g}" for k, v in issue.observed.items())
        print(f"FAIL {issue.match_id} {issue.team}: {issue.rule} ({observed})")
    print("passed" if report.passed else f"{len(report.issues)} turnover issue(s)")
    return EXIT_OK if report.passed else EXIT_DATA


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        if args.command == "validate":
            return _validate(args.input)
        if args.command == "derive":
            records, _ = load(args.input)
            args.out.write_text(write_derived_csv(records), encoding="utf-8")
            return EXIT_OK
        try:
            ripper = _ripper_config(args)
        except ValueError as exc:
            parser.error(str(exc))
        if args.command == "rules":
            run_rules(AnalysisConfig(args.input, args.stage, ripper=ripper, out=args.out),
                      args.json_out)
            return EXIT_OK
        stats = StatsConfig(_WILCOXON_MODES[args.wilcoxon], not args.no_continuity,
                            args.exact_threshold)
        fmt = "markdown" if args.format == "md" else "csv"
        run_analysis(AnalysisConfig(args.input, args.stage, stats, fmt, ripper,
                                    args.out, args.rules_out))
        return EXIT_OK
    except (DataError, StatsError, RipperError, OSError) as exc:
        print(f"rugbypi: error: {exc}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
