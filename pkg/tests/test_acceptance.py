"""Acceptance gate: one test per criterion, summarised as PASS/FAIL lines."""

import random
import time

import numpy as np
import pytest

from rugbypi.cli import main
from rugbypi.layouts import build_long, build_paired
from rugbypi.npstats import (
    analyze_indicator,
    effect_label,
    exact_signed_rank_p,
    shapiro_wilk,
    significance_stars,
    wilcoxon_signed_rank,
)
from rugbypi.records import TeamMatchRecord, derive_indicators
from rugbypi.ripper import Condition, RipperConfig, fit, render_ruleset, training_accuracy
from rugbypi.schema import RAW_NAMES

from .oracles import brute_force_signed_rank_p, rank_sum_positive
from .ripper_fixtures import one_condition, planted, two_conditions
from .test_ripper_text import PLAYOFF, group_stage_rules
from .test_shapiro import REFERENCE

pytestmark = pytest.mark.acceptance


def test_c01_forced_points_row_group_stage():
    rng = random.Random(37)
    for _ in range(20):
        diffs = rng.sample(range(1, 60), 37)
        loser = [rng.randint(0, 30) for _ in range(37)]
        winner = [l + d for l, d in zip(loser, diffs)]
        start = time.perf_counter()
        res = wilcoxon_signed_rank(winner, loser, mode="normal_approx")
        row = analyze_indicator("points", winner, loser)
        elapsed = time.perf_counter() - start
        assert res.z == pytest.approx(5.2953, abs=1e-4)
        assert res.p_two_sided < 1e-6
        assert f"{res.p_two_sided:.4f}" == "0.0000"
        assert row.effect.display == "0.87"
        assert elapsed < 0.010


def test_c02_forced_points_row_playoff():
    diffs = [4, 7, 7, 9, 12, 15, 20, 26]
    assert len(set(diffs)) == 7
    loser = [10, 3, 17, 0, 12, 5, 9, 14]
    row = analyze_indicator("points", [l + d for l, d in zip(loser, diffs)], loser)
    assert row.test.method == "normal_approx"
    assert row.p_two_sided == pytest.approx(0.0141, abs=5e-4)
    assert row.effect.display == "0.87"


def test_c03_exact_oracle():
    start = time.perf_counter()
    for n in range(1, 13):
        for w in range(n * (n + 1) // 2 + 1):
            assert exact_signed_rank_p(w, n) == pytest.approx(brute_force_signed_rank_p(w, n),
                                                              rel=1e-12, abs=1e-15)
    rng = random.Random(200)
    for _ in range(200):
        n = rng.randint(1, 12)
        x = [rng.uniform(0, 100) for _ in range(n)]
        y = [rng.uniform(0, 100) for _ in range(n)]
        res = wilcoxon_signed_rank(x, y, mode="exact")
        w = rank_sum_positive([a - b for a, b in zip(x, y)])
        assert res.w_statistic == w
        assert res.p_two_sided == pytest.approx(brute_force_signed_rank_p(w, n), rel=1e-12, abs=1e-15)
    assert time.perf_counter() - start < 5


def test_c04_null_calibration():
    rng = np.random.default_rng(2019)
    start = time.perf_counter()
    data = rng.normal(size=(10_000, 2, 20))
    rejects = sum(
        wilcoxon_signed_rank(x, y, mode="exact").p_two_sided <= 0.05 for x, y in data
    )
    elapsed = time.perf_counter() - start
    rate = rejects / 10_000
    print(f"null rejection rate {rate:.4f} in {elapsed:.1f}s")
    assert 0.04 <= rate <= 0.06
    assert elapsed < 30


def test_c05_shapiro_wilk_oracle():
    assert len(REFERENCE["cases"]) == 20
    assert {c["n"] for c in REFERENCE["cases"]} == {5, 10, 20, 37, 50}
    for case in REFERENCE["cases"]:
        w, p = shapiro_wilk(case["sample"])
        assert abs(w - case["w"]) <= 1e-3 and abs(p - case["p"]) <= 1e-3


def _record(team, opponent, **raw):
    values = {name: 10.0 for name in RAW_NAMES}
    values.update(raw)
    return TeamMatchRecord("M1", "group", team, opponent, "won" if team == "A" else "lost", values)


def test_c06_derived_identities():
    rng = random.Random(6)
    for _ in range(1000):
        carry, kick = float(rng.randint(0, 2500)), float(rng.randint(0, 2500))
        own_lineouts, their_lineouts = rng.randint(0, 25), rng.randint(1, 25)
        steals = rng.randint(0, their_lineouts)
        mine = _record("A", "B", carry_metres=carry, kick_metres=kick,
                       lineouts=float(own_lineouts), lineout_steals=float(steals))
        theirs = _record("B", "A", lineouts=float(their_lineouts))
        d = derive_indicators(mine, theirs).derived
        assert d["kick_metres_plus_carry_metres"] == kick + carry
        if kick + carry:
            assert abs(d["pct_metres_from_carries"] + d["pct_metres_from_kicks"] - 1) <= 1e-12
        assert d["lineout_steal_pct"] == steals / their_lineouts
    # mean steals over mean opponent lineouts gives the same ratio direction
    assert 1.243 / 12.541 == pytest.approx(0.099, abs=5e-4)


def test_c07_dataset_shapes(augmented):
    paired = build_paired(augmented, "all")
    long = build_long(augmented, "all")
    assert (len(paired.rows), paired.n_columns) == (45, 96)
    assert (len(long.rows), long.n_columns) == (90, 49)
    assert len(build_paired(augmented, "group").rows) == 37
    assert len(build_paired(augmented, "playoff").rows) == 8


def test_c08_ripper_recovery():
    cfg = RipperConfig(min_no=1, use_pruning=False, target_class="lost")
    expected = {
        one_condition: {Condition("a", "<=", 4.0)},
        two_conditions: {Condition("a", "<=", 4.0), Condition("b", ">=", 4.0)},
    }
    start = time.perf_counter()
    for concept, conds in expected.items():
        ex = planted(concept, seed=0)
        assert len(ex) == 90
        rs = fit(ex, cfg)
        assert len(rs.rules) == 1 and set(rs.rules[0].conditions) == conds
        assert training_accuracy(rs, ex.rows(), ex.labels) == 1.0
        assert sum(r.covered for r in rs.all_rules()) == 90
    assert time.perf_counter() - start < 1


def test_c09_rendering_fixture():
    lines = render_ruleset(group_stage_rules()).splitlines()
    assert lines[3] == ("(carry_metres <= 343) and (lineout_success_% <= 0.933) "
                        "=> result=lost (26.0/0.0)")
    assert sum(r.covered for r in group_stage_rules().all_rules()) == 74
    assert render_ruleset(PLAYOFF).splitlines()[-1] == "Number of Rules : 3"


def test_c10_stars_and_labels():
    assert [significance_stars(p) for p in (0.0099, 0.0107, 0.0623, 0.1134)] == ["***", "**", "*", ""]
    assert [effect_label(r) for r in (0.2, 0.5, 0.8, 1.2, 2.0)] == [
        "small", "medium", "large", "very large", "huge"]


def test_c11_end_to_end(tmp_path, tournament_csv):
    src = tmp_path / "rwc.csv"
    src.write_text(tournament_csv)

    def pipeline(tag):
        outdir = tmp_path / tag
        outdir.mkdir()
        assert main(["validate", "--input", str(src)]) == 0
        assert main(["derive", "--input", str(src), "--out", str(outdir / "derived.csv")]) == 0
        for stage in ("group", "playoff"):
            assert main(["analyze", "--input", str(src), "--stage", stage, "--seed", "1",
                         "--out", str(outdir / f"{stage}.md")]) == 0
        return {p.name: p.read_bytes() for p in sorted(outdir.iterdir())}

    start = time.perf_counter()
    first = pipeline("a")
    elapsed = time.perf_counter() - start
    second = pipeline("b")
    assert len(first) == 5
    assert first == second
    assert elapsed < 1
