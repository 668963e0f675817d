"""Sequential-covering rule induction in the RIPPER style.

Rules are grown greedily by FOIL information gain, optionally pruned on
a held-out third of the data by (p - n) / (p + n), and accepted one at a
time. Each accepted rule removes the rows it covers. With pruning on, a
description-length budget stops rule addition, and optimisation passes
revise each rule afterwards.
"""

from __future__ import annotations

import math
from typing import Any, Mapping, Optional, Sequence

import numpy as np

from ..errors import EmptyDataset, NotBinary
from .rules import Condition, RipperConfig, Rule, RuleSet

_OP_RANK = {"<=": 0, ">=": 1, "=": 2}


class Examples:
    """Column-oriented training data.

    Numeric columns are float arrays with NaN for absent values. A column
    holding any string becomes a nominal (object) column.
    """

    def __init__(
        self,
        attributes: Sequence[str],
        rows: Sequence[Mapping[str, Any]],
        labels: Sequence[str],
        class_attr: str = "result",
    ):
        if len(rows) != len(labels):
            raise ValueError("rows and labels differ in length")
        self.attributes = tuple(attributes)
        self.class_attr = class_attr
        self.labels = np.array([str(y) for y in labels], dtype=object)
        self.columns: dict[str, np.ndarray] = {}
        for attr in self.attributes:
            raw = [row.get(attr) for row in rows]
            if any(isinstance(v, str) for v in raw):
                self.columns[attr] = np.array(raw, dtype=object)
            else:
                self.columns[attr] = np.array(
                    [np.nan if v is None else float(v) for v in raw], dtype=float
                )

    def __len__(self) -> int:
        return len(self.labels)

    def is_nominal(self, attribute: str) -> bool:
        return self.columns[attribute].dtype == object

    def rows(self) -> list[dict[str, Any]]:
        out = []
        for i in range(len(self)):
            row = {}
            for attr, col in self.columns.items():
                v = col[i]
                row[attr] = None if (v is None or (isinstance(v, float) and math.isnan(v))) else v
            out.append(row)
        return out

    def mask(self, conditions: Sequence[Condition], idx: Optional[np.ndarray] = None) -> np.ndarray:
        idx = np.arange(len(self)) if idx is None else idx
        keep = np.ones(len(idx), dtype=bool)
        for cond in conditions:
            keep &= cond.mask(self.columns[cond.attribute][idx])
        return keep

    def subset(self, idx: np.ndarray) -> "Examples":
        sub = object.__new__(Examples)
        sub.attributes = self.attributes
        sub.class_attr = self.class_attr
        sub.labels = self.labels[idx]
        sub.columns = {a: c[idx] for a, c in self.columns.items()}
        return sub

    def without(self, attribute: str) -> "Examples":
        sub = self.subset(np.arange(len(self)))
        sub.attributes = tuple(a for a in self.attributes if a != attribute)
        del sub.columns[attribute]
        return sub


def as_examples(data) -> Examples:
    if isinstance(data, Examples):
        return data
    return Examples(
        data.attributes, data.instances, data.labels, getattr(data, "class_attr", "result")
    )


def _candidate_masks(column: np.ndarray, nominal: bool) -> tuple[list[Condition], np.ndarray, str]:
    """Conditions at every observed value, minus those matching every row.

    Returns the operators/thresholds as conditions with a blank attribute
    (filled in by the caller) and the (rows x candidates) match matrix.
    """
    if nominal:
        values = sorted({v for v in column if v is not None})
        if not values:
            return [], np.zeros((len(column), 0), dtype=bool), "nominal"
        masks = np.stack([column == v for v in values], axis=1)
        keep = ~masks.all(axis=0)
        conds = [("=", v) for v, k in zip(values, keep) if k]
        return conds, masks[:, keep], "nominal"
    defined = ~np.isnan(column)
    values = np.unique(column[defined])
    if values.size == 0:
        return [], np.zeros((len(column), 0), dtype=bool), "numeric"
    with np.errstate(invalid="ignore"):
        le = column[:, None] <= values[None, :]
        ge = column[:, None] >= values[None, :]
    keep_le = ~le.all(axis=0)
    keep_ge = ~ge.all(axis=0)
    conds = [("<=", float(v)) for v in values[keep_le]] + [(">=", float(v)) for v in values[keep_ge]]
    masks = np.concatenate([le[:, keep_le], ge[:, keep_ge]], axis=1)
    return conds, masks, "numeric"


def candidate_conditions(data, attribute: str) -> list[Condition]:
    ex = as_examples(data)
    conds, _, _ = _candidate_masks(ex.columns[attribute], ex.is_nominal(attribute))
    return [Condition(attribute, op, t) for op, t in conds]


def count_candidates(data) -> int:
    ex = as_examples(data)
    return sum(
        len(_candidate_masks(ex.columns[a], ex.is_nominal(a))[0]) for a in ex.attributes
    )


def foil_gain(p0: float, n0: float, p1: float, n1: float) -> float:
    """p1 * (log2(p1 / (p1 + n1)) - log2(p0 / (p0 + n0))); -inf when p1 == 0."""
    if p1 <= 0 or p0 <= 0:
        return -math.inf
    return p1 * (math.log2(p1 / (p1 + n1)) - math.log2(p0 / (p0 + n0)))


def _foil_gains(p0: int, n0: int, p1: np.ndarray, n1: np.ndarray) -> np.ndarray:
    gains = np.full(p1.shape, -np.inf)
    ok = p1 > 0
    if p0 > 0 and ok.any():
        base = math.log2(p0 / (p0 + n0))
        gains[ok] = p1[ok] * (np.log2(p1[ok] / (p1[ok] + n1[ok])) - base)
    return gains


def _grow(
    ex: Examples,
    idx: np.ndarray,
    pos: np.ndarray,
    target: str,
    min_no: int,
    order: Mapping[str, int],
    initial: Sequence[Condition] = (),
) -> Optional[Rule]:
    conditions = list(initial)
    idx = idx[ex.mask(conditions, idx)] if conditions else idx
    if pos[idx].sum() < min_no:
        return None
    attributes = sorted(ex.attributes, key=lambda a: order.get(a, len(order)))
    while True:
        here = pos[idx]
        p0 = int(here.sum())
        n0 = len(idx) - p0
        if n0 == 0:
            break
        best_key = None
        best = None
        for attr in attributes:
            conds, masks, _ = _candidate_masks(ex.columns[attr][idx], ex.is_nominal(attr))
            if not conds:
                continue
            p1 = (masks & here[:, None]).sum(axis=0)
            n1 = masks.sum(axis=0) - p1
            gains = _foil_gains(p0, n0, p1, n1)
            usable = np.flatnonzero((p1 >= min_no) & np.isfinite(gains) & (gains > 0))
            for j in usable:
                op, threshold = conds[j]
                key = (-gains[j], order.get(attr, len(order)), _OP_RANK[op], threshold)
                if best_key is None or key < best_key:
                    best_key = key
                    best = (Condition(attr, op, threshold), masks[:, j])
        if best is None:
            break
        conditions.append(best[0])
        idx = idx[best[1]]
    if len(conditions) == len(initial) and not initial:
        return None
    return Rule(tuple(conditions), target)


def _schema_order(ex: Examples, schema_order: Optional[Sequence[str]]) -> dict[str, int]:
    names = schema_order if schema_order is not None else ex.attributes
    return {a: i for i, a in enumerate(names)}


def grow_rule(
    grow_data,
    positive_class: str,
    min_no: int = 2,
    schema_order: Optional[Sequence[str]] = None,
    initial: Sequence[Condition] = (),
) -> Optional[Rule]:
    """Greedily add the highest-gain condition until no negatives are covered.

    Ties on gain go to the attribute earlier in ``schema_order``, then
    ``<=`` before ``>=``, then the smaller threshold. Candidates leaving
    fewer than ``min_no`` positives covered are skipped. Returns None when
    no condition at all can be added.
    """
    ex = as_examples(grow_data)
    pos = ex.labels == positive_class
    return _grow(ex, np.arange(len(ex)), pos, positive_class, min_no,
                 _schema_order(ex, schema_order), initial)


def _prune_metric(p: int, n: int) -> float:
    # an uncovered prune set carries no evidence either way
    return (p - n) / (p + n) if p + n else 0.0


def _prune(ex: Examples, idx: np.ndarray, pos: np.ndarray, rule: Rule) -> Rule:
    if len(idx) == 0 or len(rule.conditions) <= 1:
        return rule
    best_k, best_metric = None, None
    for k in range(len(rule.conditions), 0, -1):
        covered = ex.mask(rule.conditions[:k], idx)
        p = int((covered & pos[idx]).sum())
        n = int(covered.sum()) - p
        metric = _prune_metric(p, n)
        if best_metric is None or metric >= best_metric:
            best_k, best_metric = k, metric
    return Rule(rule.conditions[:best_k], rule.predicted_class)


def prune_rule(rule: Rule, prune_data, positive_class: Optional[str] = None) -> Rule:
    """Keep the prefix of ``rule`` scoring best on (p - n) / (p + n).

    Only final sequences of conditions are deleted and at least one
    condition is kept. Ties go to the shorter rule.
    """
    ex = as_examples(prune_data)
    target = positive_class or rule.predicted_class
    return _prune(ex, np.arange(len(ex)), ex.labels == target, rule)


def _log2_binomial(n: int, k: int) -> float:
    if k < 0 or k > n:
        return 0.0
    return (math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)) / math.log(2)


def description_length_parts(
    rules: Sequence[Rule],
    data,
    positive_class: Optional[str] = None,
    n_candidates: Optional[int] = None,
    theory_factor: float = 0.5,
) -> tuple[float, float]:
    """(theory bits, exception bits) for a rule list on ``data``."""
    ex = as_examples(data)
    if positive_class is None:
        if not rules:
            raise ValueError("positive_class is required for an empty rule list")
        positive_class = rules[0].predicted_class
    total = n_candidates if n_candidates is not None else count_candidates(ex)
    log_t = math.log2(max(total, 1))
    theory = 0.0
    for rule in rules:
        k = len(rule.conditions)
        if k:
            theory += theory_factor * (math.log2(k) + k * log_t)
    return theory, _exception_bits(ex, np.arange(len(ex)), ex.labels == positive_class, rules)


def _exception_bits(ex: Examples, idx: np.ndarray, pos: np.ndarray, rules: Sequence[Rule]) -> float:
    covered = np.zeros(len(idx), dtype=bool)
    for rule in rules:
        covered |= ex.mask(rule.conditions, idx)
    here = pos[idx]
    n_cov = int(covered.sum())
    false_pos = int((covered & ~here).sum())
    false_neg = int((~covered & here).sum())
    return _log2_binomial(n_cov, false_pos) + _log2_binomial(len(idx) - n_cov, false_neg)


def ruleset_description_length(rules, data, positive_class=None, n_candidates=None,
                               theory_factor: float = 0.5) -> float:
    theory, exceptions = description_length_parts(
        rules, data, positive_class, n_candidates, theory_factor
    )
    return theory + exceptions


class _Fitter:
    def __init__(self, ex: Examples, target: str, config: RipperConfig):
        self.ex = ex
        self.target = target
        self.cfg = config
        self.pos = ex.labels == target
        self.order = _schema_order(ex, None)
        self.rng = np.random.default_rng(config.seed)
        self.all_idx = np.arange(len(ex))
        self.n_candidates = count_candidates(ex)

    def dl(self, rules: Sequence[Rule]) -> float:
        log_t = math.log2(max(self.n_candidates, 1))
        theory = sum(
            self.cfg.theory_factor * (math.log2(len(r.conditions)) + len(r.conditions) * log_t)
            for r in rules
            if r.conditions
        )
        return theory + _exception_bits(self.ex, self.all_idx, self.pos, rules)

    def split(self, idx: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        grow, prune = [], []
        labels = self.ex.labels[idx]
        for cls in sorted(set(labels)):
            members = idx[labels == cls]
            members = members[self.rng.permutation(len(members))]
            held = len(members) // self.cfg.folds
            grow.append(members[: len(members) - held])
            prune.append(members[len(members) - held :])
        return np.sort(np.concatenate(grow)), np.sort(np.concatenate(prune))

    def grow(self, idx, initial=()) -> Optional[Rule]:
        return _grow(self.ex, idx, self.pos, self.target, self.cfg.min_no, self.order, initial)

    def grow_and_prune(self, idx, initial=()) -> Optional[Rule]:
        grow_idx, prune_idx = self.split(idx)
        rule = self.grow(grow_idx, initial)
        if rule is None:
            return None
        return _prune(self.ex, prune_idx, self.pos, rule)

    def uncovered(self, rules: Sequence[Rule], idx: Optional[np.ndarray] = None) -> np.ndarray:
        idx = self.all_idx if idx is None else idx
        for rule in rules:
            idx = idx[~self.ex.mask(rule.conditions, idx)]
        return idx

    def cover(self, rules: list[Rule], residual: np.ndarray) -> list[Rule]:
        best_dl = self.dl(rules)
        while self.pos[residual].sum() > 0:
            if not self.cfg.use_pruning:
                rule = self.grow(residual)
                if rule is None:
                    break
                rules.append(rule)
                residual = self.uncovered([rule], residual)
                continue
            rule = self.grow_and_prune(residual)
            if rule is None:
                break
            hit = self.ex.mask(rule.conditions, residual)
            p = int((hit & self.pos[residual]).sum())
            n = int(hit.sum()) - p
            if p < self.cfg.min_no or n / (p + n) >= 0.5:
                break
            dl = self.dl([*rules, rule])
            if dl > best_dl + self.cfg.dl_slack:
                break
            best_dl = min(best_dl, dl)
            rules.append(rule)
            residual = residual[~hit]
        return rules

    def optimise(self, rules: list[Rule]) -> list[Rule]:
        for i in range(len(rules)):
            residual = self.uncovered(rules[:i])
            variants = [rules[i]]
            for initial in ((), rules[i].conditions):
                candidate = self.grow_and_prune(residual, initial)
                if candidate is not None:
                    variants.append(candidate)
            scored = [(self.dl([*rules[:i], v, *rules[i + 1 :]]), k) for k, v in enumerate(variants)]
            rules[i] = variants[min(scored)[1]]
        return self.cover(rules, self.uncovered(rules))

    def run(self) -> list[Rule]:
        rules = self.cover([], self.all_idx)
        if self.cfg.use_pruning:
            for _ in range(self.cfg.optimization_runs):
                rules = self.optimise(rules)
        return rules


def choose_target(labels: Sequence[str], target_class: str = "auto") -> str:
    """Minority class; on a tie, the class whose first row appears later."""
    classes = list(dict.fromkeys(labels))
    if target_class != "auto":
        return target_class
    counts = {c: list(labels).count(c) for c in classes}
    return min(classes, key=lambda c: (counts[c], -classes.index(c)))


def fit(data, config: RipperConfig = RipperConfig()) -> RuleSet:
    ex = as_examples(data)
    if len(ex) == 0:
        raise EmptyDataset("no training rows")
    if not ex.attributes:
        raise EmptyDataset("no attributes")
    classes = list(dict.fromkeys(ex.labels.tolist()))
    if len(classes) > 2:
        raise NotBinary(f"expected two classes, found {len(classes)}: {classes}")
    if config.target_class != "auto" and config.target_class not in classes:
        if len(classes) == 2:
            raise NotBinary(f"target class {config.target_class!r} not among {classes}")
    if len(classes) == 1:
        rules: list[Rule] = []
        target = config.target_class if config.target_class != "auto" else classes[0]
        default = classes[0]
    else:
        target = choose_target(ex.labels.tolist(), config.target_class)
        default = next(c for c in classes if c != target)
        rules = _Fitter(ex, target, config).run()
    return _with_counts(rules, default, ex, config)


def _with_counts(rules: Sequence[Rule], default: str, ex: Examples, config: RipperConfig) -> RuleSet:
    residual = np.arange(len(ex))
    counted = []
    for rule in rules:
        hit = ex.mask(rule.conditions, residual)
        covered = residual[hit]
        wrong = int((ex.labels[covered] != rule.predicted_class).sum())
        counted.append(Rule(rule.conditions, rule.predicted_class, len(covered), wrong))
        residual = residual[~hit]
    wrong = int((ex.labels[residual] != default).sum())
    return RuleSet(tuple(counted), default, len(residual), wrong, config, config.seed, ex.class_attr)
