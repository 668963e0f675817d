"""Conditions, rules and ordered rule sets (decision lists)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping, Union

import numpy as np

Threshold = Union[float, str]
OPERATORS = ("<=", ">=", "=")


def _missing(value: Any) -> bool:
    return value is None or (isinstance(value, float) and math.isnan(value))


@dataclass(frozen=True)
class Condition:
    attribute: str
    operator: str
    threshold: Threshold

    def __post_init__(self):
        if self.operator not in OPERATORS:
            raise ValueError(f"unknown operator {self.operator!r}")

    def holds(self, value: Any) -> bool:
        """Absent values never satisfy a condition."""
        if _missing(value):
            return False
        if self.operator == "=":
            return value == self.threshold
        if self.operator == "<=":
            return value <= self.threshold
        return value >= self.threshold

    def mask(self, column: np.ndarray) -> np.ndarray:
        if self.operator == "=":
            return column == self.threshold
        with np.errstate(invalid="ignore"):
            if self.operator == "<=":
                return column <= self.threshold
            return column >= self.threshold


@dataclass(frozen=True)
class Rule:
    conditions: tuple[Condition, ...]
    predicted_class: str
    covered: int = 0
    misclassified: int = 0

    def matches(self, record: Mapping[str, Any]) -> bool:
        return all(c.holds(record.get(c.attribute)) for c in self.conditions)

    @property
    def attributes(self) -> set[str]:
        return {c.attribute for c in self.conditions}


@dataclass(frozen=True)
class RipperConfig:
    min_no: int = 2
    use_pruning: bool = True
    folds: int = 3
    optimization_runs: int = 2
    seed: int = 1
    target_class: str = "auto"
    dl_slack: float = 64.0
    theory_factor: float = 0.5

    def __post_init__(self):
        if self.min_no < 1:
            raise ValueError("min_no must be at least 1")
        if self.use_pruning and self.folds < 2:
            raise ValueError("folds must be at least 2 when pruning is enabled")
        if self.optimization_runs < 0:
            raise ValueError("optimization_runs must be non-negative")


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]
    default_class: str
    default_covered: int = 0
    default_misclassified: int = 0
    config_used: RipperConfig = field(default_factory=RipperConfig)
    seed_used: int = 1
    class_attr: str = "result"

    @property
    def default_rule(self) -> Rule:
        return Rule((), self.default_class, self.default_covered, self.default_misclassified)

    def all_rules(self) -> tuple[Rule, ...]:
        return (*self.rules, self.default_rule)

    @property
    def attributes(self) -> set[str]:
        return set().union(*(r.attributes for r in self.rules)) if self.rules else set()


def predict(ruleset: RuleSet, record: Mapping[str, Any]) -> tuple[str, int]:
    """First matching rule wins; the default fires with index ``len(rules)``."""
    for i, rule in enumerate(ruleset.rules):
        if rule.matches(record):
            return rule.predicted_class, i
    return ruleset.default_class, len(ruleset.rules)


def predict_all(ruleset: RuleSet, records) -> list[str]:
    return [predict(ruleset, r)[0] for r in records]


def evaluate_counts(ruleset: RuleSet, records, labels) -> RuleSet:
    """Recompute covered/misclassified counts sequentially on residual data."""
    remaining = list(zip(records, labels))
    counted = []
    for rule in ruleset.rules:
        hit = [(r, y) for r, y in remaining if rule.matches(r)]
        remaining = [(r, y) for r, y in remaining if not rule.matches(r)]
        wrong = sum(1 for _, y in hit if y != rule.predicted_class)
        counted.append(Rule(rule.conditions, rule.predicted_class, len(hit), wrong))
    wrong = sum(1 for _, y in remaining if y != ruleset.default_class)
    return RuleSet(
        tuple(counted),
        ruleset.default_class,
        len(remaining),
        wrong,
        ruleset.config_used,
        ruleset.seed_used,
        ruleset.class_attr,
    )


def training_accuracy(ruleset: RuleSet, records, labels) -> float:
    labels = list(labels)
    hits = sum(p == y for p, y in zip(predict_all(ruleset, records), labels))
    return hits / len(labels) if labels else 1.0
