"""RIPPER-style decision-rule learner written from scratch."""

from .learner import (
    Examples,
    as_examples,
    candidate_conditions,
    choose_target,
    count_candidates,
    description_length_parts,
    fit,
    foil_gain,
    grow_rule,
    prune_rule,
    ruleset_description_length,
)
from .rules import (
    Condition,
    RipperConfig,
    Rule,
    RuleSet,
    evaluate_counts,
    predict,
    predict_all,
    training_accuracy,
)
from .text import (
    format_rule,
    format_threshold,
    parse_ruleset_text,
    render_ruleset,
    ruleset_from_json,
    ruleset_to_json,
)

__all__ = [
    "Condition",
    "Examples",
    "RipperConfig",
    "Rule",
    "RuleSet",
    "as_examples",
    "candidate_conditions",
    "choose_target",
    "count_candidates",
    "description_length_parts",
    "evaluate_counts",
    "fit",
    "foil_gain",
    "format_rule",
    "format_threshold",
    "grow_rule",
    "parse_ruleset_text",
    "predict",
    "predict_all",
    "prune_rule",
    "render_ruleset",
    "ruleset_description_length",
    "ruleset_from_json",
    "ruleset_to_json",
    "training_accuracy",
]
