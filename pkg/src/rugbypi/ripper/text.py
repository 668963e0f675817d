"""Rule listings in the JRip text layout, plus a JSON export.

    JRIP rules:
    ===========

    (carry_metres <= 343) and (lineout_success_% <= 0.933) => result=lost (26.0/0.0)
    => result=won (37.0/0.0)

    Number of Rules : 2
"""

from __future__ import annotations

import dataclasses
import json
import re
from typing import Callable, Optional

from ..schema import display_name, schema_name
from .rules import Condition, RipperConfig, Rule, RuleSet

HEADER = "JRIP rules:"
RULER = "=" * 11


def format_threshold(value) -> str:
    if isinstance(value, str):
        return value
    text = f"{round(float(value), 6):.6f}".rstrip("0").rstrip(".")
    return "0" if text in ("", "-0") else text


def format_condition(cond: Condition, names: Callable[[str], str] = display_name) -> str:
    return f"({names(cond.attribute)} {cond.operator} {format_threshold(cond.threshold)})"


def format_rule(rule: Rule, class_attr: str = "result",
                names: Callable[[str], str] = display_name) -> str:
    body = " and ".join(format_condition(c, names) for c in rule.conditions)
    head = f"{body} " if body else ""
    return (
        f"{head}=> {class_attr}={rule.predicted_class} "
        f"({rule.covered}.0/{rule.misclassified}.0)"
    )


def render_ruleset(ruleset: RuleSet, names: Callable[[str], str] = display_name) -> str:
    lines = [HEADER, RULER, ""]
    lines += [format_rule(r, ruleset.class_attr, names) for r in ruleset.all_rules()]
    lines += ["", f"Number of Rules : {len(ruleset.rules) + 1}"]
    return "\n".join(lines) + "\n"


_RULE_RE = re.compile(r"^(?P<body>.*?)\s*=>\s*(?P<attr>[^=\s]+)=(?P<cls>\S+)\s+"
                      r"\((?P<cov>[\d.]+)/(?P<mis>[\d.]+)\)\s*$")
_COND_RE = re.compile(r"\((?P<attr>\S+) (?P<op><=|>=|=) (?P<val>[^)]*)\)")


def _threshold(text: str):
    try:
        return float(text)
    except ValueError:
        return text


def parse_ruleset_text(text: str, names: Callable[[str], str] = schema_name) -> RuleSet:
    """Read a rule listing back; tolerates any ruler length and blank lines."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0] != HEADER:
        raise ValueError("rule listing must start with 'JRIP rules:'")
    if len(lines) < 2 or not re.fullmatch(r"=+", lines[1]):
        raise ValueError("missing '=' ruler under the header")
    parsed = []
    class_attr = "result"
    declared = None
    for line in lines[2:]:
        if line.startswith("Number of Rules"):
            declared = int(line.split(":")[1])
            break
        m = _RULE_RE.match(line)
        if not m:
            raise ValueError(f"unparseable rule line: {line!r}")
        conds = tuple(
            Condition(names(c["attr"]), c["op"], _threshold(c["val"]))
            for c in _COND_RE.finditer(m["body"])
        )
        class_attr = m["attr"]
        parsed.append(Rule(conds, m["cls"], int(float(m["cov"])), int(float(m["mis"]))))
    if not parsed or parsed[-1].conditions:
        raise ValueError("rule listing must end with a default rule")
    if declared is not None and declared != len(parsed):
        raise ValueError(f"listing declares {declared} rules but holds {len(parsed)}")
    default = parsed[-1]
    return RuleSet(tuple(parsed[:-1]), default.predicted_class, default.covered,
                   default.misclassified, class_attr=class_attr)


def ruleset_to_dict(ruleset: RuleSet) -> dict:
    return {
        "class_attr": ruleset.class_attr,
        "seed": ruleset.seed_used,
        "config": dataclasses.asdict(ruleset.config_used),
        "rules": [
            {
                "conditions": [
                    {"attribute": c.attribute, "operator": c.operator, "threshold": c.threshold}
                    for c in r.conditions
                ],
                "class": r.predicted_class,
                "covered": r.covered,
                "misclassified": r.misclassified,
            }
            for r in ruleset.rules
        ],
        "default": {
            "class": ruleset.default_class,
            "covered": ruleset.default_covered,
            "misclassified": ruleset.default_misclassified,
        },
    }


def ruleset_to_json(ruleset: RuleSet, indent: Optional[int] = 2) -> str:
    return json.dumps(ruleset_to_dict(ruleset), indent=indent, sort_keys=True)


def ruleset_from_json(text: str) -> RuleSet:
    doc = json.loads(text)
    rules = tuple(
        Rule(
            tuple(Condition(c["attribute"], c["operator"], c["threshold"]) for c in r["conditions"]),
            r["class"],
            r["covered"],
            r["misclassified"],
        )
        for r in doc["rules"]
    )
    d = doc["default"]
    return RuleSet(rules, d["class"], d["covered"], d["misclassified"],
                   RipperConfig(**doc["config"]), doc["seed"], doc["class_attr"])
