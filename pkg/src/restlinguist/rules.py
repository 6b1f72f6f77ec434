"""Rule identifiers and verdicts shared across the package."""

from __future__ import annotations

import enum

__all__ = ["RuleId", "Verdict"]


class RuleId(enum.Enum):
    """The nine lint rules, named after the poor practice each one detects.

    A PATTERN verdict for a rule means the paired good practice holds
    (e.g. amorphous_uri / Pattern means the URI is tidy).
    """

    AMORPHOUS_URI = "amorphous_uri"
    CONTEXTLESS_RESOURCE_NAMES = "contextless_resource_names"
    CRUDY_URI = "crudy_uri"
    NON_HIERARCHICAL_NODES = "non_hierarchical_nodes"
    PLURALISED_NODES = "pluralised_nodes"
    NON_PERTINENT_DOCUMENTATION = "non_pertinent_documentation"
    INCONSISTENT_DOCUMENTATION = "inconsistent_documentation"
    UNVERSIONED_URI = "unversioned_uri"
    NON_STANDARD_URI = "non_standard_uri"

    @classmethod
    def parse(cls, value: str) -> "RuleId":
        for rule in cls:
            if rule.value == value:
                return rule
        valid = ", ".join(r.value for r in cls)
        raise ValueError(f"unknown rule id {value!r} (valid rule ids: {valid})")


class Verdict(enum.Enum):
    PATTERN = "pattern"
    ANTIPATTERN = "antipattern"

    @classmethod
    def parse(cls, value: str) -> "Verdict":
        for verdict in cls:
            if verdict.value == value.lower():
                return verdict
        raise ValueError(f"unknown verdict {value!r} (expected 'pattern' or 'antipattern')")
