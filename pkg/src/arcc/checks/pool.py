"""Rule pool assembly: core rules, profile rules and behavior-language rules."""

from __future__ import annotations

from typing import Optional

from arcc.checks.core import SCHEDULE_VALID, core_rules
from arcc.checks.framework import CheckReport, RulePool, run_checks
from arcc.frontend.languages import SCHEDULED, BehaviorRegistry, LanguageProfile, default_registry
from arcc.model import Architecture

CORE_RULE_IDS = ("C001", "C002", "C003", "C004", "C005", "C006", "C008", "C009", "C010", "C011", "C012")
PROFILE_RULES = {"C007": SCHEDULE_VALID}


def build_pool(registry: Optional[BehaviorRegistry] = None, profile: LanguageProfile = SCHEDULED) -> RulePool:
    """Core rules, the profile's extra rules and every registered language's rules."""
    registry = default_registry() if registry is None else registry
    pool = RulePool(core_rules(registry))
    for rule_id in sorted(profile.extra_checks):
        pool.add(PROFILE_RULES[rule_id])
    for rule in registry.rules():
        pool.add(rule)
    return pool


def default_rule_ids(profile: LanguageProfile = SCHEDULED) -> list[str]:
    return sorted(set(CORE_RULE_IDS) | set(profile.extra_checks))


def check_architecture(arch: Architecture, registry: Optional[BehaviorRegistry] = None,
                       profile: LanguageProfile = SCHEDULED) -> CheckReport:
    """Run every rule in the pool: core, profile and behavior-language rules."""
    pool = build_pool(registry, profile)
    return run_checks(arch, pool.ids(), pool)
