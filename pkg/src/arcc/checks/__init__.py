"""Well-formedness checking: named rules, the rule pool and the runner."""

from arcc.checks.framework import CheckReport, CheckRule, RulePool, UnknownRule, run_checks
from arcc.checks.schedule import check_no_instant_cycles, check_schedule_valid

__all__ = ["CheckReport", "CheckRule", "RulePool", "UnknownRule", "check_no_instant_cycles",
           "check_schedule_valid", "run_checks"]
