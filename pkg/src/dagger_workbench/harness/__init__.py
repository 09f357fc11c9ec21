"""
Verification harness: suite registry, runner and reports.
"""

from dagger_workbench.harness.report import (
    Expectation,
    Report,
    SuiteResult,
    Verdict,
    emit_report,
    stable_summary,
)
from dagger_workbench.harness.runner import run_suite, run_suites, suite_rng
from dagger_workbench.harness.suites import SUITES, Suite, SuiteContext

__all__ = [
    "SUITES",
    "Expectation",
    "Report",
    "Suite",
    "SuiteContext",
    "SuiteResult",
    "Verdict",
    "emit_report",
    "stable_summary",
    "run_suite",
    "run_suites",
    "suite_rng",
]
