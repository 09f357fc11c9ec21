"""
Verification reports.

A report echoes its config, carries provenance, and lists one result per
suite with the worst residual and the first counterexample. JSON output is
stable-keyed so identical runs produce identical bytes.
"""

import json
import platform
from enum import StrEnum
from typing import Any, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from dagger_workbench.category import ModelId, Mor
from dagger_workbench.core.config import SuiteConfig, settings
from dagger_workbench.models.fdhilb import GroundField, format_matrix
from dagger_workbench.models.finrel import as_bool_grid

ReportFormat = Literal["text", "json", "summary"]


class Expectation(StrEnum):
    """What a suite is expected to show on a model."""

    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "n/a"


class Verdict(StrEnum):
    """Outcome of one suite relative to its expectation."""

    PASS = "pass"
    EXPECTED_FAIL = "fail (by design)"
    FAIL = "fail"
    UNEXPECTED_PASS = "pass (unexpected)"
    NOT_APPLICABLE = "not applicable"
    ERROR = "error"

    @property
    def as_expected(self) -> bool:
        return self in (Verdict.PASS, Verdict.EXPECTED_FAIL, Verdict.NOT_APPLICABLE)

    @classmethod
    def decide(cls, passed: bool, expected: Expectation) -> "Verdict":
        if expected is Expectation.NOT_APPLICABLE:
            return cls.NOT_APPLICABLE
        if expected is Expectation.PASS:
            return cls.PASS if passed else cls.FAIL
        return cls.UNEXPECTED_PASS if passed else cls.EXPECTED_FAIL


def serialize_morphism(m: Mor) -> str:
    """Matrix exchange text for FdHilb payloads, 0/1 grids for relations."""
    if m.model is ModelId.FINREL:
        return as_bool_grid(m.payload)
    return format_matrix(m.payload, GroundField.of(m.model))


class Counterexample(BaseModel):
    """The first failing instance of a suite."""

    model_config = ConfigDict(frozen=True)

    detail: str
    morphisms: list[str] = Field(default_factory=list)

    @classmethod
    def of(cls, detail: str, witness: tuple[Mor, ...] | None) -> "Counterexample":
        return cls(detail=detail, morphisms=[serialize_morphism(m) for m in witness or ()])


class SuiteResult(BaseModel):
    """Verdict of one suite on one model."""

    model_config = ConfigDict(frozen=True)

    suite: str
    law: str
    anchor: str
    expected: Expectation
    verdict: Verdict
    trials: int = 0
    checks: int = 0
    failures: int = 0
    max_residual: float = 0.0
    counterexample: Counterexample | None = None
    message: str = ""


class Provenance(BaseModel):
    """Versions the report was produced with."""

    model_config = ConfigDict(frozen=True)

    package: str = Field(default_factory=lambda: settings.app_name)
    package_version: str = Field(default_factory=lambda: settings.app_version)
    numpy_version: str = Field(default_factory=lambda: np.__version__)
    python_version: str = Field(default_factory=platform.python_version)


class Report(BaseModel):
    """Results of one run, sorted by suite id."""

    config: SuiteConfig
    provenance: Provenance = Field(default_factory=Provenance)
    suites: list[SuiteResult] = Field(default_factory=list)
    wall_time: float = 0.0

    @property
    def all_expected(self) -> bool:
        return all(result.verdict.as_expected for result in self.suites)

    @property
    def exit_code(self) -> int:
        return 0 if self.all_expected else 1


def stable_summary(report: Report) -> dict[str, Any]:
    """
    The part of a report that is identical on every machine.

    Residuals and wall time depend on the host and the BLAS build; config,
    verdicts, failure counts and counterexample details do not.
    """
    return {
        "config": report.config.model_dump(mode="json"),
        "suites": [
            {
                "suite": result.suite,
                "expected": result.expected.value,
                "verdict": result.verdict.value,
                "trials": result.trials,
                "failures": result.failures,
                "counterexample": (
                    None if result.counterexample is None else result.counterexample.detail
                ),
            }
            for result in report.suites
        ],
    }


def emit_report(
    report: Report, fmt: ReportFormat = "text", include_wall_time: bool = True
) -> bytes:
    """
    Serialize a report.

    Args:
        report: Report to render
        fmt: ``json`` (sorted keys), ``summary`` (the stable part as JSON) or
            ``text`` (one line per law)
        include_wall_time: Drop the only nondeterministic field when False

    Returns:
        UTF-8 encoded bytes ending in a newline
    """
    if fmt != "text":
        if fmt == "summary":
            payload = stable_summary(report)
        else:
            exclude = None if include_wall_time else {"wall_time"}
            payload = report.model_dump(mode="json", exclude=exclude)
        return (json.dumps(payload, sort_keys=True, indent=2) + "\n").encode("utf-8")

    config = report.config
    lines = [
        f"model {config.model}  dims {config.dim_min}..{config.dim_max}  "
        f"trials {config.trials}  seed {config.seed}  tol {config.tol:g}",
    ]
    for result in report.suites:
        lines.append(
            f"{result.suite:<18} {result.verdict.value:<18} "
            f"failures {result.failures:<5} residual {result.max_residual:.3e}  "
            f"{result.law} [{result.anchor}]"
        )
        if result.counterexample is not None and result.verdict is not Verdict.PASS:
            lines.append(f"  counterexample: {result.counterexample.detail}")
        if result.message:
            lines.append(f"  {result.message}")
    if include_wall_time:
        lines.append(f"wall time {report.wall_time:.2f}s")
    return ("\n".join(lines) + "\n").encode("utf-8")
