"""
Tests for the suite registry, runner and reports.
"""

import json
from pathlib import Path

import numpy as np
import pytest

from dagger_workbench.axioms import ResidualTally
from dagger_workbench.category import ModelId
from dagger_workbench.core.config import SuiteConfig
from dagger_workbench.core.exceptions import ConfigurationError, NonIsometryError
from dagger_workbench.harness import (
    SUITES,
    Expectation,
    Report,
    Suite,
    Verdict,
    emit_report,
    run_suite,
    run_suites,
    stable_summary,
    suite_rng,
)

GOLDEN = Path(__file__).parent / "golden"

AXIOM_SUITES = {f"axiom-{name}" for name in ("D", "T", "B", "E", "K", "C")}


def quick_config(model: ModelId, suites=None, **options) -> SuiteConfig:
    options.setdefault("dim_min", 1)
    options.setdefault("dim_max", 2)
    options.setdefault("trials", 2)
    return SuiteConfig.build(model=model, suites=suites, seed=42, **options)


class TestRegistry:
    def test_axiom_suites_registered(self):
        assert AXIOM_SUITES <= set(SUITES)

    def test_every_suite_has_law_and_anchor(self):
        for suite in SUITES.values():
            assert suite.law
            assert suite.anchor

    @pytest.mark.parametrize(
        "suite_id, expected",
        [
            ("axiom-E", Expectation.FAIL),
            ("axiom-K", Expectation.FAIL),
            ("scalar-field", Expectation.FAIL),
            ("vector-space", Expectation.FAIL),
            ("axiom-D", Expectation.PASS),
            ("standard-basis", Expectation.PASS),
            ("equaliser-search", Expectation.PASS),
            ("ortholattice", Expectation.NOT_APPLICABLE),
            ("duals", Expectation.NOT_APPLICABLE),
        ],
    )
    def test_finrel_expectations(self, suite_id, expected):
        assert SUITES[suite_id].expected(ModelId.FINREL) is expected

    def test_complex_axiom_expectations(self):
        complex_axiom = SUITES["complex-axiom"]

        assert complex_axiom.expected(ModelId.FDHILB_R) is Expectation.FAIL
        assert complex_axiom.expected(ModelId.FDHILB_C) is Expectation.PASS


class TestVerdict:
    @pytest.mark.parametrize(
        "passed, expected, verdict",
        [
            (True, Expectation.PASS, Verdict.PASS),
            (False, Expectation.PASS, Verdict.FAIL),
            (False, Expectation.FAIL, Verdict.EXPECTED_FAIL),
            (True, Expectation.FAIL, Verdict.UNEXPECTED_PASS),
            (True, Expectation.NOT_APPLICABLE, Verdict.NOT_APPLICABLE),
        ],
    )
    def test_decide(self, passed, expected, verdict):
        assert Verdict.decide(passed, expected) is verdict

    def test_as_expected(self):
        assert Verdict.EXPECTED_FAIL.as_expected
        assert not Verdict.UNEXPECTED_PASS.as_expected
        assert not Verdict.ERROR.as_expected


class TestRunner:
    """Suite selection, verdicts and error isolation."""

    def test_rng_depends_on_suite_id(self):
        first = suite_rng(42, "axiom-D").random(4)
        again = suite_rng(42, "axiom-D").random(4)
        other = suite_rng(42, "axiom-T").random(4)

        np.testing.assert_array_equal(first, again)
        assert not np.array_equal(first, other)

    def test_empty_selection_runs_nothing(self):
        report = run_suites(quick_config(ModelId.FDHILB_C, suites=()))

        assert report.suites == []
        assert report.exit_code == 0
        assert json.loads(emit_report(report, "json"))["suites"] == []

    def test_unknown_suite(self):
        with pytest.raises(ConfigurationError):
            run_suites(quick_config(ModelId.FDHILB_C, suites=("axiom-Z",)))

    def test_results_sorted_and_deduplicated(self):
        config = quick_config(ModelId.FDHILB_R, suites=("axiom-T", "axiom-D", "axiom-T"))
        report = run_suites(config)

        assert [result.suite for result in report.suites] == ["axiom-D", "axiom-T"]

    def test_finrel_counterexamples(self):
        config = quick_config(ModelId.FINREL, suites=("axiom-E", "scalar-field"))
        report = run_suites(config)
        results = {result.suite: result for result in report.suites}

        assert report.exit_code == 0
        axiom_e = results["axiom-E"]
        assert axiom_e.verdict is Verdict.EXPECTED_FAIL
        assert axiom_e.counterexample.morphisms == [
            (GOLDEN / "axiom_e_f.txt").read_text(),
            (GOLDEN / "axiom_e_g.txt").read_text(),
        ]
        scalar = results["scalar-field"]
        assert scalar.verdict is Verdict.EXPECTED_FAIL
        assert scalar.counterexample.detail == "no x with 1 + x = 0"
        assert scalar.counterexample.morphisms == ["1 1 bool\n1\n"]

    def test_not_applicable_suites(self):
        config = quick_config(ModelId.FINREL, suites=("ortholattice", "equivalence"))
        report = run_suites(config)

        assert {result.verdict for result in report.suites} == {Verdict.NOT_APPLICABLE}
        assert report.exit_code == 0

    def test_real_field_fails_complex_axiom_by_design(self):
        report = run_suites(quick_config(ModelId.FDHILB_R, suites=("complex-axiom",)))

        assert report.suites[0].verdict is Verdict.EXPECTED_FAIL

    def test_suite_error_is_isolated(self):
        def broken(ctx) -> ResidualTally:
            raise NonIsometryError("not an isometry")

        suite = Suite("broken", "law", "anchor", broken, {ModelId.FDHILB_C: Expectation.PASS})
        result = run_suite(suite, quick_config(ModelId.FDHILB_C))

        assert result.verdict is Verdict.ERROR
        assert result.message == "NonIsometryError: not an isometry"

    def test_unexpected_failure_sets_exit_code(self, monkeypatch):
        def failing(ctx) -> ResidualTally:
            tally = ResidualTally(ctx.tol)
            tally.fail(detail="always")
            return tally

        monkeypatch.setitem(
            SUITES,
            "always-fails",
            Suite("always-fails", "law", "anchor", failing, {ModelId.FDHILB_R: Expectation.PASS}),
        )
        report = run_suites(quick_config(ModelId.FDHILB_R, suites=("always-fails",)))

        assert report.suites[0].verdict is Verdict.FAIL
        assert report.exit_code == 1


class TestReports:
    """Determinism and serialization of reports."""

    def test_full_run_is_deterministic(self):
        config = quick_config(ModelId.FDHILB_C)

        first = emit_report(run_suites(config), "json", include_wall_time=False)
        second = emit_report(run_suites(config), "json", include_wall_time=False)

        assert first == second

    def test_thread_count_does_not_change_results(self):
        config = quick_config(ModelId.FDHILB_R, suites=tuple(sorted(AXIOM_SUITES)))

        serial = emit_report(run_suites(config, threads=1), "json", include_wall_time=False)
        parallel = emit_report(run_suites(config, threads=4), "json", include_wall_time=False)

        assert serial == parallel

    def test_selection_does_not_change_a_suite(self):
        alone = run_suites(quick_config(ModelId.FDHILB_C, suites=("vector-space",)))
        together = run_suites(
            quick_config(ModelId.FDHILB_C, suites=("vector-space", "scalar-field"))
        )

        assert alone.suites[0] == together.suites[1]

    def test_full_hilbert_run_as_expected(self):
        report = run_suites(quick_config(ModelId.FDHILB_C))

        assert report.all_expected, [
            (result.suite, result.verdict, result.message)
            for result in report.suites
            if not result.verdict.as_expected
        ]
        assert len(report.suites) == len(SUITES)

    def test_json_echoes_config_and_provenance(self):
        report = run_suites(quick_config(ModelId.FDHILB_R, suites=("axiom-D",)))
        payload = json.loads(emit_report(report, "json"))

        assert payload["config"]["model"] == "fdhilb-r"
        assert payload["config"]["suites"] == ["axiom-D"]
        assert payload["provenance"]["package"] == "Dagger Workbench"
        assert payload["provenance"]["numpy_version"] == np.__version__
        assert payload["suites"][0]["verdict"] == "pass"
        assert "wall_time" in payload

    def test_text_has_one_line_per_suite(self):
        config = quick_config(ModelId.FDHILB_R, suites=("axiom-D", "axiom-B"))
        lines = emit_report(run_suites(config), "text").decode("utf-8").splitlines()

        assert lines[0].startswith("model fdhilb-r")
        assert lines[1].startswith("axiom-B")
        assert lines[2].startswith("axiom-D")
        assert lines[-1].startswith("wall time")
        assert len(lines) == 4

    def test_json_round_trips_into_a_report(self):
        report = run_suites(quick_config(ModelId.FINREL))
        emitted = emit_report(report, "json")

        parsed = Report.model_validate_json(emitted)

        assert parsed == report
        assert emit_report(parsed, "json") == emitted
        assert any(result.counterexample is not None for result in parsed.suites)

    def test_summary_drops_host_dependent_fields(self):
        report = run_suites(quick_config(ModelId.FDHILB_R, suites=("axiom-D",)))
        summary = json.loads(emit_report(report, "summary"))

        assert summary == stable_summary(report)
        assert set(summary) == {"config", "suites"}
        assert set(summary["suites"][0]) == {
            "counterexample",
            "expected",
            "failures",
            "suite",
            "trials",
            "verdict",
        }


class TestGoldenReport:
    """The committed seed-42 run."""

    def test_seed_42_matches_golden(self):
        config = SuiteConfig.build(
            model=ModelId.FDHILB_C, dim_min=1, dim_max=4, trials=25, seed=42
        )
        golden = json.loads((GOLDEN / "report_fdhilb_c_seed42.json").read_text())

        report = run_suites(config)

        assert json.loads(emit_report(report, "summary")) == golden
        assert report.exit_code == 0
