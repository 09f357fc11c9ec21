"""
Suite runner.

Each suite gets its own random stream derived from the run seed and the
suite id, so results do not depend on which suites are selected, their order
or the number of worker threads.
"""

import hashlib
import time
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from dagger_workbench.category import get_model
from dagger_workbench.core.config import SuiteConfig, settings
from dagger_workbench.core.exceptions import ConfigurationError, WorkbenchError
from dagger_workbench.core.logger import get_logger
from dagger_workbench.harness.report import (
    Counterexample,
    Expectation,
    Report,
    SuiteResult,
    Verdict,
)
from dagger_workbench.harness.suites import SUITES, Suite, SuiteContext

logger = get_logger(__name__)


def suite_rng(seed: int, suite_id: str) -> np.random.Generator:
    """Random stream for one suite, independent of every other suite."""
    digest = hashlib.sha256(suite_id.encode("utf-8")).digest()
    entropy = [seed, int.from_bytes(digest[:8], "little")]
    return np.random.default_rng(np.random.SeedSequence(entropy))


def select_suites(config: SuiteConfig) -> list[Suite]:
    """
    Resolve the suite ids of a config; None selects every suite.

    Raises:
        ConfigurationError: if an id is unknown
    """
    if config.suites is None:
        return [SUITES[suite_id] for suite_id in sorted(SUITES)]
    unknown = sorted(set(config.suites) - set(SUITES))
    if unknown:
        raise ConfigurationError(
            f"Unknown suites: {', '.join(unknown)}; known: {', '.join(sorted(SUITES))}"
        )
    return [SUITES[suite_id] for suite_id in sorted(set(config.suites))]


def run_suite(suite: Suite, config: SuiteConfig) -> SuiteResult:
    """Run one suite and compare the outcome with its expectation."""
    expected = suite.expected(config.model)
    result = SuiteResult(
        suite=suite.suite_id,
        law=suite.law,
        anchor=suite.anchor,
        expected=expected,
        verdict=Verdict.NOT_APPLICABLE,
    )
    if expected is Expectation.NOT_APPLICABLE:
        return result

    rng = suite_rng(config.seed, suite.suite_id)
    context = SuiteContext(get_model(config.model), config, rng)
    log_context = {"suite": suite.suite_id, "model": config.model.value}
    try:
        tally = suite.run(context)
    except Exception as e:
        # WorkbenchErrors are expected failure modes; anything else is a bug
        logger.error(
            f"suite raised {type(e).__name__}: {e}",
            exc_info=not isinstance(e, WorkbenchError),
            extra=log_context,
        )
        message = f"{type(e).__name__}: {e}"
        return result.model_copy(update={"verdict": Verdict.ERROR, "message": message})

    verdict = Verdict.decide(tally.passed, expected)
    counterexample = None
    if tally.witness is not None:
        counterexample = Counterexample.of(tally.detail, tally.witness)
    summary = (
        f"{verdict.value} ({tally.failures}/{tally.checks} failing, "
        f"residual {tally.residual:.3g})"
    )
    if verdict.as_expected:
        logger.info(summary, extra=log_context)
    else:
        logger.warning(
            f"{summary}; expected {expected.value}: {tally.detail}", extra=log_context
        )
    return result.model_copy(
        update={
            "verdict": verdict,
            "trials": config.trials,
            "checks": tally.checks,
            "failures": tally.failures,
            "max_residual": tally.residual,
            "counterexample": counterexample,
        }
    )


def run_suites(config: SuiteConfig, threads: int | None = None) -> Report:
    """
    Run the suites selected by a config.

    Args:
        config: Validated run configuration
        threads: Worker threads; defaults to the configured setting

    Returns:
        The report with one result per suite, sorted by suite id

    Raises:
        ConfigurationError: if the config names an unknown suite
    """
    suites = select_suites(config)
    workers = settings.threads if threads is None else threads
    logger.info(
        f"running {len(suites)} suites on {config.model} "
        f"(dims {config.dim_min}..{config.dim_max}, seed {config.seed}, {workers} threads)"
    )
    start = time.perf_counter()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda suite: run_suite(suite, config), suites))
    else:
        results = [run_suite(suite, config) for suite in suites]
    wall_time = time.perf_counter() - start

    report = Report(config=config, suites=results, wall_time=wall_time)
    logger.info(
        f"finished {len(results)} suites in {wall_time:.2f}s; "
        f"{'all as expected' if report.all_expected else 'unexpected verdicts present'}"
    )
    return report
