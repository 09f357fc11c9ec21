"""
Unit tests for the axiom predicates.
"""

import numpy as np
import pytest

from dagger_workbench.axioms import (
    ResidualTally,
    check_axiom,
    evaluate_axiom,
    record_equaliser,
)
from dagger_workbench.category import AxiomId, ModelId
from dagger_workbench.core.config import SuiteConfig
from dagger_workbench.core.exceptions import ConfigurationError
from dagger_workbench.models import FDHILB_R, FINREL
from dagger_workbench.models.finrel import axiom_e_witness

ALL_AXIOMS = list(AxiomId)


def small_config(model: ModelId, **options) -> SuiteConfig:
    options.setdefault("dim_min", 1)
    options.setdefault("dim_max", 3)
    options.setdefault("trials", 3)
    return SuiteConfig.build(model=model, seed=7, **options)


def rank_one_pair(rng):
    """Parallel f, g: 4 -> 3 whose difference has rank 1, so ker(f − g) has dim 3."""
    h, k = FDHILB_R.obj(4), FDHILB_R.obj(3)
    g = FDHILB_R.random_morphism(h, k, rng)
    difference = rng.standard_normal((3, 1)) @ rng.standard_normal((1, 4))
    return FDHILB_R.morphism(h, k, g.payload + difference), g


class TestResidualTally:
    def test_keeps_worst_residual_and_first_witness(self):
        point = FINREL.scalar(1)
        empty = FINREL.scalar(0)
        tally = ResidualTally(tol=0.5)

        tally.record(0.1, detail="fine")
        tally.record(0.9, point, detail="first")
        tally.record(0.7, empty, detail="second")

        assert tally.checks == 3
        assert tally.failures == 2
        assert tally.residual == 0.9
        assert tally.witness == (point,)
        assert tally.detail == "first"
        assert not tally.passed

    def test_fail_records_unit_residual(self):
        tally = ResidualTally(tol=1e-9)
        tally.fail(detail="broken")

        assert tally.residual == 1.0
        assert tally.witness == ()
        assert tally.detail == "broken"

    def test_empty_tally_passes(self):
        assert ResidualTally(tol=1e-9).passed


class TestHilbertAxioms:
    """Every axiom holds on both Hilbert space models."""

    @pytest.mark.parametrize("model", [ModelId.FDHILB_R, ModelId.FDHILB_C])
    @pytest.mark.parametrize("axiom", ALL_AXIOMS)
    def test_axiom_holds(self, model, axiom):
        verdict = check_axiom(axiom, small_config(model))

        assert verdict.passed, verdict.detail
        assert verdict.residual <= 1e-9
        assert verdict.witness is None
        assert verdict.trials == 3

    def test_zero_dimensional_objects(self):
        config = small_config(ModelId.FDHILB_C, dim_min=0, dim_max=0)

        for axiom in ALL_AXIOMS:
            assert check_axiom(axiom, config).passed

    def test_axiom_by_name(self):
        verdict = check_axiom("C-finite", small_config(ModelId.FDHILB_R))

        assert verdict.axiom is AxiomId.C_FINITE


class TestRelationAxioms:
    """FinRel satisfies everything except (E) and (K)."""

    @pytest.mark.parametrize(
        "axiom", [AxiomId.D, AxiomId.T, AxiomId.B, AxiomId.C_FINITE]
    )
    def test_axiom_holds(self, axiom):
        verdict = check_axiom(axiom, small_config(ModelId.FINREL))

        assert verdict.passed, verdict.detail
        assert verdict.residual == 0.0

    def test_equalisers_fail_on_pinned_pair(self):
        verdict = check_axiom(AxiomId.E, small_config(ModelId.FINREL))
        f, g = axiom_e_witness()

        assert not verdict.passed
        assert verdict.residual == 1.0
        assert [w.payload.tolist() for w in verdict.witness] == [
            f.payload.tolist(),
            g.payload.tolist(),
        ]
        assert "no equaliser" in verdict.detail

    def test_some_dagger_mono_is_not_a_kernel(self):
        verdict = check_axiom(AxiomId.K, small_config(ModelId.FINREL, trials=50))

        assert not verdict.passed
        assert verdict.detail == "dagger mono is not a kernel"
        (mono, _) = verdict.witness
        assert FINREL.is_dagger_mono(mono)


class TestEqualiserCones:
    """Cones come from ker(f − g), not from the equaliser being checked."""

    def test_true_equaliser_passes(self):
        rng = np.random.default_rng(0)
        f, g = rank_one_pair(rng)
        tally = ResidualTally(tol=1e-9)

        record_equaliser(FDHILB_R, tally, rng, f, g)

        assert tally.passed
        assert tally.checks == 6

    def test_truncated_equaliser_misses_cones(self, monkeypatch):
        rng = np.random.default_rng(0)
        f, g = rank_one_pair(rng)
        full = FDHILB_R.dagger_equaliser(f, g)
        truncated = FDHILB_R.morphism(FDHILB_R.obj(2), f.dom, full.payload[:, :2])
        monkeypatch.setattr(FDHILB_R, "dagger_equaliser", lambda *args: truncated)
        tally = ResidualTally(tol=1e-9)

        record_equaliser(FDHILB_R, tally, rng, f, g)

        # the rank count and the cone m outside the range of e both fail
        assert tally.failures == 2
        assert tally.detail == "rank(e) + rank(f − g) ≠ dim H"


class TestDeterminism:
    def test_same_seed_same_tally(self):
        config = small_config(ModelId.FDHILB_C)

        first = evaluate_axiom(AxiomId.B, config, np.random.default_rng(3), 4)
        second = evaluate_axiom(AxiomId.B, config, np.random.default_rng(3), 4)

        assert first.residual == second.residual
        assert first.checks == second.checks

    def test_trials_override(self):
        verdict = check_axiom(AxiomId.D, small_config(ModelId.FDHILB_R), trials=5)

        assert verdict.trials == 5


class TestInvalidRequests:
    def test_unknown_axiom(self):
        with pytest.raises(ConfigurationError):
            check_axiom("Z", small_config(ModelId.FDHILB_R))

    def test_trials_must_be_positive(self):
        with pytest.raises(ConfigurationError):
            check_axiom(AxiomId.D, small_config(ModelId.FDHILB_R), trials=0)
