"""
Unit tests for the functor C(I, -) and its equivalence evidence.
"""

from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dagger_workbench import derived
from dagger_workbench.core.config import SuiteConfig
from dagger_workbench.core.exceptions import (
    ModelMismatchError,
    NonIsometryError,
    ShapeMismatchError,
)
from dagger_workbench.equivalence import (
    apply_functor,
    coherence_checks,
    comparison_naturality,
    comparison_unitarity,
    dagger_dual,
    distinguishing_vector,
    essential_surjectivity,
    faithfulness_check,
    functor_preserves_biproducts,
    hilbert_swap,
    isometry_decomposition,
    lift_isometry,
    lift_linear_map,
    tensor_norm_check,
)
from dagger_workbench.models import FDHILB_C, FDHILB_R, FINREL
from dagger_workbench.models.fdhilb import GroundField, format_matrix

GOLDEN = Path(__file__).parent / "golden"

dims = st.integers(min_value=0, max_value=4)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


class TestFunctor:
    """The functor on morphisms and its faithfulness."""

    def test_image_is_the_matrix(self):
        f = FDHILB_R.morphism(FDHILB_R.obj(2), FDHILB_R.obj(2), [[1.0, 2.0], [3.0, 4.0]])

        np.testing.assert_allclose(apply_functor(f).matrix, f.payload)

    def test_image_of_map_out_of_zero(self):
        f = FDHILB_R.zero_morphism(FDHILB_R.zero_object(), FDHILB_R.obj(3))

        assert apply_functor(f).matrix.shape == (3, 0)

    def test_distinguishing_vector(self):
        h = FDHILB_R.obj(3)
        f = FDHILB_R.morphism(h, FDHILB_R.unit(), [[1.0, 0.0, 2.0]])
        g = FDHILB_R.morphism(h, FDHILB_R.unit(), [[1.0, 0.0, 5.0]])

        assert distinguishing_vector(f, g) == 2
        assert distinguishing_vector(f, f) is None

    def test_relations_are_told_apart_by_points(self):
        h = FINREL.obj(2)
        f = FINREL.morphism(h, h, [[1, 0], [0, 1]])
        g = FINREL.morphism(h, h, [[1, 0], [1, 1]])

        assert distinguishing_vector(f, g) == 0

    @pytest.mark.parametrize("model", [FDHILB_R, FDHILB_C, FINREL])
    def test_faithfulness(self, model):
        config = SuiteConfig.build(model=model.model_id, dim_max=3, trials=10)
        verdict = faithfulness_check(
            model.obj(2), model.obj(2), config, np.random.default_rng(0)
        )

        assert verdict.passed
        assert verdict.distinguished + verdict.equal_pairs == 10

    @pytest.mark.parametrize("model", [FDHILB_R, FDHILB_C])
    def test_biproducts_go_to_direct_sums(self, model):
        assert functor_preserves_biproducts(model.obj(2), model.obj(3)) <= 1e-12

    @pytest.mark.parametrize("model", [FDHILB_R, FDHILB_C])
    def test_essentially_surjective(self, model):
        assert essential_surjectivity(model, 8) == []


class TestFullness:
    """Lifting isometries and linear maps back into the category."""

    def test_lift_rotation(self):
        angle = 0.3
        u = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        standard = derived.SubspaceONB(FDHILB_R.obj(2), np.eye(2))
        lifted = lift_isometry(u, standard)

        np.testing.assert_allclose(lifted.payload, u, atol=1e-12)
        assert FDHILB_R.is_dagger_iso(lifted)

    def test_lift_embedding(self):
        u = np.array([[1.0], [0.0], [0.0]])
        standard = derived.SubspaceONB(FDHILB_R.obj(1), np.eye(1))
        lifted = lift_isometry(u, standard)

        assert lifted.cod.dim == 3
        assert FDHILB_R.is_dagger_mono(lifted)

    def test_non_isometry_rejected(self):
        standard = derived.SubspaceONB(FDHILB_R.obj(2), np.eye(2))

        with pytest.raises(NonIsometryError):
            lift_isometry(np.array([[1.0, 1.0], [0.0, 1.0]]), standard)

    def test_k_vectors_must_be_images(self):
        standard = derived.SubspaceONB(FDHILB_R.obj(2), np.eye(2))

        with pytest.raises(NonIsometryError):
            lift_isometry(np.eye(2), standard, k_vectors=np.array([[0.0, 1.0], [1.0, 0.0]]))

    def test_wrong_shape_rejected(self):
        standard = derived.SubspaceONB(FDHILB_R.obj(2), np.eye(2))

        with pytest.raises(ShapeMismatchError):
            lift_isometry(np.eye(3), standard)

    @pytest.mark.parametrize("model", [FDHILB_R, FDHILB_C])
    @given(h=st.integers(min_value=0, max_value=3), extra=st.integers(0, 2), seed=seeds)
    @settings(max_examples=30, deadline=None)
    def test_decomposition_into_isometries(self, model, h, extra, seed):
        f = model.random_morphism(model.obj(h), model.obj(h + extra), np.random.default_rng(seed))
        terms = isometry_decomposition(f)

        for _, u in terms:
            np.testing.assert_allclose(u.conj().T @ u, np.eye(h), atol=1e-9)
        rebuilt = sum((c * u for c, u in terms), np.zeros(f.payload.shape))
        np.testing.assert_allclose(rebuilt, f.payload, atol=1e-9)

    def test_complex_contraction_uses_two_unitaries(self):
        f = FDHILB_C.morphism(FDHILB_C.obj(2), FDHILB_C.obj(2), np.diag([0.5, 0.25]))

        assert len(isometry_decomposition(f)) == 2

    @pytest.mark.parametrize("model", [FDHILB_R, FDHILB_C])
    def test_lift_linear_map(self, model):
        f = model.random_morphism(model.obj(2), model.obj(3), np.random.default_rng(4))

        assert model.equal(lift_linear_map(f), f, 1e-8)

    def test_decomposition_needs_dim_h_at_most_dim_k(self):
        f = FDHILB_R.random_morphism(FDHILB_R.obj(3), FDHILB_R.obj(2), np.random.default_rng(0))

        with pytest.raises(ShapeMismatchError):
            isometry_decomposition(f)


class TestMonoidal:
    """The comparison M and the coherence squares."""

    @pytest.mark.parametrize("model", [FDHILB_R, FDHILB_C])
    @given(h=dims, k=dims)
    @settings(max_examples=20, deadline=None)
    def test_comparison_is_unitary(self, model, h, k):
        assert comparison_unitarity(model.obj(h), model.obj(k)) <= 1e-12

    @given(seed=seeds)
    @settings(max_examples=20, deadline=None)
    def test_comparison_is_natural(self, seed):
        rng = np.random.default_rng(seed)
        f = FDHILB_C.random_morphism(FDHILB_C.obj(2), FDHILB_C.obj(3), rng)
        g = FDHILB_C.random_morphism(FDHILB_C.obj(1), FDHILB_C.obj(2), rng)

        assert comparison_naturality(f, g) <= 1e-9

    def test_norm_is_multiplicative(self):
        h = FDHILB_R.morphism(FDHILB_R.unit(), FDHILB_R.obj(2), [[3.0], [4.0]])
        k = FDHILB_R.morphism(FDHILB_R.unit(), FDHILB_R.obj(2), [[1.0], [1.0]])

        assert tensor_norm_check(h, k) <= 1e-12

    @pytest.mark.parametrize("model", [FDHILB_R, FDHILB_C])
    def test_coherence_squares_commute(self, model):
        h, k, l = model.obj(2), model.obj(3), model.obj(2)  # noqa: E741
        verdict = coherence_checks(h, k, l, rng=np.random.default_rng(1))

        assert verdict.passed
        assert verdict.residual <= 1e-9

    def test_hilbert_swap_is_permutation(self):
        swap = hilbert_swap(2, 3)

        assert sorted(swap.sum(axis=0)) == [1.0] * 6
        assert sorted(swap.sum(axis=1)) == [1.0] * 6
        a, b = np.array([1.0, 0.0]), np.array([0.0, 1.0, 0.0])
        np.testing.assert_array_equal(swap @ np.kron(a, b), np.kron(b, a))


class TestDaggerDuals:
    def test_cup_golden(self):
        witness = dagger_dual(FDHILB_R.obj(2))

        assert format_matrix(witness.cup.payload, GroundField.REAL) == (
            GOLDEN / "cup_dim2.txt"
        ).read_text()

    @pytest.mark.parametrize("model", [FDHILB_R, FDHILB_C])
    @pytest.mark.parametrize("dim", range(0, 5))
    def test_snake_identities(self, model, dim):
        witness = dagger_dual(model.obj(dim))

        assert witness.dual.dim == dim
        assert witness.residual <= 1e-9
        assert witness.mirror_residual <= 1e-9
        assert model.equal(witness.cap, model.dagger(witness.cup))

    def test_relations_have_no_duals_here(self):
        with pytest.raises(ModelMismatchError):
            dagger_dual(FINREL.obj(2))
