"""
Unit tests for the finite-dimensional Hilbert space models.
"""

from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dagger_workbench.category import ModelId, Mor, Obj
from dagger_workbench.core.exceptions import MatrixFormatError
from dagger_workbench.models import FDHILB_C, FDHILB_R
from dagger_workbench.models.fdhilb import (
    GroundField,
    approx_equal,
    format_matrix,
    image_factorization,
    nullspace_onb,
    numerical_rank,
    parse_matrix,
    random_morphism,
    range_onb,
)

GOLDEN = Path(__file__).parent / "golden"

dims = st.integers(min_value=0, max_value=5)
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def real(rows: list[list[float]]) -> Mor:
    matrix = np.array(rows, dtype=float)
    return FDHILB_R.morphism(FDHILB_R.obj(matrix.shape[1]), FDHILB_R.obj(matrix.shape[0]), matrix)


class TestGroundField:
    def test_model_ids(self):
        assert GroundField.REAL.model_id is ModelId.FDHILB_R
        assert GroundField.of(ModelId.FDHILB_C) is GroundField.COMPLEX

    def test_relations_have_no_ground_field(self):
        with pytest.raises(ValueError):
            GroundField.of(ModelId.FINREL)


class TestNullspace:
    """Null spaces, ranks and image factorizations."""

    def test_diagonal_null_space(self):
        basis = nullspace_onb(real([[1, 0], [0, 0]]))

        assert basis.shape == (2, 1)
        np.testing.assert_allclose(np.abs(basis), [[0.0], [1.0]], atol=1e-12)

    def test_full_rank_has_trivial_null_space(self):
        assert nullspace_onb(real([[2, 0], [0, 3]])).shape == (2, 0)

    def test_zero_map_null_space_is_everything(self):
        basis = nullspace_onb(FDHILB_R.zero_morphism(FDHILB_R.obj(3), FDHILB_R.obj(2)))

        np.testing.assert_allclose(basis.T @ basis, np.eye(3), atol=1e-12)

    def test_rank_cutoff_has_absolute_floor(self):
        assert numerical_rank(np.diag([1e-12, 1e-13])) == 0
        assert numerical_rank(np.diag([1e-12, 1e-13]), scale=1e-12) == 2
        assert nullspace_onb(real([[1e-12, 0.0], [0.0, 1e-13]])).shape == (2, 2)
        assert range_onb(np.full((2, 2), 1e-14)).shape == (2, 0)

    def test_rank_cutoff_is_relative(self):
        assert numerical_rank(np.diag([1.0, 1e-12])) == 1
        assert numerical_rank(np.diag([1.0, 1e-6])) == 2
        assert numerical_rank(np.zeros((0, 3))) == 0

    def test_range_basis(self):
        basis = range_onb(np.array([[1.0, 1.0], [1.0, 1.0]]))

        assert basis.shape == (2, 1)
        np.testing.assert_allclose(np.abs(basis[:, 0]), [2**-0.5, 2**-0.5])

    @given(h=dims, k=dims, seed=seeds)
    @settings(max_examples=40, deadline=None)
    def test_null_space_is_killed_and_orthonormal(self, h, k, seed):
        f = FDHILB_C.random_morphism(FDHILB_C.obj(h), FDHILB_C.obj(k), np.random.default_rng(seed))
        basis = nullspace_onb(f)

        assert basis.shape == (h, h - numerical_rank(f.payload))
        np.testing.assert_allclose(f.payload @ basis, 0, atol=1e-9)
        np.testing.assert_allclose(basis.conj().T @ basis, np.eye(basis.shape[1]), atol=1e-9)

    @given(h=dims, k=dims, seed=seeds)
    @settings(max_examples=40, deadline=None)
    def test_image_factorization(self, h, k, seed):
        f = FDHILB_R.random_morphism(FDHILB_R.obj(h), FDHILB_R.obj(k), np.random.default_rng(seed))
        e, m = image_factorization(f)

        assert FDHILB_R.is_dagger_mono(m)
        assert FDHILB_R.equal(FDHILB_R.compose(m, e), f, 1e-9)
        assert numerical_rank(e.payload) == e.cod.dim


class TestEqualisers:
    def test_equaliser_of_a_map_with_itself_is_identity(self):
        f = real([[1, 2], [3, 4]])
        e = FDHILB_R.dagger_equaliser(f, f)

        assert FDHILB_R.equal(FDHILB_R.range_projection(e), FDHILB_R.identity(f.dom))

    def test_equaliser_of_identity_and_zero_is_zero(self):
        h = FDHILB_C.obj(3)
        e = FDHILB_C.dagger_equaliser(FDHILB_C.identity(h), FDHILB_C.zero_morphism(h, h))

        assert e.dom.dim == 0

    @given(seed=seeds)
    @settings(max_examples=30, deadline=None)
    def test_equaliser_mediates_cones(self, seed):
        rng = np.random.default_rng(seed)
        h, k = FDHILB_R.obj(4), FDHILB_R.obj(3)
        # f - g has rank 1, so the equaliser has dimension 3
        u = rng.standard_normal((3, 1))
        v = rng.standard_normal((1, 4))
        g = FDHILB_R.random_morphism(h, k, rng)
        f = FDHILB_R.morphism(h, k, g.payload + u @ v)
        e = FDHILB_R.dagger_equaliser(f, g)

        assert e.dom.dim == 3
        assert FDHILB_R.is_dagger_mono(e)
        assert FDHILB_R.equal(FDHILB_R.compose(f, e), FDHILB_R.compose(g, e), 1e-8)

        # m = (id − vᵀv / ‖v‖²) w satisfies f ∘ m = g ∘ m without reference to e
        w = rng.standard_normal((4, 2))
        cone_payload = (np.eye(4) - v.T @ v / float(np.sum(v * v))) @ w
        cone = FDHILB_R.morphism(FDHILB_R.obj(2), h, cone_payload)
        assert FDHILB_R.equal(FDHILB_R.compose(f, cone), FDHILB_R.compose(g, cone), 1e-8)

        mediator = FDHILB_R.compose(FDHILB_R.dagger(e), cone)
        assert FDHILB_R.equal(FDHILB_R.compose(e, mediator), cone, 1e-8)
        # every solution of e ∘ u′ = m is the least-squares one, which is e† ∘ m
        other, *_ = np.linalg.lstsq(e.payload, cone_payload, rcond=None)
        np.testing.assert_allclose(other, mediator.payload, atol=1e-9)
        assert numerical_rank(e.payload) == e.dom.dim

    def test_equaliser_of_nearly_equal_pair_is_everything(self):
        rng = np.random.default_rng(3)
        h, k = FDHILB_C.obj(3), FDHILB_C.obj(2)
        f = FDHILB_C.random_morphism(h, k, rng)
        g = FDHILB_C.morphism(h, k, f.payload + 1e-12 * rng.standard_normal((2, 3)))

        assert approx_equal(f, g)
        e = FDHILB_C.dagger_equaliser(f, g)
        assert e.dom.dim == 3
        assert FDHILB_C.is_dagger_iso(e)

    def test_kernel_of_rounding_noise_is_everything(self):
        rng = np.random.default_rng(5)
        q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
        h = FDHILB_C.obj(3)
        complement = FDHILB_C.morphism(h, h, np.eye(3) - q @ q.conj().T)

        assert numerical_rank(complement.payload) == 0
        assert FDHILB_C.kernel(complement).dom.dim == 3


class TestRandomMorphisms:
    def test_deterministic_given_seed(self):
        h, k = FDHILB_C.obj(2), FDHILB_C.obj(3)

        first = random_morphism(h, k, 11)
        second = random_morphism(h, k, 11)

        np.testing.assert_array_equal(first.payload, second.payload)
        assert np.iscomplexobj(first.payload)

    def test_real_model_draws_real_entries(self):
        f = random_morphism(FDHILB_R.obj(2), FDHILB_R.obj(2), 5)

        assert f.payload.dtype == np.float64

    def test_random_dagger_mono(self):
        rng = np.random.default_rng(0)
        m = FDHILB_C.random_dagger_mono(FDHILB_C.obj(2), FDHILB_C.obj(4), rng)

        assert FDHILB_C.is_dagger_mono(m)
        with pytest.raises(ValueError):
            FDHILB_C.random_dagger_mono(FDHILB_C.obj(3), FDHILB_C.obj(2), rng)

    def test_approx_equal_is_relative(self):
        h = FDHILB_R.obj(1)
        big = FDHILB_R.morphism(h, h, [[1e6]])
        close = FDHILB_R.morphism(h, h, [[1e6 + 1e-4]])

        assert approx_equal(big, close)
        assert not approx_equal(big, FDHILB_R.morphism(h, h, [[1e6 + 10]]))


class TestMatrixFormat:
    """The plain-text matrix exchange format."""

    def test_real_golden(self):
        text = (GOLDEN / "codiagonal_kernel_projection.txt").read_text()
        matrix = 0.5 * np.array([[1.0, -1.0], [-1.0, 1.0]])

        assert format_matrix(matrix, GroundField.REAL) == text

    def test_complex_golden(self):
        text = (GOLDEN / "pauli_y.txt").read_text()
        matrix, field = parse_matrix(text)

        assert field is GroundField.COMPLEX
        np.testing.assert_array_equal(matrix, [[0, -1j], [1j, 0]])
        assert format_matrix(matrix, field) == text

    def test_parse_is_exact(self):
        text = "1 3 real\n0.1 -2.5e-3 7\n"
        matrix, _ = parse_matrix(text)

        np.testing.assert_array_equal(matrix, [[0.1, -0.0025, 7.0]])

    def test_negative_zero_normalized(self):
        assert format_matrix(np.array([[-0.0]]), GroundField.REAL) == "1 1 real\n0.0\n"

    def test_empty_matrix(self):
        matrix, _ = parse_matrix("0 2 real\n")

        assert matrix.shape == (0, 2)

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "2 2\n1 2\n3 4\n",
            "2 2 quaternion\n1 2\n3 4\n",
            "1 2 real\n1.0\n",
            "1 1 real\nabc\n",
            "1 1 complex\n1.0\n",
            "-1 2 real\n",
        ],
    )
    def test_malformed_text(self, text):
        with pytest.raises(MatrixFormatError):
            parse_matrix(text)

    @given(
        st.lists(
            st.floats(allow_nan=False, allow_infinity=False, width=64),
            min_size=6,
            max_size=6,
        )
    )
    def test_real_entries_survive_exchange(self, values):
        matrix = np.array(values).reshape(2, 3) + 0.0
        parsed, _ = parse_matrix(format_matrix(matrix, GroundField.REAL))

        np.testing.assert_array_equal(parsed, matrix)


class TestNorm:
    def test_norm_of_vector(self):
        v = FDHILB_R.morphism(FDHILB_R.unit(), FDHILB_R.obj(2), [[3.0], [4.0]])

        assert FDHILB_R.norm(v) == pytest.approx(5.0)

    def test_object_identity_is_per_model(self):
        assert Obj(ModelId.FDHILB_R, 2) != Obj(ModelId.FDHILB_C, 2)
