"""
The functor C(I, -) into Hilbert spaces and the evidence that it is a
symmetric monoidal dagger equivalence.

Hilbert-side objects are coordinate spaces in the standard basis, the
Hilbert-side tensor is ``np.kron``. The functor is evidenced as faithful
(separator route), full (isometry lifting) and essentially surjective
(standard bases I^A); the comparison M and the coherence squares make it
monoidal; dagger duals are constructed and checked through the snake
identities.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Any

import numpy as np
from numpy.typing import NDArray

from dagger_workbench import derived
from dagger_workbench.category import (
    DEFAULT_TOL,
    DaggerCategory,
    Mor,
    Obj,
    compose,
    get_model,
)
from dagger_workbench.core.config import SuiteConfig
from dagger_workbench.core.exceptions import (
    ModelMismatchError,
    NonIsometryError,
    ShapeMismatchError,
)
from dagger_workbench.core.logger import get_logger
from dagger_workbench.models.fdhilb import FdHilb, GroundField, relative_residual

logger = get_logger(__name__)


@dataclass(frozen=True)
class FunctorImage:
    """C(I, f) as the matrix of postcomposition in the standard basis."""

    source: Mor
    matrix: NDArray[Any]


@dataclass(frozen=True)
class FaithfulnessVerdict:
    """Outcome of separating random pairs of parallel morphisms by vectors."""

    pairs: int
    distinguished: int
    equal_pairs: int
    witness: tuple[Mor, Mor] | None = None

    @property
    def passed(self) -> bool:
        return self.witness is None


@dataclass(frozen=True)
class CoherenceVerdict:
    """Path-difference residuals of the monoidal coherence squares."""

    symmetry: float
    associator: float
    unit: float
    tol: float

    @property
    def residual(self) -> float:
        return max(self.symmetry, self.associator, self.unit)

    @property
    def passed(self) -> bool:
        return self.residual <= self.tol


@dataclass(frozen=True)
class DualityWitness:
    """A cup I -> H* ⊗ H with both snake residuals."""

    obj: Obj
    dual: Obj
    cup: Mor
    cap: Mor
    residual: float
    mirror_residual: float


# The functor


def apply_functor(f: Mor) -> FunctorImage:
    """Column a of the image is f ∘ e_a."""
    model = get_model(f.model)
    columns = [model.compose(f, e).payload[:, 0] for e in model.basis_vectors(f.dom)]
    if columns:
        matrix = np.column_stack(columns)
    else:
        matrix = np.zeros((f.cod.dim, 0), dtype=f.payload.dtype)
    return FunctorImage(f, matrix)


def distinguishing_vector(f: Mor, g: Mor, tol: float = DEFAULT_TOL) -> int | None:
    """Index a of the first basis vector with f ∘ e_a ≠ g ∘ e_a, if any."""
    model = get_model(f.model)
    for index, e in enumerate(model.basis_vectors(f.dom)):
        if not model.equal(model.compose(f, e), model.compose(g, e), tol):
            return index
    return None


def faithfulness_check(
    h: Obj, k: Obj, config: SuiteConfig, rng: np.random.Generator
) -> FaithfulnessVerdict:
    """Every random pair f ≠ g: H -> K is told apart by some basis vector."""
    model = get_model(h.model)
    distinguished = equal_pairs = 0
    witness = None
    for _ in range(config.trials):
        f = model.random_morphism(h, k, rng)
        g = model.random_morphism(h, k, rng)
        if model.equal(f, g, config.tol):
            equal_pairs += 1
        elif distinguishing_vector(f, g, config.tol) is not None:
            distinguished += 1
        elif witness is None:
            witness = (f, g)
    return FaithfulnessVerdict(config.trials, distinguished, equal_pairs, witness)


def functor_preserves_biproducts(h: Obj, k: Obj) -> float:
    """Residual between C(I, i), C(I, j) and the block injections of 𝓗 ⊕ 𝓚."""
    model = get_model(h.model)
    _, i, j = model.biproduct(h, k)
    left = np.vstack([np.eye(h.dim), np.zeros((k.dim, h.dim))])
    right = np.vstack([np.zeros((h.dim, k.dim)), np.eye(k.dim)])
    return max(
        relative_residual(np.real(apply_functor(i).matrix).astype(float), left),
        relative_residual(np.real(apply_functor(j).matrix).astype(float), right),
    )


def essential_surjectivity(
    model: DaggerCategory, max_dim: int, tol: float = DEFAULT_TOL
) -> list[int]:
    """Dimensions n <= max_dim not realized as the global elements of some I^A."""
    missing = []
    for n in range(max_dim + 1):
        diagram = derived.build_standard_basis(range(n), model)
        gram = derived.gram_matrix([diagram.injections[a] for a in diagram.index_set])
        orthonormal = relative_residual(gram.astype(complex), np.eye(n)) <= tol
        complete = derived.basis_completeness_defect(diagram, tol) == 0
        if diagram.obj.dim != n or not (orthonormal and complete):
            missing.append(n)
    return missing


# Fullness


def _vector_cotuple(model: DaggerCategory, target: Obj, columns: NDArray[Any]) -> Mor:
    """The mediating map I^A -> H of the cocone of vectors, one per column."""
    vectors = (
        model.morphism(model.unit(), target, columns[:, [a]]) for a in range(columns.shape[1])
    )
    return reduce(model.copair, vectors, model.zero_morphism(model.zero_object(), target))


def lift_isometry(
    u: NDArray[Any],
    h_basis: derived.SubspaceONB,
    k_vectors: NDArray[Any] | None = None,
    target: Obj | None = None,
    tol: float = DEFAULT_TOL,
) -> Mor:
    """
    Lift an isometry U: 𝓗 -> 𝓚 to a morphism u = k_A ∘ h_A†.

    h_A and k_A are the dagger monos I^A -> H and I^A -> K out of the
    standard basis mediating the cocones of basis vectors h_a and their
    images k_a = U(h_a).

    Raises:
        NonIsometryError: if U*U ≠ id or the k-vectors are not U(h_a)
    """
    model = get_model(h_basis.ambient.model)
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[1] != h_basis.ambient.dim:
        raise ShapeMismatchError(
            f"U of shape {u.shape} does not act on dim {h_basis.ambient.dim}"
        )
    if relative_residual(u.conj().T @ u, np.eye(u.shape[1])) > tol:
        raise NonIsometryError("U*U differs from the identity")
    expected = u @ h_basis.basis
    k_vectors = expected if k_vectors is None else np.asarray(k_vectors)
    if k_vectors.shape != expected.shape or relative_residual(k_vectors, expected) > tol:
        raise NonIsometryError("k-vectors are not the images U(h_a)")

    target = model.obj(u.shape[0]) if target is None else target
    h_a = _vector_cotuple(model, h_basis.ambient, h_basis.basis)
    k_a = _vector_cotuple(model, target, k_vectors)
    for leg in (h_a, k_a):
        if not model.is_dagger_mono(leg, tol):
            raise NonIsometryError("Cocone legs are not orthonormal")
    return model.compose(k_a, model.dagger(h_a))


def isometry_decomposition(f: Mor, tol: float = DEFAULT_TOL) -> list[tuple[Any, NDArray[Any]]]:
    """
    Write F = C(I, f) as Σ c_k U_k with every U_k an isometry.

    From the SVD F = WΣV*: a complex square contraction is ½(V₊ + V₋) with
    V± = W exp(±i arccos Σ) V*; otherwise F = Σ_i (σ_i / 2)(W_n V* + W_n D_i V*)
    with D_i = 2 e_i e_iᵀ − id.

    Raises:
        ShapeMismatchError: if dim H > dim K
    """
    model = get_model(f.model)
    matrix = apply_functor(f).matrix
    rows, cols = matrix.shape
    if cols > rows:
        raise ShapeMismatchError(f"Need dim H <= dim K, got {cols} > {rows}")
    if cols == 0:
        return []
    w, sigma, vh = np.linalg.svd(matrix, full_matrices=True)
    complex_field = isinstance(model, FdHilb) and model.field is GroundField.COMPLEX
    if complex_field and rows == cols and sigma.max() <= 1 + tol:
        angles = np.arccos(np.clip(sigma, -1.0, 1.0))
        plus = w @ np.diag(np.exp(1j * angles)) @ vh
        minus = w @ np.diag(np.exp(-1j * angles)) @ vh
        return [(0.5, plus), (0.5, minus)]

    w_n = w[:, :cols]
    base = w_n @ vh
    terms: list[tuple[Any, NDArray[Any]]] = []
    for index, value in enumerate(sigma):
        flip = -np.eye(cols)
        flip[index, index] = 1.0
        terms.append((value / 2, base))
        terms.append((value / 2, w_n @ flip @ vh))
    return terms


def lift_linear_map(f: Mor, tol: float = DEFAULT_TOL) -> Mor:
    """Rebuild f as the linear combination of lifted isometries."""
    model = get_model(f.model)
    standard = derived.SubspaceONB(f.dom, np.eye(f.dom.dim))
    lifted = (
        derived.scale_morphism(
            model.scalar(coefficient), lift_isometry(u, standard, target=f.cod, tol=tol)
        )
        for coefficient, u in isometry_decomposition(f, tol)
    )
    return reduce(derived.add_morphisms, lifted, model.zero_morphism(f.dom, f.cod))


# Tensor comparison


def tensor_comparison(h: Obj, k: Obj) -> NDArray[Any]:
    """M_{H,K}: 𝓗 ⊗ 𝓚 -> C(I, H ⊗ K), column (a, b) the image of e_a ⊗ e_b."""
    model = get_model(h.model)
    columns = [
        np.real(model.point_tensor(a, b).payload[:, 0]).astype(float)
        for a in model.basis_vectors(h)
        for b in model.basis_vectors(k)
    ]
    if not columns:
        return np.zeros((h.dim * k.dim, 0))
    return np.column_stack(columns)


def comparison_unitarity(h: Obj, k: Obj) -> float:
    """Worst of ‖M*M − id‖ and ‖MM* − id‖."""
    m = tensor_comparison(h, k)
    n = h.dim * k.dim
    return max(
        relative_residual(m.conj().T @ m, np.eye(n)),
        relative_residual(m @ m.conj().T, np.eye(n)),
    )


def comparison_naturality(f: Mor, g: Mor) -> float:
    """Residual of C(I, f ⊗ g) ∘ M_{H,K} = M_{H',K'} ∘ (F ⊗ G)."""
    model = get_model(f.model)
    lhs = apply_functor(model.tensor(f, g)).matrix @ tensor_comparison(f.dom, g.dom)
    rhs = tensor_comparison(f.cod, g.cod) @ np.kron(
        apply_functor(f).matrix, apply_functor(g).matrix
    )
    return relative_residual(lhs, rhs)


def tensor_norm_check(h: Mor, k: Mor) -> float:
    """| ‖h ⊗ k‖ − ‖h‖ ‖k‖ | relative to the product of norms."""
    model = get_model(h.model)
    product = model.point_tensor(h, k).payload
    expected = float(np.linalg.norm(h.payload)) * float(np.linalg.norm(k.payload))
    return abs(float(np.linalg.norm(product)) - expected) / max(1.0, expected)


def _unit_vectors(dim: int) -> list[NDArray[np.float64]]:
    return list(np.eye(dim))


def hilbert_swap(h_dim: int, k_dim: int) -> NDArray[np.float64]:
    """B: 𝓗 ⊗ 𝓚 -> 𝓚 ⊗ 𝓗 defined on product basis vectors."""
    swap = np.zeros((h_dim * k_dim, h_dim * k_dim))
    for a in _unit_vectors(h_dim):
        for b in _unit_vectors(k_dim):
            swap += np.outer(np.kron(b, a), np.kron(a, b))
    return swap


def hilbert_associator(h_dim: int, k_dim: int, l_dim: int) -> NDArray[np.float64]:
    """A: (𝓗 ⊗ 𝓚) ⊗ 𝓛 -> 𝓗 ⊗ (𝓚 ⊗ 𝓛) defined on product basis vectors."""
    n = h_dim * k_dim * l_dim
    assoc = np.zeros((n, n))
    for a in _unit_vectors(h_dim):
        for b in _unit_vectors(k_dim):
            for c in _unit_vectors(l_dim):
                assoc += np.outer(np.kron(a, np.kron(b, c)), np.kron(np.kron(a, b), c))
    return assoc


def coherence_checks(
    h: Obj,
    k: Obj,
    l: Obj,  # noqa: E741
    tol: float = DEFAULT_TOL,
    rng: np.random.Generator | None = None,
) -> CoherenceVerdict:
    """
    Evaluate the symmetry, associator and unit squares along both paths.

    Paths are compared on all basis triples and, when rng is given, on one
    random triple of vectors.
    """
    model = get_model(h.model)
    m_hk, m_kh = tensor_comparison(h, k), tensor_comparison(k, h)
    swap = apply_functor(model.symmetry(h, k)).matrix
    assoc = apply_functor(model.associator(h, k, l)).matrix
    m_hk_l = tensor_comparison(model.tensor_obj(h, k), l)
    m_h_kl = tensor_comparison(h, model.tensor_obj(k, l))
    m_kl = tensor_comparison(k, l)
    hilbert_b = hilbert_swap(h.dim, k.dim)
    hilbert_a = hilbert_associator(h.dim, k.dim, l.dim)

    symmetry_path = swap @ m_hk
    symmetry_other = m_kh @ hilbert_b
    assoc_path = assoc @ m_hk_l @ np.kron(m_hk, np.eye(l.dim))
    assoc_other = m_h_kl @ np.kron(np.eye(h.dim), m_kl) @ hilbert_a
    unit_path = apply_functor(model.left_unitor(h)).matrix @ tensor_comparison(model.unit(), h)

    def on(a: NDArray[Any], b: NDArray[Any], vectors: NDArray[Any]) -> float:
        if vectors.size == 0:
            return 0.0
        return relative_residual(a @ vectors, b @ vectors)

    pairs = np.eye(h.dim * k.dim)
    triples = np.eye(h.dim * k.dim * l.dim)
    symmetry = on(symmetry_path, symmetry_other, pairs)
    associator = on(assoc_path, assoc_other, triples)
    unit = on(unit_path, np.eye(h.dim), np.eye(h.dim))

    if rng is not None:
        x, y, z = (rng.standard_normal(obj.dim) for obj in (h, k, l))
        symmetry = max(symmetry, on(symmetry_path, symmetry_other, np.kron(x, y)[:, None]))
        associator = max(
            associator, on(assoc_path, assoc_other, np.kron(np.kron(x, y), z)[:, None])
        )
    return CoherenceVerdict(symmetry, associator, unit, tol)


# Dagger duals


def dagger_dual(h: Obj, tol: float = DEFAULT_TOL) -> DualityWitness:
    """
    Cup Σ_a e_a ⊗ e_a: I -> H* ⊗ H with H* of the same dimension.

    The first snake is H ≅ H ⊗ I -> H ⊗ (H* ⊗ H) ≅ (H ⊗ H*) ⊗ H ≅ (H* ⊗ H) ⊗ H
    -> I ⊗ H ≅ H; the second is its mirror image on H*.

    Raises:
        ModelMismatchError: outside the Hilbert space models
    """
    model = get_model(h.model)
    if not isinstance(model, FdHilb):
        raise ModelMismatchError(f"Dagger duals are built in FdHilb, not {h.model}")
    dual = model.obj(h.dim)
    unit = model.unit()
    pair_obj = model.tensor_obj(dual, h)
    cup = reduce(
        derived.add_morphisms,
        (
            model.point_tensor(a, b)
            for a, b in zip(model.basis_vectors(dual), model.basis_vectors(h))
        ),
        model.zero_morphism(unit, pair_obj),
    )
    cap = model.dagger(cup)
    ident, dual_ident = model.identity(h), model.identity(dual)

    snake = _chain(
        model.dagger(model.right_unitor(h)),
        model.tensor(ident, cup),
        model.dagger(model.associator(h, dual, h)),
        model.tensor(model.symmetry(h, dual), ident),
        model.tensor(cap, ident),
        model.left_unitor(h),
    )
    mirror = _chain(
        model.dagger(model.left_unitor(dual)),
        model.tensor(cup, dual_ident),
        model.associator(dual, h, dual),
        model.tensor(dual_ident, model.compose(cap, model.symmetry(h, dual))),
        model.right_unitor(dual),
    )
    witness = DualityWitness(
        obj=h,
        dual=dual,
        cup=cup,
        cap=cap,
        residual=model.residual(snake, ident),
        mirror_residual=model.residual(mirror, dual_ident),
    )
    logger.debug(f"dagger dual of dim {h.dim}: snake residual {witness.residual:.3g}")
    return witness


def _chain(*steps: Mor) -> Mor:
    """Compose left to right: the first step is applied first."""
    return reduce(lambda acc, step: compose(step, acc), steps[1:], steps[0])
