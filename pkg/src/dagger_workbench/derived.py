"""
Structure derived from the axioms.

Scalars and their field operations, the vector space of parallel morphisms,
the ortholattice of projections, closed subspaces of global elements,
orthomodular decomposition and the standard bases I^A.

Operations are evaluated through the categorical composites (unitors,
biproduct cotuples, kernels) rather than payload arithmetic, so the same code
runs on every registered model.
"""

from collections.abc import Hashable, Iterable, Sequence
from dataclasses import dataclass, field
from functools import reduce
from typing import Any

import numpy as np
from numpy.typing import NDArray

from dagger_workbench.category import (
    DEFAULT_TOL,
    DaggerCategory,
    Mor,
    Obj,
    compose,
    dagger,
    get_model,
    kernel,
    tensor,
)
from dagger_workbench.core.exceptions import (
    ConfigurationError,
    DiagramError,
    DivisionByZeroError,
    NonIsometryError,
    ShapeMismatchError,
)
from dagger_workbench.core.logger import get_logger
from dagger_workbench.models.fdhilb import image_factorization
from dagger_workbench.models.finrel import FinRel

logger = get_logger(__name__)

# A scalar is a morphism I -> I.
Scalar = Mor


# Scalars


def scalar_mul(w: Scalar, z: Scalar) -> Scalar:
    """I ≅ I ⊗ I --w⊗z--> I ⊗ I ≅ I."""
    model = get_model(w.model)
    unitor = model.left_unitor(model.unit())
    return compose(unitor, compose(tensor(w, z), dagger(unitor)))


def scalar_add(w: Scalar, z: Scalar) -> Scalar:
    """I --(i j)†--> I ⊕ I --w⊕z--> I ⊕ I --(i j)--> I."""
    model = get_model(w.model)
    codiagonal = model.codiagonal(model.unit())
    return compose(codiagonal, compose(model.direct_sum(w, z), dagger(codiagonal)))


def scalar_conjugate(z: Scalar) -> Scalar:
    """The field involution z ↦ z†."""
    return dagger(z)


def scalar_inverse(z: Scalar, tol: float = DEFAULT_TOL) -> Scalar:
    """
    Multiplicative inverse of a nonzero scalar.

    A nonzero scalar factors through a one-dimensional image, which is the
    invertibility argument of the field lemma; the factorization is checked
    before inverting.

    Raises:
        DivisionByZeroError: if |z| <= tol
    """
    model = get_model(z.model)
    value = model.scalar_value(z)
    if abs(value) <= tol:
        raise DivisionByZeroError(f"Scalar {value} is zero within tolerance {tol}")
    if model.exact:
        # 1 is the only nonzero Boolean scalar and is its own inverse
        return z
    _, image = image_factorization(z, tol)
    if image.dom.dim != 1:
        raise DivisionByZeroError(f"Scalar {value} has a trivial image")
    return model.scalar(1 / value)


def scale_morphism(z: Scalar, f: Mor) -> Mor:
    """H ≅ I ⊗ H --z⊗f--> I ⊗ K ≅ K."""
    model = get_model(f.model)
    return compose(
        model.left_unitor(f.cod),
        compose(tensor(z, f), dagger(model.left_unitor(f.dom))),
    )


def add_morphisms(f: Mor, g: Mor) -> Mor:
    """H --(id id)†--> H ⊕ H --f⊕g--> K ⊕ K --(id id)--> K."""
    model = get_model(f.model)
    if f.dom != g.dom or f.cod != g.cod:
        raise ShapeMismatchError(f"Cannot add {f.shape} and {g.shape}")
    return compose(
        model.codiagonal(f.cod),
        compose(model.direct_sum(f, g), dagger(model.codiagonal(f.dom))),
    )


def negate(f: Mor) -> Mor:
    return scale_morphism(get_model(f.model).scalar(-1), f)


def subtract(f: Mor, g: Mor) -> Mor:
    return add_morphisms(f, negate(g))


def codiagonal_kernel_witness(model: DaggerCategory, tol: float = DEFAULT_TOL) -> Mor:
    """ker((i j): I ⊕ I -> I); nonzero exactly because additive inverses exist."""
    return kernel(model.codiagonal(model.unit()), tol)


def inner_product(f: Mor, g: Mor) -> Scalar:
    """⟨f|g⟩ = g† ∘ f for global elements f, g: I -> H."""
    if f.cod != g.cod:
        raise ShapeMismatchError("Vectors live in different objects")
    return compose(dagger(g), f)


def gram_matrix(vectors: Sequence[Mor]) -> NDArray[Any]:
    """Matrix of inner products ⟨v_b|v_a⟩ at position [a, b]."""
    if not vectors:
        return np.zeros((0, 0))
    model = get_model(vectors[0].model)
    return np.array(
        [[model.scalar_value(inner_product(b, a)) for b in vectors] for a in vectors]
    )


def complex_axiom_witness(
    model: DaggerCategory,
    rng: np.random.Generator,
    trials: int,
    tol: float = DEFAULT_TOL,
) -> Scalar | None:
    """
    Search for a scalar z with z† ≠ z.

    Exact models are enumerated, numeric ones sampled. Returns the first
    witness or None.
    """
    unit = model.unit()
    if isinstance(model, FinRel):
        candidates: Iterable[Mor] = model.enumerate_morphisms(unit, unit)
    else:
        candidates = (model.random_morphism(unit, unit, rng) for _ in range(trials))
    for z in candidates:
        if not model.equal(scalar_conjugate(z), z, tol):
            return z
    return None


# Projections


@dataclass(frozen=True)
class Projection:
    """An endomorphism p with p† ∘ p = p."""

    mor: Mor

    def __post_init__(self) -> None:
        if self.mor.dom != self.mor.cod:
            raise ShapeMismatchError("A projection is an endomorphism")

    @property
    def obj(self) -> Obj:
        return self.mor.dom

    @classmethod
    def of(cls, p: Mor, tol: float = DEFAULT_TOL) -> "Projection":
        """Wrap p after checking p† ∘ p = p."""
        if not get_model(p.model).is_projection(p, tol):
            raise ValueError("Morphism does not satisfy p† ∘ p = p")
        return cls(p)


def proj_bottom(h: Obj) -> Projection:
    return Projection(get_model(h.model).zero_morphism(h, h))


def proj_top(h: Obj) -> Projection:
    return Projection(get_model(h.model).identity(h))


def proj_complement(p: Projection) -> Projection:
    """p^⊥ = id_H − p."""
    model = get_model(p.mor.model)
    return Projection(subtract(model.identity(p.obj), p.mor))


def proj_leq(p: Projection, q: Projection, tol: float = DEFAULT_TOL) -> bool:
    """p ≤ q iff q ∘ p = p."""
    if p.obj != q.obj:
        raise ShapeMismatchError("Projections on different objects")
    return get_model(p.mor.model).equal(compose(q.mor, p.mor), p.mor, tol)


def proj_meet(p: Projection, q: Projection, tol: float = DEFAULT_TOL) -> Projection:
    """Projection onto range(p) ∩ range(q): the kernel of ⟨p^⊥, q^⊥⟩."""
    if p.obj != q.obj:
        raise ShapeMismatchError("Projections on different objects")
    model = get_model(p.mor.model)
    stacked = model.pair(proj_complement(p).mor, proj_complement(q).mor)
    return Projection(model.range_projection(kernel(stacked, tol)))


def proj_join(p: Projection, q: Projection, tol: float = DEFAULT_TOL) -> Projection:
    """p ∨ q = (p^⊥ ∧ q^⊥)^⊥."""
    return proj_complement(proj_meet(proj_complement(p), proj_complement(q), tol))


def proj_join_many(
    projections: Iterable[Projection], h: Obj, tol: float = DEFAULT_TOL
) -> Projection:
    """Finite join, with the empty join the zero projection on h."""
    return reduce(lambda acc, p: proj_join(acc, p, tol), projections, proj_bottom(h))


def proj_directed_sup(
    family: Sequence[Projection], tol: float = DEFAULT_TOL
) -> Projection:
    """
    Supremum of a finite directed family of projections.

    A finite family is directed exactly when it has a greatest element, and
    that element is its supremum.

    Raises:
        DiagramError: if the family is empty or not directed
    """
    if not family:
        raise DiagramError("A directed family is nonempty")
    for candidate in family:
        if all(proj_leq(p, candidate, tol) for p in family):
            return candidate
    raise DiagramError("Family has no greatest element, so it is not directed")


def proj_from_vector(h: Mor, tol: float = DEFAULT_TOL) -> Projection:
    """p_h = (h ∘ h†) · (h† ∘ h)⁻¹ for a nonzero vector h: I -> H."""
    model = get_model(h.model)
    norm_squared = compose(dagger(h), h)
    if abs(model.scalar_value(norm_squared)) <= tol * tol:
        raise DivisionByZeroError("p_h is undefined for the zero vector")
    inverse = scalar_inverse(norm_squared, tol * tol)
    return Projection(scale_morphism(inverse, compose(h, dagger(h))))


# Closed subspaces of global elements


@dataclass(frozen=True)
class SubspaceONB:
    """A closed subspace V of 𝓗 = C(I, H) given by orthonormal columns."""

    ambient: Obj
    basis: NDArray[Any]

    def __post_init__(self) -> None:
        if self.basis.ndim != 2 or self.basis.shape[0] != self.ambient.dim:
            raise ShapeMismatchError(
                f"Basis shape {self.basis.shape} does not fit dim {self.ambient.dim}"
            )
        columns = np.asarray(self.basis, dtype=np.complex128)
        gram = columns.conj().T @ columns
        defect = float(np.linalg.norm(gram - np.eye(self.dim)))
        if defect > DEFAULT_TOL * max(1, self.dim):
            raise NonIsometryError(
                f"Basis columns are not orthonormal: ‖B†B − id‖ = {defect:.3g}"
            )

    @property
    def dim(self) -> int:
        return int(self.basis.shape[1])

    def inclusion(self) -> Mor:
        """The dagger mono I^dim -> H whose columns are the basis."""
        model = get_model(self.ambient.model)
        return model.morphism(model.obj(self.dim), self.ambient, self.basis)

    def vectors(self) -> list[Mor]:
        model = get_model(self.ambient.model)
        return [
            model.morphism(model.unit(), self.ambient, self.basis[:, [column]])
            for column in range(self.dim)
        ]

    def range_projection(self) -> NDArray[Any]:
        return self.basis @ self.basis.conj().T


def projection_to_subspace(p: Projection, tol: float = DEFAULT_TOL) -> SubspaceONB:
    """p ↦ p ∘ 𝓗, computed as ker(p^⊥) since h ∈ p ∘ 𝓗 iff p^⊥ ∘ h = 0."""
    return SubspaceONB(p.obj, np.array(kernel(proj_complement(p).mor, tol).payload))


def subspace_to_projection(v: SubspaceONB, tol: float = DEFAULT_TOL) -> Projection:
    """The join of p_v over the basis vectors of V."""
    return proj_join_many(
        (proj_from_vector(vector, tol) for vector in v.vectors()), v.ambient, tol
    )


def subspace_orthocomplement(v: SubspaceONB, tol: float = DEFAULT_TOL) -> SubspaceONB:
    """V^⊥ = ker(ι†) for the inclusion ι of V."""
    return SubspaceONB(v.ambient, np.array(kernel(dagger(v.inclusion()), tol).payload))


def subspace_leq(v: SubspaceONB, w: SubspaceONB, tol: float = DEFAULT_TOL) -> bool:
    """V ⊆ W, tested as P_W V = V."""
    if v.ambient != w.ambient:
        raise ShapeMismatchError("Subspaces of different objects")
    projected = w.range_projection() @ v.basis
    scale = max(1.0, float(np.linalg.norm(v.basis)))
    return float(np.linalg.norm(projected - v.basis)) <= tol * scale


def is_closed(v: SubspaceONB, tol: float = DEFAULT_TOL) -> bool:
    """V^⊥⊥ = V, compared through range projections."""
    double = subspace_orthocomplement(subspace_orthocomplement(v, tol), tol)
    difference = double.range_projection() - v.range_projection()
    return float(np.linalg.norm(difference)) <= tol * max(1, v.ambient.dim)


def orthomodular_decompose(v: Mor, p: Projection) -> tuple[Mor, Mor]:
    """v = (p ∘ v) + (p^⊥ ∘ v), the two parts orthogonal."""
    if v.cod != p.obj:
        raise ShapeMismatchError("Vector and projection live on different objects")
    return compose(p.mor, v), compose(proj_complement(p).mor, v)


# Standard bases


@dataclass(frozen=True)
class StandardBasisDiagram:
    """
    The object I^A with its injections e_a and inclusions i_{R,S}.

    I^A is the iterated biproduct of copies of I in the order of A, so for
    finite A it is the greatest element of the diagram of finite subsets.
    """

    index_set: tuple[Hashable, ...]
    obj: Obj
    injections: dict[Hashable, Mor] = field(default_factory=dict)

    def _ordered(self, subset: Iterable[Hashable]) -> tuple[Hashable, ...]:
        members = set(subset)
        unknown = members - set(self.index_set)
        if unknown:
            raise ValueError(f"{sorted(map(str, unknown))} not in the index set")
        return tuple(a for a in self.index_set if a in members)

    def power(self, subset: Iterable[Hashable]) -> tuple[Obj, dict[Hashable, Mor]]:
        """I^S with its injections I -> I^S."""
        return _iterated_biproduct(get_model(self.obj.model), self._ordered(subset))

    def inclusion(self, r: Iterable[Hashable], s: Iterable[Hashable]) -> Mor:
        """i_{R,S}: I^R -> I^S for R ⊆ S."""
        r_members, s_members = self._ordered(r), self._ordered(s)
        if not set(r_members) <= set(s_members):
            raise ValueError("i_{R,S} needs R ⊆ S")
        model = get_model(self.obj.model)
        target, injections = self.power(s_members)
        return reduce(
            model.copair,
            (injections[a] for a in r_members),
            model.zero_morphism(model.zero_object(), target),
        )


def _iterated_biproduct(
    model: DaggerCategory, members: Sequence[Hashable]
) -> tuple[Obj, dict[Hashable, Mor]]:
    total = model.zero_object()
    injections: dict[Hashable, Mor] = {}
    for member in members:
        summand = model.biproduct(total, model.unit())
        injections = {a: compose(summand.i, e) for a, e in injections.items()}
        injections[member] = summand.j
        total = summand.obj
    return total, injections


def build_standard_basis(
    index_set: Iterable[Hashable],
    model: DaggerCategory,
    bound: int | None = None,
) -> StandardBasisDiagram:
    """
    Build I^A and its orthonormal family e_a = i_{{a},A}.

    Raises:
        ConfigurationError: if |A| exceeds the bound
    """
    members = tuple(dict.fromkeys(index_set))
    if bound is not None and len(members) > bound:
        raise ConfigurationError(f"|A| = {len(members)} exceeds the bound {bound}")
    total, injections = _iterated_biproduct(model, members)
    logger.debug(f"built I^A with |A| = {len(members)}")
    return StandardBasisDiagram(members, total, injections)


def basis_completeness_defect(
    diagram: StandardBasisDiagram, tol: float = DEFAULT_TOL
) -> int:
    """
    Dimension of the space of vectors orthogonal to every e_a.

    Those vectors form the kernel of the tuple of the e_a†; zero means only
    the zero vector is orthogonal to the whole family.
    """
    model = get_model(diagram.obj.model)
    if not diagram.index_set:
        return diagram.obj.dim
    cotuple = reduce(
        model.copair,
        (diagram.injections[a] for a in diagram.index_set),
        model.zero_morphism(model.zero_object(), diagram.obj),
    )
    return kernel(dagger(cotuple), tol).dom.dim
