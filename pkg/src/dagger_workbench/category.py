"""
Dagger symmetric monoidal categories with biproducts and dagger equalisers.

This module is the language-level contract every concrete model implements:
objects, morphisms, the dagger, composition, the Kronecker-ordered tensor,
dagger biproducts, dagger equalisers and kernels, plus the coherence
morphisms of the monoidal structure.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import StrEnum
from typing import Any, NamedTuple

import numpy as np
from numpy.typing import NDArray

from dagger_workbench.core.config import DEFAULT_TOL, ModelId
from dagger_workbench.core.exceptions import (
    CompositionError,
    ConfigurationError,
    ModelMismatchError,
    ShapeMismatchError,
)

__all__ = [
    "DEFAULT_TOL",
    "AxiomId",
    "AxiomVerdict",
    "Biproduct",
    "DaggerCategory",
    "ModelId",
    "Mor",
    "Obj",
    "biproduct",
    "compose",
    "dagger",
    "dagger_equaliser",
    "get_model",
    "kernel",
    "register_model",
    "tensor",
]

_PAYLOAD_DTYPES: dict[ModelId, type] = {
    ModelId.FDHILB_R: np.float64,
    ModelId.FDHILB_C: np.complex128,
    ModelId.FINREL: np.bool_,
}


@dataclass(frozen=True)
class Obj:
    """An object of a model: a dimension (FdHilb) or carrier size (FinRel)."""

    model: ModelId
    dim: int

    def __post_init__(self) -> None:
        if self.dim < 0:
            raise ValueError(f"Object dimension must be >= 0, got {self.dim}")

    @property
    def is_zero(self) -> bool:
        return self.dim == 0

    @property
    def carrier(self) -> tuple[int, ...]:
        """The finite carrier set {0, ..., dim - 1}."""
        return tuple(range(self.dim))


def _coerce_payload(model: ModelId, payload: Any) -> NDArray[Any]:
    array = np.array(payload, copy=True)
    target = _PAYLOAD_DTYPES[model]
    if model is ModelId.FINREL:
        if array.size and not np.isin(array, (0, 1)).all():
            raise ValueError("Relation payloads must be Boolean")
        return array.astype(np.bool_)
    if array.size and not np.isfinite(array).all():
        raise ValueError("Payload entries must be finite")
    if model is ModelId.FDHILB_R and np.iscomplexobj(array):
        if array.size and np.any(array.imag != 0):
            raise ValueError("Real model received complex entries")
        array = array.real
    return array.astype(target)


@dataclass(frozen=True, eq=False)
class Mor:
    """A morphism dom -> cod with a (dim cod) x (dim dom) payload matrix."""

    dom: Obj
    cod: Obj
    payload: NDArray[Any]

    def __post_init__(self) -> None:
        if self.dom.model != self.cod.model:
            raise ModelMismatchError(
                f"Domain lives in {self.dom.model}, codomain in {self.cod.model}"
            )
        array = _coerce_payload(self.dom.model, self.payload)
        if array.ndim != 2 or array.shape != (self.cod.dim, self.dom.dim):
            raise ShapeMismatchError(
                f"Payload shape {array.shape} does not match "
                f"{self.cod.dim}x{self.dom.dim}"
            )
        array.setflags(write=False)
        object.__setattr__(self, "payload", array)

    @property
    def model(self) -> ModelId:
        return self.dom.model

    @property
    def shape(self) -> tuple[int, int]:
        return (self.cod.dim, self.dom.dim)

    def __repr__(self) -> str:
        return f"Mor({self.dom.dim} -> {self.cod.dim}, {self.model})"


class AxiomId(StrEnum):
    """The axioms checked by the workbench."""

    D = "D"
    T = "T"
    B = "B"
    E = "E"
    K = "K"
    C_FINITE = "C-finite"


@dataclass(frozen=True)
class AxiomVerdict:
    """Outcome of checking one axiom on one model."""

    axiom: AxiomId
    passed: bool
    residual: float
    witness: tuple[Mor, ...] | None = None
    trials: int = 0
    detail: str = ""


class Biproduct(NamedTuple):
    """A dagger biproduct H ⊕ K with its injections."""

    obj: Obj
    i: Mor
    j: Mor


class DaggerCategory(ABC):
    """
    A concrete dagger symmetric monoidal category with dagger biproducts.

    Subclasses supply the payload arithmetic; everything expressible through
    the biproduct and monoidal structure is defined here once.
    """

    model_id: ModelId
    exact: bool = False

    # Objects

    def obj(self, dim: int) -> Obj:
        return Obj(self.model_id, dim)

    def unit(self) -> Obj:
        return self.obj(1)

    def zero_object(self) -> Obj:
        return self.obj(0)

    def tensor_obj(self, h: Obj, k: Obj) -> Obj:
        self._check_model(h, k)
        return self.obj(h.dim * k.dim)

    def random_object(self, rng: np.random.Generator, dim_min: int, dim_max: int) -> Obj:
        return self.obj(int(rng.integers(dim_min, dim_max + 1)))

    # Morphisms

    def morphism(self, dom: Obj, cod: Obj, payload: Any) -> Mor:
        self._check_model(dom, cod)
        return Mor(dom, cod, payload)

    def identity(self, h: Obj) -> Mor:
        return self.morphism(h, h, np.eye(h.dim))

    def zero_morphism(self, h: Obj, k: Obj) -> Mor:
        return self.morphism(h, k, np.zeros((k.dim, h.dim)))

    def scalar(self, value: Any) -> Mor:
        unit = self.unit()
        return self.morphism(unit, unit, [[value]])

    @staticmethod
    def scalar_value(z: Mor) -> Any:
        if z.shape != (1, 1):
            raise ShapeMismatchError(f"Scalars are 1x1, got {z.shape}")
        return z.payload[0, 0].item()

    def basis_vector(self, h: Obj, index: int) -> Mor:
        """The standard point e_index: I -> H."""
        column = np.zeros((h.dim, 1))
        column[index, 0] = 1
        return self.morphism(self.unit(), h, column)

    def basis_vectors(self, h: Obj) -> list[Mor]:
        return [self.basis_vector(h, index) for index in range(h.dim)]

    @abstractmethod
    def compose(self, g: Mor, f: Mor) -> Mor:
        """Return g ∘ f."""

    @abstractmethod
    def dagger(self, f: Mor) -> Mor:
        """Return f†: cod -> dom."""

    @abstractmethod
    def tensor(self, f: Mor, g: Mor) -> Mor:
        """Return f ⊗ g in the lexicographic Kronecker ordering."""

    @abstractmethod
    def copair(self, f: Mor, g: Mor) -> Mor:
        """Return the cotuple (f g): H ⊕ K -> L of f: H -> L and g: K -> L."""

    @abstractmethod
    def dagger_equaliser(self, f: Mor, g: Mor, tol: float = DEFAULT_TOL) -> Mor:
        """Return a dagger mono e with f ∘ e = g ∘ e, universal among such."""

    @abstractmethod
    def residual(self, f: Mor, g: Mor) -> float:
        """Distance between parallel morphisms; 0 means equal."""

    @abstractmethod
    def random_morphism(self, h: Obj, k: Obj, rng: np.random.Generator) -> Mor:
        """Draw a morphism h -> k from the model's generic distribution."""

    @abstractmethod
    def random_dagger_mono(self, h: Obj, k: Obj, rng: np.random.Generator) -> Mor:
        """Draw a dagger monomorphism h -> k; requires dim h <= dim k."""

    def equal(self, f: Mor, g: Mor, tol: float = DEFAULT_TOL) -> bool:
        return self.residual(f, g) <= tol

    # Biproducts

    def biproduct(self, h: Obj, k: Obj) -> Biproduct:
        self._check_model(h, k)
        total = self.obj(h.dim + k.dim)
        i = np.vstack([np.eye(h.dim), np.zeros((k.dim, h.dim))])
        j = np.vstack([np.zeros((h.dim, k.dim)), np.eye(k.dim)])
        return Biproduct(
            total, self.morphism(h, total, i), self.morphism(k, total, j)
        )

    def direct_sum(self, f: Mor, g: Mor) -> Mor:
        """f ⊕ g: H ⊕ K -> L ⊕ M assembled from the codomain injections."""
        target = self.biproduct(f.cod, g.cod)
        return self.copair(
            self.compose(target.i, f), self.compose(target.j, g)
        )

    def pair(self, f: Mor, g: Mor) -> Mor:
        """The tuple ⟨f, g⟩: H -> K ⊕ L, the dagger of the cotuple of daggers."""
        return self.dagger(self.copair(self.dagger(f), self.dagger(g)))

    def codiagonal(self, h: Obj) -> Mor:
        """(id id): H ⊕ H -> H."""
        ident = self.identity(h)
        return self.copair(ident, ident)

    def kernel(self, f: Mor, tol: float = DEFAULT_TOL) -> Mor:
        return self.dagger_equaliser(f, self.zero_morphism(f.dom, f.cod), tol)

    # Monoidal coherence

    def _permutation(self, dom: Obj, cod: Obj, pairs: list[tuple[int, int]]) -> Mor:
        matrix = np.zeros((cod.dim, dom.dim))
        for target, source in pairs:
            matrix[target, source] = 1
        return self.morphism(dom, cod, matrix)

    def associator(self, h: Obj, k: Obj, l: Obj) -> Mor:  # noqa: E741
        """(H ⊗ K) ⊗ L -> H ⊗ (K ⊗ L)."""
        dom = self.tensor_obj(self.tensor_obj(h, k), l)
        cod = self.tensor_obj(h, self.tensor_obj(k, l))
        pairs = [
            (a * (k.dim * l.dim) + b * l.dim + c, (a * k.dim + b) * l.dim + c)
            for a in range(h.dim)
            for b in range(k.dim)
            for c in range(l.dim)
        ]
        return self._permutation(dom, cod, pairs)

    def left_unitor(self, h: Obj) -> Mor:
        """I ⊗ H -> H."""
        dom = self.tensor_obj(self.unit(), h)
        return self._permutation(dom, h, [(a, a) for a in range(h.dim)])

    def right_unitor(self, h: Obj) -> Mor:
        """H ⊗ I -> H."""
        dom = self.tensor_obj(h, self.unit())
        # (a, 0) sits at index a * 1 + 0 of H ⊗ I
        return self._permutation(dom, h, [(a, a) for a in range(h.dim)])

    def symmetry(self, h: Obj, k: Obj) -> Mor:
        """b: H ⊗ K -> K ⊗ H."""
        dom = self.tensor_obj(h, k)
        cod = self.tensor_obj(k, h)
        pairs = [
            (b * h.dim + a, a * k.dim + b) for a in range(h.dim) for b in range(k.dim)
        ]
        return self._permutation(dom, cod, pairs)

    def point_tensor(self, h: Mor, k: Mor) -> Mor:
        """h ⊗ k for points I -> H, I -> K, precomposed with I ≅ I ⊗ I."""
        unit = self.unit()
        return self.compose(self.tensor(h, k), self.dagger(self.left_unitor(unit)))

    # Predicates

    def is_dagger_mono(self, f: Mor, tol: float = DEFAULT_TOL) -> bool:
        return self.equal(self.compose(self.dagger(f), f), self.identity(f.dom), tol)

    def is_dagger_iso(self, f: Mor, tol: float = DEFAULT_TOL) -> bool:
        return self.is_dagger_mono(f, tol) and self.is_dagger_mono(self.dagger(f), tol)

    def is_projection(self, p: Mor, tol: float = DEFAULT_TOL) -> bool:
        return p.dom == p.cod and self.equal(self.compose(self.dagger(p), p), p, tol)

    def range_projection(self, m: Mor) -> Mor:
        """The projection m ∘ m† of a dagger subobject m."""
        return self.compose(m, self.dagger(m))

    def subobject_complement(self, m: Mor, tol: float = DEFAULT_TOL) -> Mor:
        """Orthocomplement of a dagger subobject: ker(m†)."""
        return self.kernel(self.dagger(m), tol)

    # Helpers

    def _check_model(self, *items: Obj | Mor) -> None:
        for item in items:
            model = item.model if isinstance(item, Obj) else item.dom.model
            if model != self.model_id:
                raise ModelMismatchError(
                    f"{item!r} belongs to {model}, not {self.model_id}"
                )

    def _check_composable(self, g: Mor, f: Mor) -> None:
        self._check_model(g, f)
        if f.cod != g.dom:
            raise CompositionError(
                f"Cannot compose: f.cod has dim {f.cod.dim}, g.dom has dim {g.dom.dim}"
            )

    def _check_parallel(self, f: Mor, g: Mor) -> None:
        self._check_model(f, g)
        if f.dom != g.dom or f.cod != g.cod:
            raise ShapeMismatchError(
                f"Morphisms are not parallel: {f.shape} vs {g.shape}"
            )


_REGISTRY: dict[ModelId, DaggerCategory] = {}


def register_model(model: DaggerCategory) -> DaggerCategory:
    """Make a model instance available to :func:`get_model`."""
    _REGISTRY[model.model_id] = model
    return model


def get_model(model_id: ModelId | str) -> DaggerCategory:
    """
    Look up the registered model for an id.

    Raises:
        ConfigurationError: for unknown model ids
    """
    if not _REGISTRY:
        import dagger_workbench.models  # noqa: F401  registers the concrete models

    try:
        return _REGISTRY[ModelId(model_id)]
    except (KeyError, ValueError) as e:
        raise ConfigurationError(f"Unknown model: {model_id}") from e


def compose(g: Mor, f: Mor) -> Mor:
    return get_model(f.model).compose(g, f)


def dagger(f: Mor) -> Mor:
    return get_model(f.model).dagger(f)


def tensor(f: Mor, g: Mor) -> Mor:
    return get_model(f.model).tensor(f, g)


def biproduct(h: Obj, k: Obj) -> Biproduct:
    return get_model(h.model).biproduct(h, k)


def dagger_equaliser(f: Mor, g: Mor, tol: float = DEFAULT_TOL) -> Mor:
    return get_model(f.model).dagger_equaliser(f, g, tol)


def kernel(f: Mor, tol: float = DEFAULT_TOL) -> Mor:
    return get_model(f.model).kernel(f, tol)
