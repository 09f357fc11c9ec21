"""
The category of finite sets and relations.

FinRel satisfies the dagger, monoidal and biproduct axioms exactly but has no
dagger equalisers in general and its scalars form the Boolean semiring, so it
is the workbench's control model: predicates that pass here for the wrong
reasons would expose a vacuous suite.
"""

import itertools
from collections.abc import Iterator
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray

from dagger_workbench.category import DEFAULT_TOL, DaggerCategory, ModelId, Mor, Obj
from dagger_workbench.core.config import FINREL_MAX_SEARCH_BOUND
from dagger_workbench.core.exceptions import (
    EqualiserUnavailableError,
    SearchBoundError,
    ShapeMismatchError,
)
from dagger_workbench.core.logger import get_logger

logger = get_logger(__name__)

BoolMatrix = NDArray[np.bool_]

# Relations enumerated exhaustively by the separator check
_SEPARATOR_EXHAUSTIVE_BITS = 16


def rel_compose(g: BoolMatrix, f: BoolMatrix) -> BoolMatrix:
    """Boolean matrix product: (g ∘ f)[z, x] = ∨_y g[z, y] ∧ f[y, x]."""
    if g.shape[1] != f.shape[0]:
        raise ShapeMismatchError(f"Cannot compose {g.shape} after {f.shape}")
    return (g.astype(np.int64) @ f.astype(np.int64)) > 0


def rel_converse(r: BoolMatrix) -> BoolMatrix:
    return np.ascontiguousarray(r.T)


def rel_tensor(a: BoolMatrix, b: BoolMatrix) -> BoolMatrix:
    """Product relation on pairs, ordered lexicographically."""
    product = np.einsum("ij,kl->ikjl", a.astype(np.int64), b.astype(np.int64))
    return product.reshape(a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]) > 0


@dataclass(frozen=True)
class EqualiserSearchResult:
    """Outcome of a bounded exhaustive equaliser search."""

    found: bool
    equaliser: tuple[Obj, BoolMatrix] | None
    search_bound: int
    # relations e with f ∘ e = g ∘ e visited before stopping
    candidates_examined: int = 0
    cone_columns: int = 0
    dagger_mono: bool = False


@dataclass(frozen=True)
class ScalarSemiringVerdict:
    """Outcome of testing the FinRel scalars for field structure."""

    is_field: bool
    sums: dict[tuple[bool, bool], bool] = field(default_factory=dict)
    products: dict[tuple[bool, bool], bool] = field(default_factory=dict)
    additive_inverse_of_one: bool | None = None
    witness: str = ""


def search_cost(domain_size: int, max_size: int) -> int:
    """Number of candidate relations E -> H with |E| <= max_size."""
    return sum(2 ** (domain_size * n) for n in range(max_size + 1))


def _cone_columns(f: BoolMatrix, g: BoolMatrix) -> frozenset[int]:
    """Subsets c of H (as bitmasks) with f ∘ c = g ∘ c."""
    size = f.shape[1]
    cones = set()
    for mask in range(2**size):
        column = np.array([(mask >> x) & 1 for x in range(size)], dtype=bool)
        if np.array_equal(rel_compose(f, column[:, None]), rel_compose(g, column[:, None])):
            cones.add(mask)
    return frozenset(cones)


def _columns_to_matrix(columns: tuple[int, ...], size: int) -> BoolMatrix:
    matrix = np.zeros((size, len(columns)), dtype=bool)
    for y, mask in enumerate(columns):
        for x in range(size):
            matrix[x, y] = bool((mask >> x) & 1)
    return matrix


def equaliser_search(
    f: BoolMatrix,
    g: BoolMatrix,
    max_size: int,
    limit: int | None = None,
) -> EqualiserSearchResult:
    """
    Exhaustively search for an equaliser e: E -> H of f, g with |E| <= max_size.

    A cone m: M -> H with f ∘ m = g ∘ m factors through e column by column,
    and u: M -> E is unique exactly when each column of m is the union of one
    and only one set of columns of e. Checking every single-column cone
    therefore checks every cone with apex up to max_size. The empty apex is
    universal only when the empty set is the sole cone column.

    Raises:
        ShapeMismatchError: if f and g are not parallel
        SearchBoundError: if max_size exceeds the configured limit
    """
    if f.shape != g.shape:
        raise ShapeMismatchError(f"Relations are not parallel: {f.shape} vs {g.shape}")
    limit = FINREL_MAX_SEARCH_BOUND if limit is None else limit
    size = f.shape[1]
    if max_size > limit:
        cost = search_cost(size, max_size)
        raise SearchBoundError(
            f"Apex bound {max_size} exceeds limit {limit}; "
            f"about {cost} candidate relations",
            estimated_cost=cost,
        )

    cones = _cone_columns(np.asarray(f, dtype=bool), np.asarray(g, dtype=bool))
    # e satisfies f ∘ e = g ∘ e iff every column of e is a cone column
    candidates = sorted(cones)
    examined = 0
    for apex in range(max_size + 1):
        for columns in itertools.product(candidates, repeat=apex):
            examined += 1
            unions = [0]
            for column in columns:
                unions += [union | column for union in unions]
            if len(unions) != len(cones) or set(unions) != cones:
                continue
            matrix = _columns_to_matrix(columns, size)
            dagger_mono = all(columns) and all(
                a & b == 0 for a, b in itertools.combinations(columns, 2)
            )
            logger.debug(f"equaliser found with apex {apex} after {examined} candidates")
            return EqualiserSearchResult(
                found=True,
                equaliser=(Obj(ModelId.FINREL, apex), matrix),
                search_bound=max_size,
                candidates_examined=examined,
                cone_columns=len(cones),
                dagger_mono=dagger_mono,
            )

    return EqualiserSearchResult(
        found=False,
        equaliser=None,
        search_bound=max_size,
        candidates_examined=examined,
        cone_columns=len(cones),
    )


def axiom_e_witness() -> tuple[Mor, Mor]:
    """The pinned pair f = {0,1} × {*}, g = {(0, *)} with no equaliser."""
    two, point = Obj(ModelId.FINREL, 2), Obj(ModelId.FINREL, 1)
    return Mor(two, point, [[1, 1]]), Mor(two, point, [[1, 0]])


def scalar_field_check_rel() -> ScalarSemiringVerdict:
    """
    Evaluate the composite scalar addition and multiplication on {0, 1}.

    The scalars of FinRel are the Boolean semiring: 1 + 1 = 1 and nothing
    added to 1 gives 0, so they cannot form a field.
    """
    # Imported here: the derived constructions depend on the model registry.
    from dagger_workbench import derived

    model = FINREL_MODEL
    values = (False, True)
    sums: dict[tuple[bool, bool], bool] = {}
    products: dict[tuple[bool, bool], bool] = {}
    for w, z in itertools.product(values, repeat=2):
        ws, zs = model.scalar(w), model.scalar(z)
        sums[(w, z)] = bool(model.scalar_value(derived.scalar_add(ws, zs)))
        products[(w, z)] = bool(model.scalar_value(derived.scalar_mul(ws, zs)))

    inverses = [x for x in values if not sums[(True, x)]]
    inverse = inverses[0] if inverses else None
    witness = "" if inverses else "no x with 1 + x = 0"
    logger.info(f"FinRel scalar semiring: 1 + 1 = {int(sums[(True, True)])}")
    return ScalarSemiringVerdict(
        is_field=inverse is not None,
        sums=sums,
        products=products,
        additive_inverse_of_one=inverse,
        witness=witness,
    )


class FinRel(DaggerCategory):
    """Finite sets as objects, relations as Boolean matrices."""

    model_id = ModelId.FINREL
    exact = True

    def compose(self, g: Mor, f: Mor) -> Mor:
        self._check_composable(g, f)
        return Mor(f.dom, g.cod, rel_compose(g.payload, f.payload))

    def dagger(self, f: Mor) -> Mor:
        self._check_model(f)
        return Mor(f.cod, f.dom, rel_converse(f.payload))

    def tensor(self, f: Mor, g: Mor) -> Mor:
        self._check_model(f, g)
        return Mor(
            self.tensor_obj(f.dom, g.dom),
            self.tensor_obj(f.cod, g.cod),
            rel_tensor(f.payload, g.payload),
        )

    def copair(self, f: Mor, g: Mor) -> Mor:
        self._check_model(f, g)
        if f.cod != g.cod:
            raise ShapeMismatchError(
                f"Cotuple legs need a common codomain: {f.cod.dim} vs {g.cod.dim}"
            )
        dom = self.obj(f.dom.dim + g.dom.dim)
        return Mor(dom, f.cod, np.hstack([f.payload, g.payload]))

    def dagger_equaliser(self, f: Mor, g: Mor, tol: float = DEFAULT_TOL) -> Mor:
        """
        Search for a dagger equaliser; any equaliser has |E| <= |H|.

        Raises:
            EqualiserUnavailableError: when no dagger equaliser exists
        """
        self._check_parallel(f, g)
        result = equaliser_search(f.payload, g.payload, max_size=f.dom.dim)
        if not result.found or result.equaliser is None or not result.dagger_mono:
            raise EqualiserUnavailableError(
                f"No dagger equaliser with apex <= {f.dom.dim}", search_result=result
            )
        apex, matrix = result.equaliser
        return Mor(apex, f.dom, matrix)

    def residual(self, f: Mor, g: Mor) -> float:
        self._check_parallel(f, g)
        return 0.0 if np.array_equal(f.payload, g.payload) else 1.0

    def random_morphism(self, h: Obj, k: Obj, rng: np.random.Generator) -> Mor:
        self._check_model(h, k)
        return Mor(h, k, rng.random((k.dim, h.dim)) < 0.5)

    def random_dagger_mono(self, h: Obj, k: Obj, rng: np.random.Generator) -> Mor:
        """A converse of a surjective partial function: disjoint nonempty columns."""
        self._check_model(h, k)
        if h.dim > k.dim:
            raise ValueError(f"No dagger mono from {h.dim} points into {k.dim}")
        order = rng.permutation(k.dim)
        payload = np.zeros((k.dim, h.dim), dtype=bool)
        for column, row in enumerate(order[: h.dim]):
            payload[row, column] = True
        if h.dim:
            for row in order[h.dim :]:
                column = int(rng.integers(-1, h.dim))
                if column >= 0:
                    payload[row, column] = True
        return Mor(h, k, payload)

    def enumerate_morphisms(self, h: Obj, k: Obj) -> Iterator[Mor]:
        """Every relation h -> k, in bitmask order."""
        bits = h.dim * k.dim
        for mask in range(2**bits):
            flat = [(mask >> bit) & 1 for bit in range(bits)]
            yield Mor(h, k, np.array(flat, dtype=bool).reshape(k.dim, h.dim))


FINREL_MODEL = FinRel()


def separator_check(
    h: Obj, k: Obj, l: Obj, rng: np.random.Generator, samples: int = 64  # noqa: E741
) -> tuple[int, int]:
    """
    Check that relations H ⊗ K -> L are determined by their singleton rectangles.

    Every relation is rebuilt as the union of f ∘ (e_a ⊗ e_b) ∘ (e_a ⊗ e_b)†,
    which is f composed with the union of the rectangles p ∘ p†. Small
    hom-sets are enumerated exhaustively, larger ones sampled.

    Returns:
        (relations checked, relations not recovered)
    """
    model = FINREL_MODEL
    source = model.tensor_obj(h, k)
    rectangles = np.zeros((source.dim, source.dim), dtype=bool)
    for a in model.basis_vectors(h):
        for b in model.basis_vectors(k):
            point = model.point_tensor(a, b)
            rectangles |= model.compose(point, model.dagger(point)).payload

    bits = source.dim * l.dim
    if bits <= _SEPARATOR_EXHAUSTIVE_BITS:
        masks = np.arange(2**bits, dtype=np.int64)
        flat = (masks[:, None] >> np.arange(bits)) & 1
        relations = flat.astype(bool).reshape(-1, l.dim, source.dim)
    else:
        relations = rng.random((samples, l.dim, source.dim)) < 0.5

    rebuilt = (relations.astype(np.int64) @ rectangles.astype(np.int64)) > 0
    mismatched = np.any(rebuilt != relations, axis=(1, 2))
    return int(relations.shape[0]), int(mismatched.sum())


def as_bool_grid(matrix: NDArray[Any]) -> str:
    """Render a relation as rows of 0/1 characters."""
    rows, cols = matrix.shape
    lines = [f"{rows} {cols} bool"]
    lines += ["".join("1" if entry else "0" for entry in row) for row in matrix]
    return "\n".join(lines) + "\n"
