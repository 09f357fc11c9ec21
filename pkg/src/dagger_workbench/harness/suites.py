"""
Registry of verification suites.

Every suite turns one axiom, lemma or theorem into a seeded check that
returns a residual tally. A suite declares the law it checks, its anchor
string and what it is expected to show on each model; models it does not
apply to are reported as not applicable.
"""

import itertools
from collections.abc import Callable
from dataclasses import dataclass, field

import numpy as np

from dagger_workbench import derived, equivalence
from dagger_workbench.axioms import ResidualTally, evaluate_axiom, record_separator
from dagger_workbench.category import AxiomId, DaggerCategory, ModelId, Mor, Obj
from dagger_workbench.core.config import (
    FDHILB_MAX_DIM,
    FINREL_MAX_SEARCH_BOUND,
    FINREL_SEARCH_BOUND,
    SuiteConfig,
)
from dagger_workbench.core.exceptions import SearchBoundError
from dagger_workbench.harness.report import Expectation
from dagger_workbench.models.fdhilb import nullspace_onb, relative_residual
from dagger_workbench.models.finrel import (
    FinRel,
    axiom_e_witness,
    equaliser_search,
    rel_compose,
    scalar_field_check_rel,
    separator_check,
)

PASS, FAIL = Expectation.PASS, Expectation.FAIL

ALL_PASS = {ModelId.FDHILB_R: PASS, ModelId.FDHILB_C: PASS, ModelId.FINREL: PASS}
HILBERT_ONLY = {ModelId.FDHILB_R: PASS, ModelId.FDHILB_C: PASS}
FINREL_FAILS = {ModelId.FDHILB_R: PASS, ModelId.FDHILB_C: PASS, ModelId.FINREL: FAIL}

# Largest dimension used by the tensor coherence suite
COHERENCE_MAX_DIM = 4


@dataclass(frozen=True)
class SuiteContext:
    """Model, config and random stream handed to a suite."""

    model: DaggerCategory
    config: SuiteConfig
    rng: np.random.Generator

    @property
    def tol(self) -> float:
        return self.config.tol

    @property
    def trials(self) -> int:
        return self.config.trials

    def objects(self, count: int, cap: int | None = None) -> list[Obj]:
        high = self.config.dim_max if cap is None else min(cap, self.config.dim_max)
        low = min(self.config.dim_min, high)
        return [self.model.obj(int(d)) for d in self.rng.integers(low, high + 1, size=count)]

    def scalar(self) -> Mor:
        unit = self.model.unit()
        return self.model.random_morphism(unit, unit, self.rng)


SuiteFn = Callable[[SuiteContext], ResidualTally]


@dataclass(frozen=True)
class Suite:
    """A registered suite with its law, anchor and per-model expectation."""

    suite_id: str
    law: str
    anchor: str
    run: SuiteFn
    expectations: dict[ModelId, Expectation] = field(default_factory=dict)

    def expected(self, model: ModelId) -> Expectation:
        return self.expectations.get(model, Expectation.NOT_APPLICABLE)


SUITES: dict[str, Suite] = {}


def suite(
    suite_id: str, law: str, anchor: str, expectations: dict[ModelId, Expectation]
) -> Callable[[SuiteFn], SuiteFn]:
    """Register a suite function under suite_id."""

    def register(run: SuiteFn) -> SuiteFn:
        SUITES[suite_id] = Suite(suite_id, law, anchor, run, dict(expectations))
        return run

    return register


def _same(tally: ResidualTally, model: DaggerCategory, f: Mor, g: Mor, detail: str) -> None:
    tally.record(model.residual(f, g), f, g, detail=detail)


def _random_projection(ctx: SuiteContext, h: Obj) -> derived.Projection:
    rank = int(ctx.rng.integers(0, h.dim + 1))
    m = ctx.model.random_dagger_mono(ctx.model.obj(rank), h, ctx.rng)
    return derived.Projection(ctx.model.range_projection(m))


def _random_vector(ctx: SuiteContext, h: Obj) -> Mor:
    return ctx.model.random_morphism(ctx.model.unit(), h, ctx.rng)


# Axioms


def _axiom_suite(axiom: AxiomId) -> SuiteFn:
    def run(ctx: SuiteContext) -> ResidualTally:
        return evaluate_axiom(axiom, ctx.config, ctx.rng, ctx.trials)

    return run


for _axiom, _law, _anchor, _expected in (
    (AxiomId.D, "dagger laws", "Axiom (D): equipped with a dagger", ALL_PASS),
    (
        AxiomId.T,
        "dagger symmetric monoidal with simple separator unit",
        "Axiom (T): dagger symmetric monoidal structure",
        ALL_PASS,
    ),
    (AxiomId.B, "dagger biproducts", "Axiom (B): have a dagger biproduct", ALL_PASS),
    (AxiomId.E, "dagger equalisers", "Axiom (E): have a dagger equaliser", FINREL_FAILS),
    (
        AxiomId.K,
        "dagger monos are kernels",
        "Axiom (K): dagger equaliser of some morphism and zero",
        FINREL_FAILS,
    ),
    (
        AxiomId.C_FINITE,
        "finite directed colimits of dagger monos",
        "Axiom (C): directed colimits of dagger monomorphisms",
        ALL_PASS,
    ),
):
    suite(f"axiom-{_axiom.value.split('-')[0]}", _law, _anchor, _expected)(
        _axiom_suite(_axiom)
    )


# Scalars and vector spaces


@suite(
    "complex-axiom",
    "some scalar z has z† ≠ z",
    "Optional axiom: there exists a morphism z with z† ≠ z",
    {ModelId.FDHILB_R: FAIL, ModelId.FDHILB_C: PASS, ModelId.FINREL: FAIL},
)
def complex_axiom(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    witness = derived.complex_axiom_witness(ctx.model, ctx.rng, ctx.trials, ctx.tol)
    if witness is None:
        tally.fail(detail="every scalar satisfies z† = z")
    else:
        tally.record(0.0, witness)
    return tally


@suite(
    "scalar-field",
    "scalars form a field with involution",
    "Lemma: is a field with involution",
    FINREL_FAILS,
)
def scalar_field(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    model = ctx.model
    if isinstance(model, FinRel):
        verdict = scalar_field_check_rel()
        if not verdict.sums[(True, True)]:
            tally.fail(detail="1 + 1 differs from 1")
        if not verdict.is_field:
            tally.fail(model.scalar(1), detail=verdict.witness)
        return tally

    add, mul, conj = derived.scalar_add, derived.scalar_mul, derived.scalar_conjugate
    value = model.scalar_value
    one, zero = model.scalar(1), model.scalar(0)
    for _ in range(ctx.trials):
        w, z, y = ctx.scalar(), ctx.scalar(), ctx.scalar()
        _same(tally, model, add(w, z), model.scalar(value(w) + value(z)), "composite sum")
        _same(tally, model, mul(w, z), model.scalar(value(w) * value(z)), "composite product")
        _same(tally, model, conj(z), model.scalar(np.conj(value(z))), "involution")
        _same(tally, model, mul(w, z), mul(z, w), "multiplication commutes")
        _same(tally, model, add(add(w, z), y), add(w, add(z, y)), "addition associates")
        _same(tally, model, mul(mul(w, z), y), mul(w, mul(z, y)), "multiplication associates")
        _same(tally, model, mul(w, add(z, y)), add(mul(w, z), mul(w, y)), "distributivity")
        _same(tally, model, mul(one, z), z, "1 is the unit")
        _same(tally, model, add(z, model.scalar(-value(z))), zero, "additive inverse")
        _same(tally, model, mul(z, derived.scalar_inverse(z, ctx.tol)), one, "inverse")
        _same(tally, model, conj(mul(w, z)), mul(conj(w), conj(z)), "† is multiplicative")
        _same(tally, model, conj(add(w, z)), add(conj(w), conj(z)), "† is additive")
        _same(tally, model, conj(conj(z)), z, "† is involutive")

    witness = derived.codiagonal_kernel_witness(model, ctx.tol)
    if witness.dom.dim != 1:
        tally.fail(witness, detail=f"ker (i j) has dim {witness.dom.dim}")
    else:
        plane = model.biproduct(model.unit(), model.unit()).obj
        expected = model.morphism(plane, plane, 0.5 * np.array([[1, -1], [-1, 1]]))
        _same(tally, model, model.range_projection(witness), expected, "ker (i j)")
    return tally


@suite(
    "vector-space",
    "parallel morphisms form a vector space over the scalars",
    "Corollary: form a vector space",
    FINREL_FAILS,
)
def vector_space(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    model = ctx.model
    add, scale = derived.add_morphisms, derived.scale_morphism
    for _ in range(ctx.trials):
        h, k = ctx.objects(2)
        f, g, e = (model.random_morphism(h, k, ctx.rng) for _ in range(3))
        a, b = ctx.scalar(), ctx.scalar()
        _same(tally, model, add(f, g), add(g, f), "addition commutes")
        _same(tally, model, add(add(f, g), e), add(f, add(g, e)), "addition associates")
        _same(tally, model, add(f, model.zero_morphism(h, k)), f, "0 is neutral")
        _same(tally, model, scale(a, add(f, g)), add(scale(a, f), scale(a, g)), "a(f+g)")
        sum_ab = derived.scalar_add(a, b)
        _same(tally, model, scale(sum_ab, f), add(scale(a, f), scale(b, f)), "(a+b)f")
        product = derived.scalar_mul(a, b)
        _same(tally, model, scale(product, f), scale(a, scale(b, f)), "(ab)f = a(bf)")
        _same(tally, model, scale(model.scalar(1), f), f, "1f = f")
        entrywise = model.morphism(h, k, a.payload[0, 0] * f.payload)
        _same(tally, model, scale(a, f), entrywise, "scaling is entrywise")
        if not isinstance(model, FinRel):
            _same(tally, model, add(f, derived.negate(f)), model.zero_morphism(h, k), "f − f")

    if isinstance(model, FinRel):
        unit = model.unit()
        one = model.scalar(1)
        if not any(
            model.equal(add(one, x), model.scalar(0))
            for x in model.enumerate_morphisms(unit, unit)
        ):
            tally.fail(one, detail="1 has no additive inverse")
    return tally


# Projections and subspaces


@suite(
    "ortholattice",
    "projections form an ortholattice",
    "Lemma: form a complete ortholattice",
    HILBERT_ONLY,
)
def ortholattice(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    model, tol = ctx.model, ctx.tol
    meet, join, perp = derived.proj_meet, derived.proj_join, derived.proj_complement
    leq = derived.proj_leq

    def same(p: derived.Projection, q: derived.Projection, detail: str) -> None:
        _same(tally, model, p.mor, q.mor, detail)

    def holds(condition: bool, p: derived.Projection, detail: str) -> None:
        if not condition:
            tally.fail(p.mor, detail=detail)

    for _ in range(ctx.trials):
        (h,) = ctx.objects(1)
        p, q, r = (_random_projection(ctx, h) for _ in range(3))
        bottom, top = derived.proj_bottom(h), derived.proj_top(h)
        p_and_q = meet(p, q, tol)

        holds(model.is_projection(p_and_q.mor, tol), p, "p ∧ q is a projection")
        holds(leq(p, p, tol), p, "≤ is reflexive")
        holds(leq(p_and_q, p, tol) and leq(p_and_q, q, tol), p, "p ∧ q is a lower bound")
        holds(leq(p, join(p, q, tol), tol), p, "p ≤ p ∨ q")
        same(p_and_q, meet(q, p, tol), "∧ commutes")
        same(meet(p_and_q, r, tol), meet(p, meet(q, r, tol), tol), "∧ associates")
        same(meet(p, join(p, q, tol), tol), p, "absorption p ∧ (p ∨ q) = p")
        same(join(p, p_and_q, tol), p, "absorption p ∨ (p ∧ q) = p")
        same(perp(p_and_q), join(perp(p), perp(q), tol), "De Morgan")
        same(perp(perp(p)), p, "double complement")
        same(meet(p, perp(p), tol), bottom, "p ∧ p⊥ = 0")
        same(join(p, perp(p), tol), top, "p ∨ p⊥ = id")
        same(join(p, bottom, tol), p, "0 is neutral for ∨")
        same(meet(p, top, tol), p, "id is neutral for ∧")

        smaller = meet(q, r, tol)
        holds(leq(perp(q), perp(smaller), tol), q, "⊥ reverses order")

        # Oracle: projection onto the null space of [p⊥; q⊥] stacked
        stacked = np.vstack([perp(p).mor.payload, perp(q).mor.payload])
        basis = nullspace_onb(model.morphism(h, model.obj(2 * h.dim), stacked), tol)
        tally.record(
            relative_residual(p_and_q.mor.payload, basis @ basis.conj().T),
            p.mor,
            q.mor,
            detail="meet matches the stacked null-space oracle",
        )

        chain = [smaller, q, join(q, r, tol)]
        same(derived.proj_directed_sup(chain, tol), chain[-1], "directed supremum")
        same(derived.proj_join_many(chain, h, tol), chain[-1], "finite join of a chain")
    return tally


@suite(
    "correspondence",
    "projections correspond to closed subspaces",
    "Lemma: ortholattice of closed subspaces",
    HILBERT_ONLY,
)
def correspondence(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    model, tol = ctx.model, ctx.tol
    for _ in range(ctx.trials):
        (h,) = ctx.objects(1)
        p, q = _random_projection(ctx, h), _random_projection(ctx, h)
        subspace = derived.projection_to_subspace(p, tol)
        back = derived.subspace_to_projection(subspace, tol)
        _same(tally, model, back.mor, p.mor, "projection round trip")
        if not derived.is_closed(subspace, tol):
            tally.fail(p.mor, detail="subspace is not closed")

        below = derived.proj_meet(p, q, tol)
        contained = derived.subspace_leq(
            derived.projection_to_subspace(below, tol), subspace, tol
        )
        if contained != derived.proj_leq(below, p, tol):
            tally.fail(p.mor, q.mor, detail="correspondence does not preserve order")

        complement = derived.projection_to_subspace(derived.proj_complement(p), tol)
        tally.record(
            relative_residual(
                complement.range_projection(),
                derived.subspace_orthocomplement(subspace, tol).range_projection(),
            ),
            p.mor,
            detail="⊥ maps to the orthocomplement",
        )

        v = _random_vector(ctx, h)
        if h.dim:
            oracle = v.payload @ v.payload.conj().T / np.vdot(v.payload, v.payload)
            tally.record(
                relative_residual(derived.proj_from_vector(v, tol).mor.payload, oracle),
                v,
                detail="p_h matches h h† / ⟨h, h⟩",
            )
    return tally


@suite(
    "orthomodular",
    "global elements form an orthomodular space",
    "Lemma: is an orthomodular space",
    HILBERT_ONLY,
)
def orthomodular(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    model, tol = ctx.model, ctx.tol
    for _ in range(ctx.trials):
        (h,) = ctx.objects(1)
        v = _random_vector(ctx, h)
        p, q = _random_projection(ctx, h), _random_projection(ctx, h)
        inside, outside = derived.orthomodular_decompose(v, p)
        _same(tally, model, derived.add_morphisms(inside, outside), v, "v = p v + p⊥ v")
        cross = abs(model.scalar_value(derived.inner_product(inside, outside)))
        scale = max(1.0, float(np.linalg.norm(v.payload)) ** 2)
        tally.record(cross / scale, v, p.mor, detail="⟨p v, p⊥ v⟩ = 0")

        below = derived.proj_meet(p, q, tol)
        rebuilt = derived.proj_join(
            below, derived.proj_meet(q, derived.proj_complement(below), tol), tol
        )
        _same(tally, model, rebuilt.mor, q.mor, "q = p ∨ (q ∧ p⊥) for p ≤ q")
    return tally


# Bases


@suite(
    "standard-basis",
    "dim C(I, I^A) = |A| with an orthonormal complete family",
    "Lemma: the dimension of the Hilbert space",
    ALL_PASS,
)
def standard_basis(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    model = ctx.model
    largest = ctx.config.dim_max if isinstance(model, FinRel) else FDHILB_MAX_DIM
    for size in range(largest + 1):
        diagram = derived.build_standard_basis(range(size), model)
        if diagram.obj.dim != size:
            tally.fail(detail=f"|A| = {size} gave dim {diagram.obj.dim}")
        vectors = [diagram.injections[a] for a in diagram.index_set]
        gram = np.asarray(derived.gram_matrix(vectors), dtype=complex)
        tally.record(relative_residual(gram, np.eye(size)), detail="⟨e_a, e_b⟩ = δ_ab")
        for index, vector in enumerate(vectors):
            _same(tally, model, vector, model.basis_vector(diagram.obj, index), "e_a")
        if derived.basis_completeness_defect(diagram, ctx.tol):
            tally.fail(detail=f"a nonzero vector is orthogonal to every e_a, |A| = {size}")

        members = list(diagram.index_set)
        for _ in range(min(ctx.trials, 8)):
            keep = ctx.rng.random((2, size)) < 0.5
            r = [a for a, chosen in zip(members, keep[0] & keep[1]) if chosen]
            s = [a for a, chosen in zip(members, keep[0]) if chosen]
            r_to_s = diagram.inclusion(r, s)
            _same(
                tally,
                model,
                model.compose(model.dagger(r_to_s), r_to_s),
                model.identity(r_to_s.dom),
                "i_{R,S} is a dagger mono",
            )
            _same(
                tally,
                model,
                model.compose(diagram.inclusion(s, members), r_to_s),
                diagram.inclusion(r, members),
                "i_{S,A} ∘ i_{R,S} = i_{R,A}",
            )
    return tally


# Equivalence with Hilbert spaces


@suite(
    "equivalence",
    "C(I, -) is a full, faithful, essentially surjective dagger functor",
    "Theorem: is an equivalence of dagger categories",
    HILBERT_ONLY,
)
def equivalence_suite(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    model, tol = ctx.model, ctx.tol
    missing = equivalence.essential_surjectivity(model, FDHILB_MAX_DIM, tol)
    if missing:
        tally.fail(detail=f"dimensions {missing} are not realized")

    for _ in range(ctx.trials):
        h, k, l = ctx.objects(3)  # noqa: E741
        f = model.random_morphism(h, k, ctx.rng)
        g = model.random_morphism(k, l, ctx.rng)
        image = equivalence.apply_functor(f).matrix
        tally.record(relative_residual(image, f.payload), f, detail="C(I, f) is f")
        tally.record(
            relative_residual(
                equivalence.apply_functor(model.compose(g, f)).matrix,
                equivalence.apply_functor(g).matrix @ image,
            ),
            f,
            g,
            detail="C(I, -) preserves composition",
        )
        tally.record(
            relative_residual(
                equivalence.apply_functor(model.dagger(f)).matrix, image.conj().T
            ),
            f,
            detail="C(I, -) preserves the dagger",
        )
        tally.record(
            relative_residual(
                equivalence.apply_functor(model.identity(h)).matrix, np.eye(h.dim)
            ),
            detail="C(I, -) preserves identities",
        )
        tally.record(
            equivalence.functor_preserves_biproducts(h, k), detail="C(I, -) preserves ⊕"
        )

        other = model.random_morphism(h, k, ctx.rng)
        if not model.equal(f, other, tol) and (
            equivalence.distinguishing_vector(f, other, tol) is None
        ):
            tally.fail(f, other, detail="no vector distinguishes f ≠ g")
        if equivalence.distinguishing_vector(f, f, tol) is not None:
            tally.fail(f, detail="a vector distinguishes f from itself")

        small, large = sorted((h, k), key=lambda obj: obj.dim)
        u_matrix = model.random_dagger_mono(small, large, ctx.rng).payload
        rotation = model.random_dagger_mono(small, small, ctx.rng).payload
        basis = derived.SubspaceONB(small, rotation)
        lifted = equivalence.lift_isometry(u_matrix, basis, target=large, tol=tol)
        tally.record(
            relative_residual(equivalence.apply_functor(lifted).matrix, u_matrix),
            lifted,
            detail="C(I, u) = U for the lifted isometry",
        )

        general = model.random_morphism(small, large, ctx.rng)
        if small == large and small.dim:
            # a contraction, to exercise the two-isometry decomposition
            norm = float(np.linalg.norm(general.payload, 2))
            general = model.morphism(small, large, general.payload / (norm + 1.0))
        _same(
            tally,
            model,
            equivalence.lift_linear_map(general, tol),
            general,
            "linear combination of lifted isometries",
        )
    return tally


@suite(
    "tensor-coherence",
    "C(I, -) is symmetric monoidal via the unitary comparison M",
    "Theorem: symmetric monoidal dagger equivalence",
    HILBERT_ONLY,
)
def tensor_coherence(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    model = ctx.model
    for _ in range(ctx.trials):
        h, k, l, h2, k2 = ctx.objects(5, cap=COHERENCE_MAX_DIM)  # noqa: E741
        tally.record(equivalence.comparison_unitarity(h, k), detail="M is unitary")
        f = model.random_morphism(h, h2, ctx.rng)
        g = model.random_morphism(k, k2, ctx.rng)
        tally.record(equivalence.comparison_naturality(f, g), f, g, detail="M is natural")
        verdict = equivalence.coherence_checks(h, k, l, ctx.tol, ctx.rng)
        tally.record(verdict.symmetry, detail="symmetry square")
        tally.record(verdict.associator, detail="associator square")
        tally.record(verdict.unit, detail="unit square")
        x, y = _random_vector(ctx, h), _random_vector(ctx, k)
        norm_residual = equivalence.tensor_norm_check(x, y)
        tally.record(norm_residual, x, y, detail="‖h ⊗ k‖ = ‖h‖ ‖k‖")
    return tally


@suite(
    "duals",
    "every object has a dagger dual",
    "Definition: are dagger dual objects when",
    HILBERT_ONLY,
)
def duals(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    for size in range(FDHILB_MAX_DIM + 1):
        witness = equivalence.dagger_dual(ctx.model.obj(size), ctx.tol)
        tally.record(witness.residual, witness.cup, detail=f"snake identity, dim {size}")
        tally.record(witness.mirror_residual, witness.cup, detail=f"mirror snake, dim {size}")
    return tally


# FinRel counterexamples


@suite(
    "separator",
    "morphisms out of H ⊗ K are determined on pure tensors of points",
    "Axiom (T): monoidal separator",
    ALL_PASS,
)
def separator(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    model = ctx.model
    if isinstance(model, FinRel):
        low, high = max(ctx.config.dim_min, 1), min(ctx.config.dim_max, 3)
        for dims in itertools.product(range(low, high + 1), repeat=3):
            h, k, l = (model.obj(d) for d in dims)  # noqa: E741
            checked, failures = separator_check(h, k, l, ctx.rng)
            tally.record(float(failures > 0), detail=f"{failures}/{checked} relations at {dims}")
        return tally
    for _ in range(ctx.trials):
        h, k, l = ctx.objects(3)  # noqa: E741
        record_separator(model, tally, ctx.rng, h, k, l)
    return tally


@suite(
    "equaliser-search",
    "bounded equaliser search is sound and finds the pinned counterexample",
    "Axiom (E): any two morphisms have a dagger equaliser",
    {ModelId.FINREL: PASS},
)
def equaliser_search_suite(ctx: SuiteContext) -> ResidualTally:
    tally = ResidualTally(ctx.tol)
    model = ctx.model
    bound = FINREL_SEARCH_BOUND

    f, g = axiom_e_witness()
    if equaliser_search(f.payload, g.payload, bound).found:
        tally.fail(f, g, detail="pinned pair has an equaliser")

    two = model.obj(2)
    for pair, name in (
        (model.identity(two), "f = g = id"),
        (model.zero_morphism(two, two), "f = g = ∅"),
    ):
        result = equaliser_search(pair.payload, pair.payload, bound)
        if result.equaliser is None or not np.array_equal(result.equaliser[1], np.eye(2)):
            tally.fail(pair, detail=f"{name} should be equalised by the identity")

    try:
        equaliser_search(f.payload, g.payload, FINREL_MAX_SEARCH_BOUND + 1)
    except SearchBoundError:
        pass
    else:
        tally.fail(f, g, detail="search beyond the limit was not refused")

    for _ in range(ctx.trials):
        h, k = ctx.objects(2, cap=3)
        a, b = model.random_morphism(h, k, ctx.rng), model.random_morphism(h, k, ctx.rng)
        result = equaliser_search(a.payload, b.payload, min(bound, h.dim))
        if result.found and result.equaliser is not None:
            e = result.equaliser[1]
            if not np.array_equal(rel_compose(a.payload, e), rel_compose(b.payload, e)):
                tally.fail(a, b, detail="search returned a non-cone")
    return tally
