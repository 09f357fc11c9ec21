"""
Executable predicates for the axioms (D), (T), (B), (E), (K) and (C-finite).

Each check draws seeded random objects and morphisms from a model, evaluates
the axiom's equations and reports the worst residual together with the first
failing instance. Universal properties are tested against generated cones.
"""

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from functools import reduce

import numpy as np

from dagger_workbench import derived
from dagger_workbench.category import (
    AxiomId,
    AxiomVerdict,
    DaggerCategory,
    Mor,
    Obj,
    get_model,
)
from dagger_workbench.core.config import FINREL_SEARCH_BOUND, SuiteConfig
from dagger_workbench.core.exceptions import ConfigurationError
from dagger_workbench.core.logger import get_logger
from dagger_workbench.models.fdhilb import (
    image_factorization,
    numerical_rank,
    relative_residual,
)
from dagger_workbench.models.finrel import FinRel, axiom_e_witness, equaliser_search

logger = get_logger(__name__)


@dataclass
class ResidualTally:
    """Running maximum of residuals plus the first instance above tolerance."""

    tol: float
    residual: float = 0.0
    checks: int = 0
    failures: int = 0
    witness: tuple[Mor, ...] | None = None
    detail: str = ""

    def record(self, residual: float, *witness: Mor, detail: str = "") -> None:
        self.checks += 1
        self.residual = max(self.residual, float(residual))
        if residual > self.tol:
            self.failures += 1
            if self.witness is None:
                self.witness = witness
                self.detail = detail

    def fail(self, *witness: Mor, detail: str) -> None:
        self.record(1.0, *witness, detail=detail)

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _dims(rng: np.random.Generator, config: SuiteConfig, count: int) -> list[int]:
    return [int(d) for d in rng.integers(config.dim_min, config.dim_max + 1, size=count)]


def _objects(
    model: DaggerCategory, rng: np.random.Generator, config: SuiteConfig, count: int
) -> list[Obj]:
    return [model.obj(d) for d in _dims(rng, config, count)]


def _nested_objects(
    model: DaggerCategory, rng: np.random.Generator, config: SuiteConfig, count: int
) -> list[Obj]:
    """Objects with nondecreasing dimensions, so dagger monos exist between them."""
    return [model.obj(d) for d in sorted(_dims(rng, config, count))]


def _iso_residual(model: DaggerCategory, u: Mor) -> float:
    return max(
        model.residual(model.compose(model.dagger(u), u), model.identity(u.dom)),
        model.residual(model.compose(u, model.dagger(u)), model.identity(u.cod)),
    )


def _mono_residual(model: DaggerCategory, m: Mor) -> float:
    return model.residual(model.compose(model.dagger(m), m), model.identity(m.dom))


# (D)


def _check_dagger(
    model: DaggerCategory, config: SuiteConfig, rng: np.random.Generator, trials: int
) -> ResidualTally:
    tally = ResidualTally(config.tol)
    for _ in range(trials):
        h, k, l = _objects(model, rng, config, 3)  # noqa: E741
        f = model.random_morphism(h, k, rng)
        g = model.random_morphism(k, l, rng)
        tally.record(model.residual(model.dagger(model.dagger(f)), f), f, detail="f†† = f")
        lhs = model.dagger(model.compose(g, f))
        rhs = model.compose(model.dagger(f), model.dagger(g))
        tally.record(model.residual(lhs, rhs), f, g, detail="(g ∘ f)† = f† ∘ g†")
        ident = model.identity(h)
        tally.record(model.residual(model.dagger(ident), ident), detail="id† = id")
    return tally


# (T)


def _check_monoidal(
    model: DaggerCategory, config: SuiteConfig, rng: np.random.Generator, trials: int
) -> ResidualTally:
    tally = ResidualTally(config.tol)
    for _ in range(trials):
        h, k, l = _objects(model, rng, config, 3)  # noqa: E741
        for name, u in (
            ("associator", model.associator(h, k, l)),
            ("left unitor", model.left_unitor(h)),
            ("right unitor", model.right_unitor(h)),
            ("symmetry", model.symmetry(h, k)),
        ):
            tally.record(_iso_residual(model, u), u, detail=f"{name} is a dagger iso")

        f = model.random_morphism(h, k, rng)
        g = model.random_morphism(k, l, rng)
        f2 = model.random_morphism(k, h, rng)
        g2 = model.random_morphism(l, k, rng)
        lhs = model.dagger(model.tensor(f, g))
        rhs = model.tensor(model.dagger(f), model.dagger(g))
        tally.record(model.residual(lhs, rhs), f, g, detail="(f ⊗ g)† = f† ⊗ g†")

        lhs = model.tensor(model.compose(f2, f), model.compose(g2, g))
        rhs = model.compose(model.tensor(f2, g2), model.tensor(f, g))
        tally.record(model.residual(lhs, rhs), f, g, detail="⊗ is a bifunctor")

        lhs = model.compose(model.symmetry(k, l), model.tensor(f, g))
        rhs = model.compose(model.tensor(g, f), model.symmetry(h, k))
        tally.record(model.residual(lhs, rhs), f, g, detail="symmetry is natural")

        record_separator(model, tally, rng, h, k, l)

    _record_simplicity(model, tally, rng, trials, config.tol)
    return tally


def record_separator(
    model: DaggerCategory,
    tally: ResidualTally,
    rng: np.random.Generator,
    h: Obj,
    k: Obj,
    l: Obj,  # noqa: E741
) -> None:
    """Morphisms out of H ⊗ K are determined by their values on basis pairs h ⊗ k."""
    source = model.tensor_obj(h, k)
    points = [
        model.point_tensor(a, b) for a in model.basis_vectors(h) for b in model.basis_vectors(k)
    ]
    f = model.random_morphism(source, l, rng)
    g = model.random_morphism(source, l, rng)

    rebuilt = reduce(
        derived.add_morphisms,
        (model.compose(model.compose(f, p), model.dagger(p)) for p in points),
        model.zero_morphism(source, l),
    )
    tally.record(model.residual(rebuilt, f), f, detail="f rebuilt from its values on h ⊗ k")

    agree = all(
        model.equal(model.compose(f, p), model.compose(g, p), tally.tol) for p in points
    )
    if agree != model.equal(f, g, tally.tol):
        tally.fail(f, g, detail="basis pairs fail to separate f and g")


def _unit_subobjects(
    model: DaggerCategory, rng: np.random.Generator, trials: int
) -> Iterator[Mor]:
    unit = model.unit()
    if isinstance(model, FinRel):
        for size in range(3):
            for m in model.enumerate_morphisms(model.obj(size), unit):
                if model.is_dagger_mono(m):
                    yield m
        return
    # A dagger subobject of I is the image or the kernel of some scalar.
    scalars = [model.scalar(0), model.scalar(1)]
    scalars += [model.random_morphism(unit, unit, rng) for _ in range(trials)]
    for z in scalars:
        yield model.kernel(z)
        yield image_factorization(z).m


def _record_simplicity(
    model: DaggerCategory,
    tally: ResidualTally,
    rng: np.random.Generator,
    trials: int,
    tol: float,
) -> None:
    """I has exactly two dagger subobjects: 0 and id."""
    unit = model.unit()
    bottom, top = model.zero_morphism(unit, unit), model.identity(unit)
    seen = set()
    for m in _unit_subobjects(model, rng, trials):
        projection = model.range_projection(m)
        if m.dom.dim > 1:
            tally.fail(m, detail=f"dagger subobject of I with dim {m.dom.dim}")
            continue
        distances = (model.residual(projection, bottom), model.residual(projection, top))
        tally.record(min(distances), m, detail="subobject of I is neither 0 nor id")
        seen.add(int(np.argmin(distances)))
    if seen != {0, 1}:
        tally.fail(detail="I does not have both subobjects 0 and id")


# (B)


def _check_biproducts(
    model: DaggerCategory, config: SuiteConfig, rng: np.random.Generator, trials: int
) -> ResidualTally:
    tally = ResidualTally(config.tol)
    zero = model.zero_object()
    for _ in range(trials):
        h, k, l, m = _objects(model, rng, config, 4)  # noqa: E741
        total, i, j = model.biproduct(h, k)
        tally.record(_mono_residual(model, i), i, detail="i† ∘ i = id")
        tally.record(_mono_residual(model, j), j, detail="j† ∘ j = id")
        tally.record(
            model.residual(model.compose(model.dagger(j), i), model.zero_morphism(h, k)),
            i,
            j,
            detail="j† ∘ i = 0",
        )
        split = derived.add_morphisms(
            model.range_projection(i), model.range_projection(j)
        )
        tally.record(model.residual(split, model.identity(total)), detail="i i† + j j† = id")

        # Coproduct universal property against a random cocone
        f = model.random_morphism(h, l, rng)
        g = model.random_morphism(k, l, rng)
        cotuple = model.copair(f, g)
        tally.record(model.residual(model.compose(cotuple, i), f), f, detail="(f g) ∘ i = f")
        tally.record(model.residual(model.compose(cotuple, j), g), g, detail="(f g) ∘ j = g")
        other = model.random_morphism(total, l, rng)
        rebuilt = model.copair(model.compose(other, i), model.compose(other, j))
        tally.record(model.residual(rebuilt, other), other, detail="mediating map is unique")

        # Matrix calculus: f: H ⊕ K -> L ⊕ M from its four components
        target = model.biproduct(l, m)
        block = model.random_morphism(total, target.obj, rng)
        parts = [
            model.compose(
                model.range_projection(out),
                model.compose(block, model.range_projection(inj)),
            )
            for out in (target.i, target.j)
            for inj in (i, j)
        ]
        tally.record(
            model.residual(reduce(derived.add_morphisms, parts), block),
            block,
            detail="matrix calculus reassembles f",
        )

        # 0_{H,K} factors through the zero object
        through_zero = model.compose(model.zero_morphism(zero, k), model.zero_morphism(h, zero))
        tally.record(
            model.residual(through_zero, model.zero_morphism(h, k)),
            detail="0_{H,K} factors through 0",
        )
    return tally


# (E)


def _check_equalisers(
    model: DaggerCategory, config: SuiteConfig, rng: np.random.Generator, trials: int
) -> ResidualTally:
    tally = ResidualTally(config.tol)
    if isinstance(model, FinRel):
        f, g = axiom_e_witness()
        bound = FINREL_SEARCH_BOUND
        result = equaliser_search(f.payload, g.payload, bound)
        if not result.found:
            tally.fail(f, g, detail=f"no equaliser with apex <= {bound}")
        return tally

    for _ in range(trials):
        h, k = _objects(model, rng, config, 2)
        f = model.random_morphism(h, k, rng)
        # g differs from f by a map of rank < dim H, so the equaliser is nonzero
        rank = int(rng.integers(0, max(h.dim, 1)))
        through = model.obj(rank)
        g = derived.add_morphisms(
            f,
            model.compose(
                model.random_morphism(through, k, rng), model.random_morphism(h, through, rng)
            ),
        )
        record_equaliser(model, tally, rng, f, g)
        record_equaliser(model, tally, rng, f, f)
        record_equaliser(model, tally, rng, model.identity(h), model.zero_morphism(h, h))
    return tally


def record_equaliser(
    model: DaggerCategory, tally: ResidualTally, rng: np.random.Generator, f: Mor, g: Mor
) -> None:
    """The equaliser of f, g is a dagger mono through which every cone factors uniquely."""
    e = model.dagger_equaliser(f, g, tally.tol)
    tally.record(_mono_residual(model, e), f, g, e, detail="e† ∘ e = id")
    tally.record(
        model.residual(model.compose(f, e), model.compose(g, e)),
        f,
        g,
        e,
        detail="f ∘ e = g ∘ e",
    )
    difference = f.payload - g.payload
    scale = max(1.0, float(np.linalg.norm(f.payload)), float(np.linalg.norm(g.payload)))
    ranks = numerical_rank(e.payload, tally.tol) + numerical_rank(
        difference, tally.tol, scale
    )
    if ranks != f.dom.dim:
        tally.fail(f, g, e, detail="rank(e) + rank(f − g) ≠ dim H")

    # Cones m = (id − d⁺d) ∘ w with d = f − g are drawn without looking at e
    apex = model.obj(int(rng.integers(1, 3)))
    w = model.random_morphism(apex, f.dom, rng)
    if np.linalg.norm(difference) <= tally.tol * scale:
        cone_projector = np.eye(f.dom.dim)
    else:
        pseudo_inverse = np.linalg.pinv(difference, rcond=tally.tol * max(difference.shape))
        cone_projector = np.eye(f.dom.dim) - pseudo_inverse @ difference
    m = model.morphism(apex, f.dom, cone_projector @ w.payload)
    tally.record(
        model.residual(model.compose(f, m), model.compose(g, m)),
        f,
        g,
        m,
        detail="f ∘ m = g ∘ m",
    )
    mediating = model.compose(model.dagger(e), m)
    tally.record(
        model.residual(model.compose(e, mediating), m), f, g, m, detail="e ∘ u = m"
    )
    # e ∘ u′ = m forces u′ = e⁺ m; it must coincide with e† m
    if e.dom.dim:
        other = np.linalg.pinv(e.payload) @ m.payload
        tally.record(
            relative_residual(other, mediating.payload),
            f,
            g,
            m,
            detail="mediating map is not unique",
        )
    tally.record(
        float(numerical_rank(e.payload, tally.tol) != e.dom.dim),
        f,
        g,
        e,
        detail="mediating map is not unique",
    )


# (K)


def _check_kernels(
    model: DaggerCategory, config: SuiteConfig, rng: np.random.Generator, trials: int
) -> ResidualTally:
    tally = ResidualTally(config.tol)
    for _ in range(trials):
        h, k = _nested_objects(model, rng, config, 2)
        n = model.random_dagger_mono(h, k, rng)
        tally.record(
            float(model.kernel(n, config.tol).dom.dim != 0), n, detail="ker of a dagger mono is 0"
        )
        cokernel = model.kernel(model.dagger(n), config.tol)
        recovered = model.kernel(model.dagger(cokernel), config.tol)
        tally.record(
            model.residual(model.range_projection(recovered), model.range_projection(n)),
            n,
            recovered,
            detail="dagger mono is not a kernel",
        )
    return tally


# (C-finite)


def _check_directed_colimits(
    model: DaggerCategory, config: SuiteConfig, rng: np.random.Generator, trials: int
) -> ResidualTally:
    tally = ResidualTally(config.tol)
    for _ in range(trials):
        length = int(rng.integers(1, 4))
        chain = _nested_objects(model, rng, config, length + 1)
        steps = [model.random_dagger_mono(a, b, rng) for a, b in zip(chain, chain[1:])]

        # Legs into the greatest object: l_i = m_{n-1} ∘ ... ∘ m_i
        legs = [model.identity(chain[-1])]
        for step in reversed(steps):
            legs.insert(0, model.compose(legs[0], step))
        for index, step in enumerate(steps):
            tally.record(
                model.residual(model.compose(legs[index + 1], step), legs[index]),
                step,
                detail="cocone legs commute",
            )
        for leg in legs:
            tally.record(_mono_residual(model, leg), leg, detail="colimit leg is a dagger mono")

        # A cocone c_i = c_n ∘ l_i is mediated by u = c_n ∘ l_n†, uniquely since l_n = id
        target = _objects(model, rng, config, 1)[0]
        top = model.random_morphism(chain[-1], target, rng)
        mediating = model.compose(top, model.dagger(legs[-1]))
        for leg in legs:
            tally.record(
                model.residual(model.compose(mediating, leg), model.compose(top, leg)),
                top,
                detail="u ∘ l_i = c_i",
            )

    _record_standard_basis_diagram(model, tally, rng, config)
    return tally


def _record_standard_basis_diagram(
    model: DaggerCategory, tally: ResidualTally, rng: np.random.Generator, config: SuiteConfig
) -> None:
    """The subset diagram of a finite A is directed with colimit I^A."""
    size = int(rng.integers(0, config.dim_max + 1))
    diagram = derived.build_standard_basis(range(size), model)
    members = list(diagram.index_set)
    for _ in range(size + 1):
        mask = rng.random((2, size)) < 0.5
        r = [a for a, keep in zip(members, mask[0] & mask[1]) if keep]
        s = [a for a, keep in zip(members, mask[0]) if keep]
        r_to_s = diagram.inclusion(r, s)
        tally.record(_mono_residual(model, r_to_s), r_to_s, detail="i_{R,S} is a dagger mono")
        composite = model.compose(diagram.inclusion(s, members), r_to_s)
        tally.record(
            model.residual(composite, diagram.inclusion(r, members)),
            composite,
            detail="i_{S,A} ∘ i_{R,S} = i_{R,A}",
        )
    top = diagram.inclusion(members, members)
    tally.record(
        model.residual(top, model.identity(diagram.obj)), top, detail="i_{A,A} = id"
    )


_CHECKS: dict[AxiomId, Callable[..., ResidualTally]] = {
    AxiomId.D: _check_dagger,
    AxiomId.T: _check_monoidal,
    AxiomId.B: _check_biproducts,
    AxiomId.E: _check_equalisers,
    AxiomId.K: _check_kernels,
    AxiomId.C_FINITE: _check_directed_colimits,
}


def evaluate_axiom(
    axiom: AxiomId | str,
    config: SuiteConfig,
    rng: np.random.Generator,
    trials: int,
) -> ResidualTally:
    """Run the checks of one axiom and return the raw tally."""
    try:
        axiom_id = AxiomId(axiom)
    except ValueError as e:
        raise ConfigurationError(f"Unknown axiom: {axiom}") from e
    if trials < 1:
        raise ConfigurationError(f"At least one trial is required, got {trials}")
    model = get_model(config.model)
    logger.debug(f"checking axiom {axiom_id} on {model.model_id} with {trials} trials")
    return _CHECKS[axiom_id](model, config, rng, trials)


def check_axiom(
    axiom: AxiomId | str,
    config: SuiteConfig,
    rng: np.random.Generator | None = None,
    trials: int | None = None,
) -> AxiomVerdict:
    """
    Verify one axiom on the model selected by the config.

    Args:
        axiom: Axiom id (D, T, B, E, K or C-finite)
        config: Dimensions, tolerance and model of the run
        rng: Random stream; defaults to one seeded with config.seed
        trials: Overrides config.trials

    Returns:
        The verdict with worst residual and first failing instance

    Raises:
        ConfigurationError: for an unknown axiom or a non-positive trial count
    """
    trials = config.trials if trials is None else trials
    rng = np.random.default_rng(config.seed) if rng is None else rng
    tally = evaluate_axiom(axiom, config, rng, trials)
    verdict = AxiomVerdict(
        axiom=AxiomId(axiom),
        passed=tally.passed,
        residual=tally.residual,
        witness=tally.witness,
        trials=trials,
        detail=tally.detail,
    )
    logger.info(
        f"axiom {verdict.axiom} on {config.model}: "
        f"{'passed' if verdict.passed else 'failed'} (residual {verdict.residual:.3g})"
    )
    return verdict
