"""
Finite-dimensional Hilbert spaces over ℝ or ℂ.

Objects are dimensions, morphisms dense matrices. The dagger is the conjugate
transpose, the tensor the Kronecker product, the biproduct the direct sum,
and dagger equalisers come from SVD null spaces.
"""

import re
from enum import StrEnum
from typing import Any, NamedTuple

import numpy as np
from numpy.typing import NDArray

from dagger_workbench.category import DEFAULT_TOL, DaggerCategory, ModelId, Mor, Obj
from dagger_workbench.core.exceptions import MatrixFormatError, ShapeMismatchError
from dagger_workbench.core.logger import get_logger

logger = get_logger(__name__)


class GroundField(StrEnum):
    """The scalar field of an FdHilb instance."""

    REAL = "real"
    COMPLEX = "complex"

    @property
    def model_id(self) -> ModelId:
        return ModelId.FDHILB_R if self is GroundField.REAL else ModelId.FDHILB_C

    @property
    def dtype(self) -> type:
        return np.float64 if self is GroundField.REAL else np.complex128

    @classmethod
    def of(cls, model: ModelId) -> "GroundField":
        if model is ModelId.FDHILB_R:
            return cls.REAL
        if model is ModelId.FDHILB_C:
            return cls.COMPLEX
        raise ValueError(f"{model} is not a Hilbert space model")


class ImageFactorization(NamedTuple):
    """f = m ∘ e with e an epimorphism and m a dagger monomorphism."""

    e: Mor
    m: Mor


def _cutoff(
    singular_values: NDArray[Any], shape: tuple[int, int], tol: float, scale: float
) -> float:
    relative = tol * float(singular_values.max(initial=0.0)) * max(shape)
    return max(relative, tol * scale)


def _scale(a: NDArray[Any], scale: float | None) -> float:
    return max(1.0, float(np.linalg.norm(a))) if scale is None else scale


def numerical_rank(
    a: NDArray[Any], tol: float = DEFAULT_TOL, scale: float | None = None
) -> int:
    """
    Count singular values above max(tol · σ_max · max(rows, cols), tol · scale).

    scale defaults to max(1, ‖a‖_F), so a matrix of rounding noise has rank 0.
    """
    if 0 in a.shape:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    return int(np.sum(s > _cutoff(s, a.shape, tol, _scale(a, scale))))


def nullspace_onb(
    f: Mor, tol: float = DEFAULT_TOL, scale: float | None = None
) -> NDArray[Any]:
    """
    Orthonormal basis of the numerical null space of f.

    Args:
        f: Morphism whose payload is inspected
        tol: Relative singular value cut-off
        scale: Reference norm of the absolute floor, max(1, ‖f‖_F) when omitted

    Returns:
        A (dim dom) x k matrix with orthonormal columns spanning
        {x : ‖f x‖ ≤ tol · scale}, k = dim dom - rank
    """
    a = f.payload
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return np.eye(cols, dtype=a.dtype)
    _, s, vh = np.linalg.svd(a, full_matrices=True)
    rank = int(np.sum(s > _cutoff(s, a.shape, tol, _scale(a, scale))))
    logger.debug(f"null space of {rows}x{cols} payload: rank {rank}")
    return np.ascontiguousarray(vh[rank:].conj().T)


def range_onb(
    a: NDArray[Any], tol: float = DEFAULT_TOL, scale: float | None = None
) -> NDArray[Any]:
    """Orthonormal basis of the column space of a (left singular vectors)."""
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return np.zeros((rows, 0), dtype=a.dtype)
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    rank = int(np.sum(s > _cutoff(s, a.shape, tol, _scale(a, scale))))
    return np.ascontiguousarray(u[:, :rank])


def image_factorization(f: Mor, tol: float = DEFAULT_TOL) -> ImageFactorization:
    """
    Factor f through its image using the thin SVD f = UΣV*.

    Returns:
        (e, m) with m = U_r a dagger mono and e = Σ_r V_r* of full row rank
    """
    a = f.payload
    image = Obj(f.model, numerical_rank(a, tol))
    if image.dim == 0:
        m_payload = np.zeros((f.cod.dim, 0))
        e_payload = np.zeros((0, f.dom.dim))
    else:
        u, s, vh = np.linalg.svd(a, full_matrices=False)
        r = image.dim
        m_payload = u[:, :r]
        e_payload = np.diag(s[:r]) @ vh[:r]
    return ImageFactorization(Mor(f.dom, image, e_payload), Mor(image, f.cod, m_payload))


def random_morphism(h: Obj, k: Obj, seed: int | np.random.Generator) -> Mor:
    """
    Draw a morphism h -> k with i.i.d. standard Gaussian entries.

    The result is a deterministic function of (h, k, seed); complex entries
    use independent real and imaginary parts.
    """
    if h.model != k.model:
        raise ShapeMismatchError(f"Objects from {h.model} and {k.model}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    shape = (k.dim, h.dim)
    payload: NDArray[Any] = rng.standard_normal(shape)
    if GroundField.of(h.model) is GroundField.COMPLEX:
        payload = payload + 1j * rng.standard_normal(shape)
    return Mor(h, k, payload)


def approx_equal(f: Mor, g: Mor, tol: float = DEFAULT_TOL) -> bool:
    """‖f − g‖_F ≤ tol · max(1, ‖f‖_F, ‖g‖_F)."""
    if f.shape != g.shape:
        raise ShapeMismatchError(f"Cannot compare {f.shape} with {g.shape}")
    return relative_residual(f.payload, g.payload) <= tol


def relative_residual(a: NDArray[Any], b: NDArray[Any]) -> float:
    scale = max(1.0, float(np.linalg.norm(a)), float(np.linalg.norm(b)))
    return float(np.linalg.norm(a - b)) / scale


# Plain-text matrix exchange format

_NUMBER = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_COMPLEX_TOKEN = re.compile(rf"^({_NUMBER})([+-])((?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)i$")


def _format_real(x: float) -> str:
    return repr(float(x) + 0.0)


def _format_entry(value: Any, field: GroundField) -> str:
    if field is GroundField.REAL:
        return _format_real(value.real if isinstance(value, complex) else value)
    re_part = float(value.real) + 0.0
    im_part = float(value.imag) + 0.0
    sign = "-" if im_part < 0 else "+"
    return f"{re_part!r}{sign}{abs(im_part)!r}i"


def format_matrix(a: NDArray[Any], field: GroundField) -> str:
    """Serialize a matrix as a `rows cols field` header plus row-major entries."""
    rows, cols = a.shape
    lines = [f"{rows} {cols} {field.value}"]
    for row in a:
        lines.append(" ".join(_format_entry(value, field) for value in row))
    return "\n".join(lines) + "\n"


def _parse_entry(token: str, field: GroundField) -> complex | float:
    if field is GroundField.REAL:
        if not re.fullmatch(_NUMBER, token):
            raise MatrixFormatError(f"Invalid real entry: {token!r}")
        return float(token)
    match = _COMPLEX_TOKEN.match(token)
    if match is None:
        raise MatrixFormatError(f"Invalid complex entry: {token!r}")
    real, sign, imag = match.groups()
    imag_value = float(imag) if sign == "+" else -float(imag)
    return complex(float(real), imag_value)


def parse_matrix(text: str) -> tuple[NDArray[Any], GroundField]:
    """
    Parse the exchange format produced by :func:`format_matrix`.

    Raises:
        MatrixFormatError: on a malformed header, entry or entry count
    """
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise MatrixFormatError("Empty matrix text")
    header = lines[0].split()
    if len(header) != 3:
        raise MatrixFormatError(f"Header must be 'rows cols field', got {lines[0]!r}")
    try:
        rows, cols = int(header[0]), int(header[1])
        field = GroundField(header[2])
    except ValueError as e:
        raise MatrixFormatError(f"Invalid header {lines[0]!r}: {e}") from e
    if rows < 0 or cols < 0:
        raise MatrixFormatError("Matrix dimensions must be non-negative")

    tokens = [token for line in lines[1:] for token in line.split()]
    if len(tokens) != rows * cols:
        raise MatrixFormatError(f"Expected {rows * cols} entries, found {len(tokens)}")
    values = [_parse_entry(token, field) for token in tokens]
    array = np.array(values, dtype=field.dtype).reshape(rows, cols)
    return array, field


class FdHilb(DaggerCategory):
    """The category of finite-dimensional Hilbert spaces over one ground field."""

    exact = False

    def __init__(self, field: GroundField) -> None:
        self.field = field
        self.model_id = field.model_id

    def compose(self, g: Mor, f: Mor) -> Mor:
        self._check_composable(g, f)
        return Mor(f.dom, g.cod, g.payload @ f.payload)

    def dagger(self, f: Mor) -> Mor:
        self._check_model(f)
        return Mor(f.cod, f.dom, f.payload.conj().T)

    def tensor(self, f: Mor, g: Mor) -> Mor:
        self._check_model(f, g)
        a, b = f.payload, g.payload
        # (f ⊗ g)[i·dimK + k, j·dimL + l] = f[i, j] · g[k, l]
        payload = np.einsum("ij,kl->ikjl", a, b).reshape(
            a.shape[0] * b.shape[0], a.shape[1] * b.shape[1]
        )
        return Mor(
            self.tensor_obj(f.dom, g.dom), self.tensor_obj(f.cod, g.cod), payload
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
        self._check_parallel(f, g)
        difference = Mor(f.dom, f.cod, f.payload - g.payload)
        scale = max(1.0, float(np.linalg.norm(f.payload)), float(np.linalg.norm(g.payload)))
        basis = nullspace_onb(difference, tol, scale)
        return Mor(self.obj(basis.shape[1]), f.dom, basis)

    def residual(self, f: Mor, g: Mor) -> float:
        self._check_parallel(f, g)
        return relative_residual(f.payload, g.payload)

    def random_morphism(self, h: Obj, k: Obj, rng: np.random.Generator) -> Mor:
        self._check_model(h, k)
        return random_morphism(h, k, rng)

    def random_dagger_mono(self, h: Obj, k: Obj, rng: np.random.Generator) -> Mor:
        self._check_model(h, k)
        if h.dim > k.dim:
            raise ValueError(f"No dagger mono from dim {h.dim} into dim {k.dim}")
        if h.dim == 0:
            return self.zero_morphism(h, k)
        q, _ = np.linalg.qr(random_morphism(h, k, rng).payload)
        return Mor(h, k, q)

    def norm(self, f: Mor) -> float:
        return float(np.linalg.norm(f.payload))
