"""Dense complex linear algebra primitives shared by all constructions.

Everything here works on plain ``numpy`` arrays wrapped in thin immutable
dataclasses that enforce the structural invariants (Hermiticity, unitarity,
finiteness) once, on construction.  All operations are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

import numpy as np

Placement = Literal["top-left", "bottom-right"]

PLACEMENTS = ("top-left", "bottom-right")

#: relative scale of the default verification tolerance family
EPS_REL = 1e-10


def _as_square_complex(entries, name: str = "matrix") -> np.ndarray:
    a = np.asarray(entries, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    if a.shape[0] < 1:
        raise ValueError(f"{name} must have dimension >= 1")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} entries must be finite")
    return a


def _freeze(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class HermitianOperator:
    """Square complex matrix kept exactly Hermitian.

    The stored matrix is the Hermitian part ``(A + A^dag)/2`` of the input;
    inputs whose anti-Hermitian part is large relative to their norm are
    rejected rather than silently symmetrized.
    """

    matrix: np.ndarray

    def __post_init__(self):
        a = _as_square_complex(self.matrix, "Hermitian operator")
        skew = float(np.max(np.abs(a - a.conj().T)))
        scale = max(1.0, float(np.linalg.norm(a)))
        if skew > 1e-8 * a.shape[0] * scale:
            raise ValueError(
                f"matrix is not Hermitian (max asymmetry {skew:.3e})"
            )
        object.__setattr__(self, "matrix", _freeze((a + a.conj().T) / 2))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def norm(self) -> float:
        """Frobenius norm."""
        return float(np.linalg.norm(self.matrix))


@dataclass(frozen=True)
class UnitaryOperator:
    """Square complex matrix verified unitary on construction.

    The admission test is ``max |U^dag U - I| <= 1e-12 * dim``.
    """

    matrix: np.ndarray

    def __post_init__(self):
        u = _as_square_complex(self.matrix, "unitary operator")
        n = u.shape[0]
        resid = float(np.max(np.abs(u.conj().T @ u - np.eye(n))))
        if resid > 1e-12 * n:
            raise ValueError(f"matrix is not unitary (residual {resid:.3e})")
        object.__setattr__(self, "matrix", _freeze(u))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class DiagonalSpec:
    """Real diagonal of an extended operator in its common eigenbasis."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1 or v.size < 1:
            raise ValueError("diagonal values must form a non-empty 1-D array")
        if not np.all(np.isfinite(v)):
            raise ValueError("diagonal values must be finite")
        object.__setattr__(self, "values", _freeze(v))

    @property
    def dim(self) -> int:
        return self.values.size

    def matrix(self) -> np.ndarray:
        return np.diag(self.values.astype(complex))


@dataclass(frozen=True)
class ProjectionConvention:
    """Which d-dimensional corner block of the extended space is kept.

    ``top-left`` keeps coordinates ``0..d-1``; ``bottom-right`` keeps the last
    ``d`` coordinates (used when a construction grows the space upward).
    """

    d: int
    d_E: int
    placement: Placement = "top-left"

    def __post_init__(self):
        if not (1 <= self.d <= self.d_E):
            raise ValueError(f"need 1 <= d <= d_E, got d={self.d}, d_E={self.d_E}")
        if self.placement not in PLACEMENTS:
            raise ValueError(f"unknown placement {self.placement!r}")

    def block(self) -> slice:
        if self.placement == "top-left":
            return slice(0, self.d)
        return slice(self.d_E - self.d, self.d_E)

    def matrix(self) -> np.ndarray:
        p = np.zeros((self.d_E, self.d_E), dtype=complex)
        b = self.block()
        p[b, b] = np.eye(self.d)
        return p


def as_matrix(x) -> np.ndarray:
    """Unwrap an operator wrapper (or pass an array through) as complex."""
    if isinstance(x, (HermitianOperator, UnitaryOperator)):
        return x.matrix
    return np.asarray(x, dtype=complex)


def as_hermitian(x) -> HermitianOperator:
    if isinstance(x, HermitianOperator):
        return x
    return HermitianOperator(np.asarray(x, dtype=complex))


def frobenius_norm(x) -> float:
    return float(np.linalg.norm(as_matrix(x)))


def spectral_norm(x) -> float:
    return float(np.linalg.norm(as_matrix(x), ord=2))


def default_tolerance(dim: int, *operands) -> float:
    """Default verification tolerance: ``1e-10 * dim * max(1, norms)``."""
    scale = 1.0
    for op in operands:
        scale = max(scale, frobenius_norm(op))
    return EPS_REL * dim * scale


def commutator(a, b) -> np.ndarray:
    """``ab - ba``; anti-Hermitian for Hermitian inputs."""
    am, bm = as_matrix(a), as_matrix(b)
    if am.shape != bm.shape:
        raise ValueError(f"dimension mismatch: {am.shape} vs {bm.shape}")
    return am @ bm - bm @ am


def eig_hermitian(h) -> tuple[DiagonalSpec, UnitaryOperator]:
    """Spectral decomposition ``h = U D U^dag`` with deterministic output.

    Eigenvalues come back in non-decreasing order; each eigenvector's phase is
    fixed so that its largest-magnitude component is real and positive.
    """
    hm = as_hermitian(h).matrix
    w, v = np.linalg.eigh(hm)
    idx = np.argmax(np.abs(v), axis=0)
    lead = v[idx, np.arange(v.shape[1])]
    v = v * (np.abs(lead) / lead)
    return DiagonalSpec(w), UnitaryOperator(v)


def complete_to_unitary(rows) -> UnitaryOperator:
    """Extend orthonormal rows to a full unitary matrix.

    The complement is built deterministically by pivoted orthogonalization of
    canonical basis vectors: at each step the basis vector with the largest
    residual is orthogonalized and appended.  The input rows are preserved
    bit-for-bit as the first rows of the output.
    """
    r = np.asarray(rows, dtype=complex)
    if r.ndim == 1:
        r = r[np.newaxis, :]
    if r.ndim != 2:
        raise ValueError("rows must form a 2-D array")
    k, n = r.shape
    if k > n:
        raise ValueError(f"cannot complete {k} rows in dimension {n}")
    gram = r @ r.conj().T
    if float(np.max(np.abs(gram - np.eye(k)))) > 1e-10:
        raise ValueError("input rows are not orthonormal")

    b = r.copy()
    eye = np.eye(n, dtype=complex)
    for _ in range(n - k):
        resid2 = 1.0 - np.sum(np.abs(b) ** 2, axis=0)
        j = int(np.argmax(resid2))
        v = eye[j] - b.T @ b[:, j].conj()
        v -= b.T @ (b.conj() @ v)  # second pass for numerical orthogonality
        nv = np.linalg.norm(v)
        if nv < 1e-8:
            raise ValueError("failed to find an independent completion vector")
        b = np.vstack([b, v / nv])
    out = np.vstack([r, b[k:]])
    return UnitaryOperator(out)


def project(h, conv: ProjectionConvention) -> HermitianOperator:
    """Corner block of ``P H P`` selected by the convention."""
    hm = as_matrix(h)
    if hm.shape[0] != conv.d_E:
        raise ValueError(
            f"operator dimension {hm.shape[0]} does not match d_E={conv.d_E}"
        )
    b = conv.block()
    return HermitianOperator(hm[b, b])


def embed(h, conv: ProjectionConvention) -> HermitianOperator:
    """Place a d-dimensional operator in its corner of the extended space."""
    hm = as_matrix(h)
    if hm.shape[0] != conv.d:
        raise ValueError(
            f"operator dimension {hm.shape[0]} does not match d={conv.d}"
        )
    out = np.zeros((conv.d_E, conv.d_E), dtype=complex)
    b = conv.block()
    out[b, b] = hm
    return HermitianOperator(out)


def random_hermitian(dim: int, seed=None) -> HermitianOperator:
    """GUE-distributed random Hermitian matrix, reproducible per seed."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianOperator((g + g.conj().T) / 2)


def random_unitary_haar(dim: int, seed=None) -> UnitaryOperator:
    """Haar-distributed random unitary.

    Complex Ginibre matrix followed by QR; the QR phase ambiguity is removed
    by forcing the diagonal of R to be real positive, which makes the sample
    unbiased and deterministic per seed.
    """
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(g)
    diag = np.diagonal(r).copy()
    diag[diag == 0] = 1.0
    q = q * (diag / np.abs(diag))
    return UnitaryOperator(q)


def _offdiag_pairs(dim: int) -> list[tuple[int, int]]:
    return [(n, m) for n in range(dim) for m in range(n + 1, dim)]


def hermitian_coords(h) -> np.ndarray:
    """Real coordinates of a Hermitian matrix in the fixed orthonormal basis.

    Basis order: the ``dim`` diagonal units, then the sqrt(2)-normalized
    real-part units for pairs (n, m) with n < m in lexicographic order, then
    the matching imaginary-part units.  The inner product Tr(AB) of two
    Hermitian matrices equals the dot product of their coordinates.
    """
    hm = as_matrix(h)
    dim = hm.shape[0]
    pairs = _offdiag_pairs(dim)
    coords = np.empty(dim * dim, dtype=float)
    coords[:dim] = np.diagonal(hm).real
    sqrt2 = np.sqrt(2.0)
    for k, (n, m) in enumerate(pairs):
        coords[dim + k] = sqrt2 * hm[n, m].real
        coords[dim + len(pairs) + k] = sqrt2 * hm[n, m].imag
    return coords


def hermitian_from_coords(coords, dim: int) -> np.ndarray:
    """Inverse of :func:`hermitian_coords`."""
    v = np.asarray(coords, dtype=float)
    if v.shape != (dim * dim,):
        raise ValueError(f"expected {dim * dim} coordinates, got shape {v.shape}")
    pairs = _offdiag_pairs(dim)
    h = np.zeros((dim, dim), dtype=complex)
    h[np.diag_indices(dim)] = v[:dim]
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for k, (n, m) in enumerate(pairs):
        val = (v[dim + k] + 1j * v[dim + len(pairs) + k]) * inv_sqrt2
        h[n, m] = val
        h[m, n] = val.conjugate()
    return h
