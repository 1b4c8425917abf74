"""Spanning-set extension of the full operator algebra on a d-level system.

Three layers:

* the explicit commuting 4x4 triple extending the Pauli matrices, plus its
  tensor products for n-qubit strings,
* the general construction placing any d x d Hermitian operator inside a
  fixed commutative family on a d^2-dimensional space, driven by an
  invertible real linear map from diagonal coordinates to Hermitian
  coordinates,
* a rank test deciding whether an arbitrary unitary on the d^2 space induces
  such a surjective map (generically it does).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constructions import Purification
from .linalg import (
    HermitianOperator,
    ProjectionConvention,
    UnitaryOperator,
    as_hermitian,
    as_matrix,
    complete_to_unitary,
    hermitian_coords,
    hermitian_from_coords,
)

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)

#: rank-test cutoff relative to the largest singular value
SURJECTIVITY_CUTOFF = 1e-8


def sigma_matrices() -> tuple[HermitianOperator, HermitianOperator, HermitianOperator]:
    """The hard-coded commuting 4x4 triple whose top-left blocks are X, Y, Z."""
    sigma_x = np.array(
        [
            [0, 1, 1 + 1j, 0],
            [1, 0, 1 + 1j, 0],
            [1 - 1j, 1 - 1j, 1, 0],
            [0, 0, 0, -1],
        ],
        dtype=complex,
    )
    sigma_y = np.array(
        [
            [0, -1j, 1j, (2 + 4j) / 3],
            [1j, 0, 1, (1 - 1j) / 3],
            [-1j, 1, 0, -1],
            [(2 - 4j) / 3, (1 + 1j) / 3, -1, 0],
        ],
        dtype=complex,
    )
    sigma_z = np.array(
        [
            [1, 0, -(4 + 4j) / 9, (7 + 8j) / 9],
            [0, -1, (5 + 5j) / 9, -(16 - 1j) / 9],
            [-(4 - 4j) / 9, (5 - 5j) / 9, 0, -1j],
            [(7 - 8j) / 9, -(16 + 1j) / 9, 1j, 0],
        ],
        dtype=complex,
    )
    return (
        HermitianOperator(sigma_x),
        HermitianOperator(sigma_y),
        HermitianOperator(sigma_z),
    )


def sigma_purification() -> Purification:
    """The Pauli triple bundled with its commuting extension."""
    sx, sy, sz = sigma_matrices()
    conv = ProjectionConvention(2, 4, "top-left")
    return Purification(
        inputs=(HermitianOperator(PAULI_X), HermitianOperator(PAULI_Y), HermitianOperator(PAULI_Z)),
        extended=(sx, sy, sz),
        convention=conv,
        method="manual",
    )


def _sigma_factors() -> tuple[np.ndarray, ...]:
    sx, sy, sz = sigma_matrices()
    return (np.eye(4, dtype=complex), sx.matrix, sy.matrix, sz.matrix)


def _pauli_factors() -> tuple[np.ndarray, ...]:
    return (PAULI_I, PAULI_X, PAULI_Y, PAULI_Z)


def _check_coefficients(beta) -> np.ndarray:
    b = np.asarray(beta, dtype=float)
    if b.ndim < 1 or b.shape != (4,) * b.ndim:
        raise ValueError(
            f"coefficients must be indexed over {{0,x,y,z}}^n, got shape {b.shape}"
        )
    return b


def pauli_string_operator(beta) -> HermitianOperator:
    """The 2^n operator ``sum beta * S_{l1} (x) ... (x) S_{ln}``."""
    b = _check_coefficients(beta)
    n = b.ndim
    factors = _pauli_factors()
    out = np.zeros((2**n, 2**n), dtype=complex)
    for idx in np.ndindex(b.shape):
        if b[idx] == 0:
            continue
        term = np.array([[1.0]], dtype=complex)
        for l in idx:
            term = np.kron(term, factors[l])
        out += b[idx] * term
    return HermitianOperator(out)


def purify_pauli_string(beta) -> HermitianOperator:
    """Commuting 4^n extension of an n-qubit Pauli combination.

    Replaces every Pauli factor with its 4x4 extension (identity with the
    extended identity), so any two outputs commute factor by factor, and the
    tensor-product projection recovers :func:`pauli_string_operator`.
    """
    b = _check_coefficients(beta)
    n = b.ndim
    factors = _sigma_factors()
    out = np.zeros((4**n, 4**n), dtype=complex)
    for idx in np.ndindex(b.shape):
        if b[idx] == 0:
            continue
        term = np.array([[1.0]], dtype=complex)
        for l in idx:
            term = np.kron(term, factors[l])
        out += b[idx] * term
    return HermitianOperator(out)


def embedded_string_indices(n: int) -> np.ndarray:
    """Coordinates of the 2^n subspace inside the 4^n tensor space.

    Each 4-dimensional factor keeps its first two coordinates; the kept
    indices of the full space are those whose base-4 digits are all 0 or 1.
    """
    if n < 1:
        raise ValueError("need n >= 1 factors")
    idx = np.zeros(2**n, dtype=int)
    for s in range(2**n):
        j = 0
        for k in range(n):
            bit = (s >> (n - 1 - k)) & 1
            j = 4 * j + bit
        idx[s] = j
    return idx


def project_pauli_string(h, n: int) -> HermitianOperator:
    """Recover the 2^n block of a 4^n tensor-extended operator."""
    hm = as_matrix(h)
    if hm.shape[0] != 4**n:
        raise ValueError(f"operator dimension {hm.shape[0]} is not 4^{n}")
    idx = embedded_string_indices(n)
    return HermitianOperator(hm[np.ix_(idx, idx)])


@dataclass(frozen=True)
class RealLinearMap:
    """Real d^2 x d^2 matrix from diagonal coordinates to Hermitian coordinates.

    Hermitian coordinates use the fixed basis of :func:`hampure.linalg.hermitian_coords`.
    """

    d: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        n = self.d * self.d
        if m.shape != (n, n):
            raise ValueError(f"expected a {n}x{n} real matrix, got {m.shape}")
        if not np.all(np.isfinite(m)):
            raise ValueError("map entries must be finite")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def apply(self, diag_values) -> HermitianOperator:
        v = np.asarray(diag_values, dtype=float)
        return HermitianOperator(hermitian_from_coords(self.matrix @ v, self.d))


@dataclass(frozen=True)
class AlgebraPurifier:
    """Fixed unitary on the d^2 space plus the invertible coordinate map."""

    d: int
    unitary: UnitaryOperator
    fmap: RealLinearMap
    fmap_inverse: np.ndarray


def raw_spanning_matrix(d: int) -> np.ndarray:
    """The d x d^2 matrix whose column outer products span all of u(d).

    Columns (in order): the canonical basis vectors e_n, then e_n + e_m for
    n < m lexicographically, then e_n + i e_m in the same order.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    eye = np.eye(d, dtype=complex)
    cols = [eye[:, n] for n in range(d)]
    pairs = [(n, m) for n in range(d) for m in range(n + 1, d)]
    cols += [eye[:, n] + eye[:, m] for n, m in pairs]
    cols += [eye[:, n] + 1j * eye[:, m] for n, m in pairs]
    return np.stack(cols, axis=1)


def orthogonalization_constants(d: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Subdiagonal values, row normalizers, and global scale of the
    triangular row-orthogonalizer.

    The recursion is ``a_1 = -1 - i`` and
    ``a_n = -1 - i - sum_{k<n} |a_k|^2``; every ``a_n`` has negative real
    part and imaginary part exactly -1, which is asserted here.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    a = np.zeros(d - 1, dtype=complex)
    acc = 0.0
    for n in range(d - 1):
        a[n] = -1.0 - acc - 1j
        if not (a[n].real < 0 and a[n].imag == -1.0):
            raise AssertionError(f"subdiagonal value a_{n + 1} violates its sign pattern")
        acc += a[n].real ** 2 + a[n].imag ** 2  # |a_n|^2 without the sqrt round trip
    norms = np.sqrt(1.0 + np.cumsum(a.real**2 + a.imag**2))
    return a, norms, 1.0 / np.sqrt(2 * d - 1)


def triangular_orthogonalizer(d: int) -> np.ndarray:
    """Lower-triangular replacement for the left d x d block, unnormalized."""
    a, _, _ = orthogonalization_constants(d)
    t = np.eye(d, dtype=complex)
    for n in range(1, d):
        t[n, :n] = a[:n]
    return t


def fmap_from_rows(w: np.ndarray) -> RealLinearMap:
    """Map column outer products of a d x d^2 matrix to Hermitian coordinates."""
    d = w.shape[0]
    n = d * d
    if w.shape != (d, n):
        raise ValueError(f"expected a {d}x{n} matrix, got {w.shape}")
    m = np.empty((n, n), dtype=float)
    for i in range(n):
        col = w[:, i]
        m[:, i] = hermitian_coords(np.outer(col, col.conj()))
    return RealLinearMap(d, m)


def build_algebra_purifier(d: int) -> AlgebraPurifier:
    """Construct the unitary and coordinate map for the d^2 extension.

    The raw spanning matrix already induces a surjective map; its rows are
    orthonormalized by a deterministic QR factorization (phase-fixed so the
    first row keeps its direction), which mixes rows by an invertible
    triangular factor and therefore preserves surjectivity exactly.  The
    rows are then completed to a unitary on the d^2 space.
    """
    wt = raw_spanning_matrix(d)
    orthogonalization_constants(d)  # assert the subdiagonal sign pattern
    q, r = np.linalg.qr(wt.conj().T)
    diag = np.diagonal(r).copy()
    diag[diag == 0] = 1.0
    w = (q * (diag / np.abs(diag))).conj().T

    gram = w @ w.conj().T
    if float(np.max(np.abs(gram - np.eye(d)))) > 1e-12:
        raise AssertionError("orthonormalization of the spanning rows failed")

    unitary = complete_to_unitary(w)
    fmap = fmap_from_rows(w)
    sv = np.linalg.svd(fmap.matrix, compute_uv=False)
    if sv[-1] <= SURJECTIVITY_CUTOFF * sv[0]:
        raise AssertionError(
            f"coordinate map is rank deficient (min sv ratio {sv[-1] / sv[0]:.3e})"
        )
    return AlgebraPurifier(
        d=d,
        unitary=unitary,
        fmap=fmap,
        fmap_inverse=np.linalg.inv(fmap.matrix),
    )


def purify_full_basis(purifier: AlgebraPurifier, hs) -> Purification:
    """Extend arbitrarily many d x d operators into one commuting family.

    Each operator maps to a real diagonal through the inverse coordinate map;
    all extensions share the purifier's eigenbasis, so they commute exactly
    by construction.
    """
    ops = [as_hermitian(h) for h in hs]
    d = purifier.d
    if any(h.dim != d for h in ops):
        raise ValueError(f"operators must have dimension {d}")
    um = purifier.unitary.matrix
    extended = []
    for h in ops:
        diag = purifier.fmap_inverse @ hermitian_coords(h.matrix)
        extended.append(HermitianOperator((um * diag) @ um.conj().T))
    conv = ProjectionConvention(d, d * d, "top-left")
    return Purification(tuple(ops), tuple(extended), conv, "algebra_d2")


@dataclass(frozen=True)
class SurjectivityReport:
    rank: int
    min_singular_value: float
    surjective: bool

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "min_singular_value": self.min_singular_value,
            "surjective": self.surjective,
        }


def surjectivity_test(u, d: int) -> SurjectivityReport:
    """Decide whether a unitary on the d^2 space induces a full-rank map.

    Singular values below ``1e-8`` times the largest are attributed to
    genuine rank deficiency rather than roundoff.
    """
    um = as_matrix(u)
    if um.shape != (d * d, d * d):
        raise ValueError(f"unitary must act on dimension {d * d}")
    fmap = fmap_from_rows(um[:d])
    sv = np.linalg.svd(fmap.matrix, compute_uv=False)
    rank = int(np.sum(sv > SURJECTIVITY_CUTOFF * sv[0]))
    return SurjectivityReport(
        rank=rank,
        min_singular_value=float(sv[-1]),
        surjective=(rank == d * d),
    )
