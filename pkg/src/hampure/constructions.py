"""Commuting-extension constructions for pairs and for m-operator sets.

Four constructive routes are implemented, tagged by method name:

* ``tensor2d``   -- pair extension on a doubled space via a qubit ancilla,
* ``qubit3``     -- optimal pair extension of 2x2 operators into dimension 3,
* ``schur2dm1``  -- pair extension into dimension 2d - 1,
* ``md``         -- m operators extended into dimension m*d.

``verify`` is the single numerical predicate deciding whether a bundle is a
valid purification: all extended operators must pairwise commute and each must
project back onto its input.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    DiagonalSpec,
    HermitianOperator,
    ProjectionConvention,
    UnitaryOperator,
    as_hermitian,
    commutator,
    complete_to_unitary,
    default_tolerance,
    eig_hermitian,
    embed,
    project,
)

METHODS = (
    "tensor2d",
    "qubit3",
    "schur2dm1",
    "md",
    "algebra_d2",
    "generator_dp1",
    "manual",
)

_PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)


@dataclass(frozen=True)
class Purification:
    """A set of inputs together with their commuting extensions.

    Only structural consistency is enforced here; the numerical invariants
    (pairwise commutation, projection recovery) are checked by :func:`verify`
    so that deliberately corrupted bundles can still be represented.
    """

    inputs: tuple[HermitianOperator, ...]
    extended: tuple[HermitianOperator, ...]
    convention: ProjectionConvention
    method: str

    def __post_init__(self):
        object.__setattr__(self, "inputs", tuple(as_hermitian(h) for h in self.inputs))
        object.__setattr__(self, "extended", tuple(as_hermitian(h) for h in self.extended))
        if len(self.inputs) != len(self.extended):
            raise ValueError("inputs and extended operators must pair up")
        if len(self.inputs) == 0:
            raise ValueError("a purification needs at least one operator")
        if self.method not in METHODS:
            raise ValueError(f"unknown method tag {self.method!r}")
        for h in self.inputs:
            if h.dim != self.convention.d:
                raise ValueError("input dimension does not match the convention")
        for h in self.extended:
            if h.dim != self.convention.d_E:
                raise ValueError("extended dimension does not match the convention")

    @property
    def d(self) -> int:
        return self.convention.d

    @property
    def d_E(self) -> int:
        return self.convention.d_E

    @property
    def m(self) -> int:
        return len(self.inputs)


@dataclass(frozen=True)
class VerificationReport:
    max_commutator_norm: float
    max_recovery_error: float
    tol: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "max_commutator_norm": self.max_commutator_norm,
            "max_recovery_error": self.max_recovery_error,
            "tol": self.tol,
            "passed": self.passed,
        }


def verify(p: Purification, tol: float | None = None) -> VerificationReport:
    """Check both purification invariants; reports, never raises on numbers."""
    if tol is None:
        tol = default_tolerance(p.d_E, *p.extended)
    max_comm = 0.0
    mats = [h.matrix for h in p.extended]
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            max_comm = max(max_comm, float(np.linalg.norm(mats[i] @ mats[j] - mats[j] @ mats[i])))
    max_rec = 0.0
    for h, ext in zip(p.inputs, p.extended):
        rec = project(ext, p.convention).matrix
        max_rec = max(max_rec, float(np.linalg.norm(rec - h.matrix)))
    return VerificationReport(
        max_commutator_norm=max_comm,
        max_recovery_error=max_rec,
        tol=float(tol),
        passed=(max_comm <= tol and max_rec <= tol),
    )


def pair_lower_bound(d: int) -> int:
    """Smallest extension dimension not excluded for a generic pair."""
    return math.ceil(3 * d / 2)


def trivial_embedding(hs, d_E: int | None = None, method: str = "manual") -> Purification:
    """Embed already-commuting operators unchanged into a larger space."""
    ops = [as_hermitian(h) for h in hs]
    d = ops[0].dim
    if d_E is None:
        d_E = d
    conv = ProjectionConvention(d, d_E, "top-left")
    return Purification(
        inputs=tuple(ops),
        extended=tuple(embed(h, conv) for h in ops),
        convention=conv,
        method=method,
    )


def purify_pair_tensor(h1, h2) -> Purification:
    """Pair extension on a doubled space: ``H1 = h1 (x) I + h2 (x) X``.

    The ancilla qubit index varies slowest, so the recovered block is the
    literal top-left d x d submatrix.
    """
    a, b = as_hermitian(h1), as_hermitian(h2)
    if a.dim != b.dim:
        raise ValueError("operators must share a dimension")
    eye2 = np.eye(2, dtype=complex)
    ext1 = np.kron(eye2, a.matrix) + np.kron(_PAULI_X, b.matrix)
    ext2 = np.kron(eye2, b.matrix) + np.kron(_PAULI_X, a.matrix)
    conv = ProjectionConvention(a.dim, 2 * a.dim, "top-left")
    return Purification((a, b), (HermitianOperator(ext1), HermitianOperator(ext2)), conv, "tensor2d")


def _qubit_corner_pair(theta: float) -> tuple[np.ndarray, np.ndarray]:
    """The commuting 3x3 templates extending Z and X cos(t) + Y sin(t)."""
    sq2 = np.sqrt(2.0)
    g1 = np.array(
        [[1, 0, 0], [0, -1, sq2], [0, sq2, 0]],
        dtype=complex,
    )
    em, ep = np.exp(-1j * theta), np.exp(1j * theta)
    g2 = np.array(
        [[0, em, sq2 * em], [ep, 0, 0], [sq2 * ep, 0, 0]],
        dtype=complex,
    )
    return g1, g2


def purify_pair_qubit(h1, h2) -> Purification:
    """Optimal pair extension for 2x2 operators: one extra dimension only.

    The pair is reduced to the canonical form (Z, Z + alpha*(X cos(t) +
    Y sin(t))) by an affine change recorded on the way in and undone on the
    way out, so the returned bundle extends the original operators.  If the
    first operator is a multiple of the identity the roles are swapped; if
    both are, they already commute and a trivial embedding is returned.
    """
    a, b = as_hermitian(h1), as_hermitian(h2)
    if a.dim != 2 or b.dim != 2:
        raise ValueError("qubit construction needs 2x2 operators")

    def bloch_radius(h: HermitianOperator) -> float:
        c = h.matrix.trace().real / 2
        return float(np.linalg.norm(h.matrix - c * np.eye(2))) / np.sqrt(2.0)

    s_a, s_b = bloch_radius(a), bloch_radius(b)
    degenerate = 1e-14 * max(1.0, a.norm(), b.norm())
    if s_a <= degenerate and s_b <= degenerate:
        p = trivial_embedding([a, b], d_E=3)
        return Purification(p.inputs, p.extended, p.convention, "qubit3")
    if s_a <= degenerate:
        swapped = purify_pair_qubit(b, a)
        return Purification(
            (a, b),
            (swapped.extended[1], swapped.extended[0]),
            swapped.convention,
            "qubit3",
        )

    # basis in which the first operator is c1*I + s1*Z with s1 > 0
    w, v = eig_hermitian(a)
    u = v.matrix[:, ::-1]
    c1 = a.matrix.trace().real / 2
    s1 = (w.values[1] - w.values[0]) / 2

    g = u.conj().T @ b.matrix @ u
    c2 = g.trace().real / 2
    px = g[0, 1].real
    qy = -g[0, 1].imag
    rz = (g[0, 0] - g[1, 1]).real / 2
    alpha = math.hypot(px, qy)
    theta = math.atan2(qy, px) if alpha > 0 else 0.0

    g1, g2 = _qubit_corner_pair(theta)
    eye3 = np.eye(3, dtype=complex)
    ext1 = c1 * eye3 + s1 * g1
    ext2 = c2 * eye3 + rz * g1 + alpha * g2

    u_ext = np.eye(3, dtype=complex)
    u_ext[:2, :2] = u
    ext1 = u_ext @ ext1 @ u_ext.conj().T
    ext2 = u_ext @ ext2 @ u_ext.conj().T
    conv = ProjectionConvention(2, 3, "top-left")
    return Purification((a, b), (HermitianOperator(ext1), HermitianOperator(ext2)), conv, "qubit3")


def schur_extension(h1, h2) -> tuple[UnitaryOperator, DiagonalSpec, DiagonalSpec]:
    """Unitary and diagonals realizing the 2d-1 pair extension.

    Pipeline: shift the first operator positive definite (margin 1), absorb
    it into a scaled isometry ``L = sqrt(h1) V / lambda`` with
    ``lambda^2 = max spectrum``, solve ``R R^dag = I - h1 / lambda^2`` by the
    spectral theorem dropping the guaranteed null direction, pick ``V`` to
    diagonalize ``lambda^2 h1^{-1/2} h2 h1^{-1/2}``, and complete ``[L | R]``
    to a unitary.  The identity shift is undone on the first diagonal.
    """
    a, b = as_hermitian(h1), as_hermitian(h2)
    if a.dim != b.dim:
        raise ValueError("operators must share a dimension")
    d = a.dim
    if d < 2:
        raise ValueError("schur extension needs dimension >= 2")

    w1, v1 = np.linalg.eigh(a.matrix)
    alpha = 1.0 - w1[0]
    wp = w1 + alpha  # spectrum of the shifted operator; min is exactly 1
    lam2 = wp[-1]
    sqrt_h = (v1 * np.sqrt(wp)) @ v1.conj().T
    inv_sqrt_h = (v1 * (1.0 / np.sqrt(wp))) @ v1.conj().T

    # R R^dag = I - h1p / lam2, rank at most d - 1 by the choice of lam2
    comp = np.eye(d) - (v1 * (wp / lam2)) @ v1.conj().T
    wr, vr = np.linalg.eigh((comp + comp.conj().T) / 2)
    order = np.argsort(wr)[::-1]
    dvals = np.clip(wr[order][: d - 1], 0.0, None)
    r = vr[:, order][:, : d - 1] * np.sqrt(dvals)

    mid = lam2 * inv_sqrt_h @ b.matrix @ inv_sqrt_h
    d2l, v = eig_hermitian(HermitianOperator((mid + mid.conj().T) / 2))
    left = (sqrt_h @ v.matrix) / np.sqrt(lam2)

    u = complete_to_unitary(np.hstack([left, r]))
    diag1 = np.concatenate([np.full(d, lam2 - alpha), np.full(d - 1, -alpha)])
    diag2 = np.concatenate([d2l.values, np.zeros(d - 1)])
    return u, DiagonalSpec(diag1), DiagonalSpec(diag2)


def purify_pair_schur(h1, h2) -> Purification:
    """Pair extension into dimension ``2d - 1``."""
    a, b = as_hermitian(h1), as_hermitian(h2)
    if a.dim != b.dim:
        raise ValueError("operators must share a dimension")
    if a.dim == 1:
        p = trivial_embedding([a, b], d_E=1)
        return Purification(p.inputs, p.extended, p.convention, "schur2dm1")
    u, diag1, diag2 = schur_extension(a, b)
    um = u.matrix
    ext1 = (um * diag1.values) @ um.conj().T
    ext2 = (um * diag2.values) @ um.conj().T
    conv = ProjectionConvention(a.dim, 2 * a.dim - 1, "top-left")
    return Purification((a, b), (HermitianOperator(ext1), HermitianOperator(ext2)), conv, "schur2dm1")


def purify_m_md(hs) -> Purification:
    """Extension of m operators into dimension m*d via a partial isometry.

    The isometry stacks the eigenbases ``U_i`` of the inputs side by side,
    scaled by ``1/sqrt(m)``; its rows are completed to a unitary and each
    extended operator is diagonal (``m * D_i`` in ancilla slot i) in that
    common basis.
    """
    ops = [as_hermitian(h) for h in hs]
    m = len(ops)
    if m == 0:
        raise ValueError("need at least one operator")
    d = ops[0].dim
    if any(h.dim != d for h in ops):
        raise ValueError("operators must share a dimension")

    eigs = [eig_hermitian(h) for h in ops]
    w_rows = np.hstack([v.matrix for _, v in eigs]) / np.sqrt(m)
    u = complete_to_unitary(w_rows)
    um = u.matrix
    extended = []
    for i, (diag, _) in enumerate(eigs):
        full = np.zeros(m * d)
        full[i * d : (i + 1) * d] = m * diag.values
        extended.append(HermitianOperator((um * full) @ um.conj().T))
    conv = ProjectionConvention(d, m * d, "top-left")
    return Purification(tuple(ops), tuple(extended), conv, "md")


def recombine(p: Purification, alpha) -> Purification:
    """Purification of real linear combinations of the inputs.

    ``alpha`` is a real m' x m matrix; row i defines the combination
    ``sum_j alpha[i, j] * h_j`` and the same combination of the extensions.
    """
    al = np.asarray(alpha, dtype=float)
    if al.ndim != 2 or al.shape[1] != p.m:
        raise ValueError(f"coefficient matrix must have {p.m} columns")
    ins = [sum(c * h.matrix for c, h in zip(row, p.inputs)) for row in al]
    exts = [sum(c * h.matrix for c, h in zip(row, p.extended)) for row in al]
    return Purification(
        tuple(HermitianOperator(h) for h in ins),
        tuple(HermitianOperator(h) for h in exts),
        p.convention,
        "manual",
    )


def shift(p: Purification, lambdas) -> Purification:
    """Shift each input by ``lambda_j * I_d`` and its extension accordingly."""
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape != (p.m,):
        raise ValueError(f"need {p.m} shift values")
    ins = [h.matrix + l * np.eye(p.d) for h, l in zip(p.inputs, lam)]
    exts = [h.matrix + l * np.eye(p.d_E) for h, l in zip(p.extended, lam)]
    return Purification(
        tuple(HermitianOperator(h) for h in ins),
        tuple(HermitianOperator(h) for h in exts),
        p.convention,
        p.method,
    )


def conjugate(p: Purification, u: UnitaryOperator) -> Purification:
    """Conjugate inputs by ``u`` and extensions by ``u`` padded with identity."""
    if u.dim != p.d:
        raise ValueError("unitary dimension must match the embedded dimension")
    big = np.eye(p.d_E, dtype=complex)
    b = p.convention.block()
    big[b, b] = u.matrix
    ins = [u.matrix @ h.matrix @ u.matrix.conj().T for h in p.inputs]
    exts = [big @ h.matrix @ big.conj().T for h in p.extended]
    return Purification(
        tuple(HermitianOperator(h) for h in ins),
        tuple(HermitianOperator(h) for h in exts),
        p.convention,
        p.method,
    )
