"""Lie closure of Hermitian generators and the one-extra-dimension
generator extension.

Hermitian matrices are treated as a real vector space with inner product
Tr(AB); the closure is grown breadth-first by the bracket i[a, b], with each
candidate normalized before an orthogonality rank test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constructions import Purification
from .linalg import (
    DiagonalSpec,
    HermitianOperator,
    ProjectionConvention,
    as_hermitian,
    hermitian_coords,
    hermitian_from_coords,
    random_unitary_haar,
)


@dataclass(frozen=True)
class LieClosureReport:
    dimension: int
    basis: tuple[HermitianOperator, ...]
    generations: int
    saturated: bool


def lie_closure(gens, max_dim: int | None = None, tol: float = 1e-8) -> LieClosureReport:
    """Smallest real Lie algebra containing the generators.

    Iterates i[a, b] over (current basis) x (elements added last round),
    orthogonalizing candidates against the running basis with relative rank
    cutoff ``tol``; stops when no new direction appears or ``max_dim``
    (default d^2) is reached.  ``saturated`` means the closure is all of the
    d^2-dimensional operator algebra.
    """
    mats = [as_hermitian(g).matrix for g in gens]
    if not mats:
        raise ValueError("need at least one generator")
    d = mats[0].shape[0]
    if any(m.shape[0] != d for m in mats):
        raise ValueError("generators must share a dimension")
    if max_dim is None:
        max_dim = d * d

    basis_vecs: list[np.ndarray] = []
    basis_mats: list[np.ndarray] = []

    def try_add(mat: np.ndarray) -> bool:
        v = hermitian_coords(mat)
        nv = np.linalg.norm(v)
        if nv < 1e-14:
            return False
        v = v / nv
        for _ in range(2):  # two passes keep the basis orthonormal to ~1e-15
            for b in basis_vecs:
                v = v - (b @ v) * b
        res = np.linalg.norm(v)
        if res <= tol:
            return False
        v /= res
        basis_vecs.append(v)
        basis_mats.append(hermitian_from_coords(v, d))
        return True

    for m in mats:
        try_add(m)

    generations = 0
    prev = 0
    while prev < len(basis_mats) and len(basis_mats) < max_dim:
        snapshot = len(basis_mats)
        new = basis_mats[prev:snapshot]
        done = False
        for a in basis_mats[:snapshot]:
            for b in new:
                cand = 1j * (a @ b - b @ a)
                try_add(cand)
                if len(basis_mats) >= max_dim:
                    done = True
                    break
            if done:
                break
        prev = snapshot
        generations += 1
        if done:
            break

    return LieClosureReport(
        dimension=len(basis_mats),
        basis=tuple(HermitianOperator(m) for m in basis_mats),
        generations=generations,
        saturated=(len(basis_mats) == d * d),
    )


def generator_pair(d: int) -> tuple[HermitianOperator, HermitianOperator]:
    """A simple pair generating the full algebra: a rank-one diagonal and the
    nearest-neighbour hopping matrix."""
    if d < 2:
        raise ValueError("need d >= 2")
    h1 = np.zeros((d, d), dtype=complex)
    h1[0, 0] = 1.0
    h2 = np.zeros((d, d), dtype=complex)
    for k in range(d - 1):
        h2[k, k + 1] = h2[k + 1, k] = 1.0
    return HermitianOperator(h1), HermitianOperator(h2)


def generator_purification(d: int) -> Purification:
    """Commuting extension of the generating pair with a single extra dimension.

    The extension grows the space upward (placement bottom-right): the
    corner entries are exact halves and square roots, so both invariants
    hold to machine precision.
    """
    h1, h2 = generator_pair(d)
    n = d + 1
    sq2 = np.sqrt(2.0)

    ext1 = np.zeros((n, n), dtype=complex)
    ext1[0, 0] = 0.5
    ext1[0, 1] = ext1[1, 0] = -1.0 / sq2
    ext1[1, 1] = 1.0

    ext2 = np.zeros((n, n), dtype=complex)
    ext2[0, 2] = ext2[2, 0] = sq2
    for k in range(1, d):
        ext2[k, k + 1] = ext2[k + 1, k] = 1.0

    conv = ProjectionConvention(d, n, "bottom-right")
    return Purification(
        inputs=(h1, h2),
        extended=(HermitianOperator(ext1), HermitianOperator(ext2)),
        convention=conv,
        method="generator_dp1",
    )


@dataclass(frozen=True)
class CommutingPairReport:
    closure_dim: int
    saturated: bool

    def to_dict(self) -> dict:
        return {"closure_dim": self.closure_dim, "saturated": self.saturated}


def random_commuting_pair_test(d: int, seed=None) -> CommutingPairReport:
    """Project a random commuting pair from dimension d+1 and close it.

    Samples a Haar unitary on dimension d+1 with two random diagonals, keeps
    the top-left d block of both operators, and reports the closure size;
    generically the projected pair generates everything.
    """
    if d < 2:
        raise ValueError("need d >= 2")
    rng = np.random.default_rng(seed)
    v = random_unitary_haar(d + 1, rng).matrix
    spec1 = DiagonalSpec(rng.standard_normal(d + 1))
    spec2 = DiagonalSpec(rng.standard_normal(d + 1))
    hs = []
    for spec in (spec1, spec2):
        full = (v * spec.values) @ v.conj().T
        hs.append(HermitianOperator(full[:d, :d]))
    report = lie_closure(hs)
    return CommutingPairReport(closure_dim=report.dimension, saturated=report.saturated)
