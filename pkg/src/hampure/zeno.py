"""Repeated project-evolve products and their convergence to projected
dynamics.

The product ``(P e^{-iHt/N} P)^N`` converges to ``P e^{-i (PHP) t}`` as N
grows; the error is measured in operator norm (the limit statement is an
operator limit), decaying like 1/N.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .linalg import (
    HermitianOperator,
    ProjectionConvention,
    as_hermitian,
    embed,
    project,
    spectral_norm,
)


def evolution(h, t: float) -> np.ndarray:
    """``e^{-iHt}`` for Hermitian H via eigendecomposition (exactly unitary
    up to roundoff, which matters more than speed at these sizes)."""
    hm = as_hermitian(h).matrix
    w, v = np.linalg.eigh(hm)
    return (v * np.exp(-1j * t * w)) @ v.conj().T


def zeno_product(h, conv: ProjectionConvention, t: float, n: int) -> np.ndarray:
    """The d_E x d_E matrix ``(P e^{-iHt/N} P)^N``."""
    if n < 1:
        raise ValueError("need N >= 1")
    if not np.isfinite(t):
        raise ValueError("time must be finite")
    hop = as_hermitian(h)
    if hop.dim != conv.d_E:
        raise ValueError(f"operator dimension {hop.dim} does not match d_E={conv.d_E}")
    p = conv.matrix()
    step = p @ evolution(hop, t / n) @ p
    return np.linalg.matrix_power(step, n)


def zeno_limit_error(h, conv: ProjectionConvention, t: float, n: int) -> float:
    """Operator-norm distance from the product to the projected evolution."""
    hop = as_hermitian(h)
    block = project(hop, conv)
    target = np.zeros((conv.d_E, conv.d_E), dtype=complex)
    b = conv.block()
    target[b, b] = evolution(block, t)
    return spectral_norm(zeno_product(hop, conv, t, n) - target)


@dataclass(frozen=True)
class ZenoRun:
    operator: HermitianOperator
    convention: ProjectionConvention
    t: float
    N_values: tuple[int, ...]
    errors: tuple[float, ...]

    def __post_init__(self):
        ns = tuple(int(n) for n in self.N_values)
        if len(ns) == 0 or any(n < 1 for n in ns) or any(b <= a for a, b in zip(ns, ns[1:])):
            raise ValueError("N values must be strictly increasing positive integers")
        errs = tuple(float(e) for e in self.errors)
        if len(errs) != len(ns) or any(e < 0 for e in errs):
            raise ValueError("need one non-negative error per N")
        object.__setattr__(self, "N_values", ns)
        object.__setattr__(self, "errors", errs)

    def slope(self) -> float:
        return loglog_slope(self.N_values, self.errors)


def zeno_run(h, conv: ProjectionConvention, t: float, n_values) -> ZenoRun:
    hop = as_hermitian(h)
    errors = tuple(zeno_limit_error(hop, conv, t, int(n)) for n in n_values)
    return ZenoRun(hop, conv, t, tuple(int(n) for n in n_values), errors)


def loglog_slope(n_values, errors) -> float:
    """Least-squares slope of log(error) against log(N).

    Non-positive errors (exactly converged points) are dropped; with fewer
    than two usable points the slope is undefined and NaN is returned.
    """
    ns = np.asarray(n_values, dtype=float)
    es = np.asarray(errors, dtype=float)
    keep = es > 0
    if int(keep.sum()) < 2:
        return float("nan")
    x = np.log(ns[keep])
    y = np.log(es[keep])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
