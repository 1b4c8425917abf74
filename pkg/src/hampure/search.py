"""Numerical feasibility search for commuting extensions at a candidate
dimension.

The extension ansatz is ``H_j = U diag(D_j) U^dag`` with ``U = exp(iA)``
parametrized over the full Hermitian generator space; the residual is the
summed squared Frobenius distance between the recovered corner blocks and
the targets.  Minimization is quasi-Newton (L-BFGS) with the analytic
gradient, multi-started from seeded random points.  Infeasibility is a
result, never an error: the report carries the restart count so that
negative claims stay honest.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .linalg import (
    DiagonalSpec,
    HermitianOperator,
    UnitaryOperator,
    as_hermitian,
    as_matrix,
    hermitian_coords,
    hermitian_from_coords,
    random_hermitian,
)

#: eigenvalue gaps below this are treated as degenerate in the exp derivative
_DEGENERACY_EPS = 1e-12


def max_workers() -> int:
    """Internal parallelism cap, from the HAMPURE_THREADS environment variable."""
    try:
        return max(1, int(os.environ.get("HAMPURE_THREADS", "1")))
    except ValueError:
        return 1


@dataclass(frozen=True)
class SearchProblem:
    targets: tuple[HermitianOperator, ...]
    d_E: int
    restarts: int = 20
    max_iters: int = 2000
    tol_feasible: float = 1e-7
    seed: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(as_hermitian(h) for h in self.targets))
        if len(self.targets) < 1:
            raise ValueError("need at least one target")
        d = self.targets[0].dim
        if any(h.dim != d for h in self.targets):
            raise ValueError("targets must share a dimension")
        if d > self.d_E:
            raise ValueError(f"candidate dimension {self.d_E} is below d={d}")
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")

    @property
    def d(self) -> int:
        return self.targets[0].dim

    @property
    def m(self) -> int:
        return len(self.targets)


@dataclass(frozen=True)
class SearchResult:
    best_residual: float
    feasible: bool
    best_unitary: UnitaryOperator
    best_diagonals: tuple[DiagonalSpec, ...]
    restarts_used: int
    iterations_used: int

    def to_dict(self) -> dict:
        return {
            "best_residual": self.best_residual,
            "feasible": self.feasible,
            "restarts_used": self.restarts_used,
            "iterations_used": self.iterations_used,
        }


def residual(u, diagonals, targets) -> float:
    """``sum_j || topleft_d(U diag(D_j) U^dag) - h_j ||_F^2``."""
    um = as_matrix(u)
    mats = [as_hermitian(h).matrix for h in targets]
    diags = [d.values if isinstance(d, DiagonalSpec) else np.asarray(d, float) for d in diagonals]
    if len(diags) != len(mats):
        raise ValueError("need one diagonal per target")
    d = mats[0].shape[0]
    d_e = um.shape[0]
    if any(v.shape != (d_e,) for v in diags):
        raise ValueError("diagonal lengths must match the unitary dimension")
    if d > d_e:
        raise ValueError("target dimension exceeds the unitary dimension")
    w = um[:d]
    total = 0.0
    for h, vals in zip(mats, diags):
        rec = (w * vals) @ w.conj().T
        total += float(np.linalg.norm(rec - h) ** 2)
    return total


def _unitary_from_generator(theta: np.ndarray, d_e: int):
    a = hermitian_from_coords(theta, d_e)
    lam, q = np.linalg.eigh(a)
    phase = np.exp(1j * lam)
    u = (q * phase) @ q.conj().T
    return u, lam, q, phase


def _exp_divided_differences(lam: np.ndarray, phase: np.ndarray) -> np.ndarray:
    den = lam[:, None] - lam[None, :]
    num = phase[:, None] - phase[None, :]
    mid = 1j * np.exp(1j * (lam[:, None] + lam[None, :]) / 2)
    small = np.abs(den) < _DEGENERACY_EPS
    den_safe = np.where(small, 1.0, den)
    return np.where(small, mid, num / den_safe)


def objective_and_gradient(x: np.ndarray, target_mats, d: int, d_e: int):
    """Residual and its analytic gradient in (generator, diagonals) coords.

    The gradient through ``U = exp(iA)`` uses the Daleckii-Krein divided
    differences of the exponential on the eigenbasis of A.
    """
    m = len(target_mats)
    n_u = d_e * d_e
    theta = x[:n_u]
    diags = x[n_u:].reshape(m, d_e)

    u, lam, q, phase = _unitary_from_generator(theta, d_e)
    w = u[:d]
    wc = w.conj()

    value = 0.0
    grad_d = np.empty((m, d_e))
    c_sum = np.zeros((d_e, d), dtype=complex)
    for j, h in enumerate(target_mats):
        r = (w * diags[j]) @ wc.T - h
        value += float(np.linalg.norm(r) ** 2)
        t = r @ w  # d x d_E
        grad_d[j] = 2.0 * np.real(np.sum(wc * t, axis=0))
        c_sum += diags[j][:, None] * (wc.T @ r)

    c = np.zeros((d_e, d_e), dtype=complex)
    c[:, :d] = c_sum
    c_tilde = q.conj().T @ c @ q
    phi = _exp_divided_differences(lam, phase)
    g = q @ (c_tilde * phi.T) @ q.conj().T
    grad_theta = 4.0 * hermitian_coords((g + g.conj().T) / 2)

    return value, np.concatenate([grad_theta, grad_d.ravel()])


def _run_restart(rng, target_mats, d, d_e, m, max_iters):
    n_var = d_e * d_e + m * d_e
    x0 = rng.standard_normal(n_var)
    res = minimize(
        objective_and_gradient,
        x0,
        args=(target_mats, d, d_e),
        jac=True,
        method="L-BFGS-B",
        options={"maxiter": max_iters, "maxfun": 10 * max_iters, "ftol": 1e-18, "gtol": 1e-12},
    )
    return float(res.fun), res.x, int(res.nit)


def search(problem: SearchProblem) -> SearchResult:
    """Multi-start minimization of the residual; best restart wins.

    Targets are normalized to unit Frobenius norm so the feasibility
    tolerance is scale-free; the returned diagonals are de-normalized.
    Restarts stop early once a residual far below the tolerance is reached.
    Results are deterministic for a fixed seed, including under the
    HAMPURE_THREADS parallel path (reduction is ordered by restart index).
    """
    d, d_e, m = problem.d, problem.d_E, problem.m
    scales = np.array([h.norm() if h.norm() > 0 else 1.0 for h in problem.targets])
    target_mats = [h.matrix / s for h, s in zip(problem.targets, scales)]

    seed_seq = np.random.SeedSequence(problem.seed)
    children = seed_seq.spawn(problem.restarts)

    best_f = np.inf
    best_x = None
    iterations = 0
    used = 0
    stop_level = problem.tol_feasible * 1e-4

    def run(i):
        return _run_restart(
            np.random.default_rng(children[i]), target_mats, d, d_e, m, problem.max_iters
        )

    workers = min(max_workers(), problem.restarts)
    i = 0
    while i < problem.restarts:
        batch = range(i, min(i + workers, problem.restarts))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(run, batch))
        else:
            outcomes = [run(j) for j in batch]
        for f, x, nit in outcomes:
            used += 1
            iterations += nit
            if f < best_f:
                best_f, best_x = f, x
        i = batch.stop
        if best_f <= stop_level:
            break

    n_u = d_e * d_e
    u, _, _, _ = _unitary_from_generator(best_x[:n_u], d_e)
    diags = best_x[n_u:].reshape(m, d_e)
    return SearchResult(
        best_residual=best_f,
        feasible=bool(best_f <= problem.tol_feasible),
        best_unitary=UnitaryOperator(u),
        best_diagonals=tuple(DiagonalSpec(v * s) for v, s in zip(diags, scales)),
        restarts_used=used,
        iterations_used=iterations,
    )


@dataclass(frozen=True)
class FrontierRow:
    d_E: int
    feasible_fraction: float
    median_residual: float

    def to_dict(self) -> dict:
        return {
            "d_E": self.d_E,
            "feasible_fraction": self.feasible_fraction,
            "median_residual": self.median_residual,
        }


def frontier_scan(
    d: int,
    m: int,
    d_E_values,
    trials: int,
    seed: int = 0,
    restarts: int = 20,
    max_iters: int = 2000,
    tol_feasible: float = 1e-7,
) -> list[FrontierRow]:
    """Feasibility fractions over fresh random target sets per candidate
    dimension; the transition locates the minimal extension dimension."""
    if trials < 1:
        raise ValueError("need at least one trial")
    rows = []
    for d_e in d_E_values:
        d_e = int(d_e)
        feasible = 0
        residuals = []
        for trial in range(trials):
            ss = np.random.SeedSequence([seed, d_e, trial])
            rng = np.random.default_rng(ss)
            targets = [random_hermitian(d, rng) for _ in range(m)]
            result = search(
                SearchProblem(
                    targets=tuple(targets),
                    d_E=d_e,
                    restarts=restarts,
                    max_iters=max_iters,
                    tol_feasible=tol_feasible,
                    seed=int(ss.generate_state(1)[0]),
                )
            )
            feasible += int(result.feasible)
            residuals.append(result.best_residual)
        rows.append(
            FrontierRow(
                d_E=d_e,
                feasible_fraction=feasible / trials,
                median_residual=float(np.median(residuals)),
            )
        )
    return rows
