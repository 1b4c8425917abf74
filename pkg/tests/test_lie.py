import numpy as np
import pytest

from hampure.constructions import verify
from hampure.lie import (
    generator_pair,
    generator_purification,
    lie_closure,
    random_commuting_pair_test,
)
from hampure.linalg import random_hermitian, random_unitary_haar

from conftest import X, Y, Z


def closure_dim_bruteforce(gens, max_rounds=4):
    """Independent oracle: accumulate all pairwise brackets and measure the
    span rank by SVD on real vectorizations."""
    span = [np.asarray(g, dtype=complex) for g in gens]

    def rank(mats):
        vecs = np.array([np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in mats])
        return np.linalg.matrix_rank(vecs, tol=1e-8)

    r = rank(span)
    for _ in range(max_rounds):
        new = [1j * (a @ b - b @ a) for a in span for b in span]
        span = span + new
        r_new = rank(span)
        if r_new == r:
            return r
        r = r_new
        # keep the list small: restart from an orthogonal basis of the span
        vecs = np.array([np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in span])
        _, s, vt = np.linalg.svd(vecs, full_matrices=False)
        keep = vt[s > 1e-8 * s[0]]
        n = gens[0].shape[0]
        span = [row[: n * n].reshape(n, n) + 1j * row[n * n :].reshape(n, n) for row in keep]
    return r


class TestLieClosure:
    def test_single_generator(self):
        assert lie_closure([Z]).dimension == 1

    def test_xy_closes_to_three(self):
        # i[X, Y] = -2Z completes the traceless algebra; identity is absent
        rep = lie_closure([X, Y])
        assert rep.dimension == 3
        assert not rep.saturated

    def test_projector_plus_x_saturates(self):
        rep = lie_closure([np.diag([1.0, 0.0]).astype(complex), X])
        assert rep.dimension == 4
        assert rep.saturated
        assert rep.dimension == closure_dim_bruteforce(
            [np.diag([1.0 + 0j, 0.0]), X]
        )

    def test_against_bruteforce_oracle_random(self):
        rng = np.random.default_rng(23)
        for _ in range(5):
            gens = [random_hermitian(2, rng).matrix, random_hermitian(2, rng).matrix]
            assert lie_closure(gens).dimension == closure_dim_bruteforce(gens)

    def test_basis_is_orthonormal(self):
        rng = np.random.default_rng(24)
        rep = lie_closure([random_hermitian(3, rng), random_hermitian(3, rng)])
        mats = [b.matrix for b in rep.basis]
        gram = np.array([[np.trace(a @ b).real for b in mats] for a in mats])
        assert np.max(np.abs(gram - np.eye(len(mats)))) < 1e-10

    def test_generators_lie_in_span(self):
        rng = np.random.default_rng(25)
        gens = [random_hermitian(4, rng) for _ in range(2)]
        rep = lie_closure(gens)
        for g in gens:
            residual = g.matrix.copy()
            for b in rep.basis:
                residual = residual - np.trace(b.matrix @ residual).real * b.matrix
            assert np.linalg.norm(residual) < 1e-10 * max(1.0, g.norm())

    def test_monotone_in_generators(self):
        rng = np.random.default_rng(26)
        gens = [random_hermitian(3, rng) for _ in range(2)]
        base = lie_closure(gens[:1]).dimension
        assert lie_closure(gens).dimension >= base

    def test_invariant_under_conjugation(self):
        rng = np.random.default_rng(27)
        gens = [random_hermitian(3, rng).matrix for _ in range(2)]
        u = random_unitary_haar(3, rng).matrix
        rotated = [u @ g @ u.conj().T for g in gens]
        assert lie_closure(gens).dimension == lie_closure(rotated).dimension

    def test_max_dim_cap(self):
        rep = lie_closure([np.diag([1.0, 0.0]).astype(complex), X], max_dim=2)
        assert rep.dimension == 2
        assert not rep.saturated

    def test_empty_input(self):
        with pytest.raises(ValueError):
            lie_closure([])


class TestGeneratorPurification:
    def test_inputs_are_the_generating_pair(self):
        h1, h2 = generator_pair(4)
        assert np.array_equal(np.diagonal(h1.matrix), [1, 0, 0, 0])
        assert np.array_equal(h2.matrix, h2.matrix.T)
        assert h2.matrix[0, 1] == 1 and h2.matrix[2, 3] == 1 and h2.matrix[0, 2] == 0

    def test_corner_entries_d3(self):
        p = generator_purification(3)
        e1, e2 = p.extended[0].matrix, p.extended[1].matrix
        assert e1[0, 0] == 0.5
        assert e1[0, 1] == pytest.approx(-1 / np.sqrt(2))
        assert e1[1, 1] == 1.0
        assert e2[0, 2] == pytest.approx(np.sqrt(2))
        assert e2[2, 0] == pytest.approx(np.sqrt(2))
        assert e2[0, 1] == 0.0

    def test_verify_machine_precision(self):
        for d in range(2, 9):
            p = generator_purification(d)
            assert p.d_E == d + 1
            assert p.convention.placement == "bottom-right"
            rep = verify(p, 1e-12)
            assert rep.passed, (d, rep)

    def test_projected_pair_saturates(self):
        for d in (2, 3, 4):
            p = generator_purification(d)
            rep = lie_closure([h.matrix for h in p.inputs])
            assert rep.saturated, d


class TestRandomCommutingPair:
    def test_generic_pairs_saturate(self):
        for seed in range(10):
            rep = random_commuting_pair_test(2, seed=seed)
            assert rep.saturated

    def test_higher_dimension(self):
        for seed in range(3):
            assert random_commuting_pair_test(4, seed=seed).saturated

    def test_degenerate_pair_constructed_deliberately(self):
        # equal diagonals give h1 = h2: the closure is tiny, not saturated
        rng = np.random.default_rng(0)
        v = random_unitary_haar(3, rng).matrix
        vals = rng.standard_normal(3)
        h = (v * vals) @ v.conj().T
        h = h[:2, :2]
        rep = lie_closure([h, h])
        assert rep.dimension == 1
        assert not rep.saturated

    def test_reproducible(self):
        assert random_commuting_pair_test(3, seed=5) == random_commuting_pair_test(3, seed=5)
