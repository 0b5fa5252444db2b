"""Rank, kernel, and eigenvalue-cluster multiplicity helpers.

Multiplicity oracles are built by conjugating known Jordan structures
with random well-conditioned similarity transforms, so both the
algebraic and geometric answers are known exactly.
"""

import numpy as np
import pytest

from pyrastab.linalg import (
    cluster_multiplicity,
    kernel_basis,
    numerical_rank,
    spectral_norm,
)


def test_spectral_norm_matches_svd():
    rng = np.random.default_rng(2)
    for _ in range(10):
        a = rng.standard_normal((4, 4))
        assert spectral_norm(a) == pytest.approx(np.linalg.svd(a, compute_uv=False)[0])


def test_numerical_rank_on_constructed_matrices():
    rng = np.random.default_rng(5)
    u, _ = np.linalg.qr(rng.standard_normal((5, 5)))
    v, _ = np.linalg.qr(rng.standard_normal((5, 5)))
    for r in range(6):
        s = np.zeros(5)
        s[:r] = np.linspace(1.0, 2.0, r) if r else []
        a = u @ np.diag(s) @ v.T
        assert numerical_rank(a) == r


def test_kernel_basis_spans_the_kernel():
    rng = np.random.default_rng(8)
    # 2-dimensional kernel by construction
    b = rng.standard_normal((5, 3))
    a = b @ rng.standard_normal((3, 5))
    basis = kernel_basis(a)
    assert basis.shape == (5, 2)
    assert np.linalg.norm(a @ basis) <= 1e-10 * spectral_norm(a)
    # orthonormal columns
    assert basis.conj().T @ basis == pytest.approx(np.eye(2), abs=1e-12)


def test_kernel_basis_full_rank_is_empty():
    assert kernel_basis(np.eye(3)).shape == (3, 0)


def _similar(rng, block):
    n = block.shape[0]
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    return q @ block @ q.T


def test_cluster_multiplicity_semisimple():
    rng = np.random.default_rng(21)
    # eigenvalue 2 with algebraic = geometric = 3
    a = _similar(rng, np.diag([2.0, 2.0, 2.0, -1.0, 0.5]))
    alg, geo = cluster_multiplicity(a, 2.0 + 0.0j, 1e-6, 1e4)
    assert (alg, geo) == (3, 3)


def test_cluster_multiplicity_jordan_block():
    rng = np.random.default_rng(22)
    block = np.diag([1.5, 1.5, 1.5, -0.3]).astype(float)
    block[0, 1] = 1.0
    block[1, 2] = 1.0  # one 3x3 Jordan block at 1.5
    # a defective triple splits like eps^(1/3) ~ 6e-6 under roundoff, so
    # the cluster band has to sit above that radius
    alg, geo = cluster_multiplicity(_similar(rng, block), 1.5 + 0.0j, 1e-4, 1e4)
    assert (alg, geo) == (3, 1)


def test_cluster_multiplicity_mixed_structure():
    rng = np.random.default_rng(23)
    block = np.diag([1.0, 1.0, 1.0, 2.0]).astype(float)
    block[0, 1] = 1.0  # 2x2 Jordan block plus a 1x1 at the same eigenvalue
    alg, geo = cluster_multiplicity(_similar(rng, block), 1.0 + 0.0j, 1e-6, 1e4)
    assert (alg, geo) == (3, 2)


def test_cluster_multiplicity_absent_eigenvalue():
    rng = np.random.default_rng(24)
    a = _similar(rng, np.diag([0.2, -0.7, 1.8]))
    alg, geo = cluster_multiplicity(a, 1.0 + 0.0j, 1e-6, 1e4)
    assert (alg, geo) == (0, 0)


def test_cluster_multiplicity_complex_eigenvalue():
    rng = np.random.default_rng(25)
    rot = np.array([[0.0, -1.0], [1.0, 0.0]])
    a = _similar(rng, np.block([[rot, np.zeros((2, 2))], [np.zeros((2, 2)), rot]]))
    alg, geo = cluster_multiplicity(a, 1.0j, 1e-6, 1e4)
    assert (alg, geo) == (2, 2)


def test_cluster_multiplicity_respects_radius():
    a = np.diag([1.0, 1.0 + 1e-3])
    alg_tight, _ = cluster_multiplicity(a, 1.0 + 0.0j, 1e-6, 1e4)
    alg_wide, _ = cluster_multiplicity(a, 1.0 + 0.0j, 1e-2, 1e4)
    assert alg_tight == 1
    assert alg_wide == 2
