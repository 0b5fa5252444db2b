"""Small dense linear-algebra helpers shared by the spectral modules.

Rank decisions use the usual relative singular-value cutoff; multiplicity
of an eigenvalue *cluster* goes through an ordered Schur form so that the
answer survives non-normality (raw singular-value thresholds against a
badly scaled matrix do not).
"""

from __future__ import annotations

import numpy as np
import scipy.linalg

from .errors import NumericalError

__all__ = [
    "spectral_norm",
    "rank_cutoff",
    "numerical_rank",
    "kernel_basis",
    "cluster_multiplicity",
]


def spectral_norm(a: np.ndarray) -> float:
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


def rank_cutoff(svals: np.ndarray, n: int, rank_factor: float) -> float:
    # relative cutoff: anything below N*eps*sigma_max*rank_factor counts as zero
    smax = float(svals[0]) if len(svals) else 0.0
    return n * np.finfo(float).eps * smax * rank_factor


def numerical_rank(a: np.ndarray, rank_factor: float = 1e4) -> int:
    a = np.atleast_2d(np.asarray(a))
    svals = scipy.linalg.svdvals(a)
    if len(svals) == 0:
        return 0
    tau = rank_cutoff(svals, max(a.shape), rank_factor)
    return int(np.count_nonzero(svals > tau))


def kernel_basis(a: np.ndarray, rank_factor: float = 1e4) -> np.ndarray:
    """Orthonormal basis of the (numerical) null space, shape (n, dim)."""
    a = np.atleast_2d(np.asarray(a))
    _, svals, vh = scipy.linalg.svd(a)
    tau = rank_cutoff(svals, max(a.shape), rank_factor)
    rank = int(np.count_nonzero(svals > tau))
    return vh[rank:].conj().T


def cluster_multiplicity(
    a: np.ndarray,
    value: complex,
    band: float,
    rank_factor: float = 1e4,
) -> tuple[int, int]:
    """Algebraic and geometric multiplicity of the eigenvalue cluster of
    ``a`` within distance ``band`` of ``value``.

    The cluster is isolated by a sorted complex Schur form; with
    ``T = [[T11, T12], [0, T22]]`` and the cluster confined to ``T11``,
    ``T22 - value*I`` is invertible, so the eigenspace dimension of the
    full matrix equals ``dim ker(T11 - value*I)``.
    """
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("cluster_multiplicity needs a square matrix")

    t, _, sdim = scipy.linalg.schur(
        a, output="complex", sort=lambda mu: abs(mu - value) <= band
    )
    sdim = int(sdim)
    if sdim == 0:
        return 0, 0
    diag = np.diagonal(t)[:sdim]
    if np.any(np.abs(diag - value) > band):
        # sort callback and reordering disagree; should not happen
        raise NumericalError("Schur reordering failed to isolate the cluster")

    block = t[:sdim, :sdim] - value * np.eye(sdim)
    svals = scipy.linalg.svdvals(block)
    # Two zero scales compete inside the block: roundoff relative to the
    # block itself, and the cluster radius (eigenvalues may sit anywhere
    # within `band` of `value` and still belong to the eigenspace at this
    # resolution).  Jordan coupling shows up as O(1) entries, far above
    # either.
    tau = max(rank_cutoff(svals, sdim, rank_factor), 10.0 * band)
    rank = int(np.count_nonzero(svals > tau))
    return sdim, max(sdim - rank, 0)
