"""Chebyshev-Lobatto collocation primitives.

Nodes are stored ascending on the target interval.  Interpolation goes
through the barycentric formula; the cumulative integration matrix maps
node values of a function to node values of its antiderivative (zero at
the left endpoint) via Chebyshev coefficient space, so it is spectrally
accurate for smooth integrands.
"""

from __future__ import annotations

import numpy as np
from numpy.polynomial import chebyshev as cheb

__all__ = [
    "lobatto_nodes",
    "barycentric_weights",
    "interp_row",
    "chebyshev_coefficients",
    "cumulative_matrix",
]


def lobatto_nodes(m: int, a: float, b: float) -> np.ndarray:
    """m Chebyshev-Lobatto points on [a, b], ascending, endpoints included."""
    if m < 2:
        raise ValueError("need at least two nodes")
    x = np.cos(np.pi * np.arange(m) / (m - 1))[::-1]
    return 0.5 * (a + b) + 0.5 * (b - a) * x


def barycentric_weights(m: int) -> np.ndarray:
    """Barycentric weights for Lobatto nodes (any interval, either
    orientation: a global sign or scale cancels in the formula)."""
    w = np.ones(m)
    w[1::2] = -1.0
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


def interp_row(nodes: np.ndarray, weights: np.ndarray, s: float) -> np.ndarray:
    """Row ell with interpolant(s) = ell @ values_at_nodes."""
    diff = s - nodes
    span = nodes[-1] - nodes[0]
    hit = np.abs(diff) <= 1e-14 * span
    if np.any(hit):
        row = np.zeros(len(nodes))
        row[int(np.argmax(hit))] = 1.0
        return row
    row = weights / diff
    return row / row.sum()


def chebyshev_coefficients(values: np.ndarray) -> np.ndarray:
    """Coefficients a with p = sum a_n T_n matching values at ascending
    Lobatto nodes on [-1, 1] (DCT-I through an even extension)."""
    v = np.asarray(values, dtype=float)[::-1]  # descending = cos(k pi / (m-1))
    m = len(v)
    ext = np.concatenate([v, v[-2:0:-1]])
    f = np.fft.rfft(ext).real / (m - 1)
    a = f[:m].copy()
    a[0] *= 0.5
    a[-1] *= 0.5
    return a


def cumulative_matrix(nodes: np.ndarray) -> np.ndarray:
    """Matrix Q with (Q v)_i = integral from nodes[0] to nodes[i] of the
    polynomial interpolating v at the nodes."""
    nodes = np.asarray(nodes, dtype=float)
    m = len(nodes)
    unit = lobatto_nodes(m, -1.0, 1.0)
    scale = 0.5 * (nodes[-1] - nodes[0])
    q = np.empty((m, m))
    for j in range(m):
        e = np.zeros(m)
        e[j] = 1.0
        anti = cheb.chebint(chebyshev_coefficients(e))
        q[:, j] = (cheb.chebval(unit, anti) - cheb.chebval(-1.0, anti)) * scale
    return q
