"""Graph representation, normalized Laplacian, and spectral utilities.

A :class:`Graph` is an undirected, weighted, connected graph stored densely
(the intended scale is a few thousand nodes, where dense symmetric
eigendecomposition is both simple and fast). All functions here are pure:
they never mutate their inputs and are safe to call concurrently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import (
    DisconnectedGraph,
    InvalidDimension,
    NegativeWeight,
    NodeIdOutOfRange,
    SelfLoop,
    ZeroSignal,
)

LOWPASS = "lowpass"
LOWHIGH = "lowhigh"

_SIGN_TOL = 1e-12


@dataclass(frozen=True)
class Graph:
    """Undirected weighted graph with precomputed adjacency and degrees.

    ``edges`` stores each undirected edge once as ``(src, dst, weight)``;
    ``adjacency`` is the full symmetric matrix. Degrees are all strictly
    positive (isolated nodes are rejected at build time).
    """

    n: int
    edges: tuple
    adjacency: np.ndarray
    degrees: np.ndarray


def build_graph(n, edges):
    """Assemble and validate a :class:`Graph` from an edge list.

    Parameters
    ----------
    n : int
        Node count; nodes are ``0 .. n-1``.
    edges : iterable of (src, dst, weight) or (src, dst)
        Each undirected edge once. Missing weights default to 1.0.
        Duplicate edges accumulate additively.

    Raises
    ------
    NodeIdOutOfRange, SelfLoop, NegativeWeight, DisconnectedGraph
    """
    if n < 1:
        raise NodeIdOutOfRange(f"node count must be positive, got {n}")
    adjacency = np.zeros((n, n))
    normalized = []
    for edge in edges:
        if len(edge) == 2:
            u, v = edge
            w = 1.0
        else:
            u, v, w = edge
        u, v, w = int(u), int(v), float(w)
        if not (0 <= u < n and 0 <= v < n):
            raise NodeIdOutOfRange(f"edge ({u}, {v}) outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at node {u}")
        if w < 0:
            raise NegativeWeight(f"edge ({u}, {v}) has weight {w}")
        adjacency[u, v] += w
        adjacency[v, u] += w
        normalized.append((u, v, w))

    _check_connected(adjacency)
    degrees = adjacency.sum(axis=1)
    return Graph(n=n, edges=tuple(normalized), adjacency=adjacency, degrees=degrees)


def _check_connected(adjacency):
    n = adjacency.shape[0]
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in np.nonzero(adjacency[u] > 0)[0]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    if not seen.all():
        missing = int(np.nonzero(~seen)[0][0])
        raise DisconnectedGraph(f"node {missing} is not reachable from node 0")
    if n == 1 or np.any(adjacency.sum(axis=1) <= 0):
        raise DisconnectedGraph("every node needs at least one positively weighted edge")


def normalized_laplacian(g):
    """Return ``L = I - D^{-1/2} A D^{-1/2}`` as a dense symmetric matrix.

    The result is exactly symmetric (symmetrized after scaling) with unit
    diagonal; its spectrum lies in [0, 2] and ``L @ sqrt(degrees)`` is zero.
    """
    scale = 1.0 / np.sqrt(g.degrees)
    lap = -(g.adjacency * scale[:, None] * scale[None, :])
    lap = (lap + lap.T) / 2.0
    np.fill_diagonal(lap, 1.0)
    return lap


@dataclass(frozen=True)
class SpectralBasis:
    """A selected set of Laplacian eigenpairs.

    ``mode`` is ``"lowpass"`` (the d smallest eigenvalues) or ``"lowhigh"``
    (smallest and largest bands combined, low band first). Eigenvalues are
    ascending within each band and eigenvectors are column-orthonormal with
    a deterministic sign (first entry above 1e-12 in magnitude is positive).
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    mode: str


def spectral_basis(g, d, mode=LOWPASS):
    """Compute ``d`` eigenpairs of the normalized Laplacian.

    Low-pass mode needs ``1 <= d <= n``. Low+high mode needs ``2 <= d <= n``;
    the low band gets ``ceil(d/2)`` eigenpairs and the high band the rest.
    """
    n = g.n
    if mode not in (LOWPASS, LOWHIGH):
        raise InvalidDimension(f"unknown mode {mode!r}")
    if mode == LOWPASS and not 1 <= d <= n:
        raise InvalidDimension(f"lowpass needs 1 <= d <= {n}, got {d}")
    if mode == LOWHIGH and not 2 <= d <= n:
        raise InvalidDimension(f"lowhigh needs 2 <= d <= {n}, got {d}")

    lap = normalized_laplacian(g)
    evals, evecs = np.linalg.eigh(lap)
    if mode == LOWPASS:
        idx = np.arange(d)
    else:
        low = (d + 1) // 2
        high = d - low
        idx = np.concatenate([np.arange(low), np.arange(n - high, n)])
    vecs = _fix_signs(evecs[:, idx])
    return SpectralBasis(eigenvalues=evals[idx].copy(), eigenvectors=vecs, mode=mode)


def _fix_signs(vecs):
    vecs = vecs.copy()
    for j in range(vecs.shape[1]):
        col = vecs[:, j]
        nz = np.nonzero(np.abs(col) > _SIGN_TOL)[0]
        if nz.size and col[nz[0]] < 0:
            vecs[:, j] = -col
    return vecs


def bandwidth_estimate(signal, laplacian, k=16):
    """Power-iterate bandwidth estimate ``(g' L^k g / g'g)^(1/k)``.

    Applies the Laplacian ``k`` times to the signal (never forms ``L^k``)
    and returns the k-th root of the Rayleigh quotient, clamped to [0, 2].
    Quotients at or below the double-precision noise floor collapse to 0,
    so null-space signals report bandwidth 0 for any ``k``.
    """
    signal = np.asarray(signal, dtype=float)
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    den = float(signal @ signal)
    if den == 0.0:
        raise ZeroSignal("bandwidth of the zero signal is undefined")
    v = laplacian @ signal
    # A null-space signal reveals itself in one application; detecting it
    # here avoids the k-fold noise amplification of the full power.
    if np.linalg.norm(v) <= 1e-13 * np.sqrt(den):
        return 0.0
    for _ in range(int(k) - 1):
        v = laplacian @ v
    quotient = float(signal @ v) / den
    if quotient <= 1e-20:
        return 0.0
    return min(quotient ** (1.0 / k), 2.0)
