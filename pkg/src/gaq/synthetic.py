"""Synthetic networks and band-limited regression instances.

Three standard topology families (small-world ring rewiring, stochastic
block model, preferential attachment) are implemented in-library so the
random streams and connectivity retries are part of the reproducibility
contract. Instances pair a graph with a band-limited true signal, noisy
responses, and covariates perturbed by high-frequency eigenvector mixes.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .covariates import CovariateMatrix
from .errors import DisconnectedGraph, GenerationFailed, IndexRangeInvalid
from .graph import LOWPASS, build_graph, spectral_basis
from .seeding import substream

_MAX_RETRIES = 100
_TOPOLOGY_STREAM = 11
_PERTURB_STREAM = 13
_NOISE_STREAM = 17


@dataclass(frozen=True)
class WattsStrogatz:
    """Ring lattice with ``neighbors`` nearest neighbors and random rewiring."""

    neighbors: int = 4
    rewire_prob: float = 0.1


@dataclass(frozen=True)
class StochasticBlock:
    """Balanced communities with within/between edge probabilities."""

    communities: int = 4
    p_in: float = 0.35
    p_out: float = 0.01


@dataclass(frozen=True)
class BarabasiAlbert:
    """Preferential attachment adding ``attachments`` edges per new node."""

    attachments: int = 3


@dataclass(frozen=True)
class SyntheticSpec:
    """Recipe for one synthetic regression instance.

    ``signal_range`` and ``perturb_range`` are 1-based inclusive index
    ranges into the ascending Laplacian eigenbasis. ``beta`` must match the
    signal range width. ``perturb_range=None`` (or zero mean and sd) gives
    clean covariates equal to the signal-range eigenvectors.
    """

    topology: object
    n: int
    signal_range: tuple
    beta: tuple
    perturb_range: tuple | None = None
    perturb_mean: float = 0.0
    perturb_sd: float = 0.0
    noise_sigma2: float = 0.0
    seed: int = 0


@dataclass(frozen=True)
class SyntheticInstance:
    """A generated graph with covariates, noisy responses, and ground truth."""

    graph: object
    X: CovariateMatrix
    Y: np.ndarray
    f_true: np.ndarray


def benchmark_spec(topology, n=100, noise_sigma2=0.0, seed=0):
    """Standard instance recipes for the three topology families.

    ``"ws"`` and ``"sbm"``: signal on eigenvectors 1..10 with coefficients
    5, covariates perturbed by eigenvectors 45..54 mixed with N(0.3, 0.1)
    entries. ``"ba"``: signal on 1..15 with coefficients (1 x5, 5 x10),
    perturbation from 45..59 with N(0.5, 0.2) entries.
    """
    if topology in ("ws", "sbm"):
        topo = WattsStrogatz() if topology == "ws" else StochasticBlock()
        return SyntheticSpec(
            topology=topo,
            n=n,
            signal_range=(1, 10),
            beta=tuple([5.0] * 10),
            perturb_range=(45, 54),
            perturb_mean=0.3,
            perturb_sd=0.1,
            noise_sigma2=noise_sigma2,
            seed=seed,
        )
    if topology == "ba":
        return SyntheticSpec(
            topology=BarabasiAlbert(),
            n=n,
            signal_range=(1, 15),
            beta=tuple([1.0] * 5 + [5.0] * 10),
            perturb_range=(45, 59),
            perturb_mean=0.5,
            perturb_sd=0.2,
            noise_sigma2=noise_sigma2,
            seed=seed,
        )
    raise ValueError(f"unknown topology {topology!r}; expected 'ws', 'sbm', or 'ba'")


def generate_graph(spec):
    """Generate a connected graph, retrying with fresh sub-streams.

    Each retry draws from an independent stream derived from the spec seed;
    after 100 failures the generation aborts.
    """
    for attempt in range(_MAX_RETRIES):
        rng = substream(spec.seed, _TOPOLOGY_STREAM, attempt)
        edges = _topology_edges(spec.topology, spec.n, rng)
        try:
            return build_graph(spec.n, edges)
        except DisconnectedGraph:
            continue
    raise GenerationFailed(
        f"no connected graph after {_MAX_RETRIES} attempts for {spec.topology!r}"
    )


def _topology_edges(topology, n, rng):
    if isinstance(topology, WattsStrogatz):
        return _watts_strogatz_edges(n, topology.neighbors, topology.rewire_prob, rng)
    if isinstance(topology, StochasticBlock):
        return _stochastic_block_edges(n, topology.communities, topology.p_in, topology.p_out, rng)
    if isinstance(topology, BarabasiAlbert):
        return _barabasi_albert_edges(n, topology.attachments, rng)
    raise ValueError(f"unknown topology {topology!r}")


def _watts_strogatz_edges(n, neighbors, rewire_prob, rng):
    if neighbors < 2 or neighbors % 2 or neighbors >= n:
        raise ValueError(f"neighbors must be even with 2 <= neighbors < n, got {neighbors}")
    targets = {i: set() for i in range(n)}
    for offset in range(1, neighbors // 2 + 1):
        for i in range(n):
            targets[i].add((i + offset) % n)
    # Rewire the far endpoint of each lattice edge with fixed probability,
    # avoiding self-loops and duplicates (skip when the node is saturated).
    adjacency = {i: set() for i in range(n)}
    for i in range(n):
        for j in targets[i]:
            adjacency[i].add(j)
            adjacency[j].add(i)
    edges = []
    for offset in range(1, neighbors // 2 + 1):
        for i in range(n):
            j = (i + offset) % n
            if rng.random() < rewire_prob and len(adjacency[i]) < n - 1:
                new = int(rng.integers(n))
                while new == i or new in adjacency[i]:
                    new = int(rng.integers(n))
                adjacency[i].discard(j)
                adjacency[j].discard(i)
                adjacency[i].add(new)
                adjacency[new].add(i)
                edges.append((i, new, 1.0))
            else:
                edges.append((i, j, 1.0))
    return edges


def _stochastic_block_edges(n, communities, p_in, p_out, rng):
    if not (0 <= p_in <= 1 and 0 <= p_out <= 1):
        raise ValueError("edge probabilities must lie in [0, 1]")
    if communities < 1:
        raise ValueError("need at least one community")
    membership = np.repeat(np.arange(communities), -(-n // communities))[:n]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            p = p_in if membership[i] == membership[j] else p_out
            if rng.random() < p:
                edges.append((i, j, 1.0))
    return edges


def _barabasi_albert_edges(n, attachments, rng):
    if attachments < 1 or attachments >= n:
        raise ValueError(f"attachments must satisfy 1 <= a < n, got {attachments}")
    edges = []
    endpoints = []
    # Seed clique on the first `attachments` nodes, then degree-proportional
    # attachment of each later node to that many distinct predecessors.
    for i in range(attachments):
        for j in range(i + 1, attachments):
            edges.append((i, j, 1.0))
            endpoints.extend((i, j))
    for node in range(attachments, n):
        chosen = set()
        while len(chosen) < attachments:
            if endpoints:
                candidate = endpoints[int(rng.integers(len(endpoints)))]
            else:
                candidate = int(rng.integers(node))
            chosen.add(candidate)
        for target in sorted(chosen):
            edges.append((node, target, 1.0))
            endpoints.extend((node, target))
    return edges


def _eigen_block(vectors, index_range, n):
    lo, hi = index_range
    if not (1 <= lo <= hi <= n):
        raise IndexRangeInvalid(f"index range {index_range} outside [1, {n}]")
    return vectors[:, lo - 1 : hi]


def generate_instance(spec, noise_seed=None):
    """Build the graph plus (X, Y, f_true) for one replication.

    The graph comes from ``spec.seed``. Covariate perturbation and response
    noise come from ``noise_seed`` when given (so one fixed topology can be
    re-simulated across replications), falling back to the spec seed.
    """
    graph = generate_graph(spec)
    n = spec.n
    top = max(spec.signal_range[1], spec.perturb_range[1] if spec.perturb_range else 0)
    if top > n:
        raise IndexRangeInvalid(f"eigen index {top} exceeds node count {n}")
    basis = spectral_basis(graph, top, LOWPASS)
    block = _eigen_block(basis.eigenvectors, spec.signal_range, n)

    beta = np.asarray(spec.beta, dtype=float)
    if beta.shape != (block.shape[1],):
        raise IndexRangeInvalid(
            f"beta length {beta.size} does not match signal range width {block.shape[1]}"
        )
    f_true = block @ beta

    stream_seed = spec.seed if noise_seed is None else noise_seed
    values = block.copy()
    if spec.perturb_range is not None:
        perturb = _eigen_block(basis.eigenvectors, spec.perturb_range, n)
        rng = substream(stream_seed, _PERTURB_STREAM)
        mixing = spec.perturb_mean + spec.perturb_sd * rng.standard_normal(
            (perturb.shape[1], block.shape[1])
        )
        values = values + perturb @ mixing

    rng = substream(stream_seed, _NOISE_STREAM)
    noise = np.sqrt(spec.noise_sigma2) * rng.standard_normal(n)
    return SyntheticInstance(
        graph=graph,
        X=CovariateMatrix(values),
        Y=f_true + noise,
        f_true=f_true,
    )


def with_sigma(spec, noise_sigma2):
    """Same recipe at a different response-noise level."""
    return replace(spec, noise_sigma2=noise_sigma2)
