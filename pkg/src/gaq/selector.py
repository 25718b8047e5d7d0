"""End-to-end node selection: the biased sampling loop and baselines.

``select_nodes`` runs the full two-stage loop: barrier-potential sampling
proposes a candidate set, the informativeness score picks one candidate,
and the sampler state is updated, for exactly ``budget`` rounds. Baselines
(uniform random, greedy determinant maximization) share the same result
type so harnesses can treat all strategies uniformly.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from .covariates import DEFAULT_RANK_TOL, smoothed_basis
from .errors import BarrierViolated, BudgetExceedsN, EpsilonOutOfRange, InvalidBudget
from .graph import LOWHIGH, LOWPASS, spectral_basis
from .informative import argmax_score, build_context, info_gain_scores
from .representative import ALGORITHM, apply_selection, draw_candidates, init_state, potential, sampling_probs
from .seeding import derive_seed

log = logging.getLogger("gaq.selector")

SAMPLED = "sampled"
ALL_UNQUERIED = "all_unqueried"

_TUNE_STREAM = 7
_DEFAULT_M_GRID = (5, 10, 20, 50)
CONDITION_THRESHOLD = 10.0


@dataclass(frozen=True)
class SelectorConfig:
    """Knobs for one selection run.

    ``spectral_dim=None`` defaults to ``min(p, budget)``. ``m=None`` means
    auto: the candidate count is tuned by the condition-number rule before
    the final run. ``candidate_mode="all_unqueried"`` disables the
    representative sampling stage (every unqueried node is a candidate),
    which exists for ablation studies.
    """

    budget: int
    spectral_dim: int | None = None
    mode: str = LOWPASS
    m: int | None = None
    epsilon: float = 1e-3
    k: int = 16
    seed: int = 0
    rank_tol: float = DEFAULT_RANK_TOL
    variant: str = ALGORITHM
    candidate_mode: str = SAMPLED

    def resolved_dim(self, p):
        return self.spectral_dim if self.spectral_dim is not None else min(p, self.budget)


@dataclass(frozen=True)
class QueryResult:
    """Outcome of a selection run.

    ``nodes`` are the distinct queried nodes in first-selection order;
    ``picks`` records every round's choice (re-selections included), so
    ``len(picks) == rounds >= len(nodes)``. ``condition_number`` is
    ``lambda_max/lambda_min`` of the weighted design on the query set
    (``None`` for baselines that carry no design information).
    ``omega_trace`` holds each round's identifiable-bandwidth proxy.
    """

    nodes: tuple
    weights: dict
    rounds: int
    condition_number: float | None
    omega_trace: tuple = ()
    picks: tuple = ()

    def to_dict(self):
        return {
            "nodes": [int(i) for i in self.nodes],
            "weights": {str(int(i)): float(w) for i, w in self.weights.items()},
            "rounds": int(self.rounds),
            "condition_number": None if self.condition_number is None else float(self.condition_number),
            "omega_trace": [float(x) for x in self.omega_trace],
            "picks": [int(i) for i in self.picks],
        }


def design_condition_number(sc, nodes, weights=None):
    """Condition number of the (optionally weighted) design on a node set."""
    nodes = list(nodes)
    rows = sc.basis[nodes]
    if weights is None:
        w = np.ones(len(nodes))
    else:
        w = np.array([weights[i] for i in nodes], dtype=float)
    gram = rows.T @ (rows * w[:, None])
    evals = np.linalg.eigvalsh(gram)
    if evals[-1] <= 0:
        return float("inf")
    if evals[0] <= 0:
        return float("inf")
    return float(evals[-1] / evals[0])


def select_nodes(g, X, cfg):
    """Run the biased sampling query loop for ``cfg.budget`` rounds.

    Fully deterministic given ``cfg.seed``. Each round recomputes the
    informativeness context against the current query set, scores the
    sampled candidates once, and applies the barrier updates for the
    arg-max candidate (ties broken toward the lowest node id).
    """
    n = g.n
    if cfg.budget < 1:
        raise InvalidBudget(f"budget must be >= 1, got {cfg.budget}")
    if cfg.budget > n:
        raise InvalidBudget(f"budget {cfg.budget} exceeds node count {n}")
    if cfg.mode not in (LOWPASS, LOWHIGH):
        raise ValueError(f"unknown mode {cfg.mode!r}")
    if cfg.candidate_mode not in (SAMPLED, ALL_UNQUERIED):
        raise ValueError(f"unknown candidate_mode {cfg.candidate_mode!r}")

    if cfg.m is None:
        tuned = tune_m(g, X, cfg, default_m_grid(cfg, n))
        if not tuned.well_conditioned:
            log.warning("no candidate count reached condition number < %g; using m=%d",
                        CONDITION_THRESHOLD, tuned.m)
        cfg = replace(cfg, m=tuned.m)
    if not 0.0 < cfg.epsilon < 1.0 / cfg.m:
        raise EpsilonOutOfRange(f"need 0 < epsilon < 1/m = {1.0 / cfg.m}, got {cfg.epsilon}")

    d = cfg.resolved_dim(X.p)
    sb = spectral_basis(g, d, cfg.mode)
    sc = smoothed_basis(sb, X, cfg.rank_tol)
    state = init_state(sc.rank, cfg.epsilon, cfg.m, cfg.budget, cfg.variant)
    rng = np.random.default_rng(cfg.seed)

    picks = []
    omega_trace = []
    for round_idx in range(cfg.budget):
        try:
            phi_t = potential(state)
            probs = sampling_probs(state, sc)
        except BarrierViolated as err:
            raise BarrierViolated(f"round {round_idx}: {err}") from err

        if cfg.candidate_mode == SAMPLED:
            draw = draw_candidates(probs, cfg.m, rng, epsilon=cfg.epsilon, potential_value=phi_t)
            candidates = sorted(set(draw.candidates))
        else:
            queried = set(state.S)
            candidates = [i for i in range(n) if i not in queried and probs[i] > 0]
            if not candidates:
                raise InvalidBudget(
                    f"round {round_idx}: no unqueried node carries design mass"
                )

        ctx = build_context(g, X, state.S, cfg.k)
        scores = info_gain_scores(ctx)
        pick = argmax_score(scores, candidates)
        omega_trace.append(ctx.phi_eigenvalue ** (1.0 / cfg.k) if ctx.phi_eigenvalue > 0 else 0.0)
        state = apply_selection(state, pick, float(probs[pick]), sc.basis[pick])
        picks.append(pick)

    cond = design_condition_number(sc, state.S, state.weights)
    return QueryResult(
        nodes=state.S,
        weights=dict(state.weights),
        rounds=cfg.budget,
        condition_number=cond,
        omega_trace=tuple(omega_trace),
        picks=tuple(picks),
    )


def default_m_grid(cfg, n):
    """Ascending candidate counts compatible with epsilon and the graph size."""
    grid = [m for m in _DEFAULT_M_GRID if m <= n and cfg.epsilon < 1.0 / m]
    return grid or [1]


@dataclass(frozen=True)
class MTuneResult:
    """Outcome of the condition-number tuning rule.

    ``well_conditioned`` is False when no grid entry achieved a condition
    number below the threshold (the least-bad m is returned instead).
    """

    m: int
    condition_numbers: dict
    well_conditioned: bool


def tune_m(g, X, cfg, m_grid):
    """Pick the largest candidate count whose design stays well-conditioned.

    Runs the selection once per grid entry (each with a seed derived from
    the base seed) and returns the largest ``m`` with condition number below
    10; if none qualifies, returns the ``m`` with the smallest condition
    number and flags the result.
    """
    if not m_grid:
        raise ValueError("m_grid must be nonempty")
    if list(m_grid) != sorted(m_grid):
        raise ValueError("m_grid must be ascending")
    conds = {}
    for idx, m in enumerate(m_grid):
        run_cfg = replace(cfg, m=int(m), seed=derive_seed(cfg.seed, _TUNE_STREAM, idx))
        result = select_nodes(g, X, run_cfg)
        conds[int(m)] = result.condition_number
    qualified = [m for m in m_grid if conds[m] < CONDITION_THRESHOLD]
    if qualified:
        return MTuneResult(m=int(qualified[-1]), condition_numbers=conds, well_conditioned=True)
    best = min(m_grid, key=lambda m: conds[m])
    return MTuneResult(m=int(best), condition_numbers=conds, well_conditioned=False)


def random_select(n, budget, seed):
    """Uniform sampling without replacement; all recovery weights are one."""
    if budget > n:
        raise BudgetExceedsN(f"budget {budget} exceeds node count {n}")
    if budget < 1:
        raise InvalidBudget(f"budget must be >= 1, got {budget}")
    rng = np.random.default_rng(seed)
    nodes = tuple(int(i) for i in rng.choice(n, size=budget, replace=False))
    return QueryResult(
        nodes=nodes,
        weights={i: 1.0 for i in nodes},
        rounds=budget,
        condition_number=None,
        picks=nodes,
    )


def doptimal_select(X, budget, ridge=1e-8):
    """Greedy determinant maximization over raw covariate rows.

    Starts from a ridge-regularized information matrix and repeatedly adds
    the unselected node with the largest determinant gain (equivalently the
    largest leverage under the current inverse); ties break toward the
    lowest node id. All recovery weights are one.
    """
    values = X.values
    n, p = values.shape
    if budget < 1:
        raise InvalidBudget(f"budget must be >= 1, got {budget}")
    if budget > n:
        raise BudgetExceedsN(f"budget {budget} exceeds node count {n}")
    inv = np.eye(p) / ridge
    chosen = []
    available = np.ones(n, dtype=bool)
    for _ in range(budget):
        projected = values @ inv
        gains = np.einsum("ij,ij->i", projected, values)
        gains[~available] = -np.inf
        pick = int(np.argmax(gains))
        chosen.append(pick)
        available[pick] = False
        x = values[pick]
        ix = inv @ x
        inv = inv - np.outer(ix, ix) / (1.0 + float(x @ ix))
    nodes = tuple(chosen)
    return QueryResult(
        nodes=nodes,
        weights={i: 1.0 for i in nodes},
        rounds=budget,
        condition_number=None,
        picks=nodes,
    )
