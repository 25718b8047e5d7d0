"""Barrier-potential sampling state: potentials, probabilities, and updates.

The sampler keeps a running covariance of the selected design rows inside a
shrinking eigenvalue bracket ``(l, u)``. The resolvent-trace potential
measures how close the spectrum sits to either barrier; sampling nodes
proportionally to their resolvent mass keeps the covariance growing
isotropically on average, which is what bounds the condition number of the
final weighted design.

Updates follow the boxed query algorithm: barrier shifts use the
``1 -/+ m*epsilon`` factors and recovery weights are ``w/kappa``. The prose
variant (``1 -/+ epsilon`` shifts, unnormalized weights) is available via
``variant="prose"`` for comparison.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    BarrierViolated,
    BudgetExhausted,
    EpsilonOutOfRange,
    InvalidBudget,
)

ALGORITHM = "algorithm"
PROSE = "prose"


@dataclass(frozen=True)
class QueryState:
    """Immutable snapshot of the sampler after ``t`` selection rounds."""

    t: int
    C: np.ndarray
    u: float
    l: float
    S: tuple
    weights: dict
    kappa: float
    epsilon: float
    m: int
    budget_left: int
    variant: str = ALGORITHM


@dataclass(frozen=True)
class CandidateDraw:
    """One round's candidate multiset with its distribution and weights."""

    probs: np.ndarray
    candidates: tuple
    per_node_weight: dict


def init_state(r, epsilon, m, budget, variant=ALGORITHM):
    """Fresh sampler state for an r-dimensional design.

    Requires ``0 < epsilon < 1/m``. The initial barriers are ``+-2r/epsilon``
    so the initial potential is exactly ``epsilon``.
    """
    if r < 1:
        raise InvalidBudget(f"rank must be >= 1, got {r}")
    if m < 1:
        raise InvalidBudget(f"candidate count must be >= 1, got {m}")
    if budget < 1:
        raise InvalidBudget(f"budget must be >= 1, got {budget}")
    if not 0.0 < epsilon < 1.0 / m:
        raise EpsilonOutOfRange(f"need 0 < epsilon < 1/m = {1.0 / m}, got {epsilon}")
    if variant not in (ALGORITHM, PROSE):
        raise ValueError(f"unknown variant {variant!r}")
    u0 = 2.0 * r / epsilon
    kappa = 2.0 * r * (1.0 - (m * epsilon) ** 2) / (m * epsilon**2)
    return QueryState(
        t=0,
        C=np.zeros((r, r)),
        u=u0,
        l=-u0,
        S=(),
        weights={},
        kappa=kappa,
        epsilon=float(epsilon),
        m=int(m),
        budget_left=int(budget),
        variant=variant,
    )


def _bracketed_eigs(state):
    evals = np.linalg.eigvalsh(state.C)
    if evals[0] <= state.l or evals[-1] >= state.u:
        raise BarrierViolated(
            f"covariance spectrum [{evals[0]:.6g}, {evals[-1]:.6g}] left "
            f"({state.l:.6g}, {state.u:.6g}) at t={state.t}"
        )
    return evals


def potential(state):
    """Resolvent-trace potential of the current covariance.

    ``Tr[(uI - C)^-1] + Tr[(C - lI)^-1]``, computed from the eigenvalues of
    ``C``. Raises :class:`BarrierViolated` if the spectrum left the bracket.
    """
    evals = _bracketed_eigs(state)
    return float(np.sum(1.0 / (state.u - evals)) + np.sum(1.0 / (evals - state.l)))


def sampling_probs(state, sc):
    """Per-node selection probabilities from the barrier resolvents.

    Node i's probability is its design row's quadratic form under both
    resolvents, normalized by the potential; the probabilities sum to one
    analytically because the design rows resolve the identity.
    """
    sym_evals, sym_vecs = np.linalg.eigh(state.C)
    if sym_evals[0] <= state.l or sym_evals[-1] >= state.u:
        raise BarrierViolated(
            f"covariance spectrum [{sym_evals[0]:.6g}, {sym_evals[-1]:.6g}] left "
            f"({state.l:.6g}, {state.u:.6g}) at t={state.t}"
        )
    rotated = sc.basis @ sym_vecs
    masses = 1.0 / (state.u - sym_evals) + 1.0 / (sym_evals - state.l)
    phi = float(np.sum(masses))
    probs = (rotated**2) @ masses / phi
    return probs


def draw_candidates(probs, m, rng, epsilon=None, potential_value=None):
    """Sample ``m`` candidate nodes i.i.d. with replacement.

    ``rng`` is a seeded ``numpy.random.Generator`` (PCG64 via
    ``numpy.random.default_rng``; the generator family is part of the
    reproducibility contract). When ``epsilon`` and ``potential_value`` are
    supplied, each distinct candidate's prospective weight
    ``epsilon / (p_i * potential)`` is attached to the draw.
    """
    probs = np.asarray(probs, dtype=float)
    ids = rng.choice(probs.size, size=int(m), replace=True, p=probs)
    candidates = tuple(int(i) for i in ids)
    per_node_weight = {}
    if epsilon is not None and potential_value is not None:
        for i in sorted(set(candidates)):
            per_node_weight[i] = epsilon / (probs[i] * potential_value)
    return CandidateDraw(probs=probs, candidates=candidates, per_node_weight=per_node_weight)


def apply_selection(state, i, p_i, v_i):
    """Fold the selected node into the state and advance the barriers.

    Returns a new state: the covariance gains ``w * v'v`` with
    ``w = epsilon/(p_i * potential)``, the node's recovery weight gains
    ``w/kappa`` (accumulating on re-selection), both barriers shift, and the
    budget drops by one whether or not the node was new.
    """
    if state.budget_left <= 0:
        raise BudgetExhausted("no query budget left")
    if not p_i > 0:
        raise ValueError(f"selected node {i} has zero probability")
    i = int(i)
    v = np.asarray(v_i, dtype=float)
    phi = potential(state)
    eps = state.epsilon
    w = eps / (p_i * phi)

    divisor = state.kappa if state.variant == ALGORITHM else 1.0
    weights = dict(state.weights)
    if i in weights:
        S = state.S
        weights[i] += w / divisor
    else:
        S = state.S + (i,)
        weights[i] = w / divisor

    shift = state.m * eps if state.variant == ALGORITHM else eps
    return replace(
        state,
        t=state.t + 1,
        C=state.C + w * np.outer(v, v),
        u=state.u + eps / (phi * (1.0 - shift)),
        l=state.l + eps / (phi * (1.0 + shift)),
        S=S,
        weights=weights,
        budget_left=state.budget_left - 1,
    )
