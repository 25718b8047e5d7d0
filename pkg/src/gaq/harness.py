"""Experiment harness: strategy x noise-level x seed grids over synthetic data.

Runs every grid cell independently (its own derived seeds, its own noise
realization), records per-cell outcomes, and aggregates medians and IQRs
per (strategy, noise) cell. Cells execute in a thread pool when requested;
each cell is pure given its derived seeds, so execution order never
changes results.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .covariates import identity_covariates, smoothed_basis
from .errors import GaqError
from .graph import spectral_basis
from .recovery import LabeledSample, fit_wls, predict
from .seeding import derive_seed
from .selector import (
    ALL_UNQUERIED,
    SelectorConfig,
    design_condition_number,
    doptimal_select,
    random_select,
    select_nodes,
)
from .synthetic import benchmark_spec, generate_instance, with_sigma

PROPOSED = "proposed"
RANDOM = "random"
DOPTIMAL = "doptimal"
PROPOSED_NO_REPR = "proposed_no_repr"
PROPOSED_NO_COVARIATES = "proposed_no_covariates"

STRATEGIES = (PROPOSED, RANDOM, DOPTIMAL, PROPOSED_NO_REPR, PROPOSED_NO_COVARIATES)

# Spawn-key roles for the documented sub-stream derivation.
_NOISE_ROLE = 0
_SELECT_ROLE = 1


@dataclass(frozen=True)
class SimulationPlan:
    """Grid description for one topology family."""

    topology: str = "ws"
    n: int = 100
    budget: int = 25
    sigma2_grid: tuple = (0.5, 0.6, 0.7, 0.8, 0.9, 1.0)
    seeds: int = 10
    strategies: tuple = (PROPOSED, RANDOM, DOPTIMAL)
    m: int = 50
    epsilon: float = 1e-3
    k: int = 16
    spectral_dim: int | None = None
    mode: str = "lowpass"
    seed: int = 0
    regenerate_topology: bool = False
    threads: int = 1

    def validate(self):
        unknown = set(self.strategies) - set(STRATEGIES)
        if unknown:
            raise ValueError(f"unknown strategies: {sorted(unknown)}")
        if self.seeds < 1 or self.budget < 1:
            raise ValueError("seeds and budget must be positive")


@dataclass
class ExperimentReport:
    """Per-cell records plus aggregates recomputable from them."""

    config: dict
    records: list = field(default_factory=list)
    aggregates: list = field(default_factory=list)

    def to_dict(self):
        return {"config": self.config, "records": self.records, "aggregates": self.aggregates}


def run_simulation(plan):
    """Execute the full grid and assemble the report."""
    plan.validate()
    cells = [
        (strategy_idx, rep, sigma_idx)
        for strategy_idx in range(len(plan.strategies))
        for rep in range(plan.seeds)
        for sigma_idx in range(len(plan.sigma2_grid))
    ]
    if plan.threads > 1:
        with ThreadPoolExecutor(max_workers=plan.threads) as pool:
            records = list(pool.map(lambda cell: _run_cell(plan, *cell), cells))
    else:
        records = [_run_cell(plan, *cell) for cell in cells]

    report = ExperimentReport(config=asdict(plan))
    report.records = records
    report.aggregates = aggregate_records(records)
    return report


def _run_cell(plan, strategy_idx, rep, sigma_idx):
    strategy = plan.strategies[strategy_idx]
    sigma2 = plan.sigma2_grid[sigma_idx]
    record = {
        "strategy": strategy,
        "seed": rep,
        "sigma2": float(sigma2),
        "budget": int(plan.budget),
    }
    try:
        topo_seed = derive_seed(plan.seed, rep) if plan.regenerate_topology else plan.seed
        spec = with_sigma(benchmark_spec(plan.topology, plan.n, seed=topo_seed), sigma2)
        noise_seed = derive_seed(plan.seed, _NOISE_ROLE, rep, sigma_idx)
        inst = generate_instance(spec, noise_seed=noise_seed)

        d = plan.spectral_dim if plan.spectral_dim is not None else min(inst.X.p, plan.budget)
        sb = spectral_basis(inst.graph, d, plan.mode)
        sc = smoothed_basis(sb, inst.X)

        select_seed = derive_seed(plan.seed, _SELECT_ROLE, strategy_idx, rep, sigma_idx)
        started = time.perf_counter()
        result = _run_strategy(strategy, plan, inst, d, select_seed)
        selection_ms = (time.perf_counter() - started) * 1000.0

        samples = [LabeledSample(i, inst.Y[i], result.weights[i]) for i in result.nodes]
        model = fit_wls(sc, samples)
        predictions = predict(sc, model)
        mask = np.ones(plan.n, dtype=bool)
        mask[list(result.nodes)] = False
        mse = float(np.mean((predictions[mask] - inst.Y[mask]) ** 2))

        cond = result.condition_number
        if cond is None:
            cond = design_condition_number(sc, result.nodes, result.weights)
        record.update(
            {
                "mse": mse,
                "condition_number": float(cond),
                "n_selected": len(result.nodes),
                "rounds": int(result.rounds),
                "wall_time_ms": selection_ms,
            }
        )
    except GaqError as err:
        record["error"] = f"{type(err).__name__}: {err}"
    return record


def _run_strategy(strategy, plan, inst, d, seed):
    cfg = SelectorConfig(
        budget=plan.budget,
        spectral_dim=d,
        mode=plan.mode,
        m=plan.m,
        epsilon=plan.epsilon,
        k=plan.k,
        seed=seed,
    )
    if strategy == PROPOSED:
        return select_nodes(inst.graph, inst.X, cfg)
    if strategy == PROPOSED_NO_REPR:
        return select_nodes(inst.graph, inst.X, replace(cfg, candidate_mode=ALL_UNQUERIED))
    if strategy == PROPOSED_NO_COVARIATES:
        return select_nodes(inst.graph, identity_covariates(plan.n), cfg)
    if strategy == RANDOM:
        return random_select(plan.n, plan.budget, seed)
    if strategy == DOPTIMAL:
        return doptimal_select(inst.X, plan.budget)
    raise ValueError(f"unknown strategy {strategy!r}")


def aggregate_records(records):
    """Median and IQR per (strategy, sigma2) cell, errors excluded."""
    cells = {}
    for rec in records:
        if "error" in rec:
            continue
        cells.setdefault((rec["strategy"], rec["sigma2"]), []).append(rec)
    aggregates = []
    for (strategy, sigma2), rows in sorted(cells.items()):
        mses = np.array([r["mse"] for r in rows])
        conds = np.array([r["condition_number"] for r in rows])
        aggregates.append(
            {
                "strategy": strategy,
                "sigma2": sigma2,
                "cells": len(rows),
                "median_mse": float(np.median(mses)),
                "iqr_mse": float(np.quantile(mses, 0.75) - np.quantile(mses, 0.25)),
                "median_condition_number": float(np.median(conds)),
            }
        )
    return aggregates
