"""Command-line interface.

Subcommands: ``select``, ``fit``, ``predict``, ``simulate``, ``tune-m``,
``diagnose``. Machine-readable outputs are JSON (query sets, models,
reports) and CSV (predictions, curves). Exit codes: 0 success, 2 input
error (parse failures, bad arguments), 3 algorithm error. The ``GAQ_LOG``
environment variable sets the log level.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

import numpy as np

from . import io
from .covariates import smoothed_basis, standardize
from .errors import GaqError, ParseError
from .graph import spectral_basis
from .harness import SimulationPlan, run_simulation
from .recovery import (
    CLASSIFICATION,
    REGRESSION,
    LabeledSample,
    RecoveryModel,
    classify,
    fit_wls,
    homophily_ratio,
    metrics,
    predict,
)
from .selector import SelectorConfig, select_nodes, tune_m

log = logging.getLogger("gaq.cli")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ALGORITHM = 3


def main(argv=None):
    logging.basicConfig(level=os.environ.get("GAQ_LOG", "WARNING").upper())
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except GaqError as err:
        print(f"error: {type(err).__name__}: {err}", file=sys.stderr)
        return EXIT_ALGORITHM


def _build_parser():
    parser = argparse.ArgumentParser(prog="gaq", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="override the config seed")
    common.add_argument("--config", type=Path, default=None, help="TOML config file")
    common.add_argument("--out-dir", type=Path, default=Path("."), help="output directory")
    common.add_argument("--threads", type=int, default=1, help="worker threads for grids")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("select", help="choose nodes to label under a budget", parents=[common])
    _add_data_args(p)
    _add_selector_args(p)
    p.add_argument("--out", type=Path, default=None, help="query-set JSON path")
    p.set_defaults(handler=cmd_select)

    p = sub.add_parser("fit", help="fit recovery from labels on a query set and predict", parents=[common])
    _add_data_args(p)
    p.add_argument("--labels", type=Path, required=True, help="CSV node_id,label")
    p.add_argument("--query-set", type=Path, required=True, help="query-set JSON from select")
    p.add_argument("--task", choices=[REGRESSION, CLASSIFICATION], default=REGRESSION)
    p.add_argument("--eval-labels", type=Path, default=None, help="held-out labels for metrics")
    p.set_defaults(handler=cmd_fit)

    p = sub.add_parser("predict", help="apply a stored model to all nodes", parents=[common])
    _add_data_args(p)
    p.add_argument("--model", type=Path, required=True, help="model JSON from fit")
    p.set_defaults(handler=cmd_predict)

    p = sub.add_parser("simulate", help="run a strategy x noise x seed grid", parents=[common])
    p.add_argument("--topology", choices=["ws", "sbm", "ba"], default=None)
    p.set_defaults(handler=cmd_simulate)

    p = sub.add_parser("tune-m", help="pick the candidate count by the condition-number rule", parents=[common])
    _add_data_args(p)
    _add_selector_args(p)
    p.add_argument("--m-grid", type=int, nargs="+", default=[5, 10, 20, 50])
    p.set_defaults(handler=cmd_tune_m)

    p = sub.add_parser("diagnose", help="report bandwidth trace, conditioning, homophily", parents=[common])
    _add_data_args(p)
    _add_selector_args(p)
    p.add_argument("--labels", type=Path, default=None, help="labels for the homophily ratio")
    p.set_defaults(handler=cmd_diagnose)
    return parser


def _add_data_args(p):
    p.add_argument("--graph", type=Path, required=True, help="edge-list CSV (src,dst[,weight])")
    p.add_argument("--covariates", type=Path, required=True, help="covariate CSV")
    p.add_argument("--standardize", action="store_true", help="z-score covariate columns")


def _add_selector_args(p):
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--spectral-dim", type=int, default=None)
    p.add_argument("--mode", choices=["lowpass", "lowhigh"], default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=None)
    p.add_argument("--k", type=int, default=None)


def _load_inputs(args):
    g = io.read_edge_csv(args.graph)
    X = io.read_covariates_csv(args.covariates)
    if X.n != g.n:
        raise ParseError(args.covariates, 1, f"covariates have {X.n} rows but the graph has {g.n} nodes")
    if args.standardize:
        X = standardize(X)
    return g, X


def _selector_config(args):
    section = {}
    if args.config is not None:
        section = io.read_config_toml(args.config).get("selector", {})
    merged = dict(section)
    for key, attr in [
        ("budget", "budget"),
        ("spectral_dim", "spectral_dim"),
        ("mode", "mode"),
        ("m", "m"),
        ("epsilon", "epsilon"),
        ("k", "k"),
    ]:
        value = getattr(args, attr, None)
        if value is not None:
            merged[key] = value
    if args.seed is not None:
        merged["seed"] = args.seed
    if "budget" not in merged:
        raise ParseError(args.config or "<args>", 1, "budget is required (flag or [selector] section)")
    defaults = SelectorConfig(budget=int(merged["budget"]))
    return replace(
        defaults,
        spectral_dim=merged.get("spectral_dim", defaults.spectral_dim),
        mode=merged.get("mode", defaults.mode),
        m=merged.get("m", defaults.m),
        epsilon=float(merged.get("epsilon", defaults.epsilon)),
        k=int(merged.get("k", defaults.k)),
        seed=int(merged.get("seed", defaults.seed)),
    )


def _config_echo(cfg):
    return {
        "budget": cfg.budget,
        "spectral_dim": cfg.spectral_dim,
        "mode": cfg.mode,
        "m": cfg.m,
        "epsilon": cfg.epsilon,
        "k": cfg.k,
        "seed": cfg.seed,
    }


def cmd_select(args):
    g, X = _load_inputs(args)
    cfg = _selector_config(args)
    result = select_nodes(g, X, cfg)
    out = args.out or (args.out_dir / "query_set.json")
    out.parent.mkdir(parents=True, exist_ok=True)
    io.write_json(out, io.query_payload(result, _config_echo(cfg), cfg.seed))
    print(f"selected {len(result.nodes)} nodes over {result.rounds} rounds -> {out}")
    return EXIT_OK


def _smoothed_from_query(g, X, query):
    cfg = query.get("config", {})
    d = cfg.get("spectral_dim") or min(X.p, int(cfg.get("budget", X.p)))
    sb = spectral_basis(g, d, cfg.get("mode", "lowpass"))
    return smoothed_basis(sb, X), d


def cmd_fit(args):
    g, X = _load_inputs(args)
    query = io.read_json(args.query_set)
    labels = io.read_labels_csv(args.labels)
    weights = {int(k): float(v) for k, v in query["weights"].items()}
    queried = set(weights)
    known = {node: lab for node, lab in labels.items() if node in queried}
    skipped = sorted(set(labels) - queried)
    if skipped:
        log.warning("ignoring %d labeled nodes outside the query set: %s", len(skipped), skipped)
    if not known:
        raise GaqError("no labels intersect the query set")

    sc, d = _smoothed_from_query(g, X, query)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    extra = {"spectral_dim": d, "mode": query.get("config", {}).get("mode", "lowpass"), "rank": sc.rank}

    if args.task == REGRESSION:
        samples = [LabeledSample(n, float(v), weights[n]) for n, v in sorted(known.items())]
        model = fit_wls(sc, samples)
        predictions = predict(sc, model)
        io.write_predictions_csv(args.out_dir / "predictions.csv", predictions)
        io.write_json(args.out_dir / "model.json", io.model_payload(model, extra))
        print(f"fit rank {model.rank_used}/{sc.rank}; wrote predictions.csv and model.json")
        if args.eval_labels:
            _print_regression_eval(args, predictions, g)
    else:
        samples = [LabeledSample(n, v, weights[n]) for n, v in sorted(known.items())]
        model, hard = classify(sc, samples)
        scores = predict(sc, model)
        io.write_scores_csv(args.out_dir / "scores.csv", scores, model.classes)
        io.write_labels_csv(args.out_dir / "labels.csv", hard)
        io.write_json(args.out_dir / "model.json", io.model_payload(model, extra))
        print(f"fit {len(model.classes)} classes; wrote scores.csv, labels.csv, model.json")
        if args.eval_labels:
            _print_classification_eval(args, hard, g)
    return EXIT_OK


def _print_regression_eval(args, predictions, g):
    held = io.read_labels_csv(args.eval_labels)
    idx = sorted(held)
    truth = np.zeros(len(predictions))
    truth[idx] = [float(held[i]) for i in idx]
    mask = np.zeros(len(predictions), dtype=bool)
    mask[idx] = True
    report = metrics(predictions, truth, mask, task=REGRESSION)
    print(f"held-out mse: {report.mse:.6g} over {len(idx)} nodes")


def _print_classification_eval(args, hard, g):
    held = io.read_labels_csv(args.eval_labels)
    idx = sorted(held)
    truth = np.array(hard, dtype=object)
    for i in idx:
        truth[i] = held[i]
    mask = np.zeros(len(hard), dtype=bool)
    mask[idx] = True
    report = metrics(np.array(hard, dtype=object), truth, mask, task=CLASSIFICATION, graph=g)
    print(
        f"held-out micro-f1: {report.micro_f1:.4f} macro-f1: {report.macro_f1:.4f} "
        f"homophily: {report.homophily_ratio:.4f}"
    )


def cmd_predict(args):
    g, X = _load_inputs(args)
    payload = io.read_json(args.model)
    d = payload.get("spectral_dim") or X.p
    sb = spectral_basis(g, d, payload.get("mode", "lowpass"))
    sc = smoothed_basis(sb, X)
    coeffs = np.array(payload["coefficients"])
    task = payload["task"]
    model = RecoveryModel(
        coefficients=coeffs[0] if task == REGRESSION else coeffs,
        rank_used=payload["rank_used"],
        task=task,
        classes=tuple(payload["classes"]) if "classes" in payload else None,
        single_class=payload.get("single_class", False),
    )
    args.out_dir.mkdir(parents=True, exist_ok=True)
    scores = predict(sc, model)
    if task == REGRESSION:
        io.write_predictions_csv(args.out_dir / "predictions.csv", scores)
        print("wrote predictions.csv")
    else:
        io.write_scores_csv(args.out_dir / "scores.csv", scores, model.classes)
        hard = [model.classes[j] for j in np.argmax(scores, axis=1)]
        io.write_labels_csv(args.out_dir / "labels.csv", hard)
        print("wrote scores.csv and labels.csv")
    return EXIT_OK


def cmd_simulate(args):
    section = {}
    if args.config is not None:
        config = io.read_config_toml(args.config)
        section = config.get("simulate", {})
        section.setdefault("topology", config.get("synthetic", {}).get("topology"))
    plan = SimulationPlan(
        topology=args.topology or section.get("topology") or "ws",
        n=int(section.get("n", 100)),
        budget=int(section.get("budget", 25)),
        sigma2_grid=tuple(section.get("sigma2_grid", (0.5, 0.6, 0.7, 0.8, 0.9, 1.0))),
        seeds=int(section.get("seeds", 10)),
        strategies=tuple(section.get("strategies", ("proposed", "random", "doptimal"))),
        m=int(section.get("m", 50)),
        epsilon=float(section.get("epsilon", 1e-3)),
        k=int(section.get("k", 16)),
        spectral_dim=section.get("spectral_dim"),
        seed=args.seed if args.seed is not None else int(section.get("seed", 0)),
        regenerate_topology=bool(section.get("regenerate_topology", False)),
        threads=args.threads,
    )
    report = run_simulation(plan)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    io.write_json(args.out_dir / "report.json", report.to_dict())
    io.write_curves_csv(args.out_dir / "curves.csv", report.aggregates)
    failures = sum(1 for r in report.records if "error" in r)
    print(
        f"{len(report.records)} records ({failures} failed) across "
        f"{len(plan.strategies)} strategies x {len(plan.sigma2_grid)} noise levels x "
        f"{plan.seeds} seeds -> report.json, curves.csv"
    )
    return EXIT_OK


def cmd_tune_m(args):
    g, X = _load_inputs(args)
    cfg = _selector_config(args)
    result = tune_m(g, X, cfg, sorted(args.m_grid))
    args.out_dir.mkdir(parents=True, exist_ok=True)
    payload = {
        "m": result.m,
        "well_conditioned": result.well_conditioned,
        "condition_numbers": {str(m): c for m, c in result.condition_numbers.items()},
    }
    io.write_json(args.out_dir / "tune_m.json", payload)
    flag = "" if result.well_conditioned else " (no m reached condition number < 10)"
    print(f"chosen m = {result.m}{flag}")
    return EXIT_OK


def cmd_diagnose(args):
    g, X = _load_inputs(args)
    cfg = _selector_config(args)
    result = select_nodes(g, X, cfg)
    lines = [
        f"nodes selected: {len(result.nodes)} over {result.rounds} rounds",
        f"condition number: {result.condition_number:.6g}",
        "bandwidth trace: " + " ".join(f"{w:.4f}" for w in result.omega_trace),
    ]
    if args.labels is not None:
        labels = io.read_labels_csv(args.labels)
        full = [labels.get(i, "") for i in range(g.n)]
        if all(v != "" for v in full):
            lines.append(f"homophily ratio: {homophily_ratio(g, np.array(full, dtype=object)):.4f}")
        else:
            log.warning("labels file does not cover all nodes; skipping homophily")
    print("\n".join(lines))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
