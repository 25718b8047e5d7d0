"""File formats: edge lists, covariates, labels, query sets, models, configs.

CSV readers validate eagerly and report the offending 1-based line number
through :class:`~gaq.errors.ParseError`. JSON writers emit sorted keys so
identical runs produce identical bytes.
"""

from __future__ import annotations

import csv
import json
import re
import sys
from pathlib import Path

import numpy as np

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .covariates import CovariateMatrix
from .errors import ParseError
from .graph import build_graph


def read_edge_csv(path):
    """Read an edge list with header ``src,dst,weight`` (weight optional).

    Node ids are 0-based integers; the node count is inferred as the largest
    id plus one. Returns a validated :class:`~gaq.graph.Graph`.
    """
    path = Path(path)
    edges = []
    max_id = -1
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError(path, 1, "empty edge file")
        cols = [c.strip().lower() for c in header]
        if cols[:2] != ["src", "dst"] or len(cols) > 3 or (len(cols) == 3 and cols[2] != "weight"):
            raise ParseError(path, 1, f"expected header 'src,dst[,weight]', got {','.join(header)}")
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) not in (2, 3):
                raise ParseError(path, line_no, f"expected 2 or 3 fields, got {len(row)}")
            try:
                u = int(row[0])
                v = int(row[1])
                w = float(row[2]) if len(row) == 3 and row[2].strip() else 1.0
            except ValueError as err:
                raise ParseError(path, line_no, str(err)) from err
            edges.append((u, v, w))
            max_id = max(max_id, u, v)
    if not edges:
        raise ParseError(path, 1, "edge file contains no edges")
    return build_graph(max_id + 1, edges)


def read_covariates_csv(path):
    """Read an ``n x p`` real matrix; an optional single header row is allowed.

    Row order defines node ids ``0 .. n-1``.
    """
    path = Path(path)
    rows = []
    names = None
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        for line_no, row in enumerate(reader, start=1):
            if not row or all(not c.strip() for c in row):
                continue
            try:
                rows.append([float(c) for c in row])
            except ValueError as err:
                if line_no == 1 and names is None and not rows:
                    names = tuple(c.strip() for c in row)
                    continue
                raise ParseError(path, line_no, str(err)) from err
            if len(rows) > 1 and len(rows[-1]) != len(rows[0]):
                raise ParseError(path, line_no, f"expected {len(rows[0])} columns, got {len(rows[-1])}")
    if not rows:
        raise ParseError(path, 1, "covariate file contains no rows")
    return CovariateMatrix(np.array(rows), names=names)


def read_labels_csv(path):
    """Read ``node_id,label`` pairs; labels stay strings for the caller to cast."""
    path = Path(path)
    labels = {}
    with path.open(newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            raise ParseError(path, 1, "empty labels file")
        cols = [c.strip().lower() for c in header]
        if cols != ["node_id", "label"]:
            raise ParseError(path, 1, f"expected header 'node_id,label', got {','.join(header)}")
        for line_no, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != 2:
                raise ParseError(path, line_no, f"expected 2 fields, got {len(row)}")
            try:
                node = int(row[0])
            except ValueError as err:
                raise ParseError(path, line_no, str(err)) from err
            labels[node] = row[1].strip()
    return labels


def write_json(path, payload):
    """Deterministic JSON dump (sorted keys, fixed separators, LF endings)."""
    text = json.dumps(payload, sort_keys=True, indent=2, separators=(",", ": "))
    Path(path).write_text(text + "\n", encoding="utf-8")


def read_json(path):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def query_payload(result, config, seed):
    """Query-set JSON body: nodes, weights, rounds, condition number, config."""
    body = result.to_dict()
    body["config"] = config
    body["seed"] = int(seed)
    return body


def model_payload(model, extra=None):
    payload = {
        "task": model.task,
        "coefficients": np.atleast_2d(model.coefficients).tolist(),
        "rank_used": int(model.rank_used),
        "single_class": bool(model.single_class),
    }
    if model.classes is not None:
        payload["classes"] = [str(c) for c in model.classes]
    if extra:
        payload.update(extra)
    return payload


def write_predictions_csv(path, predictions):
    """Regression output: ``node_id,prediction`` rows."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node_id", "prediction"])
        for node, value in enumerate(predictions):
            writer.writerow([node, repr(float(value))])


def write_scores_csv(path, scores, classes):
    """Classification output, long form: ``node_id,class,score`` rows."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node_id", "class", "score"])
        for node in range(scores.shape[0]):
            for j, cls in enumerate(classes):
                writer.writerow([node, cls, repr(float(scores[node, j]))])


def write_labels_csv(path, labels):
    """Hard-label output: ``node_id,label`` rows."""
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["node_id", "label"])
        for node, value in enumerate(labels):
            writer.writerow([node, value])


def write_curves_csv(path, aggregates):
    """Per-cell aggregate table (one row per strategy x noise level)."""
    fields = ["strategy", "sigma2", "median_mse", "iqr_mse", "median_condition_number"]
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(fields)
        for agg in aggregates:
            writer.writerow([agg[f] for f in fields])


def read_config_toml(path):
    """Parse a TOML config; returns the raw section dict."""
    path = Path(path)
    try:
        with path.open("rb") as fh:
            return tomllib.load(fh)
    except tomllib.TOMLDecodeError as err:
        match = re.search(r"line (\d+)", str(err))
        line = int(match.group(1)) if match else 1
        raise ParseError(path, line, str(err)) from err
