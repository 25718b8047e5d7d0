"""Weighted least-squares recovery of node responses from queried labels.

Fits coefficients over the smoothed covariate basis from the labeled subset
(with the sampler's per-node weights), then predicts over the whole graph.
Classification is one-vs-rest on dummy membership targets with arg-max
decoding, which decodes identically to a softmax over the per-class scores.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptyMask, NonFiniteResponse

log = logging.getLogger("gaq.recovery")

REGRESSION = "regression"
CLASSIFICATION = "classification"

_LSTSQ_RCOND = 1e-10


@dataclass(frozen=True)
class LabeledSample:
    """One queried node's response and sampling weight."""

    node: int
    response: object
    weight: float = 1.0

    def __post_init__(self):
        if not self.weight > 0:
            raise ValueError(f"weight for node {self.node} must be positive, got {self.weight}")


@dataclass(frozen=True)
class RecoveryModel:
    """Fitted coefficients plus bookkeeping.

    ``coefficients`` has shape (r,) for regression and (K, r) for
    classification; ``classes`` maps score columns back to class labels.
    ``single_class`` flags the degenerate all-one-class training set, for
    which a constant prediction is returned.
    """

    coefficients: np.ndarray
    rank_used: int
    task: str
    classes: tuple | None = None
    single_class: bool = False


def fit_wls(sc, samples):
    """Minimize the weighted squared error over the covariate basis.

    Solves ``argmin sum_i s_i (y_i - row_i beta)^2`` through an SVD-backed
    least-squares solve of the square-root-weighted system, which returns
    the minimum-norm solution when the design is rank deficient.
    """
    if not samples:
        raise ValueError("need at least one labeled sample")
    nodes = [int(s.node) for s in samples]
    y = np.array([float(s.response) for s in samples])
    if not np.isfinite(y).all():
        raise NonFiniteResponse("labeled responses contain NaN or infinite values")
    w = np.array([s.weight for s in samples])
    sqrt_w = np.sqrt(w)
    design = sc.basis[nodes] * sqrt_w[:, None]
    beta, _, rank, _ = np.linalg.lstsq(design, y * sqrt_w, rcond=_LSTSQ_RCOND)
    return RecoveryModel(coefficients=beta, rank_used=int(rank), task=REGRESSION)


def predict(sc, model):
    """Expand the fitted coefficients to all nodes.

    Returns a length-n vector for regression, or an n x K score matrix for
    classification (one column per class in ``model.classes`` order).
    """
    coeffs = np.atleast_2d(model.coefficients)
    if coeffs.shape[1] != sc.rank:
        raise DimensionMismatch(
            f"model has {coeffs.shape[1]} coefficients but the basis rank is {sc.rank}"
        )
    scores = sc.basis @ coeffs.T
    if model.task == REGRESSION:
        return scores[:, 0]
    return scores


def classify(sc, samples):
    """One-vs-rest weighted least squares on dummy class targets.

    Class ids may be arbitrary sortable values; they are mapped to a stable
    sorted index carried on the model. Returns the fitted model and the
    hard labels for every node (arg-max score, ties toward the smallest
    class id). A single-class training set is flagged and predicted
    constantly rather than fitted.
    """
    if not samples:
        raise ValueError("need at least one labeled sample")
    classes = tuple(sorted({s.response for s in samples}, key=lambda c: (str(type(c)), c)))
    if len(classes) == 1:
        log.warning("all %d training labels share class %r; returning constant prediction",
                    len(samples), classes[0])
        model = RecoveryModel(
            coefficients=np.zeros((1, sc.rank)),
            rank_used=0,
            task=CLASSIFICATION,
            classes=classes,
            single_class=True,
        )
        labels = np.array([classes[0]] * sc.basis.shape[0])
        return model, labels

    rows = []
    rank_used = 0
    for cls in classes:
        dummy = [
            LabeledSample(s.node, 1.0 if s.response == cls else 0.0, s.weight)
            for s in samples
        ]
        fit = fit_wls(sc, dummy)
        rows.append(fit.coefficients)
        rank_used = fit.rank_used
    model = RecoveryModel(
        coefficients=np.vstack(rows),
        rank_used=rank_used,
        task=CLASSIFICATION,
        classes=classes,
    )
    scores = predict(sc, model)
    labels = np.array([classes[j] for j in np.argmax(scores, axis=1)])
    return model, labels


def softmax(scores):
    """Row-wise softmax (numerically stabilized)."""
    shifted = scores - scores.max(axis=-1, keepdims=True)
    expd = np.exp(shifted)
    return expd / expd.sum(axis=-1, keepdims=True)


def homophily_ratio(g, labels):
    """Fraction of edges whose endpoints share a label."""
    labels = np.asarray(labels)
    same = sum(1 for u, v, _ in g.edges if labels[u] == labels[v])
    return same / len(g.edges)


@dataclass(frozen=True)
class MetricsReport:
    """Evaluation summary; fields not applicable to the task are None."""

    mse: float | None
    micro_f1: float | None
    macro_f1: float | None
    condition_number: float | None
    homophily_ratio: float | None


def metrics(predicted, truth, mask, task=REGRESSION, graph=None, condition_number=None):
    """Standard evaluation metrics over the masked (held-out) nodes.

    ``mask`` is a boolean array or index list selecting evaluation nodes.
    Micro-F1 equals accuracy for single-label multiclass predictions;
    macro-F1 averages per-class F1 without weighting. The homophily ratio
    is computed from the full truth labels when a graph is supplied.
    """
    predicted = np.asarray(predicted)
    truth = np.asarray(truth)
    mask = np.asarray(mask)
    if mask.dtype == bool:
        idx = np.nonzero(mask)[0]
    else:
        idx = mask.astype(int)
    if idx.size == 0:
        raise EmptyMask("evaluation mask selects no nodes")

    pred_eval = predicted[idx]
    true_eval = truth[idx]
    mse = micro = macro = None
    if task == REGRESSION:
        mse = float(np.mean((pred_eval.astype(float) - true_eval.astype(float)) ** 2))
    else:
        micro = float(np.mean(pred_eval == true_eval))
        classes = sorted(set(true_eval.tolist()) | set(pred_eval.tolist()),
                         key=lambda c: (str(type(c)), c))
        f1s = []
        for cls in classes:
            tp = float(np.sum((pred_eval == cls) & (true_eval == cls)))
            fp = float(np.sum((pred_eval == cls) & (true_eval != cls)))
            fn = float(np.sum((pred_eval != cls) & (true_eval == cls)))
            denom = 2 * tp + fp + fn
            f1s.append(2 * tp / denom if denom > 0 else 0.0)
        macro = float(np.mean(f1s))

    h = homophily_ratio(graph, truth) if graph is not None else None
    return MetricsReport(
        mse=mse,
        micro_f1=micro,
        macro_f1=macro,
        condition_number=condition_number,
        homophily_ratio=h,
    )
