"""Smoothed covariate space: the orthonormal basis of band-limited covariates.

Projecting the covariate columns onto a low-frequency spectral band and
re-orthonormalizing them (one thin SVD) yields the basis used everywhere
downstream: sampling probabilities, design matrices, and recovery.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonFiniteCovariate, RankZero, ZeroCovariateColumn

DEFAULT_RANK_TOL = 1e-10

# Guards against covariates that are numerically orthogonal to the band:
# the largest singular value must clear this absolute floor (scaled by the
# covariate norm) before the relative rank_tol rule applies.
_ABS_FLOOR = 1e-12


@dataclass(frozen=True)
class CovariateMatrix:
    """Validated n x p matrix of node covariates.

    Rejects non-finite entries and all-zero columns at construction.
    ``names`` optionally labels the p columns.
    """

    values: np.ndarray
    names: tuple | None = None

    def __post_init__(self):
        values = np.atleast_2d(np.asarray(self.values, dtype=float))
        if not np.isfinite(values).all():
            raise NonFiniteCovariate("covariate matrix contains NaN or infinite entries")
        zero_cols = np.nonzero(~values.any(axis=0))[0]
        if zero_cols.size:
            raise ZeroCovariateColumn(f"covariate column {int(zero_cols[0])} is all zero")
        if self.names is not None and len(self.names) != values.shape[1]:
            raise ValueError("names length must match the number of columns")
        object.__setattr__(self, "values", values)

    @property
    def n(self):
        return self.values.shape[0]

    @property
    def p(self):
        return self.values.shape[1]


def identity_covariates(n):
    """Identity covariates: every node is its own indicator feature."""
    return CovariateMatrix(np.eye(n))


def standardize(X):
    """Z-score each column (opt-in; never applied silently)."""
    values = X.values
    mean = values.mean(axis=0)
    sd = values.std(axis=0)
    sd[sd == 0] = 1.0
    return CovariateMatrix((values - mean) / sd, names=X.names)


@dataclass(frozen=True)
class SmoothedCovariates:
    """Orthonormal basis of the band-limited covariate span.

    ``basis`` is n x r with orthonormal columns lying inside the span of the
    spectral basis; ``singular_values`` and ``right_vectors`` come from the
    thin SVD of the band-projected covariates; ``spectral_dim`` records d.
    """

    basis: np.ndarray
    rank: int
    singular_values: np.ndarray
    right_vectors: np.ndarray
    spectral_dim: int


def smoothed_basis(sb, X, rank_tol=DEFAULT_RANK_TOL):
    """Orthonormalize the covariates inside the spectral band.

    Computes the thin SVD of ``U_d' X`` and keeps the ``r`` directions whose
    singular values exceed ``rank_tol`` times the largest. The returned basis
    is ``U_d V1`` restricted to those columns.

    Raises
    ------
    RankZero
        If every singular value is below tolerance (covariates orthogonal
        to the band).
    """
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    vecs = sb.eigenvectors
    if X.n != vecs.shape[0]:
        raise ValueError(f"covariates have {X.n} rows but the basis has {vecs.shape[0]}")
    band = vecs.T @ X.values
    v1, sing, v2t = np.linalg.svd(band, full_matrices=False)
    floor = _ABS_FLOOR * max(1.0, float(np.linalg.norm(X.values)))
    if sing.size == 0 or sing[0] <= floor:
        raise RankZero("covariates are orthogonal to the selected spectral band")
    r = int(np.sum(sing > rank_tol * sing[0]))
    if r == 0:
        raise RankZero("all singular values fall below the rank tolerance")
    return SmoothedCovariates(
        basis=vecs @ v1[:, :r],
        rank=r,
        singular_values=sing[:r].copy(),
        right_vectors=v2t[:r].T.copy(),
        spectral_dim=vecs.shape[1],
    )


def project_signal(sc, f):
    """Project a node signal onto the smoothed covariate span.

    Returns ``(coefficients, residual_norm)`` where the coefficients expand
    the projection in ``sc.basis`` and the residual is the Euclidean norm of
    the orthogonal remainder.
    """
    f = np.asarray(f, dtype=float)
    if not np.isfinite(f).all():
        raise NonFiniteCovariate("signal contains NaN or infinite entries")
    coefficients = sc.basis.T @ f
    residual = f - sc.basis @ coefficients
    return coefficients, float(np.linalg.norm(residual))
