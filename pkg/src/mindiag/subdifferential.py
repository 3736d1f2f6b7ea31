"""Subdifferentials of extreme eigenvalues and of the spectral norm.

For ``A(x) = A0 + Diag(x)`` the subdifferential of the largest eigenvalue
as a function of the real diagonal x equals the moment set of the top
eigenspace; the smallest eigenvalue contributes the negated moment set of
the bottom eigenspace.  The sets are infinite whenever a multiplicity
exceeds one, so they are returned in generator form as eigenspace bases:
individual elements come from :func:`mindiag.moment_geometry.moment_element`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hermitian_core import (
    DEFAULT_CLUSTER_TOL,
    EigenspaceBasis,
    HermitianMatrix,
    cluster_eigenspaces,
    eigendecompose,
    shifted,
)

__all__ = [
    "SubdiffDescriptor",
    "subdiff_lambda_max",
    "subdiff_lambda_min",
    "subdiff_norm",
    "directional_derivative",
]


@dataclass(frozen=True)
class SubdiffDescriptor:
    """Case analysis of the norm subdifferential at A(x).

    kind is ``max_side`` when the norm is attained by lambda_max alone
    (subdifferential = m_{S_max}), ``min_side`` when attained by
    -lambda_min alone (subdifferential = -m_{S_min}) and ``both_sides``
    at a tie, where it is ``co(m_{S_max} U -m_{S_min})``.
    """

    kind: str  # max_side | min_side | both_sides
    q_max: EigenspaceBasis | None
    q_min: EigenspaceBasis | None


def subdiff_lambda_max(
    a0: HermitianMatrix, x, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> EigenspaceBasis:
    """Basis of the top eigenspace of A(x); the subdifferential is its moment set."""
    return cluster_eigenspaces(eigendecompose(shifted(a0, x)), cluster_tol)[0]


def subdiff_lambda_min(
    a0: HermitianMatrix, x, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> EigenspaceBasis:
    """Basis of the bottom eigenspace of A(x).

    The subdifferential of lambda_min is the *negated* moment set of the
    returned eigenspace.
    """
    return cluster_eigenspaces(eigendecompose(shifted(a0, x)), cluster_tol)[-1]


def subdiff_norm(
    a0: HermitianMatrix, x, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> SubdiffDescriptor:
    """Norm-subdifferential case analysis at A(x).

    Raises ``ValueError`` when A(x) is (numerically) zero: there the
    subdifferential degenerates to the full dual unit ball, which none of
    the eigenspace formulas cover.
    """
    a = shifted(a0, x)
    eig = eigendecompose(a)
    lam_max, lam_min = eig.values[0], eig.values[-1]
    norm = max(abs(lam_max), abs(lam_min))
    tol = cluster_tol * (1.0 + norm)
    if norm <= tol:
        raise ValueError("A(x) is numerically zero; norm subdifferential degenerates")
    clusters = cluster_eigenspaces(eig, cluster_tol)
    tie = abs(lam_max + lam_min) <= tol
    if tie:
        return SubdiffDescriptor("both_sides", clusters[0], clusters[-1])
    if lam_max >= -lam_min:
        return SubdiffDescriptor("max_side", clusters[0], None)
    return SubdiffDescriptor("min_side", None, clusters[-1])


def directional_derivative(
    a0: HermitianMatrix, x, w, cluster_tol: float = DEFAULT_CLUSTER_TOL
) -> float:
    """One-sided derivative of lambda_max(A(x)) along the diagonal direction w.

    Equals the largest eigenvalue of the compressed matrix
    ``Q1* Diag(w) Q1`` built on the top eigenspace basis Q1.
    """
    w = np.asarray(w, dtype=float)
    if w.shape != (a0.n,):
        raise ValueError(f"direction must have length {a0.n}")
    q1 = subdiff_lambda_max(a0, x, cluster_tol).columns
    b = (q1.conj().T * w) @ q1
    return float(np.linalg.eigvalsh(0.5 * (b + b.conj().T))[-1])
