"""Closed-form minimizing diagonals for rank-one self-adjoint operators.

For a unit vector h the best diagonal approximant of hh* splits into two
cases.  When one squared coordinate exceeds 1/2 the minimizing diagonal
zeroes that coordinate of the diagonal and the minimal norm is
``|h_j0| sqrt(1 - |h_j0|^2)``.  Otherwise -I/2 is minimizing with norm
1/2; the optimality witness there is a second unit vector k, orthogonal
to h with ``|k_j| = |h_j|``, obtained from a closed polygon with side
lengths ``|h_j|^2``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .hermitian_core import HermitianMatrix

__all__ = [
    "RankOneSolution",
    "minimizing_diagonal",
    "closed_polygon_angles",
    "orthogonal_partner",
    "nonunique_diagonals",
    "generate_minimal_from_negative",
    "column_criterion_diagonal",
    "verify_column_criterion",
]

BIG = "big_coordinate"
SPREAD = "spread"
BOUNDARY = "boundary"

_BOUNDARY_TOL = 1e-12
_ZERO_COORD_TOL = 1e-12


def _unit_vector(h) -> np.ndarray:
    h = np.asarray(h, dtype=complex).ravel()
    if h.size == 0:
        raise ValueError("empty vector")
    if abs(np.vdot(h, h).real - 1.0) > 1e-10:
        raise ValueError("vector must have unit norm")
    return h


@dataclass(frozen=True)
class RankOneSolution:
    """Minimizing diagonal of hh* with its minimal norm and case tag."""

    diagonal: np.ndarray
    minimal_norm: float
    case_tag: str  # big_coordinate | spread | boundary
    unique: bool


def minimizing_diagonal(h) -> RankOneSolution:
    """Closed-form minimizing diagonal of the rank-one projector hh*.

    Big-coordinate case (some ``|h_j0|^2 > 1/2``): the diagonal is
    ``|h_j0|^2 - 1`` everywhere except ``-|h_j0|^2`` at j0, making entry
    (j0, j0) of the minimal matrix zero.  Spread case (all ``<= 1/2``):
    the diagonal is -1/2 everywhere.  Exactly at ``|h_j0|^2 = 1/2`` the
    two formulas coincide (tag ``boundary``).
    """
    h = _unit_vector(h)
    p = np.abs(h) ** 2
    j0 = int(np.argmax(p))
    unique = bool(np.all(np.abs(h) > _ZERO_COORD_TOL))
    if p[j0] > 0.5 + _BOUNDARY_TOL:
        d = np.full(h.size, p[j0] - 1.0)
        d[j0] = -p[j0]
        norm = float(np.sqrt(p[j0] * (1.0 - p[j0])))
        return RankOneSolution(d, norm, BIG, unique)
    tag = BOUNDARY if p[j0] >= 0.5 - _BOUNDARY_TOL else SPREAD
    return RankOneSolution(np.full(h.size, -0.5), 0.5, tag, unique)


def closed_polygon_angles(lengths) -> np.ndarray:
    """Angles closing a polygon with the given side lengths.

    The lengths must be nonnegative, sum to 1, and each be at most 1/2
    (otherwise no closed polygon exists).  Returns angles theta with
    ``sum_j exp(i theta_j) lengths_j = 0`` up to roundoff.

    Construction: the lengths are greedily split into three groups with
    sums at most 1/2 each (largest first, into the lightest group); the
    group sums close a triangle, and every side inherits the direction of
    its group's triangle edge.
    """
    l = np.asarray(lengths, dtype=float).ravel()
    if np.any(l < 0):
        raise ValueError("lengths must be nonnegative")
    if abs(l.sum() - 1.0) > 1e-12:
        raise ValueError("lengths must sum to 1")
    if np.max(l, initial=0.0) > 0.5 + 1e-15:
        raise ValueError("a length above 1/2 makes a closed polygon impossible")

    group_of = np.zeros(l.size, dtype=int)
    sums = np.zeros(3)
    for j in np.argsort(-l):
        g = int(np.argmin(sums))
        group_of[j] = g
        sums[g] += l[j]

    a, b, c = sums
    # triangle with side lengths (a, b, c); edge a along the positive axis
    if a * b > 0:
        cos_g = np.clip((a * a + b * b - c * c) / (2.0 * a * b), -1.0, 1.0)
        phi2 = np.pi - np.arccos(cos_g)
    else:
        phi2 = np.pi
    p2 = a + b * np.exp(1j * phi2)
    phi3 = float(np.angle(-p2)) if abs(p2) > 0 else 0.0
    phis = np.array([0.0, phi2, phi3])
    return phis[group_of]


def orthogonal_partner(h) -> np.ndarray:
    """Unit vector k orthogonal to h with ``|k_j| = |h_j|`` for all j.

    Exists exactly when every ``|h_j|^2 <= 1/2``; built from the closed
    polygon over the squared moduli.
    """
    h = _unit_vector(h)
    theta = closed_polygon_angles(np.abs(h) ** 2)
    alpha = np.angle(h)
    return np.abs(h) * np.exp(-1j * (theta - alpha))


def nonunique_diagonals(h, j0: int) -> tuple[HermitianMatrix, HermitianMatrix]:
    """Two distinct minimal matrices of the form ``hh* + Diag(d)``.

    Requires every ``|h_j|^2 <= 1/2`` and ``h_j0 = 0``.  Since the j0-th
    coordinate decouples, any diagonal with -1/2 on the support of h and
    a value in [-1/2, 1/2] at j0 is minimizing; the two extremes
    ``d = -1/2 (1 - e_j0) +/- 1/2 e_j0`` are returned as full matrices
    ``hh* + Diag(d)``.  Both have spectral norm 1/2, witnessing
    non-uniqueness of the minimizing diagonal at zero coordinates.
    """
    h = _unit_vector(h)
    if np.max(np.abs(h) ** 2) > 0.5 + _BOUNDARY_TOL:
        raise ValueError("requires |h_j|^2 <= 1/2 for all j")
    if not 0 <= j0 < h.size:
        raise IndexError("j0 out of range")
    if abs(h[j0]) > _ZERO_COORD_TOL:
        raise ValueError("h[j0] must be zero")
    base = np.outer(h, h.conj()) - 0.5 * np.eye(h.size)
    base[j0, j0] = 0.0
    bump = np.zeros_like(base)
    bump[j0, j0] = 0.5
    return HermitianMatrix(base + bump), HermitianMatrix(base - bump)


def generate_minimal_from_negative(h) -> HermitianMatrix:
    """Known-minimal instance ``I/2 - hh*`` for a fully supported spread h.

    Requires every ``0 < |h_j|^2 <= 1/2``.  The resulting matrix is
    minimal as it stands: its best diagonal shift is zero.
    """
    h = _unit_vector(h)
    p = np.abs(h) ** 2
    if np.max(p) > 0.5 + _BOUNDARY_TOL:
        raise ValueError("requires |h_j|^2 <= 1/2 for all j")
    if np.min(np.abs(h)) <= _ZERO_COORD_TOL:
        raise ValueError("requires h_j != 0 for all j")
    return HermitianMatrix(0.5 * np.eye(h.size) - np.outer(h, h.conj()))


def column_criterion_diagonal(h, j0: int) -> np.ndarray:
    """The diagonal pinned down by the big-column criterion at j0,
    ``|h_j|^2 - conj(h_j) h_j0 (1 - |h_j|^2)``.

    Verification-only: for general complex h the formula need not be
    real; a warning is emitted when the imaginary part is non-negligible
    and the real part is returned.
    """
    h = _unit_vector(h)
    if not 0 <= j0 < h.size:
        raise IndexError("j0 out of range")
    p = np.abs(h) ** 2
    d = p - h.conj() * h[j0] * (1.0 - p)
    d[j0] = p[j0]
    if np.max(np.abs(d.imag)) > 1e-10:
        warnings.warn(
            "criterion diagonal is not real for this h; taking the real part",
            stacklevel=2,
        )
    return d.real.copy()


def verify_column_criterion(t: HermitianMatrix, j0: int, tol: float = 1e-10) -> bool:
    """Big-column minimality criterion for a self-adjoint matrix T.

    True iff entry (j0, j0) vanishes, every other entry of column j0 is
    nonzero, the j0-th column dominates the norm of T with row/column j0
    zeroed, and column j0 is orthogonal to every other column.  A passing
    T is minimal with ``||T|| = ||col_j0(T)||``.
    """
    m = t.mat
    n = t.n
    if not 0 <= j0 < n:
        raise IndexError("j0 out of range")
    if abs(m[j0, j0]) > tol:
        return False
    col = m[:, j0]
    others = [k for k in range(n) if k != j0]
    if any(abs(m[j0, k]) <= tol for k in others):
        return False
    reduced = m.copy()
    reduced[j0, :] = 0.0
    reduced[:, j0] = 0.0
    if np.linalg.norm(col) + tol < np.linalg.norm(reduced, 2):
        return False
    return all(abs(np.vdot(col, m[:, k])) <= tol for k in others)
