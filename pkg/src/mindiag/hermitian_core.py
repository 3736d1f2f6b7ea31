"""Dense Hermitian matrices, eigendecomposition and the real block embedding.

Everything downstream (moment sets, subdifferentials, certificates) works
with the types defined here.  Matrices are plain dense complex numpy
arrays wrapped in small immutable containers; real diagonals are plain
1-d float arrays.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "HermitianMatrix",
    "EigenSystem",
    "EigenspaceBasis",
    "hermitian",
    "shifted",
    "eigendecompose",
    "cluster_eigenspaces",
    "complex_to_real_embed",
    "spectral_norm",
]

DEFAULT_CLUSTER_TOL = 1e-8


@dataclass(frozen=True)
class HermitianMatrix:
    """Self-adjoint complex matrix.

    The constructor checks Hermiticity within ``1e-12 * max|entry|`` and
    then symmetrizes exactly as ``(A + A*)/2``, so consumers may rely on
    ``mat == mat.conj().T`` holding to the last bit.
    """

    mat: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.mat, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
            raise ValueError(f"expected a nonempty square matrix, got shape {a.shape}")
        scale = np.max(np.abs(a)) if a.size else 0.0
        if np.max(np.abs(a - a.conj().T)) > 1e-12 * max(scale, 1.0):
            raise ValueError("matrix is not Hermitian within tolerance")
        a = 0.5 * (a + a.conj().T)
        a.flags.writeable = False
        object.__setattr__(self, "mat", a)

    @property
    def n(self) -> int:
        return self.mat.shape[0]

    def diagonal(self) -> np.ndarray:
        return self.mat.diagonal().real.copy()


def hermitian(entries) -> HermitianMatrix:
    """Shorthand constructor accepting any array-like."""
    return HermitianMatrix(np.asarray(entries, dtype=complex))


def as_real_diagonal(x, n: int | None = None) -> np.ndarray:
    """Validate a real diagonal vector and return it as a float array."""
    v = np.asarray(x, dtype=float)
    if v.ndim != 1:
        raise ValueError("diagonal must be a 1-d real vector")
    if n is not None and v.shape[0] != n:
        raise ValueError(f"diagonal has length {v.shape[0]}, expected {n}")
    return v


@dataclass(frozen=True)
class EigenSystem:
    """Eigenvalues sorted descending with matching orthonormal eigenvectors."""

    values: np.ndarray   # (n,) real, non-increasing
    vectors: np.ndarray  # (n, n) complex, column i pairs with values[i]

    @property
    def n(self) -> int:
        return self.values.shape[0]


@dataclass(frozen=True)
class EigenspaceBasis:
    """Orthonormal basis of an (approximate) eigenspace.

    ``columns`` is an n x s block with ``A @ columns ~ eigenvalue * columns``.
    """

    eigenvalue: float
    columns: np.ndarray  # (n, s)

    @property
    def multiplicity(self) -> int:
        return self.columns.shape[1]

    @property
    def ambient_dim(self) -> int:
        return self.columns.shape[0]


def shifted(a0: HermitianMatrix, x) -> HermitianMatrix:
    """Return ``a0 + Diag(x)`` for a real diagonal vector x."""
    x = as_real_diagonal(x, a0.n)
    m = a0.mat.copy()
    m[np.diag_indices(a0.n)] += x
    return HermitianMatrix(m)


def eigendecompose(a: HermitianMatrix) -> EigenSystem:
    """Full eigendecomposition with eigenvalues sorted descending.

    Backed by LAPACK via ``numpy.linalg.eigh``; raises on non-convergence.
    """
    try:
        w, v = np.linalg.eigh(a.mat)
    except np.linalg.LinAlgError as exc:
        raise np.linalg.LinAlgError(f"eigensolver failed to converge: {exc}") from exc
    # eigh returns ascending order
    return EigenSystem(values=w[::-1].copy(), vectors=v[:, ::-1].copy())


def cluster_eigenspaces(eig: EigenSystem, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> list[EigenspaceBasis]:
    """Group near-equal eigenvalues into eigenspace bases.

    Consecutive sorted eigenvalues join one cluster when their gap is at
    most ``cluster_tol * (1 + max|value|)``; the cluster eigenvalue is the
    mean of its members.  Multiplicities always sum to n.
    """
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    w = eig.values
    scale = 1.0 + (np.max(np.abs(w)) if w.size else 0.0)
    out: list[EigenspaceBasis] = []
    start = 0
    for i in range(1, len(w) + 1):
        if i == len(w) or w[i - 1] - w[i] > cluster_tol * scale:
            out.append(
                EigenspaceBasis(
                    eigenvalue=float(np.mean(w[start:i])),
                    columns=eig.vectors[:, start:i].copy(),
                )
            )
            start = i
    return out


def top_eigenspace(a: HermitianMatrix, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> EigenspaceBasis:
    return cluster_eigenspaces(eigendecompose(a), cluster_tol)[0]


def bottom_eigenspace(a: HermitianMatrix, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> EigenspaceBasis:
    return cluster_eigenspaces(eigendecompose(a), cluster_tol)[-1]


def complex_to_real_embed(a: HermitianMatrix) -> np.ndarray:
    """Real symmetric 2n x 2n block embedding ``[[Re A, -Im A], [Im A, Re A]]``.

    The embedded matrix has the same spectrum as ``a`` with every
    multiplicity doubled, hence the same spectral norm.
    """
    re = a.mat.real
    im = a.mat.imag
    return np.block([[re, -im], [im, re]])


def spectral_norm(a: HermitianMatrix) -> float:
    """Operator norm ``max(|lambda_1|, |lambda_n|)``."""
    w = eigendecompose(a).values
    return float(max(abs(w[0]), abs(w[-1])))
