"""Moment sets of subspaces and distances between them.

The moment of a subspace S (with orthonormal basis Q, an n x s block) is
the convex set of diagonals ``diag(Q R Q*)`` over density matrices R.
Deciding whether two moment sets intersect reduces to minimizing the
quadratic ``||diag(Q1 Y Q1*) - diag(Q2 Z Q2*)||^2`` over density
matrices, which is done here by a conditional-gradient (Frank-Wolfe)
method: the linear minimization oracle over ``{R >= 0, tr R = 1}`` is a
single extreme-eigenvector computation.  Plain conditional gradient
stalls at O(1/k) accuracy, so iterates are periodically polished by an
accelerated projected-gradient pass over the same feasible set; the
reported certificate gap is still the Frank-Wolfe duality gap.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hermitian_core import EigenspaceBasis

__all__ = [
    "DensityMatrix",
    "MomentVector",
    "MomentDistance",
    "moment_element",
    "jnr_point",
    "moment_set_distance",
    "least_norm_hull_point",
]

DEFAULT_GAP_TOL = 1e-9
DEFAULT_MAX_ITERS = 5000


@dataclass(frozen=True)
class DensityMatrix:
    """Positive semidefinite self-adjoint matrix with unit trace."""

    mat: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.mat, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("density matrix must be square")
        a = 0.5 * (a + a.conj().T)
        if abs(np.trace(a).real - 1.0) > 1e-10:
            raise ValueError("density matrix trace must equal 1")
        if np.linalg.eigvalsh(a)[0] < -1e-10:
            raise ValueError("density matrix must be positive semidefinite")
        a.flags.writeable = False
        object.__setattr__(self, "mat", a)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True)
class MomentVector:
    """Nonnegative real vector summing to 1 (an element of some m_S)."""

    v: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        if v.ndim != 1:
            raise ValueError("moment vector must be 1-d")
        if v.min(initial=0.0) < -1e-12:
            raise ValueError("moment vector has a negative coordinate")
        if abs(v.sum() - 1.0) > 1e-10:
            raise ValueError("moment vector coordinates must sum to 1")
        v.flags.writeable = False
        object.__setattr__(self, "v", v)


def _diag_qrq(q: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Real diagonal of Q R Q* without forming the full product."""
    return np.einsum("ik,kl,il->i", q, r, q.conj()).real


def moment_element(q: EigenspaceBasis, r: DensityMatrix) -> MomentVector:
    """The moment-set element ``diag(Q R Q*)`` for a density matrix R."""
    if r.dim != q.multiplicity:
        raise ValueError(
            f"density matrix dim {r.dim} does not match multiplicity {q.multiplicity}"
        )
    return MomentVector(_diag_qrq(q.columns, r.mat))


def jnr_point(s_basis: EigenspaceBasis, rho: DensityMatrix, indices) -> np.ndarray:
    """Joint-numerical-range point ``(tr(P_S E_j P_S rho))_j``.

    ``rho`` lives on the ambient space; ``indices`` selects which standard
    rank-one projectors E_j (0-based) enter the tuple.
    """
    n = s_basis.ambient_dim
    if rho.dim != n:
        raise ValueError(f"rho has dim {rho.dim}, ambient dim is {n}")
    idx = list(indices)
    if any(j < 0 or j >= n for j in idx):
        raise IndexError("basis index out of range")
    q = s_basis.columns
    # P_S E_j P_S rho has trace  e_j* P_S rho P_S e_j
    p_rho_p = q @ (q.conj().T @ rho.mat @ q) @ q.conj().T
    d = p_rho_p.diagonal().real
    return d[idx].copy()


def _group_matrix(groups, n: int) -> np.ndarray:
    """0/1 matrix mapping coordinate diagonals to grouped sums."""
    if groups is None:
        return np.eye(n)
    g = np.zeros((len(groups), n))
    for row, members in enumerate(groups):
        for j in members:
            g[row, j] = 1.0
    return g


def _project_simplex(w: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    u = np.sort(w)[::-1]
    css = np.cumsum(u) - 1.0
    rho = np.nonzero(u * np.arange(1, len(w) + 1) > css)[0][-1]
    theta = css[rho] / (rho + 1.0)
    return np.maximum(w - theta, 0.0)


def _project_density(m: np.ndarray) -> np.ndarray:
    """Projection of a Hermitian matrix onto the density-matrix set."""
    m = 0.5 * (m + m.conj().T)
    w, v = np.linalg.eigh(m)
    w = _project_simplex(w)
    return (v * w) @ v.conj().T


@dataclass(frozen=True)
class MomentDistance:
    """Result of a moment-set distance computation."""

    distance: float
    y: DensityMatrix
    z: DensityMatrix
    gap: float          # final Frank-Wolfe duality gap
    converged: bool
    iterations: int


class _MomentPair:
    """Shared state for the two-set quadratic ``||d1(Y) - d2(Z)||^2``."""

    def __init__(self, q1, q2, groups):
        if q1.shape[0] != q2.shape[0]:
            raise ValueError("bases must share the ambient dimension")
        self.q1 = q1
        self.q2 = q2
        self.g = _group_matrix(groups, q1.shape[0])

    def d1(self, y):
        return self.g @ _diag_qrq(self.q1, y)

    def d2(self, z):
        return self.g @ _diag_qrq(self.q2, z)

    def grads(self, r):
        # gradient blocks of ||r||^2 w.r.t. Y and Z, r = d1(Y) - d2(Z)
        w = 2.0 * (self.g.T @ r)
        gy = (self.q1.conj().T * w) @ self.q1
        gz = -(self.q2.conj().T * w) @ self.q2
        return gy, gz

    def lipschitz(self):
        # operator norm bound of the linear map (Y, Z) -> d1(Y) - d2(Z)
        # stack the (vectorized) coefficient matrices of each output row
        t, s = self.q1.shape[1], self.q2.shape[1]
        m = np.zeros((self.g.shape[0], t * t + s * s), dtype=complex)
        for i in range(self.g.shape[0]):
            p1 = (self.q1.conj().T * self.g[i]) @ self.q1
            p2 = (self.q2.conj().T * self.g[i]) @ self.q2
            m[i] = np.concatenate([p1.ravel(), -p2.ravel()])
        op = np.linalg.norm(m, 2)
        return 2.0 * op * op


def _min_eigvec(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(0.5 * (h + h.conj().T))
    return v[:, 0]


def _apg_polish(pair: _MomentPair, y, z, iters: int = 400):
    """Accelerated projected gradient on (Y, Z) with function restarts."""
    lip = pair.lipschitz()
    if lip <= 0:
        return y, z
    step = 1.0 / lip
    ty, tz = y.copy(), z.copy()
    theta = 1.0
    r = pair.d1(y) - pair.d2(z)
    f_prev = r @ r
    for _ in range(iters):
        r = pair.d1(ty) - pair.d2(tz)
        gy, gz = pair.grads(r)
        y_new = _project_density(ty - step * gy)
        z_new = _project_density(tz - step * gz)
        r_new = pair.d1(y_new) - pair.d2(z_new)
        f_new = r_new @ r_new
        if f_new > f_prev:  # restart momentum
            theta = 1.0
            ty, tz = y.copy(), z.copy()
            continue
        theta_new = 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * theta * theta))
        beta = (theta - 1.0) / theta_new
        ty = y_new + beta * (y_new - y)
        tz = z_new + beta * (z_new - z)
        y, z, theta, f_prev = y_new, z_new, theta_new, f_new
        if f_new < 1e-28:
            break
    return y, z


def moment_set_distance(
    q1: EigenspaceBasis,
    q2: EigenspaceBasis,
    max_iters: int = DEFAULT_MAX_ITERS,
    gap_tol: float = DEFAULT_GAP_TOL,
    index_groups=None,
    polish_every: int = 25,
) -> MomentDistance:
    """Euclidean distance between the moment sets of two eigenspaces.

    Minimizes ``||diag(Q1 Y Q1*) - diag(Q2 Z Q2*)||_2^2`` over density
    matrices Y, Z by conditional gradient with exact line search on the
    quadratic.  ``index_groups``, when given, replaces coordinates by sums
    over index groups (used by the real-embedding certificate, where the
    paired coordinates k and n+k act together).

    Returns the distance, the minimizing pair, the final duality gap and
    a convergence flag (``False`` when ``max_iters`` is exhausted with
    gap above ``gap_tol``).
    """
    pair = _MomentPair(q1.columns, q2.columns, index_groups)
    t, s = q1.multiplicity, q2.multiplicity
    y = np.eye(t, dtype=complex) / t
    z = np.eye(s, dtype=complex) / s

    gap = np.inf
    converged = False
    it = 0
    for it in range(1, max_iters + 1):
        r = pair.d1(y) - pair.d2(z)
        gy, gz = pair.grads(r)
        u = _min_eigvec(gy)
        v = _min_eigvec(gz)
        sy = np.outer(u, u.conj())
        sz = np.outer(v, v.conj())
        gap = float(
            np.vdot(gy, y - sy).real + np.vdot(gz, z - sz).real
        )
        if gap <= gap_tol:
            converged = True
            break
        delta = (pair.d1(sy) - pair.d1(y)) - (pair.d2(sz) - pair.d2(z))
        denom = delta @ delta
        if denom <= 0.0:
            converged = True
            break
        gamma = float(np.clip(-(r @ delta) / denom, 0.0, 1.0))
        y = y + gamma * (sy - y)
        z = z + gamma * (sz - z)
        if it % polish_every == 0:
            y, z = _apg_polish(pair, y, z)

    y, z = _apg_polish(pair, y, z)
    r = pair.d1(y) - pair.d2(z)
    gy, gz = pair.grads(r)
    u = _min_eigvec(gy)
    v = _min_eigvec(gz)
    gap = float(
        np.vdot(gy, y - np.outer(u, u.conj())).real
        + np.vdot(gz, z - np.outer(v, v.conj())).real
    )
    converged = converged or gap <= gap_tol
    return MomentDistance(
        distance=float(np.sqrt(max(r @ r, 0.0))),
        y=DensityMatrix(y),
        z=DensityMatrix(z),
        gap=gap,
        converged=converged,
        iterations=it,
    )


def least_norm_hull_point(
    bases: list[tuple[EigenspaceBasis, float]],
    max_iters: int = 2000,
    gap_tol: float = 1e-10,
    index_groups=None,
) -> np.ndarray:
    """Least-norm point of ``co(union of sign_i * m_{S_i})``.

    ``bases`` is a list of (eigenspace basis, sign) pairs.  Conditional
    gradient with exact line search; the oracle for each signed moment
    set is an extreme eigenvector of the compressed direction matrix.
    Used to extract steepest-descent directions from norm subdifferentials.
    ``index_groups`` sums coordinates over index groups, as in
    :func:`moment_set_distance`.
    """
    if not bases:
        raise ValueError("need at least one moment set")
    gm = _group_matrix(index_groups, bases[0][0].ambient_dim)
    q0, s0 = bases[0]
    g = s0 * (gm @ _diag_qrq(q0.columns, np.eye(q0.multiplicity) / q0.multiplicity))
    for _ in range(max_iters):
        w = gm.T @ g
        best = None
        for q, sign in bases:
            h = sign * ((q.columns.conj().T * w) @ q.columns)
            u = _min_eigvec(h)
            cand = sign * (gm @ _diag_qrq(q.columns, np.outer(u, u.conj())))
            val = g @ cand
            if best is None or val < best[0]:
                best = (val, cand)
        v = best[1]
        gap = 2.0 * (g @ (g - v))
        if gap <= gap_tol:
            break
        diff = v - g
        denom = diff @ diff
        if denom <= 0.0:
            break
        gamma = float(np.clip(-(g @ diff) / denom, 0.0, 1.0))
        g = g + gamma * diff
    return g
