"""Eigenvalue subdifferentials and moment sets.

At a simple top eigenvalue the gradient of lambda_max w.r.t. the
diagonal shift is |v|^2; at a degenerate one only directional
derivatives exist, computed as the top eigenvalue of the compressed
direction matrix.  The moment set of an eigenspace basis Q is
{diag(Q R Q*) : R density}; minimality is an intersection of the two
extreme moment sets, found by Frank-Wolfe.
"""
import numpy as np

from mindiag import (
    bottom_eigenspace,
    directional_derivative,
    hermitian,
    moment_set_distance,
    shifted,
    subdiff_lambda_max,
    top_eigenspace,
)

rng = np.random.default_rng(0)
n = 4
m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
a0 = hermitian(0.5 * (m + m.conj().T))
x = rng.standard_normal(n)

# gradient vs central finite differences
basis = subdiff_lambda_max(a0, x)
grad = np.abs(basis.columns[:, 0]) ** 2
fd = np.zeros(n)
for k in range(n):
    e = np.zeros(n)
    e[k] = 1e-6
    fd[k] = (
        np.linalg.eigvalsh(shifted(a0, x + e).mat)[-1]
        - np.linalg.eigvalsh(shifted(a0, x - e).mat)[-1]
    ) / 2e-6
print("gradient |v|^2:      ", np.round(grad, 8))
print("finite differences:  ", np.round(fd, 8))

# a degenerate top eigenvalue: one-sided derivatives differ
print()
a1 = hermitian(np.diag([1.0, 1.0, -1.0]))
w = np.array([2.0, -1.0, 0.0])
print("diag(1,1,-1), w = (2,-1,0):")
print("  derivative along +w:", directional_derivative(a1, np.zeros(3), w))
print("  derivative along -w:", directional_derivative(a1, np.zeros(3), -w))

# moment sets meet exactly when the matrix is minimal
print()
a2 = hermitian([[0.0, 1.0], [1.0, 0.0]])
res = moment_set_distance(top_eigenspace(a2), bottom_eigenspace(a2))
print("offdiagonal ones: moment-set distance =", res.distance, " fw gap =", res.gap)
a3 = hermitian(np.diag([1.0, -1.0]))
res3 = moment_set_distance(top_eigenspace(a3), bottom_eigenspace(a3))
print("diag(1,-1):       moment-set distance =", res3.distance)
