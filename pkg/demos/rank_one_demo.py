"""Closed-form best diagonals for rank-one projectors hh*.

Two regimes: a dominant coordinate |h_j0|^2 > 1/2 gives an explicit
diagonal with minimal norm |h_j0| sqrt(1 - |h_j0|^2); otherwise -I/2 is
minimizing with norm 1/2, witnessed by an orthogonal partner vector
built from a closed polygon over the squared moduli.
"""
import numpy as np

from mindiag import (
    closed_polygon_angles,
    hermitian,
    minimizing_diagonal,
    nonunique_diagonals,
    orthogonal_partner,
    spectral_norm,
)

# big-coordinate case
h = np.array([np.sqrt(0.8), np.sqrt(0.2)])
sol = minimizing_diagonal(h)
print("h =", np.round(h, 4), "->", sol.case_tag)
print("  diagonal:", sol.diagonal, " minimal norm:", sol.minimal_norm)
m = hermitian(np.outer(h, h) + np.diag(sol.diagonal))
print("  achieved norm:", spectral_norm(m))

# spread case with the polygon construction
print()
h = np.array([np.sqrt(0.5), np.sqrt(0.3), np.sqrt(0.2)])
sol = minimizing_diagonal(h)
print("h =", np.round(h, 4), "->", sol.case_tag, " minimal norm:", sol.minimal_norm)
theta = closed_polygon_angles(np.abs(h) ** 2)
print("  polygon angles:", np.round(theta, 6))
print("  polygon residual:", abs(np.sum(np.abs(h) ** 2 * np.exp(1j * theta))))
k = orthogonal_partner(h)
print("  partner k:", np.round(k, 4))
print("  <h, k> =", abs(np.vdot(h, k)), "  |k_j| = |h_j|:", np.allclose(np.abs(k), np.abs(h)))

# a zero coordinate makes the minimizing diagonal non-unique
print()
h = np.array([np.sqrt(0.5), np.sqrt(0.5), 0.0])
plus, minus = nonunique_diagonals(h, 2)
print("h with h_2 = 0: two minimal matrices, diagonals",
      plus.diagonal(), "and", minus.diagonal())
print("  norms:", spectral_norm(plus), spectral_norm(minus))
