"""Minimality certificates: moment-set intersection or a descent direction.

A matrix A0 + Diag(x) is a best diagonal approximant iff its extreme
eigenvalues tie and the moment sets of the two extreme eigenspaces
intersect.  The certificate carries either an intersection point with a
density-matrix pair (U, V) and a trace witness X, or a direction along
which phi still decreases.
"""
import numpy as np

from mindiag import (
    bottom_eigenspace,
    certify_minimality,
    hermitian,
    shifted,
    spectral_norm,
    top_eigenspace,
    verify_certificate_b,
    verify_witness_cd,
)

# the canonical minimal example
a0 = hermitian([[0.0, 1.0], [1.0, 0.0]])
cert = certify_minimality(a0, np.zeros(2))
print("offdiagonal ones:", cert.verdict, " gap =", cert.gap)
print("  intersection point:", cert.intersection_point.v)
print("  tr U + tr V =", np.trace(cert.u).real + np.trace(cert.v).real)

a = shifted(a0, np.zeros(2))
ok_b = verify_certificate_b(a, top_eigenspace(a), bottom_eigenspace(a), cert.u, cert.v, 1e-9)
print("  (U, V) verification:", ok_b)
print("  witness X:\n", np.round(cert.witness_x.mat.real, 6))
print("  witness c)-d) check:", bool(verify_witness_cd(a, cert.witness_x, 1e-9)))

# a non-minimal point comes with a usable descent direction
print()
a1 = hermitian(np.diag([3.0, 1.0, -1.0]))
cert1 = certify_minimality(a1, np.zeros(3))
print("diag(3, 1, -1):", cert1.verdict)
w = cert1.descent_direction
phi0 = spectral_norm(a1)
for t in (0.1, 0.5, 1.0):
    print(f"  phi(t*w) at t={t}: {spectral_norm(shifted(a1, t * w)):.6f}  (phi(0) = {phi0})")
