import numpy as np
import pytest

from mindiag.hermitian_core import hermitian, shifted, spectral_norm
from mindiag.subdifferential import (
    directional_derivative,
    subdiff_lambda_max,
    subdiff_lambda_min,
    subdiff_norm,
)


def random_hermitian(rng, n):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return hermitian(0.5 * (m + m.conj().T))


def lam_max(a0, x):
    return np.linalg.eigvalsh(shifted(a0, x).mat)[-1]


def test_subdiff_norm_cases():
    x = np.zeros(2)
    assert subdiff_norm(hermitian(np.diag([2.0, -1.0])), x).kind == "max_side"
    assert subdiff_norm(hermitian(np.diag([1.0, -2.0])), x).kind == "min_side"
    both = subdiff_norm(hermitian([[0.0, 1.0], [1.0, 0.0]]), x)
    assert both.kind == "both_sides"
    assert both.q_max is not None and both.q_min is not None


def test_subdiff_norm_rejects_zero_matrix():
    with pytest.raises(ValueError):
        subdiff_norm(hermitian(np.zeros((3, 3))), np.zeros(3))


def test_lambda_max_gradient_is_squared_eigenvector():
    # simple top eigenvalue: the subdifferential is the single point |v|^2,
    # checked against central finite differences
    rng = np.random.default_rng(0)
    step = 1e-6
    for _ in range(30):
        n = int(rng.integers(2, 7))
        a0 = random_hermitian(rng, n)
        x = rng.standard_normal(n)
        w = np.linalg.eigvalsh(shifted(a0, x).mat)
        if w[-1] - w[-2] < 1e-3:
            continue
        basis = subdiff_lambda_max(a0, x)
        assert basis.multiplicity == 1
        grad = np.abs(basis.columns[:, 0]) ** 2
        for k in range(n):
            e = np.zeros(n)
            e[k] = step
            fd = (lam_max(a0, x + e) - lam_max(a0, x - e)) / (2 * step)
            assert fd == pytest.approx(grad[k], abs=1e-4)


def test_lambda_min_basis_is_bottom_eigenvector():
    rng = np.random.default_rng(1)
    a0 = random_hermitian(rng, 5)
    basis = subdiff_lambda_min(a0, np.zeros(5))
    w, v = np.linalg.eigh(a0.mat)
    overlap = np.abs(np.vdot(v[:, 0], basis.columns[:, 0]))
    assert overlap == pytest.approx(1.0, abs=1e-10)


def test_directional_derivative_simple_case_is_linear():
    rng = np.random.default_rng(2)
    a0 = random_hermitian(rng, 4)
    x = np.zeros(4)
    w = rng.standard_normal(4)
    basis = subdiff_lambda_max(a0, x)
    if basis.multiplicity == 1:
        expected = np.abs(basis.columns[:, 0]) ** 2 @ w
        assert directional_derivative(a0, x, w) == pytest.approx(expected, abs=1e-10)


def test_directional_derivative_at_multiplicity():
    # degenerate top eigenvalue: one-sided derivatives differ by direction sign,
    # matching the extreme eigenvalue of the compressed direction matrix
    a0 = hermitian(np.diag([1.0, 1.0, -1.0]))
    w = np.array([2.0, -1.0, 0.0])
    assert directional_derivative(a0, np.zeros(3), w) == pytest.approx(2.0, abs=1e-12)
    assert directional_derivative(a0, np.zeros(3), -w) == pytest.approx(1.0, abs=1e-12)
    # one-sided finite differences agree; the two-sided difference does not
    t = 1e-6
    fwd = (np.linalg.eigvalsh(a0.mat + np.diag(t * w))[-1] - 1.0) / t
    assert fwd == pytest.approx(2.0, abs=1e-4)
    bwd = (np.linalg.eigvalsh(a0.mat - np.diag(t * w))[-1] - 1.0) / t
    assert -bwd == pytest.approx(-1.0, abs=1e-4)


def test_directional_derivative_validates_length():
    a0 = hermitian(np.eye(2))
    with pytest.raises(ValueError):
        directional_derivative(a0, np.zeros(2), np.zeros(3))
