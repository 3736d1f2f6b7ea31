import numpy as np
import pytest

from mindiag.hermitian_core import hermitian, top_eigenspace, bottom_eigenspace
from mindiag.moment_geometry import (
    DensityMatrix,
    MomentVector,
    jnr_point,
    least_norm_hull_point,
    moment_element,
    moment_set_distance,
)
from mindiag.rank_one import generate_minimal_from_negative


def random_hermitian(rng, n):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return hermitian(0.5 * (m + m.conj().T))


def spread_unit_vector(rng, n):
    while True:
        h = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        h /= np.linalg.norm(h)
        if np.max(np.abs(h) ** 2) <= 0.45:
            return h


def test_density_matrix_validation():
    DensityMatrix(np.eye(3) / 3)
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(3))  # trace 3
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([1.5, -0.5]))  # not psd


def test_moment_vector_validation():
    MomentVector(np.array([0.25, 0.75]))
    with pytest.raises(ValueError):
        MomentVector(np.array([0.6, 0.6]))
    with pytest.raises(ValueError):
        MomentVector(np.array([1.2, -0.2]))


def test_moment_element_simple_eigenvector():
    rng = np.random.default_rng(0)
    a = random_hermitian(rng, 5)
    top = top_eigenspace(a)
    assert top.multiplicity == 1
    m = moment_element(top, DensityMatrix(np.eye(1)))
    np.testing.assert_allclose(m.v, np.abs(top.columns[:, 0]) ** 2, atol=1e-12)
    assert m.v.sum() == pytest.approx(1.0, abs=1e-10)


def test_moment_element_convexity():
    # diag(Q R Q*) is linear in R, so mixtures of densities mix moments
    rng = np.random.default_rng(1)
    q, _ = np.linalg.qr(rng.standard_normal((6, 3)) + 1j * rng.standard_normal((6, 3)))
    a = hermitian(2.0 * (q @ q.conj().T))  # top eigenvalue 2 with multiplicity 3
    top = top_eigenspace(a)
    assert top.multiplicity == 3
    r1 = np.diag([1.0, 0.0, 0.0])
    r2 = np.diag([0.0, 0.5, 0.5])
    m1 = moment_element(top, DensityMatrix(r1)).v
    m2 = moment_element(top, DensityMatrix(r2)).v
    mix = moment_element(top, DensityMatrix(0.25 * r1 + 0.75 * r2)).v
    np.testing.assert_allclose(mix, 0.25 * m1 + 0.75 * m2, atol=1e-12)


def test_jnr_point_matches_moment_for_supported_density():
    rng = np.random.default_rng(2)
    a = random_hermitian(rng, 4)
    top = top_eigenspace(a)
    v = top.columns[:, 0]
    rho = DensityMatrix(np.outer(v, v.conj()))
    pt = jnr_point(top, rho, range(4))
    np.testing.assert_allclose(pt, np.abs(v) ** 2, atol=1e-12)


def test_moment_distance_two_points_is_exact():
    # multiplicity one on both sides: the sets are singletons
    rng = np.random.default_rng(3)
    for _ in range(25):
        a = random_hermitian(rng, int(rng.integers(2, 7)))
        t, b = top_eigenspace(a), bottom_eigenspace(a)
        if t.multiplicity != 1 or b.multiplicity != 1:
            continue
        res = moment_set_distance(t, b)
        exact = np.linalg.norm(np.abs(t.columns[:, 0]) ** 2 - np.abs(b.columns[:, 0]) ** 2)
        assert res.distance == pytest.approx(exact, abs=1e-10)
        assert res.converged


def test_moment_distance_zero_on_known_minimal():
    rng = np.random.default_rng(4)
    for n in (3, 5, 8):
        h = spread_unit_vector(rng, n)
        a = generate_minimal_from_negative(h)
        res = moment_set_distance(top_eigenspace(a), bottom_eigenspace(a))
        assert res.distance <= 1e-9
        assert res.gap <= 1e-9
        # minimizers are genuine densities
        assert abs(np.trace(res.y.mat).real - 1.0) < 1e-9
        assert abs(np.trace(res.z.mat).real - 1.0) < 1e-9


def test_moment_distance_with_index_groups():
    # grouping all coordinates collapses every moment to the scalar 1
    rng = np.random.default_rng(5)
    a = random_hermitian(rng, 4)
    res = moment_set_distance(
        top_eigenspace(a), bottom_eigenspace(a), index_groups=[tuple(range(4))]
    )
    assert res.distance <= 1e-10


def test_least_norm_single_point_set():
    rng = np.random.default_rng(6)
    a = random_hermitian(rng, 5)
    top = top_eigenspace(a)
    g = least_norm_hull_point([(top, 1.0)])
    np.testing.assert_allclose(g, np.abs(top.columns[:, 0]) ** 2, atol=1e-9)


def test_least_norm_two_sided_descent_property():
    # on a non-tied pair the least-norm point g satisfies <v, g> >= ||g||^2
    # for every extreme point v of the hull, so -g is a descent direction
    rng = np.random.default_rng(7)
    a = hermitian(np.diag([1.0, -1.0]))
    g = least_norm_hull_point([(top_eigenspace(a), 1.0), (bottom_eigenspace(a), -1.0)])
    np.testing.assert_allclose(g, [0.5, -0.5], atol=1e-8)
