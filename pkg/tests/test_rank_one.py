import numpy as np
import pytest

from mindiag.certify import MINIMAL, certify_minimality
from mindiag.hermitian_core import hermitian, spectral_norm
from mindiag.rank_one import (
    BIG,
    BOUNDARY,
    SPREAD,
    closed_polygon_angles,
    column_criterion_diagonal,
    generate_minimal_from_negative,
    minimizing_diagonal,
    nonunique_diagonals,
    orthogonal_partner,
    verify_column_criterion,
)


def random_unit(rng, n):
    h = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return h / np.linalg.norm(h)


def rank_one_plus_diag(h, d):
    return hermitian(np.outer(h, np.conj(h)) + np.diag(d))


def test_big_coordinate_case_formula():
    h = np.array([np.sqrt(0.8), np.sqrt(0.2)])
    sol = minimizing_diagonal(h)
    assert sol.case_tag == BIG
    assert sol.minimal_norm == pytest.approx(np.sqrt(0.8 * 0.2), abs=1e-14)
    assert sol.minimal_norm == pytest.approx(0.4, abs=1e-14)
    np.testing.assert_allclose(sol.diagonal, [-0.8, -0.2], atol=1e-14)
    # the achieved spectral norm matches the formula
    m = rank_one_plus_diag(h, sol.diagonal)
    assert spectral_norm(m) == pytest.approx(0.4, abs=1e-12)
    assert m.mat[0, 0] == pytest.approx(0.0, abs=1e-14)


def test_spread_case_is_minus_half_identity():
    rng = np.random.default_rng(0)
    for n in (3, 5, 9):
        h = random_unit(rng, n)
        while np.max(np.abs(h) ** 2) > 0.45:
            h = random_unit(rng, n)
        sol = minimizing_diagonal(h)
        assert sol.case_tag == SPREAD
        assert sol.minimal_norm == 0.5
        np.testing.assert_allclose(sol.diagonal, -0.5 * np.ones(n), atol=0)
        assert spectral_norm(rank_one_plus_diag(h, sol.diagonal)) == pytest.approx(0.5, abs=1e-12)


def test_boundary_case_tag():
    h = np.array([np.sqrt(0.5), np.sqrt(0.3), np.sqrt(0.2)])
    sol = minimizing_diagonal(h)
    assert sol.case_tag == BOUNDARY
    assert sol.minimal_norm == 0.5


def test_achieved_norms_beat_random_diagonals():
    # the closed form is a true minimizer: random diagonals never do better
    rng = np.random.default_rng(1)
    for _ in range(20):
        n = int(rng.integers(2, 7))
        h = random_unit(rng, n)
        sol = minimizing_diagonal(h)
        best = spectral_norm(rank_one_plus_diag(h, sol.diagonal))
        assert best <= sol.minimal_norm + 1e-10
        for _ in range(40):
            d = sol.diagonal + 0.3 * rng.standard_normal(n)
            assert spectral_norm(rank_one_plus_diag(h, d)) >= best - 1e-10


def test_polygon_angles_close():
    rng = np.random.default_rng(2)
    for _ in range(50):
        n = int(rng.integers(3, 12))
        while True:
            l = rng.dirichlet(np.ones(n))
            if np.max(l) <= 0.5:
                break
        theta = closed_polygon_angles(l)
        resid = abs(np.sum(l * np.exp(1j * theta)))
        assert resid <= 1e-10


def test_polygon_rejects_infeasible():
    with pytest.raises(ValueError):
        closed_polygon_angles([0.6, 0.3, 0.1])
    with pytest.raises(ValueError):
        closed_polygon_angles([0.5, 0.4])  # does not sum to 1
    with pytest.raises(ValueError):
        closed_polygon_angles([-0.1, 0.6, 0.5])


def test_orthogonal_partner_properties():
    rng = np.random.default_rng(3)
    # n = 2 is feasible only with equal moduli
    cases = [np.array([1.0, np.exp(0.3j)]) / np.sqrt(2.0)]
    for n in (4, 7):
        while True:
            h = random_unit(rng, n)
            if np.max(np.abs(h) ** 2) <= 0.45:
                break
        cases.append(h)
    for h in cases:
        k = orthogonal_partner(h)
        assert abs(np.vdot(h, k)) <= 1e-10
        np.testing.assert_allclose(np.abs(k), np.abs(h), atol=1e-12)
        assert np.linalg.norm(k) == pytest.approx(1.0, abs=1e-12)


def test_orthogonal_partner_rejects_big_coordinate():
    with pytest.raises(ValueError):
        orthogonal_partner(np.array([np.sqrt(0.8), np.sqrt(0.2)]))


def test_nonunique_diagonals_both_minimal():
    # h with a zero coordinate: both +/- bumps at that coordinate reach norm 1/2
    h = np.array([np.sqrt(0.5), np.sqrt(0.5), 0.0])
    plus, minus = nonunique_diagonals(h, 2)
    for wit in (plus, minus):
        assert spectral_norm(wit) == pytest.approx(0.5, abs=1e-12)
        # off-diagonal part is hh*, so each witness exhibits a minimizing diagonal
        off = wit.mat - np.diag(wit.diagonal())
        np.testing.assert_allclose(off, np.outer(h, h) - np.diag(np.abs(h) ** 2), atol=1e-12)
        cert = certify_minimality(wit, np.zeros(3))
        assert cert.verdict == MINIMAL
    # the two minimizing diagonals differ at the zero coordinate
    assert plus.diagonal()[2] == pytest.approx(0.5)
    assert minus.diagonal()[2] == pytest.approx(-0.5)
    with pytest.raises(ValueError):
        nonunique_diagonals(h, 0)  # h[0] != 0


def test_generate_minimal_from_negative_certifies():
    rng = np.random.default_rng(4)
    for n in (3, 4, 6):
        while True:
            h = random_unit(rng, n)
            if 0 < np.min(np.abs(h)) and np.max(np.abs(h) ** 2) <= 0.45:
                break
        a = generate_minimal_from_negative(h)
        assert spectral_norm(a) == pytest.approx(0.5, abs=1e-12)
        cert = certify_minimality(a, np.zeros(n))
        assert cert.verdict == MINIMAL


def test_criterion_diagonal_real_case():
    h = np.array([np.sqrt(0.5), np.sqrt(0.3), np.sqrt(0.2)])
    d = column_criterion_diagonal(h, 0)
    assert d.dtype == float
    assert d[0] == pytest.approx(0.5, abs=1e-12)


def test_column_criterion_diagonal_warns_on_complex():
    h = np.array([np.sqrt(0.5), np.sqrt(0.5) * np.exp(0.7j), 0.0])
    h = h / np.linalg.norm(h)
    with pytest.warns(UserWarning):
        column_criterion_diagonal(h, 0)


def test_column_criterion_pass_and_fail():
    h = np.array([np.sqrt(0.8), np.sqrt(0.1), np.sqrt(0.1)])
    sol = minimizing_diagonal(h)
    t = rank_one_plus_diag(h, sol.diagonal)
    assert verify_column_criterion(t, 0)
    # the same matrix fails at a coordinate with nonzero diagonal entry
    assert not verify_column_criterion(t, 1)
    with pytest.raises(IndexError):
        verify_column_criterion(t, 5)


def test_rejects_non_unit_vectors():
    with pytest.raises(ValueError):
        minimizing_diagonal(np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        minimizing_diagonal(np.array([]))
