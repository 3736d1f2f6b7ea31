import numpy as np
import pytest

from mindiag.certify import (
    INCONCLUSIVE,
    MINIMAL,
    NOT_MINIMAL,
    certify_minimality,
    embedding_index_groups,
    real_embedding_certificate,
    verify_certificate_b,
    verify_witness_cd,
)
from mindiag.hermitian_core import hermitian, shifted, spectral_norm, top_eigenspace, bottom_eigenspace
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


def phi(a0, x):
    return spectral_norm(shifted(a0, x))


def test_canonical_offdiagonal_is_minimal():
    a0 = hermitian([[0.0, 1.0], [1.0, 0.0]])
    cert = certify_minimality(a0, np.zeros(2))
    assert cert.verdict == MINIMAL
    assert cert.phi == pytest.approx(1.0, abs=1e-12)
    assert cert.gap <= 1e-9
    np.testing.assert_allclose(cert.intersection_point.v, [0.5, 0.5], atol=1e-8)
    # witness matrix reproduces the canonical X
    np.testing.assert_allclose(cert.witness_x.mat, [[0, 0.5], [0.5, 0]], atol=1e-8)


def test_diagonal_sign_split_not_minimal_with_working_descent():
    a0 = hermitian(np.diag([1.0, -1.0]))
    cert = certify_minimality(a0, np.zeros(2))
    assert cert.verdict == NOT_MINIMAL
    assert cert.gap == np.inf or cert.gap > 1e-9
    w = cert.descent_direction
    assert w is not None
    assert any(phi(a0, t * w) < phi(a0, np.zeros(2)) for t in (1e-2, 1e-3, 1e-4))


def test_non_tied_matrix_not_minimal():
    a0 = hermitian(np.diag([3.0, 1.0, -1.0]))
    cert = certify_minimality(a0, np.zeros(3))
    assert cert.verdict == NOT_MINIMAL
    assert cert.gap == np.inf  # no eigenvalue tie, sets cannot meet
    w = cert.descent_direction
    assert any(phi(a0, t * w) < phi(a0, np.zeros(3)) for t in (1e-2, 1e-3, 1e-4))


def test_known_minimal_instances_certify():
    rng = np.random.default_rng(0)
    for n in (3, 4, 6):
        h = spread_unit_vector(rng, n)
        a0 = generate_minimal_from_negative(h)
        cert = certify_minimality(a0, np.zeros(n))
        assert cert.verdict == MINIMAL
        assert cert.gap <= 1e-9


def test_zero_matrix_raises():
    with pytest.raises(ValueError):
        certify_minimality(hermitian(np.diag([1.0, 2.0])), np.array([-1.0, -2.0]))


def test_trace_certificate_roundtrip():
    rng = np.random.default_rng(1)
    h = spread_unit_vector(rng, 5)
    a0 = generate_minimal_from_negative(h)
    cert = certify_minimality(a0, np.zeros(5))
    assert cert.verdict == MINIMAL
    a = shifted(a0, np.zeros(5))
    q1, q2 = top_eigenspace(a), bottom_eigenspace(a)
    assert np.trace(cert.u).real + np.trace(cert.v).real == pytest.approx(1.0, abs=1e-10)
    assert verify_certificate_b(a, q1, q2, cert.u, cert.v, 1e-7)
    # a corrupted block fails
    bad_u = cert.u.copy()
    bad_u[0, 0] += 1e-3
    assert not verify_certificate_b(a, q1, q2, bad_u, cert.v, 1e-7)


def test_witness_verification_canonical():
    a = hermitian([[0.0, 1.0], [1.0, 0.0]])
    x = hermitian([[0.0, 0.5], [0.5, 0.0]])
    chk = verify_witness_cd(a, x, 1e-12)
    assert chk
    assert chk.diag_max == 0.0
    assert chk.trace_lhs == pytest.approx(chk.trace_rhs, abs=1e-12)


def test_witness_verification_rejects_zero_and_bad():
    a = hermitian([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        verify_witness_cd(a, hermitian(np.zeros((2, 2))), 1e-10)
    bad = hermitian([[0.3, 0.5], [0.5, 0.0]])  # nonzero diagonal
    assert not verify_witness_cd(a, bad, 1e-10)


def test_witness_from_certificate_passes_cd():
    rng = np.random.default_rng(2)
    h = spread_unit_vector(rng, 4)
    a0 = generate_minimal_from_negative(h)
    cert = certify_minimality(a0, np.zeros(4))
    assert cert.verdict == MINIMAL
    chk = verify_witness_cd(shifted(a0, np.zeros(4)), cert.witness_x, 1e-6)
    assert chk


def test_embedding_index_groups_layouts():
    assert embedding_index_groups(3) == [(0, 3), (1, 4), (2, 5)]
    legacy = embedding_index_groups(3, legacy=True)
    assert len(legacy) == 3
    assert legacy[-1] == (2, 5)


def test_embedded_agrees_with_direct():
    rng = np.random.default_rng(3)
    for seed in range(10):
        n = int(rng.integers(2, 6))
        a0 = random_hermitian(rng, n)
        x = rng.standard_normal(n)
        direct = certify_minimality(a0, x)
        embedded = real_embedding_certificate(a0, x)
        assert direct.verdict == embedded.verdict


def test_embedded_on_pauli_y():
    a0 = hermitian([[0.0, -1j], [1j, 0.0]])
    direct = certify_minimality(a0, np.zeros(2))
    embedded = real_embedding_certificate(a0, np.zeros(2))
    assert direct.verdict == MINIMAL
    assert embedded.verdict == MINIMAL


def test_embedded_minimal_known_instance():
    rng = np.random.default_rng(4)
    h = spread_unit_vector(rng, 3)
    a0 = generate_minimal_from_negative(h)
    cert = real_embedding_certificate(a0, np.zeros(3))
    assert cert.verdict == MINIMAL
    assert cert.gap <= 1e-9
