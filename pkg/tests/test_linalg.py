"""Projector and eigenvector kernels against closed forms and sampling oracles."""

import numpy as np
import pytest

from noma_secrecy import (
    DeflationError,
    DomainError,
    SingularMatrixError,
    leading_eigvec,
    leading_gen_eigvec,
    orth_complement_basis,
    orth_projector,
)

RNG = np.random.default_rng(20240917)


def random_complex(shape, rng=RNG):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_projector_axis_case():
    p = orth_projector(np.array([1.0, 0.0, 0.0], dtype=complex))
    np.testing.assert_allclose(p, np.diag([0.0, 1.0, 1.0]), atol=1e-15)


def test_projector_full_rank_square_is_zero():
    m = random_complex((4, 4))
    p = orth_projector(m)
    np.testing.assert_allclose(p, np.zeros((4, 4)), atol=1e-12)


def test_projector_hand_case():
    p = orth_projector(np.array([1.0, 1.0, 0.0], dtype=complex))
    expected = np.eye(3) - 0.5 * np.array([[1, 1, 0], [1, 1, 0], [0, 0, 0]], dtype=float)
    np.testing.assert_allclose(p, expected, atol=1e-14)


def test_projector_properties():
    for _ in range(20):
        m = random_complex((6, 3))
        p = orth_projector(m)
        np.testing.assert_allclose(p, p.conj().T, atol=1e-12)
        np.testing.assert_allclose(p @ p, p, atol=1e-12)
        np.testing.assert_allclose(p @ m, np.zeros((6, 3)), atol=1e-12 * np.linalg.norm(m))
        assert np.trace(p).real == pytest.approx(3.0, abs=1e-9)  # rank K - m


def test_projector_rejects_dependent_columns():
    v = random_complex(5)
    with pytest.raises(SingularMatrixError):
        orth_projector(np.column_stack((v, 2.0 * v)))
    with pytest.raises(SingularMatrixError):
        orth_projector(np.zeros(4, dtype=complex))


def test_complement_basis():
    m = random_complex((6, 2))
    q = orth_complement_basis(m)
    assert q.shape == (6, 4)
    np.testing.assert_allclose(q.conj().T @ q, np.eye(4), atol=1e-12)
    np.testing.assert_allclose(m.conj().T @ q, np.zeros((2, 4)), atol=1e-12 * np.linalg.norm(m))


def test_leading_eigvec_diagonal():
    v, lam = leading_eigvec(np.diag([3.0, 1.0]).astype(complex))
    assert lam == pytest.approx(3.0)
    np.testing.assert_allclose(v, [1.0, 0.0], atol=1e-14)


def test_leading_eigvec_2x2():
    v, lam = leading_eigvec(np.array([[2.0, 1.0], [1.0, 2.0]], dtype=complex))
    assert lam == pytest.approx(3.0)
    np.testing.assert_allclose(v, np.array([1.0, 1.0]) / np.sqrt(2.0), atol=1e-12)


def test_leading_eigvec_degenerate_spectrum():
    # documented tie-break: any unit eigenvector, deterministic across calls
    v1, lam1 = leading_eigvec(np.eye(3, dtype=complex))
    v2, lam2 = leading_eigvec(np.eye(3, dtype=complex))
    assert lam1 == lam2 == pytest.approx(1.0)
    np.testing.assert_array_equal(v1, v2)
    assert np.linalg.norm(v1) == pytest.approx(1.0)


def test_leading_eigvec_rejects_non_hermitian():
    with pytest.raises(DomainError):
        leading_eigvec(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex))


def test_leading_eigvec_residual_and_phase():
    for _ in range(20):
        x = random_complex((5, 5))
        h = x + x.conj().T
        v, lam = leading_eigvec(h)
        assert np.linalg.norm(h @ v - lam * v) <= 1e-9 * np.linalg.norm(h)
        pivot = v[int(np.argmax(np.abs(v)))]
        assert pivot.real >= 0.0 and abs(pivot.imag) <= 1e-12


def test_gen_eigvec_diagonal_cases():
    e1 = np.array([1.0, 0.0])
    v = leading_gen_eigvec(np.diag([2.0, 1.0]).astype(complex), np.eye(2, dtype=complex))
    np.testing.assert_allclose(v, e1, atol=1e-12)
    v = leading_gen_eigvec(np.eye(2, dtype=complex), np.diag([1.0, 4.0]).astype(complex))
    np.testing.assert_allclose(v, e1, atol=1e-12)


def test_gen_eigvec_beats_random_sampling():
    # brute-force oracle: 1e5 random unit vectors on a PSD pencil
    x = random_complex((4, 4))
    a = x @ x.conj().T
    y = random_complex((4, 4))
    b = y @ y.conj().T + 0.5 * np.eye(4)
    v = leading_gen_eigvec(a, b)
    best = np.real(np.vdot(v, a @ v)) / np.real(np.vdot(v, b @ v))
    samples = random_complex((100_000, 4))
    num = np.einsum("ij,jk,ik->i", samples.conj(), a, samples).real
    den = np.einsum("ij,jk,ik->i", samples.conj(), b, samples).real
    assert best >= np.max(num / den) - 1e-6


def test_gen_eigvec_residual():
    for _ in range(10):
        x = random_complex((5, 5))
        a = x @ x.conj().T
        y = random_complex((5, 5))
        b = y @ y.conj().T + np.eye(5)
        v = leading_gen_eigvec(a, b)
        lam = np.real(np.vdot(v, a @ v)) / np.real(np.vdot(v, b @ v))
        res = np.linalg.norm(a @ v - lam * b @ v)
        assert res <= 1e-9 * (np.linalg.norm(a) + lam * np.linalg.norm(b))


def test_gen_eigvec_deflated_pencil():
    # projector-sandwiched pencil: singular on C^K, definite on range(F)
    blocked = random_complex(5)
    f = orth_projector(blocked)
    basis = orth_complement_basis(blocked)
    x = random_complex((5, 5))
    a = f @ (x @ x.conj().T) @ f
    y = random_complex((5, 5))
    b = f @ (y @ y.conj().T + np.eye(5)) @ f
    a = 0.5 * (a + a.conj().T)
    b = 0.5 * (b + b.conj().T)
    v = leading_gen_eigvec(a, b, range_basis=basis)
    assert abs(np.vdot(blocked, v)) <= 1e-10 * np.linalg.norm(blocked)
    lam = np.real(np.vdot(v, a @ v)) / np.real(np.vdot(v, b @ v))
    assert np.linalg.norm(a @ v - lam * b @ v) <= 1e-9 * (np.linalg.norm(a) + lam * np.linalg.norm(b))
    # quotient dominates sampling restricted to the subspace
    samples = random_complex((100_000, 4)) @ basis.conj().T
    num = np.einsum("ij,jk,ik->i", samples.conj(), a, samples).real
    den = np.einsum("ij,jk,ik->i", samples.conj(), b, samples).real
    assert lam >= np.max(num / den) - 1e-6


def test_gen_eigvec_singular_denominator_raises():
    a = np.eye(2, dtype=complex)
    b = np.diag([1.0, 0.0]).astype(complex)
    with pytest.raises(DeflationError):
        leading_gen_eigvec(a, b)


def test_gen_eigvec_dimension_mismatch():
    with pytest.raises(DomainError):
        leading_gen_eigvec(np.eye(2, dtype=complex), np.eye(3, dtype=complex))
