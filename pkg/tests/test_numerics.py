import numpy as np
import pytest

from conftest import random_density
from fdl.numerics import (
    NotHermitianError,
    NotPositiveError,
    hermitian_eigen,
    product_sqrt_spectrum,
    psd_sqrt,
)


def test_eigen_diagonal():
    w, _ = hermitian_eigen(np.diag([3.0, 1.0, 2.0]))
    np.testing.assert_allclose(w, [1, 2, 3])


def test_eigen_pauli_x():
    w, _ = hermitian_eigen([[0, 1], [1, 0]])
    np.testing.assert_allclose(w, [-1, 1], atol=1e-15)


def test_eigen_reconstruction(rng):
    z = rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8))
    h = z + z.conj().T
    w, u = hermitian_eigen(h)
    assert np.all(np.diff(w) >= 0)
    assert np.max(np.abs(h - (u * w) @ u.conj().T)) <= 1e-11 * np.max(np.abs(h))
    assert np.max(np.abs(u.conj().T @ u - np.eye(8))) <= 1e-12


def test_eigen_deterministic(rng):
    rho = random_density(rng, 6)
    a, b = hermitian_eigen(rho), hermitian_eigen(rho.copy())
    np.testing.assert_array_equal(a.eigenvalues, b.eigenvalues)
    np.testing.assert_array_equal(a.eigenvectors, b.eigenvectors)


def test_eigen_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eigen([[0, 1], [0, 0]])


def test_psd_sqrt_examples():
    np.testing.assert_allclose(psd_sqrt(np.eye(3)), np.eye(3), atol=1e-15)
    np.testing.assert_allclose(psd_sqrt(np.diag([4.0, 9.0])), np.diag([2.0, 3.0]), atol=1e-14)


def test_psd_sqrt_squares_back(rng):
    rho = random_density(rng, 6)
    s = psd_sqrt(rho)
    assert np.max(np.abs(s @ s - rho)) < 1e-10


def test_psd_sqrt_clamps_and_rejects():
    s = psd_sqrt(np.diag([1.0, -5e-13]))
    assert s[1, 1] == 0
    with pytest.raises(NotPositiveError):
        psd_sqrt(np.diag([1.0, -1e-6]))


def test_product_sqrt_projector():
    e3 = np.zeros((6, 6))
    e3[2, 2] = 1
    np.testing.assert_allclose(product_sqrt_spectrum(e3, e3), [1, 0, 0, 0, 0, 0], atol=1e-15)


def test_product_sqrt_two_level_block():
    # rho = 0.7 e3 + 0.3 e4; the spin flip sends e4 -> e2, so only 0.7 survives
    p = 0.3
    rho = np.diag([0, 0, 1 - p, p, 0, 0]).astype(complex)
    tilde = np.diag([0, p, 1 - p, 0, 0, 0]).astype(complex)
    lam = product_sqrt_spectrum(rho, tilde)
    np.testing.assert_allclose(lam, [0.7, 0, 0, 0, 0, 0], atol=1e-15)
    brute = np.sort(np.sqrt(np.clip(np.linalg.eigvals(rho @ tilde).real, 0, None)))[::-1]
    np.testing.assert_allclose(lam, brute, atol=1e-12)


@pytest.mark.parametrize("rank", [1, 3, 6])
def test_product_sqrt_matches_nonhermitian_eig(rng, rank):
    a = random_density(rng, 6, rank)
    b = random_density(rng, 6)
    lam = product_sqrt_spectrum(a, b)
    brute = np.sqrt(np.clip(np.linalg.eigvals(a @ b).real, 0, None))
    np.testing.assert_allclose(lam, np.sort(brute)[::-1], atol=1e-7 if rank < 6 else 1e-9)
    assert np.all(np.diff(lam) <= 0)


def test_product_sqrt_self_is_spectrum(rng):
    rho = random_density(rng, 6)
    lam = product_sqrt_spectrum(rho, rho)
    np.testing.assert_allclose(lam, np.sort(np.linalg.eigvalsh(rho))[::-1], atol=1e-12)


def test_product_sqrt_basis_invariant(rng):
    a, b = random_density(rng, 6), random_density(rng, 6)
    q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
    lam = product_sqrt_spectrum(a, b)
    rot = product_sqrt_spectrum(q @ a @ q.conj().T, q @ b @ q.conj().T)
    np.testing.assert_allclose(lam, rot, atol=1e-10)


def test_product_sqrt_rejects_negative():
    with pytest.raises(NotPositiveError):
        product_sqrt_spectrum(np.diag([1.0, -0.1]), np.eye(2))
