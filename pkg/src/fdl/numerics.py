"""Dense Hermitian spectral primitives for small matrices (n <= 32)."""

from typing import NamedTuple

import numpy as np

HERMITIAN_TOL = 1e-12
EIGEN_FLOOR = -1e-12
# Eigenvalues below this fraction of the largest are eigensolver noise.
SUPPORT_RTOL = 1e-14


class NotHermitianError(ValueError):
    """Raised when a matrix deviates from Hermiticity beyond tolerance."""


class NotPositiveError(ValueError):
    """Raised when a matrix has an eigenvalue below the clamp floor."""


class Spectrum(NamedTuple):
    eigenvalues: np.ndarray  # ascending, real
    eigenvectors: np.ndarray  # columns


def hermitize(h, tol=HERMITIAN_TOL):
    """Return ``(h + h^dagger) / 2`` if ``h`` is Hermitian up to ``tol``.

    Deviations larger than ``tol`` (max-abs entry) raise NotHermitianError.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {h.shape}")
    dev = np.max(np.abs(h - h.conj().T)) if h.size else 0.0
    if dev > tol:
        raise NotHermitianError(f"matrix is not Hermitian (max deviation {dev:.3e})")
    return (h + h.conj().T) / 2


def hermitian_eigen(h) -> Spectrum:
    """Eigendecomposition of a Hermitian matrix, eigenvalues ascending."""
    h = hermitize(h)
    w, u = np.linalg.eigh(h)
    return Spectrum(w, u)


def clamp_spectrum(w, floor=EIGEN_FLOOR):
    w = np.asarray(w, dtype=float)
    if w.size and w.min() < floor:
        raise NotPositiveError(f"eigenvalue {w.min():.3e} below floor {floor:.0e}")
    return np.clip(w, 0.0, None)


def psd_sqrt(rho):
    """Principal square root of a positive semidefinite matrix.

    Eigenvalues in ``[-1e-12, 0)`` are clamped to zero; anything more
    negative raises NotPositiveError. Eigenvalues smaller than ``1e-14``
    times the largest are treated as zero so that roundoff in the null
    space does not turn into ``sqrt(eps)``-sized entries.
    """
    w, u = hermitian_eigen(rho)
    w = clamp_spectrum(w)
    if w.size:
        w[w <= SUPPORT_RTOL * w.max()] = 0.0
    root = (u * np.sqrt(w)) @ u.conj().T
    return (root + root.conj().T) / 2


def product_sqrt_spectrum(rho, rho_tilde):
    """Square roots of the eigenvalues of ``rho @ rho_tilde``, descending.

    Both inputs must be PSD. The product is similar to the Hermitian
    matrix ``sqrt(rho) rho_tilde sqrt(rho) = B B^dagger`` with
    ``B = sqrt(rho) sqrt(rho_tilde)``, so the requested square roots are
    the singular values of ``B``. Taking them directly avoids square roots
    of eigenvalue roundoff, which would otherwise be of order 1e-8.
    """
    b = psd_sqrt(rho) @ psd_sqrt(rho_tilde)
    return np.linalg.svd(b, compute_uv=False)
