"""Dense complex linear algebra for small tensor-product spaces.

All functions operate on plain numpy arrays of complex dtype and are pure
functions of their inputs, so values can be shared freely across threads
or worker processes.
"""

from __future__ import annotations

from math import prod
from typing import Iterable, NamedTuple

import numpy as np

HERMITICITY_ATOL = 1e-12
PSD_EIGENVALUE_FLOOR = -1e-10


class SpectralDecomposition(NamedTuple):
    """Eigendecomposition of a Hermitian matrix with eigenvalues descending."""

    eigenvalues: np.ndarray   # real, shape (d,), sorted descending
    eigenvectors: np.ndarray  # complex, shape (d, d); column k pairs with eigenvalues[k]

    def reconstruct(self) -> np.ndarray:
        """Return ``V diag(w) V^dagger``."""
        v = self.eigenvectors
        return (v * self.eigenvalues) @ v.conj().T


def as_matrix(m) -> np.ndarray:
    """Coerce input to a square complex matrix."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def hermiticity_defect(m) -> float:
    """Largest absolute deviation of ``m`` from its conjugate transpose."""
    a = as_matrix(m)
    return float(np.abs(a - a.conj().T).max())


def kron(a, b) -> np.ndarray:
    """Kronecker product with the left factor most significant."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, dims: Iterable[int], keep: Iterable[int]) -> np.ndarray:
    """Trace out all tensor factors of ``m`` not listed in ``keep``.

    ``dims`` gives the dimension of each factor in row-major Kronecker
    order; ``keep`` is a non-empty proper subset of factor indices.  The
    kept factors retain their relative order.
    """
    a = as_matrix(m)
    dims = tuple(int(d) for d in dims)
    if any(d <= 0 for d in dims):
        raise ValueError(f"factor dimensions must be positive, got {dims}")
    total = prod(dims)
    if a.shape != (total, total):
        raise ValueError(f"shape {a.shape} does not match factors {dims}")
    n = len(dims)
    keep = tuple(sorted(set(int(k) for k in keep)))
    if not keep or len(keep) >= n or keep[0] < 0 or keep[-1] >= n:
        raise ValueError(f"keep={keep} must be a non-empty proper subset of factors 0..{n - 1}")

    t = a.reshape(dims + dims)
    row_axes = list(range(n))
    col_axes = [n + i if i in keep else i for i in range(n)]
    out_axes = [i for i in keep] + [n + i for i in keep]
    reduced = np.einsum(t, row_axes + col_axes, out_axes)
    d_keep = prod(dims[i] for i in keep)
    return reduced.reshape(d_keep, d_keep)


def hermitian_eig(m) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending."""
    a = as_matrix(m)
    defect = hermiticity_defect(a)
    if defect > HERMITICITY_ATOL:
        raise ValueError(f"matrix is not Hermitian (defect {defect:.3e} > {HERMITICITY_ATOL})")
    w, v = np.linalg.eigh(a)
    return SpectralDecomposition(w[::-1].copy(), v[:, ::-1].copy())


def psd_sqrt(m) -> np.ndarray:
    """Hermitian square root of a positive semidefinite matrix.

    Eigenvalues in ``[PSD_EIGENVALUE_FLOOR, 0)`` are clamped to zero as
    floating-point noise; anything below the floor raises.
    """
    w, v = hermitian_eig(m)
    lowest = float(w.min())
    if lowest < PSD_EIGENVALUE_FLOOR:
        raise ValueError(
            f"matrix is not positive semidefinite (eigenvalue {lowest:.3e} "
            f"below {PSD_EIGENVALUE_FLOOR})"
        )
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return (root + root.conj().T) / 2
