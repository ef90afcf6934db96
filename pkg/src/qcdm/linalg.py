"""
Dense complex linear algebra.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` with shape
``(dim, dim)``, stored row-major. Composite indices follow one global
convention: for ``kron(a, b)`` the row index is ``m = r * b.dim + u``, so the
first tensor factor is the most significant digit.

The Hermitian eigensolver is a cyclic Jacobi method written for complex
matrices; it has no LAPACK dependency.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np
import numpy.typing as npt

from .errors import ConvergenceError, DimensionError, NotHermitianError

ComplexMatrix = npt.NDArray[np.complex128]

#: Jacobi stops once the off-diagonal Frobenius norm drops below this
#: fraction of the input norm.
JACOBI_OFF_TOL = 1e-13
JACOBI_MAX_SWEEPS = 100
#: Relative tolerance for accepting a matrix as Hermitian.
HERMITIAN_RTOL = 1e-9
# pivots below this are skipped; dividing by them overflows
_TINY = 1e-280


def as_matrix(a) -> ComplexMatrix:
    """Coerce ``a`` to a square, finite complex128 array (copying it)."""
    m = np.array(a, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or infinite entries")
    return m


def identity(dim: int) -> ComplexMatrix:
    return np.eye(dim, dtype=np.complex128)


def _check_same_dim(a, b):
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def matmul(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    _check_same_dim(a, b)
    return a @ b


def adjoint(a: ComplexMatrix) -> ComplexMatrix:
    return a.conj().T.copy()


def trace(a: ComplexMatrix) -> complex:
    return complex(np.trace(a))


def kron(a: ComplexMatrix, b: ComplexMatrix) -> ComplexMatrix:
    """Kronecker product, block ``(r, s)`` of the result equal to ``a[r, s] * b``."""
    da, db = a.shape[0], b.shape[0]
    out = np.empty((da * db, da * db), dtype=np.complex128)
    for r in range(da):
        for s in range(da):
            out[r * db:(r + 1) * db, s * db:(s + 1) * db] = a[r, s] * b
    return out


def kron_all(*mats: ComplexMatrix) -> ComplexMatrix:
    return reduce(kron, mats)


def frobenius_norm(a: ComplexMatrix) -> float:
    return float(np.sqrt(np.sum(np.abs(a) ** 2)))


def frobenius_distance(a: ComplexMatrix, b: ComplexMatrix) -> float:
    _check_same_dim(a, b)
    return frobenius_norm(a - b)


def hermiticity_residual(a: ComplexMatrix) -> float:
    return frobenius_norm(a - a.conj().T)


def hermitian_tol(a: ComplexMatrix) -> float:
    return HERMITIAN_RTOL * max(1.0, frobenius_norm(a))


def is_hermitian(a: ComplexMatrix, tol: float | None = None) -> bool:
    if tol is None:
        tol = hermitian_tol(a)
    return hermiticity_residual(a) <= tol


@dataclass(frozen=True)
class EigenDecomposition:
    """Ascending real eigenvalues and the matching orthonormal eigenvector columns."""

    values: npt.NDArray[np.float64]
    vectors: ComplexMatrix
    sweeps: int = 0

    def reconstruct(self) -> ComplexMatrix:
        v = self.vectors
        return (v * self.values) @ v.conj().T


def _off_norm(a):
    off = a - np.diag(np.diag(a))
    return frobenius_norm(off)


def hermitian_eigendecompose(
    a: ComplexMatrix,
    tol: float | None = None,
    max_sweeps: int = JACOBI_MAX_SWEEPS,
) -> EigenDecomposition:
    """
    Diagonalize a Hermitian matrix with cyclic complex Jacobi rotations.

    Each rotation first removes the phase of the pivot ``a[p, q]`` and then
    applies a real plane rotation that annihilates it. Sweeps continue until
    the off-diagonal Frobenius norm is at most ``1e-13 * ||a||_F``.

    Parameters
    ----------
    a : ComplexMatrix
        Hermitian input; it is not modified.
    tol : float, optional
        Hermiticity acceptance tolerance. Defaults to ``1e-9 * max(1, ||a||_F)``.
    max_sweeps : int
        Sweep budget before :class:`ConvergenceError` is raised.

    Returns
    -------
    EigenDecomposition
        Eigenvalues in ascending order. Degenerate eigenvalues are listed
        separately.
    """
    a = as_matrix(a)
    if tol is None:
        tol = hermitian_tol(a)
    residual = hermiticity_residual(a)
    if residual > tol:
        raise NotHermitianError(residual, tol)

    n = a.shape[0]
    work = 0.5 * (a + a.conj().T)
    vecs = identity(n)
    threshold = JACOBI_OFF_TOL * frobenius_norm(a)

    sweeps = 0
    off = _off_norm(work)
    while off > threshold:
        if sweeps >= max_sweeps:
            raise ConvergenceError(sweeps, off)
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = work[p, q]
                mag = abs(apq)
                if mag < _TINY:
                    continue
                phase = apq / mag
                app = work[p, p].real
                aqq = work[q, q].real
                tau = (aqq - app) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.hypot(1.0, tau))
                c = 1.0 / np.hypot(1.0, t)
                s = t * c
                # J restricted to (p, q): [[c, s], [-s*conj(phase), c*conj(phase)]]
                jpp, jpq = c, s
                jqp, jqq = -s * phase.conjugate(), c * phase.conjugate()

                col_p = work[:, p].copy()
                col_q = work[:, q]
                work[:, p] = col_p * jpp + col_q * jqp
                work[:, q] = col_p * jpq + col_q * jqq
                row_p = work[p, :].copy()
                row_q = work[q, :]
                work[p, :] = row_p * jpp + row_q * np.conj(jqp)
                work[q, :] = row_p * jpq + row_q * np.conj(jqq)
                work[p, q] = work[q, p] = 0.0
                work[p, p] = work[p, p].real
                work[q, q] = work[q, q].real

                v_p = vecs[:, p].copy()
                v_q = vecs[:, q]
                vecs[:, p] = v_p * jpp + v_q * jqp
                vecs[:, q] = v_p * jpq + v_q * jqq
        off = _off_norm(work)

    values = np.diag(work).real.copy()
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], vecs[:, order].copy(), sweeps)
