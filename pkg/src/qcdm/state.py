"""
Quantum states and observables.

A :class:`DensityMatrix` is only ever produced by :func:`validate` (or by an
operation that calls it), so holding one means the three state conditions
were checked: Hermitian, unit trace, positive semidefinite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import numpy.typing as npt

from . import linalg
from .errors import (
    DimensionError,
    IncompleteFamilyError,
    InvalidStateError,
    NotHermitianError,
)
from .linalg import ComplexMatrix

#: Default tolerance for every state-level check.
TOL = 1e-9
#: Absolute eigenvalue gap below which eigenvalues share one projector.
CLUSTER_TOL = 1e-9


def _normalize_dims(dims, dim):
    if dims is None:
        dims = (dim,)
    dims = tuple(int(d) for d in dims)
    if not dims or any(d < 1 for d in dims):
        raise DimensionError(f"factor dimensions must be positive integers, got {dims}")
    if math.prod(dims) != dim:
        raise DimensionError(
            f"dims {list(dims)} have product {math.prod(dims)} but matrix is {dim}x{dim}"
        )
    return dims


def _readonly(a):
    a = np.array(a, dtype=np.complex128)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Violation:
    """One failed state condition together with the measured quantity."""

    condition: str  # "hermitian", "trace" or "positive"
    value: float
    residual: float

    def __str__(self):
        if self.condition == "hermitian":
            return f"not Hermitian: ||rho - rho^+||_F = {self.residual:.3g}"
        if self.condition == "trace":
            return f"trace = {self.value:.12g} (|Tr - 1| = {self.residual:.3g})"
        return f"min eigenvalue = {self.value:.12g}"


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    mat: ComplexMatrix
    dims: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.mat, dtype=dtype)


@dataclass(frozen=True, eq=False)
class PureKet:
    amplitudes: npt.NDArray[np.complex128]
    dims: tuple[int, ...]

    def __init__(self, amplitudes, dims=None, tol: float = TOL):
        amps = np.array(amplitudes, dtype=np.complex128).ravel()
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes contain NaN or infinite entries")
        norm2 = float(np.sum(np.abs(amps) ** 2))
        if abs(norm2 - 1.0) > tol:
            raise ValueError(f"ket is not normalized: <psi|psi> = {norm2:.12g}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "dims", _normalize_dims(dims, amps.size))

    def projector(self) -> ComplexMatrix:
        return np.outer(self.amplitudes, self.amplitudes.conj())


@dataclass(frozen=True, eq=False)
class Observable:
    mat: ComplexMatrix

    def __init__(self, mat, tol: float | None = None):
        m = linalg.as_matrix(mat)
        if tol is None:
            tol = linalg.hermitian_tol(m)
        residual = linalg.hermiticity_residual(m)
        if residual > tol:
            raise NotHermitianError(residual, tol)
        object.__setattr__(self, "mat", _readonly(m))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]


@dataclass(frozen=True, eq=False)
class SpectralForm:
    eigenvalues: tuple[float, ...]
    projectors: tuple[ComplexMatrix, ...] = field(repr=False)

    def reconstruct(self) -> ComplexMatrix:
        return sum(f * p for f, p in zip(self.eigenvalues, self.projectors))

    def check(self, tol: float = TOL) -> None:
        """Raise if the projectors are not an orthogonal resolution of identity."""
        dim = self.projectors[0].shape[0]
        for i, p in enumerate(self.projectors):
            if linalg.hermiticity_residual(p) > tol:
                raise ValueError(f"projector {i} is not Hermitian")
            if linalg.frobenius_distance(p @ p, p) > tol:
                raise ValueError(f"projector {i} is not idempotent")
            for j in range(i + 1, len(self.projectors)):
                if linalg.frobenius_norm(p @ self.projectors[j]) > tol:
                    raise ValueError(f"projectors {i} and {j} are not orthogonal")
        residual = linalg.frobenius_distance(sum(self.projectors), linalg.identity(dim))
        if residual > tol:
            raise IncompleteFamilyError(residual, tol)


def check_state(mat, tol: float = TOL) -> list[Violation]:
    """Return every violated density-matrix condition (empty when valid)."""
    m = linalg.as_matrix(mat)
    violations = []
    herm = linalg.hermiticity_residual(m)
    if herm > tol:
        violations.append(Violation("hermitian", herm, herm))
    tr = linalg.trace(m)
    if abs(tr - 1.0) > tol:
        violations.append(Violation("trace", tr.real, abs(tr - 1.0)))
    # positivity is judged on the Hermitian part so it is reported even when
    # hermiticity also fails
    h = 0.5 * (m + m.conj().T)
    lowest = float(linalg.hermitian_eigendecompose(h, tol=math.inf).values[0])
    if lowest < -tol:
        violations.append(Violation("positive", lowest, -lowest))
    return violations


def validate(mat, dims=None, tol: float = TOL) -> DensityMatrix:
    """
    Check the three density-matrix conditions and wrap the result.

    Raises :class:`InvalidStateError` listing all violated conditions, or
    :class:`DimensionError` if ``dims`` does not factor the matrix dimension.
    """
    m = linalg.as_matrix(mat)
    dims = _normalize_dims(dims, m.shape[0])
    violations = check_state(m, tol)
    if violations:
        raise InvalidStateError(violations)
    return DensityMatrix(_readonly(m), dims)


def density_from_ket(psi: PureKet, tol: float = TOL) -> DensityMatrix:
    return validate(psi.projector(), psi.dims, tol)


def maximally_mixed(dims) -> DensityMatrix:
    dims = tuple(dims)
    d = math.prod(dims)
    return validate(linalg.identity(d) / d, dims)


def _real_trace(x, tol):
    tr = linalg.trace(x)
    if abs(tr.imag) > tol:
        raise NotHermitianError(abs(tr.imag), tol)
    return tr.real


def _check_dims(f, rho):
    if f.dim != rho.dim:
        raise DimensionError(f"observable is {f.dim}x{f.dim} but state is {rho.dim}x{rho.dim}")


def expectation(f: Observable, rho: DensityMatrix, tol: float = TOL) -> float:
    """Average value ``Tr(F rho)``; a non-negligible imaginary part is an error."""
    _check_dims(f, rho)
    return _real_trace(f.mat @ rho.mat, tol)


def dispersion(f: Observable, rho: DensityMatrix, tol: float = TOL) -> float:
    _check_dims(f, rho)
    mean = expectation(f, rho, tol)
    q = f.mat - mean * linalg.identity(f.dim)
    d = _real_trace(q @ q @ rho.mat, tol)
    if -tol <= d < 0:
        d = 0.0
    return d


def spectral_decompose(f: Observable, cluster_tol: float = CLUSTER_TOL) -> SpectralForm:
    """
    Group the spectrum of ``f`` into distinct eigenvalues with projectors.

    Neighbouring sorted eigenvalues closer than ``cluster_tol`` fall in the
    same cluster (single linkage); the reported eigenvalue of a cluster is its
    mean.
    """
    eig = linalg.hermitian_eigendecompose(f.mat)
    clusters: list[list[int]] = []
    for k, value in enumerate(eig.values):
        if clusters and value - eig.values[clusters[-1][-1]] <= cluster_tol:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    values, projectors = [], []
    for idx in clusters:
        v = eig.vectors[:, idx]
        values.append(float(np.mean(eig.values[idx])))
        projectors.append(_readonly(v @ v.conj().T))
    return SpectralForm(tuple(values), tuple(projectors))


def purity(rho: DensityMatrix, tol: float = TOL) -> tuple[bool, float]:
    residual = linalg.frobenius_distance(rho.mat @ rho.mat, rho.mat)
    return residual <= tol, residual


def probability_rule(rho: DensityMatrix, family: SpectralForm, tol: float = TOL) -> list[float]:
    """Outcome probabilities ``Tr(rho P_n)`` for a complete projector family."""
    if family.projectors[0].shape[0] != rho.dim:
        raise DimensionError("projector family and state have different dimensions")
    residual = linalg.frobenius_distance(sum(family.projectors), linalg.identity(rho.dim))
    if residual > tol:
        raise IncompleteFamilyError(residual, tol)
    probs = []
    for p in family.projectors:
        value = _real_trace(rho.mat @ p, tol)
        if value < -tol or value > 1 + tol:
            raise ValueError(f"probability {value:.12g} outside [0, 1]")
        probs.append(min(max(value, 0.0), 1.0))
    return probs
