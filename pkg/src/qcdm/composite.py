"""
Composite systems: tensor products, operator embedding and partial trace.

Both :func:`embed_operator` and :func:`partial_trace` work with explicit
composite indices. A full-space index ``m`` is split into one digit per
tensor factor (first factor most significant), the digits are regrouped into
a selected part and a complementary part, and the sums run over those parts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import DimensionError
from .linalg import ComplexMatrix
from .state import TOL, DensityMatrix, validate


@dataclass(frozen=True)
class SubsystemSelector:
    """Strictly increasing 0-based factor indices."""

    indices: tuple[int, ...]

    def __init__(self, indices):
        if isinstance(indices, int):
            indices = (indices,)
        idx = tuple(int(i) for i in indices)
        if any(i < 0 for i in idx):
            raise DimensionError(f"negative factor index in {list(idx)}")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise DimensionError(f"factor indices must be strictly increasing, got {list(idx)}")
        object.__setattr__(self, "indices", idx)

    def __iter__(self):
        return iter(self.indices)

    def __len__(self):
        return len(self.indices)

    def check(self, n_factors: int) -> None:
        if self.indices and self.indices[-1] >= n_factors:
            raise DimensionError(
                f"factor index {self.indices[-1]} out of range for {n_factors} factors"
            )

    def complement(self, n_factors: int) -> SubsystemSelector:
        self.check(n_factors)
        return SubsystemSelector(i for i in range(n_factors) if i not in self.indices)


def _selector(on) -> SubsystemSelector:
    return on if isinstance(on, SubsystemSelector) else SubsystemSelector(on)


def _digits(index, dims):
    out = []
    for d in reversed(dims):
        index, r = divmod(index, d)
        out.append(r)
    return out[::-1]


def _compose(digits, dims):
    index = 0
    for r, d in zip(digits, dims):
        index = index * d + r
    return index


def _split_table(dims, keep):
    """
    Full-space index for every (kept index, traced index) pair.

    Returns an integer array ``table`` of shape ``(d_keep, d_rest)`` with
    ``table[a, t]`` the composite index whose kept digits spell ``a`` and
    whose remaining digits spell ``t``, both in ascending factor order.
    """
    rest = [i for i in range(len(dims)) if i not in keep]
    keep_dims = [dims[i] for i in keep]
    rest_dims = [dims[i] for i in rest]
    d_keep, d_rest = math.prod(keep_dims), math.prod(rest_dims)
    table = np.empty((d_keep, d_rest), dtype=np.intp)
    digits = [0] * len(dims)
    for a in range(d_keep):
        for pos, r in zip(keep, _digits(a, keep_dims)):
            digits[pos] = r
        for t in range(d_rest):
            for pos, r in zip(rest, _digits(t, rest_dims)):
                digits[pos] = r
            table[a, t] = _compose(digits, dims)
    return table


def tensor_state(a: DensityMatrix, b: DensityMatrix, tol: float = TOL) -> DensityMatrix:
    return validate(linalg.kron(a.mat, b.mat), a.dims + b.dims, tol)


def embed_operator(op: ComplexMatrix, on, dims) -> ComplexMatrix:
    """
    Extend ``op`` acting on the selected factors by identity on the rest.

    The selected factors are taken in ascending order, so ``op`` must be
    written in the composite basis of those factors in that order.
    """
    on = _selector(on)
    dims = tuple(dims)
    on.check(len(dims))
    op = linalg.as_matrix(op)
    d_sel = math.prod(dims[i] for i in on)
    if op.shape[0] != d_sel:
        raise DimensionError(
            f"operator is {op.shape[0]}x{op.shape[0]} but selected factors span dimension {d_sel}"
        )
    table = _split_table(dims, on.indices)
    full = math.prod(dims)
    out = np.zeros((full, full), dtype=np.complex128)
    # out[(a, t), (b, t)] = op[a, b] for every complementary index t
    for t in range(table.shape[1]):
        rows = table[:, t]
        out[np.ix_(rows, rows)] = op
    return out


def partial_trace_matrix(mat: ComplexMatrix, dims, keep) -> ComplexMatrix:
    """Partial trace of an arbitrary operator, keeping the factors in ``keep``."""
    keep = _selector(keep)
    dims = tuple(dims)
    keep.check(len(dims))
    if not keep.indices:
        raise DimensionError("keep-set is empty; the partial trace would be a scalar")
    if mat.shape[0] != math.prod(dims):
        raise DimensionError(f"matrix dimension {mat.shape[0]} does not match dims {list(dims)}")
    table = _split_table(dims, keep.indices)
    d_keep, d_rest = table.shape
    out = np.zeros((d_keep, d_keep), dtype=np.complex128)
    for t in range(d_rest):
        idx = table[:, t]
        out += mat[np.ix_(idx, idx)]
    return out


def partial_trace(rho: DensityMatrix, keep, tol: float = TOL) -> DensityMatrix:
    """
    Reduced density matrix over the factors in ``keep``.

    Kept factors stay in their original relative order. An empty keep-set is
    rejected.
    """
    keep = _selector(keep)
    reduced = partial_trace_matrix(rho.mat, rho.dims, keep)
    return validate(reduced, tuple(rho.dims[i] for i in keep), tol)
