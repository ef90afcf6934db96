"""
Conditional density matrices.

Selecting part of a composite system by an effect ``E`` (a projector or a
general POVM element) leaves the rest of the system in the state

    rho_c = Tr_sel(E_full rho) / Tr(E_full rho)

and the reduced state of the rest is the probability-weighted mixture of the
conditional states over any complete family of effects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .composite import SubsystemSelector, embed_operator, partial_trace_matrix
from .errors import (
    DimensionError,
    IncompleteFamilyError,
    InvalidEffectError,
    NotHermitianError,
    ZeroProbabilityError,
)
from .linalg import ComplexMatrix
from .state import TOL, DensityMatrix, Observable, expectation, validate

#: Selections less likely than this have no conditional state.
P_MIN = 1e-12


@dataclass(frozen=True, eq=False)
class Effect:
    mat: ComplexMatrix
    label: str = ""

    def __init__(self, mat, label: str = "", tol: float = TOL):
        m = linalg.as_matrix(mat)
        herm = linalg.hermiticity_residual(m)
        if herm > tol:
            raise NotHermitianError(herm, tol)
        lowest = float(linalg.hermitian_eigendecompose(m, tol=math.inf).values[0])
        if lowest < -tol:
            raise InvalidEffectError(f"effect {label!r} is not positive: min eigenvalue {lowest:.6g}")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)
        object.__setattr__(self, "label", label)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def scaled(self, c: float) -> Effect:
        return Effect(c * self.mat, self.label)


@dataclass(frozen=True, eq=False)
class EffectFamily:
    effects: tuple[Effect, ...]
    subsystem_dim: int

    def __init__(self, effects, tol: float = TOL):
        effects = tuple(e if isinstance(e, Effect) else Effect(e, tol=tol) for e in effects)
        if not effects:
            raise ValueError("an effect family needs at least one effect")
        dim = effects[0].dim
        if any(e.dim != dim for e in effects):
            raise DimensionError("effects in a family must share one dimension")
        residual = linalg.frobenius_distance(sum(e.mat for e in effects), linalg.identity(dim))
        if residual > tol:
            raise IncompleteFamilyError(residual, tol)
        object.__setattr__(self, "effects", effects)
        object.__setattr__(self, "subsystem_dim", dim)

    def __iter__(self):
        return iter(self.effects)

    def __len__(self):
        return len(self.effects)


@dataclass(frozen=True, eq=False)
class ConditionalOutcome:
    """Selection probability and the conditional state of the complement.

    ``state`` is ``None`` for a branch whose probability fell below ``P_MIN``
    inside :func:`decompose_reduced`. ``antihermitian_residual`` is the
    Frobenius norm of the anti-Hermitian part removed from the normalized
    partial trace.
    """

    probability: float
    state: DensityMatrix | None
    label: str = ""
    antihermitian_residual: float = field(default=0.0, repr=False)


def _selection(rho, effect, on):
    on = on if isinstance(on, SubsystemSelector) else SubsystemSelector(on)
    n = len(rho.dims)
    on.check(n)
    if not on.indices or len(on) == n:
        raise DimensionError("the selected factors must be a non-empty proper subset")
    rest = on.complement(n)
    weighted = embed_operator(effect.mat, on, rho.dims) @ rho.mat
    return on, rest, weighted


def _probability(weighted, tol):
    tr = linalg.trace(weighted)
    if abs(tr.imag) > tol:
        raise NotHermitianError(abs(tr.imag), tol)
    return tr.real


def _conditional_state(weighted, p, rho, rest, tol):
    reduced = partial_trace_matrix(weighted, rho.dims, rest) / p
    hermitian = 0.5 * (reduced + reduced.conj().T)
    residual = linalg.frobenius_norm(reduced - hermitian)
    if residual > tol:
        raise NotHermitianError(residual, tol)
    state = validate(hermitian, tuple(rho.dims[i] for i in rest), tol)
    return state, residual


def condition(
    rho: DensityMatrix,
    effect: Effect,
    on,
    tol: float = TOL,
    p_min: float = P_MIN,
) -> ConditionalOutcome:
    """
    State of the unselected factors given that ``on`` is selected by ``effect``.

    Raises
    ------
    ZeroProbabilityError
        If ``Tr(E rho) < p_min``; the quotient is undefined there.
    DimensionError
        If the effect does not match the selected factors, or ``on`` is empty
        or covers every factor.
    """
    _, rest, weighted = _selection(rho, effect, on)
    p = _probability(weighted, tol)
    if p < p_min:
        raise ZeroProbabilityError(p, p_min)
    state, residual = _conditional_state(weighted, p, rho, rest, tol)
    return ConditionalOutcome(min(p, 1.0), state, effect.label, residual)


def decompose_reduced(
    rho: DensityMatrix,
    family: EffectFamily,
    on,
    tol: float = TOL,
    p_min: float = P_MIN,
) -> list[ConditionalOutcome]:
    """One outcome per effect, in family order; negligible branches carry ``state=None``."""
    outcomes = []
    for effect in family:
        _, rest, weighted = _selection(rho, effect, on)
        p = _probability(weighted, tol)
        if p < p_min:
            outcomes.append(ConditionalOutcome(0.0, None, effect.label))
            continue
        state, residual = _conditional_state(weighted, p, rho, rest, tol)
        outcomes.append(ConditionalOutcome(min(p, 1.0), state, effect.label, residual))
    total = sum(o.probability for o in outcomes)
    if abs(total - 1.0) > tol:
        raise IncompleteFamilyError(abs(total - 1.0), tol)
    return outcomes


def mixture(outcomes) -> ComplexMatrix:
    """``sum_n p_n rho_n`` over the branches that have a state."""
    terms = [o.probability * o.state.mat for o in outcomes if o.state is not None]
    return np.sum(terms, axis=0)


def consistency_check(
    rho: DensityMatrix,
    a: Observable,
    effect: Effect,
    on,
    tol: float = TOL,
    p_min: float = P_MIN,
) -> tuple[float, float]:
    """
    Compare ``Tr((A x E) rho)`` with ``p * Tr(A rho_c)``.

    ``a`` acts on the unselected factors, ``effect`` on ``on``. The two
    numbers agree for any state; nothing depends on which selection is
    thought of as happening first.
    """
    on_sel, rest, _ = _selection(rho, effect, on)
    joint = embed_operator(a.mat, rest, rho.dims) @ embed_operator(effect.mat, on_sel, rho.dims)
    lhs = _probability(joint @ rho.mat, tol)
    outcome = condition(rho, effect, on_sel, tol, p_min)
    rhs = outcome.probability * expectation(a, outcome.state, tol)
    return lhs, rhs
