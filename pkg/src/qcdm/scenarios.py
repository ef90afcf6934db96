"""Bell states and the four-photon entanglement-swapping calculation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .composite import partial_trace, tensor_state
from .conditional import Effect, EffectFamily, condition
from .errors import QcdmError
from .state import TOL, DensityMatrix, PureKet, density_from_ket

_H = 1 / math.sqrt(2)

# basis |0> = (1, 0), |1> = (0, 1); amplitudes over |00>, |01>, |10>, |11>
_BELL = {
    "psi_minus": (0, _H, -_H, 0),
    "psi_plus": (0, _H, _H, 0),
    "phi_minus": (_H, 0, 0, -_H),
    "phi_plus": (_H, 0, 0, _H),
}
BELL_KINDS = tuple(_BELL)


def bell_state(kind: str) -> PureKet:
    try:
        amps = _BELL[kind]
    except KeyError:
        raise ValueError(f"unknown Bell state {kind!r}; expected one of {BELL_KINDS}") from None
    return PureKet(amps, (2, 2))


def bell_family() -> EffectFamily:
    return EffectFamily(Effect(bell_state(k).projector(), k) for k in BELL_KINDS)


def singlet_pair_state() -> DensityMatrix:
    """Two independent singlets on photons (1, 2) and (3, 4), dims [2, 2, 2, 2]."""
    singlet = density_from_ket(bell_state("psi_minus"))
    return tensor_state(singlet, singlet)


def fidelity(target: PureKet, rho: DensityMatrix, tol: float = TOL) -> float:
    """Overlap ``Tr(|t><t| rho)`` with a pure target, clamped to [0, 1]."""
    value = linalg.trace(target.projector() @ rho.mat).real
    if value < -tol or value > 1 + tol:
        raise ValueError(f"fidelity {value:.12g} outside [0, 1]")
    return min(max(value, 0.0), 1.0)


@dataclass(frozen=True, eq=False)
class SwapReport:
    reduced_14: DensityMatrix
    selection_probability: float
    conditional_14: DensityMatrix
    fidelity_with_singlet: float


class SwapContractError(QcdmError, AssertionError):
    pass


def entanglement_swap(tol: float = TOL, select: str = "psi_minus") -> SwapReport:
    """
    Reduce two singlet pairs to the outer photons, then condition them on the
    inner pair being found in the Bell state ``select``.

    With the default selection the outer pair is maximally mixed before
    selection and a singlet after it, with selection probability 1/4; any
    deviation beyond ``tol`` raises :class:`SwapContractError`.
    """
    rho = singlet_pair_state()
    reduced = partial_trace(rho, (0, 3), tol)
    outcome = condition(rho, Effect(bell_state(select).projector(), select), (1, 2), tol)
    report = SwapReport(
        reduced_14=reduced,
        selection_probability=outcome.probability,
        conditional_14=outcome.state,
        fidelity_with_singlet=fidelity(bell_state("psi_minus"), outcome.state, tol),
    )
    if select == "psi_minus":
        _check_swap_contract(report, tol)
    return report


def _check_swap_contract(report, tol):
    mixed = linalg.frobenius_distance(report.reduced_14.mat, np.eye(4) / 4)
    if mixed > tol:
        raise SwapContractError(f"reduced state deviates from I/4 by {mixed:.3e}")
    if abs(report.selection_probability - 0.25) > tol:
        raise SwapContractError(f"selection probability {report.selection_probability!r} != 1/4")
    if report.fidelity_with_singlet < 1 - tol:
        raise SwapContractError(f"singlet fidelity {report.fidelity_with_singlet!r} < 1")
