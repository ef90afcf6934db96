"""Conditional density matrices for finite-dimensional quantum systems."""

from .composite import SubsystemSelector, embed_operator, partial_trace, tensor_state
from .conditional import (
    ConditionalOutcome,
    Effect,
    EffectFamily,
    condition,
    consistency_check,
    decompose_reduced,
)
from .errors import (
    ConvergenceError,
    DimensionError,
    IncompleteFamilyError,
    InvalidEffectError,
    InvalidStateError,
    NotHermitianError,
    QcdmError,
    ZeroProbabilityError,
)
from .scenarios import SwapReport, bell_state, entanglement_swap
from .state import (
    DensityMatrix,
    Observable,
    PureKet,
    SpectralForm,
    density_from_ket,
    dispersion,
    expectation,
    probability_rule,
    purity,
    spectral_decompose,
    validate,
)

__version__ = "0.1.0"
