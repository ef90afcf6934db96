"""Exception hierarchy shared by every module."""


class QcdmError(Exception):
    """Base class for all domain errors raised by qcdm."""


class DimensionError(QcdmError, ValueError):
    """Operand shapes or factor dimensions do not agree."""


class NotHermitianError(QcdmError, ValueError):
    def __init__(self, residual, tol):
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"matrix is not Hermitian: ||A - A^+||_F = {residual:.3e} > {tol:.3e}"
        )


class ConvergenceError(QcdmError, ArithmeticError):
    def __init__(self, sweeps, off_norm):
        self.sweeps = sweeps
        self.off_norm = off_norm
        super().__init__(
            f"Jacobi eigensolver did not converge in {sweeps} sweeps "
            f"(off-diagonal norm {off_norm:.3e})"
        )


class InvalidStateError(QcdmError, ValueError):
    """A candidate density matrix violates one or more state conditions.

    ``violations`` holds every failed condition, not only the first one.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("invalid state: " + "; ".join(str(v) for v in self.violations))


class ZeroProbabilityError(QcdmError, ArithmeticError):
    def __init__(self, probability, p_min):
        self.probability = probability
        self.p_min = p_min
        super().__init__(
            f"selection probability {probability:.3e} is below p_min = {p_min:.0e}; "
            "conditional state is undefined"
        )


class IncompleteFamilyError(QcdmError, ValueError):
    def __init__(self, residual, tol):
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"family does not sum to identity: ||sum - I||_F = {residual:.3e} > {tol:.3e}"
        )


class InvalidEffectError(QcdmError, ValueError):
    pass
