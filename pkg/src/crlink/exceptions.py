"""Exception types shared across the numeric modules."""


class ConvergenceError(ArithmeticError):
    """A series, continued fraction or adaptive scheme failed to converge
    within its term/panel budget. The message carries diagnostics."""


class NoSolutionError(ArithmeticError):
    """A constraint equation has no root in the admissible range.
    The message carries the limiting value of the constraint integral."""
