"""Exception types shared across the package.

Two failure families matter to callers: bad inputs (rejected before any
numerics run) and solvers that fail to converge or land in an inconsistent
state. The CLI maps them to exit codes 2 and 3 respectively.
"""


class InputError(ValueError):
    """Raised when arguments violate a documented precondition."""


class ConvergenceError(RuntimeError):
    """Raised when an iterative solver fails to converge or its result
    fails a required consistency check."""
