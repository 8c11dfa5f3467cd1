"""Exception types raised across the package."""


class ConstantFunction(ValueError):
    """The quotient is 0/0 on constant functions."""


class BadParameter(ValueError):
    pass


class BadBlockSize(BadParameter):
    pass


class DomainError(ValueError):
    pass


class TooLarge(ValueError):
    """Exhaustive search would exceed the configured point budget."""


class NonConvergence(RuntimeError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class SharpnessViolation(AssertionError):
    """Numerical supremum disagrees with the closed form.

    Since the closed forms are theorems, this signals a bug in the
    search or in the formula code, not a mathematical counterexample.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
