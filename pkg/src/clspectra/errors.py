"""Exception types raised when an input violates a documented contract."""


class ContractError(ValueError):
    """Base class for inputs that violate a precondition."""


class A1Violation(ContractError):
    """Some edge probability rho * w_i * w_j reaches 1."""


class DenseCapExceeded(ContractError):
    """A dense n x n operation was requested above the configured size cap."""


class DivergentMomentError(ContractError, ArithmeticError):
    """Power-law moment requested at the pole k = beta - 1."""
