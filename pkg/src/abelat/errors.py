class AbelatError(Exception):
    """Base class of every error raised by abelat."""


class GroupSpecError(AbelatError, ValueError):
    def __init__(self, spec: str, token: str, reason: str = "malformed term"):
        self.spec = spec
        self.token = token
        super().__init__(f"Invalid group spec {spec!r}: {reason} at token {token!r}.")


class GroupMismatchError(AbelatError, ValueError):
    def __init__(self, left, right):
        super().__init__(f"Operands belong to different groups: {left} and {right}.")


class DomainError(AbelatError, ValueError):
    """Raised when an operation is called outside of its domain of definition."""


class NoMinimalBasisError(AbelatError):
    """Raised for groups whose lattice has no basis of minimal vectors (the cyclic group of order 4)."""


class NotEutacticError(AbelatError):
    """Raised for groups whose lattice is not eutactic (the cyclic group of order 4)."""


class VerificationError(AbelatError):
    def __init__(self, check: str, message: str = ""):
        self.check = check
        _msg = f"{check} violated"
        if message:
            _msg += f": {message}"
        super().__init__(_msg)


class ConsistencyError(AbelatError, AssertionError):
    """Raised when an identity that must hold exactly fails. Seeing this means a bug."""
