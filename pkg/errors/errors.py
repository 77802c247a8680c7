from typing import Any


class ErrEntityNotFound(Exception):
    def __init__(self, message: str):
        super().__init__(message)


class ErrBadRequest(Exception):
    def __init__(self, message: str):
        super().__init__(message)


class ErrInvalidFamily(Exception):
    def __init__(self, message: str):
        super().__init__(message)


class ErrResourceGuard(Exception):
    def __init__(self, message: str):
        super().__init__(message)


class ErrNotSubgroup(Exception):
    def __init__(self, message: str):
        super().__init__(message)


class ErrSubgroupNotFound(Exception):
    def __init__(self, message: str):
        super().__init__(message)


class ErrGeneration(Exception):
    def __init__(self, message: str, achieved_order: int):
        super().__init__(message)
        self.achieved_order = achieved_order


class ErrFormat(Exception):
    def __init__(self, message: str, line_number: int | None = None):
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)
        self.line_number = line_number


class ErrVerification(Exception):
    """A design axiom or automorphism check failed; `witness` pins the spot."""

    def __init__(self, message: str, witness: Any = None):
        super().__init__(message)
        self.witness = witness
