import enum
from typing import Optional


class SplashErrorType(enum.Enum):
    INVALID_ARGUMENT = enum.auto()
    SINGULAR_POINT = enum.auto()
    STENCIL = enum.auto()
    SAMPLING = enum.auto()
    QUADRATURE = enum.auto()
    DIVERGENT = enum.auto()
    AMBIGUOUS = enum.auto()
    FIT_QUALITY = enum.auto()
    GEOMETRY = enum.auto()
    CHECK_FAILED = enum.auto()


_EXIT_CODES = {
    SplashErrorType.INVALID_ARGUMENT: 2,
    SplashErrorType.SINGULAR_POINT: 3,
    SplashErrorType.STENCIL: 3,
    SplashErrorType.SAMPLING: 3,
    SplashErrorType.AMBIGUOUS: 4,
    SplashErrorType.QUADRATURE: 5,
    SplashErrorType.DIVERGENT: 5,
    SplashErrorType.FIT_QUALITY: 1,
    SplashErrorType.GEOMETRY: 1,
    SplashErrorType.CHECK_FAILED: 1,
}


class SplashError:
    def __init__(self, error_type: SplashErrorType, msg: str) -> None:
        self.type = error_type
        self.msg = msg

    @classmethod
    def invalid_argument(cls, reason: str) -> "SplashError":
        return cls(SplashErrorType.INVALID_ARGUMENT, f"invalid argument: {reason}")

    @classmethod
    def singular_point(cls, where: str) -> "SplashError":
        return cls(SplashErrorType.SINGULAR_POINT, f"singular point: {where}")

    @classmethod
    def stencil(cls, where: str) -> "SplashError":
        return cls(SplashErrorType.STENCIL, f"stencil touches a non-finite sample at {where}")

    @classmethod
    def sampling(cls, rejected: int, requested: int) -> "SplashError":
        msg = f"too many singular sample points: rejected {rejected} of {requested}"
        return cls(SplashErrorType.SAMPLING, msg)

    @classmethod
    def quadrature(cls, reason: str) -> "SplashError":
        return cls(SplashErrorType.QUADRATURE, f"quadrature did not converge: {reason}")

    @classmethod
    def divergent(cls, what: str) -> "SplashError":
        return cls(SplashErrorType.DIVERGENT, f"divergent: {what}")

    @classmethod
    def ambiguous(cls, first: str, second: str) -> "SplashError":
        msg = f"ambiguous classification: {first} vs {second}"
        return cls(SplashErrorType.AMBIGUOUS, msg)

    @classmethod
    def fit_quality(cls, reason: str) -> "SplashError":
        return cls(SplashErrorType.FIT_QUALITY, f"poor fit: {reason}")

    @classmethod
    def geometry(cls, reason: str) -> "SplashError":
        return cls(SplashErrorType.GEOMETRY, f"peak geometry: {reason}")

    @classmethod
    def check_failed(cls, msg: Optional[str] = None) -> "SplashError":
        return cls(SplashErrorType.CHECK_FAILED, msg or "check failed")

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES[self.type]

    def __bool__(self) -> bool:
        return self.type is not None

    def __str__(self) -> str:
        return self.msg or self.type.name

    def __repr__(self) -> str:
        return f"{type(self).__name__}(type='{self.type}', msg='{self.msg}')"


class SplashException(ValueError):
    """Raised where an error cannot travel as a value, e.g. from constructors."""

    def __init__(self, error: SplashError) -> None:
        super().__init__(str(error))
        self.error = error


class StencilError(SplashException):
    def __init__(self, where: str) -> None:
        super().__init__(SplashError.stencil(where))
        self.where = where
