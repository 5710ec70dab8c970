from typing import Callable, Generic, Optional, TypeVar, Union

from .errors import SplashError, SplashException

T = TypeVar("T")
U = TypeVar("U")

_MISSING = object()


class InvalidResultAccessError(Exception):
    """Raised when the arm a Result does not hold is accessed."""


class Result(Generic[T]):
    """Either a value or a SplashError, never both.

    `Result(None)` is a valid value; only an omitted value means "no value".
    """

    __slots__ = ("_failed", "_payload")

    def __init__(
        self,
        value: Union[T, object] = _MISSING,
        error: Optional[SplashError] = None,
    ) -> None:
        has_value = value is not _MISSING
        if has_value == (error is not None):
            raise ValueError("a result holds exactly one of a value and an error")
        self._failed = error is not None
        self._payload = error if self._failed else value

    def is_ok(self) -> bool:
        return not self._failed

    def is_err(self) -> bool:
        return self._failed

    @property
    def value(self) -> T:
        if self._failed:
            raise InvalidResultAccessError(f"no value, the result failed with: {self._payload}")
        return self._payload  # type: ignore[return-value]

    @property
    def error(self) -> SplashError:
        if not self._failed:
            raise InvalidResultAccessError("no error, the result holds a value")
        return self._payload  # type: ignore[return-value]

    def unwrap(self) -> T:
        """The value; a failed result raises its error as a SplashException."""
        if self._failed:
            raise SplashException(self._payload)  # type: ignore[arg-type]
        return self._payload  # type: ignore[return-value]

    def map(self, func: Callable[[T], U]) -> "Result[U]":
        if self._failed:
            return Result(error=self._payload)  # type: ignore[arg-type]
        return Result(func(self._payload))  # type: ignore[arg-type]

    def and_then(self, func: "Callable[[T], Result[U]]") -> "Result[U]":
        if self._failed:
            return Result(error=self._payload)  # type: ignore[arg-type]
        return func(self._payload)  # type: ignore[arg-type]

    def __repr__(self) -> str:
        arm = "error" if self._failed else "value"
        return f"Result({arm}={self._payload!r})"
