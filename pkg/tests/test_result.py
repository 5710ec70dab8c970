import pytest

from splash_pulses.errors import SplashError, SplashErrorType, SplashException, StencilError
from splash_pulses.result import InvalidResultAccessError, Result


def test_result_value():
    res = Result(0.0)
    assert res.is_ok()
    assert not res.is_err()
    assert res.value == 0.0
    assert res.unwrap() == 0.0
    with pytest.raises(InvalidResultAccessError):
        _ = res.error


def test_result_none_is_a_value():
    assert Result(None).is_ok()


def test_result_error():
    res = Result(error=SplashError.divergent("norm"))
    assert res.is_err()
    with pytest.raises(InvalidResultAccessError):
        _ = res.value
    with pytest.raises(SplashException) as ex:
        res.unwrap()
    assert ex.value.error is res.error
    assert str(ex.value) == "divergent: norm"


def test_result_needs_exactly_one():
    with pytest.raises(ValueError):
        Result()
    with pytest.raises(ValueError):
        Result(1, SplashError.check_failed())


@pytest.mark.parametrize(
    ("error", "exit_code"),
    [
        (SplashError.invalid_argument("x"), 2),
        (SplashError.singular_point("x"), 3),
        (SplashError.stencil("x"), 3),
        (SplashError.sampling(20, 100), 3),
        (SplashError.ambiguous("log-divergent", "power-divergent"), 4),
        (SplashError.quadrature("x"), 5),
        (SplashError.divergent("x"), 5),
        (SplashError.fit_quality("x"), 1),
        (SplashError.geometry("x"), 1),
        (SplashError.check_failed(), 1),
    ],
)
def test_exit_codes(error, exit_code):
    assert error.exit_code == exit_code


def test_every_error_type_has_an_exit_code():
    for error_type in SplashErrorType:
        assert SplashError(error_type, "").exit_code in (1, 2, 3, 4, 5)


def test_error_messages():
    assert str(SplashError.sampling(20, 100)) == "too many singular sample points: rejected 20 of 100"
    assert str(SplashError.check_failed()) == "check failed"
    assert str(SplashError(SplashErrorType.GEOMETRY, "")) == "GEOMETRY"


def test_stencil_error_carries_location():
    ex = StencilError("x=0, z=1")
    assert isinstance(ex, SplashException)
    assert ex.where == "x=0, z=1"
    assert ex.error.type is SplashErrorType.STENCIL
    assert "x=0, z=1" in str(ex)


def test_result_map_and_then():
    assert Result(2.0).map(lambda v: v * 3).value == 6.0
    assert Result(2.0).and_then(lambda v: Result(error=SplashError.divergent("x"))).is_err()

    failed = Result(error=SplashError.geometry("flat"))
    calls = []
    assert failed.map(calls.append).error is failed.error
    assert failed.and_then(lambda v: Result(calls.append(v))).error is failed.error
    assert calls == []


def test_result_repr():
    assert repr(Result(1)) == "Result(value=1)"
    assert repr(Result(error=SplashError.check_failed())).startswith("Result(error=")
