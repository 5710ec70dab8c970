"""Oscillatory z-integral that produces the delta function in the norm identity.

    I1 = 1/2 int_(-inf, 0) exp(-i dk z) / (lam + i dk z) dz
    I2 = 1/2 int_(0, inf)  exp(-i dk z) / (lam + i dk z) dz

For dk != 0 the halves are complex conjugates, I2 = -i e^lam E1(lam) / (2 dk),
so I1 + I2 = 0 while (I1 - I2)/2 = i e^lam E1(lam) / (2 dk).
"""

import dataclasses
import math
from typing import List, Tuple

import numpy as np
from scipy import integrate

from splash_pulses.errors import SplashError
from splash_pulses.result import Result
from splash_pulses.utils.logging import LogSection, get_logger

from .special import exp_integral_E1_scaled

logger = get_logger(__name__)

_CHUNK_PERIODS = 16


@dataclasses.dataclass(frozen=True, eq=False)
class KeyIntegralCheck:
    """Numerical halves of the key integral next to their closed forms.

    Attributes:
        I1, I2: halves over the infinite half-lines.
        closed: i e^lam E1(lam) / (2 dk), the expected (I1 - I2)/2.
        truncated: (T, I1(T) + I2(T)) for the window and its doublings.
    """

    lam: float
    dk: float
    I1: complex
    I2: complex
    closed: complex
    truncated: List[Tuple[float, complex]]
    trace: List[str] = dataclasses.field(default_factory=list)

    @property
    def total(self) -> complex:
        return self.I1 + self.I2

    @property
    def antisymmetric(self) -> complex:
        return (self.I1 - self.I2) / 2.0

    @property
    def decreasing(self) -> bool:
        sums = [abs(value) for _, value in self.truncated]
        return all(b < a for a, b in zip(sums, sums[1:]))

    def to_dict(self) -> dict:
        def pair(value: complex) -> dict:
            return {"re": value.real, "im": value.imag}

        return {
            "lambda": self.lam,
            "dk": self.dk,
            "I1": pair(self.I1),
            "I2": pair(self.I2),
            "closed": pair(self.closed),
            "truncated": [{"T": t, "sum": pair(v)} for t, v in self.truncated],
        }


def _pieces(lam: float, dk: float):
    """Amplitudes A, B with 1/(lam + i dk z) = A(z) - i B(z)."""

    def amp_a(z: float) -> float:
        return lam / (lam * lam + dk * dk * z * z)

    def amp_b(z: float) -> float:
        return dk * z / (lam * lam + dk * dk * z * z)

    return amp_a, amp_b


class _QuadratureWarning(Exception):
    pass


def _weighted(func, lo: float, hi: float, weight: str, omega: float, tol: float, trace: List[str]) -> float:
    # whole-period chunks nearly cancel, so the absolute tolerance must be honored as well
    out = integrate.quad(
        func, lo, hi, weight=weight, wvar=omega, epsabs=tol, epsrel=tol, limit=200, full_output=1
    )
    if len(out) > 3:
        # QAWF reports the cycle-wise trace in its fourth output
        trace.append(f"{weight} on ({lo:g}, {hi:g}): {out[3]}")
        raise _QuadratureWarning(trace[-1])
    return out[0]


def _half(lam: float, dk: float, upper: float, tol: float, trace: List[str]) -> complex:
    """1/2 int_(0, upper) exp(-i dk z)/(lam + i dk z) dz; upper may be inf."""
    omega = abs(dk)
    sign = math.copysign(1.0, dk)
    amp_a, amp_b = _pieces(lam, dk)
    # exp(-i dk z) (A - iB) = (A cos - B sin(dk z)) - i (B cos + A sin(dk z)), sin(dk z) = sign sin(omega z)
    if math.isinf(upper):
        edges = [0.0, math.inf]
    else:
        chunk = _CHUNK_PERIODS * 2.0 * math.pi / omega
        edges = list(np.arange(0.0, upper, chunk)) + [upper]
    re = im = 0.0
    for lo, hi in zip(edges, edges[1:]):
        a_cos = _weighted(amp_a, lo, hi, "cos", omega, tol, trace)
        a_sin = _weighted(amp_a, lo, hi, "sin", omega, tol, trace)
        b_cos = _weighted(amp_b, lo, hi, "cos", omega, tol, trace)
        b_sin = _weighted(amp_b, lo, hi, "sin", omega, tol, trace)
        re += a_cos - sign * b_sin
        im -= b_cos + sign * a_sin
    return complex(re, im) / 2.0


def key_integral_check(
    lam: float, dk: float, truncation: float, doublings: int = 2, tol: float = 1e-8
) -> Result[KeyIntegralCheck]:
    """Integrates both halves with oscillatory QUADPACK rules and compares them with E1.

    The infinite halves use the Fourier-integral rule; the truncated sums
    use windows rounded up to a whole number of periods, so they decay like
    -1/(dk^2 T).
    """
    if not lam > 0:
        return Result(error=SplashError.invalid_argument(f"lambda must be positive, got {lam}"))
    if dk == 0 or not math.isfinite(dk):
        return Result(error=SplashError.invalid_argument("dk must be finite and nonzero"))
    if not truncation > 0:
        return Result(error=SplashError.invalid_argument(f"truncation must be positive, got {truncation}"))

    period = 2.0 * math.pi / abs(dk)
    trace: List[str] = []
    with LogSection(f"key integral lambda={lam:g} dk={dk:g}", logger_name=__name__):
        try:
            i1 = _half(lam, -dk, math.inf, tol, trace)
            i2 = _half(lam, dk, math.inf, tol, trace)
            truncated = []
            for j in range(doublings + 1):
                window = math.ceil(truncation * 2**j / period) * period
                total = _half(lam, -dk, window, tol, trace) + _half(lam, dk, window, tol, trace)
                truncated.append((window, total))
                trace.append(f"T={window:.6g}: I1+I2={total:.6g}")
                logger.trace(trace[-1])
        except _QuadratureWarning:
            return Result(error=SplashError.quadrature("oscillatory quadrature failed; trace: " + " | ".join(trace)))

    closed = 1j * float(exp_integral_E1_scaled(lam)) / (2.0 * dk)
    return Result(KeyIntegralCheck(lam, dk, i1, i2, closed, truncated, trace))
