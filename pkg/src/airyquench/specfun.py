"""Airy function of the first kind, its negative zeros, and the complementary
error function for complex argument.

Evaluation strategy
-------------------
Ai, Ai': Maclaurin series in 80-bit arithmetic for |x| <= 8, optimally
truncated asymptotic expansions outside.  Absolute error is below 1e-12 on
the declared range; the series/asymptotic seam agrees to the same level.

Zeros: bracketed from the asymptotic zero spacing, bisected, then polished
with two Newton steps, leaving |Ai(a_n)| at rounding level.

erfc(z): reduced to Re z >= 0 through erfc(-z) = 2 - erfc(z) (which makes the
reflection identity hold exactly), then written as exp(-z^2) w(iz) with the
Faddeeva function evaluated on the upper half plane.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from . import backend
from .errors import RangeError

AIRY_RANGE = 1000.0
ZERO_MAX = 50


@dataclass(frozen=True)
class AiryValue:
    ai: float
    ai_prime: float


@dataclass(frozen=True)
class AiryZero:
    index: int
    value: float


def airy_ai_values(x: np.ndarray):
    """Vectorized Ai, Ai' with the range guard applied to the whole array."""
    x = np.asarray(x, dtype=np.float64)
    if x.size and (np.min(x) < -AIRY_RANGE or np.max(x) > AIRY_RANGE):
        raise RangeError(f"Airy evaluation supported on [{-AIRY_RANGE}, {AIRY_RANGE}]")
    if x.size and not np.all(np.isfinite(x)):
        raise RangeError("Airy argument must be finite")
    return backend.airy_ai_arr(np.ascontiguousarray(x))


def airy_ai(x: float) -> AiryValue:
    ai, aip = airy_ai_values(np.array([float(x)]))
    return AiryValue(float(ai[0]), float(aip[0]))


def _zero_bracket(n: int):
    # large-n expansion of the n-th negative zero
    T = 3.0 * np.pi * (4 * n - 1) / 8.0
    approx = -T ** (2.0 / 3.0) * (1.0 + 5.0 / (48.0 * T * T))
    half = 0.35 if n < 4 else 0.25
    return approx - half, approx + half


def airy_zero(n: int) -> AiryZero:
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise RangeError(f"zero index must be an integer, got {n!r}")
    if n < 1 or n > ZERO_MAX:
        raise RangeError(f"zero index must lie in [1, {ZERO_MAX}], got {n}")
    return _zero_table()[n - 1]


def _compute_zero(n: int) -> float:
    lo, hi = _zero_bracket(n)
    flo = airy_ai(lo).ai
    fhi = airy_ai(hi).ai
    for _ in range(4):
        if flo * fhi < 0:
            break
        lo -= 0.2
        hi += 0.2
        flo = airy_ai(lo).ai
        fhi = airy_ai(hi).ai
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        fm = airy_ai(mid).ai
        if flo * fm <= 0:
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    r = 0.5 * (lo + hi)
    for _ in range(2):
        v = airy_ai(r)
        r -= v.ai / v.ai_prime
    return r


_ZEROS = None


def _zero_table():
    global _ZEROS
    if _ZEROS is None:
        _ZEROS = tuple(AiryZero(n, _compute_zero(n)) for n in range(1, ZERO_MAX + 1))
    return _ZEROS


# ---------------------------------------------------------------------------

ERFC_BOX = 1000.0
_EXP_GUARD = 700.0


def faddeeva_w(z: complex) -> complex:
    """w(z) for Im z >= 0; module-internal building block."""
    return complex(backend.faddeeva_upper(np.array([complex(z)]))[0])


def erfc_complex(z: complex) -> complex:
    z = complex(z)
    if abs(z.real) > ERFC_BOX or abs(z.imag) > ERFC_BOX:
        raise RangeError(f"erfc supported for |Re z|, |Im z| <= {ERFC_BOX}")
    if z.real < 0.0:
        return 2.0 - erfc_complex(-z)
    # erfc(z) = exp(-z^2) w(iz); |exp(-z^2)| = exp(Im^2 - Re^2) can overflow
    if z.imag * z.imag - z.real * z.real > _EXP_GUARD:
        raise RangeError(f"erfc({z}) overflows double precision")
    return cmath.exp(-z * z) * faddeeva_w(1j * z)
