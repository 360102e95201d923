"""Special functions for the telegraph law.

Modified Bessel functions of the first kind (orders 0 and 1), their
exponentially scaled variants, ``I1(z)/z`` without the 0/0 at the origin,
and overflow-free ``log(cosh(y))`` / ``arccosh(exp(u))``.

All functions accept scalars or array-likes. Scalars come back as ``float``.

Bessel functions use the ascending power series for ``z <= BESSEL_SWITCH``
and the large-argument asymptotic expansion above it.
"""
from __future__ import annotations

import math

import numpy as np

from .errors import DomainError

__all__ = [
    "BESSEL_SWITCH",
    "LOG_COSH_SWITCH",
    "ACOSH_EXP_SWITCH",
    "bessel_i0",
    "bessel_i1",
    "bessel_i0e",
    "bessel_i1e",
    "bessel_i1_over_z",
    "bessel_i1_over_z_e",
    "log_cosh",
    "acosh_exp",
]

BESSEL_SWITCH = 15.0
LOG_COSH_SWITCH = 1.0
ACOSH_EXP_SWITCH = 1.0

_SERIES_RTOL = 1e-17
_MAX_SERIES_TERMS = 500
_MAX_ASYMPTOTIC_TERMS = 60
_LN2 = math.log(2.0)


def _as_array(z):
    arr = np.asarray(z, dtype=float)
    return arr, arr.ndim == 0


def _out(arr, scalar):
    return float(arr) if scalar else arr


def _check_nonnegative(z: np.ndarray, name: str) -> None:
    if np.any(np.isnan(z)):
        raise DomainError(f"{name}: argument is NaN")
    if np.any(z < 0):
        raise DomainError(f"{name}: argument must be >= 0")


def _series(z: np.ndarray, order: int) -> np.ndarray:
    """Ascending series sum_k (z^2/4)^k / (k! (k+order)!), times (z/2)^order."""
    q = 0.25 * z * z
    term = np.ones_like(z)
    total = term.copy()
    for k in range(1, _MAX_SERIES_TERMS):
        term = term * q / (k * (k + order))
        total += term
        if np.all(term <= _SERIES_RTOL * total):
            break
    if order == 1:
        total = total * (0.5 * z)
    return total


def _asymptotic_scaled(z: np.ndarray, order: int) -> np.ndarray:
    """e^{-z} I_order(z) from the large-argument expansion (z > 0)."""
    mu = 4.0 * order * order
    term = np.ones_like(z)
    total = term.copy()
    prev = np.abs(term)
    active = np.ones(z.shape, dtype=bool)
    for k in range(1, _MAX_ASYMPTOTIC_TERMS):
        term = -term * (mu - (2 * k - 1) ** 2) / (k * 8.0 * z)
        mag = np.abs(term)
        # stop each lane once terms are negligible or start to diverge
        active &= mag < prev
        total = np.where(active, total + term, total)
        active &= mag > _SERIES_RTOL * np.abs(total)
        if not np.any(active):
            break
        prev = mag
    return total / np.sqrt(2.0 * np.pi * z)


def _scaled(z: np.ndarray, order: int) -> np.ndarray:
    out = np.empty_like(z)
    small = z <= BESSEL_SWITCH
    if np.any(small):
        zs = z[small]
        out[small] = _series(zs, order) * np.exp(-zs)
    if np.any(~small):
        out[~small] = _asymptotic_scaled(z[~small], order)
    return out


def _unscale(scaled: np.ndarray, z: np.ndarray, name: str) -> np.ndarray:
    with np.errstate(over="ignore"):
        half = np.exp(0.5 * z)
        val = scaled * half * half
    if np.any(np.isinf(val)):
        raise OverflowError(f"{name}: result overflows double precision")
    return val


def _unscaled(z: np.ndarray, order: int, name: str) -> np.ndarray:
    # the series is summed directly so small arguments skip the exp round trip
    out = np.empty_like(z)
    small = z <= BESSEL_SWITCH
    if np.any(small):
        out[small] = _series(z[small], order)
    if np.any(~small):
        zl = z[~small]
        out[~small] = _unscale(_asymptotic_scaled(zl, order), zl, name)
    return out


def bessel_i0e(z):
    """Exponentially scaled ``exp(-z) * I0(z)`` for ``z >= 0``; never overflows."""
    arr, scalar = _as_array(z)
    _check_nonnegative(arr, "bessel_i0e")
    return _out(_scaled(np.atleast_1d(arr), 0).reshape(arr.shape), scalar)


def bessel_i1e(z):
    """Exponentially scaled ``exp(-z) * I1(z)`` for ``z >= 0``; never overflows."""
    arr, scalar = _as_array(z)
    _check_nonnegative(arr, "bessel_i1e")
    return _out(_scaled(np.atleast_1d(arr), 1).reshape(arr.shape), scalar)


def bessel_i0(z):
    """Modified Bessel function of the first kind, order 0.

    Parameters
    ----------
    z : float or array_like
        Nonnegative argument.

    Returns
    -------
    float or ndarray
        ``I0(z)``, at least 1.

    Raises
    ------
    DomainError
        If any ``z < 0``.
    OverflowError
        If the result exceeds the double range (``z`` above roughly 713.98).
    """
    arr, scalar = _as_array(z)
    _check_nonnegative(arr, "bessel_i0")
    flat = np.atleast_1d(arr)
    val = _unscaled(flat, 0, "bessel_i0")
    return _out(val.reshape(arr.shape), scalar)


def bessel_i1(z):
    """Modified Bessel function of the first kind, order 1 (same contract as ``bessel_i0``)."""
    arr, scalar = _as_array(z)
    _check_nonnegative(arr, "bessel_i1")
    flat = np.atleast_1d(arr)
    val = _unscaled(flat, 1, "bessel_i1")
    return _out(val.reshape(arr.shape), scalar)


def _i1_over_z_series(z: np.ndarray) -> np.ndarray:
    q = 0.25 * z * z
    term = np.full_like(z, 0.5)
    total = term.copy()
    for k in range(1, _MAX_SERIES_TERMS):
        term = term * q / (k * (k + 1))
        total += term
        if np.all(term <= _SERIES_RTOL * total):
            break
    return total


def bessel_i1_over_z(z):
    """``I1(z)/z``, continuous at the origin where it equals 1/2."""
    arr, scalar = _as_array(z)
    _check_nonnegative(arr, "bessel_i1_over_z")
    flat = np.atleast_1d(arr)
    val = np.empty_like(flat)
    small = flat <= BESSEL_SWITCH
    if np.any(small):
        val[small] = _i1_over_z_series(flat[small])
    if np.any(~small):
        zl = flat[~small]
        val[~small] = _unscale(_asymptotic_scaled(zl, 1), zl, "bessel_i1_over_z") / zl
    return _out(val.reshape(arr.shape), scalar)


def bessel_i1_over_z_e(z):
    """``exp(-z) * I1(z)/z``; the scaled form used where ``exp(z)`` would overflow."""
    arr, scalar = _as_array(z)
    _check_nonnegative(arr, "bessel_i1_over_z_e")
    flat = np.atleast_1d(arr)
    val = np.empty_like(flat)
    small = flat <= BESSEL_SWITCH
    if np.any(small):
        zs = flat[small]
        val[small] = _i1_over_z_series(zs) * np.exp(-zs)
    if np.any(~small):
        zl = flat[~small]
        val[~small] = _asymptotic_scaled(zl, 1) / zl
    return _out(val.reshape(arr.shape), scalar)


def log_cosh(y):
    """``log(cosh(y))`` for any finite real ``y`` without overflow.

    Uses ``log1p(2 sinh(|y|/2)^2)`` for ``|y| <= LOG_COSH_SWITCH`` (keeps full
    relative accuracy as ``y -> 0``) and ``|y| - log 2 + log1p(exp(-2|y|))``
    above it.
    """
    if isinstance(y, (float, int)):
        a = abs(float(y))
        if a <= LOG_COSH_SWITCH:
            return math.log1p(2.0 * math.sinh(0.5 * a) ** 2)
        return a - _LN2 + math.log1p(math.exp(-2.0 * a))
    arr, scalar = _as_array(y)
    a = np.abs(arr)
    small = a <= LOG_COSH_SWITCH
    with np.errstate(over="ignore"):
        lo = np.log1p(2.0 * np.sinh(0.5 * np.where(small, a, 0.0)) ** 2)
    hi = a - _LN2 + np.log1p(np.exp(-2.0 * a))
    return _out(np.where(small, lo, hi), scalar)


def acosh_exp(u):
    """``arccosh(exp(u))`` for ``u >= 0``, the inverse of ``log_cosh`` on ``[0, inf)``.

    Small ``u`` goes through ``m = expm1(u)`` and ``log1p(m + sqrt(m (m + 2)))``
    so the ``sqrt(2u)`` behaviour near 0 is kept exactly; large ``u`` uses
    ``u + log 2 + log((1 + sqrt(1 - exp(-2u))) / 2)``.
    """
    if isinstance(u, (float, int)):
        u = float(u)
        if not u >= 0:
            raise DomainError("acosh_exp: argument must be >= 0")
        if u <= ACOSH_EXP_SWITCH:
            m = math.expm1(u)
            return math.log1p(m + math.sqrt(m * (m + 2.0)))
        q = math.exp(-2.0 * u)
        return u + _LN2 + math.log1p(-q / (2.0 * (1.0 + math.sqrt(1.0 - q))))
    arr, scalar = _as_array(u)
    _check_nonnegative(arr, "acosh_exp")
    small = arr <= ACOSH_EXP_SWITCH
    m = np.expm1(np.where(small, arr, 0.0))
    lo = np.log1p(m + np.sqrt(m * (m + 2.0)))
    q = np.exp(-2.0 * arr)
    hi = arr + _LN2 + np.log1p(-q / (2.0 * (1.0 + np.sqrt(1.0 - q))))
    return _out(np.where(small, lo, hi), scalar)
