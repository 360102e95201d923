"""Closed-form law of the telegraph particle under ``lambda(t) = theta tanh(theta t)``.

At time ``t`` the position ``X(t)`` has two atoms of mass ``1 / (2 cosh(theta t))``
at ``x = -ct`` and ``x = +ct`` (paths without a switch) and, on ``(-ct, ct)``,
the absolutely continuous density::

    p(x, t) = theta t / cosh(theta t) * I1(theta/c * s) / (2 s),   s = sqrt(c^2 t^2 - x^2)

CDF convention: ``cdf`` is right-continuous, ``F(x) = P(X(t) <= x)``. The
strict version ``P(X(t) < x)`` is ``F(x-)``, which only differs at the atoms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .errors import DiagnosticError, DomainError
from .intensity import ModelParams, big_lambda_at
from .specfun import bessel_i1_over_z_e, bessel_i1e

__all__ = [
    "LawDecomposition",
    "density",
    "atom_mass",
    "cdf",
    "cdf_strict",
    "velocity_transition",
    "velocity_covariance",
    "velocity_char_function",
    "decompose",
]

CDF_ABS_TOL = 1e-10


def _check_t(t: float) -> float:
    t = float(t)
    if not t > 0:
        raise DomainError(f"t must be positive, got {t!r}")
    return t


def _sech(y: float) -> float:
    # 1/cosh without overflow
    e = np.exp(-abs(y))
    return 2.0 * e / (1.0 + e * e)


def density(params: ModelParams, t: float, x):
    """Absolutely continuous part of the law of ``X(t)``.

    Zero for ``|x| > ct``. On the light cone ``|x| = ct`` the continuous
    extension ``theta^2 t / (4 c cosh(theta t))`` is returned; the atoms are
    never folded in (see ``atom_mass``).
    """
    t = _check_t(t)
    arr = np.asarray(x, dtype=float)
    theta, c = params.theta, params.c
    ct = c * t
    ax = np.abs(arr)
    inside = ax <= ct
    # (ct - |x|)(ct + |x|) keeps relative accuracy next to the cone
    s2 = np.where(inside, (ct - ax) * (ct + ax), 0.0)
    z = (theta / c) * np.sqrt(s2)
    # I1(z)/z / cosh(theta t) = [e^{-z} I1(z)/z] * e^{z - theta t} * 2 / (1 + e^{-2 theta t})
    scale = 2.0 / (1.0 + np.exp(-2.0 * theta * t))
    core = bessel_i1_over_z_e(z) * np.exp(z - theta * t) * scale
    val = np.where(inside, theta * theta * t / (2.0 * c) * core, 0.0)
    return float(val) if arr.ndim == 0 else val


def atom_mass(params: ModelParams, t: float) -> float:
    """Mass at each endpoint ``x = -ct`` and ``x = +ct``, namely ``1 / (2 cosh(theta t))``."""
    t = _check_t(t)
    return 0.5 * _sech(params.theta * t)


def _angle_integrand(phi: float, theta: float, t: float) -> float:
    # density(ct sin phi) * ct cos phi, which reduces to theta t I1(theta t cos phi) / (2 cosh(theta t))
    z = theta * t * max(np.cos(phi), 0.0)
    y = theta * t
    return 0.5 * y * bessel_i1e(z) * np.exp(z - y) * 2.0 / (1.0 + np.exp(-2.0 * y))


def _continuous_mass(params: ModelParams, t: float, phi_lo: float, phi_hi: float, epsabs: float) -> float:
    if phi_hi <= phi_lo or params.theta == 0:
        return 0.0
    val, err = integrate.quad(
        _angle_integrand, phi_lo, phi_hi, args=(params.theta, t),
        epsabs=epsabs, epsrel=1e-12, limit=200,
    )
    if not err <= max(epsabs, 1e-12 * abs(val)) * 10:
        raise DiagnosticError(f"cdf quadrature did not converge (error estimate {err:.3g})")
    return val


def _angle_integrand_vec(phi: np.ndarray, theta: float, t: float) -> np.ndarray:
    y = theta * t
    z = y * np.maximum(np.cos(phi), 0.0)
    return 0.5 * y * bessel_i1e(z) * np.exp(z - y) * 2.0 / (1.0 + np.exp(-2.0 * y))


def _piece_masses(params: ModelParams, t: float, phi: np.ndarray) -> np.ndarray:
    """Continuous mass on each ``[phi[i-1], phi[i]]`` (``phi[-1] = -pi/2``), integrated jointly."""
    lo = np.concatenate(([-0.5 * np.pi], phi[:-1]))
    width = phi - lo
    if params.theta == 0 or not np.any(width > 0):
        return np.zeros_like(phi)

    def f(u):
        return _angle_integrand_vec(lo + u * width, params.theta, t) * width

    val, err = integrate.quad_vec(f, 0.0, 1.0, epsabs=1e-14, epsrel=0.0, norm="max", limit=200)
    if not err * phi.size <= CDF_ABS_TOL:
        raise DiagnosticError(f"cdf quadrature did not converge (error estimate {err:.3g})")
    return val


def cdf(params: ModelParams, t: float, x):
    """Right-continuous distribution function ``P(X(t) <= x)``.

    ``0`` below ``-ct``, ``atom + int_{-ct}^x p(u, t) du`` on ``[-ct, ct)`` and
    ``1`` from ``ct`` on. The integral is taken in the angle ``u = ct sin(phi)``,
    where the integrand is smooth, by adaptive Gauss-Kronrod quadrature to an
    absolute tolerance of ``1e-10``. Arrays are split at their sorted
    abscissae, all pieces are integrated together, then accumulated.
    """
    t = _check_t(t)
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError("x is NaN")
    ct = params.c * t
    atom = atom_mass(params, t)
    if arr.ndim == 0:
        xi = float(arr)
        if xi < -ct:
            return 0.0
        if xi >= ct:
            return 1.0
        mass = _continuous_mass(params, t, -0.5 * np.pi, float(np.arcsin(xi / ct)), CDF_ABS_TOL)
        return min(atom + mass, 1.0)
    flat = arr.ravel()
    out = np.where(flat < -ct, 0.0, 1.0)
    mid = (flat >= -ct) & (flat < ct)
    if np.any(mid):
        xs = np.unique(flat[mid])
        masses = _piece_masses(params, t, np.arcsin(xs / ct))
        vals = np.minimum(atom + np.cumsum(masses), 1.0)
        out[mid] = vals[np.searchsorted(xs, flat[mid])]
    return out.reshape(arr.shape)


def cdf_strict(params: ModelParams, t: float, x):
    """Left limit ``P(X(t) < x)``; equals ``cdf`` except at ``x = +-ct``."""
    t = _check_t(t)
    arr = np.asarray(x, dtype=float)
    ct = params.c * t
    val = np.asarray(cdf(params, t, arr), dtype=float)
    atom = atom_mass(params, t)
    val = np.where(arr == -ct, 0.0, val)
    val = np.where(arr == ct, 1.0 - atom, val)
    return float(val) if arr.ndim == 0 else val


def velocity_transition(params: ModelParams, t: float) -> tuple[float, float]:
    """``(P(V(t) = V(0)), P(V(t) = -V(0)))`` = ``((1 + e^{-2 Lambda}) / 2, (1 - e^{-2 Lambda}) / 2)``."""
    if not t >= 0:
        raise DomainError(f"t must be >= 0, got {t!r}")
    decay = np.exp(-2.0 * big_lambda_at(params, t))
    return float(0.5 * (1.0 + decay)), float(0.5 * (1.0 - decay))


def velocity_covariance(params: ModelParams, s: float, t: float) -> float:
    """``E[V(s) V(t)] = c^2 exp(-2 |Lambda(t) - Lambda(s)|)``."""
    if not (s >= 0 and t >= 0):
        raise DomainError("times must be >= 0")
    gap = abs(big_lambda_at(params, t) - big_lambda_at(params, s))
    return params.c**2 * float(np.exp(-2.0 * gap))


def velocity_char_function(params: ModelParams, s: float, t: float, alpha: float, beta: float) -> complex:
    """Joint characteristic function ``E exp(i alpha V(s) + i beta V(t))`` for ``s <= t``.

    Real-valued because ``V(0)`` is symmetric; returned as ``complex`` to keep
    the characteristic-function contract.
    """
    if not (0 <= s <= t):
        raise DomainError(f"need 0 <= s <= t, got s={s!r}, t={t!r}")
    c = params.c
    decay = np.exp(-2.0 * (big_lambda_at(params, t) - big_lambda_at(params, s)))
    val = np.cos(alpha * c) * np.cos(beta * c) - decay * np.sin(alpha * c) * np.sin(beta * c)
    return complex(val)


@dataclass(frozen=True)
class LawDecomposition:
    """Lebesgue decomposition of the law of ``X(t)``: two equal atoms plus a density."""

    params: ModelParams
    t: float
    atom_minus: float
    atom_plus: float

    def ac_density_at(self, x):
        return density(self.params, self.t, x)

    def continuous_mass(self) -> float:
        return 1.0 - self.atom_minus - self.atom_plus


def decompose(params: ModelParams, t: float) -> LawDecomposition:
    m = atom_mass(params, t)
    return LawDecomposition(params, float(t), m, m)
