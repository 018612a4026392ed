"""Marchenko-Pastur law with ratio ``y`` and scale ``sigma2``.

Support is ``[a, b]`` with ``a = sigma2 (1 - sqrt(y))^2`` and
``b = sigma2 (1 + sqrt(y))^2``; for ``y > 1`` there is an extra point mass
``1 - 1/y`` at the origin.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quadrature import integrate_many

CDF_ATOL = 1e-12


@dataclass(frozen=True)
class MPLaw:
    y: float
    sigma2: float = 1.0

    def __post_init__(self):
        if not (self.y > 0 and math.isfinite(self.y)):
            raise DomainError(f"ratio y must be positive and finite, got {self.y}")
        if not (self.sigma2 > 0 and math.isfinite(self.sigma2)):
            raise DomainError(f"sigma2 must be positive and finite, got {self.sigma2}")

    @property
    def a(self) -> float:
        return self.sigma2 * (1.0 - math.sqrt(self.y)) ** 2

    @property
    def b(self) -> float:
        return self.sigma2 * (1.0 + math.sqrt(self.y)) ** 2

    @property
    def atom(self) -> float:
        return max(0.0, 1.0 - 1.0 / self.y)

    @property
    def continuous_mass(self) -> float:
        return min(1.0, 1.0 / self.y)

    def support(self) -> tuple[float, float]:
        return mp_support(self)

    def density(self, x):
        return mp_density(self, x)

    def cdf(self, x):
        return mp_cdf(self, x)

    def cdf_left(self, x):
        return mp_cdf(self, x, left=True)

    def stieltjes(self, z):
        return mp_stieltjes(self, z)

    # ESD-compatible protocol for the distance functions
    __call__ = cdf


def mp_support(law: MPLaw) -> tuple[float, float]:
    return law.a, law.b


def mp_density(law: MPLaw, x):
    """Density of the continuous part; 0 outside ``[a, b]`` and at ``x = 0``."""
    x = np.asarray(x, dtype=float)
    a, b = law.a, law.b
    inside = (x >= a) & (x <= b) & (x > 0)
    xs = np.where(inside, x, 1.0)
    val = np.sqrt(np.clip((b - xs) * (xs - a), 0.0, None)) / (2.0 * math.pi * xs * law.y * law.sigma2)
    out = np.where(inside, val, 0.0)
    return float(out) if out.ndim == 0 else out


def _theta_integrand(law: MPLaw):
    # x = a + (b - a) sin^2(t) turns g(x) dx into a smooth function of t
    a, b = law.a, law.b
    w = b - a
    scale = w * w / (math.pi * law.y * law.sigma2)

    if a == 0.0:
        # x = w sin^2(t): the sin^2 factor cancels exactly
        return lambda t: (scale / w) * np.cos(t) ** 2

    def h(t):
        s2 = np.sin(t) ** 2
        c2 = 1.0 - s2
        x = a + w * s2
        return scale * s2 * c2 / x

    return h


def _theta_of(law: MPLaw, x: np.ndarray) -> np.ndarray:
    a, b = law.a, law.b
    frac = np.clip((x - a) / (b - a), 0.0, 1.0)
    return np.arcsin(np.sqrt(frac))


def continuous_cdf(law: MPLaw, x, atol: float = CDF_ATOL) -> np.ndarray:
    """``int_a^min(x, b) g`` evaluated for every entry of ``x`` at once."""
    x = np.atleast_1d(np.asarray(x, dtype=float))
    theta = _theta_of(law, x.ravel())
    order = np.argsort(theta, kind="stable")
    ts = theta[order]
    knots, inverse = np.unique(ts, return_inverse=True)
    lo = np.concatenate([[0.0], knots[:-1]])
    pieces, _ = integrate_many(_theta_integrand(law), lo, knots, atol=atol / max(1, knots.size))
    cum = np.cumsum(pieces)
    out = np.empty(theta.size)
    out[order] = cum[inverse]
    return out.reshape(x.shape)


def mp_cdf(law: MPLaw, x, left: bool = False, atol: float = CDF_ATOL):
    """Distribution function including the atom at the origin.

    With ``left=True`` returns the left limit ``G(x-)``, which differs from
    ``G(x)`` only at ``x = 0`` when ``y > 1``.
    """
    xa = np.asarray(x, dtype=float)
    cont = continuous_cdf(law, xa, atol=atol).reshape(xa.shape)
    at_origin = (xa > 0) if left else (xa >= 0)
    out = np.where(at_origin, law.atom, 0.0) + cont
    out = np.clip(out, 0.0, 1.0)
    return float(out) if out.ndim == 0 else out


def _check_upper(z: np.ndarray) -> None:
    if np.any(~(z.imag > 0)):
        raise DomainError("Stieltjes transform requires Im z > 0")


def mp_stieltjes(law: MPLaw, z):
    """Stieltjes transform: the root of ``y s2 z m^2 + (z - s2 (1 - y)) m + 1 = 0``
    lying in the upper half plane."""
    z = np.asarray(z, dtype=complex)
    _check_upper(z)
    s2, y = law.sigma2, law.y
    A = y * s2 * z
    B = z - s2 * (1.0 - y)
    disc = np.sqrt(B * B - 4.0 * A)
    # larger-magnitude root directly, the other from the product of roots
    big = np.where(np.abs(-B + disc) >= np.abs(-B - disc), -B + disc, -B - disc) / (2.0 * A)
    small = 1.0 / (A * big)
    m = np.where(big.imag >= small.imag, big, small)
    # one Newton step against the quadratic
    f = A * m * m + B * m + 1.0
    m = m - f / (2.0 * A * m + B)
    return complex(m) if m.ndim == 0 else m
