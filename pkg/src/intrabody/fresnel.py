"""Reflection at a single boundary between two media.

Amplitudes follow the relative-index form with n21 = n2 / n1; complex
indices are accepted.  The square root uses the principal branch (the
transmitted wave carries energy forward), negated in the purely
evanescent case so total internal reflection decays into the second
medium under the eps = eps' - j eps'' convention.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._kernels import fresnel_sweep
from .errors import DomainError

__all__ = [
    "PolarizedReflection",
    "BrewsterResult",
    "fresnel_reflection",
    "brewster_angle",
    "critical_angle",
    "reflectance_sweep",
]

_POLS = ("TE", "TM")


def _sqrt_forward(w):
    # principal branch keeps Re >= 0 (forward transmitted wave); a purely
    # imaginary root is flipped so the evanescent tail decays
    s = cmath.sqrt(w)
    if s.real == 0.0 and s.imag > 0.0:
        s = -s
    return s


def _check_pol(pol):
    if pol not in _POLS:
        raise DomainError(f"polarization must be 'TE' or 'TM', got {pol!r}")


def _check_indices(n1, n2):
    if complex(n1).real <= 0.0 or complex(n2).real <= 0.0:
        raise DomainError("refractive indices must have positive real part")


@dataclass(frozen=True)
class PolarizedReflection:
    """Complex reflection amplitude and the corresponding power fraction."""

    amplitude: complex
    power: float


@dataclass(frozen=True)
class BrewsterResult:
    """Reflection-minimum angle in radians.

    ``exact`` marks the lossless arctangent solution; lossy pairs only admit
    a numeric minimum of |r_TM| and are flagged approximate.
    """

    angle: float
    exact: bool


def fresnel_reflection(n1, n2, theta, pol):
    """Reflection amplitude for a wave hitting the boundary from medium 1.

    Parameters
    ----------
    n1, n2 : complex refractive indices (n - j kappa) of the two media
    theta : incidence angle in radians, 0 <= theta < pi/2
    pol : "TE" or "TM"

    Returns
    -------
    PolarizedReflection
    """
    _check_pol(pol)
    _check_indices(n1, n2)
    if not (0.0 <= theta < math.pi / 2.0):
        raise DomainError("incidence angle must lie in [0, pi/2)")
    n21 = complex(n2) / complex(n1)
    n21sq = n21 * n21
    c = math.cos(theta)
    s2 = math.sin(theta) ** 2
    w = _sqrt_forward(n21sq - s2)
    if pol == "TE":
        r = (c - w) / (c + w)
    else:
        r = (n21sq * c - w) / (n21sq * c + w)
    return PolarizedReflection(amplitude=r, power=abs(r) ** 2)


def brewster_angle(n1, n2):
    """Angle of minimum TM reflection.

    Lossless pairs get the exact arctan(n2/n1); otherwise the minimum of
    |r_TM| is located numerically and flagged approximate.
    """
    _check_indices(n1, n2)
    n1c, n2c = complex(n1), complex(n2)
    if n1c.imag == 0.0 and n2c.imag == 0.0:
        return BrewsterResult(angle=math.atan2(n2c.real, n1c.real), exact=True)

    def r_tm(theta):
        return abs(fresnel_reflection(n1c, n2c, theta, "TM").amplitude)

    # coarse bracket, then golden-section refinement
    grid = np.linspace(1e-6, math.pi / 2 - 1e-6, 1801)
    k = int(np.argmin([r_tm(t) for t in grid]))
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, len(grid) - 1)]
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c_pt = b - invphi * (b - a)
    d_pt = a + invphi * (b - a)
    for _ in range(80):
        if r_tm(c_pt) < r_tm(d_pt):
            b, d_pt = d_pt, c_pt
            c_pt = b - invphi * (b - a)
        else:
            a, c_pt = c_pt, d_pt
            d_pt = a + invphi * (b - a)
    return BrewsterResult(angle=(a + b) / 2.0, exact=False)


def critical_angle(n1, n2):
    """Total-internal-reflection onset arcsin(n2/n1), or None if n1 <= n2.

    Only defined for lossless media; complex indices are rejected.
    """
    _check_indices(n1, n2)
    n1c, n2c = complex(n1), complex(n2)
    if n1c.imag != 0.0 or n2c.imag != 0.0:
        raise DomainError("critical angle is defined for lossless media only")
    if n1c.real <= n2c.real:
        return None
    return math.asin(n2c.real / n1c.real)


def reflectance_sweep(n1, n2, pol, theta_deg=None, appendix_grid=False):
    """|r| over an angle grid in degrees.

    The default grid is the integer degrees 0..89; ``appendix_grid`` extends
    it to 90 where the limiting magnitude 1 is reported.  Returns
    (theta_deg, magnitude) arrays.
    """
    _check_pol(pol)
    _check_indices(n1, n2)
    if theta_deg is None:
        theta_deg = np.arange(0.0, 91.0 if appendix_grid else 90.0)
    theta_deg = np.asarray(theta_deg, dtype=np.float64)
    if np.any(theta_deg < 0.0) or np.any(theta_deg > 90.0):
        raise DomainError("sweep angles must lie in [0, 90] degrees")
    if not appendix_grid and np.any(theta_deg == 90.0):
        raise DomainError("90 degrees requires the appendix-grid option")

    rad = np.radians(theta_deg)
    cos_t = np.cos(rad)
    sin2_t = np.sin(rad) ** 2
    # pin the grazing end to its exact limit
    at_limit = theta_deg == 90.0
    cos_t[at_limit] = 0.0
    sin2_t[at_limit] = 1.0

    n21 = complex(n2) / complex(n1)
    r_te, r_tm = fresnel_sweep(n21 * n21, cos_t, sin2_t)
    mags = np.abs(r_te if pol == "TE" else r_tm)
    return theta_deg, mags
