"""Tissue dielectric models and optical-index conversions.

Complex permittivity follows the loss convention eps = eps' - j eps'' with
eps'' >= 0 for passive media, and the complex refractive index is n - j kappa.
Debye materials are evaluated from the separated real/imaginary relaxation
sums; tabulated materials interpolate linearly in wavelength.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._kernels import debye_grid
from .constants import SPEED_OF_LIGHT, VACUUM_PERMITTIVITY, PERMEABILITY
from .errors import DomainError

__all__ = [
    "DebyeModel",
    "Material",
    "debye_permittivity",
    "permittivity_to_index",
    "index_to_permittivity",
    "absorption_index",
    "conductivity",
    "penetration_depth",
    "lookup_permittivity",
    "material_library",
    "material_set_names",
]


@dataclass(frozen=True)
class DebyeModel:
    """Multi-term Debye relaxation model.

    ``terms`` holds (eps_step_start, relaxation_time) pairs; successive
    steps telescope down to ``eps_inf``, so a double-Debye material stores
    ((eps_s, tau1), (eps_2, tau2)).
    """

    eps_inf: float
    terms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        if self.eps_inf < 1.0:
            raise DomainError(f"eps_inf must be >= 1, got {self.eps_inf}")
        if not self.terms:
            raise DomainError("at least one relaxation term is required")
        for _, tau in self.terms:
            if tau <= 0.0:
                raise DomainError(f"relaxation times must be positive, got {tau}")

    @classmethod
    def double(cls, eps_inf, eps_s, eps_2, tau1, tau2):
        """Build the common two-term model from its five parameters."""
        return cls(eps_inf, ((eps_s, tau1), (eps_2, tau2)))

    @property
    def eps_static(self):
        return self.terms[0][0]

    def steps(self):
        """Telescoped permittivity steps, one per term."""
        levels = [s for s, _ in self.terms] + [self.eps_inf]
        return tuple(levels[i] - levels[i + 1] for i in range(len(self.terms)))


@dataclass(frozen=True)
class Material:
    """A named material backed by a Debye model or a wavelength table."""

    name: str
    debye: DebyeModel | None = None
    table: tuple[tuple[float, complex], ...] = ()
    note: str = ""

    def __post_init__(self):
        if (self.debye is None) == (not self.table):
            raise DomainError(
                f"material {self.name!r} needs exactly one of a Debye model "
                "or a wavelength table"
            )
        if self.table:
            lams = [lam for lam, _ in self.table]
            if sorted(lams) != lams or len(set(lams)) != len(lams):
                raise DomainError(
                    f"material {self.name!r}: table wavelengths must be "
                    "strictly increasing"
                )


def debye_permittivity(model, frequency):
    """Evaluate a Debye model at one or more frequencies in Hz.

    Parameters
    ----------
    model : DebyeModel
    frequency : float or array of float, Hz; must be positive

    Returns
    -------
    complex or complex array, eps' - j eps''
    """
    freq = np.asarray(frequency, dtype=np.float64)
    if np.any(freq <= 0.0):
        raise DomainError("frequency must be positive")
    omega = 2.0 * np.pi * freq
    deltas = np.array(model.steps(), dtype=np.float64)
    taus = np.array([tau for _, tau in model.terms], dtype=np.float64)
    er, ei = debye_grid(np.atleast_1d(omega), model.eps_inf, deltas, taus)
    out = er - 1j * ei
    if np.ndim(frequency) == 0:
        return complex(out[0])
    return out


def permittivity_to_index(eps):
    """Convert eps' - j eps'' to the complex index n - j kappa.

    Uses the explicit magnitude formulas n = sqrt((|eps| + eps')/2) and
    kappa = sqrt((|eps| - eps')/2), which for eps'' >= 0 coincide with the
    principal square root.
    """
    eps = np.asarray(eps, dtype=np.complex128)
    er = eps.real
    ei = -eps.imag
    if np.any(ei < 0.0):
        raise DomainError("active media (eps'' < 0) are not supported")
    mag = np.hypot(er, ei)
    n = np.sqrt((mag + er) / 2.0)
    kappa = np.sqrt((mag - er) / 2.0)
    out = n - 1j * kappa
    if np.ndim(eps) == 0:
        return complex(out)
    return out


def index_to_permittivity(index):
    """Inverse of permittivity_to_index: (n - j kappa)^2 written out."""
    idx = np.asarray(index, dtype=np.complex128)
    n = idx.real
    kappa = -idx.imag
    out = (n * n - kappa * kappa) - 1j * (2.0 * n * kappa)
    if np.ndim(index) == 0:
        return complex(out)
    return out


def absorption_index(alpha, wavelength):
    """Imaginary index kappa from a power absorption coefficient.

    alpha is the per-meter power coefficient, wavelength the free-space
    wavelength in meters.
    """
    if alpha < 0.0:
        raise DomainError("absorption coefficient must be non-negative")
    if wavelength <= 0.0:
        raise DomainError("wavelength must be positive")
    return alpha * wavelength / (4.0 * np.pi)


def conductivity(eps_imag, frequency):
    """Effective conductivity in S/m from the dielectric loss eps''."""
    if eps_imag < 0.0:
        raise DomainError("eps'' must be non-negative")
    if frequency <= 0.0:
        raise DomainError("frequency must be positive")
    return eps_imag * 2.0 * np.pi * frequency * VACUUM_PERMITTIVITY


def penetration_depth(sigma, frequency, permeability=PERMEABILITY):
    """Conductor-style skin depth 1/sqrt(omega mu sigma / 2) in meters.

    A perfectly lossless medium (sigma = 0) returns math.inf rather than
    raising: there is no absorption to bound the depth.
    """
    if sigma < 0.0:
        raise DomainError("conductivity must be non-negative")
    if frequency <= 0.0:
        raise DomainError("frequency must be positive")
    if sigma == 0.0:
        return math.inf
    omega = 2.0 * np.pi * frequency
    return 1.0 / math.sqrt(omega * permeability * sigma / 2.0)


def lookup_permittivity(material, wavelength):
    """Permittivity of a material at a free-space wavelength in meters.

    Debye materials are evaluated at f = c / wavelength; tabulated materials
    interpolate eps' and eps'' linearly and refuse to extrapolate.
    """
    if wavelength <= 0.0:
        raise DomainError("wavelength must be positive")
    if material.debye is not None:
        return debye_permittivity(material.debye, SPEED_OF_LIGHT / wavelength)
    lams = np.array([lam for lam, _ in material.table])
    if not (lams[0] <= wavelength <= lams[-1]):
        raise DomainError(
            f"material {material.name!r} is tabulated for "
            f"{lams[0]:.3e} m to {lams[-1]:.3e} m, got {wavelength:.3e} m"
        )
    er = np.array([e.real for _, e in material.table])
    ei = np.array([-e.imag for _, e in material.table])
    return complex(np.interp(wavelength, lams, er) - 1j * np.interp(wavelength, lams, ei))


# ---------------------------------------------------------------- #
# built-in material sets
# ---------------------------------------------------------------- #

def _debye_material(name, note, eps_inf, eps_s, eps_2, tau1_ps, tau2_ps):
    return Material(
        name=name,
        debye=DebyeModel.double(eps_inf, eps_s, eps_2, tau1_ps * 1e-12, tau2_ps * 1e-12),
        note=note,
    )


_TABLE_NOTE = "built-in set: table"
_APPENDIX_NOTE = "built-in set: appendix"
_OPTICAL_NOTE = "built-in set: optical"

TABLE_SET = {
    m.name: m
    for m in (
        _debye_material("water", _TABLE_NOTE, 3.3, 78.8, 4.5, 8.4, 0.1),
        _debye_material("whole_blood", _TABLE_NOTE, 2.1, 130.0, 3.8, 14.4, 0.1),
        _debye_material("skin", _TABLE_NOTE, 3.0, 60.0, 3.6, 10.6, 0.2),
    )
}

APPENDIX_SET = {
    m.name: m
    for m in (
        _debye_material("whole_blood", _APPENDIX_NOTE, 2.1, 130.0, 3.8, 14.4, 0.1),
        _debye_material("blood_plasma", _APPENDIX_NOTE, 1.7, 78.0, 3.6, 8.0, 0.1),
        _debye_material("water", _APPENDIX_NOTE, 3.3, 87.8, 4.5, 8.4, 0.5),
        _debye_material("skin_dermis", _APPENDIX_NOTE, 3.6, 60.0, 3.0, 10.0, 0.2),
        _debye_material("skin_epidermis", _APPENDIX_NOTE, 3.6, 58.0, 3.0, 9.4, 0.18),
    )
}

# visible-band permittivity tables, wavelength in nm against eps' and eps''
_OPTICAL_ROWS = {
    "fat": [
        (450, 2.13, 6.68e-7), (500, 2.13, 2.20e-7), (550, 2.13, 9.89e-8),
        (600, 2.13, 6.47e-8), (650, 2.13, 7.12e-8), (700, 2.13, 5.26e-8),
        (750, 2.13, 1.70e-7), (800, 2.13, 7.45e-8), (850, 2.13, 1.26e-7),
        (900, 2.13, 9.66e-7), (950, 2.13, 8.69e-7), (1000, 2.13, 6.17e-7),
    ],
    "hemoglobin": [
        (450, 2.04, 3.46e-3), (500, 2.03, 1.26e-3), (550, 2.01, 2.86e-3),
        (600, 1.99, 2.50e-4), (650, 1.99, 2.87e-5), (700, 1.99, 2.43e-5),
        (750, 1.99, 4.68e-5), (800, 1.99, 7.83e-5), (850, 1.99, 1.08e-4),
        (900, 1.99, 1.29e-4), (950, 1.99, 1.37e-4), (1000, 1.99, 1.23e-4),
    ],
    "water": [
        (450, 1.78, 2.72e-9), (500, 1.78, 2.68e-9), (550, 1.77, 5.35e-9),
        (600, 1.77, 2.91e-8), (650, 1.77, 4.36e-8), (700, 1.77, 9.22e-8),
        (750, 1.76, 4.14e-7), (800, 1.76, 3.35e-7), (850, 1.76, 7.81e-7),
        (900, 1.76, 1.33e-6), (950, 1.76, 7.79e-6), (1000, 1.76, 7.67e-6),
    ],
}

OPTICAL_SET = {
    name: Material(
        name=name,
        table=tuple((lam * 1e-9, er - 1j * ei) for lam, er, ei in rows),
        note=_OPTICAL_NOTE,
    )
    for name, rows in _OPTICAL_ROWS.items()
}

_SETS = {"table": TABLE_SET, "appendix": APPENDIX_SET, "optical": OPTICAL_SET}


def material_set_names():
    return tuple(_SETS)


def material_library(set_name):
    """Return the named built-in material set as a dict."""
    try:
        return dict(_SETS[set_name])
    except KeyError:
        raise DomainError(
            f"unknown material set {set_name!r}; expected one of {sorted(_SETS)}"
        ) from None
