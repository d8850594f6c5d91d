"""Path loss decomposition for waves traveling through lossy tissue.

Total loss is the product of three factors, reported in dB: geometric
spreading of the in-medium wavelength, Beer-Lambert molecular absorption,
and single-scattering extinction by suspended particles.  Particles are
routed to a Rayleigh or an anomalous-diffraction efficiency depending on
their size parameter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .constants import SPEED_OF_LIGHT
from .dielectrics import Material, lookup_permittivity, permittivity_to_index
from .errors import DomainError

__all__ = [
    "Beam",
    "ParticlePopulation",
    "PropagationMedium",
    "PathLossBreakdown",
    "solid_angle_cone",
    "solid_angle_gaussian",
    "beam_solid_angle",
    "directivity",
    "wavelength_in_medium",
    "spreading_loss_db",
    "absorption_coefficient",
    "absorption_loss_db",
    "particle_concentration",
    "particle_absorption_coefficient",
    "size_parameter",
    "scattering_efficiency_small",
    "phase_shift_parameter",
    "extinction_efficiency",
    "scattering_efficiency_large",
    "population_scattering_coefficient",
    "scattering_loss_db",
    "scattered_intensity",
    "far_field_check",
    "total_path_loss",
]

_LOG10E = math.log10(math.e)

FAR_FIELD_THRESHOLD = 10.0


@dataclass(frozen=True)
class Beam:
    """Antenna beam description: isotropic, cone, or cosine-tapered.

    ``half_width`` is the half-angle extent in radians for the cone and
    gaussian kinds; the isotropic beam ignores it.
    """

    kind: str = "isotropic"
    half_width: float | None = None

    _KINDS = ("isotropic", "cone", "gaussian")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise DomainError(f"beam kind must be one of {self._KINDS}, got {self.kind!r}")
        if self.kind != "isotropic":
            if self.half_width is None or not (0.0 < self.half_width <= math.pi):
                raise DomainError("beam half-width must lie in (0, pi]")


def solid_angle_cone(half_angle):
    """Solid angle of a cone of the given half-angle, steradians."""
    if not (0.0 < half_angle <= math.pi):
        raise DomainError("cone half-angle must lie in (0, pi]")
    return 2.0 * math.pi * (1.0 - math.cos(half_angle))


def solid_angle_gaussian(half_angle):
    """Solid angle of the (1 + cos theta)/2 tapered pattern up to half_angle.

    Closed form of the pattern integral; the full-sphere case half_angle = pi
    evaluates to 4 pi / 3.
    """
    if not (0.0 < half_angle <= math.pi):
        raise DomainError("pattern half-angle must lie in (0, pi]")
    c = math.cos(half_angle)
    return (math.pi / 2.0) * (7.0 / 3.0 - (c + c * c + c**3 / 3.0))


def beam_solid_angle(beam):
    if beam.kind == "isotropic":
        return 4.0 * math.pi
    if beam.kind == "cone":
        return solid_angle_cone(beam.half_width)
    return solid_angle_gaussian(beam.half_width)


def directivity(solid_angle):
    """Directivity 4 pi / Omega_A; 1.0 for a full-sphere beam."""
    if not (0.0 < solid_angle <= 4.0 * math.pi + 1e-12):
        raise DomainError("beam solid angle must lie in (0, 4 pi]")
    return 4.0 * math.pi / solid_angle


def wavelength_in_medium(wavelength, n_real):
    if wavelength <= 0.0:
        raise DomainError("wavelength must be positive")
    if n_real < 1.0:
        raise DomainError("refractive index must be >= 1")
    return wavelength / n_real


def spreading_loss_db(lambda_g, distance):
    """Geometric spreading loss -10 log10((lambda_g / 4 pi d)^2) in dB.

    Negative values are legitimate when d < lambda_g / 4 pi; see
    far_field_check for whether the spreading picture applies at all.
    """
    if lambda_g <= 0.0:
        raise DomainError("in-medium wavelength must be positive")
    if distance <= 0.0:
        raise DomainError("distance must be positive")
    return -10.0 * math.log10((lambda_g / (4.0 * math.pi * distance)) ** 2)


def absorption_coefficient(kappa, wavelength):
    """Power absorption coefficient 4 pi kappa / lambda0 in 1/m."""
    if kappa < 0.0:
        raise DomainError("kappa must be non-negative")
    if wavelength <= 0.0:
        raise DomainError("wavelength must be positive")
    return 4.0 * math.pi * kappa / wavelength


def absorption_loss_db(mu_abs, distance):
    """Beer-Lambert loss in dB; linear in both mu and d by construction."""
    if mu_abs < 0.0:
        raise DomainError("absorption coefficient must be non-negative")
    if distance < 0.0:
        raise DomainError("distance must be non-negative")
    return 10.0 * mu_abs * distance * _LOG10E


def particle_concentration(volume_fraction, radius):
    """Number density of spheres filling the given volume fraction, 1/m^3."""
    if not (0.0 <= volume_fraction <= 1.0):
        raise DomainError("volume fraction must lie in [0, 1]")
    if radius <= 0.0:
        raise DomainError("particle radius must be positive")
    return volume_fraction / ((4.0 / 3.0) * math.pi * radius**3)


def particle_absorption_coefficient(rho_v, q_abs, sigma_g):
    """Absorption coefficient rho_v Q_abs sigma_g of one particle species."""
    if rho_v < 0.0 or q_abs < 0.0 or sigma_g < 0.0:
        raise DomainError("concentration, efficiency and cross-section must be >= 0")
    return rho_v * q_abs * sigma_g


def size_parameter(radius, lambda_g):
    """Size parameter psi = 2 pi r / lambda_g."""
    if radius <= 0.0:
        raise DomainError("particle radius must be positive")
    if lambda_g <= 0.0:
        raise DomainError("in-medium wavelength must be positive")
    return 2.0 * math.pi * radius / lambda_g


def scattering_efficiency_small(psi, rel_index):
    """Rayleigh-regime scattering efficiency for psi well below unity.

    The squared Lorenz-Lorentz factor is evaluated on the (possibly complex)
    relative index and its real part taken.
    """
    if psi <= 0.0:
        raise DomainError("size parameter must be positive")
    m2 = complex(rel_index) ** 2
    factor = ((m2 - 1.0) / (m2 + 2.0)) ** 2
    return (8.0 / 3.0) * psi**4 * factor.real


def phase_shift_parameter(rel_index_real, psi):
    """Central phase lag p = 2 (n - 1) psi of a large sphere."""
    if psi <= 0.0:
        raise DomainError("size parameter must be positive")
    return 2.0 * (rel_index_real - 1.0) * psi


def extinction_efficiency(p):
    """Anomalous-diffraction extinction efficiency of a large sphere.

    Series expansion below p = 1e-3 avoids cancellation; the closed form
    2 - (4/p) sin p + (4/p^2)(1 - cos p) is used elsewhere.
    """
    if p < 0.0:
        raise DomainError("phase-shift parameter must be non-negative")
    if p < 1e-3:
        return p * p / 2.0 - p**4 / 36.0
    return 2.0 - (4.0 / p) * math.sin(p) + (4.0 / (p * p)) * (1.0 - math.cos(p))


def scattering_efficiency_large(q_ext, q_abs):
    """Scattering efficiency Q_ext - Q_abs, clamped against tiny negatives."""
    if q_abs < 0.0:
        raise DomainError("absorption efficiency must be non-negative")
    diff = q_ext - q_abs
    if diff < -1e-9:
        raise DomainError(
            f"absorption efficiency {q_abs} exceeds extinction {q_ext}"
        )
    return max(diff, 0.0)


@dataclass(frozen=True)
class ParticlePopulation:
    """One species of suspended spherical scatterers.

    ``rel_index`` is the particle index relative to the host medium.
    ``size_class`` picks the efficiency model: "small" (Rayleigh), "large"
    (anomalous diffraction) or "auto" to switch on psi = 1.
    """

    name: str
    radius: float
    volume_fraction: float
    rel_index: complex = 1.05
    q_abs: float = 0.0
    size_class: str = "auto"

    def __post_init__(self):
        if self.radius <= 0.0:
            raise DomainError(f"population {self.name!r}: radius must be positive")
        if not (0.0 <= self.volume_fraction <= 1.0):
            raise DomainError(
                f"population {self.name!r}: volume fraction must lie in [0, 1]"
            )
        if self.q_abs < 0.0:
            raise DomainError(f"population {self.name!r}: q_abs must be >= 0")
        if self.size_class not in ("small", "large", "auto"):
            raise DomainError(
                f"population {self.name!r}: size_class must be small, large or auto"
            )

    def concentration(self):
        return particle_concentration(self.volume_fraction, self.radius)

    def cross_section(self):
        return math.pi * self.radius**2


@dataclass(frozen=True)
class PropagationMedium:
    """Host material plus the particle populations suspended in it."""

    host: Material
    particles: tuple[ParticlePopulation, ...] = ()

    def __post_init__(self):
        total = sum(p.volume_fraction for p in self.particles)
        if total > 1.0 + 1e-12:
            raise DomainError(
                f"particle volume fractions sum to {total:.4f}, above 1"
            )


def population_scattering_coefficient(population, lambda_g):
    """Scattering coefficient rho_v Q_sca sigma_g of one population, 1/m."""
    psi = size_parameter(population.radius, lambda_g)
    size_class = population.size_class
    if size_class == "auto":
        size_class = "small" if psi < 1.0 else "large"
    if size_class == "small":
        q_sca = scattering_efficiency_small(psi, population.rel_index)
    else:
        p = phase_shift_parameter(complex(population.rel_index).real, psi)
        q_sca = scattering_efficiency_large(extinction_efficiency(p), population.q_abs)
    return population.concentration() * q_sca * population.cross_section()


def scattering_loss_db(medium, lambda_g, distance):
    """Summed single-scattering extinction of all populations, in dB."""
    if distance < 0.0:
        raise DomainError("distance must be non-negative")
    mu = 0.0
    for pop in medium.particles:
        mu += population_scattering_coefficient(pop, lambda_g)
    return 10.0 * mu * distance * _LOG10E


def scattered_intensity(i_incident, wavenumber, distance, amplitude):
    """Far-zone scattered intensity I S(theta, phi) / (k r)^2."""
    if i_incident < 0.0:
        raise DomainError("incident intensity must be non-negative")
    if wavenumber <= 0.0 or distance <= 0.0:
        raise DomainError("wavenumber and distance must be positive")
    if amplitude < 0.0:
        raise DomainError("the dimensionless amplitude function must be >= 0")
    return i_incident * amplitude / (wavenumber * distance) ** 2


def far_field_check(distance, wavelength, threshold=FAR_FIELD_THRESHOLD):
    """Classify a range as "near" or "far" via (2 pi / lambda) r >= threshold.

    The boundary itself counts as far field.
    """
    if distance <= 0.0 or wavelength <= 0.0:
        raise DomainError("distance and wavelength must be positive")
    if threshold <= 0.0:
        raise DomainError("threshold must be positive")
    return "far" if 2.0 * math.pi * distance / wavelength >= threshold else "near"


@dataclass(frozen=True)
class PathLossBreakdown:
    """Per-mechanism loss report; dB terms add, linear factors multiply."""

    spread_db: float
    absorption_db: float
    scattering_db: float
    total_db: float
    l_spread: float
    l_absorption: float
    l_scattering: float
    directivity: float
    solid_angle: float
    field_region: str


def total_path_loss(medium, frequency, distance, beam=Beam()):
    """Full loss budget for a wave crossing ``distance`` of ``medium``.

    The host index fixes the in-medium wavelength for spreading and the
    Beer-Lambert coefficient (evaluated with the free-space wavelength);
    particle populations contribute scattering and any Q_abs absorption.
    Beam directivity is reported alongside, never folded into the total.
    """
    if frequency <= 0.0:
        raise DomainError("frequency must be positive")
    if distance <= 0.0:
        raise DomainError("distance must be positive")

    lambda_0 = SPEED_OF_LIGHT / frequency
    eps = lookup_permittivity(medium.host, lambda_0)
    index = permittivity_to_index(eps)
    n, kappa = index.real, -index.imag

    lambda_g = wavelength_in_medium(lambda_0, n)
    spread = spreading_loss_db(lambda_g, distance)

    mu_abs = absorption_coefficient(kappa, lambda_0)
    for pop in medium.particles:
        mu_abs += particle_absorption_coefficient(
            pop.concentration(), pop.q_abs, pop.cross_section()
        )
    absorption = absorption_loss_db(mu_abs, distance)

    scattering = scattering_loss_db(medium, lambda_g, distance)

    total = spread + absorption + scattering
    omega_a = beam_solid_angle(beam)
    return PathLossBreakdown(
        spread_db=spread,
        absorption_db=absorption,
        scattering_db=scattering,
        total_db=total,
        l_spread=10.0 ** (-spread / 10.0),
        l_absorption=10.0 ** (-absorption / 10.0),
        l_scattering=10.0 ** (-scattering / 10.0),
        directivity=directivity(omega_a),
        solid_angle=omega_a,
        field_region=far_field_check(distance, lambda_g),
    )
