"""Physical constants and dielectric response on the imaginary frequency axis.

All quantities are SI. The conductivity term of the Drude response is the SI
form sigma / (eps0 * xi) of the Gaussian-units expression 4 pi sigma / omega.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import DomainError


@dataclass(frozen=True)
class PhysicalConstants:
    boltzmann: float
    reduced_planck: float
    vacuum_permittivity: float
    elementary_charge: float
    light_speed: float
    name: str


# CODATA 2018 recommended values.
CODATA2018 = PhysicalConstants(
    boltzmann=1.380649e-23,
    reduced_planck=1.054571817e-34,
    vacuum_permittivity=8.8541878128e-12,
    elementary_charge=1.602176634e-19,
    light_speed=299792458.0,
    name="CODATA 2018",
)

K_B = CODATA2018.boltzmann
HBAR = CODATA2018.reduced_planck
EPS0 = CODATA2018.vacuum_permittivity
E_CHARGE = CODATA2018.elementary_charge
C_LIGHT = CODATA2018.light_speed

#: Returned by :func:`eps_imag_axis` for a perfect conductor. Callers must
#: branch on it (``math.isinf``) and use the analytic r = 1 limit.
INFINITE_PERMITTIVITY = math.inf

#: Ambipolar mobility scale for intrinsic Ge, m^2/(V s).
GE_MOBILITY = 0.2


def _positive(name, value):
    if not value > 0 or math.isinf(value):
        raise DomainError(name, f"must be finite and > 0, got {value!r}")


@dataclass(frozen=True)
class PerfectConductor:
    kind = "perfect"

    def describe(self):
        return {"model": self.kind}


@dataclass(frozen=True)
class DrudeConductivity:
    sigma: float
    kind = "drude"

    def __post_init__(self):
        _positive("sigma", self.sigma)

    def describe(self):
        return {"model": self.kind, "sigma": self.sigma}


@dataclass(frozen=True)
class StaticDielectric:
    eps_s: float
    kind = "static"

    def __post_init__(self):
        if not self.eps_s >= 1 or math.isinf(self.eps_s):
            raise DomainError("eps_s", f"must be finite and >= 1, got {self.eps_s!r}")

    def describe(self):
        return {"model": self.kind, "eps_s": self.eps_s}


@dataclass(frozen=True)
class IntrinsicSemiconductor:
    """Static lattice permittivity plus a carrier conductivity
    ``carrier_density * e * mobility``."""

    eps_s: float
    carrier_density: float
    mobility: float = GE_MOBILITY
    kind = "semiconductor"

    def __post_init__(self):
        if not self.eps_s >= 1 or math.isinf(self.eps_s):
            raise DomainError("eps_s", f"must be finite and >= 1, got {self.eps_s!r}")
        _positive("carrier_density", self.carrier_density)
        _positive("mobility", self.mobility)

    @property
    def conductivity(self):
        return self.carrier_density * E_CHARGE * self.mobility

    def describe(self):
        return {
            "model": self.kind,
            "eps_s": self.eps_s,
            "carrier_density": self.carrier_density,
            "mobility": self.mobility,
        }


DielectricModel = Union[PerfectConductor, DrudeConductivity, StaticDielectric, IntrinsicSemiconductor]


@dataclass(frozen=True)
class CarrierKinetics:
    thermal_velocity: float

    def __post_init__(self):
        _positive("thermal_velocity", self.thermal_velocity)


def debye_length(eps_s, temperature, carrier_density):
    """Debye-Hueckel screening length sqrt(eps eps0 kT / (e^2 c_t)) in metres.

    ``carrier_density`` is the total (electron + hole) concentration in m^-3.
    """
    if not eps_s >= 1 or math.isinf(eps_s):
        raise DomainError("eps_s", f"must be finite and >= 1, got {eps_s!r}")
    _positive("temperature", temperature)
    _positive("carrier_density", carrier_density)
    return math.sqrt(eps_s * EPS0 * K_B * temperature / (E_CHARGE**2 * carrier_density))


def eps_imag_axis(model, xi):
    """Relative permittivity eps(i xi) for xi > 0 (rad/s).

    The xi = 0 point is deliberately excluded; the reflection code supplies
    analytic zero-frequency limits instead.
    """
    if not xi > 0:
        raise DomainError("xi", f"must be > 0, got {xi!r}")
    if isinstance(model, PerfectConductor):
        return INFINITE_PERMITTIVITY
    if isinstance(model, DrudeConductivity):
        return 1.0 + model.sigma / (EPS0 * xi)
    if isinstance(model, StaticDielectric):
        return float(model.eps_s)
    if isinstance(model, IntrinsicSemiconductor):
        return model.eps_s + model.conductivity / (EPS0 * xi)
    raise TypeError(f"unknown dielectric model {model!r}")


def is_conductor(model):
    """True when the model carries a dc conductivity (eps ~ 1/xi at low xi)."""
    return isinstance(model, (DrudeConductivity, IntrinsicSemiconductor))


def validity_max_frequency(kinetics, lam):
    """Upper frequency v_c / lambda below which a frequency-independent
    screening length is trustworthy."""
    _positive("lambda", lam)
    return kinetics.thermal_velocity / lam
