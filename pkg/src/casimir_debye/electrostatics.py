"""Electrostatic calibration between two thick screened plates.

Voltages +V/2 and -V/2 sit on the plate backs; the field inside each plate
decays over the screening length lambda and the vacuum gap carries a uniform
field. Everything here follows from the surface potential

    V_s = (V/2) / (1 + 2 lambda / (eps d))

and the dimensionless length y = eps d / lambda.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError
from .materials import E_CHARGE, EPS0, K_B


@dataclass(frozen=True)
class CalibrationScenario:
    applied_voltage: float
    d: float
    eps_s: float
    lam: float
    temperature: float

    def __post_init__(self):
        for name in ("d", "lam", "temperature"):
            value = getattr(self, name)
            if not value > 0 or math.isinf(value):
                raise DomainError(name, f"must be finite and > 0, got {value!r}")
        if not self.eps_s >= 1 or math.isinf(self.eps_s):
            raise DomainError("eps_s", f"must be finite and >= 1, got {self.eps_s!r}")
        if not math.isfinite(self.applied_voltage):
            raise DomainError("applied_voltage", "must be finite")

    @classmethod
    def from_kT_meV(cls, applied_voltage, d, eps_s, lam, kT_meV):
        return cls(applied_voltage, d, eps_s, lam, kT_meV * 1e-3 * E_CHARGE / K_B)

    @property
    def y(self):
        return self.eps_s * self.d / self.lam

    @property
    def thermal_voltage(self):
        """k_B T / e in volts."""
        return K_B * self.temperature / E_CHARGE

    def with_lambda(self, lam):
        return CalibrationScenario(self.applied_voltage, self.d, self.eps_s, lam, self.temperature)


@dataclass(frozen=True)
class ScreenedPotentialProfile:
    """Potential in plate 1 (x <= 0) and in the gap (0 <= x <= d)."""

    applied_voltage: float
    surface_potential: float
    surface_drop: float  # V/2 - V_s, kept separately to avoid cancellation
    d: float
    lam: float

    def plate(self, x):
        x = np.asarray(x, dtype=float)
        return 0.5 * self.applied_voltage - self.surface_drop * np.exp(-np.abs(x) / self.lam)

    def gap(self, x):
        x = np.asarray(x, dtype=float)
        return -2.0 * self.surface_potential * x / self.d + self.surface_potential

    def plate_slope(self, x):
        x = np.asarray(x, dtype=float)
        return -self.surface_drop / self.lam * np.exp(-np.abs(x) / self.lam)

    def gap_slope(self):
        return -2.0 * self.surface_potential / self.d


def _surface_potential(V, d, eps_s, lam):
    return 0.5 * V / (1.0 + 2.0 * lam / (eps_s * d))


def _surface_drop(V, d, eps_s, lam):
    a = 2.0 * lam / (eps_s * d)
    return 0.5 * V * a / (1.0 + a)


def surface_potential(scenario):
    s = scenario
    return _surface_potential(s.applied_voltage, s.d, s.eps_s, s.lam)


def potential_profile(scenario):
    s = scenario
    drop = _surface_drop(s.applied_voltage, s.d, s.eps_s, s.lam)
    return ScreenedPotentialProfile(s.applied_voltage, surface_potential(s), drop, s.d, s.lam)


def separation_correction_factor(y):
    """(y + y^2) / (y + 2)^2, the ratio of the screened field energy to the
    ideal-capacitor value.

    A force fit assuming the ideal 1/d law returns a separation off by the
    inverse of this factor, so the fitted separation should be multiplied
    by it.
    """
    if not y > 0:
        raise DomainError("y", f"must be > 0, got {y!r}")
    if math.isinf(y):
        return 1.0
    return (y + y * y) / (y + 2.0) ** 2


def field_energy_per_area(scenario):
    """Total electrostatic energy per unit area (both plates plus gap), J/m^2."""
    s = scenario
    ideal = 0.5 * EPS0 * s.applied_voltage**2 / s.d
    return ideal * separation_correction_factor(s.y)


def pfa_sphere_plate_force(scenario, radius):
    """Magnitude of the attractive sphere-plate force 2 pi R E(d), newtons.

    Warns when the radius is not large against the separation.
    """
    if not radius > 0:
        raise DomainError("radius", f"must be > 0, got {radius!r}")
    if radius < 100.0 * scenario.d:
        warnings.warn("proximity force approximation used with R < 100 d", stacklevel=2)
    return 2.0 * math.pi * radius * field_energy_per_area(scenario)


def length_ratio(phi):
    """lambda'/lambda = |phi| / sqrt(e^phi + e^-phi - 2).

    Written as |phi| / (2 sinh(|phi|/2)), which is the same expression
    without the cancellation at small phi; equals 1 at phi = 0.
    """
    a = 0.5 * abs(phi)
    if a == 0.0:
        return 1.0
    if a < 1e-4:
        return 1.0 / (1.0 + a * a / 6.0)
    return a / math.sinh(a)


@dataclass(frozen=True)
class EffectiveScreening:
    lambda_prime: float
    phi: float
    surface_potential: float
    iterations: int


def effective_screening_length(scenario, start=None, tol=1e-10, max_iter=1000):
    """Self-consistent effective screening length under a large bias.

    Phi = (V/2 - V_s) / (k_B T / e) with V_s computed using the effective
    length, and lambda' = lambda * length_ratio(Phi). Plain fixed-point
    iteration; when successive steps change sign without shrinking by half,
    the update is damped (0.5, then halved again while that persists).
    """
    s = scenario
    lam = s.lam
    vt = s.thermal_voltage

    def phi_of(lp):
        return _surface_drop(s.applied_voltage, s.d, s.eps_s, lp) / vt

    current = lam if start is None else start
    if not current > 0:
        raise DomainError("start", f"must be > 0, got {current!r}")
    damping = 1.0
    prev_step = 0.0
    for i in range(1, max_iter + 1):
        target = lam * length_ratio(phi_of(current))
        step = target - current
        if prev_step and step * prev_step < 0 and abs(step) > 0.5 * abs(prev_step):
            damping *= 0.5
        nxt = current + damping * step
        if abs(nxt - current) <= tol * abs(nxt):
            return EffectiveScreening(nxt, phi_of(nxt), _surface_potential(s.applied_voltage, s.d, s.eps_s, nxt), i)
        prev_step = step
        current = nxt
    raise ConvergenceError(
        f"effective screening length did not converge in {max_iter} iterations",
        residual=abs(step),
        partial=current,
    )


def _grid(lo, hi, n_points, log):
    if n_points < 2:
        raise DomainError("n_points", f"must be >= 2, got {n_points!r}")
    if log:
        pts = np.geomspace(lo, hi, n_points)
    else:
        pts = np.linspace(lo, hi, n_points)
    pts[0], pts[-1] = lo, hi
    return pts


def figure1_data(y_range, n_points, log=True):
    """Rows (y, separation correction factor) over ``y_range``."""
    lo, hi = y_range
    if not (lo > 0 and hi > lo):
        raise DomainError("y_range", f"need 0 < lo < hi, got {y_range!r}")
    return [(float(y), separation_correction_factor(float(y))) for y in _grid(lo, hi, n_points, log)]


def figure2_data(phi_range, n_points):
    """Rows (phi, lambda'/lambda) over ``phi_range`` (linear spacing)."""
    lo, hi = phi_range
    if not hi > lo:
        raise DomainError("phi_range", f"need lo < hi, got {phi_range!r}")
    return [(float(p), length_ratio(float(p))) for p in _grid(lo, hi, n_points, False)]
