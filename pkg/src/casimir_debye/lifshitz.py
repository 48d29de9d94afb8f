"""Per-frequency Lifshitz quantities for two identical half-spaces.

Wavevectors are perpendicular decay constants gamma = sqrt(q^2 + eps xi^2/c^2),
q being the in-plane wavenumber. With Debye screening the material wavevector
gets an extra lambda^-2 under the root, so it can never drop below 1/lambda.

Integrals over q are done in the variable u = 2 gamma_0 d, shifted so the
lower limit sits at zero; the integrand then decays like exp(-u) for every
separation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

from scipy import integrate

from .errors import ContractError, ConvergenceError, DomainError
from .materials import (
    C_LIGHT,
    PerfectConductor,
    debye_length,
    eps_imag_axis,
    is_conductor,
)

Polarization = Literal["TE", "TM"]
POLARIZATIONS = ("TE", "TM")


@dataclass(frozen=True)
class ScreeningSpec:
    """How the Debye term enters the material wavevector.

    ``mode`` is ``"off"``, ``"fixed"`` (explicit ``lam``) or ``"computed"``
    (lambda from ``eps_s``/``carrier_density`` at the run temperature).
    """

    mode: str = "off"
    lam: Optional[float] = None
    eps_s: Optional[float] = None
    carrier_density: Optional[float] = None
    apply_to_tm: bool = True

    def __post_init__(self):
        if self.mode == "off":
            object.__setattr__(self, "apply_to_tm", False)
        elif self.mode == "fixed":
            if self.lam is None or not self.lam > 0:
                raise DomainError("lambda", f"must be > 0, got {self.lam!r}")
        elif self.mode == "computed":
            if self.eps_s is None or self.carrier_density is None:
                raise DomainError("screening", "computed mode needs eps_s and carrier_density")
            # validates eagerly
            debye_length(self.eps_s, 1.0, self.carrier_density)
        else:
            raise DomainError("screening", f"unknown mode {self.mode!r}")

    @classmethod
    def off(cls):
        return cls("off")

    @classmethod
    def debye_fixed(cls, lam, apply_to_tm=True):
        return cls("fixed", lam=lam, apply_to_tm=apply_to_tm)

    @classmethod
    def debye_computed(cls, eps_s, carrier_density, apply_to_tm=True):
        return cls("computed", eps_s=eps_s, carrier_density=carrier_density, apply_to_tm=apply_to_tm)

    @property
    def enabled(self):
        return self.mode != "off"

    def length(self, temperature=None):
        """Screening length in metres, or None when screening is off."""
        if self.mode == "off":
            return None
        if self.mode == "fixed":
            return self.lam
        if temperature is None:
            raise DomainError("temperature", "needed to compute the Debye length")
        return debye_length(self.eps_s, temperature, self.carrier_density)

    def inverse_square(self, polarization="TE", temperature=None):
        """lambda^-2 entering gamma_1 for the given polarization (0 if none)."""
        if not self.enabled or (polarization == "TM" and not self.apply_to_tm):
            return 0.0
        return self.length(temperature) ** -2

    def describe(self):
        out = {"screening": self.mode, "apply_to_tm": self.apply_to_tm}
        if self.mode == "fixed":
            out["lambda"] = self.lam
        elif self.mode == "computed":
            out["screening_eps_s"] = self.eps_s
            out["screening_carrier_density"] = self.carrier_density
        return out


@dataclass(frozen=True)
class ModePoint:
    q: float
    xi: float
    d: float

    def __post_init__(self):
        if not self.q >= 0:
            raise DomainError("q", f"must be >= 0, got {self.q!r}")
        if not self.xi >= 0:
            raise DomainError("xi", f"must be >= 0, got {self.xi!r}")
        if not self.d > 0:
            raise DomainError("d", f"must be > 0, got {self.d!r}")


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-9
    abs_tol: float = 1e-14
    max_subdivisions: int = 200

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise DomainError("rel_tol", "must be > 0")
        if not self.abs_tol > 0:
            raise DomainError("abs_tol", "must be > 0")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions", "must be >= 1")


def gamma_vacuum(q, xi):
    if q < 0:
        raise DomainError("q", f"must be >= 0, got {q!r}")
    if xi < 0:
        raise DomainError("xi", f"must be >= 0, got {xi!r}")
    return math.hypot(q, xi / C_LIGHT)


def gamma_material(q, xi, model, screening, temperature=None, polarization="TE"):
    if q < 0:
        raise DomainError("q", f"must be >= 0, got {q!r}")
    if xi < 0:
        raise DomainError("xi", f"must be >= 0, got {xi!r}")
    if isinstance(model, PerfectConductor):
        raise ContractError("perfect conductor has no finite material wavevector; use the r = 1 limit")
    inv = screening.inverse_square(polarization, temperature)
    if xi == 0:
        if inv == 0 and is_conductor(model):
            raise ContractError("xi = 0 for a conductor without screening; use the reflection limit")
        return math.sqrt(q * q + inv)
    eps = eps_imag_axis(model, xi)
    return math.sqrt(q * q + inv + eps * (xi / C_LIGHT) ** 2)


def _reflection(xi, model, screening, polarization, temperature=None):
    """Return r(q) for fixed frequency. Shared by the public reflection
    functions and the integrators so both use identical arithmetic."""
    if xi < 0:
        raise DomainError("xi", f"must be >= 0, got {xi!r}")
    if isinstance(model, PerfectConductor):
        return lambda q: 1.0
    inv = screening.inverse_square(polarization, temperature)

    if xi == 0:
        if polarization == "TE":
            if inv == 0:
                return lambda q: 0.0
            return lambda q: min(1.0, inv / (math.sqrt(q * q + inv) + q) ** 2)
        if is_conductor(model):
            return lambda q: 1.0
        eps = float(model.eps_s)

        def r_tm0(q):
            g1 = math.sqrt(q * q + inv)
            return (eps * q - g1) / (eps * q + g1)

        if inv == 0:
            const = (eps - 1.0) / (eps + 1.0)
            return lambda q: const
        return r_tm0

    eps = eps_imag_axis(model, xi)
    k2 = (xi / C_LIGHT) ** 2
    excess = inv + (eps - 1.0) * k2
    if polarization == "TE":
        def r_te(q):
            g0 = math.sqrt(q * q + k2)
            g1 = math.sqrt(q * q + k2 + excess)
            # (g1 - g0)/(g1 + g0) without cancellation
            return excess / (g1 + g0) ** 2

        return r_te

    def r_tm(q):
        g0 = math.sqrt(q * q + k2)
        g1 = math.sqrt(q * q + k2 + excess)
        return (eps * g0 - g1) / (eps * g0 + g1)

    return r_tm


def zero_frequency_te_reflection_limit(model, screening, q, temperature=None):
    """Analytic xi -> 0 limit of the TE reflection coefficient."""
    if q < 0:
        raise DomainError("q", f"must be >= 0, got {q!r}")
    return _reflection(0.0, model, screening, "TE", temperature)(q)


def zero_frequency_tm_reflection_limit(model, screening, q, temperature=None):
    """Analytic xi -> 0 limit of the TM reflection coefficient.

    Conductors tend to 1 because eps(i xi) diverges; a static dielectric
    tends to (eps-1)/(eps+1) unless screening is applied to TM.
    """
    if q < 0:
        raise DomainError("q", f"must be >= 0, got {q!r}")
    return _reflection(0.0, model, screening, "TM", temperature)(q)


def reflection_te(point, model, screening, temperature=None):
    return _reflection(point.xi, model, screening, "TE", temperature)(point.q)


def reflection_tm(point, model, screening, temperature=None):
    """Standard Lifshitz TM coefficient (eps g0 - g1)/(eps g0 + g1); the
    screening term enters g1 only when ``screening.apply_to_tm``."""
    return _reflection(point.xi, model, screening, "TM", temperature)(point.q)


def reflection(point, polarization, model, screening, temperature=None):
    _check_polarization(polarization)
    return _reflection(point.xi, model, screening, polarization, temperature)(point.q)


def _check_polarization(polarization):
    if polarization not in POLARIZATIONS:
        raise DomainError("polarization", f"must be TE or TM, got {polarization!r}")


def mode_function(point, polarization, model, screening, temperature=None):
    """G = 1 - r^2 exp(-2 gamma_0 d)."""
    r = reflection(point, polarization, model, screening, temperature)
    u = 2.0 * gamma_vacuum(point.q, point.xi) * point.d
    return 1.0 - r * r * math.exp(-u)


def _log_g(r, u):
    if r == 1.0 and u < 0.6931471805599453:
        return math.log(-math.expm1(-u))
    return math.log1p(-r * r * math.exp(-u))


def _dlog_g(r, u):
    """r^2 e^-u / G, the d-derivative kernel (without the 2 gamma_0 factor)."""
    if r == 1.0:
        return math.exp(-u) / -math.expm1(-u)
    x = r * r * math.exp(-u)
    return x / (1.0 - x)


def _u_integral(xi, d, model, screening, polarization, quad, temperature, kind):
    """Dimensionless integral over t = u - u0 >= 0.

    energy:   I = int ln G * u dt          f = I / (8 pi d^2)
    pressure: J = int u^2 r^2 e^-u / G dt  df/dd = J / (8 pi d^3)
    """
    _check_polarization(polarization)
    if not d > 0:
        raise DomainError("d", f"must be > 0, got {d!r}")
    r_of_q = _reflection(xi, model, screening, polarization, temperature)
    u0 = 2.0 * xi * d / C_LIGHT
    if u0 > 700.0:
        return 0.0, 0.0
    two_d = 2.0 * d
    # integrand carries exp(-u0); quadrature runs on the rescaled O(1) form
    lift = math.exp(u0)

    if kind == "energy":
        def integrand(t):
            u = u0 + t
            if u == 0.0:
                return 0.0
            q = math.sqrt(t * (t + 2.0 * u0)) / two_d
            return _log_g(r_of_q(q), u) * u * lift
    else:
        def integrand(t):
            u = u0 + t
            if u == 0.0:
                return 0.0
            q = math.sqrt(t * (t + 2.0 * u0)) / two_d
            return u * u * _dlog_g(r_of_q(q), u) * lift

    out = integrate.quad(
        integrand,
        0.0,
        math.inf,
        epsabs=quad.abs_tol,
        epsrel=quad.rel_tol,
        limit=quad.max_subdivisions,
        full_output=1,
    )
    value, err = out[0], out[1]
    if len(out) > 3 and err > max(quad.abs_tol, quad.rel_tol * abs(value)):
        raise ConvergenceError(
            f"q-integral did not converge at xi={xi!r}, d={d!r}: {out[3]}",
            residual=err / lift,
            partial=value / lift,
        )
    return value / lift, err / lift


def mode_integral_f(
    xi,
    d,
    model,
    screening,
    polarization="TE",
    quad=QuadratureSpec(),
    temperature=None,
    return_error=False,
):
    """(1/2pi) int_0^inf ln G(q, i xi) q dq in 1/m^2; always <= 0.

    With ``return_error=True`` returns ``(value, abs_error_estimate)``.
    """
    if not xi >= 0:
        raise DomainError("xi", f"must be >= 0, got {xi!r}")
    value, err = _u_integral(xi, d, model, screening, polarization, quad, temperature, "energy")
    scale = 1.0 / (8.0 * math.pi * d * d)
    value *= scale
    if not value < 0.0:
        value = 0.0  # also clears a signed zero
    if return_error:
        return value, err * scale
    return value


def mode_integral_dd(xi, d, model, screening, polarization="TE", quad=QuadratureSpec(), temperature=None):
    """d/dd of :func:`mode_integral_f` (1/m^3, >= 0), from the analytic
    derivative d ln G/dd = 2 gamma_0 r^2 e^{-2 gamma_0 d} / G."""
    if not xi >= 0:
        raise DomainError("xi", f"must be >= 0, got {xi!r}")
    value, _ = _u_integral(xi, d, model, screening, polarization, quad, temperature, "pressure")
    return value / (8.0 * math.pi * d**3)

